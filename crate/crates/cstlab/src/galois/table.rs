//! Counting `GL2(Z/m)` matrices by (trace, determinant).

use num_bigint::BigInt;

use crate::error::Error;
use crate::Result;

/// Direct prime-power enumeration is refused above this modulus by default
/// (cost grows like m³ after the bc-product table trick).
pub const DEFAULT_ENUM_CAP: u64 = 32;

/// Composite tables built by CRT are refused above this modulus (memory is
/// an m x m count grid).
pub const COMPOSITE_CAP: u64 = 1024;

/// `N_m(t, d) = #{g in GL2(Z/m) : tr g = t, det g = d}` for all residues.
///
/// Columns for non-unit `d` are identically zero. The `m = 1` table is the
/// single entry `N(0, 0) = 1` for the trivial group.
#[derive(Debug, Clone)]
pub struct TraceDetTable {
    m: u64,
    /// row-major `counts[(t * m + d) as usize]`
    counts: Vec<u64>,
    units: Vec<u64>,
}

impl TraceDetTable {
    /// Builds the table for `m`, enumerating each prime-power factor
    /// directly (subject to `cap`) and composing by CRT.
    pub fn build(m: u64, cap: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("modulus must be >= 1".into()));
        }
        if m == 1 {
            return Ok(Self {
                m: 1,
                counts: vec![1],
                units: vec![0],
            });
        }
        let factors = prime_power_factors(m);
        let mut table: Option<TraceDetTable> = None;
        for &(l, k) in &factors {
            let q = l.pow(k);
            if q > cap {
                return Err(Error::Resource(format!(
                    "prime-power factor {l}^{k} = {q} exceeds enumeration cap {cap}"
                )));
            }
            let next = Self::enumerate_prime_power(l, k);
            table = Some(match table {
                None => next,
                Some(prev) => prev.crt_compose(&next)?,
            });
        }
        Ok(table.expect("m > 1 has at least one prime factor"))
    }

    /// Full O(m^4)-equivalent enumeration via a bc-product count table
    /// (actual cost O(m^3)). Prime-power moduli only; used directly as the
    /// brute-force oracle and as the CRT building block.
    pub fn enumerate_prime_power(l: u64, k: u32) -> Self {
        let m = l.pow(k);
        let mu = m as usize;
        // bc_counts[v] = #{(b, c) in (Z/m)^2 : bc = v}
        let mut bc_counts = vec![0u64; mu];
        for b in 0..m {
            for c in 0..m {
                bc_counts[((b * c) % m) as usize] += 1;
            }
        }
        let units: Vec<u64> = (0..m).filter(|x| !x.is_multiple_of(l)).collect();
        let mut counts = vec![0u64; mu * mu];
        for a in 0..m {
            for d in 0..m {
                let t = ((a + d) % m) as usize;
                let ad = (a * d) % m;
                // det = ad - bc  =>  bc = ad - det
                for &det in &units {
                    let v = ((ad + m - det % m) % m) as usize;
                    counts[t * mu + det as usize] += bc_counts[v];
                }
            }
        }
        Self { m, counts, units }
    }

    /// CRT composition with a coprime-modulus table.
    pub fn crt_compose(&self, other: &TraceDetTable) -> Result<TraceDetTable> {
        let (m1, m2) = (self.m, other.m);
        if num_integer::gcd(m1, m2) != 1 {
            return Err(Error::Domain(format!(
                "CRT composition requires coprime moduli, got {m1} and {m2}"
            )));
        }
        let m = m1
            .checked_mul(m2)
            .filter(|&v| v <= COMPOSITE_CAP)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "composite modulus {m1}*{m2} exceeds cap {COMPOSITE_CAP}"
                ))
            })?;
        let mu = m as usize;
        let mut counts = vec![0u64; mu * mu];
        let mut units = Vec::new();
        for d in 0..m {
            let (d1, d2) = (d % m1, d % m2);
            let u1 = self.is_unit(d1);
            let u2 = other.is_unit(d2);
            if !(u1 && u2) {
                continue;
            }
            units.push(d);
            for t in 0..m {
                counts[(t * m + d) as usize] =
                    self.get(t % m1, d1) * other.get(t % m2, d2);
            }
        }
        Ok(TraceDetTable { m, counts, units })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    fn is_unit(&self, d: u64) -> bool {
        if self.m == 1 {
            return d == 0;
        }
        num_integer::gcd(d, self.m) == 1
    }

    /// `N_m(t, d)`; residues are reduced by the caller.
    pub fn get(&self, t: u64, d: u64) -> u64 {
        self.counts[(t * self.m + d) as usize]
    }

    /// `N_m(t, d)` with arbitrary integer trace argument.
    pub fn get_trace(&self, t: i64, d: u64) -> u64 {
        self.get(t.rem_euclid(self.m as i64) as u64, d)
    }

    /// Group order `|GL2(Z/m)|` as the sum of all counts.
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Determinant fiber size `D(d) = Σ_t N_m(t, d)`.
    pub fn det_fiber(&self, d: u64) -> u128 {
        (0..self.m).map(|t| self.get(t, d) as u128).sum()
    }
}

/// `(l, k)` pairs with `m = Π l^k`, ascending in `l`.
pub fn prime_power_factors(m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = m;
    let mut l = 2u64;
    while l * l <= n {
        if n.is_multiple_of(l) {
            let mut k = 0;
            while n.is_multiple_of(l) {
                n /= l;
                k += 1;
            }
            out.push((l, k));
        }
        l += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `|GL2(Z/m)| = m^4 Π_{l|m} (1 - 1/l)(1 - 1/l²)`, exactly.
pub fn gl2_order(m: u64) -> BigInt {
    if m == 1 {
        return BigInt::from(1);
    }
    let mut num = BigInt::from(m).pow(4);
    for (l, _) in prime_power_factors(m) {
        let l = BigInt::from(l);
        num = num * (&l - 1) * (&l * &l - 1) / (&l * &l * &l);
    }
    num
}
