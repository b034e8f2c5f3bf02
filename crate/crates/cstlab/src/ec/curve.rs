//! Integral Weierstrass models and the per-prime trace record.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::Result;

/// Discriminant of the long Weierstrass model
/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// via the standard `b2, b4, b6, b8` covariants.
///
/// Exact integer arithmetic; coefficients of any size would do, but `i64`
/// inputs cover every model this crate works with while the intermediate
/// products require big integers.
pub fn discriminant(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> BigInt {
    let (a1, a2, a3, a4, a6) = (
        BigInt::from(a1),
        BigInt::from(a2),
        BigInt::from(a3),
        BigInt::from(a4),
        BigInt::from(a6),
    );
    let b2 = &a1 * &a1 + 4 * &a2;
    let b4 = 2 * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + 4 * &a6;
    // b8 = (b2 b6 - b4^2)/4 is always integral
    let b8 = (&b2 * &b6 - &b4 * &b4) / 4;
    -&b2 * &b2 * &b8 - 8 * (&b4 * &b4 * &b4) - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
}

/// A nonsingular integral Weierstrass model of an elliptic curve over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurveQ {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    disc: BigInt,
}

impl EllipticCurveQ {
    /// Builds the model and its discriminant; rejects singular models.
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        let disc = discriminant(a1, a2, a3, a4, a6);
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Self {
            a1,
            a2,
            a3,
            a4,
            a6,
            disc,
        })
    }

    /// Parses `"a1,a2,a3,a4,a6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "curve needs 5 comma-separated integers, got {}",
                parts.len()
            )));
        }
        let mut c = [0i64; 5];
        for (i, part) in parts.iter().enumerate() {
            c[i] = part
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad curve coefficient `{part}`")))?;
        }
        Self::new(c[0], c[1], c[2], c[3], c[4])
    }

    pub fn coefficients(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// True when `p` divides the model discriminant.
    pub fn has_bad_reduction(&self, p: u64) -> bool {
        (&self.disc % BigInt::from(p)).is_zero()
    }
}

/// A pair of curves standing in for the split abelian surface, with the
/// primes of bad reduction of the product model.
#[derive(Debug, Clone)]
pub struct SurfacePair {
    pub e1: EllipticCurveQ,
    pub e2: EllipticCurveQ,
    bad_primes: Vec<u64>,
}

impl SurfacePair {
    pub fn new(e1: EllipticCurveQ, e2: EllipticCurveQ) -> Self {
        let n = (e1.disc() * e2.disc()).magnitude().clone();
        let bad_primes = factor_primes(&n);
        Self {
            e1,
            e2,
            bad_primes,
        }
    }

    /// Ascending prime divisors of `disc(E1) * disc(E2)`.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes.binary_search(&p).is_ok()
    }

    /// Identical traces at every good prime up to the bound suggest the two
    /// models are isogenous. Heuristic only; never blocks a run.
    pub fn isogeny_warning(&self, bound: u64) -> Option<String> {
        let primes = super::sieve::sieve_primes(bound).ok()?;
        let mut checked = 0;
        for &p in &primes {
            if self.is_bad(p) {
                continue;
            }
            let t1 = super::count::ap(&self.e1, p, super::count::DEFAULT_CROSSOVER, 0).ok()?;
            let t2 = super::count::ap(&self.e2, p, super::count::DEFAULT_CROSSOVER, 0).ok()?;
            if t1 != t2 {
                return None;
            }
            checked += 1;
        }
        if checked == 0 {
            return None;
        }
        Some(format!(
            "curves have identical traces at all {checked} good primes <= {bound}; \
             they are likely isogenous and violate the model assumptions"
        ))
    }
}

/// Ascending distinct prime divisors of `n` by trial division.
/// Discriminant products of sane models are small enough for this.
fn factor_primes(n: &num_bigint::BigUint) -> Vec<u64> {
    use num_traits::ToPrimitive;
    let mut out = Vec::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    loop {
        let big_d = num_bigint::BigUint::from(d);
        if &big_d * &big_d > n {
            break;
        }
        if (&n % &big_d).is_zero() {
            out.push(d);
            while (&n % &big_d).is_zero() {
                n /= &big_d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > num_bigint::BigUint::from(1u32) {
        // Remaining cofactor is prime; models with discriminant factors
        // beyond u64 are rejected as unusable for sweeps.
        out.push(
            n.to_u64()
                .expect("prime divisor of discriminant exceeds u64"),
        );
    }
    out
}

/// One good prime with both curve traces and the surface trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub p: u64,
    pub ap1: i64,
    pub ap2: i64,
    pub a1p: i64,
}

impl TraceRecord {
    /// Validates the Hasse bounds and the trace sum before admitting the
    /// record. Checks are exact: `a^2 <= 4p` instead of floating square roots.
    pub fn new(p: u64, ap1: i64, ap2: i64, a1p: i64) -> Result<Self> {
        let r = Self { p, ap1, ap2, a1p };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p as i128;
        if self.ap1 as i128 * self.ap1 as i128 > 4 * p {
            return Err(Error::InvalidInput(format!(
                "|ap1| = {} exceeds Hasse bound at p = {}",
                self.ap1.abs(),
                self.p
            )));
        }
        if self.ap2 as i128 * self.ap2 as i128 > 4 * p {
            return Err(Error::InvalidInput(format!(
                "|ap2| = {} exceeds Hasse bound at p = {}",
                self.ap2.abs(),
                self.p
            )));
        }
        if self.a1p as i128 * self.a1p as i128 > 16 * p {
            return Err(Error::InvalidInput(format!(
                "|a1p| = {} exceeds surface Hasse bound at p = {}",
                self.a1p.abs(),
                self.p
            )));
        }
        if self.a1p != self.ap1 + self.ap2 {
            return Err(Error::InvalidInput(format!(
                "a1p = {} but ap1 + ap2 = {} at p = {}",
                self.a1p,
                self.ap1 + self.ap2,
                self.p
            )));
        }
        Ok(())
    }

    /// Normalized surface trace `a1p / (4 sqrt p)`, in [-1, 1].
    pub fn normalized(&self) -> f64 {
        self.a1p as f64 / (4.0 * (self.p as f64).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(0, 0, 0, 0, 0), BigInt::from(0));
        assert_eq!(discriminant(0, 0, 0, -1, 0), BigInt::from(64));
        assert_eq!(discriminant(0, 0, 1, -1, 0), BigInt::from(37));
        assert_eq!(discriminant(0, 1, 1, 0, 0), BigInt::from(-43));
        assert_eq!(discriminant(0, 0, 0, 0, 1), BigInt::from(-432));
        assert_eq!(discriminant(0, 1, 1, -2, 0), BigInt::from(389));
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            EllipticCurveQ::new(0, 0, 0, 0, 0),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn parse_roundtrip() {
        let e = EllipticCurveQ::parse("0, 0, 1, -1, 0").unwrap();
        assert_eq!(e.coefficients(), [0, 0, 1, -1, 0]);
        assert!(EllipticCurveQ::parse("1,2,3").is_err());
        assert!(EllipticCurveQ::parse("a,b,c,d,e").is_err());
    }

    #[test]
    fn bad_primes_of_pair() {
        let e1 = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap(); // disc 37
        let e2 = EllipticCurveQ::new(0, 1, 1, 0, 0).unwrap(); // disc -43
        let pair = SurfacePair::new(e1, e2);
        assert_eq!(pair.bad_primes(), &[37, 43]);
        assert!(pair.is_bad(37));
        assert!(!pair.is_bad(2));
    }

    #[test]
    fn trace_record_invariants() {
        assert!(TraceRecord::new(7, 1, 0, 1).is_ok());
        // |ap1| > 2 sqrt 7
        assert!(TraceRecord::new(7, 6, 0, 6).is_err());
        // sum mismatch
        assert!(TraceRecord::new(7, 1, 1, 3).is_err());
    }

    #[test]
    fn isogeny_warning_fires_on_identical_models() {
        let e1 = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        let e2 = e1.clone();
        let pair = SurfacePair::new(e1, e2);
        assert!(pair.isogeny_warning(100).is_some());

        let e1 = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        let e2 = EllipticCurveQ::new(0, 1, 1, 0, 0).unwrap();
        let pair = SurfacePair::new(e1, e2);
        assert!(pair.isogeny_warning(100).is_none());
    }
}
