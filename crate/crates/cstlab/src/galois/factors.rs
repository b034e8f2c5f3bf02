//! Class fractions in the determinant-matched product group and the local
//! factors `F_t(l^{v+1})` of the Lang-Trotter constant, by enumeration and
//! in closed form.
//!
//! The group model is `G(m) = {(g1, g2) in GL2(Z/m)^2 : det g1 = det g2}`
//! (the full fiber product), and the class `C(m, t)` collects pairs with
//! `tr g1 + tr g2 = t (mod m)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::table::TraceDetTable;
use crate::error::Error;
use crate::Result;

/// How a local factor value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Enumeration,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::ClosedForm => write!(f, "closed-form"),
            Provenance::Enumeration => write!(f, "enumeration"),
        }
    }
}

/// An exact local factor value with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFactorValue {
    pub prime: u64,
    pub exponent: u32,
    pub t: i64,
    pub value: BigRational,
    pub provenance: Provenance,
}

/// `(#C(m, t), #G(m))` from a trace/det table.
fn class_and_group(table: &TraceDetTable) -> (Vec<u128>, u128) {
    let m = table.modulus();
    let mut group: u128 = 0;
    let mut class = vec![0u128; m as usize];
    for &d in table.units() {
        let fiber = table.det_fiber(d);
        group += fiber * fiber;
        for t1 in 0..m {
            let n1 = table.get(t1, d) as u128;
            if n1 == 0 {
                continue;
            }
            for t2 in 0..m {
                let n2 = table.get(t2, d) as u128;
                if n2 == 0 {
                    continue;
                }
                class[((t1 + t2) % m) as usize] += n1 * n2;
            }
        }
    }
    (class, group)
}

/// `#C(m, t) / #G(m)` as an exact rational.
pub fn class_fraction(m: u64, t: i64, cap: u64) -> Result<BigRational> {
    if m == 1 {
        return Ok(BigRational::one());
    }
    let table = TraceDetTable::build(m, cap)?;
    let (class, group) = class_and_group(&table);
    let idx = t.rem_euclid(m as i64) as usize;
    Ok(BigRational::new(
        BigInt::from(class[idx]),
        BigInt::from(group),
    ))
}

/// All residue class fractions at once (used by partition tests and the
/// convergence scan).
pub fn class_fractions_all(m: u64, cap: u64) -> Result<Vec<BigRational>> {
    if m == 1 {
        return Ok(vec![BigRational::one()]);
    }
    let table = TraceDetTable::build(m, cap)?;
    let (class, group) = class_and_group(&table);
    Ok(class
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), BigInt::from(group)))
        .collect())
}

/// `F_t(m) = m #C(m, t) / #G(m)` by enumeration, for a prime power `l^k`.
pub fn local_factor_bruteforce(l: u64, k: u32, t: i64, cap: u64) -> Result<LocalFactorValue> {
    let m = l
        .checked_pow(k)
        .ok_or_else(|| Error::Resource(format!("{l}^{k} overflows")))?;
    let value = BigRational::from(BigInt::from(m)) * class_fraction(m, t, cap)?;
    Ok(LocalFactorValue {
        prime: l,
        exponent: k,
        t,
        value,
        provenance: Provenance::Enumeration,
    })
}

/// l-adic valuation of `t != 0`.
pub fn valuation(t: i64, l: u64) -> u32 {
    debug_assert!(t != 0);
    let mut v = 0;
    let mut n = t.unsigned_abs();
    while n.is_multiple_of(l) {
        n /= l;
        v += 1;
    }
    v
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Stabilized universal local factor `F_t(l^{v_l(t)+1})` in closed form.
///
/// For `l` coprime to `t`:
/// `F = l (l⁴ - l³ - 2l² + l + 2) / ((l² - 1)² (l - 1))`.
///
/// For `v = v_l(t) >= 1` the value depends on `v` alone:
/// a main term, a base correction `2l/(l²-1)²`, and a geometric series in
/// `l^{-2}` of length `v - 1`:
///
/// `F = (l⁶ - l⁴ - 3l³ - l)/(l⁶ - 2l⁴ + l²) + 2l/(l²-1)²
///      + (l² + l + 1)/(l³ (l-1) (l+1)²) · Σ_{j=0}^{v-2} l^{-2j}`.
///
/// Every piece is exact rational arithmetic; the branch structure was
/// validated term-by-term against fiber-product enumeration for
/// `l ∈ {2,3,5,7}` and `v` up to 8.
pub fn local_factor_universal(l: u64, t: i64) -> Result<LocalFactorValue> {
    if t == 0 {
        return Err(Error::Domain(
            "local factors are defined for t != 0 only".into(),
        ));
    }
    let v = valuation(t, l);
    let lb = big(l);
    let one = BigInt::from(1);
    let lsq_m1: BigInt = lb.pow(2) - &one; // l² - 1
    let value = if v == 0 {
        let num = &lb * (lb.pow(4) - lb.pow(3) - BigInt::from(2) * lb.pow(2) + &lb + BigInt::from(2));
        let den = lsq_m1.pow(2) * (&lb - &one);
        BigRational::new(num, den)
    } else {
        let main = BigRational::new(
            lb.pow(6) - lb.pow(4) - BigInt::from(3) * lb.pow(3) - &lb,
            lb.pow(6) - BigInt::from(2) * lb.pow(4) + lb.pow(2),
        );
        let base = BigRational::new(BigInt::from(2) * &lb, lsq_m1.pow(2));
        let deviation = BigRational::new(
            lb.pow(2) + &lb + &one,
            lb.pow(3) * (&lb - &one) * (&lb + &one).pow(2),
        );
        // sum_{j=0}^{v-2} l^{-2j}
        let geo = if v == 1 {
            BigRational::zero()
        } else {
            BigRational::new(lb.pow(2 * (v - 1)) - &one, lb.pow(2 * (v - 2)) * &lsq_m1)
        };
        main + base + deviation * geo
    };
    Ok(LocalFactorValue {
        prime: l,
        exponent: v + 1,
        t,
        value,
        provenance: Provenance::ClosedForm,
    })
}

/// `F_t(l^k)` for an arbitrary exponent: enumeration when `l^k` is within
/// the cap, the stabilized closed form when `k >= v_l(t) + 1`.
pub fn local_factor_prime_power(l: u64, k: u32, t: i64, cap: u64) -> Result<LocalFactorValue> {
    if t == 0 {
        return Err(Error::Domain(
            "local factors are defined for t != 0 only".into(),
        ));
    }
    if k == 0 {
        return Ok(LocalFactorValue {
            prime: l,
            exponent: 0,
            t,
            value: BigRational::one(),
            provenance: Provenance::ClosedForm,
        });
    }
    if l.checked_pow(k).is_some_and(|q| q <= cap) {
        return local_factor_bruteforce(l, k, t, cap);
    }
    let v = valuation(t, l);
    // stabilized once k >= v + 1
    if k > v {
        let mut lf = local_factor_universal(l, t)?;
        lf.exponent = k;
        Ok(lf)
    } else {
        Err(Error::Resource(format!(
            "F_t({l}^{k}) with k < v+1 = {} needs enumeration beyond the cap {cap}",
            v + 1
        )))
    }
}

/// True iff `0 < value < 2`, the sanity band every local factor must lie in.
pub fn in_sanity_band(value: &BigRational) -> bool {
    value.is_positive() && *value < BigRational::from(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::table::DEFAULT_ENUM_CAP;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn class_fraction_examples() {
        assert_eq!(class_fraction(1, 7, DEFAULT_ENUM_CAP).unwrap(), rat(1, 1));
        assert_eq!(class_fraction(2, 1, DEFAULT_ENUM_CAP).unwrap(), rat(4, 9));
    }

    #[test]
    fn partition_of_unity() {
        for m in [2u64, 3, 4, 5, 6] {
            let fracs = class_fractions_all(m, DEFAULT_ENUM_CAP).unwrap();
            let sum: BigRational = fracs.iter().sum();
            assert!(sum.is_one(), "m = {m}: sum = {sum}");
        }
    }

    #[test]
    fn multiplicativity_via_crt() {
        for (m1, m2) in [(2u64, 3u64), (2, 5), (3, 4)] {
            for t in [1i64, 2, 5] {
                let lhs = class_fraction(m1 * m2, t, DEFAULT_ENUM_CAP).unwrap();
                let rhs = class_fraction(m1, t, DEFAULT_ENUM_CAP).unwrap()
                    * class_fraction(m2, t, DEFAULT_ENUM_CAP).unwrap();
                assert_eq!(lhs, rhs, "m1={m1} m2={m2} t={t}");
            }
        }
    }

    #[test]
    fn bruteforce_anchors() {
        let f = local_factor_bruteforce(2, 1, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(f.value, rat(8, 9));
        assert_eq!(f.provenance, Provenance::Enumeration);
        let f = local_factor_bruteforce(3, 1, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(f.value, rat(123, 128));
        let f = local_factor_bruteforce(2, 2, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(f.value, rat(19, 18));
    }

    #[test]
    fn universal_coprime_branch() {
        assert_eq!(local_factor_universal(2, 1).unwrap().value, rat(8, 9));
        assert_eq!(local_factor_universal(3, 1).unwrap().value, rat(123, 128));
        assert_eq!(
            local_factor_universal(5, 2).unwrap().value,
            rat(2285, 2304)
        );
    }

    #[test]
    fn universal_divisible_branch_frozen() {
        // values pinned by fiber-product enumeration
        assert_eq!(local_factor_universal(2, 2).unwrap().value, rat(19, 18));
        assert_eq!(local_factor_universal(2, 4).unwrap().value, rat(83, 72));
        assert_eq!(local_factor_universal(2, 8).unwrap().value, rat(113, 96));
        assert_eq!(local_factor_universal(2, 16).unwrap().value, rat(1363, 1152));
        assert_eq!(local_factor_universal(3, 3).unwrap().value, rat(103, 96));
        assert_eq!(local_factor_universal(3, 9).unwrap().value, rat(235, 216));
        assert_eq!(local_factor_universal(5, 5).unwrap().value, rat(1487, 1440));
        assert_eq!(
            local_factor_universal(7, 7).unwrap().value,
            rat(8207, 8064)
        );
    }

    #[test]
    fn universal_equals_bruteforce_where_enumerable() {
        for l in [2u64, 3, 5] {
            for t in 1i64..=12 {
                let v = valuation(t, l);
                let Some(m) = l.checked_pow(v + 1) else { continue };
                if m > DEFAULT_ENUM_CAP {
                    continue;
                }
                let u = local_factor_universal(l, t).unwrap().value;
                let b = local_factor_bruteforce(l, v + 1, t, DEFAULT_ENUM_CAP)
                    .unwrap()
                    .value;
                assert_eq!(u, b, "l={l} t={t}");
            }
        }
    }

    #[test]
    fn stabilization() {
        // F_t(l^k) constant for k >= v+1, hard requirement behind the limit
        for (l, ks, t) in [(2u64, vec![1u32, 2, 3, 4], 1i64), (3, vec![1, 2], 1)] {
            let base = local_factor_bruteforce(l, ks[0], t, DEFAULT_ENUM_CAP)
                .unwrap()
                .value;
            for &k in &ks[1..] {
                let v = local_factor_bruteforce(l, k, t, DEFAULT_ENUM_CAP)
                    .unwrap()
                    .value;
                assert_eq!(v, base, "stabilization broken at l={l} k={k}");
            }
        }
        // t = 2: stabilizes from k = 2 on
        let f4 = local_factor_bruteforce(2, 2, 2, DEFAULT_ENUM_CAP).unwrap().value;
        let f8 = local_factor_bruteforce(2, 3, 2, DEFAULT_ENUM_CAP).unwrap().value;
        let f16 = local_factor_bruteforce(2, 4, 2, DEFAULT_ENUM_CAP).unwrap().value;
        assert_eq!(f4, f8);
        assert_eq!(f8, f16);
    }

    #[test]
    fn negative_t_matches_positive() {
        for l in [2u64, 3, 5] {
            for t in 1i64..=6 {
                assert_eq!(
                    local_factor_universal(l, t).unwrap().value,
                    local_factor_universal(l, -t).unwrap().value
                );
            }
        }
    }

    #[test]
    fn t_zero_rejected() {
        assert!(local_factor_universal(2, 0).is_err());
        assert!(local_factor_prime_power(2, 3, 0, DEFAULT_ENUM_CAP).is_err());
    }

    #[test]
    fn prime_power_dispatch() {
        // within cap: enumeration
        let f = local_factor_prime_power(2, 3, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(f.provenance, Provenance::Enumeration);
        assert_eq!(f.value, rat(8, 9));
        // beyond cap but stabilized: closed form
        let f = local_factor_prime_power(2, 9, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(f.provenance, Provenance::ClosedForm);
        assert_eq!(f.value, rat(8, 9));
        // beyond cap, below stabilization: refused (2^6 = 64 > cap, k = 6 < v+1 = 8)
        assert!(local_factor_prime_power(2, 6, 1 << 7, DEFAULT_ENUM_CAP).is_err());
        // k = 0: F_t(1) = 1
        assert!(local_factor_prime_power(7, 0, 5, DEFAULT_ENUM_CAP)
            .unwrap()
            .value
            .is_one());
    }

    #[test]
    fn enumeration_denominator_divides_group_order() {
        use super::super::table::gl2_order;
        for (l, k, t) in [(2u64, 1u32, 1i64), (3, 1, 2), (2, 2, 2)] {
            let f = local_factor_bruteforce(l, k, t, DEFAULT_ENUM_CAP).unwrap();
            let m = l.pow(k);
            // #G = |GL2|^2 / phi(m)
            let phi = BigInt::from(m - m / l);
            let group = gl2_order(m).pow(2) / phi;
            assert!(
                (group % f.value.denom()).is_zero(),
                "denominator of F must divide #G at l={l} k={k}"
            );
        }
    }
}
