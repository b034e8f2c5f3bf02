//! The Euler product `F(t) = F_t(m_{A,t}) Π_{l ∤ m_A} F_t(l^{v_l(t)+1})`
//! with a computed (not assumed) truncation tail bound, and the convergence
//! trajectory `F_t(m_n)` along the divisibility ordering.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::factors::{
    class_fraction, local_factor_prime_power, local_factor_universal, valuation,
    LocalFactorValue, Provenance,
};
use super::table::prime_power_factors;
use crate::ec::sieve::sieve_primes;
use crate::error::Error;
use crate::Result;

/// Scan limit for the tail-constant maximization.
const TAIL_SCAN_LIMIT: u64 = 10_000;

/// `C_tail = max_l |F_t(l) - 1| l²` over primes `l <= 10^4` in the coprime
/// branch (the only branch occurring in the tail, since tail primes exceed
/// `|t|`). Exact rational maximization, cached; the maximum sits at `l = 2`
/// with value 4/9.
pub fn tail_constant() -> &'static BigRational {
    static C: OnceLock<BigRational> = OnceLock::new();
    C.get_or_init(|| {
        let primes = sieve_primes(TAIL_SCAN_LIMIT).expect("scan sieve");
        let mut best = BigRational::from(BigInt::from(0));
        for l in primes {
            // the coprime branch is t-independent; t = 1 selects it
            let f = local_factor_universal(l, 1).expect("t = 1").value;
            let dev = (f - BigRational::one()).abs()
                * BigRational::from(BigInt::from(l) * BigInt::from(l));
            if dev > best {
                best = dev;
            }
        }
        best
    })
}

/// One multiplicand of the truncated product, exported in reports.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FactorTerm {
    pub prime: u64,
    pub exponent: u32,
    pub numerator: String,
    pub denominator: String,
    pub provenance: Provenance,
}

impl From<&LocalFactorValue> for FactorTerm {
    fn from(lf: &LocalFactorValue) -> Self {
        Self {
            prime: lf.prime,
            exponent: lf.exponent,
            numerator: lf.value.numer().to_string(),
            denominator: lf.value.denom().to_string(),
            provenance: lf.provenance,
        }
    }
}

/// Result of a truncated Euler product.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EulerProductResult {
    pub t: i64,
    #[serde(rename = "m_A")]
    pub m_a: u64,
    pub cutoff: u64,
    pub value: f64,
    pub tail_bound: f64,
    pub factors: Vec<FactorTerm>,
}

/// `m_{A,t} = m_A Π_{l | m_A} l^{v_l(t)}`.
pub fn entanglement_level(m_a: u64, t: i64) -> u64 {
    let mut m = m_a;
    for (l, _) in prime_power_factors(m_a) {
        m *= l.pow(valuation(t, l));
    }
    m
}

/// Truncated Euler product for `F(t)`.
///
/// The non-universal head `F_t(m_{A,t})` is computed by full-image
/// enumeration when `m_A > 1` (see the crate README for the model caveat);
/// an externally computed exact rational can be supplied instead through
/// [`euler_product_with_head`].
pub fn euler_product(t: i64, m_a: u64, cutoff: u64, cap: u64) -> Result<EulerProductResult> {
    euler_product_with_head(t, m_a, cutoff, cap, None)
}

/// As [`euler_product`], with an optional externally supplied exact value
/// for the entanglement head `F_t(m_{A,t})`.
pub fn euler_product_with_head(
    t: i64,
    m_a: u64,
    cutoff: u64,
    cap: u64,
    head_override: Option<BigRational>,
) -> Result<EulerProductResult> {
    if t == 0 {
        return Err(Error::Domain("F(t) requires t != 0".into()));
    }
    if m_a == 0 {
        return Err(Error::Domain("m_A must be >= 1".into()));
    }
    if cutoff < 2 {
        return Err(Error::Domain("cutoff must be >= 2".into()));
    }

    let mut factors: Vec<FactorTerm> = Vec::new();
    let mut value = 1.0f64;

    // entanglement head
    if m_a > 1 {
        let m_at = entanglement_level(m_a, t);
        let head = match head_override {
            Some(h) => h,
            None => {
                BigRational::from(BigInt::from(m_at)) * class_fraction(m_at, t, cap)?
            }
        };
        value *= head
            .to_f64()
            .ok_or_else(|| Error::Domain("head does not fit f64".into()))?;
        factors.push(FactorTerm {
            prime: 0,
            exponent: 0,
            numerator: head.numer().to_string(),
            denominator: head.denom().to_string(),
            provenance: Provenance::Enumeration,
        });
    }

    for l in sieve_primes(cutoff)? {
        if m_a.is_multiple_of(l) {
            continue;
        }
        let lf = local_factor_universal(l, t)?;
        value *= lf
            .value
            .to_f64()
            .ok_or_else(|| Error::Domain("factor does not fit f64".into()))?;
        factors.push(FactorTerm::from(&lf));
    }

    // |Π_{l > L} F - 1| <= Σ_{l > L} C/l² <= C/(L - 1) by the integral test
    let c_tail = tail_constant()
        .to_f64()
        .expect("tail constant fits f64");
    let tail_bound = value.abs() * c_tail / (cutoff as f64 - 1.0);

    Ok(EulerProductResult {
        t,
        m_a,
        cutoff,
        value,
        tail_bound,
        factors,
    })
}

/// The trajectory `(n, F_t(m_n))` for `m_n = Π_{l<=n} l^n`, computed through
/// multiplicativity across prime powers. Exact internally; reported as f64.
pub fn f_convergence_sequence(t: i64, n_max: u32, cap: u64) -> Result<Vec<(u32, f64)>> {
    if t == 0 {
        return Err(Error::Domain("F_t requires t != 0".into()));
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        let primes = sieve_primes(n as u64)?;
        let mut acc = BigRational::one();
        for l in primes {
            acc *= local_factor_prime_power(l, n, t, cap)?.value;
        }
        out.push((
            n,
            acc.to_f64()
                .ok_or_else(|| Error::Domain("F_t(m_n) does not fit f64".into()))?,
        ));
    }
    Ok(out)
}
