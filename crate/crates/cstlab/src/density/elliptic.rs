//! Complete elliptic integrals in the parameter convention,
//! `K(m) = ∫₀^{π/2} (1 - m sin²θ)^{-1/2} dθ` and
//! `E(m) = ∫₀^{π/2} (1 - m sin²θ)^{1/2} dθ`.
//!
//! Negative parameters are first mapped into `[0, 1)` by the imaginary
//! modulus transformation, then both integrals are evaluated with the AGM.

use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

const MAX_ITER: usize = 64;

/// AGM of (1, b0) together with the weighted sum Σ 2^{n-1} c_n² used by E.
/// `c0_sq` is the square of the zeroth deviation (may be negative when the
/// parameter is negative, which only enters the sum algebraically).
///
/// Terminates on `|c_n| <= ε a` rather than on `|a - b|`: once the pair is
/// within rounding of its limit the deviations stop shrinking, and the
/// growing weights `2^n` would otherwise feed rounding noise into the sum.
fn agm_with_sum(b0: f64, c0_sq: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = b0;
    let mut sum = 0.5 * c0_sq;
    let mut pow2 = 1.0f64;
    for _ in 0..MAX_ITER {
        let c = 0.5 * (a - b);
        sum += pow2 * c * c;
        pow2 *= 2.0;
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
    }
    (a, sum)
}

/// Complete elliptic integral of the first kind, parameter `m < 1`.
pub fn ellip_k(m: f64) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::Domain(format!("K parameter must be finite, got {m}")));
    }
    if m >= 1.0 {
        return Err(Error::Domain(format!(
            "K(m) diverges for m >= 1 (got m = {m})"
        )));
    }
    // K(m) = pi / (2 AGM(1, sqrt(1-m))) holds for every m < 1.
    let (agm, _) = agm_with_sum((1.0 - m).sqrt(), m);
    Ok(PI / (2.0 * agm))
}

/// Complete elliptic integral of the second kind, parameter `m <= 1`.
pub fn ellip_e(m: f64) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::Domain(format!("E parameter must be finite, got {m}")));
    }
    if m > 1.0 {
        return Err(Error::Domain(format!("E(m) requires m <= 1, got {m}")));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    if m < 0.0 {
        // E(-mu) = sqrt(1+mu) E(mu/(1+mu))
        let mu = -m;
        return Ok((1.0 + mu).sqrt() * ellip_e_unit(mu / (1.0 + mu)));
    }
    Ok(ellip_e_unit(m))
}

/// E(m) for m in [0, 1) via the AGM series E = K (1 - Σ 2^{n-1} c_n²).
fn ellip_e_unit(m: f64) -> f64 {
    let (agm, sum) = agm_with_sum((1.0 - m).sqrt(), m);
    let k = PI / (2.0 * agm);
    k * (1.0 - sum)
}
