//! The joint density of the normalized trace pair and its support region.

use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

/// Distance to the parabola `y = s²/4 + 2` below which [`rho_joint`]
/// reports the integrable singularity instead of a value.
pub const SINGULARITY_TOL: f64 = 1e-12;

/// A point of the normalized trace plane: `s = a1/sqrt(p)` in [-4, 4],
/// `y = a2/p` in [-6, 6].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPoint {
    pub s: f64,
    pub y: f64,
}

impl JointPoint {
    pub fn new(s: f64, y: f64) -> Result<Self> {
        if !(-4.0..=4.0).contains(&s) || !(-6.0..=6.0).contains(&y) {
            return Err(Error::Domain(format!(
                "joint point ({s}, {y}) outside [-4,4]x[-6,6]"
            )));
        }
        Ok(Self { s, y })
    }
}

/// Membership in the support region
/// `{ y >= 2s - 2, y >= -2s - 2, y <= s²/4 + 2 }`, boundary inclusive.
pub fn in_support(s: f64, y: f64) -> bool {
    y >= 2.0 * s - 2.0 && y >= -2.0 * s - 2.0 && y <= s * s / 4.0 + 2.0
}

/// Joint density
/// `rho(s, y) = (1/2π²) sqrt((y - 2s + 2)(y + 2s + 2) / (s² - 4y + 8))`.
///
/// Returns 0 on the two linear boundary pieces. Points outside the support
/// are a domain error; points within [`SINGULARITY_TOL`] of the parabola
/// `y = s²/4 + 2`, where the density blows up integrably, are flagged so
/// integrators treat the endpoint as improper.
pub fn rho_joint(s: f64, y: f64) -> Result<f64> {
    if !in_support(s, y) {
        return Err(Error::Domain(format!(
            "({s}, {y}) outside the support region"
        )));
    }
    let denom = s * s - 4.0 * y + 8.0;
    if denom < SINGULARITY_TOL {
        return Err(Error::Domain(format!(
            "({s}, {y}) within {SINGULARITY_TOL:e} of the parabolic boundary; \
             treat as an improper (integrable) endpoint"
        )));
    }
    let f1 = y - 2.0 * s + 2.0;
    let f2 = y + 2.0 * s + 2.0;
    // rounding can push a boundary evaluation fractionally negative
    let num = (f1 * f2).max(0.0);
    Ok((num / denom).sqrt() / (2.0 * PI * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_membership() {
        assert!(in_support(0.0, 2.0)); // top boundary at s = 0
        assert!(!in_support(0.0, 3.0));
        assert!(in_support(4.0, 6.0)); // corner: 6 = 2*4-2 = 16/4+2
        assert!(in_support(0.0, -2.0)); // lower corner
        assert!(!in_support(0.0, -2.1));
        assert!(in_support(-4.0, 6.0));
    }

    #[test]
    fn density_values() {
        // lower corner: both numerator factors vanish
        assert_eq!(rho_joint(0.0, -2.0).unwrap(), 0.0);
        // center: (1/2pi^2) sqrt(4/8)
        let v = rho_joint(0.0, 0.0).unwrap();
        let expect = 1.0 / (2.0 * std::f64::consts::SQRT_2 * PI * PI);
        assert!((v - expect).abs() < 1e-15);
        // on the line y = 2s - 2
        assert_eq!(rho_joint(2.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn outside_support_is_error() {
        assert!(rho_joint(0.0, 3.0).is_err());
        assert!(rho_joint(5.0, 0.0).is_err());
    }

    #[test]
    fn near_parabola_flagged() {
        let s = 1.0f64;
        let y = s * s / 4.0 + 2.0 - 1e-14;
        assert!(rho_joint(s, y).is_err());
    }

    #[test]
    fn nonnegative_inside() {
        let mut s = -4.0;
        while s <= 4.0 {
            let mut y = -2.0;
            while y <= s * s / 4.0 + 2.0 - 1e-6 {
                if in_support(s, y) {
                    assert!(rho_joint(s, y).unwrap() >= 0.0);
                }
                y += 0.37;
            }
            s += 0.41;
        }
    }
}
