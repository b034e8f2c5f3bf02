//! Short Weierstrass reductions mod p and affine point arithmetic.

use super::curve::EllipticCurveQ;
use super::modarith::{addmod, invmod, legendre, mulmod, sqrtmod, submod};
use crate::error::Error;
use crate::Result;

/// `y^2 = x^3 + a x + b` over `F_p`, `p >= 5`.
#[derive(Debug, Clone, Copy)]
pub struct CurveFp {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// Affine point or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(u64, u64),
}

impl CurveFp {
    /// Reduce a long Weierstrass model mod `p >= 5` to the isomorphic short
    /// model `y^2 = x^3 - 27 c4 x - 54 c6`. The substitutions scale by units,
    /// so point counts are preserved.
    pub fn from_long(e: &EllipticCurveQ, p: u64) -> Result<Self> {
        if e.has_bad_reduction(p) {
            return Err(Error::BadReduction { p });
        }
        if p < 5 {
            return Err(Error::Domain(format!(
                "short-model reduction requires p >= 5, got {p}"
            )));
        }
        let m = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
        let [a1, a2, a3, a4, a6] = e.coefficients().map(m);
        let b2 = addmod(mulmod(a1, a1, p), mulmod(4 % p, a2, p), p);
        let b4 = addmod(mulmod(2, a4, p), mulmod(a1, a3, p), p);
        let b6 = addmod(mulmod(a3, a3, p), mulmod(4 % p, a6, p), p);
        let c4 = submod(mulmod(b2, b2, p), mulmod(24 % p, b4, p), p);
        let b2_cubed = mulmod(mulmod(b2, b2, p), b2, p);
        let c6 = submod(
            submod(mulmod(mulmod(36 % p, b2, p), b4, p), b2_cubed, p),
            mulmod(216 % p, b6, p),
            p,
        );
        let a = submod(0, mulmod(27 % p, c4, p), p);
        let b = submod(0, mulmod(54 % p, c6, p), p);
        Ok(Self { p, a, b })
    }

    /// Quadratic twist by `d` (a unit; for a genuine twist, a non-residue).
    pub fn twist(&self, d: u64) -> Self {
        let p = self.p;
        let d2 = mulmod(d, d, p);
        let d3 = mulmod(d2, d, p);
        Self {
            p,
            a: mulmod(self.a, d2, p),
            b: mulmod(self.b, d3, p),
        }
    }

    #[inline]
    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mulmod(x, x, p);
        addmod(addmod(mulmod(x2, x, p), mulmod(self.a, x, p), p), self.b, p)
    }

    /// True when `(x, y)` satisfies the equation.
    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => mulmod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                if y == 0 {
                    Point::Affine(x, 0)
                } else {
                    Point::Affine(x, self.p - y)
                }
            }
        }
    }

    pub fn add(&self, p1: Point, p2: Point) -> Point {
        let p = self.p;
        match (p1, p2) {
            (Point::Infinity, q) => q,
            (q, Point::Infinity) => q,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                if x1 == x2 {
                    if addmod(y1, y2, p) == 0 {
                        return Point::Infinity;
                    }
                    // doubling
                    let num = addmod(mulmod(3, mulmod(x1, x1, p), p), self.a, p);
                    let den = mulmod(2, y1, p);
                    let lam = mulmod(num, invmod(den, p), p);
                    let x3 = submod(mulmod(lam, lam, p), addmod(x1, x2, p), p);
                    let y3 = submod(mulmod(lam, submod(x1, x3, p), p), y1, p);
                    Point::Affine(x3, y3)
                } else {
                    let lam = mulmod(submod(y2, y1, p), invmod(submod(x2, x1, p), p), p);
                    let x3 = submod(mulmod(lam, lam, p), addmod(x1, x2, p), p);
                    let y3 = submod(mulmod(lam, submod(x1, x3, p), p), y1, p);
                    Point::Affine(x3, y3)
                }
            }
        }
    }

    /// `n * pt` by double-and-add.
    pub fn mul(&self, mut n: u64, pt: Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = pt;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// A deterministic "random" point driven by the supplied RNG.
    pub fn random_point(&self, rng: &mut impl rand::Rng) -> Point {
        loop {
            let x = rng.gen_range(0..self.p);
            let r = self.rhs(x);
            if r == 0 {
                return Point::Affine(x, 0);
            }
            if legendre(r, self.p) == 1 {
                let y = sqrtmod(r, self.p).expect("legendre said square");
                return Point::Affine(x, y);
            }
        }
    }

    /// Smallest quadratic non-residue mod p.
    pub fn nonresidue(&self) -> u64 {
        let mut d = 2;
        while legendre(d, self.p) != -1 {
            d += 1;
        }
        d
    }
}
