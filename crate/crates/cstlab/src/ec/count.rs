//! Trace of Frobenius at good primes, by two independent routes.
//!
//! `ap_naive` counts points directly: a full (x, y) scan of the long model
//! for p = 2, 3, and a quadratic-character sum over the completed-square
//! cubic for odd p. `ap_bsgs` finds the group order inside the Hasse
//! interval by baby-step/giant-step order finding, combining constraints
//! from several random points and from the quadratic twist until the order
//! is unique.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::curve::EllipticCurveQ;
use super::curve_fp::{CurveFp, Point};
use crate::error::Error;
use crate::Result;

/// Below this prime, exhaustive counting beats order finding.
pub const DEFAULT_CROSSOVER: u64 = 512;

/// Random points tried (curve and twist together) before giving up.
const MAX_POINT_ATTEMPTS: u32 = 24;

/// `a_p = p + 1 - #E(F_p)` by exhaustive counting.
pub fn ap_naive(e: &EllipticCurveQ, p: u64) -> Result<i64> {
    if e.has_bad_reduction(p) {
        return Err(Error::BadReduction { p });
    }
    if p < 5 {
        return Ok(p as i64 + 1 - enumerate_points_long(e, p) as i64);
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 =: f(x);
    // #E = p + 1 + sum_x chi(f(x)), so a_p = -sum_x chi(f(x)).
    let m = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let [a1, a2, a3, a4, a6] = e.coefficients().map(m);
    use super::modarith::{addmod, mulmod};
    let b2 = addmod(mulmod(a1, a1, p), mulmod(4 % p, a2, p), p);
    let b4 = addmod(mulmod(2, a4, p), mulmod(a1, a3, p), p);
    let b6 = addmod(mulmod(a3, a3, p), mulmod(4 % p, a6, p), p);

    // quadratic-residue bitmap
    let mut is_square = vec![false; p as usize];
    let mut y = 0u64;
    while y <= p / 2 {
        is_square[mulmod(y, y, p) as usize] = true;
        y += 1;
    }

    let mut sum: i64 = 0;
    for x in 0..p {
        let x2 = mulmod(x, x, p);
        let fx = addmod(
            addmod(mulmod(4 % p, mulmod(x2, x, p), p), mulmod(b2, x2, p), p),
            addmod(mulmod(mulmod(2, b4, p), x, p), b6, p),
            p,
        );
        if fx == 0 {
            continue;
        }
        sum += if is_square[fx as usize] { 1 } else { -1 };
    }
    Ok(-sum)
}

/// Full scan of the long Weierstrass equation over F_p; used for p = 2, 3
/// and as an independent oracle in tests.
pub fn enumerate_points_long(e: &EllipticCurveQ, p: u64) -> u64 {
    let m = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let [a1, a2, a3, a4, a6] = e.coefficients().map(m);
    use super::modarith::{addmod, mulmod};
    let mut n = 1; // infinity
    for x in 0..p {
        let x2 = mulmod(x, x, p);
        let rhs = addmod(
            addmod(mulmod(x2, x, p), mulmod(a2, x2, p), p),
            addmod(mulmod(a4, x, p), a6, p),
            p,
        );
        for y in 0..p {
            let lhs = addmod(
                addmod(mulmod(y, y, p), mulmod(a1, mulmod(x, y, p), p), p),
                mulmod(a3, y, p),
                p,
            );
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// `a_p` by baby-step/giant-step group-order search. Requires `p >= 5` and
/// good reduction; intended for primes above the naive crossover.
///
/// Point selection is driven by a deterministic per-(curve, p) seed derived
/// from `seed`, so results are reproducible and independent of scheduling.
pub fn ap_bsgs(e: &EllipticCurveQ, p: u64, seed: u64) -> Result<i64> {
    let curve = CurveFp::from_long(e, p)?;
    let n = group_order(&curve, derive_seed(seed, e, p))?;
    Ok(p as i64 + 1 - n as i64)
}

/// Dispatch: naive below the crossover or for p < 5, BSGS above, falling
/// back to naive if the order search reports ambiguity.
pub fn ap(e: &EllipticCurveQ, p: u64, crossover: u64, seed: u64) -> Result<i64> {
    if e.has_bad_reduction(p) {
        return Err(Error::BadReduction { p });
    }
    if p < 5 || p < crossover {
        return ap_naive(e, p);
    }
    match ap_bsgs(e, p, seed) {
        Ok(v) => Ok(v),
        Err(Error::Ambiguous { .. }) => ap_naive(e, p),
        Err(other) => Err(other),
    }
}

/// Stable mix of the global seed, the curve coefficients, and the prime.
fn derive_seed(global: u64, e: &EllipticCurveQ, p: u64) -> u64 {
    let mut h = global ^ 0x9e37_79b9_7f4a_7c15;
    let mut mix = |v: u64| {
        h ^= v.wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 27;
    };
    for c in e.coefficients() {
        mix(c as u64);
    }
    mix(p);
    h
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// #E(F_p) via BSGS order finding in the Hasse interval.
fn group_order(curve: &CurveFp, seed: u64) -> Result<u64> {
    let p = curve.p;
    let hasse = isqrt(4 * p);
    let lo = p + 1 - hasse;
    let hi = p + 1 + hasse;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let twist = curve.twist(curve.nonresidue());

    // lcm of point orders on the curve and on its twist
    let mut lcm_curve = 1u64;
    let mut lcm_twist = 1u64;

    for attempt in 0..MAX_POINT_ATTEMPTS {
        // Alternate between the curve and its twist; the twist constrains the
        // order through #E + #E^d = 2p + 2.
        let on_twist = attempt % 2 == 1;
        let (c, acc) = if on_twist {
            (&twist, &mut lcm_twist)
        } else {
            (curve, &mut lcm_curve)
        };
        let pt = c.random_point(&mut rng);
        let ord = point_order(c, pt, lo, hi)?;
        *acc = num_integer::lcm(*acc, ord);

        let cand_curve = multiples_in(lcm_curve, lo, hi);
        if cand_curve.len() == 1 {
            return Ok(cand_curve[0]);
        }
        let cand_twist = multiples_in(lcm_twist, lo, hi);
        if cand_twist.len() == 1 {
            return Ok(2 * p + 2 - cand_twist[0]);
        }
        // intersect the two constraint sets
        let joint: Vec<u64> = cand_curve
            .iter()
            .copied()
            .filter(|n| cand_twist.contains(&(2 * p + 2 - n)))
            .collect();
        if joint.len() == 1 {
            return Ok(joint[0]);
        }
    }
    Err(Error::Ambiguous {
        p,
        attempts: MAX_POINT_ATTEMPTS,
    })
}

fn multiples_in(d: u64, lo: u64, hi: u64) -> Vec<u64> {
    let first = lo.div_ceil(d) * d;
    (first..=hi).step_by(d as usize).collect()
}

/// Exact order of `pt`, using BSGS to find one annihilating multiple in
/// `[lo, hi]` and then stripping prime factors.
fn point_order(curve: &CurveFp, pt: Point, lo: u64, hi: u64) -> Result<u64> {
    if pt == Point::Infinity {
        return Ok(1);
    }
    let width = hi - lo + 1;
    let w = isqrt(width) + 1;

    // Baby table: i * pt for i in [0, w).
    let mut baby: Vec<(u64, u64, u64)> = Vec::with_capacity(w as usize);
    let mut cur = Point::Infinity;
    let mut hit_order: Option<u64> = None;
    for i in 0..w {
        match cur {
            Point::Infinity => {
                if i > 0 {
                    hit_order = Some(i);
                    break;
                }
            }
            Point::Affine(x, y) => baby.push((x, y, i)),
        }
        cur = curve.add(cur, pt);
    }
    if let Some(ord) = hit_order {
        return Ok(ord);
    }
    baby.sort_unstable();

    // Giant steps: find all n = lo + i + j*w in [lo, hi] with n*pt = O,
    // i.e. i*pt = -(lo*pt) - j*(w*pt).
    let giant = curve.mul(w, pt);
    let base = curve.neg(curve.mul(lo, pt));
    let mut solutions: Vec<u64> = Vec::new();
    let mut target = base;
    let jmax = width / w + 1;
    for j in 0..=jmax {
        match target {
            Point::Infinity => {
                // i = 0 solves; n = lo + j*w
                let n = lo + j * w;
                if n <= hi {
                    solutions.push(n);
                }
            }
            Point::Affine(x, y) => {
                if let Ok(k) = baby.binary_search_by(|probe| (probe.0, probe.1).cmp(&(x, y))) {
                    let i = baby[k].2;
                    let n = lo + i + j * w;
                    if n <= hi {
                        solutions.push(n);
                    }
                }
            }
        }
        target = curve.add(target, curve.neg(giant));
    }

    let n0 = *solutions.first().ok_or(Error::Domain(format!(
        "no annihilating multiple in Hasse interval at p = {} (arithmetic bug)",
        curve.p
    )))?;

    // Reduce n0 to the exact point order.
    let mut ord = n0;
    let mut rem = ord;
    let mut f = 2u64;
    let mut prime_factors = Vec::new();
    while f * f <= rem {
        if rem % f == 0 {
            prime_factors.push(f);
            while rem % f == 0 {
                rem /= f;
            }
        }
        f += 1;
    }
    if rem > 1 {
        prime_factors.push(rem);
    }
    for q in prime_factors {
        while ord % q == 0 && curve.mul(ord / q, pt) == Point::Infinity {
            ord /= q;
        }
    }
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curves() -> Vec<EllipticCurveQ> {
        vec![
            EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap(),  // disc 37
            EllipticCurveQ::new(0, 1, 1, 0, 0).unwrap(),   // disc -43
            EllipticCurveQ::new(0, 1, 1, -2, 0).unwrap(),  // disc 389
            EllipticCurveQ::new(0, 0, 0, 0, 1).unwrap(),   // disc -432, CM
        ]
    }

    #[test]
    fn naive_matches_full_enumeration() {
        // two independent routes: character sum vs (x, y) scan
        for e in curves() {
            for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 101, 199] {
                if e.has_bad_reduction(p) {
                    continue;
                }
                let by_sum = ap_naive(&e, p).unwrap();
                let by_scan = p as i64 + 1 - enumerate_points_long(&e, p) as i64;
                assert_eq!(by_sum, by_scan, "curve {:?} p {}", e.coefficients(), p);
            }
        }
    }

    #[test]
    fn known_trace_values() {
        let e37 = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        let expected = [
            (2, -2),
            (3, -3),
            (5, -2),
            (7, -1),
            (11, -5),
            (13, -2),
            (17, 0),
            (19, 0),
            (23, 2),
        ];
        for (p, a) in expected {
            assert_eq!(ap_naive(&e37, p).unwrap(), a, "p = {p}");
        }
        let e43 = EllipticCurveQ::new(0, 1, 1, 0, 0).unwrap();
        for (p, a) in [(2, -2), (3, -2), (5, -4), (7, 0), (11, 3), (13, -5)] {
            assert_eq!(ap_naive(&e43, p).unwrap(), a, "p = {p}");
        }
        // y^2 = x^3 + 1 is supersingular at p = 5
        let cm = EllipticCurveQ::new(0, 0, 0, 0, 1).unwrap();
        assert_eq!(ap_naive(&cm, 5).unwrap(), 0);
    }

    #[test]
    fn bad_reduction_rejected() {
        let e37 = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        assert!(matches!(
            ap_naive(&e37, 37),
            Err(Error::BadReduction { p: 37 })
        ));
        assert!(matches!(
            ap_bsgs(&e37, 37, 0),
            Err(Error::BadReduction { p: 37 })
        ));
    }

    #[test]
    fn bsgs_agrees_with_naive_spot() {
        for e in curves() {
            for p in [521u64, 1009, 4001, 9973] {
                if e.has_bad_reduction(p) {
                    continue;
                }
                assert_eq!(
                    ap_bsgs(&e, p, 0).unwrap(),
                    ap_naive(&e, p).unwrap(),
                    "curve {:?} p {}",
                    e.coefficients(),
                    p
                );
            }
        }
    }

    #[test]
    fn bsgs_at_10007() {
        let e37 = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        let a = ap_bsgs(&e37, 10007, 0).unwrap();
        assert_eq!(a, 66);
        assert_eq!(a, ap_naive(&e37, 10007).unwrap());
        assert!(a.abs() <= 200);

        let e43 = EllipticCurveQ::new(0, 1, 1, 0, 0).unwrap();
        assert_eq!(ap_bsgs(&e43, 10007, 0).unwrap(), 187);
    }

    #[test]
    fn twist_negates_trace() {
        // For d a non-residue mod p, the d-twist has trace -a_p. Build the
        // twisted integral model from the short reduction and recount.
        let e = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        for p in [101u64, 1009, 4001] {
            let c = CurveFp::from_long(&e, p).unwrap();
            let d = c.nonresidue();
            let tw = c.twist(d);
            let tw_model = EllipticCurveQ::new(0, 0, 0, tw.a as i64, tw.b as i64).unwrap();
            assert_eq!(
                ap_naive(&tw_model, p).unwrap(),
                -ap_naive(&e, p).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn point_order_divides_group_order() {
        // (0, 0) lies on y^2 + y = x^3 - x; its reduction order divides #E(F_p).
        let e = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        for p in [5u64, 11, 101, 1009] {
            let c = CurveFp::from_long(&e, p).unwrap();
            let n = (p as i64 + 1 - ap_naive(&e, p).unwrap()) as u64;
            // (0,0) maps through x' = 36x + 3b2, y' = 108(2y + a1 x + a3);
            // here b2 = 0, a1 = 0, a3 = 1, so the image is (0, 108).
            let pt = Point::Affine(0, 108 % p);
            assert!(c.contains(pt), "mapped point must lie on short model, p={p}");
            assert_eq!(c.mul(n, pt), Point::Infinity, "p = {p}");
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let e = EllipticCurveQ::new(0, 1, 1, -2, 0).unwrap();
        let a1 = ap_bsgs(&e, 100003, 42).unwrap();
        let a2 = ap_bsgs(&e, 100003, 42).unwrap();
        assert_eq!(a1, a2);
    }
}
