//! Adaptive Gauss-Kronrod quadrature (15-point rule, bisection refinement).
//!
//! The error estimate on each interval is the usual QUADPACK-style rescaled
//! difference between the embedded 7-point Gauss and 15-point Kronrod
//! results; the worst interval is split until the summed estimate meets the
//! tolerance.

use crate::error::Error;
use crate::Result;

// 15-point Kronrod abscissae on [0, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights. Values as published, beyond f64 precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// One G7K15 evaluation: returns (kronrod, error estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut result_gauss = fc * WG[3];
    let mut result_kronrod = fc * WGK[7];
    let mut resabs = result_kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        result_kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            // odd indices are the Gauss nodes: XGK[1], XGK[3], XGK[5]
            result_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = result_kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let result = result_kronrod * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((result_kronrod - result_gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Returns `(value, error_estimate)`; fails with [`Error::Accuracy`] when the
/// estimate cannot be pushed below `tol` within the subdivision budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if a == b {
        return Ok((0.0, 0.0));
    }
    const MAX_INTERVALS: usize = 4096;
    let (v, e) = qk15(&f, a, b);
    let mut heap: Vec<Interval> = vec![Interval {
        a,
        b,
        value: v,
        err: e,
    }];
    let mut total_err: f64 = e;

    while total_err > tol && heap.len() < MAX_INTERVALS {
        // worst interval out
        let (idx, _) = heap
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("heap nonempty");
        let worst = heap.swap_remove(idx);
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable in f64; keep it and stop refining
            heap.push(worst);
            break;
        }
        let (v1, e1) = qk15(&f, worst.a, mid);
        let (v2, e2) = qk15(&f, mid, worst.b);
        total_err += e1 + e2 - worst.err;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }

    // Recompute the totals from scratch to shed accumulated cancellation.
    let total_val: f64 = heap.iter().map(|i| i.value).sum();
    total_err = heap.iter().map(|i| i.err).sum();

    if total_err > tol {
        return Err(Error::Accuracy {
            requested: tol,
            achieved: total_err,
        });
    }
    Ok((total_val, total_err))
}
