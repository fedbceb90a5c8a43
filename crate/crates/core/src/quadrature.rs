//! Adaptive 15-point Gauss-Kronrod quadrature.

use crate::error::{domain, Error, Result};

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 50;
const MAX_INTERVALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of |Kronrod - Gauss| over the accepted subintervals.
    pub error: f64,
    pub intervals: usize,
}

/// One G7/K15 pair on [a, b]: (Kronrod estimate, |Kronrod - Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Integral of `f` over [a, b] to relative tolerance `rel_tol`, by recursive
/// bisection of any subinterval whose G7/K15 difference exceeds its share
/// of the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return domain(format!("integration limits must be finite, got [{a}, {b}]"));
    }
    if !(rel_tol > 0.0) {
        return domain(format!("tolerance must be positive, got {rel_tol}"));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, intervals: 0 });
    }
    let (first, first_err) = gk15(&f, a, b);
    let scale = first.abs().max(f64::MIN_POSITIVE);
    let width = (b - a).abs();

    let mut value = 0.0;
    let mut error = 0.0;
    let mut intervals = 0;
    let mut stack = vec![(a, b, first, first_err, 0u32)];
    while let Some((lo, hi, est, err, depth)) = stack.pop() {
        let share = rel_tol * scale * (hi - lo).abs() / width;
        if err <= share || err <= 50.0 * f64::EPSILON * est.abs() {
            value += est;
            error += err;
            intervals += 1;
            continue;
        }
        if depth >= MAX_DEPTH || intervals + stack.len() >= MAX_INTERVALS {
            return Err(Error::Convergence(format!(
                "quadrature on [{a}, {b}] did not reach relative tolerance {rel_tol}"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let (l, le) = gk15(&f, lo, mid);
        let (r, re) = gk15(&f, mid, hi);
        stack.push((mid, hi, r, re, depth + 1));
        stack.push((lo, mid, l, le, depth + 1));
    }
    if !value.is_finite() {
        return Err(Error::Convergence("quadrature produced a non-finite value".into()));
    }
    Ok(Quadrature { value, error, intervals })
}

/// As [`integrate`], for integrands that may behave like sqrt(x - a) and
/// sqrt(b - x) at the ends. Each half is mapped with x = a + t^2 (resp.
/// x = b - t^2), which turns the square-root edge into a smooth one.
pub fn integrate_sqrt_endpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return domain(format!("integration limits must be finite, got [{a}, {b}]"));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, intervals: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let t_max = (0.5 * (hi - lo)).sqrt();
    let left = integrate(|t| 2.0 * t * f(lo + t * t), 0.0, t_max, rel_tol)?;
    let right = integrate(|t| 2.0 * t * f(hi - t * t), 0.0, t_max, rel_tol)?;
    Ok(Quadrature {
        value: sign * (left.value + right.value),
        error: left.error + right.error,
        intervals: left.intervals + right.intervals,
    })
}
