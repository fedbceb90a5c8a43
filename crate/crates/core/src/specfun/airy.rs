//! Airy function Ai, its derivative, and its negative zeros.
//!
//! For |x| <= 8 the Maclaurin series is summed in double-double arithmetic,
//! which absorbs the cancellation between the two auxiliary series (their
//! magnitudes reach ~1e6 at |x| = 8 while Ai itself is ~1e-8 there). Beyond
//! that the standard Poincare expansions are used; at |x| = 8 their
//! optimally truncated remainder is below 1e-14 relative.

use std::f64::consts::PI;

use super::dd::Dd;
use crate::error::{domain, Error, Result};

/// Ai(0) = 3^(-2/3) / Gamma(2/3), split into hi + lo.
const AI0: Dd = Dd::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
/// -Ai'(0) = 3^(-1/3) / Gamma(1/3), split into hi + lo.
const MINUS_AIP0: Dd = Dd::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

const SERIES_LIMIT: f64 = 8.0;
const SERIES_TOL: f64 = 1e-34;
const MAX_SERIES_TERMS: usize = 200;

/// Coarse scan used to bracket the zeros of Ai.
const ZERO_SCAN_STEP: f64 = 0.1;
const ZERO_SCAN_END: f64 = -30.0;

/// 1-based index of a negative zero of Ai.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AiryZeroIndex(u32);

impl AiryZeroIndex {
    pub const FIRST: AiryZeroIndex = AiryZeroIndex(1);

    pub fn new(index: i64) -> Result<Self> {
        if index < 1 || index > i64::from(u32::MAX) {
            return domain(format!("Airy zero index must be >= 1, got {index}"));
        }
        Ok(AiryZeroIndex(index as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<i64> for AiryZeroIndex {
    type Error = Error;
    fn try_from(value: i64) -> Result<Self> {
        AiryZeroIndex::new(value)
    }
}

/// Ai(x) and Ai'(x) together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub aip: f64,
}

/// Airy function of the first kind.
pub fn airy_ai(x: f64) -> Result<f64> {
    Ok(airy_ai_pair(x)?.ai)
}

/// Derivative Ai'(x).
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    Ok(airy_ai_pair(x)?.aip)
}

/// Ai(x) and Ai'(x), sharing the branch selection.
pub fn airy_ai_pair(x: f64) -> Result<AiryPair> {
    if !x.is_finite() {
        return domain(format!("airy_ai needs a finite argument, got {x}"));
    }
    Ok(if x.abs() <= SERIES_LIMIT {
        series(x)
    } else if x > 0.0 {
        asymptotic_positive(x)
    } else {
        asymptotic_negative(-x)
    })
}

/// Ai(x) = c1 f(x) - c2 g(x) with
/// f = sum x^{3k} 1*4*...*(3k-2) / (3k)!,  g = sum x^{3k+1} 2*5*...*(3k-1) / (3k+1)!.
fn series(x: f64) -> AiryPair {
    let xd = Dd::from_f64(x);
    let x3 = xd * xd * x;

    // f and f'
    let mut f = Dd::from_f64(1.0);
    let mut term = Dd::from_f64(1.0);
    let mut fp = Dd::ZERO;
    let mut dterm = Dd::from_f64(0.5) * xd * xd;
    for k in 1..MAX_SERIES_TERMS {
        let kf = k as f64;
        term = (term * x3).div_f64((3.0 * kf) * (3.0 * kf - 1.0));
        f = f + term;
        if k > 1 {
            dterm = (dterm * x3).div_f64((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
        }
        fp = fp + dterm;
        if converged(term, f) && converged(dterm, fp) {
            break;
        }
    }

    // g and g'
    let mut g = xd;
    let mut term = xd;
    let mut gp = Dd::from_f64(1.0);
    let mut dterm = Dd::from_f64(1.0);
    for k in 1..MAX_SERIES_TERMS {
        let kf = k as f64;
        term = (term * x3).div_f64((3.0 * kf + 1.0) * (3.0 * kf));
        g = g + term;
        dterm = (dterm * x3).div_f64((3.0 * kf) * (3.0 * kf - 2.0));
        gp = gp + dterm;
        if converged(term, g) && converged(dterm, gp) {
            break;
        }
    }

    AiryPair {
        ai: (AI0 * f - MINUS_AIP0 * g).to_f64(),
        aip: (AI0 * fp - MINUS_AIP0 * gp).to_f64(),
    }
}

fn converged(term: Dd, sum: Dd) -> bool {
    term.abs_hi() <= SERIES_TOL * sum.abs_hi().max(f64::MIN_POSITIVE)
}

/// u_k of the Airy asymptotic expansions, u_0 = 1.
fn next_u(prev: f64, k: usize) -> f64 {
    let k = k as f64;
    prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0))
}

/// v_k = -(6k+1)/(6k-1) u_k.
fn v_from_u(u: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let k = k as f64;
    -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u
}

/// Coefficients u_k / zeta^k and v_k / zeta^k, truncated just before the
/// smallest term or once the terms drop below double precision.
fn scaled_coefficients(zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut us = vec![1.0];
    let mut vs = vec![1.0];
    let mut u = 1.0;
    let mut zpow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        u = next_u(u, k);
        zpow *= zeta;
        let ut = u / zpow;
        let vt = v_from_u(u, k) / zpow;
        let size = ut.abs().max(vt.abs());
        if size >= last || size < 1e-18 {
            break;
        }
        last = size;
        us.push(ut);
        vs.push(vt);
    }
    (us, vs)
}

fn asymptotic_positive(x: f64) -> AiryPair {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (us, vs) = scaled_coefficients(zeta);
    let alt = |c: &[f64]| -> f64 {
        c.iter()
            .enumerate()
            .rev()
            .map(|(k, t)| if k % 2 == 0 { *t } else { -*t })
            .sum()
    };
    let pref = (-zeta).exp() / (2.0 * PI.sqrt());
    let x4 = x.powf(0.25);
    AiryPair {
        ai: pref / x4 * alt(&us),
        aip: -pref * x4 * alt(&vs),
    }
}

/// Ai(-z), Ai'(-z) for z > 0 via the oscillatory expansions.
fn asymptotic_negative(z: f64) -> AiryPair {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let (us, vs) = scaled_coefficients(zeta);
    let split = |c: &[f64]| -> (f64, f64) {
        let mut even = 0.0;
        let mut odd = 0.0;
        for (k, t) in c.iter().enumerate().rev() {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even += sign * t;
            } else {
                odd += sign * t;
            }
        }
        (even, odd)
    };
    let (p, q) = split(&us);
    let (pv, qv) = split(&vs);
    let phase = zeta - PI / 4.0;
    let (s, c) = phase.sin_cos();
    let z4 = z.powf(0.25);
    AiryPair {
        ai: (c * p + s * q) / (PI.sqrt() * z4),
        aip: z4 / PI.sqrt() * (s * pv - c * qv),
    }
}

/// The `index`-th negative zero of Ai (index 1 is the zero closest to the
/// origin, about -2.33811).
///
/// Zeros are bracketed by a scan of step 0.1 over [-30, 0] and then
/// bisected to full precision, so indices beyond the 35 zeros in that
/// window are rejected.
pub fn airy_ai_zero(index: AiryZeroIndex) -> Result<f64> {
    let target = index.get();
    let mut count = 0;
    let mut right = 0.0;
    let mut f_right = ai_unchecked(right);
    let steps = (ZERO_SCAN_END / -ZERO_SCAN_STEP).round() as usize;
    for i in 1..=steps {
        let left = -(i as f64) * ZERO_SCAN_STEP;
        let f_left = ai_unchecked(left);
        if f_left == 0.0 || f_left.signum() != f_right.signum() {
            count += 1;
            if count == target {
                return Ok(bisect_zero(left, right, f_left));
            }
        }
        right = left;
        f_right = f_left;
    }
    Err(Error::Domain(format!(
        "Airy zero index {target} lies beyond the scan window [{ZERO_SCAN_END}, 0] ({count} zeros available)"
    )))
}

fn ai_unchecked(x: f64) -> f64 {
    airy_ai_pair(x).map(|p| p.ai).unwrap_or(f64::NAN)
}

fn bisect_zero(mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = ai_unchecked(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
