//! Bessel J0 and modified Bessel I0, K0.
//!
//! J0 and I0: Maclaurin series up to |x| = 16 (J0 summed in double-double,
//! since its terms reach I0(16) ~ 1e6 in magnitude), Hankel-type asymptotic
//! expansions beyond. At 16 the optimally truncated expansions are good to
//! ~1e-16.
//!
//! K0: the logarithmic series for x <= 2, and Temme's convergent form of the
//! large-argument expansion (Steed's continued fraction) above that. A plain
//! series/asymptotic split cannot reach 1e-10 relative for K0 anywhere in
//! 8 < x < 11: the series loses e^{2x} to cancellation while the divergent
//! expansion stalls at ~e^{-2x}.

use std::f64::consts::PI;

use super::dd::Dd;
use crate::error::{domain, Result};

const SERIES_LIMIT: f64 = 16.0;
const K0_SERIES_LIMIT: f64 = 2.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_TERMS: usize = 500;

fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} needs a finite argument, got {x}"))
    }
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> Result<f64> {
    check_finite("bessel_j0", x)?;
    let ax = x.abs();
    Ok(if ax <= SERIES_LIMIT {
        j0_series(ax)
    } else {
        j0_asymptotic(ax)
    })
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check_finite("bessel_i0", x)?;
    let ax = x.abs();
    Ok(if ax <= SERIES_LIMIT {
        i0_series(ax)
    } else {
        i0_asymptotic(ax)
    })
}

/// Modified Bessel function of the second kind, order zero. Defined for
/// x > 0 only; it diverges logarithmically at the origin.
pub fn bessel_k0(x: f64) -> Result<f64> {
    check_finite("bessel_k0", x)?;
    if x <= 0.0 {
        return domain(format!("bessel_k0 is defined for x > 0, got {x}"));
    }
    Ok(if x <= K0_SERIES_LIMIT {
        k0_series(x)
    } else {
        k0_steed(x)
    })
}

/// sum (-1)^k (x^2/4)^k / (k!)^2
pub(crate) fn j0_series(x: f64) -> f64 {
    let half = Dd::from_f64(0.5 * x);
    let q = -(half * half);
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = (term * q).div_f64(kf * kf);
        sum = sum + term;
        if term.abs_hi() < 1e-34 * sum.abs_hi().max(1e-300) || term.hi == 0.0 {
            break;
        }
    }
    sum.to_f64()
}

/// Coefficients a_k(0) / x^k of the Hankel expansion, with their sign,
/// truncated before the smallest term.
fn hankel_terms(x: f64) -> Vec<f64> {
    let mut terms = vec![1.0];
    let mut t = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..100 {
        let odd = (2 * k - 1) as f64;
        t *= -odd * odd / (8.0 * k as f64 * x);
        if t.abs() >= last || t.abs() < 1e-18 {
            break;
        }
        last = t.abs();
        terms.push(t);
    }
    terms
}

pub(crate) fn j0_asymptotic(x: f64) -> f64 {
    let terms = hankel_terms(x);
    let mut p = 0.0;
    let mut q = 0.0;
    for (k, t) in terms.iter().enumerate().rev() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
    }
    let chi = x - PI / 4.0;
    let (s, c) = chi.sin_cos();
    (2.0 / (PI * x)).sqrt() * (p * c - q * s)
}

/// All terms positive, so plain double precision suffices.
pub(crate) fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

pub(crate) fn i0_asymptotic(x: f64) -> f64 {
    // e^x / sqrt(2 pi x) * sum |a_k(0)| / x^k
    let terms = hankel_terms(x);
    let s: f64 = terms.iter().rev().map(|t| t.abs()).sum();
    // Split the exponential to postpone overflow.
    let e = (0.5 * x).exp();
    e * (s / (2.0 * PI * x).sqrt()) * e
}

/// K0(x) = -(ln(x/2) + gamma) I0(x) + sum H_k (x^2/4)^k / (k!)^2
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += harmonic * term;
        if term < 1e-17 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's continued fraction for K_nu at nu = 0, in Temme's form:
/// K0(x) = sqrt(pi / 2x) e^{-x} / s.
fn k0_steed(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() / s
}
