//! Gamow estimates for tunneling out of a linear well into the
//! negative-energy continuum.
//!
//! The lifetime is quoted relative to an unspecified scale tau0 (of order
//! 1e-24 s for a fermi-sized well); only tau / tau0 = exp(2 gamma) is
//! computed.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::model::{turning_points, PotentialMix};
use crate::quadrature::integrate_sqrt_endpoints;

/// Relative tolerance for the barrier integrals.
pub const QUADRATURE_TOL: f64 = 1e-11;

/// |p| = sqrt(m^2 - (E - V)^2), the decay constant under the barrier.
pub fn momentum_modulus(m: f64, energy: f64, potential: f64) -> Result<f64> {
    let d = energy - potential;
    let p2 = m * m - d * d;
    if !(p2 >= 0.0) {
        return domain(format!(
            "|E - V| = {} exceeds m = {m}: the point is classically allowed",
            d.abs()
        ));
    }
    Ok(p2.sqrt())
}

fn check_mass_slope(m: f64, lambda: f64) -> Result<()> {
    if !(m.is_finite() && m > 0.0) {
        return domain(format!("mass must be positive, got {m}"));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return domain(format!("slope must be positive, got {lambda}"));
    }
    Ok(())
}

/// gamma = pi m^2 / (2 lambda) for a pure vector potential. The barrier
/// integral is a half-disc of radius m, so gamma does not depend on E.
pub fn gamma_pure_vector(m: f64, lambda: f64) -> Result<f64> {
    check_mass_slope(m, lambda)?;
    Ok(PI * m * m / (2.0 * lambda))
}

/// Integral of sqrt(m^2 - (E - lambda r)^2) from r1 = (E - m)/lambda to
/// r2 = (E + m)/lambda by quadrature. Agrees with [`gamma_pure_vector`].
pub fn pure_vector_barrier_integral(m: f64, lambda: f64, energy: f64) -> Result<f64> {
    check_mass_slope(m, lambda)?;
    if !(energy.is_finite() && energy > m) {
        return domain(format!("need E > m, got E = {energy}, m = {m}"));
    }
    let r1 = (energy - m) / lambda;
    let r2 = (energy + m) / lambda;
    let q = integrate_sqrt_endpoints(
        |r| {
            let d = energy - lambda * r;
            (m * m - d * d).max(0.0).sqrt()
        },
        r1,
        r2,
        QUADRATURE_TOL,
    )?;
    Ok(q.value)
}

/// Integral of sqrt((lambda r - E)^2 - m^2) from r2 to r3, the stretch of
/// the continuum that a mixed potential adds to the barrier. Zero when
/// r3 <= r2.
pub fn continuum_barrier_integral(m: f64, lambda: f64, energy: f64, r2: f64, r3: f64) -> Result<f64> {
    check_mass_slope(m, lambda)?;
    if !(r2.is_finite() && r3.is_finite()) {
        return domain(format!("barrier limits must be finite, got [{r2}, {r3}]"));
    }
    if r3 <= r2 {
        return Ok(0.0);
    }
    let q = integrate_sqrt_endpoints(
        |r| {
            let w = lambda * r - energy;
            (w * w - m * m).max(0.0).sqrt()
        },
        r2,
        r3,
        QUADRATURE_TOL,
    )?;
    Ok(q.value)
}

/// tau / tau0 = exp(2 gamma), with the exponent kept for when it overflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifetimeRatio {
    /// exp(2 gamma), or +inf when saturated.
    pub ratio: f64,
    /// 2 gamma.
    pub log_ratio: f64,
    pub saturated: bool,
}

pub fn lifetime_ratio(gamma: f64) -> Result<LifetimeRatio> {
    if !(gamma >= 0.0) {
        return domain(format!("gamma must be non-negative, got {gamma}"));
    }
    let log_ratio = 2.0 * gamma;
    let ratio = log_ratio.exp();
    Ok(LifetimeRatio {
        ratio,
        log_ratio,
        saturated: ratio.is_infinite(),
    })
}

/// Sauter's transmission probability exp(-pi m^2 / v) through a linear ramp
/// of slope v. Stated for 2m/L < v < m^2 with L the ramp length; those bounds
/// are not enforced here.
pub fn sauter_transmission(m: f64, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return domain(format!("field slope must be positive, got {v}"));
    }
    if !(m.is_finite() && m > 0.0) {
        return domain(format!("mass must be positive, got {m}"));
    }
    Ok((-(PI * m * m / v)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunnelingReport {
    pub gamma: f64,
    /// exp(2 gamma); +inf if it overflows (see `lifetime`).
    pub tau_ratio: f64,
    pub lifetime: LifetimeRatio,
    /// pi m^2 / (2 lambda).
    pub vector_part: f64,
    /// Integral over [r2, r3].
    pub continuum_part: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub s: f64,
    pub energy: f64,
}

/// gamma = pi m^2 / (2 lambda) + integral_{r2}^{r3} sqrt((lambda r - E)^2 - m^2) dr.
///
/// The full slope lambda appears in both terms regardless of s; only the
/// outer limit r3 = (E + m) / ((1 - 2s) lambda) depends on the mix.
pub fn gamma_mixed(m: f64, mix: &PotentialMix, energy: f64) -> Result<TunnelingReport> {
    let s = mix.scalar_fraction();
    if s >= 0.5 {
        return Err(Error::Precondition(format!(
            "state is strictly bound (s = {s} >= 0.5); no tunneling"
        )));
    }
    let tp = turning_points(m, energy, mix)?;
    let (r2, r3) = match (tp.r2, tp.r3) {
        (Some(r2), Some(r3)) => (r2, r3),
        _ => unreachable!("turning points always carry r2, r3 for s < 0.5"),
    };
    let lambda = mix.lambda();
    let vector_part = gamma_pure_vector(m, lambda)?;
    let continuum_part = continuum_barrier_integral(m, lambda, energy, r2, r3)?;
    let gamma = vector_part + continuum_part;
    let lifetime = lifetime_ratio(gamma)?;
    Ok(TunnelingReport {
        gamma,
        tau_ratio: lifetime.ratio,
        lifetime,
        vector_part,
        continuum_part,
        r1: tp.r1,
        r2,
        r3,
        s,
        energy,
    })
}
