//! Physical setup: particle, potential mix, Dirac quantum number, and the
//! region geometry (turning points, binding class).
//!
//! Natural units throughout (hbar = c = 1): masses and energies in GeV,
//! the slope lambda in GeV^2, radii in GeV^-1.

use std::fmt;

use crate::error::{domain, Result};

/// A particle of positive mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    m: f64,
}

impl Particle {
    pub fn new(m: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return domain(format!("mass must be positive and finite, got {m}"));
        }
        Ok(Particle { m })
    }

    pub fn mass(&self) -> f64 {
        self.m
    }
}

/// Linear potential of slope `lambda`, a fraction `s` of which is a Lorentz
/// scalar and the rest the time component of a Lorentz vector:
/// S(r) = s lambda r, V(r) = (1 - s) lambda r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialMix {
    lambda: f64,
    s: f64,
}

impl PotentialMix {
    pub fn new(lambda: f64, s: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return domain(format!("slope lambda must be positive and finite, got {lambda}"));
        }
        if !(0.0..=1.0).contains(&s) {
            return domain(format!("scalar fraction s must lie in [0, 1], got {s}"));
        }
        Ok(PotentialMix { lambda, s })
    }

    pub fn equal(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.5)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn scalar_fraction(&self) -> f64 {
        self.s
    }

    /// (V, S) at radius r without the domain check; used inside integrators.
    #[inline]
    pub(crate) fn at(&self, r: f64) -> (f64, f64) {
        let scalar = self.s * self.lambda * r;
        (self.lambda * r - scalar, scalar)
    }

    /// Net slope of the top of the negative-energy continuum, (1 - 2s) lambda.
    pub fn continuum_slope(&self) -> f64 {
        (1.0 - 2.0 * self.s) * self.lambda
    }
}

/// Dirac quantum number k (nonzero). k = -(j + 1/2) for j = l + 1/2 and
/// k = +(j + 1/2) for j = l - 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    k: i32,
}

impl QuantumNumbers {
    /// j = 1/2, l = 0.
    pub const GROUND: QuantumNumbers = QuantumNumbers { k: -1 };

    pub fn new(k: i32) -> Result<Self> {
        if k == 0 {
            return domain("Dirac quantum number k must be nonzero");
        }
        Ok(QuantumNumbers { k })
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    /// Total angular momentum j = |k| - 1/2.
    pub fn j(&self) -> f64 {
        f64::from(self.k.abs()) - 0.5
    }

    /// Orbital angular momentum of the upper component.
    pub fn l(&self) -> u32 {
        if self.k < 0 {
            (-self.k - 1) as u32
        } else {
            self.k as u32
        }
    }
}

/// Vector and scalar potential values at a radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialValues {
    pub vector: f64,
    pub scalar: f64,
}

/// V(r) = (1 - s) lambda r and S(r) = s lambda r.
pub fn potentials(mix: &PotentialMix, r: f64) -> Result<PotentialValues> {
    if !(r.is_finite() && r >= 0.0) {
        return domain(format!("radius must be non-negative, got {r}"));
    }
    let (vector, scalar) = mix.at(r);
    Ok(PotentialValues { vector, scalar })
}

/// Radii delimiting the allowed region, the barrier, and the region where
/// lifted negative-energy states are available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    /// Classical turning point, m + lambda r1 = E.
    pub r1: f64,
    /// Where -m + lambda r meets E (pure-vector continuum edge).
    pub r2: Option<f64>,
    /// Where -m + (1 - 2s) lambda r meets E.
    pub r3: Option<f64>,
}

/// Turning points for a positive-energy state E > m. `r2` and `r3` are
/// reported only when the negative-energy continuum is lifted (s < 1/2).
pub fn turning_points(m: f64, energy: f64, mix: &PotentialMix) -> Result<TurningPoints> {
    if !(m.is_finite() && m > 0.0) {
        return domain(format!("mass must be positive, got {m}"));
    }
    if !(energy.is_finite() && energy > m) {
        return domain(format!("turning points need E > m, got E = {energy}, m = {m}"));
    }
    let lambda = mix.lambda();
    let r1 = (energy - m) / lambda;
    let (r2, r3) = if mix.scalar_fraction() < 0.5 {
        (
            Some((energy + m) / lambda),
            Some((energy + m) / mix.continuum_slope()),
        )
    } else {
        (None, None)
    };
    Ok(TurningPoints { r1, r2, r3 })
}

/// Whether the negative-energy continuum can be reached by tunneling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BindingClass {
    StrictlyBound,
    QuasiBound,
}

impl BindingClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BindingClass::StrictlyBound => "StrictlyBound",
            BindingClass::QuasiBound => "QuasiBound",
        }
    }
}

impl fmt::Display for BindingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// At least half scalar means strictly bound; the continuum is not lifted.
pub fn classify_binding(mix: &PotentialMix) -> BindingClass {
    if mix.scalar_fraction() >= 0.5 {
        BindingClass::StrictlyBound
    } else {
        BindingClass::QuasiBound
    }
}
