//! Radial grids and reduced wavefunctions u = r f, v = r g.

use crate::error::{domain, Result};

/// Ratio r_min / r_max used when only the outer radius is given.
pub const DEFAULT_START_FRACTION: f64 = 1e-6;
pub const MIN_STEPS: usize = 100;

/// Uniform grid r_i = r_min + i h, i = 0..=n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    n: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_min < r_max) {
            return domain(format!("grid needs 0 < r_min < r_max, got r_min = {r_min}, r_max = {r_max}"));
        }
        if n < MIN_STEPS {
            return domain(format!("grid needs at least {MIN_STEPS} steps, got {n}"));
        }
        Ok(RadialGrid { r_min, r_max, n })
    }

    /// Grid on [1e-6 r_max, r_max].
    pub fn from_r_max(r_max: f64, n: usize) -> Result<Self> {
        Self::new(DEFAULT_START_FRACTION * r_max, r_max, n)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Number of steps; the grid has `steps() + 1` points.
    pub fn steps(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / self.n as f64
    }

    pub fn radius(&self, i: usize) -> f64 {
        if i == self.n {
            self.r_max
        } else {
            self.r_min + i as f64 * self.step()
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.radius(i)).collect()
    }

    /// Index of the grid point closest to `r`, clamped to the grid.
    pub fn index_near(&self, r: f64) -> usize {
        let x = ((r - self.r_min) / self.step()).round();
        if x <= 0.0 {
            0
        } else {
            (x as usize).min(self.n)
        }
    }
}

/// Where and how an outward integration ran away.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divergence {
    /// Radius at which |u| or |v| first exceeded the overflow guard.
    pub r: f64,
    /// Sign of u there (+1 or -1).
    pub sign: f64,
}

/// Reduced radial wavefunctions sampled on a set of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub energy: f64,
    /// Strict sign changes of u on the interior points (both ends excluded).
    pub node_count: usize,
    /// Set when an outward integration had to be rescaled to avoid overflow.
    pub divergence: Option<Divergence>,
}

impl RadialSolution {
    pub(crate) fn new(r: Vec<f64>, u: Vec<f64>, v: Vec<f64>, energy: f64) -> Self {
        let node_count = if u.len() > 2 {
            count_sign_changes(&u[1..u.len() - 1])
        } else {
            0
        };
        RadialSolution {
            r,
            u,
            v,
            energy,
            node_count,
            divergence: None,
        }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn max_abs_u(&self) -> f64 {
        self.u.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// Trapezoid estimate of the integral of u^2 + v^2.
    pub fn norm_squared(&self) -> f64 {
        let density: Vec<f64> = self.u.iter().zip(&self.v).map(|(u, v)| u * u + v * v).collect();
        trapezoid(&self.r, &density)
    }

    /// Scale so that the trapezoid integral of u^2 + v^2 is one and u is
    /// positive at its first nonzero sample.
    pub(crate) fn normalize(&mut self) {
        let norm = self.norm_squared().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return;
        }
        let first = self.u.iter().copied().find(|x| *x != 0.0).unwrap_or(1.0);
        let scale = first.signum() / norm;
        for x in self.u.iter_mut().chain(self.v.iter_mut()) {
            *x *= scale;
        }
    }

    /// Sign changes of u restricted to r in (lo, hi).
    pub fn sign_changes_between(&self, lo: f64, hi: f64) -> usize {
        let slice: Vec<f64> = self
            .r
            .iter()
            .zip(&self.u)
            .filter(|(r, _)| **r > lo && **r < hi)
            .map(|(_, u)| *u)
            .collect();
        count_sign_changes(&slice)
    }
}

/// Number of strict sign changes, skipping exact zeros.
pub fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &x in values {
        if x == 0.0 || x.is_nan() {
            continue;
        }
        if last != 0.0 && x.signum() != last.signum() {
            count += 1;
        }
        last = x;
    }
    count
}

pub(crate) fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}
