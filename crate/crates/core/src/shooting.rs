//! Shooting solver for the reduced radial Dirac system
//!
//!   u' + (k/r) u - (E - V + m + S) v = 0
//!   v' - (k/r) v + (E - V - m - S) u = 0
//!
//! integrated with classical RK4 on a uniform grid.
//!
//! Bound states (s >= 1/2) are located by bisection on the sign of the
//! outward solution at r_max; the returned wavefunction is then assembled
//! from the outward solution up to the turning point and a decaying inward
//! solution beyond it, since the outward solution alone always picks up the
//! growing tail. Quasi-bound levels (s < 1/2) are estimated by imposing
//! u = 0 in the middle of the barrier.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::model::{turning_points, PotentialMix, QuantumNumbers};
use crate::radial::{count_sign_changes, Divergence, RadialGrid, RadialSolution};

/// |u| or |v| above this triggers a rescale of the stored solution.
const OVERFLOW_GUARD: f64 = 1e100;
const RESCALE: f64 = 1e-100;
/// Bisection stops once the bracket is narrower than this.
const ENERGY_TOL: f64 = 1e-10;
/// Largest tolerated |u(r_max)| / max |u| for a returned bound state.
const TAIL_TOL: f64 = 1e-3;
const MAX_SERIES_TERMS: usize = 400;

#[derive(Debug, Clone, Copy)]
struct DiracSystem {
    m: f64,
    mix: PotentialMix,
    k: f64,
    energy: f64,
}

impl DiracSystem {
    #[inline]
    fn derivative(&self, r: f64, u: f64, v: f64) -> (f64, f64) {
        let (vec, sca) = self.mix.at(r);
        let kr = self.k / r;
        let du = -kr * u + (self.energy - vec + self.m + sca) * v;
        let dv = kr * v - (self.energy - vec - self.m - sca) * u;
        (du, dv)
    }

    #[inline]
    fn rk4_step(&self, r: f64, h: f64, u: f64, v: f64) -> (f64, f64) {
        let (k1u, k1v) = self.derivative(r, u, v);
        let (k2u, k2v) = self.derivative(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        let (k3u, k3v) = self.derivative(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        let (k4u, k4v) = self.derivative(r + h, u + h * k3u, v + h * k3v);
        (
            u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        )
    }

    /// Regular solution near the origin from its Frobenius series,
    /// u = r^|k| sum a_n r^n, v = r^|k| sum b_n r^n, with a_0 = 1, b_0 = 0
    /// for k < 0 and a_0 = 0, b_0 = 1 for k > 0. The linear potentials make
    /// the recurrence three-term.
    fn series_values(&self, r: f64) -> (f64, f64) {
        let ka = self.k.abs();
        let lambda = self.mix.lambda();
        // E - V + m + S = a + b r,  E - V - m - S = c + d r.
        let a = self.energy + self.m;
        let b = (2.0 * self.mix.scalar_fraction() - 1.0) * lambda;
        let c = self.energy - self.m;
        let d = -lambda;
        let negative = self.k < 0.0;
        let (mut a1, mut b1) = if negative { (1.0, 0.0) } else { (0.0, 1.0) };
        let (mut a2, mut b2) = (0.0, 0.0);
        let (mut su, mut sv) = (a1, b1);
        let mut p = 1.0;
        let mut quiet = 0;
        for n in 1..MAX_SERIES_TERMS {
            let nf = n as f64;
            let (an, bn) = if negative {
                ((a * b1 + b * b2) / nf, -(c * a1 + d * a2) / (nf + 2.0 * ka))
            } else {
                ((a * b1 + b * b2) / (nf + 2.0 * ka), -(c * a1 + d * a2) / nf)
            };
            p *= r;
            su += an * p;
            sv += bn * p;
            (a2, a1, b2, b1) = (a1, an, b1, bn);
            if (an.abs() + bn.abs()) * p <= 1e-17 * (su.abs() + sv.abs()) {
                quiet += 1;
                if quiet == 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        let lead = r.powf(ka);
        (lead * su, lead * sv)
    }

    /// Radius up to which the series is used. The 1/r terms cost RK4 two
    /// orders when it starts from r ~ h, so the hand-off happens at a
    /// radius set by the energy scale, not the step.
    fn series_radius(&self) -> f64 {
        let a = (self.energy + self.m).abs() + (self.energy - self.m).abs();
        let slope = (2.0 * self.mix.lambda()).sqrt();
        1.0 / a.max(slope).max(1e-3)
    }

    /// Local decay constant sqrt((m + S)^2 - (E - V)^2), if the point is
    /// classically forbidden.
    fn decay_constant(&self, r: f64) -> Option<f64> {
        let (vec, sca) = self.mix.at(r);
        let k2 = (self.m + sca).powi(2) - (self.energy - vec).powi(2);
        (k2 > 0.0).then(|| k2.sqrt())
    }
}

fn system(m: f64, mix: &PotentialMix, k: QuantumNumbers, energy: f64) -> Result<DiracSystem> {
    if !(m.is_finite() && m > 0.0) {
        return domain(format!("mass must be positive, got {m}"));
    }
    if !energy.is_finite() {
        return domain(format!("energy must be finite, got {energy}"));
    }
    Ok(DiracSystem {
        m,
        mix: *mix,
        k: f64::from(k.k()),
        energy,
    })
}

/// Last grid index covered by the origin series.
fn series_end(sys: &DiracSystem, grid: &RadialGrid) -> usize {
    let r_s = sys.series_radius().min(0.25 * grid.r_max());
    let i = ((r_s - grid.r_min()) / grid.step()).floor();
    if i <= 0.0 {
        0
    } else {
        (i as usize).min(grid.steps())
    }
}

/// Outward value of u at r_max only, without storing the solution.
fn endpoint_u(sys: &DiracSystem, grid: &RadialGrid) -> f64 {
    let h = grid.step();
    let start = series_end(sys, grid);
    let (mut u, mut v) = sys.series_values(grid.radius(start));
    for i in start..grid.steps() {
        let r = grid.radius(i);
        (u, v) = sys.rk4_step(r, h, u, v);
        if u.abs().max(v.abs()) > OVERFLOW_GUARD {
            u *= RESCALE;
            v *= RESCALE;
        }
    }
    u
}

fn integrate_outward(sys: &DiracSystem, grid: &RadialGrid) -> RadialSolution {
    let n = grid.steps();
    let h = grid.step();
    let mut u = Vec::with_capacity(n + 1);
    let mut v = Vec::with_capacity(n + 1);
    let start = series_end(sys, grid);
    for i in 0..=start {
        let (ui, vi) = sys.series_values(grid.radius(i));
        u.push(ui);
        v.push(vi);
    }
    let mut divergence = None;
    for i in start..n {
        let r = grid.radius(i);
        let (mut un, mut vn) = sys.rk4_step(r, h, u[i], v[i]);
        if un.abs().max(vn.abs()) > OVERFLOW_GUARD {
            if divergence.is_none() {
                divergence = Some(Divergence {
                    r: grid.radius(i + 1),
                    sign: un.signum(),
                });
            }
            for x in u.iter_mut().chain(v.iter_mut()) {
                *x *= RESCALE;
            }
            un *= RESCALE;
            vn *= RESCALE;
        }
        u.push(un);
        v.push(vn);
    }
    let mut sol = RadialSolution::new(grid.radii(), u, v, sys.energy);
    sol.divergence = divergence;
    sol
}

/// Outward RK4 solution of the radial system at fixed energy. The regular
/// solution is taken from its power series at `grid.r_min()` and the first
/// few grid points, then integrated.
///
/// For an energy that is not an eigenvalue the solution grows without bound;
/// that shows up in `divergence` rather than as an error.
pub fn integrate_radial(
    m: f64,
    mix: &PotentialMix,
    k: QuantumNumbers,
    energy: f64,
    grid: &RadialGrid,
) -> Result<RadialSolution> {
    let sys = system(m, mix, k, energy)?;
    Ok(integrate_outward(&sys, grid))
}

/// Bound state in the energy window `bracket`, which must enclose exactly one
/// eigenvalue (u(r_max) changes sign across it). Requires s >= 1/2.
pub fn find_bound_state(
    m: f64,
    mix: &PotentialMix,
    k: QuantumNumbers,
    bracket: (f64, f64),
    grid: &RadialGrid,
) -> Result<RadialSolution> {
    require_strictly_bound(mix)?;
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    if !(lo.is_finite() && hi.is_finite()) {
        return domain("energy bracket must be finite");
    }
    let shoot = |e: f64| -> Result<f64> { Ok(endpoint_u(&system(m, mix, k, e)?, grid)) };
    let mut f_lo = shoot(lo)?;
    let f_hi = shoot(hi)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > ENERGY_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = shoot(mid)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let energy = 0.5 * (lo + hi);
    matched_solution(&system(m, mix, k, energy)?, grid)
}

/// Bound state with exactly `nodes` nodes in u. Brackets the level by
/// counting sign changes of the outward solution, which increase by one
/// each time the energy passes an eigenvalue.
pub fn find_bound_state_with_nodes(
    m: f64,
    mix: &PotentialMix,
    k: QuantumNumbers,
    nodes: usize,
    grid: &RadialGrid,
) -> Result<RadialSolution> {
    let bracket = bracket_by_nodes(m, mix, k, nodes, grid)?;
    find_bound_state(m, mix, k, bracket, grid)
}

/// Energy window [E, E + dE] across which the outward node count steps from
/// `nodes` to `nodes + 1`.
pub fn bracket_by_nodes(
    m: f64,
    mix: &PotentialMix,
    k: QuantumNumbers,
    nodes: usize,
    grid: &RadialGrid,
) -> Result<(f64, f64)> {
    require_strictly_bound(mix)?;
    let sqrt_l = mix.lambda().sqrt();
    let step = 0.02 * sqrt_l;
    let ceiling = m + 10.0 * sqrt_l * (1.0 + nodes as f64);
    let count = |e: f64| -> Result<usize> {
        let sol = integrate_outward(&system(m, mix, k, e)?, grid);
        Ok(count_sign_changes(&sol.u))
    };
    let mut lo = m;
    let mut e = m + step;
    while e <= ceiling {
        if count(e)? > nodes {
            return Ok((lo, e));
        }
        lo = e;
        e += step;
    }
    Err(Error::NotFound(format!(
        "no bound state with {nodes} nodes below E = {ceiling}"
    )))
}

fn require_strictly_bound(mix: &PotentialMix) -> Result<()> {
    if mix.scalar_fraction() < 0.5 {
        return Err(Error::Precondition(format!(
            "s = {} < 0.5: the state is only quasi-bound; use estimate_quasibound_energy",
            mix.scalar_fraction()
        )));
    }
    Ok(())
}

/// Outward solution up to the turning point joined to an inward solution
/// that starts decaying from r_max. The joint is made continuous in u.
fn matched_solution(sys: &DiracSystem, grid: &RadialGrid) -> Result<RadialSolution> {
    let outward = integrate_outward(sys, grid);
    let n = grid.steps();
    let h = grid.step();

    let r1 = (sys.energy - sys.m) / sys.mix.lambda();
    let join = grid.index_near(r1).clamp(n / 10, 9 * n / 10);

    let r_max = grid.r_max();
    let kappa = sys.decay_constant(r_max).ok_or_else(|| {
        Error::Precondition(format!(
            "r_max = {r_max} is not in the classically forbidden region at E = {}",
            sys.energy
        ))
    })?;
    let (vec, sca) = sys.mix.at(r_max);
    let mut u_in = vec![0.0; n + 1];
    let mut v_in = vec![0.0; n + 1];
    u_in[n] = 1.0;
    v_in[n] = (-kappa + sys.k / r_max) / (sys.energy - vec + sys.m + sca);
    for i in (join..n).rev() {
        let (mut un, mut vn) = sys.rk4_step(grid.radius(i + 1), -h, u_in[i + 1], v_in[i + 1]);
        if un.abs().max(vn.abs()) > OVERFLOW_GUARD {
            for j in i + 1..=n {
                u_in[j] *= RESCALE;
                v_in[j] *= RESCALE;
            }
            un *= RESCALE;
            vn *= RESCALE;
        }
        u_in[i] = un;
        v_in[i] = vn;
    }

    // Match on whichever component is better conditioned at the joint.
    let scale = if outward.u[join].abs() * v_in[join].abs() >= outward.v[join].abs() * u_in[join].abs() {
        outward.u[join] / u_in[join]
    } else {
        outward.v[join] / v_in[join]
    };
    if !scale.is_finite() {
        return Err(Error::Convergence("could not join inward and outward solutions".into()));
    }

    // Bring the outward part to O(1) before splicing so nothing underflows.
    let peak = outward.u[..=join]
        .iter()
        .chain(&outward.v[..=join])
        .fold(0.0f64, |a, x| a.max(x.abs()));
    let norm = if peak > 0.0 { 1.0 / peak } else { 1.0 };
    let mut u = Vec::with_capacity(n + 1);
    let mut v = Vec::with_capacity(n + 1);
    for i in 0..=join {
        u.push(outward.u[i] * norm);
        v.push(outward.v[i] * norm);
    }
    for i in join + 1..=n {
        u.push(u_in[i] * scale * norm);
        v.push(v_in[i] * scale * norm);
    }

    let mut sol = RadialSolution::new(grid.radii(), u, v, sys.energy);
    sol.normalize();
    let tail = sol.u[n].abs() / sol.max_abs_u();
    if !(tail <= TAIL_TOL) {
        return Err(Error::Convergence(format!(
            "tail |u(r_max)| / max|u| = {tail:e} exceeds {TAIL_TOL}; increase r_max"
        )));
    }
    Ok(sol)
}

/// Quasi-bound level estimate and its sensitivity to the truncation radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiBoundEstimate {
    pub energy: f64,
    /// Spread of the level when the truncation radius is moved by +/-10%.
    pub uncertainty: f64,
    /// Truncation radius used for `energy`.
    pub r_mid: f64,
}

/// Lowest E > m for which the outward solution vanishes at the middle of the
/// barrier, r_mid = (r1 + r3) / 2, capped at `grid_hint.r_max()`. The step
/// size of `grid_hint` is reused on the truncated domain.
///
/// This is an estimate only: a quasi-bound state has no sharp energy.
pub fn estimate_quasibound_energy(
    m: f64,
    mix: &PotentialMix,
    k: QuantumNumbers,
    grid_hint: &RadialGrid,
) -> Result<QuasiBoundEstimate> {
    if mix.scalar_fraction() >= 0.5 {
        return Err(Error::Precondition(format!(
            "s = {} >= 0.5: the state is strictly bound; use find_bound_state",
            mix.scalar_fraction()
        )));
    }
    if !(m.is_finite() && m > 0.0) {
        return domain(format!("mass must be positive, got {m}"));
    }
    let factors = [1.0, 0.9, 1.1];
    let energies = factors
        .par_iter()
        .map(|&f| truncated_level(m, mix, k, grid_hint, f))
        .collect::<Result<Vec<_>>>()?;
    let energy = energies[0].0;
    let (lo, hi) = energies
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (e, _)| (lo.min(*e), hi.max(*e)));
    Ok(QuasiBoundEstimate {
        energy,
        uncertainty: hi - lo,
        r_mid: energies[0].1,
    })
}

const QUASI_SCAN_POINTS: usize = 100;

fn truncation_radius(m: f64, energy: f64, mix: &PotentialMix, cap: f64) -> Result<f64> {
    let tp = turning_points(m, energy, mix)?;
    let edge = tp.r3.unwrap_or(f64::INFINITY);
    Ok((0.5 * (tp.r1 + edge)).min(cap))
}

/// (energy, r_mid) of the Dirichlet level with r_mid scaled by `factor`.
fn truncated_level(
    m: f64,
    mix: &PotentialMix,
    k: QuantumNumbers,
    hint: &RadialGrid,
    factor: f64,
) -> Result<(f64, f64)> {
    let h = hint.step();
    let cap = hint.r_max();
    let dirichlet = |e: f64| -> Result<(f64, f64)> {
        let r_mid = factor * truncation_radius(m, e, mix, cap)?;
        let steps = ((r_mid / h).ceil() as usize).max(crate::radial::MIN_STEPS);
        let grid = RadialGrid::from_r_max(r_mid, steps)?;
        Ok((endpoint_u(&system(m, mix, k, e)?, &grid), r_mid))
    };

    let width = 10.0 * mix.lambda().sqrt();
    let de = width / QUASI_SCAN_POINTS as f64;
    let mut lo = m + 1e-3 * de;
    let (mut f_lo, _) = dirichlet(lo)?;
    for j in 1..QUASI_SCAN_POINTS {
        let e = m + j as f64 * de;
        let (f, _) = dirichlet(e)?;
        if f.signum() != f_lo.signum() {
            let mut hi = e;
            while hi - lo > ENERGY_TOL {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let (f_mid, _) = dirichlet(mid)?;
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            let energy = 0.5 * (lo + hi);
            let (_, r_mid) = dirichlet(energy)?;
            return Ok((energy, r_mid));
        }
        lo = e;
        f_lo = f;
    }
    Err(Error::NotFound(format!(
        "no quasi-bound level in ({m}, {}) for s = {}",
        m + width,
        mix.scalar_fraction()
    )))
}
