//! Closed-form results.
//!
//! With V = S = lambda r / 2 and k = -1 the upper component obeys
//! u'' = (m + E)(m - E + lambda r) u, which the substitution
//! xi = [lambda (m + E)]^{1/3} (r + q^2 / (lambda (m + E))), q^2 = m^2 - E^2,
//! turns into Airy's equation. Regularity at the origin puts xi(0) on a zero
//! of Ai, which fixes E.
//!
//! Also here: the Gaussian tail of the pure-scalar case and the local
//! Bessel profiles of the pure-vector case near the two barrier edges.

use crate::error::{domain, Error, Result};
use crate::radial::RadialSolution;
use crate::specfun::{airy_ai_pair, airy_ai_zero, bessel_i0, bessel_j0, bessel_k0, AiryZeroIndex};

/// An equal-mix eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualMixSolution {
    pub energy: f64,
    /// [lambda (m + E)]^{1/3}, the length scale of xi.
    pub scale: f64,
    /// m^2 - E^2 (negative).
    pub q2: f64,
    pub zero_index: AiryZeroIndex,
}

impl EqualMixSolution {
    /// xi at radius r.
    pub fn xi(&self, r: f64) -> f64 {
        let s3 = self.scale * self.scale * self.scale;
        self.scale * (r + self.q2 / s3)
    }
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

/// Energy of the equal-mix k = -1 state whose xi(0) sits on the
/// `zero_index`-th zero beta_i of Ai, i.e. the root E > m of
/// (E^2 - m^2) = |beta_i| [lambda (m + E)]^{2/3}.
pub fn equal_mix_energy(m: f64, lambda: f64, zero_index: AiryZeroIndex) -> Result<f64> {
    check_mass_slope(m, lambda)?;
    let beta = airy_ai_zero(zero_index)?.abs();

    // Dividing by (m + E) leaves E - m = |beta| (lambda^2 / (m + E))^{1/3},
    // whose residual is monotone increasing in E.
    let residual = |e: f64| (e - m) - beta * (lambda * lambda / (m + e)).cbrt();

    let mut lo = m;
    let mut hi = m + 20.0 * lambda.sqrt() + 10.0 * lambda / m;
    if residual(hi) <= 0.0 {
        return Err(Error::Convergence(format!(
            "equal-mix root lies above the bracket ceiling {hi} (beta = {beta})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        if residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Energy plus the derived quantities of the Airy form.
pub fn equal_mix_state(m: f64, lambda: f64, zero_index: AiryZeroIndex) -> Result<EqualMixSolution> {
    let energy = equal_mix_energy(m, lambda, zero_index)?;
    Ok(EqualMixSolution {
        energy,
        scale: (lambda * (m + energy)).cbrt(),
        q2: m * m - energy * energy,
        zero_index,
    })
}

/// Left side of the eigenvalue condition minus |beta|; zero at an eigenvalue.
pub fn equal_mix_condition_residual(m: f64, lambda: f64, energy: f64, beta: f64) -> f64 {
    (energy * energy - m * m) / (lambda * (m + energy)).powf(2.0 / 3.0) - beta.abs()
}

/// u = c1 Ai(xi(r)) and v = (u' - u/r) / (E + m) on the caller's radii,
/// normalized so that the trapezoid integral of u^2 + v^2 is one.
///
/// `energy` must be an equal-mix eigenvalue: Ai(xi(0)) has to vanish to
/// within 1e-4 of the largest |Ai| on the grid.
pub fn equal_mix_wavefunction(m: f64, lambda: f64, energy: f64, radii: &[f64]) -> Result<RadialSolution> {
    check_mass_slope(m, lambda)?;
    if !(energy.is_finite() && energy > m) {
        return domain(format!("equal-mix state needs E > m, got E = {energy}"));
    }
    if radii.len() < 2 {
        return domain("wavefunction grid needs at least two radii");
    }
    if radii[0] < 0.0 || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("wavefunction grid must be non-negative and strictly increasing");
    }

    let scale = (lambda * (m + energy)).cbrt();
    let shift = (m * m - energy * energy) / (lambda * (m + energy));
    let at_origin = airy_ai_pair(scale * shift)?.ai;

    let mut u = Vec::with_capacity(radii.len());
    let mut v = Vec::with_capacity(radii.len());
    for &r in radii {
        let p = airy_ai_pair(scale * (r + shift))?;
        u.push(p.ai);
        v.push(if r == 0.0 {
            0.0
        } else {
            (scale * p.aip - p.ai / r) / (energy + m)
        });
    }

    let peak = u.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if !(peak > 0.0) || at_origin.abs() > 1e-4 * peak {
        return Err(Error::Consistency(format!(
            "E = {energy} is not an equal-mix eigenvalue: Ai(xi(0)) = {at_origin:e}, max |Ai| on grid = {peak:e}"
        )));
    }

    let mut solution = RadialSolution::new(radii.to_vec(), u, v, energy);
    solution.normalize();
    Ok(solution)
}

/// Large-r pure-scalar form A exp(-lambda r^2 / 2).
pub fn scalar_asymptote(lambda: f64, amplitude: f64, r: f64) -> f64 {
    amplitude * (-0.5 * lambda * r * r).exp()
}

/// Barrier coordinate x = E + m - lambda r: x = 2m at r1, x = 0 at r2.
pub fn x_of_r(m: f64, energy: f64, lambda: f64, r: f64) -> f64 {
    energy + m - lambda * r
}

/// Amplitudes of the local pure-vector profiles near the barrier edges:
/// `a` for the continuum edge, `b` and `c` for the I0/K0 mixture at the
/// turning point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalProfileCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LocalProfileCoefficients {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return domain("profile coefficients must be finite");
        }
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return domain("profile coefficients must not all vanish");
        }
        Ok(LocalProfileCoefficients { a, b, c })
    }
}

/// Near x = 0 (r = r2): A J0(2 sqrt(-x/(E+m))) for x < 0, A I0(2 sqrt(x/(E+m)))
/// for x >= 0. Oscillates beyond r2, continuous with value A at x = 0.
pub fn vector_profile_continuum_edge(energy: f64, m: f64, amplitude: f64, x: f64) -> Result<f64> {
    let em = energy + m;
    if !(em.is_finite() && em > 0.0) {
        return domain(format!("need E + m > 0, got {em}"));
    }
    Ok(if x < 0.0 {
        amplitude * bessel_j0(2.0 * (-x / em).sqrt())?
    } else {
        amplitude * bessel_i0(2.0 * (x / em).sqrt())?
    })
}

/// Near x = 2m (r = r1): B I0(z) + C K0(z), z = 2 sqrt(x / (E - m)).
pub fn vector_profile_turning_point(
    energy: f64,
    m: f64,
    coeffs: &LocalProfileCoefficients,
    x: f64,
) -> Result<f64> {
    if !(energy > m) {
        return domain(format!("turning-point profile needs E > m, got E = {energy}, m = {m}"));
    }
    if !(x > 0.0) {
        return domain(format!("turning-point profile needs x > 0 (K0 diverges at 0), got {x}"));
    }
    let z = 2.0 * (x / (energy - m)).sqrt();
    let mut value = 0.0;
    if coeffs.b != 0.0 {
        value += coeffs.b * bessel_i0(z)?;
    }
    if coeffs.c != 0.0 {
        value += coeffs.c * bessel_k0(z)?;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground() -> f64 {
        equal_mix_energy(1.0, 0.2, AiryZeroIndex::FIRST).unwrap()
    }

    #[test]
    fn worked_example_energy() {
        let e = ground();
        assert!((e - 1.5828).abs() < 5e-4, "E = {e}");
    }

    #[test]
    fn tiny_slope_approaches_mass() {
        let e = equal_mix_energy(1.0, 1e-8, AiryZeroIndex::FIRST).unwrap();
        assert!(e > 1.0 && e - 1.0 < 1e-4);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(equal_mix_energy(0.0, 0.2, AiryZeroIndex::FIRST).is_err());
        assert!(equal_mix_energy(1.0, -0.2, AiryZeroIndex::FIRST).is_err());
    }

    #[test]
    fn wavefunction_rejects_non_eigenvalue() {
        let radii: Vec<f64> = (0..=500).map(|i| i as f64 * 0.02).collect();
        let err = equal_mix_wavefunction(1.0, 0.2, 1.7, &radii).unwrap_err();
        assert!(matches!(err, Error::Consistency(_)));
    }

    #[test]
    fn wavefunction_rejects_unsorted_grid() {
        let e = ground();
        assert!(equal_mix_wavefunction(1.0, 0.2, e, &[0.0, 2.0, 1.0]).is_err());
        assert!(equal_mix_wavefunction(1.0, 0.2, e, &[-1.0, 2.0]).is_err());
    }

    #[test]
    fn wavefunction_vanishes_at_origin_and_is_normalized() {
        let e = ground();
        let radii: Vec<f64> = (0..=2500).map(|i| i as f64 * 0.01).collect();
        let sol = equal_mix_wavefunction(1.0, 0.2, e, &radii).unwrap();
        let peak = sol.max_abs_u();
        assert!(sol.u[0].abs() <= 1e-6 * peak);
        assert_eq!(sol.v[0], 0.0);
        assert!((sol.norm_squared() - 1.0).abs() < 1e-12);
        assert_eq!(sol.node_count, 0);
    }

    #[test]
    fn scalar_asymptote_values() {
        assert_eq!(scalar_asymptote(0.2, 1.0, 0.0), 1.0);
        assert!((scalar_asymptote(0.2, 1.0, 3.0) - (-0.9f64).exp()).abs() < 1e-15);
        assert!((scalar_asymptote(0.2, 1.0, 3.0) - 0.40657).abs() < 1e-5);
    }

    #[test]
    fn barrier_coordinate_endpoints() {
        let (m, e, lambda) = (1.0, 1.5828, 0.2);
        let r1 = (e - m) / lambda;
        let r2 = (e + m) / lambda;
        assert!(x_of_r(m, e, lambda, r2).abs() < 1e-14);
        assert!((x_of_r(m, e, lambda, r1) - 2.0 * m).abs() < 1e-14);
        assert_eq!(x_of_r(m, e, lambda, 0.0), e + m);
    }

    #[test]
    fn continuum_edge_profile_is_continuous() {
        let a = 0.7;
        let at_zero = vector_profile_continuum_edge(1.5828, 1.0, a, 0.0).unwrap();
        assert_eq!(at_zero, a);
        let left = vector_profile_continuum_edge(1.5828, 1.0, a, -1e-12).unwrap();
        let right = vector_profile_continuum_edge(1.5828, 1.0, a, 1e-12).unwrap();
        assert!((left - a).abs() < 1e-11 && (right - a).abs() < 1e-11);
    }

    #[test]
    fn turning_point_profile_rejects_non_positive_x() {
        let c = LocalProfileCoefficients::new(0.0, 1.0, 0.1).unwrap();
        assert!(vector_profile_turning_point(1.5828, 1.0, &c, 0.0).is_err());
        assert!(vector_profile_turning_point(1.5828, 1.0, &c, -1.0).is_err());
        assert!(vector_profile_turning_point(0.9, 1.0, &c, 1.0).is_err());
    }

    #[test]
    fn coefficient_validation() {
        assert!(LocalProfileCoefficients::new(0.0, 0.0, 0.0).is_err());
        assert!(LocalProfileCoefficients::new(f64::NAN, 1.0, 0.0).is_err());
    }
}
