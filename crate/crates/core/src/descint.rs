//! Closed-form band integrals of descriptor resolvents.
//!
//! For a regular real pencil `(E, A)` and a band `[θ1, θ2] ⊂ (−π, π)` whose
//! arc carries no generalized eigenvalue,
//!
//! ```text
//! ∫ (e^{jθ}E − A)⁻¹ dθ = (1/j) W⁻¹ (−α L (e^{−jθ2} I − e^{−jθ1} e^Y) + β Y)
//! ```
//!
//! with `W = αE + βA`, `Γ(θ) = (E + A) tan(θ/2) − j(E − A)`,
//! `η = log((tan(θ2/2) − j)/(tan(θ1/2) − j))`, `Y = log(Γ(θ2) Γ(θ1)⁻¹) − ηI`
//! and `L = ψ1(Y)⁻¹`. Nothing here needs a limit, so singular `E` or `A`
//! are handled by the same expression. Bands ending at `π` use the
//! corresponding `t → ∞` form; bands starting at `−π` are reflected onto
//! `[−θ2, π]` through `∫_{−π}^{θ} K = conj(∫_{−θ}^{π} K)`, valid for real
//! pencils.
//!
//! The continuous-time analogue integrates `(jωE − A)⁻¹` over `[ω1, ω2]`.
//!
//! [`scalar_fd`] and [`scalar_fi`] are the scalar antiderivative kernels
//! behind the matrix expressions. They are used to cross-check the closed
//! forms through [`crate::matfun::spectral_apply`].

use std::f64::consts::PI;

use crate::matfun::{exp_and_psi1, logm_principal};
use crate::matrix::{complexify, identity, solve, solve_right, unit_phasor, Complex64, ComplexMatrix, RealMatrix, J};
use crate::pencil::{
    distance_to_arc, nearest_on_arc, nearest_on_segment, Band, DescriptorPair, ShiftConfig, ShiftSelection,
    DEFAULT_CLEARANCE_THRESHOLD,
};
use crate::{Error, Result};

/// Points closer than this to the excluded set of [`scalar_fd`] /
/// [`scalar_fi`] are rejected.
const SCALAR_EXCLUSION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescintConfig {
    pub clearance_threshold: f64,
    pub shift: ShiftConfig,
}

impl Default for DescintConfig {
    fn default() -> Self {
        DescintConfig { clearance_threshold: DEFAULT_CLEARANCE_THRESHOLD, shift: ShiftConfig::default() }
    }
}

/// Real frequency interval `[ω1, ω2]` for continuous-time integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousBand {
    pub omega1: f64,
    pub omega2: f64,
}

impl ContinuousBand {
    pub fn new(omega1: f64, omega2: f64) -> Result<Self> {
        if !(omega1.is_finite() && omega2.is_finite()) {
            return Err(Error::InvalidArgument("frequency band endpoints must be finite".into()));
        }
        if omega1 > omega2 {
            return Err(Error::InvalidArgument(format!("frequency band [{omega1}, {omega2}] is reversed")));
        }
        Ok(ContinuousBand { omega1, omega2 })
    }
}

/// Intermediates of the interior-band closed form.
#[derive(Debug, Clone)]
pub struct IntegralWorkspace {
    pub shift: ShiftSelection,
    /// `tan(θ1/2)`, `tan(θ2/2)`.
    pub t1: f64,
    pub t2: f64,
    pub eta: Complex64,
    pub gamma1: ComplexMatrix,
    pub gamma2: ComplexMatrix,
    /// `log(Γ(θ2)Γ(θ1)⁻¹) − ηI`; eigenvalue imaginary parts lie in `(−2π, π)`.
    pub y: ComplexMatrix,
    pub exp_y: ComplexMatrix,
    /// `ψ1(Y)`; the closed form applies its inverse `L` by linear solve.
    pub psi1_y: ComplexMatrix,
    pub clearance: f64,
}

fn gamma(e: &ComplexMatrix, a: &ComplexMatrix, t: f64) -> ComplexMatrix {
    (e + a) * Complex64::new(t, 0.0) - (e - a) * J
}

fn shift_and_arc_check(p: &DescriptorPair, band: &Band, cfg: &DescintConfig) -> Result<(ShiftSelection, f64)> {
    let shift = p.select_shift_with(&cfg.shift)?;
    let eigs = p.generalized_eigenvalues_with(&shift)?;
    let clearance = match nearest_on_arc(&eigs, band) {
        Some((z, d)) if d <= cfg.clearance_threshold => {
            return Err(Error::PoleOnPath { eigenvalue: z, clearance: d, threshold: cfg.clearance_threshold })
        }
        Some((_, d)) => d,
        None => crate::pencil::NO_NEARBY_EIGENVALUE,
    };
    Ok((shift, clearance))
}

fn interior(theta: f64) -> bool {
    theta > -PI && theta < PI
}

impl IntegralWorkspace {
    /// Builds every intermediate for `[θ1, θ2] ⊂ (−π, π)`.
    pub fn new(p: &DescriptorPair, band: &Band, cfg: &DescintConfig) -> Result<Self> {
        if !(interior(band.theta1) && interior(band.theta2)) {
            return Err(Error::InvalidArgument(format!(
                "band {band} touches ±pi; use integrate_resolvent_discrete_any"
            )));
        }
        let (shift, clearance) = shift_and_arc_check(p, band, cfg)?;
        let e = complexify(p.e());
        let a = complexify(p.a());
        let t1 = (0.5 * band.theta1).tan();
        let t2 = (0.5 * band.theta2).tan();
        let gamma1 = gamma(&e, &a, t1);
        let gamma2 = gamma(&e, &a, t2);
        let eta = ((t2 - J) / (t1 - J)).ln();
        let ratio = solve_right(&gamma2, &gamma1, "Gamma(theta1)")?;
        let y = logm_principal(&ratio)? - identity(p.dim()) * eta;
        let (exp_y, psi1_y) = exp_and_psi1(&y)?;
        Ok(IntegralWorkspace { shift, t1, t2, eta, gamma1, gamma2, y, exp_y, psi1_y, clearance })
    }

    /// Evaluates the closed form from the stored intermediates.
    pub fn integral(&self, band: &Band) -> Result<ComplexMatrix> {
        let n = self.y.nrows();
        let m = identity(n) * unit_phasor(-band.theta2) - &self.exp_y * unit_phasor(-band.theta1);
        let lm = solve(&self.psi1_y, &m, "psi1(Y)")?;
        let inner = lm * (-self.shift.alpha) + &self.y * self.shift.beta;
        Ok(solve(&self.shift.w, &inner, "W")? * (-J))
    }
}

/// `∫_{θ1}^{θ2} (e^{jθ}E − A)⁻¹ dθ` for `−π < θ1 ≤ θ2 < π`.
pub fn integrate_resolvent_discrete(p: &DescriptorPair, band: &Band) -> Result<ComplexMatrix> {
    integrate_resolvent_discrete_with(p, band, &DescintConfig::default())
}

pub fn integrate_resolvent_discrete_with(p: &DescriptorPair, band: &Band, cfg: &DescintConfig) -> Result<ComplexMatrix> {
    if band.is_empty() && interior(band.theta1) {
        return Ok(ComplexMatrix::zeros(p.dim(), p.dim()));
    }
    IntegralWorkspace::new(p, band, cfg)?.integral(band)
}

/// `∫_{θ1}^{π} (e^{jθ}E − A)⁻¹ dθ` for `−π < θ1 ≤ π`.
pub fn integrate_resolvent_discrete_to_pi(p: &DescriptorPair, theta1: f64) -> Result<ComplexMatrix> {
    integrate_resolvent_discrete_to_pi_with(p, theta1, &DescintConfig::default())
}

pub fn integrate_resolvent_discrete_to_pi_with(
    p: &DescriptorPair,
    theta1: f64,
    cfg: &DescintConfig,
) -> Result<ComplexMatrix> {
    let n = p.dim();
    if !(theta1 > -PI && theta1 <= PI) {
        return Err(Error::InvalidArgument(format!("theta1 = {theta1} must lie in (-pi, pi]")));
    }
    if theta1 == PI {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let band = Band::new(theta1, PI)?;
    let (shift, _) = shift_and_arc_check(p, &band, cfg)?;
    let e = complexify(p.e());
    let a = complexify(p.a());
    let t1 = (0.5 * theta1).tan();
    // −1 is off the spectrum (the arc check covers θ = π), so E + A is invertible.
    let cayley = solve_right(&(&e - &a), &(&e + &a), "E + A")?;
    let arg = identity(n) * Complex64::new(t1, 0.0) - cayley * J;
    let eta_f = (t1 - J).ln();
    let y = logm_principal(&arg)? - identity(n) * eta_f;
    let (exp_y, psi1_y) = exp_and_psi1(&y)?;
    let alpha = shift.alpha;
    let beta = shift.beta;
    let rhs = exp_y * (alpha - beta) + identity(n) * (unit_phasor(-theta1) * alpha + beta);
    let inner = solve(&psi1_y, &rhs, "psi1(Y)")?;
    Ok(solve(&shift.w, &inner, "W")? * (-J))
}

/// `∫_{θ1}^{θ2} (e^{jθ}E − A)⁻¹ dθ` for any band in `[−π, π]`.
pub fn integrate_resolvent_discrete_any(p: &DescriptorPair, band: &Band) -> Result<ComplexMatrix> {
    integrate_resolvent_discrete_any_with(p, band, &DescintConfig::default())
}

pub fn integrate_resolvent_discrete_any_with(
    p: &DescriptorPair,
    band: &Band,
    cfg: &DescintConfig,
) -> Result<ComplexMatrix> {
    let n = p.dim();
    if band.is_empty() {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let from_minus_pi = band.theta1 == -PI;
    let to_pi = band.theta2 == PI;
    match (from_minus_pi, to_pi) {
        (false, false) => integrate_resolvent_discrete_with(p, band, cfg),
        (false, true) => integrate_resolvent_discrete_to_pi_with(p, band.theta1, cfg),
        (true, false) => Ok(integrate_resolvent_discrete_to_pi_with(p, -band.theta2, cfg)?.map(|z| z.conj())),
        (true, true) => {
            let upper = integrate_resolvent_discrete_to_pi_with(p, 0.0, cfg)?;
            Ok(upper.map(|z| z.conj()) + upper)
        }
    }
}

/// `C · ∫ (e^{jθ}E − A)⁻¹ dθ · B`.
pub fn integrate_transfer_discrete(
    c: &RealMatrix,
    p: &DescriptorPair,
    b: &RealMatrix,
    band: &Band,
) -> Result<ComplexMatrix> {
    let n = p.dim();
    if c.ncols() != n || b.nrows() != n {
        return Err(Error::ShapeMismatch(format!(
            "C is {}x{}, B is {}x{}, pencil is {n}x{n}",
            c.nrows(),
            c.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let k = integrate_resolvent_discrete_any(p, band)?;
    Ok(complexify(c) * k * complexify(b))
}

/// `∫_{ω1}^{ω2} (jωE − A)⁻¹ dω`.
pub fn integrate_resolvent_continuous(p: &DescriptorPair, band: &ContinuousBand) -> Result<ComplexMatrix> {
    integrate_resolvent_continuous_with(p, band, &DescintConfig::default())
}

pub fn integrate_resolvent_continuous_with(
    p: &DescriptorPair,
    band: &ContinuousBand,
    cfg: &DescintConfig,
) -> Result<ComplexMatrix> {
    let n = p.dim();
    if band.omega1 == band.omega2 {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let shift = p.select_shift_with(&cfg.shift)?;
    let eigs = p.generalized_eigenvalues_with(&shift)?;
    if let Some((z, d)) = nearest_on_segment(&eigs, band.omega1, band.omega2) {
        if d <= cfg.clearance_threshold {
            return Err(Error::PoleOnPath { eigenvalue: z, clearance: d, threshold: cfg.clearance_threshold });
        }
    }
    let e = complexify(p.e());
    let a = complexify(p.a());
    let omega = |w: f64| &e * Complex64::new(w, 0.0) + &a * J;
    let ratio = solve_right(&omega(band.omega2), &omega(band.omega1), "Omega(omega1)")?;
    let y = logm_principal(&ratio)?;
    let (exp_y, psi1_y) = exp_and_psi1(&y)?;
    let nmat = identity(n) * Complex64::new(band.omega2, 0.0) - exp_y * Complex64::new(band.omega1, 0.0);
    let inner = solve(&psi1_y, &nmat, "psi1(Y)")? * shift.beta + &y * (J * shift.alpha);
    Ok(-solve(&shift.w, &inner, "W")?)
}

fn check_interior(theta: f64, theta1: f64) -> Result<()> {
    if !(interior(theta) && interior(theta1)) {
        return Err(Error::InvalidArgument("scalar kernels need theta, theta1 in (-pi, pi)".into()));
    }
    Ok(())
}

fn ordered_band(theta1: f64, theta: f64) -> Band {
    Band { theta1: theta1.min(theta), theta2: theta1.max(theta) }
}

/// Scalar kernel whose matrix evaluation `W⁻¹ f_d(AW⁻¹, θ)` is
/// `∫_{θ1}^{θ} (e^{jφ}E − A)⁻¹ dφ`.
///
/// `f_d(z) = (1/(jz)) (−η + log(Ω(z,t)/Ω(z,t1)))` with
/// `Ω(z,t) = t(1 − βz + αz) − j(1 − βz − αz)`, and
/// `f_d(0) = (α/j)(e^{−jθ1} − e^{−jθ})`.
pub fn scalar_fd(z: Complex64, theta: f64, theta1: f64, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    check_interior(theta, theta1)?;
    let denom = 1.0 - beta * z;
    if denom != Complex64::new(0.0, 0.0) {
        let image = alpha * z / denom;
        if distance_to_arc(image, &ordered_band(theta1, theta)) <= SCALAR_EXCLUSION_TOL {
            return Err(Error::ExcludedPoint { point: z });
        }
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(alpha * (unit_phasor(-theta1) - unit_phasor(-theta)) / J);
    }
    let t = (0.5 * theta).tan();
    let t1 = (0.5 * theta1).tan();
    let omega = |t: f64| t * (denom + alpha * z) - J * (denom - alpha * z);
    let eta = ((t - J) / (t1 - J)).ln();
    Ok((-eta + (omega(t) / omega(t1)).ln()) / (J * z))
}

/// Scalar kernel whose matrix evaluation `A⁻¹ f_i(EA⁻¹, θ)` is
/// `∫_{θ1}^{θ} (e^{jφ}E − A)⁻¹ dφ`; equivalently
/// `f_i(z, θ) = ∫_{θ1}^{θ} (e^{jφ}z − 1)⁻¹ dφ`.
pub fn scalar_fi(z: Complex64, theta: f64, theta1: f64) -> Result<Complex64> {
    check_interior(theta, theta1)?;
    if distance_to_arc(z.conj(), &ordered_band(theta1, theta)) <= SCALAR_EXCLUSION_TOL {
        return Err(Error::ExcludedPoint { point: z });
    }
    let t = (0.5 * theta).tan();
    let t1 = (0.5 * theta1).tan();
    let eta = ((t - J) / (t1 - J)).ln();
    let num = t * (z + 1.0) - J * (z - 1.0);
    let den = t1 * (z + 1.0) - J * (z - 1.0);
    Ok((-eta + (num / den).ln()) / J)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::max_abs;
    use crate::oracle::{quad_scalar, QuadratureConfig};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn m(rows: usize, data: &[f64]) -> RealMatrix {
        RealMatrix::from_row_slice(rows, data.len() / rows, data)
    }

    fn scalar_pair(e: f64, a: f64) -> DescriptorPair {
        DescriptorPair::new(m(1, &[e]), m(1, &[a])).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_unit_pencil() {
        let r = integrate_resolvent_discrete(&scalar_pair(1.0, 0.0), &Band::new(0.0, FRAC_PI_2).unwrap()).unwrap();
        assert!((r[(0, 0)] - c(1.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn empty_band_is_zero() {
        let p = DescriptorPair::new(m(2, &[1.0, 2.0, 0.0, 1.0]), m(2, &[0.3, 0.0, 1.0, -2.0])).unwrap();
        for th in [-PI, -1.0, 0.0, 2.0, PI] {
            let r = integrate_resolvent_discrete_any(&p, &Band::new(th, th).unwrap()).unwrap();
            assert_eq!(r, ComplexMatrix::zeros(2, 2));
        }
    }

    #[test]
    fn nilpotent_closed_form() {
        // (zI − N)⁻¹ = [[1/z, 1/z²], [0, 1/z]]
        let p = DescriptorPair::new(RealMatrix::identity(2, 2), m(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let b = Band::new(0.0, FRAC_PI_2).unwrap();
        let r = integrate_resolvent_discrete(&p, &b).unwrap();
        let anti1 = |th: f64| J * unit_phasor(-th);
        let anti2 = |th: f64| 0.5 * J * unit_phasor(-2.0 * th);
        let d1 = anti1(FRAC_PI_2) - anti1(0.0);
        let d2 = anti2(FRAC_PI_2) - anti2(0.0);
        let want = ComplexMatrix::from_row_slice(2, 2, &[d1, d2, c(0.0, 0.0), d1]);
        assert!(max_abs(&(r - want)) < 1e-14);
    }

    #[test]
    fn to_pi_examples() {
        let r = integrate_resolvent_discrete_to_pi(&scalar_pair(1.0, 0.0), 0.0).unwrap();
        assert!((r[(0, 0)] - c(0.0, -2.0)).norm() < 1e-14);

        let p = DescriptorPair::new(RealMatrix::identity(2, 2), m(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let r = integrate_resolvent_discrete_to_pi(&p, 0.0).unwrap();
        let want = ComplexMatrix::from_row_slice(2, 2, &[c(0.0, -2.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)]);
        assert!(max_abs(&(r - want)) < 1e-14);
    }

    #[test]
    fn full_circle_of_unit_pencil_vanishes() {
        let r = integrate_resolvent_discrete_any(&scalar_pair(1.0, 0.0), &Band::full()).unwrap();
        assert!(r[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn quarter_band_pass_through() {
        let p = scalar_pair(1.0, 0.5);
        let b = Band::new(-FRAC_PI_4, FRAC_PI_4).unwrap();
        assert_eq!(integrate_resolvent_discrete_any(&p, &b).unwrap(), integrate_resolvent_discrete(&p, &b).unwrap());
    }

    #[test]
    fn minus_pi_band_is_conjugate_of_upper_half() {
        let p = scalar_pair(1.0, 0.5);
        let lower = integrate_resolvent_discrete_any(&p, &Band::new(-PI, 0.0).unwrap()).unwrap();
        let upper = integrate_resolvent_discrete_to_pi(&p, 0.0).unwrap();
        assert!((lower[(0, 0)] - upper[(0, 0)].conj()).norm() < 1e-15);
        let cfg = QuadratureConfig::default();
        let o = quad_scalar(|th| Ok(1.0 / (unit_phasor(th) - 0.5)), -PI, 0.0, &cfg).unwrap();
        assert!((lower[(0, 0)] - o).norm() < 1e-12);
    }

    #[test]
    fn pole_on_arc_is_rejected() {
        let p = scalar_pair(1.0, 1.0);
        let err = integrate_resolvent_discrete(&p, &Band::new(-0.5, 0.5).unwrap()).unwrap_err();
        assert!(matches!(err, Error::PoleOnPath { .. }));
        assert!(matches!(integrate_resolvent_discrete_to_pi(&scalar_pair(1.0, -1.0), 1.0), Err(Error::PoleOnPath { .. })));
        // the same pole is harmless on a band that avoids it
        assert!(integrate_resolvent_discrete(&p, &Band::new(0.5, 1.0).unwrap()).is_ok());
    }

    #[test]
    fn singular_pencil_is_rejected() {
        let p = DescriptorPair::new(m(2, &[1.0, 0.0, 0.0, 0.0]), m(2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(matches!(integrate_resolvent_discrete(&p, &Band::new(0.0, 1.0).unwrap()), Err(Error::SingularPencil)));
    }

    #[test]
    fn endpoint_band_requires_dispatcher() {
        let p = scalar_pair(1.0, 0.5);
        assert!(matches!(integrate_resolvent_discrete(&p, &Band::new(0.0, PI).unwrap()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn continuous_scalar_example() {
        let r = integrate_resolvent_continuous(&scalar_pair(1.0, -1.0), &ContinuousBand::new(-1.0, 1.0).unwrap()).unwrap();
        assert!((r[(0, 0)] - c(FRAC_PI_2, 0.0)).norm() < 1e-14);
        let z = integrate_resolvent_continuous(&scalar_pair(1.0, -1.0), &ContinuousBand::new(2.0, 2.0).unwrap()).unwrap();
        assert_eq!(z[(0, 0)], c(0.0, 0.0));
        // pole at j·1
        let rot = DescriptorPair::standard(m(2, &[0.0, -1.0, 1.0, 0.0])).unwrap();
        assert!(matches!(
            integrate_resolvent_continuous(&rot, &ContinuousBand::new(0.0, 2.0).unwrap()),
            Err(Error::PoleOnPath { .. })
        ));
    }

    #[test]
    fn fd_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let v = scalar_fd(zero, FRAC_PI_2, 0.0, one, zero).unwrap();
        assert!((v - c(1.0, -1.0)).norm() < 1e-15);
        let probe = scalar_fd(c(1e-6, 0.0), FRAC_PI_2, 0.0, one, zero).unwrap();
        assert!((probe - v).norm() < 1e-5);

        let cfg = QuadratureConfig::default();
        let fd = scalar_fd(c(0.5, 0.0), FRAC_PI_2, 0.0, one, zero).unwrap();
        let o = quad_scalar(|th| Ok(1.0 / (unit_phasor(th) - 0.5)), 0.0, FRAC_PI_2, &cfg).unwrap();
        assert!((fd - o).norm() < 1e-12);

        assert!(matches!(scalar_fd(unit_phasor(0.3), 0.5, 0.0, one, zero), Err(Error::ExcludedPoint { .. })));
    }

    #[test]
    fn fi_examples() {
        let cfg = QuadratureConfig::default();
        for z in [c(0.0, 0.0), c(2.0, 0.0), c(0.3, 0.2)] {
            let fi = scalar_fi(z, FRAC_PI_4, 0.0).unwrap();
            let o = quad_scalar(|th| Ok(1.0 / (unit_phasor(th) * z - 1.0)), 0.0, FRAC_PI_4, &cfg).unwrap();
            assert!((fi - o).norm() < 1e-12, "z = {z}");
        }
        assert_eq!(scalar_fi(c(2.0, 0.0), 0.7, 0.7).unwrap(), c(0.0, 0.0));
        assert!(matches!(scalar_fi(unit_phasor(-0.2), 0.5, 0.0), Err(Error::ExcludedPoint { .. })));
    }
}
