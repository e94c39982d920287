//! Frequency-truncated squared L2 norms of discrete-time systems
//!
//! ```text
//! ‖G‖²_[θ1,θ2] = (1/2π) tr ∫_{θ1}^{θ2} G(e^{jθ})ᴴ G(e^{jθ}) dθ,   G(z) = D + C(zI − A)⁻¹B.
//! ```
//!
//! Three closed forms are provided: the full-band Lyapunov value for Schur
//! `A`, a band formula built on the same Gramian, and a general formula on a
//! `2n`-dimensional augmented pencil that only needs the band (and its mirror
//! image) to be free of poles.

use std::f64::consts::PI;
use std::fmt;

use crate::descint::integrate_resolvent_discrete_any;
use crate::exec::Execution;
use crate::lyap::{solve_dlyap, spectral_radius, SCHUR_MARGIN};
use crate::matfun::logm_principal;
use crate::matrix::{complexify, identity, solve, unit_phasor, Complex64, ComplexMatrix, RealMatrix, J};
use crate::pencil::{Band, DescriptorPair, DEFAULT_CLEARANCE_THRESHOLD};
use crate::{Error, Result};

/// `auto` uses the stable path below this spectral radius.
pub const AUTO_STABLE_RADIUS: f64 = 1.0 - 1e-8;
/// Values above `−NEGATIVE_CLAMP` are clamped to zero; anything lower is a
/// numerical failure.
pub const NEGATIVE_CLAMP: f64 = 1e-12;
/// Relative size of the discarded imaginary part that triggers a warning.
pub const IMAG_RESIDUE_WARN: f64 = 1e-8;

/// Real state-space realization `(A, B, C, D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    pub a: RealMatrix,
    pub b: RealMatrix,
    pub c: RealMatrix,
    pub d: RealMatrix,
}

impl StateSpace {
    pub fn new(a: RealMatrix, b: RealMatrix, c: RealMatrix, d: RealMatrix) -> Result<Self> {
        crate::matrix::ensure_square("A", a.nrows(), a.ncols())?;
        let n = a.nrows();
        let (m, p) = (b.ncols(), c.nrows());
        if b.nrows() != n || c.ncols() != n || d.shape() != (p, m) {
            return Err(Error::ShapeMismatch(format!(
                "A is {n}x{n}, B is {}x{}, C is {}x{}, D is {}x{}",
                b.nrows(),
                b.ncols(),
                c.nrows(),
                c.ncols(),
                d.nrows(),
                d.ncols()
            )));
        }
        for (name, x) in [("A", &a), ("B", &b), ("C", &c), ("D", &d)] {
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(name));
            }
        }
        Ok(StateSpace { a, b, c, d })
    }

    /// System with `D = 0`.
    pub fn strictly_proper(a: RealMatrix, b: RealMatrix, c: RealMatrix) -> Result<Self> {
        let d = RealMatrix::zeros(c.nrows(), b.ncols());
        StateSpace::new(a, b, c, d)
    }

    pub fn states(&self) -> usize {
        self.a.nrows()
    }

    pub fn inputs(&self) -> usize {
        self.b.ncols()
    }

    pub fn outputs(&self) -> usize {
        self.c.nrows()
    }

    pub fn has_feedthrough(&self) -> bool {
        self.d.iter().any(|&x| x != 0.0)
    }

    /// Same system with `D` dropped.
    pub fn strictly_proper_part(&self) -> StateSpace {
        StateSpace { d: RealMatrix::zeros(self.outputs(), self.inputs()), ..self.clone() }
    }

    fn require_strictly_proper(&self) -> Result<()> {
        if self.has_feedthrough() {
            return Err(Error::NonzeroFeedthrough);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    Stable,
    General,
    FullBand,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::Stable => "stable",
            NormMethod::General => "general",
            NormMethod::FullBand => "full_band",
        }
    }
}

impl fmt::Display for NormMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Requested method for [`truncated_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Stable,
    General,
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "stable" => Ok(MethodChoice::Stable),
            "general" => Ok(MethodChoice::General),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    /// Squared norm, clamped at zero.
    pub value: f64,
    pub band: Band,
    pub method: NormMethod,
    /// Distance from the poles to the band arc (and, for the general path,
    /// its mirror image).
    pub arc_clearance: f64,
    pub diagnostics: Vec<String>,
    pub warnings: Vec<String>,
}

impl NormResult {
    fn new(raw: f64, band: Band, method: NormMethod, arc_clearance: f64) -> Result<Self> {
        if !raw.is_finite() {
            return Err(Error::NoConvergence("norm evaluated to a non-finite value"));
        }
        if raw < -NEGATIVE_CLAMP * raw.abs().max(1.0) {
            return Err(Error::IllConditioned { condition: raw, bound: -NEGATIVE_CLAMP });
        }
        let mut diagnostics = Vec::new();
        if raw < 0.0 {
            diagnostics.push(format!("negative rounding residue {raw:e} clamped to 0"));
        }
        Ok(NormResult { value: raw.max(0.0), band, method, arc_clearance, diagnostics, warnings: Vec::new() })
    }
}

fn pole_clearance(sys: &StateSpace, band: &Band, mirrored: bool) -> Result<f64> {
    if sys.states() == 0 {
        return Ok(crate::pencil::NO_NEARBY_EIGENVALUE);
    }
    let pair = DescriptorPair::standard(sys.a.clone())?;
    let mut c = pair.ensure_arc_clear(band, DEFAULT_CLEARANCE_THRESHOLD)?;
    if mirrored {
        c = c.min(pair.ensure_arc_clear(&band.mirrored(), DEFAULT_CLEARANCE_THRESHOLD)?);
    }
    Ok(c)
}

fn gramian_term(sys: &StateSpace) -> Result<(RealMatrix, f64)> {
    let p = solve_dlyap(&sys.a, &(sys.c.transpose() * &sys.c))?.p;
    let trace = (sys.b.transpose() * &p * &sys.b).trace();
    Ok((p, trace))
}

/// `tr(BᵀPB)` with `AᵀPA − P + CᵀC = 0`.
pub fn full_band_norm(sys: &StateSpace) -> Result<NormResult> {
    sys.require_strictly_proper()?;
    let (_, trace) = gramian_term(sys)?;
    let clearance = pole_clearance(sys, &Band::full(), false)?;
    NormResult::new(trace, Band::full(), NormMethod::FullBand, clearance)
}

/// Antiderivative `F(θ) = tr(BᵀPB)θ + 2 Im tr(BᵀP log(I − e^{−jθ}A) B)`.
fn stable_antiderivative(sys: &StateSpace, pb: &ComplexMatrix, trace: f64, theta: f64) -> Result<f64> {
    let n = sys.states();
    let arg = identity(n) - complexify(&sys.a) * unit_phasor(-theta);
    let log = logm_principal(&arg)?;
    let t = (pb.adjoint() * log * complexify(&sys.b)).trace();
    Ok(trace * theta + 2.0 * t.im)
}

/// Band norm for Schur-stable `A` through the discrete Gramian.
pub fn truncated_norm_stable(sys: &StateSpace, band: &Band) -> Result<NormResult> {
    sys.require_strictly_proper()?;
    let (p, trace) = gramian_term(sys)?;
    stable_from_gramian(sys, &p, trace, band)
}

fn stable_from_gramian(sys: &StateSpace, p: &RealMatrix, trace: f64, band: &Band) -> Result<NormResult> {
    let clearance = pole_clearance(sys, band, false)?;
    if band.is_empty() || sys.states() == 0 {
        return NormResult::new(0.0, *band, NormMethod::Stable, clearance);
    }
    // PB, so that (PB)ᴴ = BᵀP for real data
    let pb = complexify(&(p * &sys.b));
    let f2 = stable_antiderivative(sys, &pb, trace, band.theta2)?;
    let f1 = stable_antiderivative(sys, &pb, trace, band.theta1)?;
    NormResult::new((f2 - f1) / (2.0 * PI), *band, NormMethod::Stable, clearance)
}

/// Augmented realization of `G~G`, with `C_h(zE_h − A_h)⁻¹B_h` built from
/// `A_h = [[A, 0], [CᵀC, I]]`, `E_h = diag(I, Aᵀ)`, `B_h = [B; 0]`,
/// `C_h = [0, −Bᵀ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedSystem {
    pub a_h: RealMatrix,
    pub e_h: RealMatrix,
    pub b_h: RealMatrix,
    pub c_h: RealMatrix,
}

impl AugmentedSystem {
    pub fn pencil(&self) -> Result<DescriptorPair> {
        DescriptorPair::new(self.e_h.clone(), self.a_h.clone())
    }
}

pub fn build_augmented(sys: &StateSpace) -> Result<AugmentedSystem> {
    sys.require_strictly_proper()?;
    let n = sys.states();
    let m = sys.inputs();
    let mut a_h = RealMatrix::zeros(2 * n, 2 * n);
    a_h.view_mut((0, 0), (n, n)).copy_from(&sys.a);
    a_h.view_mut((n, 0), (n, n)).copy_from(&(sys.c.transpose() * &sys.c));
    a_h.view_mut((n, n), (n, n)).fill_with_identity();
    let mut e_h = RealMatrix::zeros(2 * n, 2 * n);
    e_h.view_mut((0, 0), (n, n)).fill_with_identity();
    e_h.view_mut((n, n), (n, n)).copy_from(&sys.a.transpose());
    let mut b_h = RealMatrix::zeros(2 * n, m);
    b_h.view_mut((0, 0), (n, m)).copy_from(&sys.b);
    let mut c_h = RealMatrix::zeros(m, 2 * n);
    c_h.view_mut((0, n), (m, n)).copy_from(&(-sys.b.transpose()));
    Ok(AugmentedSystem { a_h, e_h, b_h, c_h })
}

fn gamma_d(aug: &AugmentedSystem, theta: f64) -> ComplexMatrix {
    let e = complexify(&aug.e_h);
    let a = complexify(&aug.a_h);
    (&e + &a) * Complex64::new((0.5 * theta).tan(), 0.0) - (e - a) * J
}

/// Band norm valid for any pole locations off the band and its mirror.
///
/// Bands touching `±π` are evaluated through the closed-form resolvent
/// integral of the reversed augmented pencil instead of the tangent form,
/// which is undefined there.
pub fn truncated_norm_general(sys: &StateSpace, band: &Band) -> Result<NormResult> {
    let aug = build_augmented(sys)?;
    let clearance = pole_clearance(sys, band, true)?;
    if band.is_empty() || sys.states() == 0 {
        return NormResult::new(0.0, *band, NormMethod::General, clearance);
    }
    let interior = band.theta1 > -PI && band.theta2 < PI;
    let mut diagnostics = Vec::new();
    let trace = if interior {
        let ratio = solve(&gamma_d(&aug, band.theta1), &gamma_d(&aug, band.theta2), "Gamma_d(theta1)")?;
        let log = logm_principal(&ratio)?;
        (complexify(&aug.c_h) * log * complexify(&aug.b_h)).trace() * (-J)
    } else {
        // ∫_{θ1}^{θ2} (E_h − e^{−jθ}A_h)⁻¹ dθ = −∫_{−θ2}^{−θ1} (e^{jφ}A_h − E_h)⁻¹ dφ
        diagnostics.push(format!("band {band} reaches ±pi: evaluated via the reversed augmented pencil"));
        let reversed = DescriptorPair::new(aug.a_h.clone(), aug.e_h.clone())?;
        let k = integrate_resolvent_discrete_any(&reversed, &band.mirrored())?;
        -(complexify(&aug.c_h) * k * complexify(&aug.b_h)).trace()
    };
    let raw = trace / (2.0 * PI);
    let mut result = NormResult::new(raw.re, *band, NormMethod::General, clearance)?;
    let residue = raw.im.abs();
    diagnostics.push(format!("discarded imaginary residue {residue:e}"));
    if residue > IMAG_RESIDUE_WARN * raw.re.abs().max(1.0) {
        result.warnings.push(format!(
            "imaginary residue {residue:e} is large relative to the value; poles may be close to the band"
        ));
    }
    result.diagnostics.extend(diagnostics);
    Ok(result)
}

fn resolve_method(sys: &StateSpace, choice: MethodChoice) -> Result<NormMethod> {
    Ok(match choice {
        MethodChoice::Stable => NormMethod::Stable,
        MethodChoice::General => NormMethod::General,
        MethodChoice::Auto => {
            if sys.states() == 0 || spectral_radius(&sys.a)? < AUTO_STABLE_RADIUS {
                NormMethod::Stable
            } else {
                NormMethod::General
            }
        }
    })
}

/// Dispatches to the stable or general path for a strictly proper system.
pub fn truncated_norm(sys: &StateSpace, band: &Band, choice: MethodChoice) -> Result<NormResult> {
    match resolve_method(sys, choice)? {
        NormMethod::General => truncated_norm_general(sys, band),
        _ => truncated_norm_stable(sys, band),
    }
}

/// Band norm of `D + C(zI − A)⁻¹B` with a possibly nonzero `D`.
pub fn truncated_norm_with_feedthrough(sys: &StateSpace, band: &Band, choice: MethodChoice) -> Result<NormResult> {
    let core = sys.strictly_proper_part();
    let mut result = truncated_norm(&core, band, choice)?;
    if !sys.has_feedthrough() || band.is_empty() {
        return Ok(result);
    }
    let dd = (sys.d.transpose() * &sys.d).trace();
    let cross = if sys.states() == 0 {
        0.0
    } else {
        let pair = DescriptorPair::standard(sys.a.clone())?;
        let k = integrate_resolvent_discrete_any(&pair, band)?;
        let dt = complexify(&sys.d.transpose());
        (dt * complexify(&sys.c) * k * complexify(&sys.b)).trace().re
    };
    let extra = (band.width() * dd + 2.0 * cross) / (2.0 * PI);
    let mut updated = NormResult::new(result.value + extra, *band, result.method, result.arc_clearance)?;
    updated.diagnostics = std::mem::take(&mut result.diagnostics);
    updated.diagnostics.push(format!("feedthrough contribution {extra:e}"));
    updated.warnings = result.warnings;
    Ok(updated)
}

/// Mean-square reconstruction error of `M`-fold decimation and
/// interpolation: full-band norm minus the norm over `[−π/M, π/M]`.
pub fn multirate_error(sys: &StateSpace, m: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::InvalidArgument("decimation factor must be at least 1".into()));
    }
    if sys.states() > 0 && spectral_radius(&sys.a)? >= 1.0 - SCHUR_MARGIN {
        let rho = spectral_radius(&sys.a)?;
        return Err(Error::NotSchur { spectral_radius: rho, margin: 1.0 - rho });
    }
    if m == 1 {
        return Ok(0.0);
    }
    let full = truncated_norm_with_feedthrough(sys, &Band::full(), MethodChoice::Stable)?.value;
    let half_width = PI / m as f64;
    let band = Band::new(-half_width, half_width)?;
    let part = truncated_norm_with_feedthrough(sys, &band, MethodChoice::Stable)?.value;
    Ok(full - part)
}

/// Norms of one system over many bands. The Gramian is shared on the
/// stable path, and bands are evaluated through `exec`.
pub fn norm_sweep(sys: &StateSpace, bands: &[Band], choice: MethodChoice, exec: Execution) -> Result<Vec<NormResult>> {
    sys.require_strictly_proper()?;
    match resolve_method(sys, choice)? {
        NormMethod::General => exec.map(bands, |b| truncated_norm_general(sys, b)).into_iter().collect(),
        _ => {
            let (p, trace) = gramian_term(sys)?;
            exec.map(bands, |b| stable_from_gramian(sys, &p, trace, b)).into_iter().collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_truncated_norm, QuadratureConfig};
    use crate::random::{random_stable_system, rng};
    use std::f64::consts::FRAC_PI_2;

    fn scalar(a: f64, b: f64, c: f64) -> StateSpace {
        StateSpace::strictly_proper(
            RealMatrix::from_element(1, 1, a),
            RealMatrix::from_element(1, 1, b),
            RealMatrix::from_element(1, 1, c),
        )
        .unwrap()
    }

    fn oracle(sys: &StateSpace, band: &Band) -> f64 {
        oracle_truncated_norm(sys, band, &QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn full_band_examples() {
        let r = full_band_norm(&scalar(0.5, 1.0, 1.0)).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.method, NormMethod::FullBand);
        assert_eq!(full_band_norm(&scalar(0.5, 1.0, 0.0)).unwrap().value, 0.0);
        let mut g = rng(1);
        let sys = random_stable_system(&mut g, 5, 2, 2, 0.9);
        let v = full_band_norm(&sys).unwrap().value;
        assert!((v - oracle(&sys, &Band::full())).abs() <= 1e-9 * v);
    }

    #[test]
    fn stable_examples() {
        let sys = scalar(0.5, 1.0, 1.0);
        assert_eq!(truncated_norm_stable(&sys, &Band::new(0.3, 0.3).unwrap()).unwrap().value, 0.0);
        let full = truncated_norm_stable(&sys, &Band::full()).unwrap().value;
        assert!((full - 4.0 / 3.0).abs() < 1e-14);
        let band = Band::new(-FRAC_PI_2, FRAC_PI_2).unwrap();
        let v = truncated_norm_stable(&sys, &band).unwrap().value;
        assert!((v - oracle(&sys, &band)).abs() < 1e-10);
    }

    #[test]
    fn augmented_scalar() {
        let aug = build_augmented(&scalar(0.3, 2.0, -1.5)).unwrap();
        assert_eq!(aug.a_h, RealMatrix::from_row_slice(2, 2, &[0.3, 0.0, 2.25, 1.0]));
        assert_eq!(aug.e_h, RealMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.3]));
        assert_eq!(aug.b_h, RealMatrix::from_row_slice(2, 1, &[2.0, 0.0]));
        assert_eq!(aug.c_h, RealMatrix::from_row_slice(1, 2, &[0.0, -2.0]));
        assert_eq!(&aug.c_h * &aug.b_h, RealMatrix::zeros(1, 1));
    }

    #[test]
    fn augmented_spectrum_is_reciprocal_closed() {
        let mut g = rng(3);
        let sys = random_stable_system(&mut g, 3, 2, 1, 0.9);
        let aug = build_augmented(&sys).unwrap();
        let mut got = aug.pencil().unwrap().finite_eigenvalues().unwrap();
        let ev = crate::matfun::eigenvalues(&complexify(&sys.a)).unwrap();
        let mut want: Vec<Complex64> = ev.iter().copied().chain(ev.iter().map(|z| 1.0 / z)).collect();
        let key = |z: &Complex64| (z.re * 1e6).round() as i64 * 1_000_000_000 + (z.im * 1e6).round() as i64;
        got.sort_by_key(key);
        want.sort_by_key(key);
        assert_eq!(got.len(), want.len());
        for (x, y) in got.iter().zip(&want) {
            assert!((x - y).norm() < 1e-8 * y.norm().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn general_examples() {
        let sys = scalar(2.0, 1.0, 1.0);
        let band = Band::new(-FRAC_PI_2, FRAC_PI_2).unwrap();
        let v = truncated_norm_general(&sys, &band).unwrap().value;
        assert!((v - oracle(&sys, &band)).abs() < 1e-9 * v.max(1.0));
        assert_eq!(truncated_norm_general(&sys, &Band::new(1.0, 1.0).unwrap()).unwrap().value, 0.0);
    }

    #[test]
    fn general_to_pi_matches_oracle() {
        let sys = scalar(-1.7, 1.0, 0.8);
        for band in [Band::new(0.4, PI).unwrap(), Band::new(-PI, -0.2).unwrap(), Band::full()] {
            let r = truncated_norm_general(&sys, &band).unwrap();
            let o = oracle(&sys, &band);
            assert!((r.value - o).abs() < 1e-9 * o.max(1.0), "{band}: {} vs {o}", r.value);
        }
    }

    #[test]
    fn general_agrees_with_stable() {
        let mut g = rng(4);
        for _ in 0..10 {
            let sys = random_stable_system(&mut g, 4, 2, 2, 0.9);
            let band = crate::random::random_interior_band(&mut g, 0.05);
            let s = truncated_norm_stable(&sys, &band).unwrap().value;
            let q = truncated_norm_general(&sys, &band).unwrap().value;
            assert!((s - q).abs() <= 1e-9 * s.max(1e-3));
        }
    }

    #[test]
    fn general_rejects_mirrored_pole() {
        // pole at e^{−j0.5} lies on the mirror of [0.4, 0.6]
        let a = RealMatrix::from_row_slice(2, 2, &[0.5f64.cos(), 0.5f64.sin(), -(0.5f64.sin()), 0.5f64.cos()]);
        let sys = StateSpace::strictly_proper(a, RealMatrix::identity(2, 1), RealMatrix::identity(1, 2)).unwrap();
        let err = truncated_norm_general(&sys, &Band::new(0.4, 0.6).unwrap()).unwrap_err();
        assert!(matches!(err, Error::PoleOnPath { .. }));
    }

    #[test]
    fn feedthrough_examples() {
        let pure_d = StateSpace::new(
            RealMatrix::zeros(1, 1),
            RealMatrix::zeros(1, 1),
            RealMatrix::zeros(1, 1),
            RealMatrix::from_element(1, 1, 3.0),
        )
        .unwrap();
        let band = Band::new(-0.5, 1.5).unwrap();
        let v = truncated_norm_with_feedthrough(&pure_d, &band, MethodChoice::Auto).unwrap().value;
        assert!((v - 2.0 * 9.0 / (2.0 * PI)).abs() < 1e-14);

        let sys = scalar(0.5, 1.0, 1.0);
        let core = truncated_norm(&sys, &band, MethodChoice::Auto).unwrap();
        assert_eq!(truncated_norm_with_feedthrough(&sys, &band, MethodChoice::Auto).unwrap().value, core.value);

        let mut g = rng(9);
        let mut sys = random_stable_system(&mut g, 4, 2, 3, 0.9);
        sys.d = crate::random::uniform(&mut g, 3, 2);
        for band in [band, Band::full(), Band::new(0.2, PI).unwrap()] {
            let v = truncated_norm_with_feedthrough(&sys, &band, MethodChoice::Auto).unwrap().value;
            let o = oracle(&sys, &band);
            assert!((v - o).abs() <= 1e-9 * o.max(1.0));
        }
    }

    #[test]
    fn multirate_examples() {
        let sys = scalar(0.5, 1.0, 1.0);
        assert_eq!(multirate_error(&sys, 1).unwrap(), 0.0);
        let j = multirate_error(&sys, 2).unwrap();
        let o = 4.0 / 3.0 - oracle(&sys, &Band::new(-FRAC_PI_2, FRAC_PI_2).unwrap());
        assert!((j - o).abs() < 1e-9);
        assert!(multirate_error(&sys, 0).is_err());
        assert!(matches!(multirate_error(&scalar(1.5, 1.0, 1.0), 2), Err(Error::NotSchur { .. })));
    }

    #[test]
    fn sweep_matches_single_calls() {
        let mut g = rng(12);
        let sys = random_stable_system(&mut g, 4, 1, 2, 0.9);
        let bands: Vec<Band> = (0..6).map(|_| crate::random::random_interior_band(&mut g, 0.0)).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = norm_sweep(&sys, &bands, MethodChoice::Auto, exec).unwrap();
            for (r, b) in out.iter().zip(&bands) {
                assert_eq!(r.value, truncated_norm_stable(&sys, b).unwrap().value);
            }
        }
    }

    #[test]
    fn auto_dispatch() {
        let band = Band::new(-1.0, 1.0).unwrap();
        assert_eq!(truncated_norm(&scalar(0.5, 1.0, 1.0), &band, MethodChoice::Auto).unwrap().method, NormMethod::Stable);
        assert_eq!(truncated_norm(&scalar(2.0, 1.0, 1.0), &band, MethodChoice::Auto).unwrap().method, NormMethod::General);
        assert!(matches!(
            truncated_norm(&scalar(2.0, 1.0, 1.0), &band, MethodChoice::Stable),
            Err(Error::NotSchur { .. })
        ));
    }
}
