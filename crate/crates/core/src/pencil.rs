//! Matrix pencils `zE − A`: regularizing shifts, generalized eigenvalues and
//! the clearance checks that decide whether a band integral exists.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::matfun::eigenvalues;
use crate::matrix::{complexify, cond1, norm1, solve_right, unit_phasor, Complex64, ComplexMatrix, RealMatrix};
use crate::{Error, Result};

/// Eigenvalues closer than this to an integration path make the band
/// inadmissible.
pub const DEFAULT_CLEARANCE_THRESHOLD: f64 = 1e-9;

/// Reported clearance when no finite eigenvalue is near the unit circle
/// (or, for continuous bands, when there are no finite eigenvalues).
pub const NO_NEARBY_EIGENVALUE: f64 = 1e300;

/// Only eigenvalues within this distance of the unit circle are considered
/// by [`DescriptorPair::arc_clearance`].
const PROXIMITY: f64 = 0.5;

/// `|ν| ≤ INFINITE_TOL · ‖E W⁻¹‖₁` marks an infinite eigenvalue.
const INFINITE_TOL: f64 = 1e-7;

/// Principal argument of `e^{jφ}`, in `(−π, π]`.
pub fn wrap(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r > PI {
        // odd multiples of π land just above π after rounding
        if r - PI <= 4.0 * f64::EPSILON * PI {
            PI
        } else {
            r - TAU
        }
    } else {
        r
    }
}

/// Closed angular interval `[θ1, θ2] ⊆ [−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub theta1: f64,
    pub theta2: f64,
}

impl Band {
    /// Endpoints within `1e-12` outside `[−π, π]` are snapped onto `±π`.
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        let snap = |t: f64| {
            if (t.abs() - PI).abs() <= 1e-12 {
                PI.copysign(t)
            } else {
                t
            }
        };
        let (theta1, theta2) = (snap(theta1), snap(theta2));
        if !(theta1.is_finite() && theta2.is_finite()) {
            return Err(Error::InvalidArgument("band endpoints must be finite".into()));
        }
        if !(-PI <= theta1 && theta1 <= theta2 && theta2 <= PI) {
            return Err(Error::InvalidArgument(format!(
                "band [{theta1}, {theta2}] must satisfy -pi <= theta1 <= theta2 <= pi"
            )));
        }
        Ok(Band { theta1, theta2 })
    }

    pub fn full() -> Self {
        Band { theta1: -PI, theta2: PI }
    }

    pub fn width(&self) -> f64 {
        self.theta2 - self.theta1
    }

    pub fn is_empty(&self) -> bool {
        self.theta1 == self.theta2
    }

    /// `[−θ2, −θ1]`.
    pub fn mirrored(&self) -> Self {
        Band { theta1: -self.theta2, theta2: -self.theta1 }
    }

    /// Whether the closed arc contains the angle of `e^{jφ}`.
    pub fn contains_angle(&self, phi: f64) -> bool {
        let w = wrap(phi);
        (self.theta1 <= w && w <= self.theta2) || (self.theta1 == -PI && w == PI)
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.theta1, self.theta2)
    }
}

/// Distance from `z` to the arc `{e^{jφ} : wrap(φ) ∈ [θ1, θ2]}`.
pub fn distance_to_arc(z: Complex64, band: &Band) -> f64 {
    if band.contains_angle(z.arg()) {
        (z.norm() - 1.0).abs()
    } else {
        (z - unit_phasor(band.theta1)).norm().min((z - unit_phasor(band.theta2)).norm())
    }
}

/// Distance from `z` to the segment `{jω : ω ∈ [ω1, ω2]}`.
pub fn distance_to_segment(z: Complex64, omega1: f64, omega2: f64) -> f64 {
    let im = z.im.clamp(omega1, omega2);
    (z - Complex64::new(0.0, im)).norm()
}

/// Finite eigenvalue within 0.5 of the unit circle that is nearest to the
/// arc of `band`, with its distance.
pub fn nearest_on_arc(eigs: &[GeneralizedEigenvalue], band: &Band) -> Option<(Complex64, f64)> {
    eigs.iter()
        .filter_map(|g| g.finite())
        .filter(|z| (z.norm() - 1.0).abs() <= PROXIMITY)
        .map(|z| (z, distance_to_arc(z, band)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
}

/// Finite eigenvalue nearest to `{jω : ω ∈ [ω1, ω2]}`, with its distance.
pub fn nearest_on_segment(eigs: &[GeneralizedEigenvalue], omega1: f64, omega2: f64) -> Option<(Complex64, f64)> {
    eigs.iter()
        .filter_map(|g| g.finite())
        .map(|z| (z, distance_to_segment(z, omega1, omega2)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
}

/// Generalized eigenvalue of a regular pencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedEigenvalue {
    Finite(Complex64),
    Infinite,
}

impl GeneralizedEigenvalue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            GeneralizedEigenvalue::Finite(z) => Some(z),
            GeneralizedEigenvalue::Infinite => None,
        }
    }
}

/// Regularizing shift `W = αE + βA`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSelection {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub w: ComplexMatrix,
    pub w_condition: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftConfig {
    /// `E` (then `A`) is taken as-is when its condition number is below this.
    pub preferred_condition: f64,
    /// Shifts with condition above this are treated as singular.
    pub max_condition: f64,
    /// Number of unit-modulus `β` values tried with `α = 1`.
    pub grid_size: usize,
}

impl Default for ShiftConfig {
    fn default() -> Self {
        ShiftConfig { preferred_condition: 1e6, max_condition: 1e12, grid_size: 16 }
    }
}

/// The pencil `(E, A)` of `(zE − A)⁻¹`, with real square matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorPair {
    e: RealMatrix,
    a: RealMatrix,
}

impl DescriptorPair {
    pub fn new(e: RealMatrix, a: RealMatrix) -> Result<Self> {
        crate::matrix::ensure_square("E", e.nrows(), e.ncols())?;
        crate::matrix::ensure_square("A", a.nrows(), a.ncols())?;
        if e.nrows() != a.nrows() {
            return Err(Error::ShapeMismatch(format!(
                "E is {}x{} but A is {}x{}",
                e.nrows(),
                e.ncols(),
                a.nrows(),
                a.ncols()
            )));
        }
        if e.iter().chain(a.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("pencil"));
        }
        Ok(DescriptorPair { e, a })
    }

    /// The pencil `(I, A)`.
    pub fn standard(a: RealMatrix) -> Result<Self> {
        let n = a.nrows();
        Self::new(RealMatrix::identity(n, n), a)
    }

    pub fn e(&self) -> &RealMatrix {
        &self.e
    }

    pub fn a(&self) -> &RealMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn select_shift(&self) -> Result<ShiftSelection> {
        self.select_shift_with(&ShiftConfig::default())
    }

    /// Tries `(1, 0)`, then `(0, 1)`, then `α = 1` with `β` on a grid of
    /// unit-modulus values, and returns the best-conditioned `W` found.
    pub fn select_shift_with(&self, cfg: &ShiftConfig) -> Result<ShiftSelection> {
        let e = complexify(&self.e);
        let a = complexify(&self.a);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let candidate = |alpha: Complex64, beta: Complex64| {
            let w = &e * alpha + &a * beta;
            let c = cond1(&w);
            ShiftSelection { alpha, beta, w, w_condition: c }
        };

        let mut best = candidate(one, zero);
        if best.w_condition <= cfg.preferred_condition {
            return Ok(best);
        }
        let from_a = candidate(zero, one);
        if from_a.w_condition <= cfg.preferred_condition {
            return Ok(from_a);
        }
        if from_a.w_condition < best.w_condition {
            best = from_a;
        }
        for k in 0..cfg.grid_size {
            let beta = Complex64::from_polar(1.0, TAU * k as f64 / cfg.grid_size as f64);
            let c = candidate(one, beta);
            if c.w_condition < best.w_condition {
                best = c;
            }
        }
        if !(best.w_condition <= cfg.max_condition) {
            return Err(Error::SingularPencil);
        }
        Ok(best)
    }

    /// All `n` generalized eigenvalues, infinite ones flagged explicitly.
    pub fn generalized_eigenvalues(&self) -> Result<Vec<GeneralizedEigenvalue>> {
        let shift = self.select_shift()?;
        self.generalized_eigenvalues_with(&shift)
    }

    pub fn generalized_eigenvalues_with(&self, shift: &ShiftSelection) -> Result<Vec<GeneralizedEigenvalue>> {
        let n = self.dim();
        if n == 0 {
            return Ok(Vec::new());
        }
        let e_w = solve_right(&complexify(&self.e), &shift.w, "W")?;
        let scale = norm1(&e_w);
        let classify = |nu: Complex64, mu: Complex64| {
            if nu.norm() <= INFINITE_TOL * scale {
                GeneralizedEigenvalue::Infinite
            } else {
                GeneralizedEigenvalue::Finite(mu / nu)
            }
        };
        // E W⁻¹ = ν-part, A W⁻¹ = μ-part with αν + βμ = 1 on every eigenvector.
        if shift.alpha != Complex64::new(0.0, 0.0) {
            let a_w = solve_right(&complexify(&self.a), &shift.w, "W")?;
            Ok(eigenvalues(&a_w)?
                .into_iter()
                .map(|mu| classify((1.0 - shift.beta * mu) / shift.alpha, mu))
                .collect())
        } else {
            let mu = 1.0 / shift.beta;
            Ok(eigenvalues(&e_w)?.into_iter().map(|nu| classify(nu, mu)).collect())
        }
    }

    pub fn finite_eigenvalues(&self) -> Result<Vec<Complex64>> {
        Ok(self.generalized_eigenvalues()?.into_iter().filter_map(GeneralizedEigenvalue::finite).collect())
    }

    /// Eigenvalue nearest to the arc of `band` among those within 0.5 of the
    /// unit circle, with its distance.
    pub fn nearest_to_arc(&self, band: &Band) -> Result<Option<(Complex64, f64)>> {
        Ok(nearest_on_arc(&self.generalized_eigenvalues()?, band))
    }

    /// Minimum distance from near-circle eigenvalues to the band's arc, or
    /// [`NO_NEARBY_EIGENVALUE`].
    pub fn arc_clearance(&self, band: &Band) -> Result<f64> {
        Ok(self.nearest_to_arc(band)?.map_or(NO_NEARBY_EIGENVALUE, |(_, d)| d))
    }

    /// Fails with [`Error::PoleOnPath`] unless the arc clearance exceeds
    /// `threshold`; returns the clearance.
    pub fn ensure_arc_clear(&self, band: &Band, threshold: f64) -> Result<f64> {
        match self.nearest_to_arc(band)? {
            Some((z, d)) if d <= threshold => {
                Err(Error::PoleOnPath { eigenvalue: z, clearance: d, threshold })
            }
            Some((_, d)) => Ok(d),
            None => Ok(NO_NEARBY_EIGENVALUE),
        }
    }

    /// Eigenvalue nearest to the segment `{jω : ω ∈ [ω1, ω2]}` and its distance.
    pub fn nearest_to_segment(&self, omega1: f64, omega2: f64) -> Result<Option<(Complex64, f64)>> {
        Ok(nearest_on_segment(&self.generalized_eigenvalues()?, omega1, omega2))
    }

    pub fn segment_clearance(&self, omega1: f64, omega2: f64) -> Result<f64> {
        Ok(self.nearest_to_segment(omega1, omega2)?.map_or(NO_NEARBY_EIGENVALUE, |(_, d)| d))
    }
}
