//! Independent ground truth by adaptive quadrature.
//!
//! Nothing in this module touches the matrix-function kernels: integrands are
//! evaluated node by node with LU solves, and the Lyapunov reference is a
//! plain fixed-point iteration.
//!
//! The integrator is a globally adaptive 7/15-point Gauss–Kronrod scheme.
//! Each round splits every panel whose error estimate exceeds its
//! length-proportional share of the tolerance, and the new panels are
//! evaluated as one batch through [`Execution`]. Panels are kept in
//! left-to-right order and summed in that order, so the result does not
//! depend on the thread count.

use std::f64::consts::PI;

use crate::exec::Execution;
use crate::matrix::{complexify, max_abs, solve, unit_phasor, Complex64, ComplexMatrix, RealMatrix};
use crate::pencil::{Band, DescriptorPair};
use crate::sysnorm::StateSpace;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub min_interval: f64,
    pub initial_panels: usize,
    pub execution: Execution,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_subdivisions: 100_000,
            min_interval: 1e-13,
            initial_panels: 8,
            execution: Execution::default(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.min_interval > 0.0;
        if !positive || self.max_subdivisions == 0 || self.initial_panels == 0 {
            return Err(Error::InvalidArgument("quadrature settings must be positive".into()));
        }
        if self.rel_tol < 10.0 * f64::EPSILON {
            return Err(Error::InvalidArgument(format!(
                "rel_tol {:e} is below 10 machine epsilons",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Result of [`quad_matrix`].
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: ComplexMatrix,
    /// Sum of per-panel entrywise error estimates.
    pub error: f64,
    /// `false` when the subdivision budget or the minimum panel width stopped
    /// refinement first; `value` is then the best available estimate.
    pub converged: bool,
    pub subdivisions: usize,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: ComplexMatrix,
    error: f64,
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mid = f(center)?;
    let mut kronrod = &mid * Complex64::new(WGK[7], 0.0);
    let mut gauss = &mid * Complex64::new(WG[3], 0.0);
    for k in 0..7 {
        let dx = half * XGK[k];
        let sum = f(center - dx)? + f(center + dx)?;
        kronrod += &sum * Complex64::new(WGK[k], 0.0);
        if k % 2 == 1 {
            gauss += &sum * Complex64::new(WG[k / 2], 0.0);
        }
    }
    let h = Complex64::new(half, 0.0);
    let kronrod = kronrod * h;
    let gauss = gauss * h;
    let error = max_abs(&(&kronrod - &gauss));
    Ok(Panel { a, b, value: kronrod, error })
}

/// Adaptive quadrature of a matrix-valued integrand over `[a, b]`.
pub fn quad_matrix<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<ComplexMatrix> + Sync + Send,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidArgument(format!("quadrature interval [{a}, {b}] is invalid")));
    }
    if a == b {
        let shape = f(a)?.shape();
        return Ok(Quadrature {
            value: ComplexMatrix::zeros(shape.0, shape.1),
            error: 0.0,
            converged: true,
            subdivisions: 0,
            panels: 0,
        });
    }
    let total_len = b - a;
    let step = total_len / cfg.initial_panels as f64;
    let edges: Vec<(f64, f64)> = (0..cfg.initial_panels)
        .map(|i| {
            let lo = a + step * i as f64;
            let hi = if i + 1 == cfg.initial_panels { b } else { a + step * (i + 1) as f64 };
            (lo, hi)
        })
        .collect();
    let mut panels = evaluate(&f, &edges, cfg.execution)?;
    let mut subdivisions = 0;

    loop {
        let mut value = ComplexMatrix::zeros(panels[0].value.nrows(), panels[0].value.ncols());
        let mut error = 0.0;
        for p in &panels {
            value += &p.value;
            error += p.error;
        }
        let tol = cfg.abs_tol.max(cfg.rel_tol * max_abs(&value));
        let done = |converged| Quadrature { value: value.clone(), error, converged, subdivisions, panels: panels.len() };
        if error <= tol {
            return Ok(done(true));
        }
        if subdivisions >= cfg.max_subdivisions {
            return Ok(done(false));
        }
        let split: Vec<bool> = panels
            .iter()
            .map(|p| {
                let len = p.b - p.a;
                p.error > tol * len / total_len && 0.5 * len >= cfg.min_interval
            })
            .collect();
        let mut new_edges = Vec::new();
        for (p, &s) in panels.iter().zip(&split) {
            if s && subdivisions + new_edges.len() / 2 < cfg.max_subdivisions {
                let m = 0.5 * (p.a + p.b);
                new_edges.push((p.a, m));
                new_edges.push((m, p.b));
            }
        }
        if new_edges.is_empty() {
            return Ok(done(false));
        }
        subdivisions += new_edges.len() / 2;
        let mut fresh = evaluate(&f, &new_edges, cfg.execution)?.into_iter();
        let mut next = Vec::with_capacity(panels.len() + new_edges.len() / 2);
        let mut budget = new_edges.len() / 2;
        for (p, &s) in panels.into_iter().zip(&split) {
            if s && budget > 0 {
                budget -= 1;
                next.push(fresh.next().expect("left half"));
                next.push(fresh.next().expect("right half"));
            } else {
                next.push(p);
            }
        }
        panels = next;
    }
}

fn evaluate<F>(f: &F, edges: &[(f64, f64)], exec: Execution) -> Result<Vec<Panel>>
where
    F: Fn(f64) -> Result<ComplexMatrix> + Sync + Send,
{
    exec.map(edges, |&(lo, hi)| gauss_kronrod(f, lo, hi)).into_iter().collect()
}

/// Scalar convenience wrapper; fails if the quadrature does not converge.
pub fn quad_scalar<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64> + Sync + Send,
{
    let q = quad_matrix(|x| f(x).map(|v| ComplexMatrix::from_element(1, 1, v)), a, b, cfg)?;
    if !q.converged {
        return Err(Error::NoConvergence("adaptive quadrature budget exhausted"));
    }
    Ok(q.value[(0, 0)])
}

/// `(e^{jθ}E − A)⁻¹` by LU.
pub fn resolvent_discrete_at(p: &DescriptorPair, theta: f64) -> Result<ComplexMatrix> {
    let zmat = complexify(p.e()) * unit_phasor(theta) - complexify(p.a());
    solve(&zmat, &crate::matrix::identity(p.dim()), "resolvent")
}

/// `(jωE − A)⁻¹` by LU.
pub fn resolvent_continuous_at(p: &DescriptorPair, omega: f64) -> Result<ComplexMatrix> {
    let zmat = complexify(p.e()) * Complex64::new(0.0, omega) - complexify(p.a());
    solve(&zmat, &crate::matrix::identity(p.dim()), "resolvent")
}

/// `G(e^{jθ}) = D + C (e^{jθ}I − A)⁻¹ B` by LU.
pub fn transfer_at(sys: &StateSpace, theta: f64) -> Result<ComplexMatrix> {
    let n = sys.a.nrows();
    let zmat = crate::matrix::identity(n) * unit_phasor(theta) - complexify(&sys.a);
    let x = solve(&zmat, &complexify(&sys.b), "resolvent")?;
    Ok(complexify(&sys.d) + complexify(&sys.c) * x)
}

pub fn oracle_resolvent_discrete(p: &DescriptorPair, band: &Band, cfg: &QuadratureConfig) -> Result<Quadrature> {
    quad_matrix(|th| resolvent_discrete_at(p, th), band.theta1, band.theta2, cfg)
}

pub fn oracle_resolvent_continuous(p: &DescriptorPair, omega1: f64, omega2: f64, cfg: &QuadratureConfig) -> Result<Quadrature> {
    quad_matrix(|w| resolvent_continuous_at(p, w), omega1, omega2, cfg)
}

/// `(1/2π) ∫ tr G(e^{jθ})ᴴ G(e^{jθ}) dθ` over `band`.
pub fn oracle_truncated_norm(sys: &StateSpace, band: &Band, cfg: &QuadratureConfig) -> Result<f64> {
    let q = quad_matrix(
        |th| {
            let g = transfer_at(sys, th)?;
            let tr: f64 = g.iter().map(|z| z.norm_sqr()).sum();
            Ok(ComplexMatrix::from_element(1, 1, Complex64::new(tr, 0.0)))
        },
        band.theta1,
        band.theta2,
        cfg,
    )?;
    if !q.converged {
        return Err(Error::NoConvergence("adaptive quadrature budget exhausted"));
    }
    Ok(q.value[(0, 0)].re / (2.0 * PI))
}

/// Reference solution of `AᵀPA − P + Q = 0` by `P ← AᵀPA + Q`, stopped when
/// the update falls below `tol · ‖P‖`.
pub fn dlyap_fixed_point(a: &RealMatrix, q: &RealMatrix, tol: f64, max_iter: usize) -> Result<RealMatrix> {
    let mut p = q.clone();
    for _ in 0..max_iter {
        let next = a.transpose() * &p * a + q;
        let delta = (&next - &p).amax();
        p = next;
        if delta <= tol * p.amax() {
            return Ok(p);
        }
    }
    Err(Error::NoConvergence("fixed-point Lyapunov iteration"))
}
