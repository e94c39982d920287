//! Dense matrix-function kernels.
//!
//! - [`expm`]: scaling and squaring around diagonal Padé approximants of
//!   degree 3, 5, 7, 9 or 13, selected by 1-norm thresholds.
//! - [`logm_principal`]: inverse scaling and squaring on the complex Schur
//!   factor. Repeated triangular square roots bring `T` close to `I`, a
//!   Gauss–Legendre partial-fraction form of `log(I + X)` finishes the job,
//!   and the diagonal is replaced by the exact scalar logarithms.
//! - [`psi1`]: top-right block of `exp([[M, I], [0, 0]])`.
//!
//! [`spectral_apply`] evaluates `f(M) = V diag(f(λ)) V⁻¹` for diagonalizable
//! input and exists so the kernels above can be checked against the textbook
//! definition.

use nalgebra::Schur;

use crate::matrix::{cond1, ensure_square, identity, inverse, norm1, solve, Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Eigenvalues closer than this to `ℝ⁻ ∪ {0}` are rejected by [`logm_principal`].
pub const BRANCH_CUT_TOL: f64 = 1e-12;

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
// 1-norm bounds below which the degree-m approximant has backward error
// under unit roundoff.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068e0;
const THETA13: f64 = 5.371920351148152e0;

// Gauss–Legendre rule on [0, 1], 8 points.
const GL8_NODES: [f64; 8] = [
    0.019855071751231856,
    0.10166676129318664,
    0.2372337950418355,
    0.4082826787521751,
    0.5917173212478249,
    0.7627662049581645,
    0.8983332387068134,
    0.9801449282487681,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.05061426814518813,
    0.11119051722668724,
    0.15685332293894363,
    0.18134189168918100,
    0.18134189168918100,
    0.15685332293894363,
    0.11119051722668724,
    0.05061426814518813,
];
// ‖T − I‖₁ target before the Padé step; the 8-point rule is accurate to
// unit roundoff well beyond this.
const LOG_PADE_RADIUS: f64 = 0.25;
const MAX_SQRTS: usize = 100;

fn scale(m: &ComplexMatrix, s: f64) -> ComplexMatrix {
    m * Complex64::new(s, 0.0)
}

fn pade_odd_even(m: &ComplexMatrix, coef: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.nrows();
    let m2 = m * m;
    let mut pow = identity(n);
    let mut odd = ComplexMatrix::zeros(n, n);
    let mut even = ComplexMatrix::zeros(n, n);
    for (k, &c) in coef.iter().enumerate() {
        if k % 2 == 0 {
            even += scale(&pow, c);
        } else {
            odd += scale(&pow, c);
            pow = &pow * &m2;
        }
    }
    (m * odd, even)
}

fn pade13_odd_even(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let b = &PADE13;
    let n = m.nrows();
    let id = identity(n);
    let m2 = m * m;
    let m4 = &m2 * &m2;
    let m6 = &m4 * &m2;
    let inner_u = scale(&m6, b[13]) + scale(&m4, b[11]) + scale(&m2, b[9]);
    let u = m * (&m6 * inner_u + scale(&m6, b[7]) + scale(&m4, b[5]) + scale(&m2, b[3]) + scale(&id, b[1]));
    let inner_v = scale(&m6, b[12]) + scale(&m4, b[10]) + scale(&m2, b[8]);
    let v = &m6 * inner_v + scale(&m6, b[6]) + scale(&m4, b[4]) + scale(&m2, b[2]) + scale(&id, b[0]);
    (u, v)
}

/// Matrix exponential `e^M`.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_square("expm argument", m.nrows(), m.ncols())?;
    let n = m.nrows();
    if n == 0 {
        return Ok(m.clone());
    }
    let nrm = norm1(m);
    if !nrm.is_finite() {
        return Err(Error::NonFinite("expm argument"));
    }
    let (u, v, squarings) = if nrm <= THETA3 {
        let (u, v) = pade_odd_even(m, &PADE3);
        (u, v, 0)
    } else if nrm <= THETA5 {
        let (u, v) = pade_odd_even(m, &PADE5);
        (u, v, 0)
    } else if nrm <= THETA7 {
        let (u, v) = pade_odd_even(m, &PADE7);
        (u, v, 0)
    } else if nrm <= THETA9 {
        let (u, v) = pade_odd_even(m, &PADE9);
        (u, v, 0)
    } else {
        let s = (nrm / THETA13).log2().ceil().max(0.0) as i32;
        let scaled = scale(m, 0.5f64.powi(s));
        let (u, v) = pade13_odd_even(&scaled);
        (u, v, s)
    };
    let mut r = solve(&(&v - &u), &(&v + &u), "Pade denominator")?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// `e^M` and `ψ1(M)` from one exponential of the augmented matrix
/// `[[M, I], [0, 0]]`.
pub fn exp_and_psi1(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    ensure_square("psi1 argument", m.nrows(), m.ncols())?;
    let n = m.nrows();
    let mut aug = ComplexMatrix::zeros(2 * n, 2 * n);
    aug.view_mut((0, 0), (n, n)).copy_from(m);
    aug.view_mut((0, n), (n, n)).fill_with_identity();
    let e = expm(&aug)?;
    Ok((e.view((0, 0), (n, n)).into_owned(), e.view((0, n), (n, n)).into_owned()))
}

/// `ψ1(M) = Σ_{j≥0} M^j / (j+1)!`.
pub fn psi1(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    exp_and_psi1(m).map(|(_, p)| p)
}

/// Complex Schur factorization `M = U T Uᴴ` with `T` upper triangular.
pub fn schur(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    ensure_square("Schur argument", m.nrows(), m.ncols())?;
    let n = m.nrows();
    if n == 0 {
        return Ok((m.clone(), m.clone()));
    }
    if !crate::matrix::all_finite(m) {
        return Err(Error::NonFinite("Schur argument"));
    }
    let s = Schur::try_new(m.clone(), f64::EPSILON, 10_000 * n.max(1))
        .ok_or(Error::NoConvergence("complex Schur decomposition"))?;
    let (u, mut t) = s.unpack();
    for j in 0..n {
        for i in j + 1..n {
            t[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok((u, t))
}

/// Eigenvalues with multiplicity, in Schur diagonal order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let (_, t) = schur(m)?;
    Ok(t.diagonal().iter().copied().collect())
}

/// Distance from `z` to the closed negative real axis `ℝ⁻ ∪ {0}`.
pub fn distance_to_branch_cut(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

fn sqrtm_upper(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.nrows();
    let mut r = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        r[(j, j)] = t[(j, j)].sqrt();
        for i in (0..j).rev() {
            let mut s = t[(i, j)];
            for k in i + 1..j {
                s -= r[(i, k)] * r[(k, j)];
            }
            r[(i, j)] = s / (r[(i, i)] + r[(j, j)]);
        }
    }
    r
}

/// Principal logarithm: the unique `Q` with `e^Q = M` and every eigenvalue of
/// `Q` in the strip `|Im| < π`.
pub fn logm_principal(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_square("logm argument", m.nrows(), m.ncols())?;
    let n = m.nrows();
    if n == 0 {
        return Ok(m.clone());
    }
    let (u, t0) = schur(m)?;
    let diag: Vec<Complex64> = t0.diagonal().iter().copied().collect();
    for &lam in &diag {
        if lam.norm() <= BRANCH_CUT_TOL {
            return Err(Error::Singular { what: "logm argument" });
        }
        let d = distance_to_branch_cut(lam);
        if d <= BRANCH_CUT_TOL {
            return Err(Error::LogBranch { eigenvalue: lam, distance: d });
        }
    }

    let id = identity(n);
    let mut t = t0;
    let mut sqrts = 0;
    while norm1(&(&t - &id)) > LOG_PADE_RADIUS {
        if sqrts == MAX_SQRTS {
            return Err(Error::NoConvergence("logm square-root phase"));
        }
        t = sqrtm_upper(&t);
        sqrts += 1;
    }
    let x = &t - &id;
    let mut log = ComplexMatrix::zeros(n, n);
    for (&node, &w) in GL8_NODES.iter().zip(&GL8_WEIGHTS) {
        let denom = &id + scale(&x, node);
        log += scale(&solve(&denom, &x, "log Pade denominator")?, w);
    }
    let mut log = scale(&log, 2f64.powi(sqrts as i32));
    for (i, &lam) in diag.iter().enumerate() {
        log[(i, i)] = lam.ln();
    }
    Ok(&u * log * u.adjoint())
}

/// Eigenvector matrix of diagonalizable `M` with its 1-norm condition number.
fn eigenvectors(m: &ComplexMatrix) -> Result<(Vec<Complex64>, ComplexMatrix, f64)> {
    let (u, t) = schur(m)?;
    let n = t.nrows();
    let scale_t = norm1(&t).max(f64::MIN_POSITIVE);
    let mut vt = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        vt[(k, k)] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for j in i + 1..=k {
                s += t[(i, j)] * vt[(j, k)];
            }
            let gap = t[(k, k)] - t[(i, i)];
            if gap.norm() <= 64.0 * f64::EPSILON * scale_t {
                if s.norm() <= 64.0 * f64::EPSILON * scale_t {
                    continue;
                }
                return Ok((t.diagonal().iter().copied().collect(), vt, f64::INFINITY));
            }
            vt[(i, k)] = s / gap;
        }
        let nrm = vt.column(k).norm();
        vt.column_mut(k).unscale_mut(nrm);
    }
    let v = u * vt;
    let cond = cond1(&v);
    Ok((t.diagonal().iter().copied().collect(), v, cond))
}

/// `V · diag(f(λᵢ)) · V⁻¹` for diagonalizable `M`, with a fallible scalar map.
pub fn try_spectral_apply<F>(f: F, m: &ComplexMatrix, condition_bound: f64) -> Result<ComplexMatrix>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    ensure_square("spectral_apply argument", m.nrows(), m.ncols())?;
    let (lams, v, cond) = eigenvectors(m)?;
    if !(cond <= condition_bound) {
        return Err(Error::IllConditioned { condition: cond, bound: condition_bound });
    }
    let mut scaled = v.clone();
    for (k, lam) in lams.iter().enumerate() {
        let fk = f(*lam)?;
        scaled.column_mut(k).iter_mut().for_each(|x| *x *= fk);
    }
    Ok(scaled * inverse(&v, "eigenvector matrix")?)
}

/// `V · diag(f(λᵢ)) · V⁻¹` for diagonalizable `M`.
pub fn spectral_apply<F>(f: F, m: &ComplexMatrix, condition_bound: f64) -> Result<ComplexMatrix>
where
    F: Fn(Complex64) -> Complex64,
{
    try_spectral_apply(|z| Ok(f(z)), m, condition_bound)
}
