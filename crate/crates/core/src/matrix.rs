//! Dense matrix aliases and the handful of factorization helpers shared by
//! every module.

use nalgebra::DMatrix;
pub use num_complex::Complex64;

use crate::{Error, Result};

pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

pub const J: Complex64 = Complex64::new(0.0, 1.0);

pub fn complexify(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Maximum absolute column sum.
pub fn norm1(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn norm1_real(m: &RealMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn all_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_square(what: &'static str, rows: usize, cols: usize) -> Result<()> {
    if rows != cols {
        return Err(Error::NotSquare { what, rows, cols });
    }
    Ok(())
}

/// Solves `A X = B` by partial-pivot LU, rejecting numerically singular `A`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix, what: &'static str) -> Result<ComplexMatrix> {
    ensure_square(what, a.nrows(), a.ncols())?;
    if a.nrows() != b.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "{what}: {}x{} system with {}x{} right-hand side",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    if a.nrows() == 0 {
        return Ok(b.clone());
    }
    let lu = a.clone().lu();
    let u = lu.u();
    let dmax = u.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let dmin = u.diagonal().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if dmax == 0.0 || dmin <= dmax * f64::EPSILON * a.nrows() as f64 {
        return Err(Error::Singular { what });
    }
    match lu.solve(b) {
        Some(x) if all_finite(&x) => Ok(x),
        _ => Err(Error::Singular { what }),
    }
}

/// Solves `X A = B`.
pub fn solve_right(b: &ComplexMatrix, a: &ComplexMatrix, what: &'static str) -> Result<ComplexMatrix> {
    Ok(solve(&a.transpose(), &b.transpose(), what)?.transpose())
}

pub fn inverse(a: &ComplexMatrix, what: &'static str) -> Result<ComplexMatrix> {
    solve(a, &identity(a.nrows()), what)
}

/// 1-norm condition number; `+inf` for numerically singular input.
pub fn cond1(a: &ComplexMatrix) -> f64 {
    if a.nrows() == 0 {
        return 1.0;
    }
    match inverse(a, "condition estimate") {
        Ok(inv) => norm1(a) * norm1(&inv),
        Err(_) => f64::INFINITY,
    }
}

/// Largest entry magnitude.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `e^{jθ}` with the ±π endpoints snapped to exactly `−1`.
pub fn unit_phasor(theta: f64) -> Complex64 {
    if theta.abs() == std::f64::consts::PI {
        Complex64::new(-1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, theta)
    }
}
