//! Discrete Lyapunov (Stein) equation `AᵀPA − P + Q = 0`.
//!
//! Bartels–Stewart style: reduce `A` to complex Schur form `U T Uᴴ`, solve the
//! triangular equation `TᴴXT − X + UᴴQU = 0` one column at a time by forward
//! substitution, and map back with `P = U X Uᴴ`.

use crate::matfun::schur;
use crate::matrix::{complexify, ensure_square, Complex64, ComplexMatrix, RealMatrix};
use crate::{Error, Result};

/// Spectral radii at or above `1 − SCHUR_MARGIN` are rejected.
pub const SCHUR_MARGIN: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-12;

/// Symmetric positive semidefinite solution `P` of the Stein equation.
#[derive(Debug, Clone, PartialEq)]
pub struct GramianMatrix {
    pub p: RealMatrix,
}

impl GramianMatrix {
    pub fn as_matrix(&self) -> &RealMatrix {
        &self.p
    }

    pub fn into_inner(self) -> RealMatrix {
        self.p
    }
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &RealMatrix) -> Result<f64> {
    ensure_square("A", a.nrows(), a.ncols())?;
    let ev = crate::matfun::eigenvalues(&complexify(a))?;
    Ok(ev.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Checks `ρ(A) < 1 − SCHUR_MARGIN` and returns `ρ(A)`.
pub fn ensure_schur(a: &RealMatrix) -> Result<f64> {
    let rho = spectral_radius(a)?;
    if !(rho < 1.0 - SCHUR_MARGIN) {
        return Err(Error::NotSchur { spectral_radius: rho, margin: 1.0 - rho });
    }
    Ok(rho)
}

/// Solves `AᵀPA − P + Q = 0` for Schur-stable `A` and symmetric `Q`.
pub fn solve_dlyap(a: &RealMatrix, q: &RealMatrix) -> Result<GramianMatrix> {
    ensure_square("A", a.nrows(), a.ncols())?;
    ensure_square("Q", q.nrows(), q.ncols())?;
    let n = a.nrows();
    if q.nrows() != n {
        return Err(Error::ShapeMismatch(format!("A is {n}x{n} but Q is {}x{}", q.nrows(), q.ncols())));
    }
    if a.iter().chain(q.iter()).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("Lyapunov data"));
    }
    let qmax = q.amax();
    let asym = (q - q.transpose()).amax();
    if asym > SYMMETRY_TOL * qmax.max(1.0) {
        return Err(Error::Asymmetric { asymmetry: asym });
    }
    if n == 0 {
        return Ok(GramianMatrix { p: RealMatrix::zeros(0, 0) });
    }

    let (u, t) = schur(&complexify(a))?;
    let rho = t.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(rho < 1.0 - SCHUR_MARGIN) {
        return Err(Error::NotSchur { spectral_radius: rho, margin: 1.0 - rho });
    }
    let qt = u.adjoint() * complexify(q) * &u;
    let th = t.adjoint();

    let mut x = ComplexMatrix::zeros(n, n);
    // th_x.column(l) caches Tᴴ X[:, l]
    let mut th_x = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut rhs: Vec<Complex64> = (0..n).map(|i| -qt[(i, j)]).collect();
        for l in 0..j {
            let tlj = t[(l, j)];
            if tlj != Complex64::new(0.0, 0.0) {
                for (i, r) in rhs.iter_mut().enumerate() {
                    *r -= tlj * th_x[(i, l)];
                }
            }
        }
        // (T_jj Tᴴ − I) x = rhs, lower triangular
        let tjj = t[(j, j)];
        for i in 0..n {
            let mut s = rhs[i];
            for k in 0..i {
                s -= tjj * th[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / (tjj * th[(i, i)] - 1.0);
        }
        let col = &th * x.column(j);
        th_x.set_column(j, &col);
    }

    let p = (&u * x * u.adjoint()).map(|z| z.re);
    let p = (&p + p.transpose()) * 0.5;
    Ok(GramianMatrix { p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dlyap_fixed_point;
    use crate::random::{random_schur_matrix, rng};
    use rand::Rng;

    fn scalar(x: f64) -> RealMatrix {
        RealMatrix::from_element(1, 1, x)
    }

    #[test]
    fn scalar_examples() {
        let p = solve_dlyap(&scalar(0.0), &scalar(1.0)).unwrap();
        assert_eq!(p.p[(0, 0)], 1.0);
        let p = solve_dlyap(&scalar(0.5), &scalar(1.0)).unwrap();
        assert!((p.p[(0, 0)] - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn matches_fixed_point_oracle() {
        let mut r = rng(11);
        for _ in 0..20 {
            let a = random_schur_matrix(&mut r, 4, 0.9);
            let c = RealMatrix::from_fn(2, 4, |_, _| r.gen_range(-1.0..1.0));
            let q = c.transpose() * &c;
            let p = solve_dlyap(&a, &q).unwrap().p;
            let oracle = dlyap_fixed_point(&a, &q, 1e-13, 1_000_000).unwrap();
            assert!((&p - &oracle).amax() <= 1e-11 * oracle.amax().max(1.0));
            let resid = a.transpose() * &p * &a - &p + &q;
            assert!(resid.norm() <= 1e-11 * (q.norm() + p.norm()));
            assert!((&p - p.transpose()).amax() <= 1e-12 * p.amax());
        }
    }

    #[test]
    fn rejects_unstable_and_asymmetric() {
        match solve_dlyap(&scalar(1.0), &scalar(1.0)) {
            Err(Error::NotSchur { spectral_radius, .. }) => assert_eq!(spectral_radius, 1.0),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            solve_dlyap(&scalar(1.0 - 1e-11), &scalar(1.0)),
            Err(Error::NotSchur { .. })
        ));
        let q = RealMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(
            solve_dlyap(&RealMatrix::zeros(2, 2), &q),
            Err(Error::Asymmetric { .. })
        ));
    }

    #[test]
    fn scaling_is_linear() {
        let mut r = rng(5);
        let a = random_schur_matrix(&mut r, 5, 0.95);
        let c = RealMatrix::from_fn(3, 5, |_, _| r.gen_range(-1.0..1.0));
        let q = c.transpose() * &c;
        let p1 = solve_dlyap(&a, &q).unwrap().p;
        let p3 = solve_dlyap(&a, &(&q * 3.0)).unwrap().p;
        assert!((&p1 * 3.0 - &p3).amax() <= 1e-13 * p3.amax());
    }

    #[test]
    fn permutation_round_trip() {
        // P for (ΠAΠᵀ, ΠQΠᵀ) is ΠPΠᵀ; restoring the order reproduces P.
        let mut r = rng(8);
        let a = random_schur_matrix(&mut r, 4, 0.9);
        let c = RealMatrix::from_fn(2, 4, |_, _| r.gen_range(-1.0..1.0));
        let q = c.transpose() * &c;
        let perm = [2usize, 0, 3, 1];
        let pm = RealMatrix::from_fn(4, 4, |i, j| if perm[i] == j { 1.0 } else { 0.0 });
        let p = solve_dlyap(&a, &q).unwrap().p;
        let pp = solve_dlyap(&(&pm * &a * pm.transpose()), &(&pm * &q * pm.transpose())).unwrap().p;
        let restored = pm.transpose() * pp * &pm;
        assert!((&restored - &p).amax() <= 1e-13 * p.amax().max(1.0));
    }

    #[test]
    fn monotone_in_q() {
        let mut r = rng(21);
        for _ in 0..10 {
            let a = random_schur_matrix(&mut r, 4, 0.9);
            let c1 = RealMatrix::from_fn(2, 4, |_, _| r.gen_range(-1.0..1.0));
            let c2 = RealMatrix::from_fn(2, 4, |_, _| r.gen_range(-1.0..1.0));
            let q1 = c1.transpose() * &c1;
            let q2 = &q1 + c2.transpose() * &c2;
            let d = solve_dlyap(&a, &q2).unwrap().p - solve_dlyap(&a, &q1).unwrap().p;
            let min_ev = d.symmetric_eigenvalues().min();
            assert!(min_ev >= -1e-10);
        }
    }
}
