//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry with a diagonal
//! unitary and then applies a real Givens rotation, so the transformed
//! matrix stays exactly Hermitian and the diagonal stays real.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

/// Relative Hermitian-symmetry tolerance accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Sweeps stop once the off-diagonal Frobenius norm is below this times ‖H‖_F.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;

/// Full spectral decomposition H = V diag(values) V*.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn max_residual(&self, h: &ComplexMatrix) -> f64 {
        let n = self.values.len();
        (0..n)
            .map(|j| {
                let v = self.vectors.column(j);
                let hv = h.mul_vec(&v);
                hv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * self.values[j]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of V*V from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = &self.vectors.adjoint() * &self.vectors;
        (&g - &ComplexMatrix::identity(g.rows())).max_abs()
    }

    /// Eigenvector for the j-th (ascending) eigenvalue.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.vectors.column(j)
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<usize> {
    let n = h.require_square()?;
    let scale = h.frobenius_norm();
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(n)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = check_hermitian(h)?;
    let mut a = h.hermitize();
    let mut v = ComplexMatrix::identity(n);
    jacobi(&mut a, Some(&mut v))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Ascending eigenvalues only; skips eigenvector accumulation.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let mut a = h.hermitize();
    jacobi(&mut a, None)?;
    let mut values: Vec<f64> = (0..a.rows()).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn off_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[(i, j)].norm_sqr();
        }
    }
    2.0 * s
}

fn jacobi(a: &mut ComplexMatrix, mut vectors: Option<&mut ComplexMatrix>) -> Result<()> {
    let n = a.rows();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let norm = a.frobenius_norm();
    if n < 2 || norm == 0.0 {
        return Ok(());
    }
    let target = (OFF_DIAGONAL_TOL * norm).powi(2);
    for _ in 0..MAX_SWEEPS {
        if off_norm_sqr(a) <= target {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = a[(p, q)];
                let r = g.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = g / r;
                let zeta = (aqq - app) / (2.0 * r);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // W = [[c, s], [-s·conj(phase), c·conj(phase)]] on columns p, q.
                let wpp = Complex64::new(c, 0.0);
                let wpq = Complex64::new(s, 0.0);
                let wqp = -phase.conj() * s;
                let wqq = phase.conj() * c;
                rotate_columns(a, p, q, wpp, wpq, wqp, wqq);
                rotate_rows(a, p, q, wpp, wpq, wqp, wqq);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(app - t * r, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
                if let Some(v) = vectors.as_deref_mut() {
                    rotate_columns(v, p, q, wpp, wpq, wqp, wqq);
                }
            }
        }
    }
    if off_norm_sqr(a) <= target * 1e4 {
        // Converged to within two digits of the target; accept.
        return Ok(());
    }
    Err(Error::NoConvergence("Jacobi eigensolver"))
}

#[inline]
fn rotate_columns(
    a: &mut ComplexMatrix,
    p: usize,
    q: usize,
    wpp: Complex64,
    wpq: Complex64,
    wqp: Complex64,
    wqq: Complex64,
) {
    for k in 0..a.rows() {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * wpp + akq * wqp;
        a[(k, q)] = akp * wpq + akq * wqq;
    }
}

#[inline]
fn rotate_rows(
    a: &mut ComplexMatrix,
    p: usize,
    q: usize,
    wpp: Complex64,
    wpq: Complex64,
    wqp: Complex64,
    wqq: Complex64,
) {
    let (cpp, cpq, cqp, cqq) = (wpp.conj(), wpq.conj(), wqp.conj(), wqq.conj());
    for k in 0..a.cols() {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = cpp * apk + cqp * aqk;
        a[(q, k)] = cpq * apk + cqq * aqk;
    }
}

/// λ_max and a unit eigenvector for it.
pub fn top_eigenpair(h: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let eig = hermitian_eigen(h)?;
    let n = eig.values.len();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    Ok((eig.values[n - 1], eig.vector(n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::shift;

    #[test]
    fn zero_matrix() {
        let e = hermitian_eigen(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0]);
    }

    #[test]
    fn re_of_shift_two() {
        let h = shift(2).re_part().unwrap();
        let e = hermitian_eigen(&h).unwrap();
        assert!((e.values[0] + 0.5).abs() < 1e-15);
        assert!((e.values[1] - 0.5).abs() < 1e-15);
    }

    /// Roots of the characteristic polynomial of the symmetric tridiagonal
    /// matrix 2Re(J_3(0)) - 2I, located by bisection on the explicit cubic
    /// det(tI - H) = (t+2)^3 - 2(t+2).
    #[test]
    fn tridiagonal_against_char_poly_roots() {
        let h = &shift(3).re_part().unwrap().scale_real(2.0)
            - &ComplexMatrix::identity(3).scale_real(2.0);
        let e = hermitian_eigen(&h).unwrap();
        let p = |t: f64| (t + 2.0).powi(3) - 2.0 * (t + 2.0);
        let bisect = |mut lo: f64, mut hi: f64| {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if p(lo) * p(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let roots = [bisect(-3.6, -3.0), bisect(-2.2, -1.8), bisect(-0.8, -0.4)];
        let expected = [-2.0 - 2f64.sqrt(), -2.0, 2f64.sqrt() - 2.0];
        for k in 0..3 {
            assert!((roots[k] - expected[k]).abs() < 1e-12);
            assert!((e.values[k] - roots[k]).abs() < 1e-12, "{:?}", e.values);
        }
    }

    #[test]
    fn complex_hermitian_residuals() {
        let h = ComplexMatrix::from_vec(
            3,
            3,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, -1.0),
                Complex64::new(0.0, 0.5),
                Complex64::new(1.0, 1.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.3, 0.2),
                Complex64::new(0.0, -0.5),
                Complex64::new(0.3, -0.2),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&h).unwrap();
        assert!(e.max_residual(&h) < 1e-12 * h.frobenius_norm());
        assert!(e.orthonormality_defect() < 1e-12);
        let vals = hermitian_eigenvalues(&h).unwrap();
        for (a, b) in vals.iter().zip(&e.values) {
            assert!((a - b).abs() < 1e-13);
        }
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 1.5).abs() < 1e-13);
    }

    #[test]
    fn non_hermitian_rejected() {
        let x = shift(2);
        assert!(matches!(
            hermitian_eigen(&x),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            hermitian_eigen(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }
}
