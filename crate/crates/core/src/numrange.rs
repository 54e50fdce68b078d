//! Numerical-range geometry: the support function of W(A), boundary
//! sampling, Kippenhahn polynomials, and a circularity test for W(K_m(A)).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigen::{hermitian_eigenvalues, top_eigenpair};
use crate::error::{Error, Result};
use crate::kms::{self, shift_kron, KmsSpec};
use crate::matrix::{kron, ComplexMatrix};

pub const MIN_BOUNDARY_SAMPLES: usize = 8;
pub const DEFAULT_CIRCLE_SAMPLES: usize = 720;
pub const DEFAULT_CIRCLE_TOL: f64 = 1e-8;

/// One support line of W(A): direction θ, offset h(θ), and a point of W(A)
/// on that line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub theta: f64,
    pub support: f64,
    pub point: Complex64,
}

/// h(θ) = λ_max(Re(e^{-iθ}A)) = max over W(A) of Re(e^{-iθ}z).
pub fn support(a: &ComplexMatrix, theta: f64) -> Result<f64> {
    let values = hermitian_eigenvalues(&a.rotated_re_part(-theta)?)?;
    values
        .last()
        .copied()
        .ok_or_else(|| Error::Dimension("empty matrix".into()))
}

fn sample_at(a: &ComplexMatrix, theta: f64) -> Result<BoundarySample> {
    let (support, x) = top_eigenpair(&a.rotated_re_part(-theta)?)?;
    Ok(BoundarySample {
        theta,
        support,
        point: a.quadratic_form(&x),
    })
}

/// Support values and touching points at N equally spaced angles from 0.
/// When λ_max is repeated the point comes from the first eigenvector of the
/// computed basis, which is still a boundary point.
pub fn boundary(a: &ComplexMatrix, samples: usize) -> Result<Vec<BoundarySample>> {
    a.require_square()?;
    if samples < MIN_BOUNDARY_SAMPLES {
        return Err(Error::Dimension(format!(
            "{samples} boundary samples requested, need at least {MIN_BOUNDARY_SAMPLES}"
        )));
    }
    (0..samples)
        .into_par_iter()
        .map(|i| sample_at(a, TAU * i as f64 / samples as f64))
        .collect()
}

/// p_A(x, y, z) = det(x·Re A + y·Im A + z·I). Complex arguments are allowed
/// so that p_A(1, i, z) = det(A + zI) can be evaluated.
pub fn kippenhahn(
    a: &ComplexMatrix,
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    let n = a.require_square()?;
    let m =
        &(&a.re_part()?.scale(x) + &a.im_part()?.scale(y)) + &ComplexMatrix::identity(n).scale(z);
    m.det()
}

/// Both sides of p_{K_m(A)}(1, y, 0) = ((-1)^n (1+y²)^n det(A*A) / 4^n)·h(y),
/// h(y) = det[(1-iy)/2·J_{m-2}(0)⊗A + (1+iy)/2·(J_{m-2}(0)⊗A)* - I_{m-2}⊗AA*].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantIdentityCheck {
    /// Largest |lhs - rhs| over the samples.
    pub residual: f64,
    /// max(1, largest |lhs| or |rhs|), the scale the residual is judged at.
    pub scale: f64,
}

impl DeterminantIdentityCheck {
    pub fn relative(&self) -> f64 {
        self.residual / self.scale
    }
}

pub fn lemdet_sides(m: usize, a: &ComplexMatrix, y: f64) -> Result<(Complex64, Complex64)> {
    if m < 3 {
        return Err(Error::Hypothesis(format!("m = {m} must be at least 3")));
    }
    let n = a.require_square()?;
    let k = kms::build(&KmsSpec::new(m, a.clone())?);
    let one = Complex64::new(1.0, 0.0);
    let lhs = kippenhahn(&k, one, Complex64::new(y, 0.0), Complex64::new(0.0, 0.0))?;

    let ja = shift_kron(m - 2, a);
    let iy = Complex64::new(0.0, y);
    let inner = &(&ja.scale((one - iy) * 0.5) + &ja.adjoint().scale((one + iy) * 0.5))
        - &kron(&ComplexMatrix::identity(m - 2), &(a * &a.adjoint()));
    let h = inner.det()?;
    let det_gram = (&a.adjoint() * a).det()?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor = det_gram * (sign * (1.0 + y * y).powi(n as i32) / 4f64.powi(n as i32));
    Ok((lhs, prefactor * h))
}

pub fn lemdet_residual(
    m: usize,
    a: &ComplexMatrix,
    ys: &[f64],
) -> Result<DeterminantIdentityCheck> {
    let mut out = DeterminantIdentityCheck {
        residual: 0.0,
        scale: 1.0,
    };
    for &y in ys {
        let (lhs, rhs) = lemdet_sides(m, a, y)?;
        out.residual = out.residual.max((lhs - rhs).norm());
        out.scale = out.scale.max(lhs.norm()).max(rhs.norm());
    }
    Ok(out)
}

/// Whether W is a disk centred at the origin, judged from its support
/// function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircularityVerdict {
    CircularDisk { radius: f64 },
    NotCircular { max_deviation: f64 },
}

impl CircularityVerdict {
    pub fn is_circular(&self) -> bool {
        matches!(self, Self::CircularDisk { .. })
    }
}

/// Circular disk centred at 0 iff the support function is constant to
/// relative `tol` and nonnegative. `max_deviation` is max |h(θ) - mean h|.
pub fn circularity_of(a: &ComplexMatrix, samples: usize, tol: f64) -> Result<CircularityVerdict> {
    let supports: Vec<f64> = boundary(a, samples)?.iter().map(|s| s.support).collect();
    let mean = supports.iter().sum::<f64>() / supports.len() as f64;
    let max_deviation = supports
        .iter()
        .map(|h| (h - mean).abs())
        .fold(0.0, f64::max);
    let floor = supports.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = tol * mean.abs().max(f64::MIN_POSITIVE);
    if max_deviation <= slack && floor >= -slack {
        Ok(CircularityVerdict::CircularDisk { radius: mean })
    } else {
        Ok(CircularityVerdict::NotCircular { max_deviation })
    }
}

/// Circularity of W(K_m(A)).
pub fn circularity(spec: &KmsSpec, samples: usize, tol: f64) -> Result<CircularityVerdict> {
    circularity_of(&kms::build(spec), samples, tol)
}

/// Numerical radius estimate max_θ h(θ) over the samples.
pub fn sampled_numerical_radius(samples: &[BoundarySample]) -> f64 {
    samples.iter().map(|s| s.support).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::shift;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar(x: f64) -> ComplexMatrix {
        ComplexMatrix::scalar(c(x, 0.0))
    }

    fn sample() -> ComplexMatrix {
        ComplexMatrix::from_vec(
            2,
            2,
            vec![c(0.4, -0.3), c(1.1, 0.2), c(-0.6, 0.9), c(0.25, 0.5)],
        )
        .unwrap()
    }

    #[test]
    fn support_examples() {
        for t in [0.0, 1.0, 2.5, 4.0] {
            assert!((support(&ComplexMatrix::identity(3), t).unwrap() - t.cos()).abs() < 1e-14);
            assert!((support(&shift(2), t).unwrap() - 0.5).abs() < 1e-14);
            let k = kms::build(
                &KmsSpec::new(2, ComplexMatrix::identity(2).scale_real(2.0 * 0.7)).unwrap(),
            );
            assert!((support(&k, t).unwrap() - 0.7).abs() < 1e-14);
        }
    }

    #[test]
    fn boundary_points_touch_support_lines() {
        let a = sample();
        let pts = boundary(&a, 64).unwrap();
        assert_eq!(pts.len(), 64);
        for p in &pts {
            let proj = (Complex64::from_polar(1.0, -p.theta) * p.point).re;
            assert!((proj - p.support).abs() < 1e-9 * a.frobenius_norm());
        }
        assert!(boundary(&a, 4).is_err());
    }

    #[test]
    fn boundary_special_cases() {
        for p in boundary(&ComplexMatrix::identity(2), 16).unwrap() {
            assert!((p.point - c(1.0, 0.0)).norm() < 1e-14);
        }
        let k = kms::build(&KmsSpec::new(2, scalar(2.0)).unwrap());
        for p in boundary(&k, 16).unwrap() {
            assert!((p.point.norm() - 1.0).abs() < 1e-12);
        }
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, -3.0]]);
        for p in boundary(&h, 16).unwrap() {
            assert!(p.point.im.abs() < 1e-14);
        }
    }

    #[test]
    fn kippenhahn_examples() {
        let z = c(0.7, -0.2);
        let v = kippenhahn(&ComplexMatrix::zeros(3, 3), c(1.3, 0.0), c(-0.4, 0.0), z).unwrap();
        assert!((v - z.powu(3)).norm() < 1e-14);

        let k = kms::build(&KmsSpec::new(3, sample()).unwrap());
        let v = kippenhahn(&k, c(1.0, 0.0), c(0.0, 1.0), z).unwrap();
        assert!((v - z.powu(6)).norm() < 1e-12);

        let b = 0.8;
        let k2 = kms::build(&KmsSpec::new(2, scalar(2.0 * b)).unwrap());
        for (x, y, zz) in [(1.0, 0.0, 0.3), (0.4, -1.1, 2.0), (-2.0, 0.5, -0.7)] {
            let v = kippenhahn(&k2, c(x, 0.0), c(y, 0.0), c(zz, 0.0)).unwrap();
            let want = zz * zz - b * b * (x * x + y * y);
            assert!((v - c(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn support_line_touches_kippenhahn_curve() {
        let a = sample();
        for t in [0.3, 1.7, 5.0] {
            let h = support(&a, t).unwrap();
            let v = kippenhahn(&a, c(t.cos(), 0.0), c(t.sin(), 0.0), c(-h, 0.0)).unwrap();
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn determinant_identity() {
        let (lhs, rhs) = lemdet_sides(3, &scalar(1.0), 0.0).unwrap();
        assert!((lhs - c(0.25, 0.0)).norm() < 1e-14);
        assert!((rhs - c(0.25, 0.0)).norm() < 1e-14);

        let singular = ComplexMatrix::real_diag(&[1.0, 0.0]);
        let chk = lemdet_residual(4, &singular, &[-1.0, 0.0, 2.0]).unwrap();
        assert!(chk.residual < 1e-14);

        let chk = lemdet_residual(4, &sample(), &[-2.0, -1.0, 0.0, 1.0, 2.0]).unwrap();
        assert!(chk.relative() < 1e-8, "{chk:?}");
        assert!(lemdet_sides(2, &sample(), 0.0).is_err());
    }

    #[test]
    fn circularity_examples() {
        let v = circularity(
            &KmsSpec::new(2, scalar(2.0)).unwrap(),
            DEFAULT_CIRCLE_SAMPLES,
            DEFAULT_CIRCLE_TOL,
        )
        .unwrap();
        match v {
            CircularityVerdict::CircularDisk { radius } => assert!((radius - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let j = circularity(
            &KmsSpec::new(3, shift(2)).unwrap(),
            DEFAULT_CIRCLE_SAMPLES,
            DEFAULT_CIRCLE_TOL,
        )
        .unwrap();
        assert!(j.is_circular(), "{j:?}");
        let d = ComplexMatrix::real_diag(&[1.0, 0.0]);
        let v = circularity(
            &KmsSpec::new(3, d).unwrap(),
            DEFAULT_CIRCLE_SAMPLES,
            DEFAULT_CIRCLE_TOL,
        )
        .unwrap();
        assert!(!v.is_circular());
        let zero = circularity_of(&ComplexMatrix::zeros(2, 2), 16, DEFAULT_CIRCLE_TOL).unwrap();
        assert_eq!(zero, CircularityVerdict::CircularDisk { radius: 0.0 });
    }
}
