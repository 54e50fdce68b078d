use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE};

use super::schur;

/// Matrix polynomial Σ_k C_k z^k with n×n coefficients, stored densely by
/// exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    n: usize,
    coeffs: Vec<ComplexMatrix>,
}

impl MatrixPolynomial {
    /// `coeffs[k]` multiplies z^k; all must be n×n and the list nonempty.
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        let n = coeffs
            .first()
            .ok_or_else(|| Error::Dimension("matrix polynomial needs a coefficient".into()))?
            .rows();
        for (k, c) in coeffs.iter().enumerate() {
            if c.rows() != n || c.cols() != n {
                return Err(Error::Dimension(format!(
                    "coefficient of z^{k} is {}x{}, expected {n}x{n}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Option<&ComplexMatrix> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    /// Leading coefficient is exactly I_n.
    pub fn is_monic(&self) -> bool {
        self.coeffs[self.degree()] == ComplexMatrix::identity(self.n)
    }

    /// Horner evaluation P(z).
    pub fn eval(&self, z: Complex64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.n, self.n);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(z) + c;
        }
        acc
    }

    pub fn det_at(&self, z: Complex64) -> Complex64 {
        self.eval(z).det().expect("square by construction")
    }

    /// Block companion linearization of a monic polynomial: identity blocks
    /// on the superdiagonal and -C_0, ..., -C_{d-1} along the last block row.
    pub fn companion(&self) -> Result<ComplexMatrix> {
        if !self.is_monic() {
            return Err(Error::Hypothesis(
                "companion linearization needs a monic polynomial".into(),
            ));
        }
        let (n, d) = (self.n, self.degree());
        let mut c = ComplexMatrix::zeros(n * d, n * d);
        for i in 0..d.saturating_sub(1) {
            for t in 0..n {
                c[(i * n + t, (i + 1) * n + t)] = ONE;
            }
        }
        for (k, coeff) in self.coeffs[..d].iter().enumerate() {
            c.set_block((d - 1) * n, k * n, &coeff.scale_real(-1.0));
        }
        Ok(c)
    }

    /// σ(P) = {z : det P(z) = 0}, as the eigenvalues of the linearization
    /// (with algebraic multiplicity, nd values).
    pub fn spectrum(&self) -> Result<Vec<Complex64>> {
        let c = self.companion()?;
        if c.rows() == 0 {
            return Ok(Vec::new());
        }
        schur::eigenvalues(&c)
    }
}

/// Distance from `z` to the nearest point of a finite set (∞ if empty).
pub fn distance_to(points: &[Complex64], z: Complex64) -> f64 {
    points
        .iter()
        .map(|p| (p - z).norm())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_poly(c: &[f64]) -> MatrixPolynomial {
        MatrixPolynomial::new(
            c.iter()
                .map(|&x| ComplexMatrix::scalar(Complex64::new(x, 0.0)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn z_squared_has_double_zero_root() {
        let p = scalar_poly(&[0.0, 0.0, 1.0]);
        assert!(p.is_monic());
        let s = p.spectrum().unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn z_squared_minus_one() {
        let p = scalar_poly(&[-1.0, 0.0, 1.0]);
        let mut s = p.spectrum().unwrap();
        s.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((s[0] + 1.0).norm() < 1e-12);
        assert!((s[1] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn block_spectrum_roots_annihilate_determinant() {
        let c0 = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(0.3, -0.2),
                Complex64::new(1.0, 0.5),
                Complex64::new(-0.7, 0.1),
                Complex64::new(0.2, 0.9),
            ],
        )
        .unwrap();
        let c1 = ComplexMatrix::from_real_rows(&[&[0.5, -1.0], &[2.0, 0.0]]);
        let p = MatrixPolynomial::new(vec![c0, c1, ComplexMatrix::identity(2)]).unwrap();
        let s = p.spectrum().unwrap();
        assert_eq!(s.len(), 4);
        for z in s {
            let scale = (1.0 + z.norm()).powi(4);
            assert!(p.det_at(z).norm() < 1e-10 * scale, "{z}");
        }
    }

    #[test]
    fn non_monic_rejected() {
        let p = scalar_poly(&[1.0, 2.0]);
        assert!(p.companion().is_err());
        assert!(MatrixPolynomial::new(vec![]).is_err());
    }
}
