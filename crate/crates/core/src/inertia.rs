use crate::eigen::hermitian_eigenvalues;
use crate::error::Result;
use crate::matrix::ComplexMatrix;

/// Counts of positive, zero and negative eigenvalues of a Hermitian matrix,
/// together with the absolute threshold that separated "zero" from the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inertia {
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
    pub tol: f64,
}

impl Inertia {
    pub fn from_eigenvalues(values: &[f64], tol: f64) -> Self {
        let mut out = Self {
            pos: 0,
            zero: 0,
            neg: 0,
            tol,
        };
        for &v in values {
            if v > 0.0 && v >= tol {
                out.pos += 1;
            } else if v < 0.0 && v <= -tol {
                out.neg += 1;
            } else {
                out.zero += 1;
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.pos + self.zero + self.neg
    }

    /// i_{≥0} = i_+ + i_0.
    pub fn nonneg(&self) -> usize {
        self.pos + self.zero
    }

    /// i_{≤0} = i_- + i_0.
    pub fn nonpos(&self) -> usize {
        self.neg + self.zero
    }
}

/// 64·ε·dim·‖H‖_F: structured inputs keep their exact zeros far below this.
pub fn default_tol(h: &ComplexMatrix) -> f64 {
    64.0 * f64::EPSILON * h.rows() as f64 * h.frobenius_norm()
}

/// Inertia of `h`; eigenvalues in the open interval (-tol, tol) count as zero.
pub fn inertia(h: &ComplexMatrix, tol: f64) -> Result<Inertia> {
    let values = hermitian_eigenvalues(h)?;
    Ok(Inertia::from_eigenvalues(&values, tol))
}

/// Inertia at [`default_tol`] unless an explicit threshold is given.
pub fn inertia_with(h: &ComplexMatrix, tol: Option<f64>) -> Result<Inertia> {
    let tol = tol.unwrap_or_else(|| default_tol(h));
    inertia(h, tol)
}
