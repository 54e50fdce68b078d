//! Singular values by one-sided (Hestenes) Jacobi, and the rank decisions
//! built on them.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

const ORTHOGONALITY_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 80;

/// Singular values of `x`, descending; `min(rows, cols)` of them.
pub fn singular_values(x: &ComplexMatrix) -> Vec<f64> {
    // Orthogonalize the columns of the taller orientation.
    let work = if x.rows() >= x.cols() {
        x.clone()
    } else {
        x.adjoint()
    };
    let (m, n) = (work.rows(), work.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| work.column(j)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let wqp = -phase.conj() * s;
                let wqq = phase.conj() * c;
                // Two rows of `cols` are updated together.
                #[allow(clippy::needless_range_loop)]
                for k in 0..m {
                    let ui = cols[i][k];
                    let uj = cols[j][k];
                    cols[i][k] = ui * c + uj * wqp;
                    cols[j][k] = ui * s + uj * wqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Rank and nullity (cols - rank) of `x`. Singular values above
/// `tol * σ_max` count toward the rank; when σ_max = 0 the rank is 0.
pub fn rank_nullity(x: &ComplexMatrix, tol: f64) -> (usize, usize) {
    let sv = singular_values(x);
    let rank = rank_from_singular_values(&sv, tol);
    (rank, x.cols() - rank)
}

pub(crate) fn rank_from_singular_values(sv: &[f64], tol: f64) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    let threshold = if smax == 0.0 { tol } else { tol * smax };
    sv.iter().filter(|&&s| s > threshold).count()
}

/// True when some singular value sits within a factor 10 of the rank
/// threshold, so the rank decision could flip under a small perturbation.
pub fn rank_decision_unstable(sv: &[f64], tol: f64) -> bool {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return false;
    }
    let threshold = tol * smax;
    sv.iter()
        .any(|&s| s > threshold / 10.0 && s <= threshold * 10.0)
}

pub fn nullity(x: &ComplexMatrix, tol: f64) -> usize {
    rank_nullity(x, tol).1
}

/// Relative threshold for [`is_nonsingular`].
pub const NONSINGULAR_TOL: f64 = 1e-10;

/// |det X| > (tol·σ_max)^n, evaluated through the singular values in log
/// space, and additionally σ_min > tol·σ_max. The determinant test alone
/// accepts a rank-deficient 2x2 with σ_min at roundoff level. The zero
/// matrix (and 0x0) count as singular and nonsingular respectively.
pub fn is_nonsingular(x: &ComplexMatrix) -> bool {
    if x.rows() != x.cols() {
        return false;
    }
    let n = x.rows();
    if n == 0 {
        return true;
    }
    let sv = singular_values(x);
    let smax = sv[0];
    if smax == 0.0 || sv[n - 1] <= NONSINGULAR_TOL * smax {
        return false;
    }
    let log_det: f64 = sv.iter().map(|s| s.ln()).sum();
    log_det > n as f64 * (NONSINGULAR_TOL * smax).ln()
}
