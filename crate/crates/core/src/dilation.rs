//! Zero-dilation index and rank-k numerical-range membership of the origin.
//!
//! Both are read off the inertia profile θ ↦ i_{≥0}(Re(e^{iθ}A)): the
//! zero-dilation index is its minimum over θ, and 0 ∈ Λ_k(A) exactly when
//! the profile never drops below k.
//!
//! The profile is piecewise constant and upper semicontinuous. Its
//! breakpoints are zeros of eigenvalue branches of Re(e^{iθ}A), of which
//! there are finitely many because det Re(e^{iθ}A) is a trigonometric
//! polynomial of degree dim(A). The set where the minimum is attained is
//! therefore a finite union of open intervals, and a fine uniform grid
//! finds it except for intervals narrower than the grid spacing. Those are
//! searched by bisecting every grid interval whose endpoints disagree.
//! This is a heuristic, not a certified global minimization.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inertia::Inertia;
use crate::matrix::ComplexMatrix;
use crate::svd::nullity;

pub const DEFAULT_GRID: usize = 4096;
pub const MIN_GRID: usize = 8;
pub const BISECTION_STEPS: usize = 40;
/// Relative singular-value threshold for nullity decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Result of minimizing the inertia profile over the rotation angle.
#[derive(Debug, Clone, PartialEq)]
pub struct ZdiResult {
    /// The computed zero-dilation index d(A).
    pub index: usize,
    /// Smallest angle in [0, 2π) attaining `index`.
    pub argmin_theta: f64,
    /// Uniform-grid samples (θ, i_{≥0}) in increasing θ.
    pub profile: Vec<(f64, usize)>,
    pub grid_size: usize,
    /// Whether bisection found a value below the grid minimum.
    pub refined: bool,
}

impl ZdiResult {
    /// Grid indices whose value lies strictly below both cyclic neighbours.
    /// An upper semicontinuous profile sampled finely enough has none.
    pub fn isolated_dips(&self) -> Vec<usize> {
        let n = self.profile.len();
        (0..n)
            .filter(|&i| {
                let prev = self.profile[(i + n - 1) % n].1;
                let next = self.profile[(i + 1) % n].1;
                let v = self.profile[i].1;
                v < prev && v < next
            })
            .collect()
    }

    pub fn profile_min(&self) -> usize {
        self.profile.iter().map(|p| p.1).min().unwrap_or(0)
    }

    pub fn profile_max(&self) -> usize {
        self.profile.iter().map(|p| p.1).max().unwrap_or(0)
    }
}

/// Absolute eigenvalue threshold used along a whole θ sweep:
/// 64·ε·dim·‖A‖_F, which dominates the default for every Re(e^{iθ}A).
pub fn sweep_tol(a: &ComplexMatrix) -> f64 {
    64.0 * f64::EPSILON * a.rows() as f64 * a.frobenius_norm()
}

fn resolve_tol(a: &ComplexMatrix, tol: Option<f64>) -> f64 {
    tol.unwrap_or_else(|| sweep_tol(a))
}

/// i_{≥0}(Re(e^{iθ}A)).
pub fn igeq_at(a: &ComplexMatrix, theta: f64, tol: Option<f64>) -> Result<usize> {
    let h = a.rotated_re_part(theta)?;
    let values = crate::eigen::hermitian_eigenvalues(&h)?;
    Ok(Inertia::from_eigenvalues(&values, resolve_tol(a, tol)).nonneg())
}

/// Samples i_{≥0}(Re(e^{iθ}A)) at the given angles, in order.
pub fn profile_at(a: &ComplexMatrix, thetas: &[f64], tol: Option<f64>) -> Result<Vec<usize>> {
    a.require_square()?;
    let tol = Some(resolve_tol(a, tol));
    thetas.par_iter().map(|&t| igeq_at(a, t, tol)).collect()
}

/// Zero-dilation index d(A) = min_θ i_{≥0}(Re(e^{iθ}A)).
pub fn zdi(a: &ComplexMatrix, grid_size: usize, tol: Option<f64>) -> Result<ZdiResult> {
    let dim = a.require_square()?;
    if grid_size < MIN_GRID {
        return Err(Error::Dimension(format!(
            "grid size {grid_size} below minimum {MIN_GRID}"
        )));
    }
    let tol = Some(resolve_tol(a, tol));
    let thetas: Vec<f64> = (0..grid_size)
        .map(|i| TAU * i as f64 / grid_size as f64)
        .collect();
    let counts = profile_at(a, &thetas, tol)?;

    // First occurrence gives the smallest θ on ties.
    let (mut best_theta, mut best) = thetas.iter().zip(&counts).fold(
        (0.0, usize::MAX),
        |acc, (&t, &c)| {
            if c < acc.1 {
                (t, c)
            } else {
                acc
            }
        },
    );
    let grid_min = best;

    let brackets: Vec<usize> = (0..grid_size)
        .filter(|&i| counts[i] != counts[(i + 1) % grid_size])
        .collect();
    let found: Vec<(f64, usize)> = brackets
        .par_iter()
        .map(|&i| {
            let lo = thetas[i];
            let hi = if i + 1 == grid_size {
                TAU
            } else {
                thetas[i + 1]
            };
            bisect_bracket(a, lo, counts[i], hi, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    for (theta, count) in found {
        let theta = theta.rem_euclid(TAU);
        if count < best || (count == best && count < grid_min && theta < best_theta) {
            best = count;
            best_theta = theta;
        }
    }
    debug_assert!(best <= dim);

    Ok(ZdiResult {
        index: best,
        argmin_theta: best_theta,
        profile: thetas.into_iter().zip(counts).collect(),
        grid_size,
        refined: best < grid_min,
    })
}

/// Bisects toward the breakpoint inside (lo, hi), returning the smallest
/// count observed and the first angle where it was seen.
fn bisect_bracket(
    a: &ComplexMatrix,
    mut lo: f64,
    lo_count: usize,
    mut hi: f64,
    tol: Option<f64>,
) -> Result<(f64, usize)> {
    let mut best = (f64::INFINITY, usize::MAX);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let c = igeq_at(a, mid, tol)?;
        if c < best.1 || (c == best.1 && mid < best.0) {
            best = (mid, c);
        }
        if c != lo_count {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(best)
}

/// Whether 0 ∈ Λ_k(A), i.e. i_{≥0}(Re(e^{iθ}A)) ≥ k for every θ.
pub fn lambda_k_contains_zero(
    a: &ComplexMatrix,
    k: usize,
    grid_size: usize,
    tol: Option<f64>,
) -> Result<bool> {
    let dim = a.require_square()?;
    if k == 0 || k > dim {
        return Err(Error::Dimension(format!("rank k = {k} outside 1..={dim}")));
    }
    Ok(zdi(a, grid_size, tol)?.index >= k)
}

/// Nullity r of Re(ωA) at relative rank tolerance `rank_tol`.
pub fn rotated_nullity(a: &ComplexMatrix, omega: Complex64, rank_tol: f64) -> Result<usize> {
    check_unit(omega)?;
    let h = a.scale(omega).re_part()?;
    Ok(nullity(&h, rank_tol))
}

/// The bound (m + r)/2 on d(A), where r = nullity(Re(ωA)).
pub fn approach_bound(a: &ComplexMatrix, omega: Complex64, rank_tol: f64) -> Result<f64> {
    let r = rotated_nullity(a, omega, rank_tol)?;
    Ok((a.rows() + r) as f64 / 2.0)
}

pub(crate) fn check_unit(omega: Complex64) -> Result<()> {
    if (omega.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Hypothesis(format!(
            "|ω| = {} is not 1",
            omega.norm()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{shift, ComplexMatrix};
    use std::f64::consts::PI;

    #[test]
    fn igeq_basic_cases() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(igeq_at(&z, 1.234, None).unwrap(), 3);
        for t in [0.0, 0.7, 2.0, 4.5] {
            assert_eq!(igeq_at(&shift(2), t, None).unwrap(), 1);
        }
        let id = ComplexMatrix::identity(4);
        assert_eq!(igeq_at(&id, 0.0, None).unwrap(), 4);
        assert_eq!(igeq_at(&id, PI, None).unwrap(), 0);
    }

    #[test]
    fn zdi_zero_matrix() {
        let r = zdi(&ComplexMatrix::zeros(3, 3), 64, None).unwrap();
        assert_eq!(r.index, 3);
        assert_eq!(r.argmin_theta, 0.0);
        assert!(!r.refined);
    }

    #[test]
    fn zdi_scalar_companion_of_z4() {
        // companion of z^4 is the shift J_4(0)
        let r = zdi(&shift(4), DEFAULT_GRID, None).unwrap();
        assert_eq!(r.index, 2);
        assert!(r.isolated_dips().is_empty());
    }

    #[test]
    fn identity_argmin_and_profile() {
        let r = zdi(&ComplexMatrix::identity(2), 16, None).unwrap();
        assert_eq!(r.index, 0);
        // Re(e^{iθ}) < 0 first on the grid at θ = 2π·5/16
        assert!((r.argmin_theta - TAU * 5.0 / 16.0).abs() < 1e-12);
        assert_eq!(r.profile.len(), 16);
    }

    #[test]
    fn lambda_k_membership() {
        let m = 3;
        assert!(lambda_k_contains_zero(&ComplexMatrix::zeros(m, m), m, 64, None).unwrap());
        assert!(!lambda_k_contains_zero(&ComplexMatrix::identity(m), 1, 64, None).unwrap());
        assert!(lambda_k_contains_zero(&shift(2), 1, 64, None).unwrap());
        assert!(!lambda_k_contains_zero(&shift(2), 2, 64, None).unwrap());
        assert!(lambda_k_contains_zero(&shift(2), 0, 64, None).is_err());
    }

    #[test]
    fn approach_bound_cases() {
        let one = Complex64::new(1.0, 0.0);
        let z = ComplexMatrix::zeros(4, 4);
        assert_eq!(
            approach_bound(&z, Complex64::from_polar(1.0, 0.3), DEFAULT_RANK_TOL).unwrap(),
            4.0
        );
        let id = ComplexMatrix::identity(4);
        assert_eq!(approach_bound(&id, one, DEFAULT_RANK_TOL).unwrap(), 2.0);
        assert!(approach_bound(&id, Complex64::new(2.0, 0.0), DEFAULT_RANK_TOL).is_err());
    }

    #[test]
    fn small_grid_rejected() {
        assert!(zdi(&shift(2), 4, None).is_err());
    }

    #[test]
    fn narrow_dip_found_by_bisection() {
        // Re(e^{iθ}A) = diag(cos(θ - a_k)) for A = diag(e^{-i a_k}). The first
        // two entries are simultaneously negative only on a window of width
        // 0.01 centred in the grid cell [0, π/8]; the third makes that cell's
        // endpoint counts differ (1 at θ = 0, 2 at θ = π/8) so it is bisected.
        let s = PI / 8.0;
        let c = s / 2.0;
        let shifts = [
            c - 0.005 - PI / 2.0,
            c + 0.005 - 1.5 * PI,
            s - 0.1 - 1.5 * PI,
        ];
        let diag: Vec<Complex64> = shifts
            .iter()
            .map(|&a| Complex64::from_polar(1.0, -a))
            .collect();
        let a = ComplexMatrix::diag(&diag);
        let r = zdi(&a, 16, None).unwrap();
        assert_eq!(r.profile_min(), 1);
        assert_eq!(r.index, 0);
        assert!(r.refined);
        assert!((r.argmin_theta - c).abs() < 0.005);
    }
}
