//! Seeded random test matrices for the verification suites.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sdlab_core::companion::GeneralizedCompanionSpec;
use sdlab_core::{hermitian_eigen, singular_values, ComplexMatrix};

/// Independent stream `stream` of the run seed, so each check draws the
/// same numbers whatever else runs.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn unit<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Complex Gaussian entries of variance scale²/n, so ‖A‖₂ is of order
/// `scale`.
pub fn gaussian<R: Rng>(rng: &mut R, rows: usize, cols: usize, scale: f64) -> ComplexMatrix {
    let s = scale / (rows.max(cols) as f64).sqrt();
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng) * s)
}

pub fn condition(a: &ComplexMatrix) -> f64 {
    let sv = singular_values(a);
    sv[0] / sv[sv.len() - 1]
}

/// Gaussian draw with condition number at most 50.
pub fn well_conditioned<R: Rng>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    loop {
        let a = gaussian(rng, n, n, scale);
        if condition(&a) <= 50.0 {
            return a;
        }
    }
}

/// Rank-r matrix as a product of n×r and r×n Gaussian factors.
pub fn rank_deficient<R: Rng>(rng: &mut R, n: usize, rank: usize, scale: f64) -> ComplexMatrix {
    if rank == 0 {
        return ComplexMatrix::zeros(n, n);
    }
    let g = gaussian(rng, n, rank, 1.0);
    let h = gaussian(rng, rank, n, scale);
    &g * &h
}

/// Haar-ish unitary from the eigenvectors of a Gaussian Hermitian matrix.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian(rng, n, n, 1.0);
    hermitian_eigen(&g.hermitize())
        .expect("Hermitian by construction")
        .vectors
}

/// Companion spec with well-conditioned A_j and Gaussian B_j.
pub fn companion_spec<R: Rng>(rng: &mut R, m: usize, n: usize) -> GeneralizedCompanionSpec {
    let diag = (1..m).map(|_| well_conditioned(rng, n, 1.0)).collect();
    let bottom = (0..m).map(|_| gaussian(rng, n, n, 1.0)).collect();
    GeneralizedCompanionSpec::new(m, n, diag, bottom).expect("shapes match")
}
