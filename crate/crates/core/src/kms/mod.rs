//! Block KMS matrices
//!
//! ```text
//!     K_m(A) = [ 0  A  A²  …  A^{m-1} ]
//!              [    0  A   …  A^{m-2} ]
//!              [           ⋱  ⋮       ]
//!              [              0       ]
//! ```
//!
//! K_m(A) = (I - J_m(0)⊗A)^{-1} - I, which makes its similarity class a
//! function of the Jordan structure of J_m(0)⊗A, and its real part
//! congruent to a block tridiagonal matrix whose inertia gives d(K_m(A)).

mod jordan;
mod specht;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inertia::inertia_with;
use crate::matrix::{direct_sum, kron, shift, ComplexMatrix};
use crate::svd::{is_nonsingular, nullity, singular_values};

pub use jordan::{
    nk_formula, nk_oracle, segre_at_zero, weyr_sequence, NkCounts, SegreCharacteristic,
};
pub use specht::{
    canonical_words, specht_words, UnitarySimilarityVerdict, Word, DEFAULT_MAX_DEGREE,
};

/// The pair (m, A) defining K_m(A).
#[derive(Debug, Clone, PartialEq)]
pub struct KmsSpec {
    m: usize,
    a: ComplexMatrix,
}

impl KmsSpec {
    pub fn new(m: usize, a: ComplexMatrix) -> Result<Self> {
        if m < 2 {
            return Err(Error::Dimension(format!(
                "KMS order m = {m} must be at least 2"
            )));
        }
        a.require_square()?;
        Ok(Self { m, a })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }
}

/// Assembles K_m(A): block (i, j) = A^{j-i} for j > i.
pub fn build(spec: &KmsSpec) -> ComplexMatrix {
    let (m, n) = (spec.m, spec.n());
    let mut k = ComplexMatrix::zeros(m * n, m * n);
    let mut power = spec.a.clone();
    for d in 1..m {
        for i in 0..m - d {
            k.set_block(i * n, (i + d) * n, &power);
        }
        power = &power * &spec.a;
    }
    k
}

/// J_m(0)⊗A.
pub fn shift_kron(m: usize, a: &ComplexMatrix) -> ComplexMatrix {
    kron(&shift(m), a)
}

/// ‖(I + K_m(A))(I - J_m(0)⊗A) - I‖_F.
pub fn resolvent_residual(spec: &KmsSpec) -> f64 {
    let dim = spec.m * spec.n();
    let id = ComplexMatrix::identity(dim);
    let left = &id + &build(spec);
    let right = &id - &shift_kron(spec.m, &spec.a);
    (&(&left * &right) - &id).frobenius_norm()
}

/// Similarity of K_m(A) and K_m(B): equal Jordan block counts of
/// J_m(0)⊗A and J_m(0)⊗B. The flag reports a close rank decision on
/// either side.
pub fn kms_similar(
    m: usize,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
) -> Result<(bool, bool)> {
    same_size(a, b)?;
    let na = nk_formula(m, a, tol)?;
    let nb = nk_formula(m, b, tol)?;
    Ok((na.same_counts(&nb), na.unstable || nb.unstable))
}

/// K_2(A) and K_2(B) are similar iff rank A = rank B.
pub fn k2_similar(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    same_size(a, b)?;
    Ok(nullity(a, tol) == nullity(b, tol))
}

/// K_2(A) and K_2(B) are unitarily similar iff A and B have the same
/// singular values (compared to tol·max σ).
pub fn k2_unitarily_similar(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    same_size(a, b)?;
    let sa = singular_values(a);
    let sb = singular_values(b);
    let scale = sa
        .first()
        .copied()
        .unwrap_or(0.0)
        .max(sb.first().copied().unwrap_or(0.0))
        .max(1.0);
    Ok(sa
        .iter()
        .zip(&sb)
        .all(|(x, y)| (x - y).abs() <= tol * scale))
}

/// Searches for a trace word separating the unitary similarity classes of
/// K_m(A) and K_m(B). `IndistinguishableUpTo` is not a proof of unitary
/// similarity.
pub fn kms_unitarily_similar_upto(
    m: usize,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    max_degree: usize,
    tol: f64,
) -> Result<UnitarySimilarityVerdict> {
    same_size(a, b)?;
    if max_degree == 0 {
        return Err(Error::Dimension(
            "word degree cap must be at least 1".into(),
        ));
    }
    Ok(specht::compare_traces(m, a, b, max_degree, tol))
}

fn same_size(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "{n}x{n} and {}x{} differ in size",
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// d(K_2(A)) = n + nullity(A).
pub fn zdi_kms2(a: &ComplexMatrix, rank_tol: f64) -> Result<usize> {
    let n = a.require_square()?;
    Ok(n + nullity(a, rank_tol))
}

/// X_k^A(θ): for k = m, 2Re(J_m(0)⊗A) - 2cosθ·(I_{m-1}⊕[0])⊗AA*; for
/// k < m, 2Re(J_k(0)⊗A) - 2cosθ·I_k⊗AA*.
pub fn x_matrix(k: usize, m: usize, a: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    a.require_square()?;
    if k == 0 || k > m {
        return Err(Error::Dimension(format!("k = {k} outside 1..={m}")));
    }
    let aa = a * &a.adjoint();
    let selector = if k == m {
        direct_sum(&ComplexMatrix::identity(m - 1), &ComplexMatrix::zeros(1, 1))
    } else {
        ComplexMatrix::identity(k)
    };
    let sym = shift_kron(k, a).re_part()?.scale_real(2.0);
    Ok(&sym - &kron(&selector, &aa).scale_real(2.0 * theta.cos()))
}

/// d(K_m(A)) = i_{≥0}(Re K_m(A)) for m ≥ 3. When A passes the
/// nonsingularity test, n + i_{≥0}(X_{m-2}^A(0)) is evaluated as well and
/// must agree.
pub fn zdi_kms(m: usize, a: &ComplexMatrix, tol: Option<f64>) -> Result<usize> {
    if m < 3 {
        return Err(Error::Hypothesis(format!(
            "m = {m}: use the order-2 formula"
        )));
    }
    let spec = KmsSpec::new(m, a.clone())?;
    let direct = inertia_with(&build(&spec).re_part()?, tol)?.nonneg();
    if is_nonsingular(a) {
        let reduced = spec.n() + inertia_with(&x_matrix(m - 2, m, a, 0.0)?, tol)?.nonneg();
        if reduced != direct {
            return Err(Error::Inconsistent(format!(
                "i≥0(Re K) = {direct} but n + i≥0(X) = {reduced}"
            )));
        }
    }
    Ok(direct)
}

/// d(K_m(A)) for normal nonsingular A from its eigenvalues: Σ_i k_i with
/// k_i = 1 + #{k ∈ 1..=m-2 : cos(kπ/(m-1)) ≥ |λ_i|}, i.e. the k_i with
/// cos(k_iπ/(m-1)) < |λ_i| ≤ cos((k_i-1)π/(m-1)), capped at m-1.
/// Comparisons allow an absolute slack `tol`.
pub fn zdi_kms_normal(m: usize, eigenvalues: &[Complex64], tol: f64) -> Result<usize> {
    if m < 3 {
        return Err(Error::Hypothesis(format!("m = {m} must be at least 3")));
    }
    let mut total = 0;
    for &lambda in eigenvalues {
        let r = lambda.norm();
        if r <= tol {
            return Err(Error::Singular(format!("eigenvalue {lambda} is zero")));
        }
        let below = (1..=m - 2)
            .filter(|&k| (k as f64 * PI / (m - 1) as f64).cos() >= r - tol)
            .count();
        total += 1 + below;
    }
    Ok(total)
}

/// Samples θ ↦ i_{≥0}(X_k^A(θ)) over a sorted grid lying inside [0, π] or
/// inside [π, 2π].
pub fn monotonicity_profile(
    k: usize,
    m: usize,
    a: &ComplexMatrix,
    thetas: &[f64],
    tol: Option<f64>,
) -> Result<Vec<(f64, usize)>> {
    let in_upper = thetas.iter().all(|&t| (0.0..=PI).contains(&t));
    let in_lower = thetas.iter().all(|&t| (PI..=2.0 * PI).contains(&t));
    if !(in_upper || in_lower) {
        return Err(Error::Hypothesis(
            "angle grid must lie within [0, π] or within [π, 2π]".into(),
        ));
    }
    if thetas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Hypothesis("angle grid must be sorted".into()));
    }
    thetas
        .iter()
        .map(|&t| Ok((t, inertia_with(&x_matrix(k, m, a, t)?, tol)?.nonneg())))
        .collect()
}

/// (I_{m-1}⊕[0])⊗AA*.
fn truncated_gram(m: usize, a: &ComplexMatrix) -> ComplexMatrix {
    let selector = direct_sum(&ComplexMatrix::identity(m - 1), &ComplexMatrix::zeros(1, 1));
    kron(&selector, &(a * &a.adjoint()))
}

/// With S = I - J_m(0)⊗A, the Frobenius norm of
/// S(αK + βK*)S* - (αJ⊗A + β(J⊗A)* - (α+β)(I_{m-1}⊕[0])⊗AA*).
pub fn congruence_check(spec: &KmsSpec, alpha: Complex64, beta: Complex64) -> f64 {
    let (m, n) = (spec.m, spec.n());
    let k = build(spec);
    let ja = shift_kron(m, &spec.a);
    let s = &ComplexMatrix::identity(m * n) - &ja;
    let mid = &k.scale(alpha) + &k.adjoint().scale(beta);
    let lhs = &(&s * &mid) * &s.adjoint();
    let rhs = &(&ja.scale(alpha) + &ja.adjoint().scale(beta))
        - &truncated_gram(m, &spec.a).scale(alpha + beta);
    (&lhs - &rhs).frobenius_norm()
}

/// For β = 1/α, T = diag(1, α, …, α^{m-1})⊗I_n turns the congruence target
/// into 2Re(J⊗A) - (α+β)(I_{m-1}⊕[0])⊗AA*; returns the Frobenius residual
/// of T·S(αK + βK*)S*·T^{-1} against that matrix.
pub fn balanced_congruence_check(spec: &KmsSpec, alpha: Complex64) -> Result<f64> {
    if alpha.norm() == 0.0 {
        return Err(Error::Singular("α = 0".into()));
    }
    let (m, n) = (spec.m, spec.n());
    let beta = alpha.inv();
    let k = build(spec);
    let ja = shift_kron(m, &spec.a);
    let s = &ComplexMatrix::identity(m * n) - &ja;
    let mid = &k.scale(alpha) + &k.adjoint().scale(beta);
    let congruent = &(&s * &mid) * &s.adjoint();
    let powers: Vec<Complex64> = (0..m).map(|i| alpha.powu(i as u32)).collect();
    let t = kron(&ComplexMatrix::diag(&powers), &ComplexMatrix::identity(n));
    let t_inv = kron(
        &ComplexMatrix::diag(&powers.iter().map(|p| p.inv()).collect::<Vec<_>>()),
        &ComplexMatrix::identity(n),
    );
    let lhs = &(&t * &congruent) * &t_inv;
    let rhs = &ja.re_part()?.scale_real(2.0) - &truncated_gram(m, &spec.a).scale(alpha + beta);
    Ok((&lhs - &rhs).frobenius_norm())
}
