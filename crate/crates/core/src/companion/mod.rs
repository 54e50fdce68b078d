//! Generalized companion matrices
//!
//! ```text
//!     C_{A,B} = [ 0    A_1 ⊕ … ⊕ A_{m-1} ]
//!               [ B_0  B_1 … B_{m-1}     ]
//! ```
//!
//! with n×n blocks, and their closed-form data: the rotation that turns
//! ωC_{A,B} into C_{A,Y}, the polynomial P whose unit-circle roots are the
//! only directions where Re(ωC_{A,B}) can lose rank (m even), the
//! determinant of Re(ωC_{A,B}) in terms of P(ω), and the zero-dilation
//! bounds.

mod polynomial;
pub mod schur;

use num_complex::Complex64;

pub use polynomial::{distance_to, MatrixPolynomial};

use crate::dilation::check_unit;
use crate::error::{Error, Result};
use crate::matrix::{direct_sum, ComplexMatrix};
use crate::svd::{is_nonsingular, nullity};

/// The block data (m, n, A_1..A_{m-1}, B_0..B_{m-1}) of C_{A,B}.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedCompanionSpec {
    m: usize,
    n: usize,
    diag_blocks: Vec<ComplexMatrix>,
    bottom_blocks: Vec<ComplexMatrix>,
}

impl GeneralizedCompanionSpec {
    pub fn new(
        m: usize,
        n: usize,
        diag_blocks: Vec<ComplexMatrix>,
        bottom_blocks: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if m < 2 || n < 1 {
            return Err(Error::Dimension(format!(
                "need m ≥ 2 and n ≥ 1, got m = {m}, n = {n}"
            )));
        }
        if diag_blocks.len() != m - 1 || bottom_blocks.len() != m {
            return Err(Error::Dimension(format!(
                "m = {m} needs {} diagonal and {m} bottom blocks, got {} and {}",
                m - 1,
                diag_blocks.len(),
                bottom_blocks.len()
            )));
        }
        for (name, b) in diag_blocks
            .iter()
            .map(|b| ("A", b))
            .chain(bottom_blocks.iter().map(|b| ("B", b)))
        {
            if b.rows() != n || b.cols() != n {
                return Err(Error::Dimension(format!(
                    "{name} block is {}x{}, expected {n}x{n}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(Self {
            m,
            n,
            diag_blocks,
            bottom_blocks,
        })
    }

    /// Block companion matrix of L(z) = I z^m + Σ C_j z^j: A_j = I, B_j = -C_j.
    pub fn block_companion(coeffs: &[ComplexMatrix]) -> Result<Self> {
        let m = coeffs.len();
        let n = coeffs.first().map_or(0, |c| c.rows());
        let diag = vec![ComplexMatrix::identity(n); m.saturating_sub(1)];
        let bottom = coeffs.iter().map(|c| c.scale_real(-1.0)).collect();
        Self::new(m, n, diag, bottom)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m * self.n
    }

    /// A_j for j = 1..m-1.
    pub fn a(&self, j: usize) -> &ComplexMatrix {
        &self.diag_blocks[j - 1]
    }

    /// B_j for j = 0..m-1.
    pub fn b(&self, j: usize) -> &ComplexMatrix {
        &self.bottom_blocks[j]
    }

    pub fn diag_blocks(&self) -> &[ComplexMatrix] {
        &self.diag_blocks
    }

    pub fn bottom_blocks(&self) -> &[ComplexMatrix] {
        &self.bottom_blocks
    }

    pub fn with_bottom_blocks(&self, bottom_blocks: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(self.m, self.n, self.diag_blocks.clone(), bottom_blocks)
    }

    /// Indices j in 1..=m-1 whose A_j fails the nonsingularity test.
    pub fn singular_diag_blocks(&self) -> Vec<usize> {
        (1..self.m)
            .filter(|&j| !is_nonsingular(self.a(j)))
            .collect()
    }

    fn require_nonsingular(&self, upto: usize) -> Result<()> {
        match (1..=upto).find(|&j| !is_nonsingular(self.a(j))) {
            Some(j) => Err(Error::Singular(format!("A_{j} is singular"))),
            None => Ok(()),
        }
    }
}

/// Assembles the mn×mn matrix C_{A,B}.
pub fn build(spec: &GeneralizedCompanionSpec) -> ComplexMatrix {
    let (m, n) = (spec.m, spec.n);
    let mut c = ComplexMatrix::zeros(m * n, m * n);
    for (i, a) in spec.diag_blocks.iter().enumerate() {
        c.set_block(i * n, (i + 1) * n, a);
    }
    for (j, b) in spec.bottom_blocks.iter().enumerate() {
        c.set_block((m - 1) * n, j * n, b);
    }
    c
}

/// Y_j = ω^{m-j} B_j and U = ⊕_{j=1}^m ω^j I_n, so that C_{A,Y} U = ω U C_{A,B}.
pub fn rotate(
    spec: &GeneralizedCompanionSpec,
    omega: Complex64,
) -> Result<(GeneralizedCompanionSpec, ComplexMatrix)> {
    check_unit(omega)?;
    let (m, n) = (spec.m, spec.n);
    let y = spec
        .bottom_blocks
        .iter()
        .enumerate()
        .map(|(j, b)| b.scale(omega.powu((m - j) as u32)))
        .collect();
    let mut u = ComplexMatrix::zeros(m * n, m * n);
    for j in 0..m {
        let w = omega.powu((j + 1) as u32);
        for t in 0..n {
            u[(j * n + t, j * n + t)] = w;
        }
    }
    Ok((spec.with_bottom_blocks(y)?, u))
}

fn require_even(spec: &GeneralizedCompanionSpec) -> Result<()> {
    if !spec.m.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("m = {} must be even", spec.m)));
    }
    Ok(())
}

/// P(z) = I z^m + Σ_{j=1}^{m/2} P_j z^{2j-2} with
/// P_j = (-1)^{m/2-j} A_{m-1}^{-1} A_{m-2}^* A_{m-3}^{-1} ⋯ A_{2j}^* A_{2j-1}^{-1} B_{2j-2}^*.
///
/// Requires m even and every A_j nonsingular.
pub fn p_polynomial(spec: &GeneralizedCompanionSpec) -> Result<MatrixPolynomial> {
    require_even(spec)?;
    spec.require_nonsingular(spec.m - 1)?;
    let (m, n) = (spec.m, spec.n);
    let half = m / 2;
    let inverses: Vec<ComplexMatrix> = (1..m)
        .map(|j| {
            if j % 2 == 1 {
                spec.a(j).inverse()
            } else {
                Ok(spec.a(j).adjoint())
            }
        })
        .collect::<Result<_>>()?;
    let factor = |j: usize| &inverses[j - 1];

    let mut coeffs = vec![ComplexMatrix::zeros(n, n); m + 1];
    coeffs[m] = ComplexMatrix::identity(n);
    for j in 1..=half {
        let mut prod = ComplexMatrix::identity(n);
        for idx in (2 * j - 1..m).rev() {
            prod = &prod * factor(idx);
        }
        prod = &prod * &spec.b(2 * j - 2).adjoint();
        if (half - j) % 2 == 1 {
            prod = prod.scale_real(-1.0);
        }
        coeffs[2 * j - 2] = prod;
    }
    MatrixPolynomial::new(coeffs)
}

/// ((-1)^{mn/2} / 2^{mn}) · Π_{j odd} |det A_j|² · |det P(ω)|², which equals
/// det Re(ω C_{A,B}) for m even and nonsingular A_j.
pub fn det_re_closed_form(spec: &GeneralizedCompanionSpec, omega: Complex64) -> Result<f64> {
    check_unit(omega)?;
    let p = p_polynomial(spec)?;
    let (m, n) = (spec.m, spec.n);
    let sign = if (m * n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let odd_product: f64 = (1..m)
        .step_by(2)
        .map(|j| spec.a(j).det().map(|d| d.norm_sqr()))
        .product::<Result<f64>>()?;
    let dp = p.det_at(omega).norm_sqr();
    Ok(sign * odd_product * dp / 2f64.powi((m * n) as i32))
}

/// det Re(ω C_{A,B}) computed from the assembled matrix.
pub fn det_re_direct(spec: &GeneralizedCompanionSpec, omega: Complex64) -> Result<f64> {
    let h = build(spec).scale(omega).re_part()?;
    Ok(h.det()?.re)
}

/// σ(P): the mn eigenvalues of the block companion linearization of P.
pub fn sigma_p(spec: &GeneralizedCompanionSpec) -> Result<Vec<Complex64>> {
    p_polynomial(spec)?.spectrum()
}

/// nullity(Re(ω C_{A,B})) with singular values below `rank_tol·σ_max`
/// treated as zero.
pub fn nullity_re(
    spec: &GeneralizedCompanionSpec,
    omega: Complex64,
    rank_tol: f64,
) -> Result<usize> {
    check_unit(omega)?;
    let h = build(spec).scale(omega).re_part()?;
    Ok(nullity(&h, rank_tol))
}

/// Guaranteed range for d(C_{A,B}) when every A_j is nonsingular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZdiBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

impl ZdiBounds {
    pub fn contains(&self, d: usize) -> bool {
        self.lower <= d && d <= self.upper
    }
}

/// m odd: ((m-1)n/2, (m+1)n/2); m even: mn/2 exactly. Singular A_j are
/// rejected.
pub fn zdi_bounds(spec: &GeneralizedCompanionSpec) -> Result<ZdiBounds> {
    spec.require_nonsingular(spec.m - 1)?;
    let (m, n) = (spec.m, spec.n);
    Ok(if m % 2 == 0 {
        let d = m * n / 2;
        ZdiBounds {
            lower: d,
            upper: d,
            exact: Some(d),
        }
    } else {
        ZdiBounds {
            lower: (m - 1) * n / 2,
            upper: (m + 1) * n / 2,
            exact: None,
        }
    })
}

/// Upper bound on d(C_{A,B}) from the nullities at the sampled directions:
/// min over ω of ⌊(mn + r(ω))/2⌋ with r(ω) = nullity(Re(ω C_{A,B})).
pub fn approach_upper_bound(
    spec: &GeneralizedCompanionSpec,
    omegas: &[Complex64],
    rank_tol: f64,
) -> Result<usize> {
    let mut best = spec.dim();
    for &w in omegas {
        let r = nullity_re(spec, w, rank_tol)?;
        best = best.min((spec.dim() + r) / 2);
    }
    Ok(best)
}

/// A_j = I_n, B = [0, …, 0, H/2] with H = 0_k ⊕ (-I_{n-k}), m odd. Its
/// zero-dilation index is (m-1)n/2 + k.
pub fn build_interp_example(m: usize, n: usize, k: usize) -> Result<GeneralizedCompanionSpec> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!(
            "m = {m} must be odd and at least 3"
        )));
    }
    if k > n {
        return Err(Error::Dimension(format!("k = {k} exceeds n = {n}")));
    }
    let h = direct_sum(
        &ComplexMatrix::zeros(k, k),
        &ComplexMatrix::identity(n - k).scale_real(-1.0),
    );
    let mut bottom = vec![ComplexMatrix::zeros(n, n); m];
    bottom[m - 1] = h.scale_real(0.5);
    GeneralizedCompanionSpec::new(m, n, vec![ComplexMatrix::identity(n); m - 1], bottom)
}

pub fn interp_expected(m: usize, n: usize, k: usize) -> usize {
    (m - 1) * n / 2 + k
}

/// Scalar companion matrix of z^m + Σ a_j z^j.
pub fn scalar_companion(coeffs: &[Complex64]) -> Result<GeneralizedCompanionSpec> {
    let blocks: Vec<ComplexMatrix> = coeffs.iter().map(|&c| ComplexMatrix::scalar(c)).collect();
    GeneralizedCompanionSpec::block_companion(&blocks)
}
