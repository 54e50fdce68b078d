//! Nilpotent Jordan structure: Segre characteristics at 0 and the block
//! counts of J_m(0)⊗A.
//!
//! Everything here rests on rank decisions, which are discontinuous. Inputs
//! are expected to be exactly structured; every result carries an
//! `unstable` flag set when some singular value lands within a factor 10 of
//! the rank threshold.

use crate::error::Result;
use crate::matrix::{kron, shift, ComplexMatrix};
use crate::svd::{rank_decision_unstable, rank_from_singular_values, singular_values};

/// Jordan block sizes of A at eigenvalue 0, nonincreasing, with α the
/// algebraic multiplicity of 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreCharacteristic {
    pub sizes: Vec<usize>,
    pub alg_mult0: usize,
    pub unstable: bool,
}

/// N_1..N_m: number of J_k(0) blocks in the Jordan form of J_m(0)⊗A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkCounts {
    /// `counts[k - 1]` is N_k.
    pub counts: Vec<usize>,
    pub unstable: bool,
}

impl NkCounts {
    pub fn get(&self, k: usize) -> usize {
        self.counts[k - 1]
    }

    /// Σ k·N_k, which is at most mn (blocks at nonzero eigenvalues are not
    /// counted). For J_m(0)⊗A it is exactly mn since the product is nilpotent.
    pub fn weighted_total(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1) * c)
            .sum()
    }

    /// Componentwise equality of the counts, ignoring the flag.
    pub fn same_counts(&self, other: &NkCounts) -> bool {
        self.counts == other.counts
    }
}

/// Nullities of X^0, X^1, …, X^p and whether any rank decision was close.
fn power_nullities(x: &ComplexMatrix, p: usize, tol: f64) -> Result<(Vec<usize>, bool)> {
    let n = x.require_square()?;
    let mut out = vec![0];
    let mut unstable = false;
    let mut power = ComplexMatrix::identity(n);
    for _ in 0..p {
        power = power.matmul(x)?;
        let sv = singular_values(&power);
        unstable |= rank_decision_unstable(&sv, tol);
        out.push(n - rank_from_singular_values(&sv, tol));
    }
    Ok((out, unstable))
}

/// Weyr sequence w_k = nullity(X^k) - nullity(X^{k-1}), k = 1..p.
fn weyr(nullities: &[usize]) -> Vec<usize> {
    nullities
        .windows(2)
        .map(|w| w[1].saturating_sub(w[0]))
        .collect()
}

/// Conjugate partition of a nonincreasing sequence.
fn conjugate(partition: &[usize]) -> Vec<usize> {
    let longest = partition.first().copied().unwrap_or(0);
    (1..=longest)
        .map(|j| partition.iter().filter(|&&w| w >= j).count())
        .collect()
}

/// Segre sizes as the conjugate of the Weyr sequence of A at 0.
pub fn segre_at_zero(a: &ComplexMatrix, tol: f64) -> Result<SegreCharacteristic> {
    let n = a.require_square()?;
    let (nullities, unstable) = power_nullities(a, n, tol)?;
    let mut w = weyr(&nullities);
    // A stable Weyr sequence is nonincreasing; repair noise so the
    // conjugate is still a partition.
    for k in 1..w.len() {
        w[k] = w[k].min(w[k - 1]);
    }
    let sizes = conjugate(&w);
    let alg_mult0 = sizes.iter().sum();
    Ok(SegreCharacteristic {
        sizes,
        alg_mult0,
        unstable,
    })
}

/// Block counts of J_m(0)⊗A from the Segre characteristic of A:
///
/// N_m = n - α + Σ_j (|m - s_j| + 1)·[m ≤ s_j],
/// N_k = Σ_j (2·[k < min(m, s_j)] + (|m - s_j| + 1)·[k = min(m, s_j)])  for k < m.
pub fn nk_formula(m: usize, a: &ComplexMatrix, tol: f64) -> Result<NkCounts> {
    let n = a.require_square()?;
    let segre = segre_at_zero(a, tol)?;
    let mut counts = vec![0usize; m];
    counts[m - 1] = n - segre.alg_mult0;
    for &s in &segre.sizes {
        let tail = m.abs_diff(s) + 1;
        if m <= s {
            counts[m - 1] += tail;
        }
        let cut = m.min(s);
        for k in 1..m {
            if k < cut {
                counts[k - 1] += 2;
            } else if k == cut {
                counts[k - 1] += tail;
            }
        }
    }
    Ok(NkCounts {
        counts,
        unstable: segre.unstable,
    })
}

/// Block counts read directly off the Weyr sequence of J_m(0)⊗A:
/// N_k = w_k - w_{k+1}.
pub fn nk_oracle(m: usize, a: &ComplexMatrix, tol: f64) -> Result<NkCounts> {
    a.require_square()?;
    let k = kron(&shift(m), a);
    let (nullities, unstable) = power_nullities(&k, m, tol)?;
    let mut w = weyr(&nullities);
    w.push(0);
    let counts = (0..m).map(|i| w[i].saturating_sub(w[i + 1])).collect();
    Ok(NkCounts { counts, unstable })
}

/// Weyr sequence of an arbitrary matrix at 0, up to the first power whose
/// nullity stops growing.
pub fn weyr_sequence(x: &ComplexMatrix, tol: f64) -> Result<(Vec<usize>, bool)> {
    let n = x.require_square()?;
    let (nullities, unstable) = power_nullities(x, n, tol)?;
    let mut w = weyr(&nullities);
    while w.last() == Some(&0) {
        w.pop();
    }
    Ok((w, unstable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::direct_sum;

    const TOL: f64 = 1e-8;

    fn j3_plus_zero() -> ComplexMatrix {
        direct_sum(&shift(3), &ComplexMatrix::zeros(1, 1))
    }

    #[test]
    fn segre_examples() {
        let s = segre_at_zero(&j3_plus_zero(), TOL).unwrap();
        assert_eq!(s.sizes, vec![3, 1]);
        assert_eq!(s.alg_mult0, 4);
        assert!(!s.unstable);

        let s = segre_at_zero(&ComplexMatrix::real_diag(&[2.0, -1.0]), TOL).unwrap();
        assert!(s.sizes.is_empty());
        assert_eq!(s.alg_mult0, 0);

        assert_eq!(
            segre_at_zero(&ComplexMatrix::zeros(2, 2), TOL)
                .unwrap()
                .sizes,
            vec![1, 1]
        );
    }

    #[test]
    fn segre_mixed_spectrum() {
        let a = direct_sum(&ComplexMatrix::real_diag(&[3.0]), &shift(2));
        let s = segre_at_zero(&a, TOL).unwrap();
        assert_eq!((s.sizes, s.alg_mult0), (vec![2], 2));
    }

    #[test]
    fn near_threshold_is_flagged() {
        let a = ComplexMatrix::real_diag(&[1.0, 5e-9]);
        assert!(segre_at_zero(&a, TOL).unwrap().unstable);
    }

    #[test]
    fn nk_worked_example() {
        let f = nk_formula(5, &j3_plus_zero(), TOL).unwrap();
        assert_eq!(f.counts, vec![7, 2, 3, 0, 0]);
        assert_eq!(f.weighted_total(), 20);
        let o = nk_oracle(5, &j3_plus_zero(), TOL).unwrap();
        assert_eq!(o.counts, f.counts);

        let f2 = nk_formula(2, &j3_plus_zero(), TOL).unwrap();
        assert_eq!((f2.get(1), f2.get(2)), (4, 2));
        assert_eq!(
            nk_oracle(2, &j3_plus_zero(), TOL).unwrap().counts,
            f2.counts
        );
    }

    #[test]
    fn nk_nonsingular_and_trivial() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(nk_formula(4, &a, TOL).unwrap().counts, vec![0, 0, 0, 2]);
        assert_eq!(nk_oracle(4, &a, TOL).unwrap().counts, vec![0, 0, 0, 2]);
        assert_eq!(
            nk_oracle(3, &ComplexMatrix::identity(1), TOL)
                .unwrap()
                .counts,
            vec![0, 0, 1]
        );
        assert_eq!(
            nk_oracle(3, &ComplexMatrix::zeros(1, 1), TOL)
                .unwrap()
                .counts,
            vec![3, 0, 0]
        );
        assert_eq!(
            nk_formula(3, &ComplexMatrix::zeros(1, 1), TOL)
                .unwrap()
                .counts,
            vec![3, 0, 0]
        );
    }

    #[test]
    fn weyr_of_shift() {
        assert_eq!(weyr_sequence(&shift(3), TOL).unwrap().0, vec![1, 1, 1]);
    }
}
