//! Trace words in two noncommuting letters s, t, evaluated at (X, X*).
//!
//! Traces are invariant under cyclic rotation of the word, so words are
//! enumerated as binary necklaces (lexicographically least rotation,
//! s < t). Traces at (J_m(0), J_m(0)*) are computed with integer matrices:
//! every entry of such a product is a nonnegative integer, so the nonzero
//! filter is exact.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::matrix::ComplexMatrix;

pub const DEFAULT_MAX_DEGREE: usize = 12;

/// s^{e_1} t^{e_2} s^{e_3} t^{e_4} ⋯, stored as the alternating exponent
/// list (e_1, e_2, …) starting with s. Exponents may be zero only at the
/// ends, so (0, 2) is t².
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub exps: Vec<usize>,
}

impl Word {
    pub fn new(exps: Vec<usize>) -> Self {
        Self { exps }
    }

    pub fn total_degree(&self) -> usize {
        self.exps.iter().sum()
    }

    /// Letters in order; `false` is s and `true` is t.
    fn letters(&self) -> Vec<bool> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i % 2 == 1, e))
            .collect()
    }

    fn from_letters(letters: &[bool]) -> Self {
        let mut exps = Vec::new();
        let mut current = false;
        let mut run = 0;
        for &l in letters {
            if l == current {
                run += 1;
            } else {
                exps.push(run);
                current = l;
                run = 1;
            }
        }
        exps.push(run);
        Self { exps }
    }

    /// Evaluates the word at (X, X*).
    pub fn eval(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let xs = x.adjoint();
        let mut acc = ComplexMatrix::identity(x.rows());
        for l in self.letters() {
            acc = &acc * if l { &xs } else { x };
        }
        acc
    }

    pub fn trace_at(&self, x: &ComplexMatrix) -> Complex64 {
        self.eval(x).trace()
    }

    /// tr[w(J_m(0), J_m(0)*)] in exact integer arithmetic.
    pub fn shift_trace(&self, m: usize) -> u128 {
        let mut acc: Vec<Vec<u128>> = (0..m)
            .map(|i| (0..m).map(|j| u128::from(i == j)).collect())
            .collect();
        for l in self.letters() {
            // Right multiplication by J (moves column j to j+1) or by J*
            // (moves column j+1 to j).
            for row in acc.iter_mut() {
                if l {
                    for j in 0..m {
                        row[j] = if j + 1 < m { row[j + 1] } else { 0 };
                    }
                } else {
                    for j in (0..m).rev() {
                        row[j] = if j > 0 { row[j - 1] } else { 0 };
                    }
                }
            }
        }
        (0..m).map(|i| acc[i][i]).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &e) in self.exps.iter().enumerate() {
            let letter = if i % 2 == 0 { 's' } else { 't' };
            match e {
                0 => {}
                1 => write!(f, "{letter}")?,
                _ => write!(f, "{letter}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Binary necklaces of length `len` (Duval / FKM generation), as letter
/// strings in lexicographic order.
fn necklaces(len: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut a = vec![0u8; len + 1];
    fn gen(t: usize, p: usize, len: usize, a: &mut Vec<u8>, out: &mut Vec<Vec<bool>>) {
        if t > len {
            if len.is_multiple_of(p) {
                out.push(a[1..=len].iter().map(|&x| x == 1).collect());
            }
            return;
        }
        a[t] = a[t - p];
        gen(t + 1, p, len, a, out);
        for v in a[t - p] + 1..2 {
            a[t] = v;
            gen(t + 1, t, len, a, out);
        }
    }
    gen(1, 1, len, &mut a, &mut out);
    out
}

/// All cyclic word classes of degree 1..=max_degree, ordered by
/// (degree, exponent list).
pub fn canonical_words(max_degree: usize) -> Vec<Word> {
    let mut words: Vec<Word> = (1..=max_degree)
        .flat_map(|d| necklaces(d).into_iter().map(|l| Word::from_letters(&l)))
        .collect();
    words.sort_by(|a, b| (a.total_degree(), &a.exps).cmp(&(b.total_degree(), &b.exps)));
    words
}

/// Words of degree ≤ `max_degree` with tr[w(J_m(0), J_m(0)*)] ≠ 0, and
/// those traces.
pub fn specht_words(m: usize, max_degree: usize) -> Vec<(Word, u128)> {
    canonical_words(max_degree)
        .into_par_iter()
        .map(|w| {
            let tr = w.shift_trace(m);
            (w, tr)
        })
        .filter(|(_, tr)| *tr != 0)
        .collect()
}

/// Outcome of comparing trace words. Only `Distinguished` is a proof.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitarySimilarityVerdict {
    /// The traces of this word differ, so the KMS matrices are not
    /// unitarily similar.
    Distinguished {
        word: Word,
        trace_a: Complex64,
        trace_b: Complex64,
    },
    /// Every admissible word up to this degree agrees. This does not prove
    /// unitary similarity.
    IndistinguishableUpTo(usize),
}

impl UnitarySimilarityVerdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Self::Distinguished { .. })
    }
}

/// Compares tr[w(A, A*)] and tr[w(B, B*)] over the admissible words in
/// (degree, exponent) order; a difference above tol·max(1, ‖A‖, ‖B‖)^deg·n
/// distinguishes.
pub fn compare_traces(
    m: usize,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    max_degree: usize,
    tol: f64,
) -> UnitarySimilarityVerdict {
    let norm = a.frobenius_norm().max(b.frobenius_norm()).max(1.0);
    let n = a.rows().max(1) as f64;
    let words = specht_words(m, max_degree);
    let first = words
        .par_iter()
        .map(|(w, _)| {
            let (ta, tb) = (w.trace_at(a), w.trace_at(b));
            let scale = n * norm.powi(w.total_degree() as i32);
            ((ta - tb).norm() > tol * scale).then(|| (w.clone(), ta, tb))
        })
        .find_first(|r| r.is_some())
        .flatten();
    match first {
        Some((word, trace_a, trace_b)) => UnitarySimilarityVerdict::Distinguished {
            word,
            trace_a,
            trace_b,
        },
        None => UnitarySimilarityVerdict::IndistinguishableUpTo(max_degree),
    }
}
