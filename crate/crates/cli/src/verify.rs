//! Verification suites. Each check draws its own seeded corpus, compares
//! closed forms against independent evaluations, and reports one line.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use sdlab_core::companion::{
    self, build_interp_example, det_re_closed_form, det_re_direct, distance_to, interp_expected,
    nullity_re, p_polynomial, sigma_p, zdi_bounds, GeneralizedCompanionSpec,
};
use sdlab_core::dilation::{zdi, DEFAULT_RANK_TOL};
use sdlab_core::kms::{
    self, balanced_congruence_check, congruence_check, k2_similar, k2_unitarily_similar,
    kms_similar, kms_unitarily_similar_upto, monotonicity_profile, nk_formula, nk_oracle,
    resolvent_residual, zdi_kms, zdi_kms2, zdi_kms_normal, KmsSpec, UnitarySimilarityVerdict,
};
use sdlab_core::matrix::{direct_sum, direct_sum_all, shift};
use sdlab_core::numrange::{circularity, lemdet_residual, CircularityVerdict, DEFAULT_CIRCLE_TOL};
use sdlab_core::{singular_values, ComplexMatrix, Error};

use crate::config::RunConfig;
use crate::corpus::{self, rng};
use crate::error::CliError;

/// Outcome of one acceptance check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// Largest residual relative to its tolerance, where one applies.
    pub worst_ratio: Option<f64>,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("[{verdict}] {} {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub grid_size: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Companion,
    Kms,
    Numrange,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Companion => "companion",
            Self::Kms => "kms",
            Self::Numrange => "numrange",
            Self::All => "all",
        }
    }

    pub fn criteria(self) -> Vec<usize> {
        match self {
            Self::Companion => (1..=5).collect(),
            Self::Kms => (6..=11).collect(),
            Self::Numrange => vec![12],
            Self::All => (1..=12).collect(),
        }
    }
}

/// Accumulates pass/fail over cases and the worst tolerance ratio.
struct Tally {
    cases: usize,
    failures: Vec<String>,
    worst: Option<f64>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
            worst: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records residual/bound and fails the case when it exceeds 1.
    fn ratio(&mut self, residual: f64, bound: f64, what: impl FnOnce() -> String) {
        let r = residual / bound;
        self.worst = Some(self.worst.map_or(r, |w: f64| w.max(r)));
        self.check(r <= 1.0, what);
    }

    fn error(&mut self, context: &str, e: Error) {
        self.cases += 1;
        self.failures.push(format!("{context}: {e}"));
    }

    fn finish(self, id: usize, name: &str, summary: String) -> CheckResult {
        let passed = self.failures.is_empty();
        let mut detail = summary;
        if let Some(w) = self.worst {
            detail.push_str(&format!("; worst residual/tolerance {w:.3e}"));
        }
        if !passed {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            detail.push_str(&format!(
                "; {} failing: {}",
                self.failures.len(),
                shown.join(" | ")
            ));
        }
        CheckResult {
            id: format!("C{id}"),
            name: name.to_string(),
            passed,
            cases: self.cases,
            failures: self.failures.len(),
            worst_ratio: self.worst,
            detail,
        }
    }
}

const EVEN_MS: [usize; 3] = [2, 4, 6];
const ODD_MS: [usize; 2] = [3, 5];
const NS: [usize; 3] = [1, 2, 3];

fn even_corpus(seed: u64, count: usize, stream: u64) -> Vec<GeneralizedCompanionSpec> {
    let mut r = rng(seed, stream);
    (0..count)
        .map(|i| corpus::companion_spec(&mut r, EVEN_MS[i % 3], NS[(i / 3) % 3]))
        .collect()
}

fn odd_corpus(seed: u64, count: usize, stream: u64) -> Vec<GeneralizedCompanionSpec> {
    let mut r = rng(seed, stream);
    (0..count)
        .map(|i| corpus::companion_spec(&mut r, ODD_MS[i % 2], NS[(i / 2) % 3]))
        .collect()
}

const EVEN_ZDI_STREAM: u64 = 1;
const ODD_STREAM: u64 = 2;
const EVEN_DET_STREAM: u64 = 4;

fn omegas(seed: u64, stream: u64, count: usize) -> Vec<Complex64> {
    let mut r = rng(seed, stream);
    (0..count).map(|_| corpus::unit(&mut r)).collect()
}

/// Criterion 1: d(C_{A,B}) = mn/2 for even m and nonsingular A_j.
pub fn even_exactness(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    for spec in even_corpus(cfg.seed, 30, EVEN_ZDI_STREAM) {
        let (m, n) = (spec.m(), spec.n());
        match zdi(&companion::build(&spec), cfg.grid_size, cfg.tol) {
            Ok(r) => {
                let exact = zdi_bounds(&spec).ok().and_then(|b| b.exact);
                t.check(r.index == m * n / 2 && exact == Some(m * n / 2), || {
                    format!("m={m} n={n}: oracle {} vs mn/2 = {}", r.index, m * n / 2)
                })
            }
            Err(e) => t.error(&format!("m={m} n={n}"), e),
        }
    }
    let cases = t.cases;
    t.finish(
        1,
        "even-m exactness",
        format!("{cases} random specs, oracle = mn/2"),
    )
}

/// Upper bound from nullities at sampled directions, as in the approach bound.
fn approach_upper(spec: &GeneralizedCompanionSpec, ws: &[Complex64]) -> Result<usize, Error> {
    companion::approach_upper_bound(spec, ws, DEFAULT_RANK_TOL)
}

/// Criterion 2: (m-1)n/2 ≤ d ≤ (m+1)n/2 for odd m.
pub fn odd_bounds(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let ws = omegas(cfg.seed, 3, 16);
    let mut seen = std::collections::BTreeMap::new();
    for spec in odd_corpus(cfg.seed, 30, ODD_STREAM) {
        let (m, n) = (spec.m(), spec.n());
        let result = zdi_bounds(&spec).and_then(|b| {
            let d = zdi(&companion::build(&spec), cfg.grid_size, cfg.tol)?.index;
            let upper = approach_upper(&spec, &ws)?;
            Ok((b, d, upper))
        });
        match result {
            Ok((b, d, upper)) => {
                *seen.entry((m, n, d)).or_insert(0usize) += 1;
                t.check(b.contains(d) && d <= upper && upper <= b.upper, || {
                    format!(
                        "m={m} n={n}: oracle {d}, bounds [{}, {}], approach {upper}",
                        b.lower, b.upper
                    )
                });
            }
            Err(e) => t.error(&format!("m={m} n={n}"), e),
        }
    }
    let values: Vec<String> = seen
        .iter()
        .map(|((m, n, d), c)| format!("(m={m},n={n}) d={d} x{c}"))
        .collect();
    let cases = t.cases;
    t.finish(
        2,
        "odd-m bounds",
        format!(
            "{cases} random specs inside [(m-1)n/2, (m+1)n/2]; observed {}",
            values.join(", ")
        ),
    )
}

/// Criterion 3: The H-family attains (m-1)n/2 + k for every k.
pub fn interpolation(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    for m in ODD_MS {
        for n in NS {
            for k in 0..=n {
                let want = interp_expected(m, n, k);
                match build_interp_example(m, n, k)
                    .and_then(|s| zdi(&companion::build(&s), cfg.grid_size, cfg.tol))
                {
                    Ok(r) => t.check(r.index == want, || {
                        format!("m={m} n={n} k={k}: {} vs {want}", r.index)
                    }),
                    Err(e) => t.error(&format!("m={m} n={n} k={k}"), e),
                }
            }
        }
    }
    let cases = t.cases;
    t.finish(
        3,
        "interpolation example",
        format!("{cases} (m, n, k) cases, oracle = (m-1)n/2 + k"),
    )
}

/// Rewrites B_0 so that P(ω0) = target, using that P_1 is linear in B_0^*.
pub fn plant_root(
    spec: &GeneralizedCompanionSpec,
    omega0: Complex64,
    target: &ComplexMatrix,
) -> Result<GeneralizedCompanionSpec, Error> {
    let n = spec.n();
    let with_b0 = |b0: ComplexMatrix| {
        let mut bottom = spec.bottom_blocks().to_vec();
        bottom[0] = b0;
        spec.with_bottom_blocks(bottom)
    };
    // P(ω0) without the P_1 term, and the map B_0^* ↦ P_1 = M B_0^*.
    let rest = p_polynomial(&with_b0(ComplexMatrix::zeros(n, n))?)?.eval(omega0);
    let m = p_polynomial(&with_b0(ComplexMatrix::identity(n))?)?
        .coeff(0)
        .expect("constant term")
        .clone();
    let b0_adj = m.inverse()?.matmul(&(target - &rest))?;
    with_b0(b0_adj.adjoint())
}

fn planted_specs(seed: u64) -> Vec<(GeneralizedCompanionSpec, Complex64)> {
    let mut r = rng(seed, 5);
    let mut out = Vec::new();
    for m in EVEN_MS {
        for n in NS {
            let spec = corpus::companion_spec(&mut r, m, n);
            let omega0 = corpus::unit(&mut r);
            let target = corpus::rank_deficient(&mut r, n, n - 1, 1.0);
            out.push((
                plant_root(&spec, omega0, &target).expect("well-conditioned blocks"),
                omega0,
            ));
        }
    }
    out
}

fn re_scale(spec: &GeneralizedCompanionSpec, omega: Complex64) -> f64 {
    let h = companion::build(spec)
        .scale(omega)
        .re_part()
        .expect("square");
    singular_values(&h)[0].powi(spec.dim() as i32)
}

/// Criterion 4: Closed-form determinant of Re(ωC) against the assembled matrix, and
/// its vanishing at a planted unit-circle root of det P.
pub fn determinant_identity(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let specs = even_corpus(cfg.seed, 50, EVEN_DET_STREAM);
    let ws = omegas(cfg.seed, 6, 16);
    for spec in &specs {
        for &w in &ws {
            match (det_re_closed_form(spec, w), det_re_direct(spec, w)) {
                (Ok(closed), Ok(direct)) => {
                    let size = closed.abs().max(direct.abs());
                    t.ratio((closed - direct).abs(), 1e-9 * size, || {
                        format!(
                            "m={} n={} ω={w:.4}: {closed:e} vs {direct:e}",
                            spec.m(),
                            spec.n()
                        )
                    });
                }
                (Err(e), _) | (_, Err(e)) => t.error("determinant", e),
            }
        }
    }
    let generic = t.cases;
    let mut planted = 0;
    for (spec, w0) in planted_specs(cfg.seed) {
        planted += 1;
        let scale = re_scale(&spec, w0);
        let tag = format!("planted m={} n={}", spec.m(), spec.n());
        match (
            det_re_closed_form(&spec, w0),
            det_re_direct(&spec, w0),
            sigma_p(&spec),
        ) {
            (Ok(closed), Ok(direct), Ok(sigma)) => {
                t.ratio(closed.abs(), 1e-6 * scale, || {
                    format!("{tag}: closed form {closed:e}")
                });
                t.ratio(direct.abs(), 1e-6 * scale, || {
                    format!("{tag}: direct {direct:e}")
                });
                let dist = distance_to(&sigma, w0);
                t.check(dist <= 1e-6, || {
                    format!("{tag}: ω0 at distance {dist:e} from σ(P)")
                });
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => t.error(&tag, e),
        }
    }
    t.finish(
        4,
        "determinant identity",
        format!(
            "{} specs x {} directions at relative 1e-9; {planted} planted roots at 1e-6 scale",
            specs.len(),
            generic / specs.len().max(1)
        ),
    )
}

/// Criterion 5: Nullity of Re(ωC): ≤ n for odd m, ≤ 2n for even m, ≤ n off σ(P).
pub fn nullity_bounds(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let ws = omegas(cfg.seed, 6, 16);
    let mut near = 0;
    for spec in odd_corpus(cfg.seed, 30, ODD_STREAM) {
        let n = spec.n();
        for &w in &ws {
            match nullity_re(&spec, w, DEFAULT_RANK_TOL) {
                Ok(r) => t.check(r <= n, || format!("odd m={} n={n}: nullity {r}", spec.m())),
                Err(e) => t.error("odd nullity", e),
            }
        }
    }
    let even = even_corpus(cfg.seed, 50, EVEN_DET_STREAM);
    let planted: Vec<_> = planted_specs(cfg.seed);
    let cases = even
        .iter()
        .map(|s| (s, ws.clone()))
        .chain(planted.iter().map(|(s, w0)| {
            let mut v = ws.clone();
            v.push(*w0);
            (s, v)
        }));
    for (spec, dirs) in cases {
        let n = spec.n();
        let sigma = match sigma_p(spec) {
            Ok(s) => s,
            Err(e) => {
                t.error("σ(P)", e);
                continue;
            }
        };
        for w in dirs {
            match nullity_re(spec, w, DEFAULT_RANK_TOL) {
                Ok(r) => {
                    let off = distance_to(&sigma, w) > 1e-6;
                    if !off {
                        near += 1;
                    }
                    let cap = if off { n } else { 2 * n };
                    t.check(r <= cap, || {
                        format!("even m={} n={n}: nullity {r} > {cap}", spec.m())
                    });
                }
                Err(e) => t.error("even nullity", e),
            }
        }
    }
    let cases = t.cases;
    t.finish(
        5,
        "nullity bounds",
        format!("{cases} (spec, ω) pairs at rank tolerance 1e-8; {near} on σ(P)"),
    )
}

/// Criterion 6: d(K_m(A)) from the formulas against the grid oracle.
pub fn kms_index(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let mut r = rng(cfg.seed, 7);
    let (mut deficient, mut reduced) = (0, 0);
    for i in 0..40 {
        let m = 2 + i % 4;
        let n = NS[(i / 4) % 3];
        let singular = (i / 12) % 2 == 1 || (m == 2 && i % 8 < 4);
        let a = if singular {
            deficient += 1;
            corpus::rank_deficient(&mut r, n, n - 1, 1.0)
        } else {
            {
                let s = r.random_range(0.4..1.3);
                corpus::well_conditioned(&mut r, n, s)
            }
        };
        let formula = if m == 2 {
            zdi_kms2(&a, DEFAULT_RANK_TOL)
        } else {
            if sdlab_core::svd::is_nonsingular(&a) {
                reduced += 1;
            }
            zdi_kms(m, &a, cfg.tol)
        };
        let oracle =
            KmsSpec::new(m, a.clone()).and_then(|s| zdi(&kms::build(&s), cfg.grid_size, cfg.tol));
        match (formula, oracle) {
            (Ok(f), Ok(o)) => t.check(f == o.index, || {
                format!("m={m} n={n}: formula {f} vs oracle {}", o.index)
            }),
            (Err(e), _) | (_, Err(e)) => t.error(&format!("m={m} n={n}"), e),
        }
    }
    let cases = t.cases;
    t.finish(
        6,
        "KMS zero-dilation index",
        format!("{cases} random A ({deficient} rank-deficient, {reduced} with the reduced-form cross-check)"),
    )
}

fn avoid_thresholds<R: Rng>(r: &mut R, m: usize) -> f64 {
    loop {
        let x: f64 = r.random_range(0.1..1.3);
        let clear = (0..=m - 2).all(|k| (x - (k as f64 * PI / (m - 1) as f64).cos()).abs() > 0.02);
        if clear {
            return x;
        }
    }
}

/// Criterion 7: Closed form for normal A against the inertia formula and the grid.
pub fn normal_closed_form(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let mut r = rng(cfg.seed, 8);
    let mut cases: Vec<(usize, Vec<Complex64>, ComplexMatrix)> = Vec::new();
    for i in 0..20 {
        let m = 3 + i % 4;
        let n = NS[(i / 4) % 3];
        let eig: Vec<Complex64> = (0..n)
            .map(|_| corpus::unit(&mut r) * avoid_thresholds(&mut r, m))
            .collect();
        let u = corpus::unitary(&mut r, n);
        let a = &(&u * &ComplexMatrix::diag(&eig)) * &u.adjoint();
        cases.push((m, eig, a));
    }
    for (lambda, want) in [(1.0, 1), (0.5, 2)] {
        let z = Complex64::new(lambda, 0.0);
        cases.push((5, vec![z], ComplexMatrix::scalar(z)));
        match zdi_kms_normal(5, &[z], 1e-12) {
            Ok(d) => t.check(d == want, || format!("|λ|={lambda}: {d} vs {want}")),
            Err(e) => t.error("hand case", e),
        }
    }
    for (m, eig, a) in &cases {
        let closed = zdi_kms_normal(*m, eig, 1e-12);
        let inertia = zdi_kms(*m, a, cfg.tol);
        let grid =
            KmsSpec::new(*m, a.clone()).and_then(|s| zdi(&kms::build(&s), cfg.grid_size, cfg.tol));
        match (closed, inertia, grid) {
            (Ok(c), Ok(d), Ok(g)) => t.check(c == d && d == g.index, || {
                format!(
                    "m={m} n={}: closed {c}, inertia {d}, grid {}",
                    eig.len(),
                    g.index
                )
            }),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => t.error(&format!("m={m}"), e),
        }
    }
    t.finish(
        7,
        "normal closed form",
        format!(
            "{} random normal A plus 2 hand cases, closed form = inertia = grid",
            cases.len() - 2
        ),
    )
}

/// Direct sum of nilpotent Jordan blocks and nonzero integer scalars, in
/// random order, of size at most 4.
fn structured<R: Rng>(r: &mut R) -> ComplexMatrix {
    let n = r.random_range(1..=4usize);
    let mut blocks = Vec::new();
    let mut size = 0;
    while size < n {
        let left = n - size;
        if r.random_bool(0.6) {
            let k = r.random_range(1..=left.min(3));
            blocks.push(shift(k));
            size += k;
        } else {
            let v = [-2.0, -1.0, 1.0, 2.0, 3.0][r.random_range(0..5)];
            blocks.push(ComplexMatrix::real_diag(&[v]));
            size += 1;
        }
    }
    direct_sum_all(&blocks)
}

/// Criterion 8: Jordan block counts of J_m(0)⊗A: formula against the Weyr oracle.
pub fn block_counts(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let tol = DEFAULT_RANK_TOL;
    let j3z = direct_sum(&shift(3), &ComplexMatrix::zeros(1, 1));
    for m in 4..=6 {
        match nk_formula(m, &j3z, tol) {
            Ok(f) => {
                let got = (f.get(1), f.get(2), f.get(3));
                t.check(got == (m + 2, 2, m - 2), || format!("J3⊕0 m={m}: {got:?}"));
            }
            Err(e) => t.error("J3⊕0", e),
        }
    }
    let mut r = rng(cfg.seed, 9);
    let mut corpus: Vec<(usize, ComplexMatrix)> = (4..=6).map(|m| (m, j3z.clone())).collect();
    while corpus.len() < 60 {
        let m = r.random_range(2..=6usize);
        corpus.push((m, structured(&mut r)));
    }
    let mut unstable = 0;
    for (m, a) in &corpus {
        let n = a.rows();
        match (nk_formula(*m, a, tol), nk_oracle(*m, a, tol)) {
            (Ok(f), Ok(o)) => {
                if f.unstable || o.unstable {
                    unstable += 1;
                }
                t.check(f.counts == o.counts && f.weighted_total() == m * n, || {
                    format!(
                        "m={m} n={n}: formula {:?} vs oracle {:?}",
                        f.counts, o.counts
                    )
                });
            }
            (Err(e), _) | (_, Err(e)) => t.error(&format!("m={m}"), e),
        }
    }
    t.check(unstable == 0, || {
        format!("{unstable} rank decisions flagged unstable")
    });
    t.finish(
        8,
        "Jordan block counts",
        format!(
            "{} structured cases, formula = Weyr oracle and Σk·N_k = mn; J3⊕0 gives (m+2, 2, m-2)",
            corpus.len()
        ),
    )
}

/// Criterion 9: Similarity and unitary-similarity deciders.
pub fn similarity(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let tol = DEFAULT_RANK_TOL;
    let mut r = rng(cfg.seed, 10);
    for i in 0..30 {
        let n = 2 + i % 2;
        let rank = r.random_range(1..=n);
        let a = corpus::rank_deficient(&mut r, n, rank, 1.0);
        let (b, want_sim, want_usim) = match i % 3 {
            0 => {
                let (u, v) = (corpus::unitary(&mut r, n), corpus::unitary(&mut r, n));
                (&(&u * &a) * &v, true, true)
            }
            1 => {
                let mut g = corpus::well_conditioned(&mut r, n, 1.0);
                // Push the singular values away from those of a unitary.
                g = &g + &ComplexMatrix::identity(n).scale_real(0.5);
                (&a * &g, true, false)
            }
            _ => {
                let other = if rank == n { n - 1 } else { rank + 1 };
                (corpus::rank_deficient(&mut r, n, other, 1.0), false, false)
            }
        };
        match (k2_similar(&a, &b, tol), k2_unitarily_similar(&a, &b, 1e-9)) {
            (Ok(s), Ok(u)) => t.check(s == want_sim && u == want_usim, || {
                format!("pair {i}: similar {s} (want {want_sim}), unitary {u} (want {want_usim})")
            }),
            (Err(e), _) | (_, Err(e)) => t.error("K2 pair", e),
        }
        if want_usim {
            match kms_unitarily_similar_upto(2, &a, &b, cfg.max_word_degree, 1e-9) {
                Ok(v) => t.check(!v.is_distinguished(), || {
                    format!("pair {i}: separated by {v:?}")
                }),
                Err(e) => t.error("word traces", e),
            }
        }
    }
    let d = ComplexMatrix::real_diag(&[1.0, 0.0]);
    match (
        kms_similar(3, &shift(2), &d, tol),
        nk_formula(3, &shift(2), tol),
        nk_formula(3, &d, tol),
    ) {
        (Ok((sim, _)), Ok(na), Ok(nd)) => t.check(!sim && na.get(3) == 0 && nd.get(3) == 1, || {
            format!(
                "J2 vs diag(1,0): similar {sim}, N_3 {} vs {}",
                na.get(3),
                nd.get(3)
            )
        }),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => t.error("negative example", e),
    }
    for i in 0..10 {
        let m = 2 + i % 4;
        let a = corpus::unit(&mut r) * r.random_range(0.3..2.0);
        let b_mod = if i % 2 == 0 {
            a.norm()
        } else {
            a.norm() * r.random_range(1.2..2.0)
        };
        let b = corpus::unit(&mut r) * b_mod;
        let (sa, sb) = (ComplexMatrix::scalar(a), ComplexMatrix::scalar(b));
        match kms_unitarily_similar_upto(m, &sa, &sb, cfg.max_word_degree, 1e-10) {
            Ok(UnitarySimilarityVerdict::Distinguished { word, .. }) => t
                .check(i % 2 == 1 && word.to_string() == "st", || {
                    format!("|a|=|b| m={m} split by {word}")
                }),
            Ok(UnitarySimilarityVerdict::IndistinguishableUpTo(deg)) => t
                .check(i % 2 == 0 && deg == cfg.max_word_degree, || {
                    format!("|a|≠|b| m={m} not separated up to degree {deg}")
                }),
            Err(e) => t.error("scalar words", e),
        }
    }
    let cases = t.cases;
    t.finish(
        9,
        "similarity deciders",
        format!("{cases} checks: 30 planted K2 pairs, the J2 vs diag(1,0) example, 10 scalar word searches to degree {}", cfg.max_word_degree),
    )
}

fn spectral_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a)[0]
}

/// Criterion 10: Resolvent identity, congruences (both branches) and the
/// determinant identity behind the Kippenhahn factorization.
pub fn identities(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let mut r = rng(cfg.seed, 11);
    for i in 0..30 {
        let m = 2 + i % 4;
        let n = NS[(i / 4) % 3];
        let a = {
            let s = r.random_range(0.3..1.5);
            corpus::gaussian(&mut r, n, n, s)
        };
        let s = spectral_norm(&a);
        let spec = KmsSpec::new(m, a.clone()).expect("square");
        t.ratio(
            resolvent_residual(&spec),
            1e-8 * (1.0 + s.powi(m as i32)),
            || format!("resolvent m={m} n={n}"),
        );

        let base = (1.0 + s).powi(m as i32 + 1);
        let half = Complex64::new(0.5, 0.0);
        t.ratio(congruence_check(&spec, half, half), 1e-8 * base, || {
            format!("Re congruence m={m}")
        });
        let w = corpus::unit(&mut r);
        t.ratio(congruence_check(&spec, w, w.conj()), 2e-8 * base, || {
            format!("unit branch m={m}")
        });
        let alpha = corpus::unit(&mut r) * r.random_range(0.5..2.0);
        let beta = alpha.inv();
        let spread = alpha.norm().max(beta.norm()).powi(m as i32 - 1);
        let weight = alpha.norm() + beta.norm();
        t.ratio(
            congruence_check(&spec, alpha, beta),
            1e-8 * weight * base,
            || format!("inverse branch m={m}"),
        );
        match balanced_congruence_check(&spec, alpha) {
            Ok(res) => t.ratio(res, 1e-8 * weight * base * spread, || {
                format!("balanced m={m}")
            }),
            Err(e) => t.error("balanced", e),
        }

        let lm = 3 + i % 3;
        let ln = 1 + i % 2;
        let b = {
            let s = r.random_range(0.3..1.5);
            corpus::gaussian(&mut r, ln, ln, s)
        };
        match lemdet_residual(lm, &b, &[-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]) {
            Ok(chk) => t.ratio(chk.residual, 1e-8 * chk.scale, || {
                format!("determinant identity m={lm} n={ln}")
            }),
            Err(e) => t.error("determinant identity", e),
        }
    }
    let cases = t.cases;
    t.finish(
        10,
        "identities",
        format!("{cases} residuals (30 instances each of resolvent, three congruence forms, similarity branch, determinant identity) at 1e-8 scale"),
    )
}

/// Criterion 11: θ ↦ i_{≥0}(X_k^A(θ)) rises on [0, π] and falls on [π, 2π].
pub fn monotonicity(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let mut r = rng(cfg.seed, 12);
    let upper: Vec<f64> = (0..64).map(|i| PI * i as f64 / 63.0).collect();
    let lower: Vec<f64> = upper.iter().map(|x| PI + x).collect();
    let mut changes = 0;
    for i in 0..20 {
        let m = 3 + i % 3;
        let k = r.random_range(1..=m);
        let n = NS[(i / 3) % 3];
        let a = {
            let s = r.random_range(0.3..1.5);
            corpus::gaussian(&mut r, n, n, s)
        };
        match (
            monotonicity_profile(k, m, &a, &upper, cfg.tol),
            monotonicity_profile(k, m, &a, &lower, cfg.tol),
        ) {
            (Ok(up), Ok(down)) => {
                changes += usize::from(up.first().map(|p| p.1) != up.last().map(|p| p.1));
                let rising = up.windows(2).all(|w| w[0].1 <= w[1].1);
                let falling = down.windows(2).all(|w| w[0].1 >= w[1].1);
                t.check(rising && falling, || {
                    format!("k={k} m={m} n={n}: rising {rising}, falling {falling}")
                });
            }
            (Err(e), _) | (_, Err(e)) => t.error("profile", e),
        }
    }
    t.finish(
        11,
        "monotonicity",
        format!("20 random (k, m, A), 64-point grids on both half-turns; {changes} profiles non-constant"),
    )
}

/// Criterion 12: Circularity of W(K_m(A)).
pub fn circularity_check(cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let mut r = rng(cfg.seed, 13);
    let samples = cfg.boundary_samples;
    let mut min_dev = f64::INFINITY;
    let mut verdict =
        |t: &mut Tally, spec: KmsSpec, want_circle: bool, tag: String| match circularity(
            &spec,
            samples,
            DEFAULT_CIRCLE_TOL,
        ) {
            Ok(CircularityVerdict::CircularDisk { .. }) => {
                t.check(want_circle, || format!("{tag}: unexpectedly circular"))
            }
            Ok(CircularityVerdict::NotCircular { max_deviation }) => {
                min_dev = min_dev.min(max_deviation);
                t.check(!want_circle && max_deviation > 1e-3, || {
                    format!("{tag}: deviation {max_deviation:e}")
                });
            }
            Err(e) => t.error(&tag, e),
        };
    for i in 0..10 {
        let n = NS[i % 3];
        let a = corpus::unitary(&mut r, n).scale_real(r.random_range(0.2..2.0));
        verdict(
            &mut t,
            KmsSpec::new(2, a).expect("square"),
            true,
            format!("K2 equal singular values n={n}"),
        );
    }
    for i in 0..8 {
        let m = 3 + i % 2;
        let n = NS[(i / 2) % 3];
        let a = {
            let s = r.random_range(0.5..1.5);
            corpus::well_conditioned(&mut r, n, s)
        };
        verdict(
            &mut t,
            KmsSpec::new(m, a).expect("square"),
            false,
            format!("K{m} nonsingular n={n}"),
        );
    }
    verdict(
        &mut t,
        KmsSpec::new(3, shift(2)).expect("square"),
        true,
        "K3(J2)".into(),
    );
    verdict(
        &mut t,
        KmsSpec::new(3, ComplexMatrix::real_diag(&[1.0, 0.0])).expect("square"),
        false,
        "K3(diag(1,0))".into(),
    );
    t.finish(
        12,
        "circularity",
        format!("20 KMS matrices at {samples} angles, relative tolerance 1e-8; smallest noncircular deviation {min_dev:.3e}"),
    )
}

pub fn run_criterion(id: usize, cfg: &RunConfig) -> CheckResult {
    match id {
        1 => even_exactness(cfg),
        2 => odd_bounds(cfg),
        3 => interpolation(cfg),
        4 => determinant_identity(cfg),
        5 => nullity_bounds(cfg),
        6 => kms_index(cfg),
        7 => normal_closed_form(cfg),
        8 => block_counts(cfg),
        9 => similarity(cfg),
        10 => identities(cfg),
        11 => monotonicity(cfg),
        12 => circularity_check(cfg),
        _ => panic!("no criterion {id}"),
    }
}

/// Extra companion spec supplied by the user: it must satisfy the bound
/// hypotheses, and its oracle value must lie inside the bounds.
pub fn fixture_check(spec: &GeneralizedCompanionSpec, cfg: &RunConfig) -> CheckResult {
    let mut t = Tally::new();
    let summary = match zdi_bounds(spec) {
        Ok(b) => match zdi(&companion::build(spec), cfg.grid_size, cfg.tol) {
            Ok(r) => {
                t.check(b.contains(r.index), || {
                    format!("oracle {} outside [{}, {}]", r.index, b.lower, b.upper)
                });
                format!("oracle {} within [{}, {}]", r.index, b.lower, b.upper)
            }
            Err(e) => {
                t.error("oracle", e);
                "oracle failed".into()
            }
        },
        Err(e) => {
            let msg = format!("rejected: {e}");
            t.error("bounds", e);
            msg
        }
    };
    t.finish(0, "supplied companion spec", summary)
}

pub fn run_suite(
    suite: Suite,
    cfg: &RunConfig,
    fixture: Option<&GeneralizedCompanionSpec>,
    mut on_check: impl FnMut(&CheckResult),
) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut checks = Vec::new();
    for id in suite.criteria() {
        let c = run_criterion(id, cfg);
        on_check(&c);
        checks.push(c);
    }
    if let (Some(spec), Suite::Companion | Suite::All) = (fixture, suite) {
        let mut c = fixture_check(spec, cfg);
        c.id = "fixture".into();
        on_check(&c);
        checks.push(c);
    }
    Ok(Report {
        suite: suite.name().into(),
        seed: cfg.seed,
        grid_size: cfg.grid_size,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
