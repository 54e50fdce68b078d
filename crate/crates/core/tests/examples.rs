//! Hand-computed values, each checked against the generic inertia sweep.

use sdlab_core::companion::{self, build_interp_example, interp_expected, scalar_companion};
use sdlab_core::dilation::{zdi, DEFAULT_GRID, DEFAULT_RANK_TOL};
use sdlab_core::kms::{self, kms_similar, nk_formula, zdi_kms, zdi_kms_normal, KmsSpec};
use sdlab_core::matrix::{direct_sum, shift};
use sdlab_core::{Complex64, ComplexMatrix};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid_index(a: &ComplexMatrix) -> usize {
    zdi(a, DEFAULT_GRID, None).unwrap().index
}

#[test]
fn zero_matrix_has_full_index() {
    assert_eq!(grid_index(&ComplexMatrix::zeros(3, 3)), 3);
}

#[test]
fn hermitian_index_counts_the_smaller_side() {
    // d(H) = min(i≥0(H), i≤0(H)) for Hermitian H.
    let h = ComplexMatrix::real_diag(&[2.0, 1.0, -1.0, 0.0]);
    assert_eq!(grid_index(&h), 2);
}

#[test]
fn scalar_companion_of_z4() {
    // z^4: the 4x4 nilpotent companion, d = m/2.
    let spec = scalar_companion(&[c(0.0, 0.0); 4]).unwrap();
    assert_eq!(grid_index(&companion::build(&spec)), 2);
}

#[test]
fn odd_scalar_companion_upper_case() {
    // z^3 + a_1 z: even-index coefficients vanish, so d = (m+1)/2 = 2.
    let spec = scalar_companion(&[c(0.0, 0.0), c(0.7, -0.2), c(0.0, 0.0)]).unwrap();
    assert_eq!(grid_index(&companion::build(&spec)), 2);
    // A nonzero constant term drops it to (m-1)/2 = 1.
    let spec = scalar_companion(&[c(0.5, 0.0), c(0.7, -0.2), c(0.0, 0.0)]).unwrap();
    assert_eq!(grid_index(&companion::build(&spec)), 1);
}

#[test]
fn interpolation_family_covers_the_odd_range() {
    for (m, n) in [(3, 2), (5, 2), (3, 3)] {
        for k in 0..=n {
            let spec = build_interp_example(m, n, k).unwrap();
            assert_eq!(interp_expected(m, n, k), (m - 1) * n / 2 + k);
            assert_eq!(
                grid_index(&companion::build(&spec)),
                interp_expected(m, n, k)
            );
        }
    }
}

#[test]
fn scalar_kms_indices() {
    // K_3(1): d = 1. K_m(0) is the zero matrix, d = m.
    assert_eq!(zdi_kms(3, &ComplexMatrix::identity(1), None).unwrap(), 1);
    assert_eq!(zdi_kms(4, &ComplexMatrix::zeros(1, 1), None).unwrap(), 4);
    for (m, r) in [(3, 0.5), (4, 0.3), (5, 0.9), (6, 0.2)] {
        let a = ComplexMatrix::scalar(c(0.0, r));
        let grid = grid_index(&kms::build(&KmsSpec::new(m, a.clone()).unwrap()));
        assert_eq!(zdi_kms(m, &a, None).unwrap(), grid, "m={m} r={r}");
        assert_eq!(
            zdi_kms_normal(m, &[c(0.0, r)], 1e-12).unwrap(),
            grid,
            "m={m} r={r}"
        );
    }
}

#[test]
fn order_two_kms_index() {
    let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
    assert_eq!(kms::zdi_kms2(&a, DEFAULT_RANK_TOL).unwrap(), 3);
    assert_eq!(grid_index(&kms::build(&KmsSpec::new(2, a).unwrap())), 3);
}

#[test]
fn equal_rank_is_not_enough_beyond_order_two() {
    // J_2(0) and diag(1, 0) both have rank 1. K_2 of each are similar,
    // K_3 are not.
    let j2 = shift(2);
    let d = ComplexMatrix::real_diag(&[1.0, 0.0]);
    assert!(kms::k2_similar(&j2, &d, DEFAULT_RANK_TOL).unwrap());
    assert!(!kms_similar(3, &j2, &d, DEFAULT_RANK_TOL).unwrap().0);
    assert_eq!(
        nk_formula(3, &j2, DEFAULT_RANK_TOL).unwrap().counts,
        vec![2, 2, 0]
    );
    assert_eq!(
        nk_formula(3, &d, DEFAULT_RANK_TOL).unwrap().counts,
        vec![3, 0, 1]
    );
}

#[test]
fn block_counts_worked_example() {
    let a = direct_sum(&shift(3), &ComplexMatrix::zeros(1, 1));
    let n = nk_formula(5, &a, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(n.counts, vec![7, 2, 3, 0, 0]);
    assert_eq!(n.weighted_total(), 20);
}

#[test]
fn approach_bound_on_a_scalar_companion() {
    // m = 3, n = 1, A_j = 1: nullity Re(ωC) ≤ 1, so the bound is at most 2.
    // For generic B the nullity is 0 and the bound is 3/2.
    let spec = scalar_companion(&[c(0.4, -0.3), c(-0.8, 0.1), c(0.2, 0.6)]).unwrap();
    let a = companion::build(&spec);
    let d = grid_index(&a);
    for i in 0..16 {
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU * (i as f64 + 0.5) / 16.0);
        let bound = sdlab_core::approach_bound(&a, w, DEFAULT_RANK_TOL).unwrap();
        assert!(bound <= 2.0);
        assert!(d as f64 <= bound);
    }
    assert_eq!(
        sdlab_core::approach_bound(&a, c(1.0, 0.0), DEFAULT_RANK_TOL).unwrap(),
        1.5
    );
}
