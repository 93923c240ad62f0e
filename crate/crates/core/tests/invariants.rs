//! Property tests for the structural invariants of the core quantities.

use num_complex::Complex64;
use proptest::prelude::*;

use numrange_core::spectral::{
    hh_integral_mean, loewner_leq, QuadratureConfig, ScalarFunction,
};
use numrange_core::{
    apply_scalar_function, numerical_radius, numerical_radius_sample_oracle, operator_norm,
    AngleSweepConfig, ComplexMatrix,
};

const TOL: f64 = 1e-9;

fn entry() -> impl Strategy<Value = Complex64> {
    (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(entry(), n * n)
        .prop_map(move |entries| ComplexMatrix::new(n, entries).unwrap())
}

fn any_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..5).prop_flat_map(matrix)
}

fn psd_pair() -> impl Strategy<Value = (ComplexMatrix, ComplexMatrix)> {
    (2usize..5)
        .prop_flat_map(|n| (matrix(n), matrix(n)))
        .prop_map(|(g, h)| (g.adjoint().mul(&g), h.adjoint().mul(&h)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_adjoint_invariant(a in any_matrix()) {
        let na = operator_norm(&a).unwrap();
        let nadj = operator_norm(&a.adjoint()).unwrap();
        prop_assert!((na - nadj).abs() <= TOL * na.max(1.0));
    }

    #[test]
    fn norm_is_submultiplicative(n in 1usize..5, seed_entries in proptest::collection::vec(entry(), 2 * 16)) {
        let a = ComplexMatrix::new(n, seed_entries[..n * n].to_vec()).unwrap();
        let b = ComplexMatrix::new(n, seed_entries[16..16 + n * n].to_vec()).unwrap();
        let nab = operator_norm(&a.mul(&b)).unwrap();
        let bound = operator_norm(&a).unwrap() * operator_norm(&b).unwrap();
        prop_assert!(nab <= bound + TOL * bound.max(1.0));
    }

    #[test]
    fn radius_scales_with_modulus(a in any_matrix(), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let s = Complex64::new(re, im);
        let cfg = AngleSweepConfig::default();
        let w = numerical_radius(&a, &cfg).unwrap();
        let ws = numerical_radius(&a.scale(s), &cfg).unwrap();
        prop_assert!((ws - s.norm() * w).abs() <= 1e-7 * w.max(1.0));
    }

    #[test]
    fn radius_between_half_norm_and_norm(a in any_matrix()) {
        let w = numerical_radius(&a, &AngleSweepConfig::default()).unwrap();
        let norm = operator_norm(&a).unwrap();
        prop_assert!(w >= norm / 2.0 - TOL * norm.max(1.0));
        prop_assert!(w <= norm + TOL * norm.max(1.0));
    }

    #[test]
    fn oracle_never_exceeds_radius(a in any_matrix(), seed in 0u64..1000) {
        let w = numerical_radius(&a, &AngleSweepConfig::default()).unwrap();
        let oracle = numerical_radius_sample_oracle(&a, 2000, seed);
        prop_assert!(oracle <= w + 1e-8 * w.max(1.0));
    }

    #[test]
    fn hh_sandwich_in_loewner_order((x, y) in psd_pair()) {
        let f = ScalarFunction::square();
        let quad = QuadratureConfig::default();
        let mean = hh_integral_mean(&f, &x, &y, &quad).unwrap();
        let f_mid = apply_scalar_function(&f, &x.add(&y).scale_re(0.5)).unwrap();
        let f_avg = apply_scalar_function(&f, &x).unwrap()
            .add(&apply_scalar_function(&f, &y).unwrap())
            .scale_re(0.5);
        prop_assert!(loewner_leq(&f_mid, &mean, 1e-8).unwrap());
        prop_assert!(loewner_leq(&mean, &f_avg, 1e-8).unwrap());
    }
}
