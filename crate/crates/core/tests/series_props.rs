use proptest::prelude::*;
use stable_jacobi::fourier_jacobi::{
    kernel_sm, kernel_table, p_range, partial_sum, random_coefficients, reference_integral, CoefficientVector,
};
use stable_jacobi::jacobi::{Interval, JacobiParams, TestFunction};
use stable_jacobi::stable_process::{simulate_path, Grid, RngStream, StableLaw};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernel_is_symmetric(u in -1.0..1.0f64, v in -1.0..1.0f64, m in 0usize..20) {
        let params = JacobiParams::new(0.5, 1.5).unwrap();
        let coeffs = CoefficientVector::compute(&TestFunction::cosine(1.0), &params, 20).unwrap();
        let a = kernel_sm(u, &coeffs, m, v).unwrap();
        let b = kernel_sm(v, &coeffs, m, u).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn partial_sum_equals_kernel_integral(u in -0.45..0.45f64, m in 0usize..16, seed in 0u64..500) {
        // Σ c_j C_j q_j(u) and ∫ s_m(u, ·) dY agree on every path
        let params = JacobiParams::new(1.0, 0.0).unwrap();
        let grid = Grid::new(Interval::new(-0.5, 0.5).unwrap(), 256).unwrap();
        let path = simulate_path(&StableLaw::new(1.5, 1.0).unwrap(), &grid, &mut RngStream::new(seed, 1));
        let coeffs = CoefficientVector::compute(&TestFunction::step(0.1), &params, 16).unwrap();
        let rand = random_coefficients(&params, &path, 16).unwrap();
        let s = partial_sum(u, &coeffs, &rand, m).unwrap();
        let k = kernel_table(u, &coeffs, m, &grid).unwrap().integrate(&path);
        prop_assert!((s - k).abs() < 1e-10 * (1.0 + s.abs()));
        let r = reference_integral(u, &coeffs, &params, &path, m).unwrap();
        prop_assert!((r - k).abs() < 1e-10 * (1.0 + k.abs()));
    }

    #[test]
    fn p_range_is_nonempty_and_shrinks_towards_two(zeta in 0.0..50.0f64, eta in 0.0..50.0f64) {
        let r = p_range(&JacobiParams::new(zeta, eta).unwrap()).unwrap();
        prop_assert!(r.lower < r.upper);
        prop_assert!(r.lower < 2.0 && 2.0 < r.upper);
        prop_assert!(r.contains(0.5 * (r.lower + r.upper)));
        prop_assert!(!r.contains(r.lower) && !r.contains(r.upper));
    }
}

#[test]
fn p_range_needs_nonnegative_exponents() {
    assert!(p_range(&JacobiParams::new(-0.5, 0.0).unwrap()).is_err());
}
