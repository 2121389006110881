mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use stable_jacobi::jacobi::{weight, Interval, JacobiParams, TestFunction};
use stable_jacobi::stable_process::{simulate_path, Grid, PathLabel, RngStream, SamplePath, StableLaw};
use stable_jacobi::stochastic_integral::{
    build_y, dispersion, integrate_dx, integrate_dy, pathwise_dispersion, tail_bound, IntegrandTable,
};
use stable_jacobi::Error;

use common::{rho, tail_bound_oracle, tanh_sinh};

fn arb_function() -> impl Strategy<Value = TestFunction> {
    prop_oneof![
        prop::collection::vec(-2.0..2.0f64, 1..4).prop_map(TestFunction::polynomial),
        (-0.4..0.4f64).prop_map(TestFunction::step),
        (0.1..5.0f64).prop_map(TestFunction::cosine),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn integral_is_linear(f in arb_function(), g in arb_function(), a in -3.0..3.0f64, b in -3.0..3.0f64, seed in 0u64..1000) {
        let params = JacobiParams::new(1.0, 0.5).unwrap();
        let grid = Grid::new(Interval::new(-0.5, 0.5).unwrap(), 512).unwrap();
        let path = simulate_path(&StableLaw::new(1.5, 1.0).unwrap(), &grid, &mut RngStream::new(seed, 0));
        let lhs = IntegrandTable::from_fn(&grid, |v| a * f.eval(v) + b * g.eval(v)).unwrap()
            .weighted_by(&params, &grid).unwrap()
            .integrate(&path);
        let rhs = a * integrate_dy(&f, &params, &path).unwrap().value + b * integrate_dy(&g, &params, &path).unwrap().value;
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn dy_route_equals_sum_against_built_y(f in arb_function(), seed in 0u64..1000) {
        // ∫g dY computed from the integrand table and from increments of Y
        let params = JacobiParams::new(0.5, 2.0).unwrap();
        let grid = Grid::new(Interval::new(-0.9, 0.3).unwrap(), 300).unwrap();
        let x = simulate_path(&StableLaw::new(1.2, 2.0).unwrap(), &grid, &mut RngStream::new(seed, 4));
        let y = build_y(&params, &x).unwrap();
        let via_y: f64 = grid.left_points().iter().zip(y.increments()).map(|(&v, dy)| f.eval(v) * dy).sum();
        let direct = integrate_dy(&f, &params, &x).unwrap().value;
        prop_assert!((via_y - direct).abs() < 1e-10 * (1.0 + direct.abs()));
    }
}

#[test]
fn deterministic_path_gives_riemann_sum() {
    // X(v) = v: ∫g dX is the left Riemann sum of g
    let grid = Grid::new(Interval::new(0.0, 1.0).unwrap(), 1000).unwrap();
    let path = SamplePath::from_fn(grid, PathLabel::X, |v| v);
    let s = integrate_dx(&TestFunction::polynomial(vec![0.0, 0.0, 3.0]), &path).unwrap().value;
    assert_abs_diff_eq!(s, 1.0, epsilon = 2e-3);
}

#[test]
fn dispersions_against_oracle() {
    let iv = Interval::new(-0.5, 0.5).unwrap();
    let params = JacobiParams::new(1.0, 1.0).unwrap();
    let law = StableLaw::new(1.5, 1.0).unwrap();
    let g = TestFunction::cosine(2.0);
    let b = dispersion(&g, &law, &params, &iv).unwrap();
    let want = tanh_sinh(|v| (2.0 * v).cos().abs().powf(1.5) * rho(1.0, 1.0, v), -0.5, 0.5);
    assert_abs_diff_eq!(b, want, epsilon = 1e-12);
    let bp = pathwise_dispersion(&g, &law, &params, &iv).unwrap();
    let want = tanh_sinh(|v| ((2.0 * v).cos() * rho(1.0, 1.0, v)).abs().powf(1.5), -0.5, 0.5);
    assert_abs_diff_eq!(bp, want, epsilon = 1e-12);
    assert_abs_diff_eq!(weight(&params, 0.5).unwrap(), 0.75);
}

#[test]
fn tail_bound_against_oracle_and_hypotheses() {
    let law = StableLaw::new(1.7, 0.6).unwrap();
    let params = JacobiParams::new(1.0, 1.0).unwrap();
    let iv = Interval::new(-0.5, 0.5).unwrap();
    let g = TestFunction::constant(1.0);
    let b = tanh_sinh(|v| rho(1.0, 1.0, v), -0.5, 0.5);
    assert_abs_diff_eq!(tail_bound(&g, &law, &params, &iv, 2.0).unwrap(), tail_bound_oracle(1.7, 0.6, b, 2.0), epsilon = 1e-13);
    // the weight (1-u) exceeds one left of zero
    let lopsided = JacobiParams::new(1.0, 0.0).unwrap();
    assert!(matches!(tail_bound(&g, &law, &lopsided, &iv, 2.0), Err(Error::Hypothesis(_))));
    assert!(tail_bound(&g, &law, &params, &iv, 0.0).is_err());
}
