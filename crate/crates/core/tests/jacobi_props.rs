mod common;

use approx::assert_relative_eq;
use proptest::prelude::*;
use stable_jacobi::jacobi::{
    eval_orthonormal_all, fourier_jacobi_coefficients, gauss_jacobi_rule, weighted_lp_norm, Interval, JacobiParams,
    TestFunction,
};
use statrs::function::beta::beta;

use common::{rho, tanh_sinh, tanh_sinh_h};

/// `∫_{-1}^{1} (1+u)^k ρ(u) du = 2^{k+ζ+η+1} B(ζ+1, η+k+1)`.
fn shifted_moment(zeta: f64, eta: f64, k: i32) -> f64 {
    2f64.powf(k as f64 + zeta + eta + 1.0) * beta(zeta + 1.0, eta + k as f64 + 1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_jacobi_is_exact_to_degree_2n_minus_1(zeta in 0.0..3.0f64, eta in 0.0..3.0f64, n in 1usize..24) {
        let params = JacobiParams::new(zeta, eta).unwrap();
        let rule = gauss_jacobi_rule(&params, n).unwrap();
        for k in [0, n as i32, 2 * n as i32 - 1] {
            let got = rule.integrate(|u| (1.0 + u).powi(k));
            prop_assert!((got - shifted_moment(zeta, eta, k)).abs() <= 1e-11 * shifted_moment(zeta, eta, k));
        }
    }

    #[test]
    fn orthonormal_against_independent_quadrature(zeta in 0.0..3.0f64, eta in 0.0..3.0f64) {
        let params = JacobiParams::new(zeta, eta).unwrap();
        let m = 12;
        for i in 0..=m {
            for j in 0..=i {
                let gram = tanh_sinh(|u| {
                    let q = eval_orthonormal_all(&params, m, u).unwrap();
                    q[i] * q[j] * rho(zeta, eta, u)
                }, -1.0, 1.0);
                prop_assert!((gram - if i == j { 1.0 } else { 0.0 }).abs() < 1e-11, "({i},{j}) -> {gram}");
            }
        }
    }

    #[test]
    fn polynomial_expansions_reproduce_the_polynomial(
        zeta in 0.0..2.0f64,
        eta in 0.0..2.0f64,
        coeffs in prop::collection::vec(-3.0..3.0f64, 1..6),
        u in -1.0..1.0f64,
    ) {
        let params = JacobiParams::new(zeta, eta).unwrap();
        let g = TestFunction::polynomial(coeffs);
        let c = fourier_jacobi_coefficients(&g, &params, 8).unwrap();
        let q = eval_orthonormal_all(&params, 8, u).unwrap();
        let series: f64 = c.iter().zip(&q).map(|(a, b)| a * b).sum();
        prop_assert!((series - g.eval(u)).abs() < 1e-10 * (1.0 + g.eval(u).abs()));
        // Parseval
        let energy: f64 = c.iter().map(|x| x * x).sum();
        let direct = tanh_sinh(|v| g.eval(v).powi(2) * rho(zeta, eta, v), -1.0, 1.0);
        prop_assert!((energy - direct).abs() < 1e-9 * (1.0 + direct));
    }

    #[test]
    fn coefficients_are_linear(
        f in prop::collection::vec(-3.0..3.0f64, 1..5),
        g in prop::collection::vec(-3.0..3.0f64, 1..5),
        alpha in -2.0..2.0f64,
        beta in -2.0..2.0f64,
    ) {
        let params = JacobiParams::new(0.5, 1.0).unwrap();
        let (f, g) = (TestFunction::polynomial(f), TestFunction::polynomial(g));
        let h = f.combine(alpha, &g, beta).unwrap();
        let (cf, cg, ch) = (
            fourier_jacobi_coefficients(&f, &params, 10).unwrap(),
            fourier_jacobi_coefficients(&g, &params, 10).unwrap(),
            fourier_jacobi_coefficients(&h, &params, 10).unwrap(),
        );
        for i in 0..=10 {
            prop_assert!((ch[i] - alpha * cf[i] - beta * cg[i]).abs() < 1e-12);
        }
    }
}

#[test]
fn lp_norm_against_oracle() {
    let params = JacobiParams::new(1.0, 0.5).unwrap();
    let iv = Interval::new(-0.7, 0.9).unwrap();
    for (g, p) in [("cos:3", 2.0), ("poly:0.5,-1,0.2", 1.5), ("step:0.1", 3.0)] {
        let g: TestFunction = g.parse().unwrap();
        let got = weighted_lp_norm(&g, p, &params, &iv).unwrap();
        let kinks = g.kinks(iv.a, iv.b);
        let mut pts = vec![iv.a];
        pts.extend(kinks);
        pts.push(iv.b);
        let want: f64 = pts
            .windows(2)
            .map(|w| tanh_sinh_h(|v| g.eval(v).abs().powf(p) * rho(1.0, 0.5, v), w[0], w[1], 1.0 / 128.0))
            .sum::<f64>()
            .powf(1.0 / p);
        assert_relative_eq!(got, want, max_relative = 1e-11);
    }
}

#[test]
fn step_coefficient_against_oracle() {
    let params = JacobiParams::new(2.0, 0.5).unwrap();
    let c = fourier_jacobi_coefficients(&TestFunction::step(0.3), &params, 6).unwrap();
    for (m, cm) in c.iter().enumerate() {
        let want = tanh_sinh_h(
            |u| eval_orthonormal_all(&params, 6, u).unwrap()[m] * rho(2.0, 0.5, u),
            0.3,
            1.0,
            1.0 / 128.0,
        );
        assert!((cm - want).abs() < 1e-12, "m = {m}: {cm} vs {want}");
    }
}
