//! Gram matrix of the orthonormal Jacobi polynomials under a Gauss–Jacobi rule,
//! plus a few coefficient expansions.
//!
//! cargo run --example orthonormality -- 0.5 2

use stable_jacobi::jacobi::{
    eval_orthonormal_all, fourier_jacobi_coefficients, gauss_jacobi_rule, JacobiParams, TestFunction,
};

fn main() -> stable_jacobi::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let params = JacobiParams::new(args.first().copied().unwrap_or(0.5), args.get(1).copied().unwrap_or(2.0))?;
    let n = 30;
    let rule = gauss_jacobi_rule(&params, n + 2)?;
    let values: Vec<Vec<f64>> =
        rule.nodes.iter().map(|&u| eval_orthonormal_all(&params, n, u)).collect::<Result<_, _>>()?;

    let mut worst = 0.0f64;
    for i in 0..=n {
        for j in 0..=n {
            let gram: f64 = rule.weights.iter().zip(&values).map(|(w, q)| w * q[i] * q[j]).sum();
            worst = worst.max((gram - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    println!("weight exponents ({}, {}), degrees 0..={n}", params.zeta, params.eta);
    println!("max |<q_i, q_j> - delta_ij| = {worst:.3e}");

    for g in ["cos:1", "step:0", "poly:1,0,2"] {
        let g: TestFunction = g.parse()?;
        let c = fourier_jacobi_coefficients(&g, &params, 8)?;
        let shown: Vec<String> = c.iter().map(|x| format!("{x:+.5}")).collect();
        println!("{g:<12} c_0..c_8 = [{}]", shown.join(", "));
    }
    Ok(())
}
