//! Random Fourier–Jacobi partial sums against the reference integral.

use stable_jacobi::jacobi::{Interval, JacobiParams, TestFunction};
use stable_jacobi::stable_process::StableLaw;
use stable_jacobi::verification::{convergence_experiment, ExperimentConfig};

fn main() -> stable_jacobi::Result<()> {
    let mut cfg = ExperimentConfig::new(
        StableLaw::new(1.5, 1.0)?,
        JacobiParams::legendre(),
        Interval::new(-0.5, 0.5)?,
        TestFunction::cosine(1.0),
    );
    cfg.n_paths = 5_000;
    cfg.n_steps = 2048;
    cfg.eps_list = vec![0.02, 0.1];

    let report = convergence_experiment(&cfg)?;
    println!("{:>4} {:>5} {:>3} {:>8} {:>8} {:>10}", "u", "eps", "m", "p_hat", "se", "bound");
    for r in &report.rows {
        println!(
            "{:>4} {:>5} {:>3} {:>8.4} {:>8.4} {:>10.3e}",
            r.u.unwrap_or(f64::NAN),
            r.eps,
            r.m,
            r.p_hat,
            r.se,
            r.bound.unwrap_or(f64::NAN)
        );
    }
    if let Some(c) = report.coefficient_correlation_0_2 {
        println!("corr(C_0, C_2) = {c:.3}");
    }
    println!("{}", report.verdict.as_str());
    Ok(())
}
