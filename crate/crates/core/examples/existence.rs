//! Cauchy ladder for the integrals of polynomial approximants `g_n` of `g`.

use stable_jacobi::jacobi::{Interval, JacobiParams, TestFunction};
use stable_jacobi::stable_process::StableLaw;
use stable_jacobi::verification::{existence_check, ExperimentConfig};

fn main() -> stable_jacobi::Result<()> {
    for g in [TestFunction::cosine(1.0), TestFunction::step(0.0)] {
        let mut cfg = ExperimentConfig::new(
            StableLaw::new(1.5, 1.0)?,
            JacobiParams::legendre(),
            Interval::new(-0.5, 0.5)?,
            g.clone(),
        );
        cfg.n_paths = 5_000;
        cfg.n_steps = 2048;
        let report = existence_check(&cfg, &[4, 8, 16, 32, 64])?;
        println!("g = {g}");
        for r in &report.rows {
            println!("  n = {:>2} vs {:>2}: P(|diff| > {}) = {:.4} +- {:.4}", r.m, r.against, r.eps, r.p_hat, r.se);
        }
        println!("  {}", report.verdict.as_str());
    }
    Ok(())
}
