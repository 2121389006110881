//! Estimated tail probabilities of `∫g dY` next to the tail bound.

use stable_jacobi::jacobi::{Interval, JacobiParams, TestFunction};
use stable_jacobi::stable_process::StableLaw;
use stable_jacobi::verification::{tail_check, ExperimentConfig};

fn main() -> stable_jacobi::Result<()> {
    for chi in [1.0, 1.5, 2.0] {
        let mut cfg = ExperimentConfig::new(
            StableLaw::new(chi, 1.0)?,
            JacobiParams::new(1.0, 1.0)?,
            Interval::new(-0.5, 0.5)?,
            TestFunction::cosine(1.0),
        );
        cfg.n_paths = 20_000;
        cfg.n_steps = 1024;
        cfg.eps_list = vec![0.5, 1.0, 2.0, 4.0];
        let report = tail_check(&cfg)?;
        println!("chi = {chi}: dispersion {:.4}", report.dispersion);
        for r in &report.rows {
            let bound = if r.vacuous { "vacuous".to_string() } else { format!("{:.4}", r.bound) };
            println!("  eps {:>3}: P = {:.4} +- {:.4}, bound {bound}", r.eps, r.p_hat, r.se);
        }
    }
    Ok(())
}
