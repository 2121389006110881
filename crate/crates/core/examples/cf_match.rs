//! Characteristic function of `∫g dY` against its closed form.

use stable_jacobi::jacobi::{Interval, JacobiParams, TestFunction};
use stable_jacobi::stable_process::StableLaw;
use stable_jacobi::verification::{cf_match_check, stable_y_check, ExperimentConfig};

fn main() -> stable_jacobi::Result<()> {
    let mut cfg = ExperimentConfig::new(
        StableLaw::new(1.5, 1.0)?,
        JacobiParams::new(1.0, 1.0)?,
        Interval::new(-0.5, 0.5)?,
        TestFunction::orthonormal(&JacobiParams::new(1.0, 1.0)?, 2),
    );
    cfg.n_paths = 20_000;
    cfg.n_steps = 1024;
    cfg.master_seed = 3;

    let xs = [0.25, 0.5, 1.0, 2.0];
    let report = cf_match_check(&cfg, &xs)?;
    println!("g = q_2, weight (1, 1), chi = 1.5, {} paths", report.n_samples);
    println!("{:>5} {:>10} {:>10} {:>10} {:>9}", "x", "empirical", "formula", "pathwise", "|dev|");
    for r in &report.rows {
        println!(
            "{:>5} {:>10.5} {:>10.5} {:>10.5} {:>9.5}",
            r.x, r.empirical_re, r.theoretical, r.pathwise, r.deviation
        );
    }
    println!("allowance {:.4}: {}", report.rows[0].allowance, report.verdict.as_str());

    let y = stable_y_check(&cfg, &xs)?;
    println!("law of Y(b): max deviation {:.4} ({})", y.max_deviation, y.verdict.as_str());
    Ok(())
}
