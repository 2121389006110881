//! Admissible exponents for symmetric weights, and a convergence run on [-1, 1].

use stable_jacobi::fourier_jacobi::{p_range, ultraspherical_config};
use stable_jacobi::jacobi::{JacobiParams, TestFunction};
use stable_jacobi::stable_process::StableLaw;
use stable_jacobi::verification::{convergence_experiment, ExperimentConfig};

fn main() -> stable_jacobi::Result<()> {
    for zeta in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let r = p_range(&JacobiParams::new(zeta, zeta)?)?;
        println!("zeta = eta = {zeta}: {:.4} < p < {:.4}", r.lower, r.upper);
    }

    let (params, iv) = ultraspherical_config(0.0)?;
    let mut cfg = ExperimentConfig::new(StableLaw::new(1.5, 1.0)?, params, iv, TestFunction::cosine(1.0));
    cfg.n_paths = 2_000;
    cfg.n_steps = 2048;
    let report = convergence_experiment(&cfg)?;
    for l in &report.ladders {
        println!("u = {:>4}: {}", l.u.unwrap_or(f64::NAN), l.verdict.as_str());
    }
    Ok(())
}
