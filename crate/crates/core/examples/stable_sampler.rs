//! Draws standard symmetric stable variates and compares their empirical
//! characteristic function with `exp{-|x|^χ}`.

use stable_jacobi::stable_process::{RngStream, SymmetricStable};
use stable_jacobi::verification::{cf_allowance, empirical_cf};

fn main() -> stable_jacobi::Result<()> {
    let n = 100_000;
    for chi in [1.0, 1.5, 2.0] {
        let sampler = SymmetricStable::new(chi)?;
        let mut rng = RngStream::new(2024, 0);
        let draws: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
        print!("chi = {chi:.1}:");
        for x in [0.5, 1.0, 2.0] {
            let dev = (empirical_cf(&draws, x)?.re - (-f64::powf(x, chi)).exp()).abs();
            print!("  x={x}: |dev| = {dev:.4}");
        }
        println!("   (band {:.4})", cf_allowance(n) - 0.01);
    }
    Ok(())
}
