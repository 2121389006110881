//! Simulates one path of X and the weighted process Y and writes both as CSV.
//!
//! cargo run --example sample_paths -- /tmp/paths

use std::path::PathBuf;

use stable_jacobi::jacobi::{Interval, JacobiParams};
use stable_jacobi::stable_process::{simulate_path, Grid, RngStream, StableLaw};
use stable_jacobi::stochastic_integral::build_y;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "paths".into()));
    std::fs::create_dir_all(&dir)?;

    let law = StableLaw::new(1.5, 1.0)?;
    let params = JacobiParams::new(1.0, 0.5)?;
    let grid = Grid::new(Interval::full(), 2048)?;
    let x = simulate_path(&law, &grid, &mut RngStream::new(11, 0));
    let y = build_y(&params, &x)?;

    std::fs::write(dir.join("x.csv"), x.to_csv())?;
    std::fs::write(dir.join("y.csv"), y.to_csv())?;
    let largest = x.increments().map(f64::abs).fold(0.0, f64::max);
    println!("X(1) = {:.4}, Y(1) = {:.4}, largest |dX| = {largest:.4}", x.terminal(), y.terminal());
    println!("wrote {}/x.csv and {}/y.csv", dir.display(), dir.display());
    Ok(())
}
