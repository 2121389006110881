//! Symmetric `χ`-stable variates and discretized sample paths.
//!
//! A standard draw has characteristic function `exp{-|x|^χ}`. Path increments
//! over a step of width `Δ` are standard draws scaled by `(CΔ)^{1/χ}`, so that
//! each increment has characteristic function `exp{-CΔ|x|^χ}`.

use std::f64::consts::{PI, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::Interval;

/// Default number of grid steps for sample paths.
pub const DEFAULT_STEPS: usize = 4096;

/// Index `χ ∈ [1, 2]` and scale `C > 0` of the driving process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableLaw {
    pub chi: f64,
    pub scale_c: f64,
}

impl StableLaw {
    pub fn new(chi: f64, scale_c: f64) -> Result<Self> {
        check_chi(chi)?;
        if !(scale_c.is_finite() && scale_c > 0.0) {
            return Err(Error::InvalidParameter(format!("scale C must be positive, got {scale_c}")));
        }
        Ok(Self { chi, scale_c })
    }

    /// `C = 1`.
    pub fn standard(chi: f64) -> Result<Self> {
        Self::new(chi, 1.0)
    }
}

fn check_chi(chi: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&chi) {
        return Err(Error::InvalidParameter(format!("stability index must lie in [1, 2], got {chi}")));
    }
    Ok(())
}

/// Reproducible random substream keyed by `(master_seed, stream_id)`.
///
/// Backed by ChaCha8 with the stream id in the cipher's stream position, so
/// draws depend only on the key, never on which thread consumes them.
#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        Self { master_seed, stream_id, rng }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn open_uniform(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    fn exp1(&mut self) -> f64 {
        Exp1.sample(&mut self.rng)
    }
}

/// Precomputed sampler for the standard symmetric law `S_χ(1, 0, 0)`.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricStable {
    chi: f64,
    inv_chi: f64,
    tail_exp: f64,
}

impl SymmetricStable {
    pub fn new(chi: f64) -> Result<Self> {
        check_chi(chi)?;
        Ok(Self { chi, inv_chi: 1.0 / chi, tail_exp: (1.0 - chi) / chi })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// One draw: Cauchy via `tan` at `χ = 1`, `√2·N(0,1)` at `χ = 2`, and the
    /// Chambers–Mallows–Stuck transform in between.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        if self.chi == 2.0 {
            return SQRT_2 * rng.standard_normal();
        }
        let v = PI * (rng.open_uniform() - 0.5);
        if self.chi == 1.0 {
            return v.tan();
        }
        let w = rng.exp1();
        let a = self.chi;
        (a * v).sin() / v.cos().powf(self.inv_chi) * (((1.0 - a) * v).cos() / w).powf(self.tail_exp)
    }
}

/// One draw of the standard symmetric stable law with characteristic function `exp{-|x|^χ}`.
pub fn sample_standard_symmetric_stable(chi: f64, rng: &mut RngStream) -> Result<f64> {
    Ok(SymmetricStable::new(chi)?.sample(rng))
}

/// `exp{-C t |x|^χ}`, the characteristic function of the process at time `t`.
pub fn cf_stable(law: &StableLaw, t: f64, x: f64) -> f64 {
    (-law.scale_c * t * x.abs().powf(law.chi)).exp()
}

/// Uniform grid over an interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub interval: Interval,
    pub n_steps: usize,
    pub points: Vec<f64>,
}

impl Grid {
    pub fn new(interval: Interval, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidParameter("grid needs at least one step".into()));
        }
        let h = interval.len() / n_steps as f64;
        let points = (0..=n_steps)
            .map(|i| if i == n_steps { interval.b } else { interval.a + i as f64 * h })
            .collect();
        Ok(Self { interval, n_steps, points })
    }

    /// Step width `Δ = (b - a) / n`.
    pub fn spacing(&self) -> f64 {
        self.interval.len() / self.n_steps as f64
    }

    /// Left endpoints `v_0, ..., v_{n-1}` used by the Riemann–Stieltjes sums.
    pub fn left_points(&self) -> &[f64] {
        &self.points[..self.n_steps]
    }
}

/// Which process a path realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathLabel {
    X,
    Y,
}

/// A discretized realization started at zero on the left endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub label: PathLabel,
    /// Stream id of the generating [`RngStream`]; zero for deterministic paths.
    pub path_id: u64,
    /// Law of the driving process, when the path was simulated.
    pub law: Option<StableLaw>,
}

impl SamplePath {
    pub fn new(grid: Grid, values: Vec<f64>, label: PathLabel) -> Result<Self> {
        if values.len() != grid.points.len() {
            return Err(Error::InvalidParameter(format!(
                "path has {} values for {} grid points",
                values.len(),
                grid.points.len()
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidParameter("paths start at zero".into()));
        }
        Ok(Self { grid, values, label, path_id: 0, law: None })
    }

    /// Deterministic path `v ↦ f(v) - f(a)`; useful for checking the integrators.
    pub fn from_fn<F: Fn(f64) -> f64>(grid: Grid, label: PathLabel, f: F) -> Self {
        let origin = f(grid.points[0]);
        let values = grid.points.iter().map(|&v| f(v) - origin).collect();
        Self { grid, values, label, path_id: 0, law: None }
    }

    /// Increments `X(v_{i+1}) - X(v_i)`.
    pub fn increments(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.windows(2).map(|w| w[1] - w[0])
    }

    pub fn terminal(&self) -> f64 {
        *self.values.last().expect("paths are non-empty")
    }

    /// CSV with header `v,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("v,value\n");
        for (v, x) in self.grid.points.iter().zip(&self.values) {
            out.push_str(&format!("{v},{x}\n"));
        }
        out
    }
}

/// Simulates `X` on `grid`: independent increments with characteristic function
/// `exp{-CΔ|x|^χ}` accumulated from zero.
pub fn simulate_path(law: &StableLaw, grid: &Grid, rng: &mut RngStream) -> SamplePath {
    let sampler = SymmetricStable { chi: law.chi, inv_chi: 1.0 / law.chi, tail_exp: (1.0 - law.chi) / law.chi };
    let step_scale = (law.scale_c * grid.spacing()).powf(1.0 / law.chi);
    let mut values = Vec::with_capacity(grid.n_steps + 1);
    let mut acc = 0.0;
    values.push(acc);
    for _ in 0..grid.n_steps {
        acc += step_scale * sampler.sample(rng);
        values.push(acc);
    }
    SamplePath { grid: grid.clone(), values, label: PathLabel::X, path_id: rng.stream_id(), law: Some(*law) }
}
