//! Pathwise stochastic integrals against `X` and `Y = ∫ρ dX`.
//!
//! All sums use the left endpoint of each grid step. An integral `∫g dY` is
//! evaluated through the identity `∫g dY = ∫g·ρ dX` on the `X` path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{weight, weighted_abs_power_integral, Interval, JacobiParams, TestFunction};
use crate::stable_process::{Grid, PathLabel, SamplePath, StableLaw};

/// Provenance of an integral realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralMeta {
    pub law: Option<StableLaw>,
    pub params: Option<JacobiParams>,
    pub interval: Interval,
    pub n_steps: usize,
}

/// One realization of a stochastic integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralSample {
    pub value: f64,
    pub path_id: u64,
    pub meta: IntegralMeta,
}

/// Integrand values at the left grid points, ready to be paired with path increments.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandTable {
    values: Vec<f64>,
}

impl IntegrandTable {
    /// Tabulates an arbitrary integrand; fails where it is not finite.
    pub fn from_fn<F: Fn(f64) -> f64>(grid: &Grid, f: F) -> Result<Self> {
        let values = grid
            .left_points()
            .iter()
            .map(|&v| {
                let y = f(v);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::Evaluation { at: v, reason: "integrand is not finite".into() })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    /// Wraps precomputed values at the left grid points; fails on non-finite entries.
    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_steps {
            return Err(Error::InvalidParameter(format!(
                "integrand table has {} values for {} grid steps",
                values.len(),
                grid.n_steps
            )));
        }
        if let Some((&v, _)) = grid.left_points().iter().zip(&values).find(|(_, y)| !y.is_finite()) {
            return Err(Error::Evaluation { at: v, reason: "integrand is not finite".into() });
        }
        Ok(Self { values })
    }

    /// Table of `g` for integration against `dX`.
    pub fn dx(g: &TestFunction, grid: &Grid) -> Result<Self> {
        let values = grid.left_points().iter().map(|&v| g.try_eval(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    /// Table of `g·ρ` for integration against `dY`.
    pub fn dy(g: &TestFunction, params: &JacobiParams, grid: &Grid) -> Result<Self> {
        params.require_nonnegative()?;
        let values = grid
            .left_points()
            .iter()
            .map(|&v| Ok(g.try_eval(v)? * weight(params, v)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    /// Multiplies the table pointwise by `ρ`, turning a `dX` table into a `dY` one.
    pub fn weighted_by(mut self, params: &JacobiParams, grid: &Grid) -> Result<Self> {
        params.require_nonnegative()?;
        for (h, &v) in self.values.iter_mut().zip(grid.left_points()) {
            *h *= weight(params, v)?;
        }
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Σ h(v_i) (X(v_{i+1}) - X(v_i))`.
    pub fn integrate(&self, path: &SamplePath) -> f64 {
        debug_assert_eq!(self.values.len() + 1, path.values.len());
        self.values.iter().zip(path.increments()).map(|(h, dx)| h * dx).sum()
    }
}

fn require_x(path: &SamplePath) -> Result<()> {
    if path.label != PathLabel::X {
        return Err(Error::InvalidParameter("expected a path of the driving process X".into()));
    }
    Ok(())
}

fn sample(value: f64, path: &SamplePath, params: Option<JacobiParams>) -> Result<IntegralSample> {
    if !value.is_finite() {
        return Err(Error::Evaluation { at: f64::NAN, reason: "integral is not finite".into() });
    }
    Ok(IntegralSample {
        value,
        path_id: path.path_id,
        meta: IntegralMeta { law: path.law, params, interval: path.grid.interval, n_steps: path.grid.n_steps },
    })
}

/// Left-endpoint Riemann–Stieltjes sum `Σ g(v_i)·ΔX_i`.
pub fn integrate_dx(g: &TestFunction, path: &SamplePath) -> Result<IntegralSample> {
    require_x(path)?;
    let value = IntegrandTable::dx(g, &path.grid)?.integrate(path);
    sample(value, path, None)
}

/// `Y(v) = ∫_a^v ρ dX` on the grid of `path`, as a cumulative left sum.
pub fn build_y(params: &JacobiParams, path: &SamplePath) -> Result<SamplePath> {
    require_x(path)?;
    params.require_nonnegative()?;
    let mut values = Vec::with_capacity(path.values.len());
    let mut acc = 0.0;
    values.push(acc);
    for (&v, dx) in path.grid.left_points().iter().zip(path.increments()) {
        acc += weight(params, v)? * dx;
        values.push(acc);
    }
    Ok(SamplePath { grid: path.grid.clone(), values, label: PathLabel::Y, path_id: path.path_id, law: path.law })
}

/// `∫g dY` evaluated as `Σ g(v_i) ρ(v_i) ΔX_i`.
pub fn integrate_dy(g: &TestFunction, params: &JacobiParams, path: &SamplePath) -> Result<IntegralSample> {
    require_x(path)?;
    let value = IntegrandTable::dy(g, params, &path.grid)?.integrate(path);
    sample(value, path, Some(*params))
}

/// `B = ∫_a^b |g|^χ dμ_{ζ,η}`, the dispersion used by the characteristic-function
/// formula and the tail bound.
pub fn dispersion(g: &TestFunction, law: &StableLaw, params: &JacobiParams, iv: &Interval) -> Result<f64> {
    weighted_abs_power_integral(g, law.chi, params, iv)
}

/// `∫_a^b |g ρ|^χ dv`, the dispersion of `∫g·ρ dX` for a process with independent
/// stable increments.
pub fn pathwise_dispersion(g: &TestFunction, law: &StableLaw, params: &JacobiParams, iv: &Interval) -> Result<f64> {
    let powered = JacobiParams { zeta: law.chi * params.zeta, eta: law.chi * params.eta };
    weighted_abs_power_integral(g, law.chi, &powered, iv)
}

/// `exp{-C|x|^χ B}` with `B = ∫_a^b |g|^χ dμ`.
pub fn theoretical_cf(g: &TestFunction, law: &StableLaw, params: &JacobiParams, iv: &Interval, x: f64) -> Result<f64> {
    let b = dispersion(g, law, params, iv)?;
    Ok((-law.scale_c * x.abs().powf(law.chi) * b).exp())
}

/// `exp{-C|x|^χ ∫|gρ|^χ dv}`: the characteristic function of `∫g·ρ dX`.
/// Agrees with [`theoretical_cf`] when `χ = 1` or `ρ ≡ 1`.
pub fn exact_integral_cf(g: &TestFunction, law: &StableLaw, params: &JacobiParams, iv: &Interval, x: f64) -> Result<f64> {
    let b = pathwise_dispersion(g, law, params, iv)?;
    Ok((-law.scale_c * x.abs().powf(law.chi) * b).exp())
}

/// `2^{χ+1} C B / ((χ+1) ε^χ)`.
pub fn tail_bound_formula(law: &StableLaw, dispersion: f64, eps: f64) -> f64 {
    let chi = law.chi;
    2f64.powf(chi + 1.0) * law.scale_c * dispersion / ((chi + 1.0) * eps.powf(chi))
}

/// Upper bound on `P(|∫_a^b g dY| > ε)`. Values above one are returned unchanged
/// (the bound is then vacuous). Requires `ρ ≤ 1` on `[a, b]` and `ζ, η ≥ 0`.
pub fn tail_bound(g: &TestFunction, law: &StableLaw, params: &JacobiParams, iv: &Interval, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    params.require_nonnegative()?;
    iv.check_weight_bounded(params)?;
    let b = dispersion(g, law, params, iv)?;
    Ok(tail_bound_formula(law, b, eps))
}
