//! Deterministic special-function layer.
//!
//! Everything here is defined relative to the Jacobi weight
//! `ρ(u) = (1 - u)^ζ (1 + u)^η` on `[-1, 1]` and the measure `dμ = ρ(u) du`.
//! Orthonormal polynomials `q_m` satisfy `∫ q_i q_j dμ = δ_ij`.

mod quadrature;
mod test_function;

pub use quadrature::{gauss_jacobi_rule, integrate_weighted, weighted_rule, QuadratureRule};
pub use test_function::{
    fourier_jacobi_coefficient, fourier_jacobi_coefficients, weighted_abs_power_integral,
    weighted_lp_norm, Endpoint, TestFunction,
};

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Highest polynomial degree accepted by the evaluators.
pub const MAX_DEGREE: usize = 512;

/// The exponent pair `(ζ, η)` of the Jacobi weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub zeta: f64,
    pub eta: f64,
}

impl JacobiParams {
    pub fn new(zeta: f64, eta: f64) -> Result<Self> {
        if !(zeta.is_finite() && zeta > -1.0) {
            return Err(Error::InvalidParameter(format!("zeta must exceed -1, got {zeta}")));
        }
        if !(eta.is_finite() && eta > -1.0) {
            return Err(Error::InvalidParameter(format!("eta must exceed -1, got {eta}")));
        }
        Ok(Self { zeta, eta })
    }

    /// Legendre case `ζ = η = 0`.
    pub fn legendre() -> Self {
        Self { zeta: 0.0, eta: 0.0 }
    }

    /// Stochastic operations need `ζ, η ≥ 0`.
    pub fn require_nonnegative(&self) -> Result<()> {
        if self.zeta < 0.0 || self.eta < 0.0 {
            return Err(Error::Hypothesis(format!(
                "stochastic operations require zeta >= 0 and eta >= 0, got ({}, {})",
                self.zeta, self.eta
            )));
        }
        Ok(())
    }

    /// Total mass `∫_{-1}^{1} dμ = 2^{ζ+η+1} Γ(ζ+1) Γ(η+1) / Γ(ζ+η+2)`.
    pub fn total_mass(&self) -> f64 {
        ln_norm_sq(self, 0).exp()
    }
}

/// A closed subinterval `[a, b]` of `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a < -1.0 || b > 1.0 || a >= b {
            return Err(Error::InvalidParameter(format!(
                "interval must satisfy -1 <= a < b <= 1, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    /// The full orthogonality segment `[-1, 1]`.
    pub fn full() -> Self {
        Self { a: -1.0, b: 1.0 }
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, u: f64) -> bool {
        self.a <= u && u <= self.b
    }

    /// `sup_{[a,b]} ρ`, computed from the endpoints and the interior critical
    /// point `u* = (η - ζ) / (η + ζ)`.
    pub fn max_weight(&self, params: &JacobiParams) -> f64 {
        let at = |u: f64| weight_unchecked(params, u);
        let mut max = at(self.a).max(at(self.b));
        let s = params.zeta + params.eta;
        if s != 0.0 {
            let critical = (params.eta - params.zeta) / s;
            if self.contains(critical) {
                max = max.max(at(critical));
            }
        }
        max
    }

    pub fn is_weight_bounded(&self, params: &JacobiParams) -> bool {
        self.max_weight(params) <= 1.0 + 1e-14
    }

    /// Fails unless `ρ ≤ 1` on the whole interval.
    pub fn check_weight_bounded(&self, params: &JacobiParams) -> Result<()> {
        if self.is_weight_bounded(params) {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!(
                "weight (1-u)^{}(1+u)^{} exceeds one on [{}, {}] (sup = {})",
                params.zeta,
                params.eta,
                self.a,
                self.b,
                self.max_weight(params)
            )))
        }
    }
}

fn weight_unchecked(params: &JacobiParams, u: f64) -> f64 {
    let left = if params.zeta == 0.0 { 1.0 } else { (1.0 - u).powf(params.zeta) };
    let right = if params.eta == 0.0 { 1.0 } else { (1.0 + u).powf(params.eta) };
    left * right
}

/// The Jacobi weight `(1 - u)^ζ (1 + u)^η`.
pub fn weight(params: &JacobiParams, u: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u = {u} outside [-1, 1]")));
    }
    if (u == 1.0 && params.zeta < 0.0) || (u == -1.0 && params.eta < 0.0) {
        return Err(Error::Domain(format!("weight is singular at u = {u}")));
    }
    Ok(weight_unchecked(params, u))
}

/// `ln h_m` where `h_m = ∫ (P_m^{(ζ,η)})² dμ`.
pub(crate) fn ln_norm_sq(params: &JacobiParams, m: usize) -> f64 {
    let (al, be) = (params.zeta, params.eta);
    let s = al + be;
    let ln2 = std::f64::consts::LN_2;
    if m == 0 {
        (s + 1.0) * ln2 + ln_gamma(al + 1.0) + ln_gamma(be + 1.0) - ln_gamma(s + 2.0)
    } else {
        let n = m as f64;
        (s + 1.0) * ln2 - (2.0 * n + s + 1.0).ln() + ln_gamma(n + al + 1.0)
            + ln_gamma(n + be + 1.0)
            - ln_gamma(n + s + 1.0)
            - ln_gamma(n + 1.0)
    }
}

fn check_degree(m: usize) -> Result<()> {
    if m > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "degree {m} exceeds the maximum supported degree {MAX_DEGREE}"
        )));
    }
    Ok(())
}

/// Values `P_0(u), ..., P_m(u)` of the classical Jacobi polynomials.
fn classical_all(params: &JacobiParams, m: usize, u: f64) -> Vec<f64> {
    let (al, be) = (params.zeta, params.eta);
    let s = al + be;
    let mut out = Vec::with_capacity(m + 1);
    out.push(1.0);
    if m == 0 {
        return out;
    }
    out.push((al + 1.0) + 0.5 * (s + 2.0) * (u - 1.0));
    for n in 2..=m {
        let n = n as f64;
        let t = 2.0 * n + s;
        let a1 = 2.0 * n * (n + s) * (t - 2.0);
        let a2 = (t - 1.0) * (al * al - be * be);
        let a3 = (t - 2.0) * (t - 1.0) * t;
        let a4 = 2.0 * (n + al - 1.0) * (n + be - 1.0) * t;
        let k = out.len();
        let next = ((a2 + a3 * u) * out[k - 1] - a4 * out[k - 2]) / a1;
        out.push(next);
    }
    out
}

/// Values `q_0(u), ..., q_m(u)` of the orthonormal Jacobi polynomials.
pub fn eval_orthonormal_all(params: &JacobiParams, m: usize, u: f64) -> Result<Vec<f64>> {
    check_degree(m)?;
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u = {u} outside [-1, 1]")));
    }
    let mut values = classical_all(params, m, u);
    for (k, v) in values.iter_mut().enumerate() {
        *v /= (0.5 * ln_norm_sq(params, k)).exp();
    }
    Ok(values)
}

/// The `m`-th orthonormal Jacobi polynomial `q_m(u)`.
pub fn eval_orthonormal(params: &JacobiParams, m: usize, u: f64) -> Result<f64> {
    Ok(eval_orthonormal_all(params, m, u)?[m])
}

/// Fills `out[k]` with the table `q_k(nodes[i])` for `k ≤ m`, row-major by degree.
pub(crate) fn orthonormal_table(params: &JacobiParams, m: usize, nodes: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_degree(m)?;
    let scales: Vec<f64> = (0..=m).map(|k| (-0.5 * ln_norm_sq(params, k)).exp()).collect();
    let mut table = vec![vec![0.0; nodes.len()]; m + 1];
    for (i, &u) in nodes.iter().enumerate() {
        if !(-1.0..=1.0).contains(&u) {
            return Err(Error::Domain(format!("u = {u} outside [-1, 1]")));
        }
        for (k, p) in classical_all(params, m, u).into_iter().enumerate() {
            table[k][i] = p * scales[k];
        }
    }
    Ok(table)
}

/// Diagonal and off-diagonal entries of the symmetric Jacobi matrix of order `n`
/// (recurrence coefficients of the orthonormal family).
pub(crate) fn jacobi_matrix(params: &JacobiParams, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (al, be) = (params.zeta, params.eta);
    let s = al + be;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (be - al) / (s + 2.0)
            } else {
                let t = 2.0 * k as f64 + s;
                (be * be - al * al) / (t * (t + 2.0))
            }
        })
        .collect();
    let off = (1..n)
        .map(|k| {
            let kf = k as f64;
            let t = 2.0 * kf + s;
            let sq = if k == 1 {
                4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s).powi(2) * (3.0 + s))
            } else {
                4.0 * kf * (kf + al) * (kf + be) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0))
            };
            sq.sqrt()
        })
        .collect();
    (diag, off)
}
