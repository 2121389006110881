//! Monte Carlo experiments.
//!
//! Every experiment simulates paths of `X` from `(master_seed, path index)`,
//! computes per-path statistics in parallel, and reduces them in path-index
//! order, so reports are a pure function of the configuration.
//!
//! Decision rules:
//! * characteristic functions agree when `|φ̂(x) - φ(x)| ≤ 3.3/√N + 0.01`;
//! * a tail estimate respects a bound when `P̂ ≤ bound + 3·SE` (bounds `≥ 1` are vacuous);
//! * a ladder of tail estimates "converges" when it is non-increasing up to two
//!   standard errors of each step and its last entry is at most `δ_floor = 0.01`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier_jacobi::{
    coefficient_correlation, kernel_table, p_range, CoefficientVector, RandomCoefficientIntegrator,
};
use crate::jacobi::{eval_orthonormal_all, orthonormal_table, weighted_rule, Interval, JacobiParams, TestFunction};
use crate::stable_process::{simulate_path, Grid, RngStream, SamplePath, StableLaw, DEFAULT_STEPS};
use crate::stochastic_integral::{
    exact_integral_cf, tail_bound_formula, theoretical_cf, IntegrandTable,
};

/// Multiplier of `1/√N` in the characteristic-function band.
pub const CF_BAND_Z: f64 = 3.3;
/// Allowance for grid bias in characteristic-function comparisons.
pub const DISCRETIZATION_ALLOWANCE: f64 = 0.01;
/// Final tail probability a converging ladder must reach.
pub const DELTA_FLOOR: f64 = 0.01;
/// Standard errors of slack allowed between consecutive ladder entries.
pub const LADDER_SE_SLACK: f64 = 2.0;
/// Standard errors of slack allowed above a tail bound.
pub const BOUND_SE_SLACK: f64 = 3.0;

/// Evaluation points used when none are configured; filtered to the open interval.
pub const DEFAULT_U_POINTS: [f64; 5] = [-0.9, -0.5, 0.0, 0.5, 0.9];

/// `3.3/√N + 0.01`.
pub fn cf_allowance(n: usize) -> f64 {
    CF_BAND_Z / (n as f64).sqrt() + DISCRETIZATION_ALLOWANCE
}

/// Binomial standard error `√(p(1-p)/n)`.
pub fn binomial_se(p_hat: f64, n: usize) -> f64 {
    (p_hat * (1.0 - p_hat) / n as f64).sqrt()
}

/// `(1/N) Σ exp(i x s_k)`.
pub fn empirical_cf(samples: &[f64], x: f64) -> Result<Complex64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (re, im) = samples.iter().fold((0.0, 0.0), |(re, im), &s| {
        let (sin, cos) = (x * s).sin_cos();
        (re + cos, im + sin)
    });
    let n = samples.len() as f64;
    Ok(Complex64::new(re / n, im / n))
}

/// Fraction of samples with `|s| > ε`, i.e. `1 - (Ĥ(ε) - Ĥ(-ε))` for the empirical
/// distribution function `Ĥ`.
pub fn estimate_tail_probability(samples: &[f64], eps: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    Ok(samples.iter().filter(|s| s.abs() > eps).count() as f64 / samples.len() as f64)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Runs `f(path_index)` for every path in parallel and returns results in index order.
pub fn run_paths<T, F>(n_paths: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    (0..n_paths as u64).into_par_iter().map(f).collect()
}

/// Draws `n_paths` paths of `X` and integrates every table against each of them.
/// Result is indexed `[table][path]`.
pub fn integral_samples(
    law: &StableLaw,
    grid: &Grid,
    n_paths: usize,
    master_seed: u64,
    tables: &[IntegrandTable],
) -> Result<Vec<Vec<f64>>> {
    let per_path = run_paths(n_paths, |id| {
        let path = simulate_path(law, grid, &mut RngStream::new(master_seed, id));
        Ok(tables.iter().map(|t| t.integrate(&path)).collect::<Vec<f64>>())
    })?;
    let mut out = vec![Vec::with_capacity(n_paths); tables.len()];
    for row in per_path {
        for (k, v) in row.into_iter().enumerate() {
            out[k].push(v);
        }
    }
    Ok(out)
}

/// Full hypothesis set and sizing of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub law: StableLaw,
    pub params: JacobiParams,
    pub iv: Interval,
    pub g: TestFunction,
    pub p: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub m_max: usize,
    pub m_ref: usize,
    pub eps_list: Vec<f64>,
    pub u_points: Vec<f64>,
    pub master_seed: u64,
    /// Run despite violated hypotheses and invert the convergence verdict.
    pub expect_failure: bool,
}

impl ExperimentConfig {
    /// Defaults: `p = 2`, 10^4 paths of 4096 steps, `m_max = 32`, `M_ref = 128`,
    /// `ε = 0.1`, and the default evaluation points inside `(a, b)`.
    pub fn new(law: StableLaw, params: JacobiParams, iv: Interval, g: TestFunction) -> Self {
        Self {
            law,
            params,
            iv,
            g,
            p: 2.0,
            n_paths: 10_000,
            n_steps: DEFAULT_STEPS,
            m_max: 32,
            m_ref: 128,
            eps_list: vec![0.1],
            u_points: default_u_points(&iv),
            master_seed: 0,
            expect_failure: false,
        }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.iv, self.n_steps)
    }

    /// `2, 4, 8, ...` up to `m_max` (with `m_max` itself appended if it is not a power of two).
    pub fn m_ladder(&self) -> Vec<usize> {
        let mut ladder = Vec::new();
        let mut m = 2;
        while m <= self.m_max {
            ladder.push(m);
            m *= 2;
        }
        if ladder.last() != Some(&self.m_max) {
            ladder.push(self.m_max);
        }
        ladder
    }

    fn check_sizes(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::InvalidParameter("n_paths must be positive".into()));
        }
        if self.n_steps == 0 {
            return Err(Error::InvalidParameter("n_steps must be positive".into()));
        }
        if let Some(e) = self.eps_list.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(Error::InvalidParameter(format!("eps values must be positive, got {e}")));
        }
        self.params.require_nonnegative()
    }

    /// Hypotheses of the convergence result that fail for this configuration.
    pub fn convergence_violations(&self) -> Result<Vec<String>> {
        self.check_sizes()?;
        let mut out = Vec::new();
        let range = p_range(&self.params)?;
        if !range.contains(self.p) {
            out.push(format!(
                "p outside the admissible range: p = {} not in ({}, {})",
                self.p, range.lower, range.upper
            ));
        }
        if self.p < self.law.chi {
            out.push(format!("p = {} is below the stability index chi = {}", self.p, self.law.chi));
        }
        if self.law.chi <= 1.0 {
            out.push("convergence requires chi > 1".into());
        }
        if !self.iv.is_weight_bounded(&self.params) {
            out.push(format!(
                "weight exceeds one on [{}, {}] (sup = {})",
                self.iv.a,
                self.iv.b,
                self.iv.max_weight(&self.params)
            ));
        }
        if !self.g.in_lp(self.p, &self.params, &self.iv) {
            out.push(format!("{} is not in L^{} on [{}, {}]", self.g, self.p, self.iv.a, self.iv.b));
        }
        Ok(out)
    }

    /// Hypotheses of the existence result (`g ∈ L^p`, `p ≥ χ`, `ρ ≤ 1`) that fail.
    pub fn existence_violations(&self) -> Result<Vec<String>> {
        self.check_sizes()?;
        let mut out = Vec::new();
        if self.p < self.law.chi {
            out.push(format!("p = {} is below the stability index chi = {}", self.p, self.law.chi));
        }
        if !self.iv.is_weight_bounded(&self.params) {
            out.push(format!("weight exceeds one on [{}, {}]", self.iv.a, self.iv.b));
        }
        if !self.g.in_lp(self.p, &self.params, &self.iv) {
            out.push(format!("{} is not in L^{} on [{}, {}]", self.g, self.p, self.iv.a, self.iv.b));
        }
        Ok(out)
    }
}

/// Default evaluation points strictly inside the interval.
pub fn default_u_points(iv: &Interval) -> Vec<f64> {
    DEFAULT_U_POINTS.iter().copied().filter(|&u| iv.a < u && u < iv.b).collect()
}

fn reject_violations(violations: &[String], expect_failure: bool) -> Result<()> {
    if !violations.is_empty() && !expect_failure {
        return Err(Error::Hypothesis(violations.join("; ")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// Non-increasing within `LADDER_SE_SLACK` standard errors of each step, ending at or below `δ_floor`.
pub fn ladder_converges(p_hats: &[f64], ses: &[f64]) -> bool {
    let monotone = p_hats
        .windows(2)
        .zip(ses.windows(2))
        .all(|(p, s)| p[1] <= p[0] + LADDER_SE_SLACK * (s[0] * s[0] + s[1] * s[1]).sqrt());
    monotone && p_hats.last().is_none_or(|&last| last <= DELTA_FLOOR)
}

/// One comparison of an empirical and a theoretical characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CfRow {
    pub x: f64,
    pub empirical_re: f64,
    pub empirical_im: f64,
    pub theoretical: f64,
    /// CF of `∫gρ dX` with dispersion `∫|gρ|^χ dv`, reported for comparison.
    pub pathwise: f64,
    pub deviation: f64,
    pub allowance: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfReport {
    pub n_samples: usize,
    pub rows: Vec<CfRow>,
    pub max_deviation: f64,
    pub verdict: Verdict,
}

/// Compares the empirical CF of `samples` with `theoretical(x)` at each `x`.
pub fn compare_cf<T, P>(samples: &[f64], x_list: &[f64], theoretical: T, pathwise: P) -> Result<CfReport>
where
    T: Fn(f64) -> Result<f64>,
    P: Fn(f64) -> Result<f64>,
{
    let allowance = cf_allowance(samples.len());
    let rows = x_list
        .iter()
        .map(|&x| {
            let emp = empirical_cf(samples, x)?;
            let theo = theoretical(x)?;
            let deviation = (emp - Complex64::new(theo, 0.0)).norm();
            Ok(CfRow {
                x,
                empirical_re: emp.re,
                empirical_im: emp.im,
                theoretical: theo,
                pathwise: pathwise(x)?,
                deviation,
                allowance,
                verdict: Verdict::from_bool(deviation <= allowance),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let verdict = Verdict::from_bool(rows.iter().all(|r| r.verdict.is_pass()));
    Ok(CfReport { n_samples: samples.len(), rows, max_deviation, verdict })
}

/// Samples of `∫g dY` for the configuration.
pub fn dy_samples(config: &ExperimentConfig) -> Result<Vec<f64>> {
    config.check_sizes()?;
    let grid = config.grid()?;
    let table = IntegrandTable::dy(&config.g, &config.params, &grid)?;
    Ok(integral_samples(&config.law, &grid, config.n_paths, config.master_seed, &[table])?.remove(0))
}

/// Empirical CF of `∫g dY` against `exp{-C|x|^χ ∫|g|^χ dμ}`.
pub fn cf_match_check(config: &ExperimentConfig, x_list: &[f64]) -> Result<CfReport> {
    let samples = dy_samples(config)?;
    cf_report_from_samples(config, &samples, x_list)
}

/// As [`cf_match_check`] for precomputed samples of `∫g dY`.
pub fn cf_report_from_samples(config: &ExperimentConfig, samples: &[f64], x_list: &[f64]) -> Result<CfReport> {
    let (g, law, params, iv) = (&config.g, &config.law, &config.params, &config.iv);
    compare_cf(
        samples,
        x_list,
        |x| theoretical_cf(g, law, params, iv, x),
        |x| exact_integral_cf(g, law, params, iv, x),
    )
}

/// Law of `Y(b)`: empirical CF of `∫_a^b ρ dX` against `exp{-C|x|^χ ∫_a^b ρ^χ dv}`.
pub fn stable_y_check(config: &ExperimentConfig, x_list: &[f64]) -> Result<CfReport> {
    let one = TestFunction::constant(1.0);
    let cfg = ExperimentConfig { g: one.clone(), ..config.clone() };
    let samples = dy_samples(&cfg)?;
    let (law, params, iv) = (&cfg.law, &cfg.params, &cfg.iv);
    let exact = |x: f64| exact_integral_cf(&one, law, params, iv, x);
    compare_cf(&samples, x_list, exact, exact)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub eps: f64,
    pub p_hat: f64,
    pub se: f64,
    pub bound: f64,
    pub vacuous: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub n_samples: usize,
    pub dispersion: f64,
    pub weight_bounded: bool,
    pub rows: Vec<TailRow>,
    pub verdict: Verdict,
}

/// Estimated `P(|∫g dY| > ε)` against the tail bound, for each configured `ε`.
///
/// The bound formula is evaluated even when `ρ` exceeds one on the interval;
/// `weight_bounded` records whether the bound's hypothesis holds.
pub fn tail_report_from_samples(config: &ExperimentConfig, samples: &[f64]) -> Result<TailReport> {
    let b = crate::stochastic_integral::dispersion(&config.g, &config.law, &config.params, &config.iv)?;
    let rows = config
        .eps_list
        .iter()
        .map(|&eps| {
            let p_hat = estimate_tail_probability(samples, eps)?;
            let se = binomial_se(p_hat, samples.len());
            let bound = tail_bound_formula(&config.law, b, eps);
            let vacuous = bound >= 1.0;
            let pass = vacuous || p_hat <= bound + BOUND_SE_SLACK * se;
            Ok(TailRow { eps, p_hat, se, bound, vacuous, verdict: Verdict::from_bool(pass) })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = Verdict::from_bool(rows.iter().all(|r| r.verdict.is_pass()));
    Ok(TailReport {
        n_samples: samples.len(),
        dispersion: b,
        weight_bounded: config.iv.is_weight_bounded(&config.params),
        rows,
        verdict,
    })
}

/// Tail-bound check; requires the bound's hypotheses (`ρ ≤ 1` on the interval).
pub fn tail_check(config: &ExperimentConfig) -> Result<TailReport> {
    config.iv.check_weight_bounded(&config.params)?;
    let samples = dy_samples(config)?;
    tail_report_from_samples(config, &samples)
}

/// One rung of a tail-probability ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub u: Option<f64>,
    pub eps: f64,
    /// Truncation index `m` (convergence) or approximant degree `n` (existence).
    pub m: usize,
    /// Partner index: `M_ref` for convergence, the next degree for existence.
    pub against: usize,
    pub p_hat: f64,
    pub se: f64,
    pub bound: Option<f64>,
    pub verdict: Verdict,
}

/// Verdict of one ladder (fixed `u` and `ε`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderVerdict {
    pub u: Option<f64>,
    pub eps: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub n_paths: usize,
    pub n_steps: usize,
    pub grid_spacing: f64,
    pub version: String,
}

impl RunMetadata {
    fn of(config: &ExperimentConfig) -> Self {
        Self {
            n_paths: config.n_paths,
            n_steps: config.n_steps,
            grid_spacing: config.iv.len() / config.n_steps as f64,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Tail probabilities of `|S_m(u) - ∫s_{M_ref}(u,·) dY|` over the `m` ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub config: ExperimentConfig,
    pub m_ladder: Vec<usize>,
    pub hypothesis_violations: Vec<String>,
    pub rows: Vec<LadderRow>,
    pub ladders: Vec<LadderVerdict>,
    /// Sample correlation of `C_0` and `C_2` (descriptive).
    pub coefficient_correlation_0_2: Option<f64>,
    pub verdict: Verdict,
    pub metadata: RunMetadata,
}

fn build_ladders(
    rows: &mut [LadderRow],
    keys: &[(Option<f64>, f64)],
    per_key: usize,
) -> Vec<LadderVerdict> {
    keys.iter()
        .enumerate()
        .map(|(k, &(u, eps))| {
            let chunk = &mut rows[k * per_key..(k + 1) * per_key];
            let p: Vec<f64> = chunk.iter().map(|r| r.p_hat).collect();
            let s: Vec<f64> = chunk.iter().map(|r| r.se).collect();
            let verdict = Verdict::from_bool(ladder_converges(&p, &s));
            chunk.iter_mut().for_each(|r| r.verdict = verdict);
            LadderVerdict { u, eps, verdict }
        })
        .collect()
}

/// `∫_a^b |Σ_j a_j q_j(v)|^χ dμ(v)` for a polynomial given by its orthonormal coefficients.
fn dispersion_of_expansion(params: &JacobiParams, iv: &Interval, chi: f64, coeffs: &[f64]) -> Result<f64> {
    if coeffs.iter().all(|&c| c == 0.0) {
        return Ok(0.0);
    }
    let m = coeffs.len() - 1;
    let rule = weighted_rule(params.zeta, params.eta, iv.a, iv.b, &[], Some(32.max(m / 2 + 24)))?;
    let table = orthonormal_table(params, m, &rule.nodes)?;
    Ok(rule
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let val: f64 = coeffs.iter().zip(&table).map(|(a, row)| a * row[i]).sum();
            w * val.abs().powf(chi)
        })
        .sum())
}

/// Convergence-in-probability experiment for the random Fourier–Jacobi series.
pub fn convergence_experiment(config: &ExperimentConfig) -> Result<ConvergenceReport> {
    let violations = config.convergence_violations()?;
    reject_violations(&violations, config.expect_failure)?;
    if config.m_ref < config.m_max {
        return Err(Error::InvalidParameter(format!(
            "M_ref = {} must be at least m_max = {}",
            config.m_ref, config.m_max
        )));
    }
    if config.u_points.is_empty() {
        return Err(Error::InvalidParameter("no evaluation points inside the interval".into()));
    }
    if let Some(u) = config.u_points.iter().find(|u| !config.iv.contains(**u)) {
        return Err(Error::InvalidParameter(format!("evaluation point {u} outside the interval")));
    }

    let grid = config.grid()?;
    let ladder = config.m_ladder();
    let coeffs = CoefficientVector::compute(&config.g, &config.params, config.m_ref)?;
    let integrator = RandomCoefficientIntegrator::new(&config.params, &grid, config.m_ref)?;
    let kernels = config
        .u_points
        .iter()
        .map(|&u| kernel_table(u, &coeffs, config.m_ref, &grid))
        .collect::<Result<Vec<_>>>()?;
    let q_at_u = config
        .u_points
        .iter()
        .map(|&u| eval_orthonormal_all(&config.params, config.m_ref, u))
        .collect::<Result<Vec<_>>>()?;

    struct PathResult {
        diffs: Vec<Vec<f64>>,
        c0: f64,
        c2: f64,
    }
    let per_path = run_paths(config.n_paths, |id| {
        let path = simulate_path(&config.law, &grid, &mut RngStream::new(config.master_seed, id));
        let rand = integrator.sample(&path)?;
        let diffs = kernels
            .iter()
            .zip(&q_at_u)
            .map(|(kernel, qu)| {
                let reference = kernel.integrate(&path);
                let mut out = Vec::with_capacity(ladder.len());
                let mut s = 0.0;
                let mut j = 0;
                for &m in &ladder {
                    while j <= m {
                        s += coeffs.values[j] * rand.values[j] * qu[j];
                        j += 1;
                    }
                    out.push((s - reference).abs());
                }
                out
            })
            .collect();
        Ok(PathResult { diffs, c0: rand.values[0], c2: rand.values.get(2).copied().unwrap_or(0.0) })
    })?;

    let bound_ok = config.iv.is_weight_bounded(&config.params);
    let mut rows = Vec::new();
    let mut keys = Vec::new();
    for (ui, &u) in config.u_points.iter().enumerate() {
        // dispersions of s_m(u,·) - s_M(u,·) for each m in the ladder
        let dispersions = if bound_ok {
            ladder
                .iter()
                .map(|&m| {
                    let tail: Vec<f64> = (0..=config.m_ref)
                        .map(|j| if j > m { coeffs.values[j] * q_at_u[ui][j] } else { 0.0 })
                        .collect();
                    dispersion_of_expansion(&config.params, &config.iv, config.law.chi, &tail).map(Some)
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            vec![None; ladder.len()]
        };
        for &eps in &config.eps_list {
            keys.push((Some(u), eps));
            for (mi, &m) in ladder.iter().enumerate() {
                let hits = per_path.iter().filter(|r| r.diffs[ui][mi] > eps).count();
                let p_hat = hits as f64 / config.n_paths as f64;
                rows.push(LadderRow {
                    u: Some(u),
                    eps,
                    m,
                    against: config.m_ref,
                    p_hat,
                    se: binomial_se(p_hat, config.n_paths),
                    bound: dispersions[mi].map(|b| tail_bound_formula(&config.law, b, eps)),
                    verdict: Verdict::Fail,
                });
            }
        }
    }
    let ladders = build_ladders(&mut rows, &keys, ladder.len());
    let all_pass = ladders.iter().all(|l| l.verdict.is_pass());
    let verdict = Verdict::from_bool(all_pass != config.expect_failure);

    let correlation = if config.m_ref >= 2 && config.n_paths >= 2 {
        let samples: Vec<_> = per_path
            .iter()
            .map(|r| crate::fourier_jacobi::RandomCoefficientSample { path_id: 0, values: vec![r.c0, 0.0, r.c2] })
            .collect();
        coefficient_correlation(&samples, 0, 2).ok().filter(|c| c.is_finite())
    } else {
        None
    };

    Ok(ConvergenceReport {
        config: config.clone(),
        m_ladder: ladder,
        hypothesis_violations: violations,
        rows,
        ladders,
        coefficient_correlation_0_2: correlation,
        verdict,
        metadata: RunMetadata::of(config),
    })
}

/// Cauchy-in-probability ladder for approximants `g_n` (partial Fourier–Jacobi sums of `g`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExistenceReport {
    pub config: ExperimentConfig,
    pub degrees: Vec<usize>,
    pub hypothesis_violations: Vec<String>,
    pub rows: Vec<LadderRow>,
    pub ladders: Vec<LadderVerdict>,
    pub verdict: Verdict,
    pub metadata: RunMetadata,
}

/// For consecutive degrees `d_k < d_{k+1}`, estimates `P(|∫g_{d_k} dY - ∫g_{d_{k+1}} dY| > ε)`.
pub fn existence_check(config: &ExperimentConfig, degrees: &[usize]) -> Result<ExistenceReport> {
    let violations = config.existence_violations()?;
    reject_violations(&violations, config.expect_failure)?;
    if degrees.len() < 2 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("degrees must be a strictly increasing list of length >= 2".into()));
    }
    let top = *degrees.last().expect("non-empty");
    let grid = config.grid()?;
    let coeffs = CoefficientVector::compute(&config.g, &config.params, top)?;
    let integrator = RandomCoefficientIntegrator::new(&config.params, &grid, top)?;

    let per_path = run_paths(config.n_paths, |id| {
        let path = simulate_path(&config.law, &grid, &mut RngStream::new(config.master_seed, id));
        let rand = integrator.sample(&path)?;
        let mut integrals = Vec::with_capacity(degrees.len());
        let mut s = 0.0;
        let mut j = 0;
        for &d in degrees {
            while j <= d {
                s += coeffs.values[j] * rand.values[j];
                j += 1;
            }
            integrals.push(s);
        }
        Ok(integrals.windows(2).map(|w| (w[1] - w[0]).abs()).collect::<Vec<f64>>())
    })?;

    let bound_ok = config.iv.is_weight_bounded(&config.params);
    let dispersions = degrees
        .windows(2)
        .map(|w| {
            if !bound_ok {
                return Ok(None);
            }
            let diff: Vec<f64> = (0..=w[1]).map(|j| if j > w[0] { coeffs.values[j] } else { 0.0 }).collect();
            dispersion_of_expansion(&config.params, &config.iv, config.law.chi, &diff).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut keys = Vec::new();
    for &eps in &config.eps_list {
        keys.push((None, eps));
        for (k, w) in degrees.windows(2).enumerate() {
            let hits = per_path.iter().filter(|d| d[k] > eps).count();
            let p_hat = hits as f64 / config.n_paths as f64;
            rows.push(LadderRow {
                u: None,
                eps,
                m: w[0],
                against: w[1],
                p_hat,
                se: binomial_se(p_hat, config.n_paths),
                bound: dispersions[k].map(|b| tail_bound_formula(&config.law, b, eps)),
                verdict: Verdict::Fail,
            });
        }
    }
    let ladders = build_ladders(&mut rows, &keys, degrees.len() - 1);
    let all_pass = ladders.iter().all(|l| l.verdict.is_pass());
    Ok(ExistenceReport {
        config: config.clone(),
        degrees: degrees.to_vec(),
        hypothesis_violations: violations,
        rows,
        ladders,
        verdict: Verdict::from_bool(all_pass != config.expect_failure),
        metadata: RunMetadata::of(config),
    })
}

/// Simulated paths for export, in path-index order.
pub fn sample_paths(law: &StableLaw, grid: &Grid, n_paths: usize, master_seed: u64) -> Result<Vec<SamplePath>> {
    run_paths(n_paths, |id| Ok(simulate_path(law, grid, &mut RngStream::new(master_seed, id))))
}
