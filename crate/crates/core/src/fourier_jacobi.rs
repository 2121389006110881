//! Random Fourier–Jacobi series.
//!
//! For deterministic coefficients `c_j` of `g` and random coefficients
//! `C_j(ω) = ∫_a^b q_j dY`, the partial sums are
//! `S_m(u, ω) = Σ_{j ≤ m} c_j C_j(ω) q_j(u)`. The limit object is represented by
//! the high-order kernel truncation `G_u(v) = s_{M_ref}(u, v)` integrated against `dY`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{eval_orthonormal_all, fourier_jacobi_coefficients, orthonormal_table, Interval, JacobiParams, TestFunction};
use crate::stable_process::{Grid, PathLabel, SamplePath};
use crate::stochastic_integral::IntegrandTable;

/// Deterministic coefficients `c_0, ..., c_M` of a test function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub params: JacobiParams,
    pub values: Vec<f64>,
    pub source: TestFunction,
}

impl CoefficientVector {
    pub fn compute(g: &TestFunction, params: &JacobiParams, max_m: usize) -> Result<Self> {
        let values = fourier_jacobi_coefficients(g, params, max_m)?;
        if let Some(bad) = values.iter().position(|c| !c.is_finite()) {
            return Err(Error::Evaluation { at: bad as f64, reason: "non-finite coefficient".into() });
        }
        Ok(Self { params: *params, values, source: g.clone() })
    }

    /// Highest available index `M`.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// CSV with header `m,c_m`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,c_m\n");
        for (m, c) in self.values.iter().enumerate() {
            out.push_str(&format!("{m},{c}\n"));
        }
        out
    }

    fn check_index(&self, m: usize) -> Result<()> {
        if m > self.max_index() {
            return Err(Error::Index(format!("m = {m} exceeds the {} available coefficients", self.values.len())));
        }
        Ok(())
    }
}

/// `C_0(ω), ..., C_M(ω)` from a single path realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCoefficientSample {
    pub path_id: u64,
    pub values: Vec<f64>,
}

/// `C_m(ω) = ∫_a^b q_m dY`.
pub fn random_coefficient(m: usize, params: &JacobiParams, path: &SamplePath) -> Result<f64> {
    if path.label != PathLabel::X {
        return Err(Error::InvalidParameter("expected a path of the driving process X".into()));
    }
    let q = orthonormal_table(params, m, path.grid.left_points())?.swap_remove(m);
    Ok(IntegrandTable::from_values(&path.grid, q)?.weighted_by(params, &path.grid)?.integrate(path))
}

/// Precomputed `q_j(v_i) ρ(v_i)` tables for computing all `C_j` of a path at once.
#[derive(Debug, Clone)]
pub struct RandomCoefficientIntegrator {
    params: JacobiParams,
    grid: Grid,
    tables: Vec<IntegrandTable>,
}

impl RandomCoefficientIntegrator {
    pub fn new(params: &JacobiParams, grid: &Grid, max_m: usize) -> Result<Self> {
        params.require_nonnegative()?;
        let rows = orthonormal_table(params, max_m, grid.left_points())?;
        let tables = rows
            .into_iter()
            .map(|row| IntegrandTable::from_values(grid, row)?.weighted_by(params, grid))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { params: *params, grid: grid.clone(), tables })
    }

    pub fn params(&self) -> &JacobiParams {
        &self.params
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn sample(&self, path: &SamplePath) -> Result<RandomCoefficientSample> {
        if path.label != PathLabel::X {
            return Err(Error::InvalidParameter("expected a path of the driving process X".into()));
        }
        if path.grid.points.len() != self.grid.points.len() {
            return Err(Error::InvalidParameter("path grid does not match the integrator grid".into()));
        }
        Ok(RandomCoefficientSample { path_id: path.path_id, values: self.tables.iter().map(|t| t.integrate(path)).collect() })
    }
}

/// All random coefficients `C_0..C_M` of one path.
pub fn random_coefficients(params: &JacobiParams, path: &SamplePath, max_m: usize) -> Result<RandomCoefficientSample> {
    RandomCoefficientIntegrator::new(params, &path.grid, max_m)?.sample(path)
}

/// `s_m(u, v) = Σ_{j ≤ m} c_j q_j(u) q_j(v)`.
pub fn kernel_sm(u: f64, coeffs: &CoefficientVector, m: usize, v: f64) -> Result<f64> {
    coeffs.check_index(m)?;
    let qu = eval_orthonormal_all(&coeffs.params, m, u)?;
    let qv = eval_orthonormal_all(&coeffs.params, m, v)?;
    Ok((0..=m).map(|j| coeffs.values[j] * qu[j] * qv[j]).sum())
}

/// `S_m(u, ω) = Σ_{j ≤ m} c_j C_j(ω) q_j(u)`.
pub fn partial_sum(u: f64, coeffs: &CoefficientVector, rand: &RandomCoefficientSample, m: usize) -> Result<f64> {
    coeffs.check_index(m)?;
    if m >= rand.values.len() {
        return Err(Error::Index(format!("m = {m} exceeds the {} random coefficients", rand.values.len())));
    }
    let qu = eval_orthonormal_all(&coeffs.params, m, u)?;
    Ok((0..=m).map(|j| coeffs.values[j] * rand.values[j] * qu[j]).sum())
}

/// Table of `s_m(u, v_i) ρ(v_i)` on the grid, for integrating the kernel against `dX`.
pub fn kernel_table(u: f64, coeffs: &CoefficientVector, m: usize, grid: &Grid) -> Result<IntegrandTable> {
    coeffs.check_index(m)?;
    coeffs.params.require_nonnegative()?;
    let qu = eval_orthonormal_all(&coeffs.params, m, u)?;
    let rows = orthonormal_table(&coeffs.params, m, grid.left_points())?;
    let mut values = vec![0.0; grid.n_steps];
    for j in 0..=m {
        let a = coeffs.values[j] * qu[j];
        for (acc, q) in values.iter_mut().zip(&rows[j]) {
            *acc += a * q;
        }
    }
    IntegrandTable::from_values(grid, values)?.weighted_by(&coeffs.params, grid)
}

/// `∫_a^b s_{M_ref}(u, v) dY(v)` on the given path.
pub fn reference_integral(
    u: f64,
    coeffs: &CoefficientVector,
    params: &JacobiParams,
    path: &SamplePath,
    m_ref: usize,
) -> Result<f64> {
    if coeffs.params != *params {
        return Err(Error::InvalidParameter("coefficients were computed for different Jacobi parameters".into()));
    }
    if path.label != PathLabel::X {
        return Err(Error::InvalidParameter("expected a path of the driving process X".into()));
    }
    Ok(kernel_table(u, coeffs, m_ref, &path.grid)?.integrate(path))
}

/// Open window `(lower, upper)` of admissible `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PRange {
    pub lower: f64,
    pub upper: f64,
}

impl PRange {
    /// Strict containment `lower < p < upper`.
    pub fn contains(&self, p: f64) -> bool {
        self.lower < p && p < self.upper
    }
}

/// `4 max{(ζ+1)/(2ζ+3), (η+1)/(2η+3)} < p < 4 min{(ζ+1)/(2ζ+1), (η+1)/(2η+1)}`.
pub fn p_range(params: &JacobiParams) -> Result<PRange> {
    params.require_nonnegative()?;
    let lo = |x: f64| (x + 1.0) / (2.0 * x + 3.0);
    let hi = |x: f64| (x + 1.0) / (2.0 * x + 1.0);
    let range = PRange {
        lower: 4.0 * lo(params.zeta).max(lo(params.eta)),
        upper: 4.0 * hi(params.zeta).min(hi(params.eta)),
    };
    assert!(range.lower < range.upper, "empty p window for {params:?}");
    Ok(range)
}

/// Parameters `(ζ, ζ)` on the full segment `[-1, 1]`, where `(1 - u²)^ζ ≤ 1`.
pub fn ultraspherical_config(zeta: f64) -> Result<(JacobiParams, Interval)> {
    if !(zeta >= 0.0 && zeta.is_finite()) {
        return Err(Error::InvalidParameter(format!("ultraspherical exponent must be >= 0, got {zeta}")));
    }
    let params = JacobiParams::new(zeta, zeta)?;
    let iv = Interval::full();
    iv.check_weight_bounded(&params)?;
    Ok((params, iv))
}

/// Pearson correlation of `C_i` and `C_j` across samples. Descriptive only:
/// for `χ < 2` the coefficients have no finite variance.
pub fn coefficient_correlation(samples: &[RandomCoefficientSample], i: usize, j: usize) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let n = samples.len() as f64;
    let get = |s: &RandomCoefficientSample, k: usize| -> Result<f64> {
        s.values.get(k).copied().ok_or_else(|| Error::Index(format!("coefficient {k} not sampled")))
    };
    let xs = samples.iter().map(|s| get(s, i)).collect::<Result<Vec<_>>>()?;
    let ys = samples.iter().map(|s| get(s, j)).collect::<Result<Vec<_>>>()?;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_process::{simulate_path, RngStream, StableLaw};
    use approx::assert_abs_diff_eq;

    fn grid(a: f64, b: f64, n: usize) -> Grid {
        Grid::new(Interval::new(a, b).unwrap(), n).unwrap()
    }

    #[test]
    fn p_range_examples() {
        let r = p_range(&JacobiParams::new(0.0, 0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.lower, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.upper, 4.0, epsilon = 1e-15);
        let r = p_range(&JacobiParams::new(1.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.lower, 1.6, epsilon = 1e-15);
        assert_abs_diff_eq!(r.upper, 8.0 / 3.0, epsilon = 1e-15);
        let r = p_range(&JacobiParams::new(0.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.lower, 1.6, epsilon = 1e-15);
        assert_abs_diff_eq!(r.upper, 8.0 / 3.0, epsilon = 1e-15);
        assert!(!r.contains(1.6));
        assert!(r.contains(2.0));
        assert!(p_range(&JacobiParams::new(-0.5, 0.0).unwrap()).is_err());
    }

    #[test]
    fn ultraspherical_examples() {
        let (p, iv) = ultraspherical_config(0.0).unwrap();
        assert_eq!(p, JacobiParams::legendre());
        assert_eq!(iv, Interval::full());
        let r = p_range(&p).unwrap();
        assert_abs_diff_eq!(r.lower, 4.0 / 3.0, epsilon = 1e-15);
        let (p, _) = ultraspherical_config(1.0).unwrap();
        let r = p_range(&p).unwrap();
        assert_abs_diff_eq!(r.lower, 1.6, epsilon = 1e-15);
        assert_abs_diff_eq!(r.upper, 8.0 / 3.0, epsilon = 1e-15);
        assert!(ultraspherical_config(-0.1).is_err());
    }

    #[test]
    fn random_coefficient_examples() {
        let params = JacobiParams::legendre();
        let flat = SamplePath::from_fn(grid(-0.5, 0.5, 64), PathLabel::X, |_| 2.0);
        assert_eq!(random_coefficient(4, &params, &flat).unwrap(), 0.0);

        let path = simulate_path(&StableLaw::new(1.5, 1.0).unwrap(), &grid(-0.5, 0.5, 512), &mut RngStream::new(5, 1));
        let c0 = random_coefficient(0, &params, &path).unwrap();
        assert_abs_diff_eq!(c0, std::f64::consts::FRAC_1_SQRT_2 * path.terminal(), epsilon = 1e-12);

        let ident = SamplePath::from_fn(grid(-0.5, 0.5, 4096), PathLabel::X, |v| v);
        assert!(random_coefficient(1, &params, &ident).unwrap().abs() < 2e-4);
    }

    #[test]
    fn integrator_matches_single_coefficient_route() {
        let params = JacobiParams::new(1.0, 0.5).unwrap();
        let path = simulate_path(&StableLaw::new(1.2, 1.0).unwrap(), &grid(-0.3, 0.6, 300), &mut RngStream::new(9, 2));
        let all = random_coefficients(&params, &path, 6).unwrap();
        for m in 0..=6 {
            assert_abs_diff_eq!(all.values[m], random_coefficient(m, &params, &path).unwrap(), epsilon = 1e-12);
        }
        assert_eq!(all.path_id, 2);
    }

    #[test]
    fn kernel_examples() {
        let params = JacobiParams::new(0.5, 1.0).unwrap();
        let q1 = TestFunction::orthonormal(&params, 1);
        let coeffs = CoefficientVector::compute(&q1, &params, 4).unwrap();
        let (u, v) = (0.2, -0.7);
        let q1u = q1.eval(u);
        let q1v = q1.eval(v);
        assert_abs_diff_eq!(kernel_sm(u, &coeffs, 3, v).unwrap(), q1u * q1v, epsilon = 1e-12);
        let zero = CoefficientVector::compute(&TestFunction::zero(), &params, 4).unwrap();
        assert_eq!(kernel_sm(u, &zero, 4, v).unwrap(), 0.0);
        assert!(kernel_sm(u, &zero, 5, v).is_err());
    }

    #[test]
    fn partial_sum_single_term() {
        let params = JacobiParams::legendre();
        let coeffs = CoefficientVector { params, values: vec![1.0, 0.0, 0.0], source: TestFunction::zero() };
        let rand = RandomCoefficientSample { path_id: 0, values: vec![0.7, 5.0, -2.0] };
        let u = 0.3;
        assert_abs_diff_eq!(partial_sum(u, &coeffs, &rand, 2).unwrap(), std::f64::consts::FRAC_1_SQRT_2 * 0.7, epsilon = 1e-15);
        assert!(partial_sum(u, &coeffs, &rand, 3).is_err());
        let short = RandomCoefficientSample { path_id: 0, values: vec![0.7] };
        assert!(partial_sum(u, &coeffs, &short, 1).is_err());
    }

    #[test]
    fn csv_export() {
        let coeffs = CoefficientVector { params: JacobiParams::legendre(), values: vec![1.5, -0.25], source: TestFunction::zero() };
        assert_eq!(coeffs.to_csv(), "m,c_m\n0,1.5\n1,-0.25\n");
    }

    #[test]
    fn correlation_needs_two_samples() {
        let s = RandomCoefficientSample { path_id: 0, values: vec![1.0, 2.0] };
        assert!(coefficient_correlation(std::slice::from_ref(&s), 0, 1).is_err());
        let t = RandomCoefficientSample { path_id: 1, values: vec![2.0, 4.0] };
        assert_abs_diff_eq!(coefficient_correlation(&[s, t], 0, 1).unwrap(), 1.0, epsilon = 1e-15);
    }
}
