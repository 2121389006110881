use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::quadrature::{gauss_jacobi_rule, weighted_rule};
use super::{ln_norm_sq, orthonormal_table, Interval, JacobiParams};
use crate::error::{Error, Result};

/// Endpoint of `[-1, 1]` carrying a power singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Minus,
    Plus,
}

impl Endpoint {
    pub fn value(self) -> f64 {
        match self {
            Endpoint::Minus => -1.0,
            Endpoint::Plus => 1.0,
        }
    }
}

/// Closed catalog of integrands whose weighted `L^p` membership is decidable.
///
/// Text grammar: `poly:c0,c1,...` (monomial coefficients, lowest first),
/// `power:s,center` for `|v - center|^s` with `center ∈ {-1, 1}`,
/// `step:x0` for the indicator of `v ≥ x0`, `cos:k` for `cos(k v)`, and
/// `const:v` as shorthand for a degree-zero polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TestFunction {
    Polynomial { coefficients: Vec<f64> },
    PowerSingularity { exponent: f64, center: Endpoint },
    Step { jump: f64 },
    Cosine { frequency: f64 },
}

impl TestFunction {
    pub fn constant(value: f64) -> Self {
        TestFunction::Polynomial { coefficients: vec![value] }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn polynomial(coefficients: Vec<f64>) -> Self {
        TestFunction::Polynomial { coefficients }
    }

    pub fn power_singularity(exponent: f64, center: Endpoint) -> Self {
        TestFunction::PowerSingularity { exponent, center }
    }

    pub fn step(jump: f64) -> Self {
        TestFunction::Step { jump }
    }

    pub fn cosine(frequency: f64) -> Self {
        TestFunction::Cosine { frequency }
    }

    /// The orthonormal polynomial `q_m` written in the monomial basis.
    /// Intended for small `m`; the monomial form loses accuracy past degree ~30.
    pub fn orthonormal(params: &JacobiParams, m: usize) -> Self {
        let (al, be) = (params.zeta, params.eta);
        let s = al + be;
        let mut prev = vec![1.0];
        let mut cur = vec![(al + 1.0) - 0.5 * (s + 2.0), 0.5 * (s + 2.0)];
        let poly = if m == 0 {
            prev
        } else {
            for n in 2..=m {
                let n = n as f64;
                let t = 2.0 * n + s;
                let a1 = 2.0 * n * (n + s) * (t - 2.0);
                let a2 = (t - 1.0) * (al * al - be * be);
                let a3 = (t - 2.0) * (t - 1.0) * t;
                let a4 = 2.0 * (n + al - 1.0) * (n + be - 1.0) * t;
                let mut next = vec![0.0; cur.len() + 1];
                for (k, &c) in cur.iter().enumerate() {
                    next[k] += a2 * c;
                    next[k + 1] += a3 * c;
                }
                for (k, &c) in prev.iter().enumerate() {
                    next[k] -= a4 * c;
                }
                next.iter_mut().for_each(|c| *c /= a1);
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        };
        let scale = (-0.5 * ln_norm_sq(params, m)).exp();
        TestFunction::Polynomial { coefficients: poly.into_iter().map(|c| c * scale).collect() }
    }

    /// `α·self + β·other` when the result stays in the catalog.
    pub fn combine(&self, alpha: f64, other: &TestFunction, beta: f64) -> Option<TestFunction> {
        match (self, other) {
            (TestFunction::Polynomial { coefficients: f }, TestFunction::Polynomial { coefficients: g }) => {
                let n = f.len().max(g.len());
                let coefficients = (0..n)
                    .map(|k| alpha * f.get(k).copied().unwrap_or(0.0) + beta * g.get(k).copied().unwrap_or(0.0))
                    .collect();
                Some(TestFunction::Polynomial { coefficients })
            }
            _ => None,
        }
    }

    /// Pointwise value; may be infinite at a power singularity.
    pub fn eval(&self, v: f64) -> f64 {
        match self {
            TestFunction::Polynomial { coefficients } => {
                coefficients.iter().rev().fold(0.0, |acc, &c| acc * v + c)
            }
            TestFunction::PowerSingularity { exponent, center } => match center {
                Endpoint::Plus => (1.0 - v).powf(*exponent),
                Endpoint::Minus => (1.0 + v).powf(*exponent),
            },
            TestFunction::Step { jump } => {
                if v >= *jump {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::Cosine { frequency } => (frequency * v).cos(),
        }
    }

    /// Pointwise value, failing where the function is not finite.
    pub fn try_eval(&self, v: f64) -> Result<f64> {
        let y = self.eval(v);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { at: v, reason: format!("{self} is not finite") })
        }
    }

    /// Degree for polynomial kinds (trailing zero coefficients ignored).
    pub fn degree(&self) -> Option<usize> {
        match self {
            TestFunction::Polynomial { coefficients } => {
                Some(coefficients.iter().rposition(|&c| c != 0.0).unwrap_or(0))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TestFunction::Polynomial { coefficients } if coefficients.iter().all(|&c| c == 0.0))
    }

    /// Points of `(a, b)` where `|g|^p` may fail to be smooth: jumps and sign changes.
    pub fn kinks(&self, a: f64, b: f64) -> Vec<f64> {
        match self {
            TestFunction::Step { jump } if *jump > a && *jump < b => vec![*jump],
            TestFunction::Step { .. } | TestFunction::PowerSingularity { .. } => Vec::new(),
            _ if self.is_zero() => Vec::new(),
            _ => sign_changes(|v| self.eval(v), a, b),
        }
    }

    /// Whether `g ∈ L^p([a, b], dμ_{ζ,η})`. Only the power kind can fail, and only
    /// when its singular endpoint belongs to the interval.
    pub fn in_lp(&self, p: f64, params: &JacobiParams, iv: &Interval) -> bool {
        match self {
            TestFunction::PowerSingularity { exponent, center } => {
                if *exponent >= 0.0 {
                    return true;
                }
                let (touches, weight_exp) = match center {
                    Endpoint::Plus => (iv.b == 1.0, params.zeta),
                    Endpoint::Minus => (iv.a == -1.0, params.eta),
                };
                !touches || exponent * p + weight_exp > -1.0
            }
            _ => true,
        }
    }
}

fn sign_changes<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Vec<f64> {
    const SCAN: usize = 2048;
    let h = (b - a) / SCAN as f64;
    let mut roots = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=SCAN {
        let x1 = if i == SCAN { b } else { a + i as f64 * h };
        let f1 = f(x1);
        if f1 == 0.0 && i < SCAN {
            roots.push(x1);
        } else if f0 * f1 < 0.0 {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            for _ in 0..64 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Polynomial { coefficients } => {
                let parts: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            TestFunction::PowerSingularity { exponent, center } => {
                write!(f, "power:{},{}", exponent, center.value())
            }
            TestFunction::Step { jump } => write!(f, "step:{jump}"),
            TestFunction::Cosine { frequency } => write!(f, "cos:{frequency}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("test function `{s}` lacks a `kind:` prefix")))?;
        let numbers = |text: &str| -> Result<Vec<f64>> {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number `{t}` in `{s}`")))
                })
                .collect()
        };
        let values = numbers(rest)?;
        let single = |name: &str| -> Result<f64> {
            match values.as_slice() {
                [x] => Ok(*x),
                _ => Err(Error::Parse(format!("`{name}` takes exactly one value, got `{s}`"))),
            }
        };
        match kind {
            "poly" => Ok(TestFunction::Polynomial { coefficients: values }),
            "const" => Ok(TestFunction::constant(single("const")?)),
            "step" => Ok(TestFunction::step(single("step")?)),
            "cos" => Ok(TestFunction::cosine(single("cos")?)),
            "power" => match values.as_slice() {
                [exponent, center] => {
                    let center = if *center == 1.0 {
                        Endpoint::Plus
                    } else if *center == -1.0 {
                        Endpoint::Minus
                    } else {
                        return Err(Error::Parse(format!("power center must be -1 or 1, got {center}")));
                    };
                    Ok(TestFunction::power_singularity(*exponent, center))
                }
                _ => Err(Error::Parse(format!("`power` takes `s,center`, got `{s}`"))),
            },
            other => Err(Error::Parse(format!("unknown test function kind `{other}`"))),
        }
    }
}

/// `∫_a^b |g|^p dμ` for the measure with exponents `weight`.
pub fn weighted_abs_power_integral(
    g: &TestFunction,
    p: f64,
    weight: &JacobiParams,
    iv: &Interval,
) -> Result<f64> {
    if !g.in_lp(p, weight, iv) {
        return Err(Error::NotInSpace(format!(
            "{g} is not in L^{p} on [{}, {}] for weight exponents ({}, {})",
            iv.a, iv.b, weight.zeta, weight.eta
        )));
    }
    if g.is_zero() {
        return Ok(0.0);
    }
    match g {
        TestFunction::PowerSingularity { exponent, center } => {
            let (al, be) = match center {
                Endpoint::Plus => (weight.zeta + exponent * p, weight.eta),
                Endpoint::Minus => (weight.zeta, weight.eta + exponent * p),
            };
            Ok(weighted_rule(al, be, iv.a, iv.b, &[], None)?.integrate(|_| 1.0))
        }
        _ => {
            let rule = weighted_rule(weight.zeta, weight.eta, iv.a, iv.b, &g.kinks(iv.a, iv.b), None)?;
            Ok(rule.integrate(|v| g.eval(v).abs().powf(p)))
        }
    }
}

/// `(∫_a^b |g|^p dμ)^{1/p}`; [`Error::NotInSpace`] when the integral diverges.
pub fn weighted_lp_norm(g: &TestFunction, p: f64, params: &JacobiParams, iv: &Interval) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must be a finite value >= 1, got {p}")));
    }
    Ok(weighted_abs_power_integral(g, p, params, iv)?.powf(1.0 / p))
}

/// Fourier–Jacobi coefficients `c_0, ..., c_M` with `c_m = ∫_{-1}^{1} g q_m dμ`.
///
/// Polynomials use a Gauss–Jacobi rule exact for `g q_m`; cosines use a
/// Gauss–Jacobi rule long enough to resolve the Taylor tail; steps and power
/// singularities use the composite rule split at the jump, with the singular
/// factor folded into the endpoint panels.
pub fn fourier_jacobi_coefficients(g: &TestFunction, params: &JacobiParams, max_m: usize) -> Result<Vec<f64>> {
    let full = Interval::full();
    if !g.in_lp(1.0, params, &full) {
        return Err(Error::NotInSpace(format!("{g} is not integrable against the Jacobi measure")));
    }
    if g.is_zero() {
        return Ok(vec![0.0; max_m + 1]);
    }
    let (rule, smooth_factor): (_, Box<dyn Fn(f64) -> f64>) = match g {
        TestFunction::Polynomial { .. } => {
            let deg = g.degree().unwrap_or(0);
            let order = 64.max(max_m + 1 + deg.div_ceil(2));
            (gauss_jacobi_rule(params, order)?, Box::new(|v| g.eval(v)))
        }
        TestFunction::Cosine { frequency } => {
            let order = 64.max(max_m / 2 + 32 + frequency.abs().ceil() as usize);
            (gauss_jacobi_rule(params, order)?, Box::new(|v| g.eval(v)))
        }
        TestFunction::Step { jump } => {
            let rule = weighted_rule(params.zeta, params.eta, -1.0, 1.0, &[*jump], Some(panel_order(max_m)))?;
            (rule, Box::new(|v| g.eval(v)))
        }
        TestFunction::PowerSingularity { exponent, center } => {
            let (al, be) = match center {
                Endpoint::Plus => (params.zeta + exponent, params.eta),
                Endpoint::Minus => (params.zeta, params.eta + exponent),
            };
            (weighted_rule(al, be, -1.0, 1.0, &[], Some(panel_order(max_m)))?, Box::new(|_| 1.0))
        }
    };
    let table = orthonormal_table(params, max_m, &rule.nodes)?;
    let gw: Vec<f64> = rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| w * smooth_factor(x)).collect();
    Ok(table
        .iter()
        .map(|row| row.iter().zip(&gw).map(|(q, w)| q * w).sum())
        .collect())
}

fn panel_order(max_m: usize) -> usize {
    32.max(max_m.div_ceil(2) + 16)
}

/// Single coefficient `c_m`.
pub fn fourier_jacobi_coefficient(g: &TestFunction, m: usize, params: &JacobiParams) -> Result<f64> {
    Ok(fourier_jacobi_coefficients(g, params, m)?[m])
}
