//! Oracles shared by the integration tests. Nothing here calls the library's
//! quadrature: integrals use double-exponential (tanh-sinh) rules.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// `∫_a^b f` by the tanh-sinh rule with step `h`.
pub fn tanh_sinh_h<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, h: f64) -> f64 {
    let (c, mid) = ((b - a) / 2.0, (a + b) / 2.0);
    let n = (4.5 / h).ceil() as i64;
    let mut sum = 0.0;
    for k in -n..=n {
        let t = k as f64 * h;
        let s = FRAC_PI_2 * t.sinh();
        let x = s.tanh();
        let w = FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        let v = mid + c * x;
        if w == 0.0 || v <= a || v >= b {
            continue;
        }
        sum += w * f(v);
    }
    c * h * sum
}

pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    tanh_sinh_h(f, a, b, 1.0 / 64.0)
}

/// Sign changes of `f` on `(a, b)`, located by bisection.
pub fn roots<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Vec<f64> {
    let n = 4000;
    let mut out = Vec::new();
    for i in 0..n {
        let (mut lo, mut hi) = (a + (b - a) * i as f64 / n as f64, a + (b - a) * (i + 1) as f64 / n as f64);
        if f(lo) * f(hi) >= 0.0 {
            continue;
        }
        for _ in 0..100 {
            let m = 0.5 * (lo + hi);
            if f(lo) * f(m) <= 0.0 {
                hi = m;
            } else {
                lo = m;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

/// `∫_a^b f`, split at the sign changes of `split_on`.
pub fn integrate_split<F: Fn(f64) -> f64, S: Fn(f64) -> f64>(f: F, split_on: S, a: f64, b: f64) -> f64 {
    let mut pts = vec![a];
    pts.extend(roots(&split_on, a, b));
    pts.push(b);
    pts.windows(2).map(|w| tanh_sinh(&f, w[0], w[1])).sum()
}

/// `(1 - u)^ζ (1 + u)^η`.
pub fn rho(zeta: f64, eta: f64, u: f64) -> f64 {
    (1.0 - u).powf(zeta) * (1.0 + u).powf(eta)
}

/// Classical `P_2^{(α,β)}` from its explicit expansion about `x = 1`.
pub fn jacobi_p2(alpha: f64, beta: f64, x: f64) -> f64 {
    let s = alpha + beta;
    (alpha + 1.0) * (alpha + 2.0) / 2.0
        + (alpha + 2.0) * (s + 3.0) * (x - 1.0) / 2.0
        + (s + 3.0) * (s + 4.0) * (x - 1.0).powi(2) / 8.0
}

/// Orthonormal degree-2 polynomial for the weight, normalized by direct integration.
pub fn q2(zeta: f64, eta: f64) -> impl Fn(f64) -> f64 {
    let norm = tanh_sinh(|x| jacobi_p2(zeta, eta, x).powi(2) * rho(zeta, eta, x), -1.0, 1.0).sqrt();
    move |x| jacobi_p2(zeta, eta, x) / norm
}

/// `2^{χ+1} C B / ((χ+1) ε^χ)`.
pub fn tail_bound_oracle(chi: f64, c: f64, b: f64, eps: f64) -> f64 {
    2f64.powf(chi + 1.0) * c * b / ((chi + 1.0) * eps.powf(chi))
}
