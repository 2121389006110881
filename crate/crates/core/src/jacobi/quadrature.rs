use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{jacobi_matrix, JacobiParams};
use crate::error::{Error, Result};

/// Nodes and weights of a quadrature rule. For rules returned by
/// [`gauss_jacobi_rule`] the weights already carry the measure `dμ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// `Σ w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    fn append(&mut self, other: QuadratureRule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
        self.order = self.nodes.len();
    }
}

/// Gauss–Jacobi rule of the given order for `dμ_{ζ,η}` on `[-1, 1]`,
/// from the eigen-decomposition of the symmetric Jacobi matrix.
pub fn gauss_jacobi_rule(params: &JacobiParams, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidParameter("quadrature order must be at least 1".into()));
    }
    let (diag, off) = jacobi_matrix(params, order);
    let mut matrix = DMatrix::<f64>::zeros(order, order);
    for i in 0..order {
        matrix[(i, i)] = diag[i];
    }
    for (i, &b) in off.iter().enumerate() {
        matrix[(i, i + 1)] = b;
        matrix[(i + 1, i)] = b;
    }
    let eigen = matrix
        .try_symmetric_eigen(f64::EPSILON, 100 * order)
        .ok_or(Error::Convergence { order })?;

    let mass = params.total_mass();
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|k| {
            let v0 = eigen.eigenvectors[(0, k)];
            (eigen.eigenvalues[k].clamp(-1.0, 1.0), mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights, order })
}

/// Points per panel and panels per smooth piece used by the composite rules.
const PANEL_ORDER: usize = 32;
const PANELS_PER_PIECE: usize = 16;

/// Composite rule for `∫_a^b F(v) (1-v)^α (1+v)^β dv` with the weight folded into
/// the returned weights.
///
/// `[a, b]` is split at `breakpoints` and each piece into equal panels. A panel
/// that touches `v = 1` (or `v = -1`) integrates the corresponding weight factor
/// exactly with a Gauss–Jacobi rule, so endpoint singularities with exponent
/// above `-1` are handled; an exponent `≤ -1` at a touched endpoint diverges and
/// is reported as [`Error::NotInSpace`].
pub fn weighted_rule(
    alpha: f64,
    beta: f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    panel_order: Option<usize>,
) -> Result<QuadratureRule> {
    if b == 1.0 && alpha <= -1.0 {
        return Err(Error::NotInSpace(format!("(1-v)^{alpha} is not integrable at v = 1")));
    }
    if a == -1.0 && beta <= -1.0 {
        return Err(Error::NotInSpace(format!("(1+v)^{beta} is not integrable at v = -1")));
    }
    let order = panel_order.unwrap_or(PANEL_ORDER).max(1);

    let mut cuts = vec![a];
    let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);

    let mut cache: Vec<((u64, u64), QuadratureRule)> = Vec::new();
    let mut rule_for = |al: f64, be: f64| -> Result<QuadratureRule> {
        let key = (al.to_bits(), be.to_bits());
        if let Some((_, r)) = cache.iter().find(|(k, _)| *k == key) {
            return Ok(r.clone());
        }
        // Rule for the bare weight (1-t)^al (1+t)^be on [-1, 1].
        let r = gauss_jacobi_rule(&JacobiParams { zeta: al, eta: be }, order)?;
        cache.push((key, r.clone()));
        Ok(r)
    };

    let mut out = QuadratureRule { nodes: Vec::new(), weights: Vec::new(), order: 0 };
    for piece in cuts.windows(2) {
        let (lo, hi) = (piece[0], piece[1]);
        let h = (hi - lo) / PANELS_PER_PIECE as f64;
        for k in 0..PANELS_PER_PIECE {
            let l = lo + k as f64 * h;
            let r = if k + 1 == PANELS_PER_PIECE { hi } else { lo + (k + 1) as f64 * h };
            let al = if r == 1.0 { alpha } else { 0.0 };
            let be = if l == -1.0 { beta } else { 0.0 };
            let base = rule_for(al, be)?;
            let half = 0.5 * (r - l);
            let mid = 0.5 * (r + l);
            let scale = half.powf(1.0 + al + be);
            let mut panel = QuadratureRule { nodes: Vec::with_capacity(order), weights: Vec::with_capacity(order), order };
            for (&t, &w) in base.nodes.iter().zip(&base.weights) {
                let v = mid + half * t;
                let mut factor = 1.0;
                if alpha - al != 0.0 {
                    factor *= (1.0 - v).powf(alpha - al);
                }
                if beta - be != 0.0 {
                    factor *= (1.0 + v).powf(beta - be);
                }
                panel.nodes.push(v);
                panel.weights.push(w * scale * factor);
            }
            out.append(panel);
        }
    }
    Ok(out)
}

/// `∫_a^b f dμ_{ζ,η}` by the composite rule of [`weighted_rule`].
pub fn integrate_weighted<F: Fn(f64) -> f64>(
    params: &JacobiParams,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    f: F,
) -> Result<f64> {
    Ok(weighted_rule(params.zeta, params.eta, a, b, breakpoints, None)?.integrate(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn order_one_is_midpoint() {
        let r = gauss_jacobi_rule(&JacobiParams::legendre(), 1).unwrap();
        assert_eq!(r.nodes.len(), 1);
        assert_abs_diff_eq!(r.nodes[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn order_two_legendre() {
        let r = gauss_jacobi_rule(&JacobiParams::legendre(), 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(r.nodes[0], -x, epsilon = 1e-15);
        assert_abs_diff_eq!(r.nodes[1], x, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.weights[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.integrate(|u| u * u), 2.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.integrate(|u| u * u * u), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn weights_sum_to_mass() {
        let p = JacobiParams::new(1.0, 1.0).unwrap();
        for n in [1, 5, 17, 64] {
            let r = gauss_jacobi_rule(&p, n).unwrap();
            assert_abs_diff_eq!(r.total_weight(), 4.0 / 3.0, epsilon = 1e-13);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(gauss_jacobi_rule(&JacobiParams::legendre(), 0).is_err());
    }

    #[test]
    fn composite_handles_endpoint_singularity() {
        // ∫_0^1 (1-v)^{-1/2} dv = 2
        let r = weighted_rule(-0.5, 0.0, 0.0, 1.0, &[], None).unwrap();
        assert_abs_diff_eq!(r.integrate(|_| 1.0), 2.0, epsilon = 1e-12);
        // ∫_{-1}^{0.5} (1+v)^{-0.3} dv = 1.5^{0.7}/0.7
        let r = weighted_rule(0.0, -0.3, -1.0, 0.5, &[], None).unwrap();
        assert_abs_diff_eq!(r.integrate(|_| 1.0), 1.5f64.powf(0.7) / 0.7, epsilon = 1e-12);
    }

    #[test]
    fn composite_divergence_is_reported() {
        assert!(matches!(
            weighted_rule(-1.0, 0.0, 0.0, 1.0, &[], None),
            Err(Error::NotInSpace(_))
        ));
        // singular factor away from the interval is harmless
        let r = weighted_rule(-2.0, 0.0, -0.5, 0.5, &[], None).unwrap();
        // ∫_{-0.5}^{0.5} (1-v)^{-2} dv = 1/0.5 - 1/1.5
        assert_abs_diff_eq!(r.integrate(|_| 1.0), 2.0 - 1.0 / 1.5, epsilon = 1e-12);
    }

    #[test]
    fn composite_respects_breakpoints() {
        // ∫_{-1}^{1} 1{v >= 0.3} dv = 0.7
        let r = weighted_rule(0.0, 0.0, -1.0, 1.0, &[0.3], None).unwrap();
        assert_abs_diff_eq!(r.integrate(|v| if v >= 0.3 { 1.0 } else { 0.0 }), 0.7, epsilon = 1e-14);
    }
}
