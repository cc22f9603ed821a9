//! Gauss-Legendre quadrature: fixed rules, adaptive bisection, and a
//! composite rule with dyadic refinement.
//!
//! Two integration strategies are used in the crate:
//! * `adaptive` — recursive bisection, grades panels towards endpoint
//!   singularities (needed for the t^{a-1} factor of the Tricomi integral);
//! * `composite_dyadic` — uniform panels doubled until two refinements
//!   agree, used for the moment-problem checks where integrands are smooth.

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build the rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "rule order must be at least 2");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for k in 0..m {
            // Chebyshev initial guess for the k-th positive root.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let (mut p, mut dp) = legendre_with_derivative(n, x);
            for _ in 0..100 {
                let dx = -p / dp;
                x += dx;
                let (pp, dpp) = legendre_with_derivative(n, x);
                p = pp;
                dp = dpp;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x;
            weights[k] = w;
            nodes[n - 1 - k] = x;
            weights[n - 1 - k] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Apply the rule to f on [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Adaptive bisection with a 15-point kernel. A panel is accepted when its
/// value agrees with the sum over its two halves; otherwise both halves are
/// refined. `scale` seeds the absolute floor so a panel whose contribution
/// is negligible relative to the whole integral is not refined forever.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let rule = GaussLegendre::new(15);
    let whole = rule.integrate(a, b, &mut f);
    let scale = whole.abs().max(1e-300);
    let mut total = 0.0;
    // (lo, hi, estimate, depth)
    let mut stack = vec![(a, b, whole, 0u32)];
    let mut panels = 0usize;
    while let Some((lo, hi, est, depth)) = stack.pop() {
        panels += 1;
        if panels > 200_000 {
            return Err(Error::divergence("adaptive quadrature did not converge"));
        }
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(lo, mid, &mut f);
        let right = rule.integrate(mid, hi, &mut f);
        let diff = (left + right - est).abs();
        let floor = rel_tol * scale;
        if diff <= rel_tol * (left + right).abs() + 1e-3 * floor || depth >= 60 {
            total += left + right;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    Ok(total)
}

/// Composite Gauss-Legendre with dyadic subdivision: the panel count doubles
/// until two successive refinements agree to `rel_tol` relative.
pub fn composite_dyadic<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64> {
    let rule = GaussLegendre::new(20);
    let mut prev = rule.integrate(a, b, &mut f);
    let mut panels = 2usize;
    while panels <= 1 << 16 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for k in 0..panels {
            let lo = a + k as f64 * h;
            acc += rule.integrate(lo, lo + h, &mut f);
        }
        if (acc - prev).abs() <= rel_tol * acc.abs().max(1e-300) {
            return Ok(acc);
        }
        prev = acc;
        panels *= 2;
    }
    Err(Error::divergence(
        "composite quadrature did not stabilize within 2^16 panels",
    ))
}

/// Composite rule on [0, ∞) via the substitution x = u/(1-u).
pub fn composite_semi_infinite<F: FnMut(f64) -> f64>(mut f: F, rel_tol: f64) -> Result<f64> {
    composite_dyadic(
        |u| {
            let one_minus = 1.0 - u;
            if one_minus <= 0.0 {
                return 0.0;
            }
            let x = u / one_minus;
            f(x) / (one_minus * one_minus)
        },
        0.0,
        1.0,
        rel_tol,
    )
}
