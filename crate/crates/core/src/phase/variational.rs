//! Generic mean-field functions for a Hamiltonian built from subgraph counts,
//! each term given as `(β_i, |E_i|)`:
//!
//! ```text
//! ψ(p) = Σ 2β_i |E_i| p^{|E_i|-1},      φ(p) = e^{ψ(p)} / (1 + e^{ψ(p)})
//! L(p) = Σ β_i p^{|E_i|} - I(p),        I(p) = ½ p log p + ½ (1-p) log(1-p)
//! ```
//!
//! `L'(p) = (ψ(p) - logit p)/2`, so every interior maximizer of `L` is a fixed
//! point of `φ`. These functions are independent of the two-star
//! parametrization used elsewhere in the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::sigmoid;

const FIXED_POINT_TOL: f64 = 1e-8;
const GRID_POINTS: usize = 20_000;

fn check_terms(terms: &[(f64, u32)]) -> Result<()> {
    if terms.is_empty() {
        return Err(Error::InvalidParameter("empty term list".into()));
    }
    for &(beta, edges) in terms {
        if !beta.is_finite() {
            return Err(Error::NonFinite("term parameter"));
        }
        if edges == 0 {
            return Err(Error::InvalidParameter("edge counts must be positive".into()));
        }
    }
    Ok(())
}

fn psi(terms: &[(f64, u32)], p: f64) -> f64 {
    terms
        .iter()
        .map(|&(beta, e)| 2.0 * beta * e as f64 * p.powi(e as i32 - 1))
        .sum()
}

/// `φ(p)` for `0 < p < 1`.
pub fn mean_field_phi(terms: &[(f64, u32)], p: f64) -> Result<f64> {
    check_terms(terms)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1), got {p}")));
    }
    Ok(sigmoid(psi(terms, p)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationalLimit {
    pub value: f64,
    pub argmax: f64,
}

/// `p` and `1 - p` for `p = σ(x)`, each accurate near its own end of (0, 1).
fn split_logit(x: f64) -> (f64, f64) {
    (sigmoid(x), sigmoid(-x))
}

fn objective_at_logit(terms: &[(f64, u32)], x: f64) -> f64 {
    let (p, q) = split_logit(x);
    let energy: f64 = terms.iter().map(|&(b, e)| b * p.powi(e as i32)).sum();
    let entropy = 0.5 * (p * p.ln() + q * q.ln());
    energy - entropy
}

/// `sup_{0<p<1} L(p)` and its maximizer.
///
/// The search runs in logit coordinates: a grid locates the global maximum,
/// then bisection on `ψ(σ(x)) - x` pins down the stationary point inside the
/// neighbouring cells. Fails if the maximizer is not a fixed point of `φ`
/// within `1e-8`.
pub fn log_partition_limit(terms: &[(f64, u32)]) -> Result<VariationalLimit> {
    check_terms(terms)?;
    // |ψ| is bounded by Σ 2|β|·|E|, so every fixed point has |logit p| below it.
    let bound: f64 = terms.iter().map(|&(b, e)| 2.0 * b.abs() * e as f64).sum::<f64>() + 5.0;
    let step = 2.0 * bound / GRID_POINTS as f64;
    let xs = |k: usize| -bound + k as f64 * step;

    let best = (0..=GRID_POINTS)
        .map(|k| (k, objective_at_logit(terms, xs(k))))
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });

    let slope = |x: f64| psi(terms, sigmoid(x)) - x;
    let lo = xs(best.0.saturating_sub(1));
    let hi = xs((best.0 + 1).min(GRID_POINTS));
    let x_star = if slope(lo) >= 0.0 && slope(hi) <= 0.0 {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if slope(mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    } else {
        return Err(Error::Numerical(format!(
            "no stationary point bracketed around logit {}",
            xs(best.0)
        )));
    };

    let argmax = sigmoid(x_star);
    let residual = sigmoid(psi(terms, argmax)) - argmax;
    if residual.abs() >= FIXED_POINT_TOL {
        return Err(Error::Numerical(format!(
            "maximizer {argmax} violates p = phi(p) by {residual}"
        )));
    }
    Ok(VariationalLimit { value: objective_at_logit(terms, x_star), argmax })
}
