//! Model parameters and the unnormalized log-probability of the edge/two-star
//! model
//!
//! ```text
//! H(x) = β₂/(n-1) · T(x) + (β₁ + β₂/(n-1)) · E(x)
//! ```
//!
//! together with the spin reparametrization `θ₁ = (β₁ + β₂)/2`, `θ₂ = β₂/4`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AdjacencyState;
use crate::sampler::AuxiliaryState;

/// Parameters `(n, β₁, β₂)`. The spin parameters are always derived from the
/// β-pair, never stored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    beta1: f64,
    beta2: f64,
}

impl ModelParams {
    /// Checked constructor: requires `n >= 2`, finite parameters and `β₂ > 0`.
    pub fn new(n: usize, beta1: f64, beta2: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        if !beta1.is_finite() || !beta2.is_finite() {
            return Err(Error::NonFinite("model parameters"));
        }
        if beta2 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "two-star parameter beta2 must be > 0, got {beta2}"
            )));
        }
        Ok(Self { n, beta1, beta2 })
    }

    /// Builds parameters from the spin pair: `β₂ = 4θ₂`, `β₁ = 2θ₁ - 4θ₂`.
    pub fn from_theta(n: usize, theta1: f64, theta2: f64) -> Result<Self> {
        Self::new(n, 2.0 * theta1 - 4.0 * theta2, 4.0 * theta2)
    }

    /// No validation at all. Used for the Erdős–Rényi limit `β₂ = 0` in the
    /// oracle and the Glauber sampler; the Gibbs sampler rejects `θ₂ <= 0`.
    pub fn new_unchecked(n: usize, beta1: f64, beta2: f64) -> Self {
        Self { n, beta1, beta2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn beta1(&self) -> f64 {
        self.beta1
    }
    #[inline]
    pub fn beta2(&self) -> f64 {
        self.beta2
    }
    #[inline]
    pub fn theta1(&self) -> f64 {
        0.5 * (self.beta1 + self.beta2)
    }
    #[inline]
    pub fn theta2(&self) -> f64 {
        0.25 * self.beta2
    }

    /// Same parameters on a different vertex count.
    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..*self }
    }

    /// Coefficient `β₂/(n-1)` multiplying each two-star.
    #[inline]
    pub fn two_star_weight(&self) -> f64 {
        self.beta2 / (self.n - 1) as f64
    }

    /// Coefficient `β₁ + β₂/(n-1)` multiplying each edge.
    #[inline]
    pub fn edge_weight(&self) -> f64 {
        self.beta1 + self.two_star_weight()
    }

    fn check_graph(&self, g: &AdjacencyState) -> Result<()> {
        if g.n() != self.n {
            Err(Error::DimensionMismatch { expected: self.n, got: g.n() })
        } else {
            Ok(())
        }
    }
}

/// Exponent of the unnormalized probability: `log P(x) = H(x) - log Z_n`.
pub fn hamiltonian(p: &ModelParams, g: &AdjacencyState) -> Result<f64> {
    p.check_graph(g)?;
    Ok(hamiltonian_from_counts(p, g.two_star_count(), g.edge_count()))
}

#[inline]
pub(crate) fn hamiltonian_from_counts(p: &ModelParams, two_stars: u64, edges: u64) -> f64 {
    p.two_star_weight() * two_stars as f64 + p.edge_weight() * edges as f64
}

/// `log P(x^{+e}) - log P(x^{-e})` for the pair `{i, j}` given the rest of the
/// graph: `β₂/(n-1) · #{edges sharing a vertex with e} + β₁ + β₂/(n-1)`.
pub fn conditional_log_odds(p: &ModelParams, g: &AdjacencyState, i: usize, j: usize) -> Result<f64> {
    p.check_graph(g)?;
    let present = g.has_edge(i, j)? as u32;
    let neighbours = g.degrees()[i] + g.degrees()[j] - 2 * present;
    Ok(p.two_star_weight() * neighbours as f64 + p.edge_weight())
}

/// Logistic function, evaluated without overflow for any finite argument.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `log cosh z = |z| - log 2 + log(1 + e^{-2|z|})`.
#[inline]
pub fn log_cosh(z: f64) -> f64 {
    let a = z.abs();
    a - std::f64::consts::LN_2 + (-2.0 * a).exp().ln_1p()
}

/// `P(x_ij = 1 | φ) = σ(2θ₂(φ_i + φ_j) + 2θ₁)`.
pub fn conditional_edge_prob(p: &ModelParams, phi_i: f64, phi_j: f64) -> Result<f64> {
    if !phi_i.is_finite() || !phi_j.is_finite() {
        return Err(Error::NonFinite("auxiliary variable"));
    }
    Ok(sigmoid(2.0 * p.theta2() * (phi_i + phi_j) + 2.0 * p.theta1()))
}

/// Log of the unnormalized marginal density of the auxiliary variables,
///
/// ```text
/// log f_n(φ) = -((n-1)θ₂/2) Σ φ_i² + Σ_{i<j} log cosh(θ₂(φ_i + φ_j) + θ₁).
/// ```
pub fn log_f_n(p: &ModelParams, phi: &AuxiliaryState) -> Result<f64> {
    let phi = phi.as_slice();
    if phi.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: phi.len() });
    }
    let (t1, t2) = (p.theta1(), p.theta2());
    let quad: f64 = phi.iter().map(|x| x * x).sum();
    let mut pairs = 0.0;
    for (i, &a) in phi.iter().enumerate() {
        for &b in &phi[i + 1..] {
            pairs += log_cosh(t2 * (a + b) + t1);
        }
    }
    Ok(-0.5 * (p.n() - 1) as f64 * t2 * quad + pairs)
}
