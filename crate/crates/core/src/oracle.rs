//! Exact brute-force distribution of the model for small `n`.
//!
//! A graph is indexed by its canonical pair bitmask (bit `k` is the `k`-th pair
//! in lexicographic order), so `probs[mask]` is the probability of that graph.
//! Everything is accumulated in log space and exponentiated once.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pair_count, AdjacencyState};
use crate::model::{hamiltonian_from_counts, ModelParams};

pub const MAX_N: usize = 6;
/// Largest `n` accepted by [`enumerate_expensive`] (2²¹ graphs).
pub const MAX_N_EXPENSIVE: usize = 7;

/// Sorted degree sequence.
pub type DegreeSequence = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactDistribution {
    pub n: usize,
    pub log_z: f64,
    pub probs: Vec<f64>,
    pub degree_dist: BTreeMap<DegreeSequence, f64>,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn mask_degrees(n: usize, pairs: &[(usize, usize)], mask: u64) -> Vec<u32> {
    let mut d = vec![0u32; n];
    let mut m = mask;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        let (i, j) = pairs[k];
        d[i] += 1;
        d[j] += 1;
        m &= m - 1;
    }
    d
}

fn mask_weight(p: &ModelParams, degrees: &[u32]) -> f64 {
    let edges = degrees.iter().map(|&d| d as u64).sum::<u64>() / 2;
    let two_stars = degrees.iter().map(|&d| d as u64 * (d as u64).saturating_sub(1) / 2).sum();
    hamiltonian_from_counts(p, two_stars, edges)
}

/// `log Σ exp(x_i)`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Exact distribution for `2 <= n <= 6`.
pub fn enumerate(p: &ModelParams) -> Result<ExactDistribution> {
    enumerate_up_to(p, MAX_N)
}

/// Like [`enumerate`] but also accepts `n = 7` (about two million graphs).
pub fn enumerate_expensive(p: &ModelParams) -> Result<ExactDistribution> {
    enumerate_up_to(p, MAX_N_EXPENSIVE)
}

fn enumerate_up_to(p: &ModelParams, max: usize) -> Result<ExactDistribution> {
    let n = p.n();
    if !(2..=max).contains(&n) {
        return Err(Error::OracleSize { n, max });
    }
    if !p.beta1().is_finite() || !p.beta2().is_finite() {
        return Err(Error::NonFinite("model parameters"));
    }
    let pairs = pairs(n);
    let states = 1u64 << pair_count(n);
    let weights: Vec<f64> = (0..states)
        .into_par_iter()
        .map(|mask| mask_weight(p, &mask_degrees(n, &pairs, mask)))
        .collect();
    let log_z = log_sum_exp(&weights);
    let probs: Vec<f64> = weights.iter().map(|w| (w - log_z).exp()).collect();
    let mut degree_dist = BTreeMap::new();
    for (mask, &pr) in probs.iter().enumerate() {
        let mut d = mask_degrees(n, &pairs, mask as u64);
        d.sort_unstable();
        *degree_dist.entry(d).or_insert(0.0) += pr;
    }
    Ok(ExactDistribution { n, log_z, probs, degree_dist })
}

impl ExactDistribution {
    /// `P(x_ij = 1)`.
    pub fn edge_marginal(&self, i: usize, j: usize) -> Result<f64> {
        let probe = AdjacencyState::from_edges(self.n, [(i, j)])?;
        let bit = probe.to_mask().expect("oracle sizes fit in a mask");
        Ok(self
            .probs
            .iter()
            .enumerate()
            .filter(|(mask, _)| *mask as u64 & bit != 0)
            .map(|(_, p)| p)
            .sum())
    }

    pub fn summary(&self) -> ExactSummary {
        ExactSummary {
            n: self.n,
            log_z: self.log_z,
            edge_probability: self.edge_marginal(0, 1).expect("n >= 2"),
            degree_dist: self
                .degree_dist
                .iter()
                .map(|(d, &p)| DegreeSequenceProb { degrees: d.clone(), prob: p })
                .collect(),
        }
    }
}

/// `P(x_01 = 1)`; by exchangeability every pair has this marginal.
pub fn exact_edge_probability(p: &ModelParams) -> Result<f64> {
    enumerate(p)?.edge_marginal(0, 1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSequenceProb {
    pub degrees: DegreeSequence,
    pub prob: f64,
}

/// JSON view of an [`ExactDistribution`] without the full probability vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactSummary {
    pub n: usize,
    pub log_z: f64,
    pub edge_probability: f64,
    pub degree_dist: Vec<DegreeSequenceProb>,
}

/// `½ Σ |a_k - b_k|` over a shared index space.
pub fn tv_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::SupportMismatch(a.len(), b.len()));
    }
    Ok(0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>())
}

/// Total variation over the union of two keyed supports (missing keys count as 0).
pub fn tv_distance_keyed<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut total = 0.0;
    for (k, pa) in a {
        total += (pa - b.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, pb) in b {
        if !a.contains_key(k) {
            total += pb.abs();
        }
    }
    0.5 * total
}

/// Visit counts of graph states and degree sequences along a chain.
#[derive(Clone, Debug, Default)]
pub struct EmpiricalDistribution {
    n: usize,
    graph_counts: Vec<u64>,
    degree_counts: BTreeMap<DegreeSequence, u64>,
    total: u64,
}

impl EmpiricalDistribution {
    /// Graph-state counts are kept only when `C(n, 2) <= 24`.
    pub fn new(n: usize) -> Self {
        let graph_counts = if pair_count(n) <= 24 { vec![0; 1 << pair_count(n)] } else { Vec::new() };
        Self { n, graph_counts, degree_counts: BTreeMap::new(), total: 0 }
    }

    pub fn record(&mut self, g: &AdjacencyState) {
        debug_assert_eq!(g.n(), self.n);
        if !self.graph_counts.is_empty() {
            let mask = g.to_mask().expect("small graph");
            self.graph_counts[mask as usize] += 1;
        }
        let mut d = g.degrees().to_vec();
        d.sort_unstable();
        *self.degree_counts.entry(d).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn graph_probs(&self) -> Option<Vec<f64>> {
        if self.graph_counts.is_empty() || self.total == 0 {
            return None;
        }
        let t = self.total as f64;
        Some(self.graph_counts.iter().map(|&c| c as f64 / t).collect())
    }

    pub fn degree_probs(&self) -> BTreeMap<DegreeSequence, f64> {
        let t = self.total.max(1) as f64;
        self.degree_counts.iter().map(|(k, &c)| (k.clone(), c as f64 / t)).collect()
    }
}
