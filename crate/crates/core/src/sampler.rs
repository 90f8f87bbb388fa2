//! Markov chains targeting the edge/two-star model.
//!
//! [`GibbsChain`] is the auxiliary-variable sampler: given the graph, draw
//! independent `φ_i ~ N(k_i/(n-1), 1/((n-1)θ₂))`; given `φ`, redraw every edge
//! independently with probability `σ(2θ₂(φ_i + φ_j) + 2θ₁)`. One sweep is one
//! such alternation and resamples all `C(n, 2)` edges at once.
//!
//! [`GlauberChain`] is the single-edge heat-bath baseline. One of its sweeps is
//! `C(n, 2)` updates at uniformly chosen pairs.
//!
//! Each chain owns its own [`ChainRng`]. Independent chains get their seeds
//! from [`derive_seed`], so a chain's trajectory depends only on
//! `(master seed, chain index)` and not on scheduling.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{summarize, DegreeSummary, DEFAULT_BINS};
use crate::error::{Error, Result};
use crate::graph::{pair_count, AdjacencyState};
use crate::model::{conditional_log_odds, sigmoid, ModelParams};

/// Generator used by every chain.
pub type ChainRng = ChaCha8Rng;

pub fn chain_rng(seed: u64) -> ChainRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of stream `index` under `master` (SplitMix64 finalizer over the pair).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The auxiliary vector `φ ∈ ℝⁿ`; all entries finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxiliaryState {
    phi: Vec<f64>,
}

impl AuxiliaryState {
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if phi.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("auxiliary variable"));
        }
        Ok(Self { phi })
    }

    pub fn zeros(n: usize) -> Self {
        Self { phi: vec![0.0; n] }
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.phi
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialGraph {
    Empty,
    Complete,
    ErdosRenyi(f64),
    Given(AdjacencyState),
}

impl Default for InitialGraph {
    fn default() -> Self {
        InitialGraph::ErdosRenyi(0.5)
    }
}

impl InitialGraph {
    pub fn build<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<AdjacencyState> {
        match self {
            InitialGraph::Empty => AdjacencyState::empty(n),
            InitialGraph::Complete => AdjacencyState::complete(n),
            InitialGraph::ErdosRenyi(p) => AdjacencyState::erdos_renyi(n, *p, rng),
            InitialGraph::Given(g) if g.n() == n => Ok(g.clone()),
            InitialGraph::Given(g) => Err(Error::DimensionMismatch { expected: n, got: g.n() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub seed: u64,
    pub burn_in: usize,
    pub n_sweeps: usize,
    pub init: InitialGraph,
    pub record_every: usize,
    /// Histogram resolution of the recorded degree summaries.
    pub bins: usize,
    /// Also keep a full copy of every recorded graph.
    pub keep_snapshots: bool,
}

impl ChainConfig {
    pub const DEFAULT_BURN_IN: usize = 500;

    pub fn new(seed: u64, n_sweeps: usize) -> Self {
        Self {
            seed,
            burn_in: Self::DEFAULT_BURN_IN,
            n_sweeps,
            init: InitialGraph::default(),
            record_every: 1,
            bins: DEFAULT_BINS,
            keep_snapshots: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sweeps == 0 {
            return Err(Error::InvalidParameter("n_sweeps must be >= 1".into()));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter("record_every must be >= 1".into()));
        }
        if self.bins == 0 {
            return Err(Error::InvalidParameter("bins must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainOutput {
    pub samples: Vec<DegreeSummary>,
    /// Index (counted after burn-in, starting at 1) of each recorded sweep.
    pub recorded_sweeps: Vec<usize>,
    pub snapshots: Vec<AdjacencyState>,
    pub final_state: AdjacencyState,
    pub sweep_count: usize,
    /// Seconds. Not part of the reproducibility contract.
    pub wall_time: f64,
}

impl ChainOutput {
    /// Equality of everything except the wall time.
    pub fn same_trajectory(&self, other: &Self) -> bool {
        self.samples == other.samples
            && self.recorded_sweeps == other.recorded_sweeps
            && self.snapshots == other.snapshots
            && self.final_state == other.final_state
            && self.sweep_count == other.sweep_count
    }

    pub fn last_sample(&self) -> Option<&DegreeSummary> {
        self.samples.last()
    }
}

/// A Markov chain on graphs advanced one sweep at a time.
pub trait MarkovChain {
    fn sweep(&mut self);
    fn state(&self) -> &AdjacencyState;
}

/// Draws `φ_i = k_i/(n-1) + Z_i/√((n-1)θ₂)` independently for every vertex.
pub fn phi_update<R: Rng + ?Sized>(p: &ModelParams, g: &AdjacencyState, rng: &mut R) -> Result<AuxiliaryState> {
    check_gibbs_params(p)?;
    check_n(p, g.n())?;
    let mut phi = AuxiliaryState::zeros(p.n());
    phi_update_into(p, g, rng, &mut phi);
    Ok(phi)
}

fn phi_update_into<R: Rng + ?Sized>(p: &ModelParams, g: &AdjacencyState, rng: &mut R, phi: &mut AuxiliaryState) {
    let scale = (p.n() - 1) as f64;
    let sd = 1.0 / (scale * p.theta2()).sqrt();
    for (i, slot) in phi.phi.iter_mut().enumerate() {
        let z: f64 = rng.sample(StandardNormal);
        *slot = g.spin_degree_unchecked(i) as f64 / scale + sd * z;
    }
}

/// Draws a fresh graph with independent edges `P(x_ij = 1 | φ) = σ(2θ₂(φ_i + φ_j) + 2θ₁)`.
pub fn edge_update<R: Rng + ?Sized>(p: &ModelParams, phi: &AuxiliaryState, rng: &mut R) -> Result<AdjacencyState> {
    check_n(p, phi.len())?;
    let mut g = AdjacencyState::empty(p.n())?;
    draw_edges(p, phi, rng, &mut g);
    Ok(g)
}

/// Same draw as [`edge_update`] (and the same random stream), keeping only the
/// degree vector. `O(n)` memory.
pub fn edge_update_degrees<R: Rng + ?Sized>(p: &ModelParams, phi: &AuxiliaryState, rng: &mut R) -> Result<Vec<u32>> {
    check_n(p, phi.len())?;
    let mut degrees = DegreeSink(vec![0; p.n()]);
    draw_edges(p, phi, rng, &mut degrees);
    Ok(degrees.0)
}

trait EdgeSink {
    fn reset(&mut self);
    fn add(&mut self, i: usize, j: usize);
}

impl EdgeSink for AdjacencyState {
    fn reset(&mut self) {
        self.clear();
    }
    #[inline]
    fn add(&mut self, i: usize, j: usize) {
        self.insert_absent(i, j);
    }
}

struct DegreeSink(Vec<u32>);

impl EdgeSink for DegreeSink {
    fn reset(&mut self) {
        self.0.iter_mut().for_each(|d| *d = 0);
    }
    #[inline]
    fn add(&mut self, i: usize, j: usize) {
        self.0[i] += 1;
        self.0[j] += 1;
    }
}

// Beyond this the per-vertex factors below could overflow or underflow.
const FAST_PATH_LIMIT: f64 = 300.0;

fn draw_edges<R: Rng + ?Sized, S: EdgeSink>(p: &ModelParams, phi: &AuxiliaryState, rng: &mut R, sink: &mut S) {
    draw_edges_with(p, phi, rng, sink, true)
}

fn draw_edges_with<R: Rng + ?Sized, S: EdgeSink>(
    p: &ModelParams,
    phi: &AuxiliaryState,
    rng: &mut R,
    sink: &mut S,
    allow_fast: bool,
) {
    sink.reset();
    let (t1, t2) = (p.theta1(), p.theta2());
    let phi = phi.as_slice();
    let n = phi.len();
    let half_logits: Vec<f64> = phi.iter().map(|&f| 2.0 * t2 * f + t1).collect();

    if allow_fast && half_logits.iter().all(|a| a.abs() <= FAST_PATH_LIMIT) {
        // σ(a_i + a_j) = 1 / (1 + w_i w_j) with w_i = e^{-a_i}, so the edge is
        // present iff u (1 + w_i w_j) < 1.
        let w: Vec<f64> = half_logits.iter().map(|a| (-a).exp()).collect();
        for i in 0..n {
            let wi = w[i];
            for j in i + 1..n {
                let u: f64 = rng.random();
                if u * (1.0 + wi * w[j]) < 1.0 {
                    sink.add(i, j);
                }
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                let u: f64 = rng.random();
                if u < sigmoid(half_logits[i] + half_logits[j]) {
                    sink.add(i, j);
                }
            }
        }
    }
}

fn check_n(p: &ModelParams, got: usize) -> Result<()> {
    if got != p.n() {
        Err(Error::DimensionMismatch { expected: p.n(), got })
    } else {
        Ok(())
    }
}

fn check_gibbs_params(p: &ModelParams) -> Result<()> {
    if !(p.theta2() > 0.0) || !p.theta1().is_finite() || !p.theta2().is_finite() {
        return Err(Error::InvalidParameter(format!(
            "the auxiliary-variable sampler needs finite theta with theta2 > 0, got ({}, {})",
            p.theta1(),
            p.theta2()
        )));
    }
    if p.n() < 2 {
        return Err(Error::TooFewVertices(p.n()));
    }
    Ok(())
}

pub struct GibbsChain {
    params: ModelParams,
    state: AdjacencyState,
    phi: AuxiliaryState,
    rng: ChainRng,
}

impl GibbsChain {
    /// Builds the initial graph from `init` using the chain's own generator.
    pub fn new(params: ModelParams, init: &InitialGraph, mut rng: ChainRng) -> Result<Self> {
        check_gibbs_params(&params)?;
        let state = init.build(params.n(), &mut rng)?;
        Ok(Self {
            params,
            state,
            phi: AuxiliaryState::zeros(params.n()),
            rng,
        })
    }

    /// Auxiliary vector drawn in the most recent sweep.
    pub fn phi(&self) -> &AuxiliaryState {
        &self.phi
    }
}

impl MarkovChain for GibbsChain {
    fn sweep(&mut self) {
        phi_update_into(&self.params, &self.state, &mut self.rng, &mut self.phi);
        draw_edges(&self.params, &self.phi, &mut self.rng, &mut self.state);
    }

    fn state(&self) -> &AdjacencyState {
        &self.state
    }
}

pub struct GlauberChain {
    params: ModelParams,
    state: AdjacencyState,
    rng: ChainRng,
}

impl GlauberChain {
    pub fn new(params: ModelParams, init: &InitialGraph, mut rng: ChainRng) -> Result<Self> {
        if !params.beta1().is_finite() || !params.beta2().is_finite() {
            return Err(Error::NonFinite("model parameters"));
        }
        let state = init.build(params.n(), &mut rng)?;
        Ok(Self { params, state, rng })
    }

    /// One heat-bath update of the pair `{i, j}`.
    pub fn update_pair(&mut self, i: usize, j: usize) {
        let log_odds = conditional_log_odds(&self.params, &self.state, i, j)
            .expect("pair validated by caller");
        let u: f64 = self.rng.random();
        self.state.set_pair(i.min(j), i.max(j), u < sigmoid(log_odds));
    }
}

impl MarkovChain for GlauberChain {
    fn sweep(&mut self) {
        let n = self.state.n();
        for _ in 0..pair_count(n) {
            let i = self.rng.random_range(0..n);
            let mut j = self.rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            self.update_pair(i, j);
        }
    }

    fn state(&self) -> &AdjacencyState {
        &self.state
    }
}

/// Runs `burn_in + n_sweeps` sweeps, recording every `record_every`-th
/// post-burn-in state.
pub fn run_chain<C: MarkovChain>(mut chain: C, cfg: &ChainConfig) -> Result<ChainOutput> {
    cfg.validate()?;
    let start = Instant::now();
    for _ in 0..cfg.burn_in {
        chain.sweep();
    }
    let mut samples = Vec::with_capacity(cfg.n_sweeps / cfg.record_every);
    let mut recorded_sweeps = Vec::with_capacity(cfg.n_sweeps / cfg.record_every);
    let mut snapshots = Vec::new();
    for s in 1..=cfg.n_sweeps {
        chain.sweep();
        if s % cfg.record_every == 0 {
            samples.push(summarize(chain.state(), cfg.bins)?);
            recorded_sweeps.push(s);
            if cfg.keep_snapshots {
                snapshots.push(chain.state().clone());
            }
        }
    }
    Ok(ChainOutput {
        samples,
        recorded_sweeps,
        snapshots,
        final_state: chain.state().clone(),
        sweep_count: cfg.burn_in + cfg.n_sweeps,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

pub fn run_gibbs(p: &ModelParams, cfg: &ChainConfig) -> Result<ChainOutput> {
    cfg.validate()?;
    run_chain(GibbsChain::new(*p, &cfg.init, chain_rng(cfg.seed))?, cfg)
}

pub fn run_glauber(p: &ModelParams, cfg: &ChainConfig) -> Result<ChainOutput> {
    cfg.validate()?;
    run_chain(GlauberChain::new(*p, &cfg.init, chain_rng(cfg.seed))?, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Gibbs,
    Glauber,
}

impl SamplerKind {
    pub fn run(self, p: &ModelParams, cfg: &ChainConfig) -> Result<ChainOutput> {
        match self {
            SamplerKind::Gibbs => run_gibbs(p, cfg),
            SamplerKind::Glauber => run_glauber(p, cfg),
        }
    }

    /// Boxed chain seeded directly with `seed`.
    pub fn chain(self, p: &ModelParams, init: &InitialGraph, seed: u64) -> Result<Box<dyn MarkovChain + Send>> {
        Ok(match self {
            SamplerKind::Gibbs => Box::new(GibbsChain::new(*p, init, chain_rng(seed))?),
            SamplerKind::Glauber => Box::new(GlauberChain::new(*p, init, chain_rng(seed))?),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SamplerKind::Gibbs => "gibbs",
            SamplerKind::Glauber => "glauber",
        }
    }
}

impl<C: MarkovChain + ?Sized> MarkovChain for Box<C> {
    fn sweep(&mut self) {
        (**self).sweep()
    }
    fn state(&self) -> &AdjacencyState {
        (**self).state()
    }
}

/// Runs chains `first_chain .. first_chain + chains` in parallel. Chain `c`
/// uses `template` with its seed replaced by `derive_seed(master_seed, c)`.
/// Output order follows chain index.
pub fn run_chains(
    p: &ModelParams,
    kind: SamplerKind,
    template: &ChainConfig,
    master_seed: u64,
    first_chain: u64,
    chains: u64,
) -> Result<Vec<(u64, ChainOutput)>> {
    (first_chain..first_chain + chains)
        .into_par_iter()
        .map(|c| {
            let seed = derive_seed(master_seed, c);
            let cfg = ChainConfig { seed, ..template.clone() };
            kind.run(p, &cfg).map(|out| (seed, out))
        })
        .collect()
}
