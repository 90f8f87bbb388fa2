//! Simulation and phase analysis of the edge/two-star exponential random graph
//! model
//!
//! ```text
//! P(x) ∝ exp{ β₂/(n-1) · T(x) + (β₁ + β₂/(n-1)) · E(x) },   β₂ > 0,
//! ```
//!
//! where `T` counts two-stars and `E` counts edges.
//!
//! * [`graph`]: bit-packed labeled graphs with incremental degrees and the
//!   edge/two-star/spin statistics.
//! * [`model`]: parameters (β-pair with derived θ₁ = (β₁+β₂)/2, θ₂ = β₂/4),
//!   the Hamiltonian, conditional edge probabilities and the auxiliary density.
//! * [`sampler`]: the auxiliary-variable Gibbs sampler and a single-edge
//!   Glauber baseline, with reproducible seeding for parallel chains.
//! * [`phase`]: mean-field fixed points, domain classification, predicted
//!   degree limits and the variational log-partition limit.
//! * [`oracle`]: exact enumeration for `n <= 6` and total-variation checks.
//! * [`analysis`]: degree summaries, concentration checks and mode splits.
//! * [`output`] and [`cli`]: file formats and the command-line front end.
//!
//! ```
//! use twostar::{classify, run_gibbs, ChainConfig, ModelParams};
//!
//! let params = ModelParams::from_theta(200, 0.25, 0.25)?;
//! let report = classify(params.theta1(), params.theta2())?;
//! let out = run_gibbs(&params, &ChainConfig::new(1, 1))?;
//! let mean = out.last_sample().unwrap().mean;
//! assert!((mean - report.predicted_p[0]).abs() < 0.05);
//! # Ok::<(), twostar::Error>(())
//! ```

pub mod analysis;
pub mod cli;
pub mod error;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod output;
pub mod phase;
pub mod sampler;

pub use analysis::{concentration_check, mode_split, ordering_bounds, summarize, DegreeSummary, ModeStats};
pub use error::{Error, Result};
pub use graph::AdjacencyState;
pub use model::ModelParams;
pub use oracle::{enumerate, tv_distance, ExactDistribution};
pub use phase::{classify, Domain, PhaseReport};
pub use sampler::{run_gibbs, run_glauber, AuxiliaryState, ChainConfig, ChainOutput, InitialGraph, SamplerKind};
