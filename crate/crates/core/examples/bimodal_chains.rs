//! Non-uniqueness: independent chains started from ER(½) each settle near one
//! of the two predicted limits, roughly half on each side.
//!
//!     cargo run --release --example bimodal_chains -- [chains] [n]

use twostar::analysis::default_delta;
use twostar::sampler::run_chains;
use twostar::{classify, mode_split, ChainConfig, ModelParams, SamplerKind};

fn main() -> twostar::Result<()> {
    let mut args = std::env::args().skip(1);
    let chains: u64 = args.next().map_or(20, |a| a.parse().expect("chain count"));
    let n: usize = args.next().map_or(500, |a| a.parse().expect("vertex count"));

    let (theta1, theta2) = (0.0, 0.55);
    let report = classify(theta1, theta2)?;
    let params = ModelParams::from_theta(n, theta1, theta2)?;
    let outs = run_chains(&params, SamplerKind::Gibbs, &ChainConfig::new(0, 1), 7, 0, chains)?;
    let lasts: Vec<_> = outs.iter().map(|(_, o)| o.samples[0].clone()).collect();
    let stats = mode_split(&lasts, &report, default_delta(n))?;

    for (c, (s, mode)) in lasts.iter().zip(&stats.modes).enumerate() {
        println!("chain {c:>3}: mean {:.4} -> p = {:.4}", s.mean, report.predicted_p[*mode]);
    }
    println!("predicted {:?}", report.predicted_p);
    println!(
        "mode means {:?}, fraction in upper mode {:.2}, worst within-mode deviation {:.4}",
        stats.mode_means, stats.fraction_upper, stats.max_deviation_within_mode
    );
    Ok(())
}
