//! Gibbs versus Glauber at moderate n: per-sweep cost and how fast the mean
//! scaled degree reaches the predicted limit from an empty start.
//!
//!     cargo run --release --example sampler_comparison -- [n]

use std::time::Instant;

use twostar::{classify, InitialGraph, ModelParams, SamplerKind};

fn main() -> twostar::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(300, |a| a.parse().expect("vertex count"));
    let (theta1, theta2) = (0.25, 0.25);
    let target = classify(theta1, theta2)?.predicted_p[0];
    let params = ModelParams::from_theta(n, theta1, theta2)?;
    println!("n = {n}, theta = ({theta1}, {theta2}), predicted p = {target:.4}");
    for kind in [SamplerKind::Gibbs, SamplerKind::Glauber] {
        let mut chain = kind.chain(&params, &InitialGraph::Empty, 3)?;
        let start = Instant::now();
        print!("{:>8}:", kind.name());
        for sweep in 1..=40 {
            chain.sweep();
            if sweep % 5 == 0 {
                let g = chain.state();
                let mean = 2.0 * g.edge_count() as f64 / (n * (n - 1)) as f64;
                print!(" {mean:.3}");
            }
        }
        println!("  ({:.2} ms/sweep)", 1e3 * start.elapsed().as_secs_f64() / 40.0);
    }
    Ok(())
}
