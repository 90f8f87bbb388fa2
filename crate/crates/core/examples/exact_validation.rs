//! Checks both samplers against the exact distribution of a small graph by
//! total-variation distance, for growing run lengths.
//!
//!     cargo run --release --example exact_validation

use twostar::oracle::{tv_distance_keyed, EmpiricalDistribution};
use twostar::{enumerate, tv_distance, InitialGraph, ModelParams, SamplerKind};

fn main() -> twostar::Result<()> {
    let params = ModelParams::new(4, -0.2, 0.4)?;
    let exact = enumerate(&params)?;
    println!("n = 4, beta = (-0.2, 0.4): log Z = {:.6}, P(edge) = {:.6}", exact.log_z, exact.edge_marginal(0, 1)?);
    println!("{:>8} {:>9} {:>10} {:>12}", "sampler", "sweeps", "TV graph", "TV degrees");
    for kind in [SamplerKind::Gibbs, SamplerKind::Glauber] {
        let mut chain = kind.chain(&params, &InitialGraph::default(), 42)?;
        let mut emp = EmpiricalDistribution::new(4);
        let mut checkpoint = 1_000;
        for sweep in 1..=1_000_000 {
            chain.sweep();
            emp.record(chain.state());
            if sweep == checkpoint {
                let tv = tv_distance(&emp.graph_probs().expect("n = 4"), &exact.probs)?;
                let tv_deg = tv_distance_keyed(&emp.degree_probs(), &exact.degree_dist);
                println!("{:>8} {sweep:>9} {tv:>10.5} {tv_deg:>12.5}", kind.name());
                checkpoint *= 10;
            }
        }
    }
    Ok(())
}
