//! Quadratic lower and upper envelopes of the pairwise auxiliary potential
//! around its minimizer, and the stochastic-ordering edge bounds.
//!
//!     cargo run --example quadratic_envelope

use twostar::oracle::exact_edge_probability;
use twostar::phase::{classify, quadratic_envelope, Region};
use twostar::{ordering_bounds, ModelParams};

fn main() -> twostar::Result<()> {
    for (t1, t2) in [(0.0, 0.25), (0.25, 0.25), (-0.25, 0.25), (0.0, 0.55)] {
        let r = classify(t1, t2)?;
        for &m in &r.fixed_points {
            let region = match (r.fixed_points.len(), m > 0.0) {
                (1, _) => Region::Whole,
                (_, true) => Region::Positive,
                _ => Region::Negative,
            };
            let env = quadratic_envelope(t1, t2, m, region)?;
            println!(
                "theta = ({t1:>5}, {t2}) phi0 = {m:>8.5} on {region:?}: lambda in [{:.4}, {:.4}]",
                env.lambda_lower, env.lambda_upper
            );
        }
    }
    println!();
    for (b1, b2) in [(-1.0, 0.5), (0.0, 1.0), (0.5, 1.8)] {
        let p = ModelParams::new(5, b1, b2)?;
        let (a1, a2) = ordering_bounds(&p);
        println!(
            "beta = ({b1:>4}, {b2}): a1 = {a1:.4} <= P(edge) = {:.4} <= a2 = {a2:.4}",
            exact_edge_probability(&p)?
        );
    }
    Ok(())
}
