//! The limiting free energy sup_p { Σ β_i p^{e_i} - I(p) } for a few
//! subgraph-count models, with its maximizer and the fixed-point residual.
//!
//!     cargo run --example variational_limit

use twostar::phase::{log_partition_limit, mean_field_phi};

fn main() -> twostar::Result<()> {
    let models: [(&str, Vec<(f64, u32)>); 5] = [
        ("empty", vec![(0.0, 1)]),
        ("edges only", vec![(0.7, 1)]),
        ("edge + two-star", vec![(-0.5, 1), (1.0, 2)]),
        ("edge + two-star, bistable", vec![(-1.99, 1), (2.0, 2)]),
        ("edge + triangle", vec![(-0.4, 1), (0.6, 3)]),
    ];
    println!("{:<28} {:>10} {:>10} {:>12}", "model", "limit", "argmax", "|phi(p)-p|");
    for (name, terms) in &models {
        let v = log_partition_limit(terms)?;
        let residual = (mean_field_phi(terms, v.argmax)? - v.argmax).abs();
        println!("{name:<28} {:>10.6} {:>10.6} {residual:>12.1e}", v.value, v.argmax);
    }
    Ok(())
}
