//! Mean-field phase diagram: fixed points and predicted degree limits along
//! the θ₁ = 0 line (the pitchfork) and across a few tilted points.
//!
//!     cargo run --example phase_diagram

use twostar::phase::{classify, q_second};

fn main() -> twostar::Result<()> {
    println!("{:>7} {:>7}  {:<8} {:>24}  {:>20}", "theta1", "theta2", "domain", "fixed points", "predicted p");
    let line = (1..=16).map(|k| (0.0, 0.05 * k as f64));
    let tilted = [(0.25, 0.25), (-0.25, 0.25), (0.1, 0.8), (-0.1, 0.8)];
    for (t1, t2) in line.chain(tilted) {
        let r = classify(t1, t2)?;
        let fmt = |xs: &[f64]| xs.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
        println!(
            "{t1:>7.3} {t2:>7.3}  {:<8} {:>24}  {:>20}{}",
            r.domain.label(),
            fmt(&r.fixed_points),
            fmt(&r.predicted_p),
            if r.is_critical { "  critical" } else { "" }
        );
    }
    println!();
    println!("q''(0) at the critical point (0, 0.5): {:e}", q_second(0.0, 0.5, 0.0));
    Ok(())
}
