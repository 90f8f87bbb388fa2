//! One Gibbs run at n = 1000 in the uniqueness regime: all scaled degrees
//! pile up at the single predicted limit.
//!
//!     cargo run --release --example uniqueness_histogram -- [theta1] [theta2] [seed]

use twostar::{classify, run_gibbs, ChainConfig, ModelParams};

fn main() -> twostar::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let theta1 = args.next().unwrap_or(0.0);
    let theta2 = args.next().unwrap_or(0.25);
    let seed = args.next().unwrap_or(1.0) as u64;

    let params = ModelParams::from_theta(1000, theta1, theta2)?;
    let report = classify(theta1, theta2)?;
    let cfg = ChainConfig { bins: 40, ..ChainConfig::new(seed, 1) };
    let out = run_gibbs(&params, &cfg)?;
    let s = out.last_sample().expect("one recorded state");

    println!("theta = ({theta1}, {theta2}), domain {}, predicted p = {:?}", report.domain, report.predicted_p);
    println!("mean {:.4}  min {:.4}  max {:.4}  ({:.2} s)", s.mean, s.min, s.max, out.wall_time);
    let peak = *s.histogram.counts.iter().max().unwrap_or(&1) as f64;
    for (k, &c) in s.histogram.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (lo, hi) = s.histogram.bin_edges(k);
        let bar = "#".repeat((60.0 * c as f64 / peak).ceil() as usize);
        println!("[{lo:.3}, {hi:.3})  {c:>4} {bar}");
    }
    Ok(())
}
