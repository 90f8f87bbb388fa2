//! Scaled-degree observables: per-state summaries, concentration around
//! predicted limits, and the split of independent chains between modes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AdjacencyState;
use crate::model::{sigmoid, ModelParams};
use crate::phase::{Domain, PhaseReport};

pub const DEFAULT_BINS: usize = 50;

/// Default concentration tolerance for a graph on `n` vertices.
pub fn default_delta(n: usize) -> f64 {
    if n >= 1000 {
        0.1
    } else {
        0.15
    }
}

/// Stochastic-ordering bounds `(a₁, a₂) = (σ(β₁), σ(2β₂ + β₁))`.
///
/// For `β₂ ≥ 0` the conditional log odds of any edge lie between `β₁` and
/// `β₁ + 2β₂`, so the model is sandwiched between Erdős–Rényi graphs with
/// these edge probabilities.
pub fn ordering_bounds(p: &ModelParams) -> (f64, f64) {
    (sigmoid(p.beta1()), sigmoid(2.0 * p.beta2() + p.beta1()))
}

/// Fixed-width histogram over `[0, 1]`; the value `1.0` falls in the last bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
        }
        Ok(Self { counts: vec![0; bins] })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn add(&mut self, x: f64) {
        let b = self.bins();
        let k = ((x * b as f64).floor() as usize).min(b - 1);
        self.counts[k] += 1;
    }

    /// `(left, right)` edges of bin `k`.
    pub fn bin_edges(&self, k: usize) -> (f64, f64) {
        let b = self.bins() as f64;
        (k as f64 / b, (k + 1) as f64 / b)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub n: usize,
    pub scaled_degrees: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub histogram: Histogram,
}

impl DegreeSummary {
    /// Summary of already scaled degrees `d_i/(n-1)`, each in `[0, 1]`.
    pub fn from_scaled(scaled_degrees: Vec<f64>, bins: usize) -> Result<Self> {
        if scaled_degrees.is_empty() {
            return Err(Error::Analysis("no degrees to summarize".into()));
        }
        if scaled_degrees.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::Analysis("scaled degrees must lie in [0, 1]".into()));
        }
        let mut histogram = Histogram::new(bins)?;
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for &x in &scaled_degrees {
            histogram.add(x);
            min = min.min(x);
            max = max.max(x);
            sum += x;
        }
        // Rounding in the sum can push the mean a hair outside [min, max].
        let mean = (sum / scaled_degrees.len() as f64).clamp(min, max);
        Ok(Self { n: scaled_degrees.len(), scaled_degrees, min, max, mean, histogram })
    }

    pub fn from_degrees(degrees: &[u32], bins: usize) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(Error::TooFewVertices(degrees.len()));
        }
        let n = degrees.len();
        let scale = (n - 1) as f64;
        let mut s = Self::from_scaled(degrees.iter().map(|&d| d as f64 / scale).collect(), bins)?;
        let total: u64 = degrees.iter().map(|&d| d as u64).sum();
        s.mean = (total as f64 / (n as f64 * scale)).clamp(s.min, s.max);
        Ok(s)
    }

    /// Scaled degrees in ascending order.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.scaled_degrees.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    /// `max_i |d_i/(n-1) - p|`.
    pub fn max_deviation(&self, p: f64) -> f64 {
        (self.min - p).abs().max((self.max - p).abs())
    }
}

pub fn summarize(g: &AdjacencyState, bins: usize) -> Result<DegreeSummary> {
    DegreeSummary::from_degrees(g.degrees(), bins)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Concentration {
    /// Index into the target list.
    pub mode: usize,
    pub max_dev: f64,
    pub pass: bool,
}

/// Assigns the state to the target `p` minimizing `max_i |d_i/(n-1) - p|`
/// (first index on ties) and passes iff that deviation is at most `delta`.
pub fn concentration_check(s: &DegreeSummary, p_targets: &[f64], delta: f64) -> Result<Concentration> {
    if p_targets.is_empty() {
        return Err(Error::Analysis("empty target list".into()));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("delta must be > 0, got {delta}")));
    }
    let (mode, max_dev) = p_targets
        .iter()
        .map(|&p| s.max_deviation(p))
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, dev)| if dev < best.1 { (k, dev) } else { best });
    Ok(Concentration { mode, max_dev, pass: max_dev <= delta })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeStats {
    pub chain_count: usize,
    pub targets: Vec<f64>,
    /// Per chain: index into `targets`.
    pub modes: Vec<usize>,
    pub passes: Vec<bool>,
    /// Share of chains assigned to the largest target.
    pub fraction_upper: f64,
    pub max_deviation_within_mode: f64,
    /// Mean scaled degree averaged over the chains of each mode (`None` when a
    /// mode received no chain).
    pub mode_means: Vec<Option<f64>>,
}

impl ModeStats {
    pub fn all_pass(&self) -> bool {
        self.passes.iter().all(|&p| p)
    }
}

/// Mode assignment of independent chains against arbitrary targets.
pub fn assign_modes(chains: &[DegreeSummary], targets: &[f64], delta: f64) -> Result<ModeStats> {
    if chains.is_empty() {
        return Err(Error::Analysis("no chains to assign".into()));
    }
    let checks = chains
        .iter()
        .map(|s| concentration_check(s, targets, delta))
        .collect::<Result<Vec<_>>>()?;
    let upper = targets
        .iter()
        .enumerate()
        .fold(0, |best, (k, &p)| if p > targets[best] { k } else { best });
    let modes: Vec<usize> = checks.iter().map(|c| c.mode).collect();
    let fraction_upper = modes.iter().filter(|&&m| m == upper).count() as f64 / chains.len() as f64;
    let mode_means = (0..targets.len())
        .map(|k| {
            let means: Vec<f64> = chains
                .iter()
                .zip(&modes)
                .filter(|(_, &m)| m == k)
                .map(|(s, _)| s.mean)
                .collect();
            (!means.is_empty()).then(|| means.iter().sum::<f64>() / means.len() as f64)
        })
        .collect();
    Ok(ModeStats {
        chain_count: chains.len(),
        targets: targets.to_vec(),
        passes: checks.iter().map(|c| c.pass).collect(),
        max_deviation_within_mode: checks.iter().map(|c| c.max_dev).fold(0.0, f64::max),
        modes,
        fraction_upper,
        mode_means,
    })
}

/// Two-mode split for the non-uniqueness domain: every chain is assigned to
/// the nearer of the two predicted limits.
pub fn mode_split(chains: &[DegreeSummary], report: &PhaseReport, delta: f64) -> Result<ModeStats> {
    if report.domain != Domain::Theta2 {
        return Err(Error::Analysis(format!(
            "mode split needs the non-uniqueness domain, got {:?}",
            report.domain
        )));
    }
    if chains.len() < 2 {
        return Err(Error::Analysis(format!("mode split needs at least 2 chains, got {}", chains.len())));
    }
    assign_modes(chains, &report.predicted_p, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::classify;
    use approx::assert_abs_diff_eq;

    #[test]
    fn summaries_of_simple_graphs() {
        let s = summarize(&AdjacencyState::empty(6).unwrap(), 10).unwrap();
        assert!(s.scaled_degrees.iter().all(|&x| x == 0.0));
        assert_eq!(s.mean, 0.0);
        assert_eq!(s.histogram.counts[0], 6);

        let s = summarize(&AdjacencyState::complete(6).unwrap(), 10).unwrap();
        assert!(s.scaled_degrees.iter().all(|&x| x == 1.0));
        assert_eq!(s.histogram.counts[9], 6);

        let path = AdjacencyState::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = summarize(&path, 4).unwrap();
        assert_eq!(s.scaled_degrees, vec![0.5, 1.0, 0.5]);
        assert_abs_diff_eq!(s.mean, 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!((s.min, s.max), (0.5, 1.0));
        assert_eq!(s.histogram.counts, vec![0, 0, 2, 1]);
        assert_eq!(s.histogram.bin_edges(2), (0.5, 0.75));
    }

    #[test]
    fn summary_rejects_bad_input() {
        assert!(DegreeSummary::from_scaled(vec![], 3).is_err());
        assert!(DegreeSummary::from_scaled(vec![1.2], 3).is_err());
        assert!(DegreeSummary::from_scaled(vec![0.3], 0).is_err());
    }

    #[test]
    fn concentration_picks_nearest_target() {
        let s = DegreeSummary::from_scaled(vec![0.4134, 0.5005, 0.5656], 50).unwrap();
        let c = concentration_check(&s, &[0.5], 0.1).unwrap();
        assert_eq!(c.mode, 0);
        assert_abs_diff_eq!(c.max_dev, 0.0866, epsilon = 1e-12);
        assert!(c.pass);

        let c = concentration_check(&s, &[0.25, 0.75, 0.5], 0.05).unwrap();
        assert_eq!(c.mode, 2);
        assert!(!c.pass);

        // ties go to the first index
        let c = concentration_check(&s, &[0.5, 0.5, 0.5], 0.1).unwrap();
        assert_eq!(c.mode, 0);

        assert!(concentration_check(&s, &[], 0.1).is_err());
        assert!(concentration_check(&s, &[0.5], 0.0).is_err());
    }

    #[test]
    fn mode_split_of_two_opposite_runs() {
        let report = classify(0.0, 0.55).unwrap();
        let upper = DegreeSummary::from_scaled(vec![0.6917, 0.7575, 0.8038], 50).unwrap();
        let lower = DegreeSummary::from_scaled(vec![0.1942, 0.2476, 0.3103], 50).unwrap();
        let stats = mode_split(&[upper.clone(), lower], &report, 0.1).unwrap();
        assert_eq!(stats.modes, vec![1, 0]);
        assert_eq!(stats.fraction_upper, 0.5);
        assert!(stats.all_pass());

        let same = mode_split(&[upper.clone(), upper.clone(), upper.clone()], &report, 0.1).unwrap();
        assert_eq!(same.fraction_upper, 1.0);
        assert_abs_diff_eq!(same.max_deviation_within_mode, upper.max_deviation(report.predicted_p[1]));
        assert_eq!(same.mode_means[0], None);
    }

    #[test]
    fn mode_split_preconditions() {
        let s = DegreeSummary::from_scaled(vec![0.5, 0.5], 10).unwrap();
        let unique = classify(0.0, 0.25).unwrap();
        assert!(mode_split(&[s.clone(), s.clone()], &unique, 0.1).is_err());
        let two = classify(0.0, 0.55).unwrap();
        assert!(mode_split(&[s], &two, 0.1).is_err());
    }

    #[test]
    fn default_deltas() {
        assert_eq!(default_delta(1000), 0.1);
        assert_eq!(default_delta(500), 0.15);
    }
}
