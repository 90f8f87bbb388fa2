use serde::{Deserialize, Serialize};

use super::{pairwise_p, q_eval, q_second};
use crate::error::{Error, Result};

/// Interval `U` containing the coordinates of `p(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Positive,
    Negative,
    Whole,
}

impl Region {
    pub fn contains(self, x: f64) -> bool {
        match self {
            Region::Positive => x > 0.0,
            Region::Negative => x < 0.0,
            Region::Whole => true,
        }
    }

    fn truncated(self, half_width: f64) -> (f64, f64) {
        match self {
            Region::Positive => (0.0, half_width),
            Region::Negative => (-half_width, 0.0),
            Region::Whole => (-half_width, half_width),
        }
    }
}

/// Quadratic envelope of `p` around `(φ₀, φ₀)` on `U × U`:
///
/// ```text
/// p(φ₀,φ₀) + (λ_lower/2)·r² ≤ p(x, y) ≤ p(φ₀,φ₀) + (λ_upper/2)·r²,   r² = (x-φ₀)² + (y-φ₀)²
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub phi0: f64,
    pub region: Region,
    /// Infimum over `U` of `r(t) = 2(q(t) - q(2φ₀))/(t - 2φ₀)²`.
    pub r_inf: f64,
    pub r_sup: f64,
    pub lambda_lower: f64,
    pub lambda_upper: f64,
}

const HALF_WIDTH: f64 = 10.0;
const GRID: usize = 40_000;

/// Computes the envelope constants by grid optimization of `r` over the sums
/// `t = x + y` with `x, y ∈ U ∩ [-10, 10]`. Outside that window
/// `r(t) → θ₂/2`, which is folded into both bounds.
pub fn quadratic_envelope(theta1: f64, theta2: f64, phi0: f64, region: Region) -> Result<Envelope> {
    if !(theta2 > 0.0) {
        return Err(Error::InvalidParameter(format!("theta2 must be > 0, got {theta2}")));
    }
    if !region.contains(phi0) {
        return Err(Error::InvalidParameter(format!("phi0 = {phi0} not in {region:?}")));
    }
    let t0 = 2.0 * phi0;
    let q0 = q_eval(theta1, theta2, t0);
    let curvature = q_second(theta1, theta2, t0);
    let r = |t: f64| {
        let d = t - t0;
        if d.abs() < 1e-4 {
            curvature
        } else {
            2.0 * (q_eval(theta1, theta2, t) - q0) / (d * d)
        }
    };
    let (lo, hi) = region.truncated(2.0 * HALF_WIDTH);
    let (mut r_inf, mut r_sup) = (r(t0), r(t0));
    for k in 0..=GRID {
        let t = lo + (hi - lo) * k as f64 / GRID as f64;
        if !region.contains(t) {
            continue;
        }
        let v = r(t);
        r_inf = r_inf.min(v);
        r_sup = r_sup.max(v);
    }
    let tail = 0.5 * theta2;
    r_sup = r_sup.max(tail);
    if r_inf <= 0.0 {
        return Err(Error::Numerical(format!(
            "q has no strict minimum at 2·phi0 = {t0} on {region:?} (inf r = {r_inf})"
        )));
    }
    Ok(Envelope {
        phi0,
        region,
        r_inf,
        r_sup,
        lambda_lower: r_inf.min(tail),
        lambda_upper: 2.0 * r_sup + theta2,
    })
}

impl Envelope {
    /// Lower and upper bound on `p(x, y)`.
    pub fn bounds(&self, theta1: f64, theta2: f64, x: f64, y: f64) -> (f64, f64) {
        let p0 = pairwise_p(theta1, theta2, self.phi0, self.phi0);
        let r2 = (x - self.phi0).powi(2) + (y - self.phi0).powi(2);
        (p0 + 0.5 * self.lambda_lower * r2, p0 + 0.5 * self.lambda_upper * r2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::classify;

    fn check_grid(theta1: f64, theta2: f64, env: &Envelope) {
        let (lo, hi) = env.region.truncated(3.0);
        for a in 0..=60 {
            for b in 0..=60 {
                let x = lo + (hi - lo) * a as f64 / 60.0;
                let y = lo + (hi - lo) * b as f64 / 60.0;
                if !env.region.contains(x) || !env.region.contains(y) {
                    continue;
                }
                let p = pairwise_p(theta1, theta2, x, y);
                let (lower, upper) = env.bounds(theta1, theta2, x, y);
                assert!(lower <= p + 1e-12, "lower bound fails at ({x}, {y})");
                assert!(p <= upper + 1e-12, "upper bound fails at ({x}, {y})");
            }
        }
    }

    #[test]
    fn envelopes_hold_in_every_uniqueness_case() {
        for (t1, t2) in [(0.0, 0.25), (0.25, 0.25), (-0.25, 0.25), (0.4, 0.9)] {
            let m = classify(t1, t2).unwrap().fixed_points[0];
            let env = quadratic_envelope(t1, t2, m, Region::Whole).unwrap();
            assert!(env.lambda_lower > 0.0 && env.lambda_upper > env.lambda_lower);
            check_grid(t1, t2, &env);
        }
    }

    #[test]
    fn envelopes_hold_on_each_half_line_in_nonuniqueness() {
        let r = classify(0.0, 0.55).unwrap();
        let (neg, pos) = (r.fixed_points[0], r.fixed_points[1]);
        check_grid(0.0, 0.55, &quadratic_envelope(0.0, 0.55, pos, Region::Positive).unwrap());
        check_grid(0.0, 0.55, &quadratic_envelope(0.0, 0.55, neg, Region::Negative).unwrap());
        // On the whole line q(-2m) = q(2m), so r vanishes at -2m.
        let whole = quadratic_envelope(0.0, 0.55, pos, Region::Whole);
        assert!(whole.map_or(true, |e| e.lambda_lower < 1e-4));
    }

    #[test]
    fn critical_point_has_no_envelope() {
        assert!(quadratic_envelope(0.0, 0.5, 0.0, Region::Whole).is_err());
    }
}
