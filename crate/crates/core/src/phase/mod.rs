//! Phase structure of the two-star model in the spin parameters `(θ₁, θ₂)`.
//!
//! The auxiliary density factorizes over pairs through
//!
//! ```text
//! p(x, y) = (θ₂/2)(x² + y²) - log cosh(θ₂(x + y) + θ₁) = q(x + y) + (θ₂/4)(x - y)²
//! q(t)    = (θ₂/4) t² - log cosh(θ₂ t + θ₁)
//! ```
//!
//! so the steady states are the minimizers `t = 2m` of `q`, where `m` solves
//! the mean-field equation `m = tanh(2θ₂ m + θ₁)`. The predicted limit of the
//! scaled degrees is `(m + 1)/2`.

mod envelope;
mod variational;

pub use envelope::{quadratic_envelope, Envelope, Region};
pub use variational::{log_partition_limit, mean_field_phi, VariationalLimit};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::log_cosh;

/// Tolerance used when comparing `θ₁` with 0 and `θ₂` with ½.
pub const PARAM_TOL: f64 = 1e-12;
/// `|q''|` below this marks a degenerate (neither min nor max) root.
pub const DEGENERATE_TOL: f64 = 1e-10;

const BRACKET: f64 = 1.5;
const GRID_POINTS: usize = 10_000;
const BISECTION_STEPS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    /// `θ₁ = 0, θ₂ < ½`
    Theta11,
    /// `θ₁ > 0`
    Theta12,
    /// `θ₁ < 0`
    Theta13,
    /// `θ₁ = 0, θ₂ > ½`
    Theta2,
    /// `θ₁ = 0, θ₂ = ½`
    Theta3,
}

impl Domain {
    pub fn label(self) -> &'static str {
        match self {
            Domain::Theta11 => "Theta11",
            Domain::Theta12 => "Theta12",
            Domain::Theta13 => "Theta13",
            Domain::Theta2 => "Theta2",
            Domain::Theta3 => "Theta3",
        }
    }

    pub fn is_uniqueness(self) -> bool {
        matches!(self, Domain::Theta11 | Domain::Theta12 | Domain::Theta13)
    }
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Minimum,
    Maximum,
    Degenerate,
}

/// A root `m` of `t = tanh(2θ₂ t + θ₁)`, classified by the sign of `q''(2m)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub m: f64,
    pub kind: RootKind,
    pub q_second: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub theta1: f64,
    pub theta2: f64,
    pub domain: Domain,
    /// Global minimizers `m` of `q(2m)`, ascending.
    pub fixed_points: Vec<f64>,
    /// `(m + 1)/2` for each entry of `fixed_points`.
    pub predicted_p: Vec<f64>,
    pub is_critical: bool,
    /// Every root of the mean-field equation, ascending.
    pub roots: Vec<Root>,
}

pub fn q_eval(theta1: f64, theta2: f64, t: f64) -> f64 {
    0.25 * theta2 * t * t - log_cosh(theta2 * t + theta1)
}

pub fn q_prime(theta1: f64, theta2: f64, t: f64) -> f64 {
    0.5 * theta2 * t - theta2 * (theta2 * t + theta1).tanh()
}

/// `q''(t) = θ₂/2 - θ₂² sech²(θ₂ t + θ₁)`.
pub fn q_second(theta1: f64, theta2: f64, t: f64) -> f64 {
    let th = (theta2 * t + theta1).tanh();
    0.5 * theta2 - theta2 * theta2 * (1.0 - th * th)
}

/// `p(x, y)` from its defining form.
pub fn pairwise_p(theta1: f64, theta2: f64, x: f64, y: f64) -> f64 {
    0.5 * theta2 * (x * x + y * y) - log_cosh(theta2 * (x + y) + theta1)
}

/// `p(x, y)` through `q(x + y) + (θ₂/4)(x - y)²`.
pub fn pairwise_p_decomposed(theta1: f64, theta2: f64, x: f64, y: f64) -> f64 {
    let d = x - y;
    q_eval(theta1, theta2, x + y) + 0.25 * theta2 * d * d
}

/// Residual `m - tanh(2θ₂ m + θ₁)` of the mean-field equation.
pub fn mean_field_residual(theta1: f64, theta2: f64, m: f64) -> f64 {
    m - (2.0 * theta2 * m + theta1).tanh()
}

fn check_theta(theta1: f64, theta2: f64) -> Result<()> {
    if !theta1.is_finite() || !theta2.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    if theta2 <= 0.0 {
        return Err(Error::InvalidParameter(format!("theta2 must be > 0, got {theta2}")));
    }
    Ok(())
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn make_root(theta1: f64, theta2: f64, m: f64) -> Root {
    let q2 = q_second(theta1, theta2, 2.0 * m);
    let kind = if q2.abs() < DEGENERATE_TOL {
        RootKind::Degenerate
    } else if q2 > 0.0 {
        RootKind::Minimum
    } else {
        RootKind::Maximum
    };
    Root { m, kind, q_second: q2 }
}

/// All roots of `t = tanh(2θ₂ t + θ₁)` on `[-1.5, 1.5]`, ascending: sign
/// changes on a uniform grid, each refined by bisection.
pub fn fixed_points(theta1: f64, theta2: f64) -> Result<Vec<Root>> {
    check_theta(theta1, theta2)?;
    let g = |t: f64| mean_field_residual(theta1, theta2, t);
    let step = 2.0 * BRACKET / GRID_POINTS as f64;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev_t = -BRACKET;
    let mut prev_g = g(prev_t);
    if prev_g == 0.0 {
        roots.push(prev_t);
    }
    for k in 1..=GRID_POINTS {
        let t = -BRACKET + k as f64 * step;
        let gt = g(t);
        if gt == 0.0 {
            roots.push(t);
        } else if prev_g != 0.0 && (gt < 0.0) != (prev_g < 0.0) {
            roots.push(bisect(g, prev_t, t));
        }
        prev_t = t;
        prev_g = gt;
    }
    if g(0.0) == 0.0 {
        for m in roots.iter_mut().filter(|m| m.abs() < 1e-9) {
            *m = 0.0;
        }
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(roots.into_iter().map(|m| make_root(theta1, theta2, m)).collect())
}

/// Positive root of `t = tanh(2θ₂ t)` for `θ₂ > ½`, found by bisecting
/// `1 - tanh(2θ₂ t)/t` on `(0, 1.5]`. Unlike the grid search this stays
/// reliable arbitrarily close to the critical point.
fn symmetric_positive_root(theta2: f64) -> f64 {
    let u = |t: f64| {
        if t == 0.0 {
            1.0 - 2.0 * theta2
        } else {
            1.0 - (2.0 * theta2 * t).tanh() / t
        }
    };
    bisect(u, 0.0, BRACKET)
}

/// Domain of `(θ₁, θ₂)` by the exact parameter-sign cases.
pub fn domain_of(theta1: f64, theta2: f64) -> Result<Domain> {
    check_theta(theta1, theta2)?;
    Ok(if theta1 > PARAM_TOL {
        Domain::Theta12
    } else if theta1 < -PARAM_TOL {
        Domain::Theta13
    } else if (theta2 - 0.5).abs() <= PARAM_TOL {
        Domain::Theta3
    } else if theta2 < 0.5 {
        Domain::Theta11
    } else {
        Domain::Theta2
    })
}

pub fn classify(theta1: f64, theta2: f64) -> Result<PhaseReport> {
    let domain = domain_of(theta1, theta2)?;
    let mut roots = fixed_points(theta1, theta2)?;
    let fixed: Vec<f64> = match domain {
        Domain::Theta11 | Domain::Theta3 => {
            let nearest = roots
                .iter()
                .min_by(|a, b| a.m.abs().total_cmp(&b.m.abs()))
                .ok_or_else(|| Error::Numerical("no root near 0".into()))?;
            vec![nearest.m]
        }
        Domain::Theta12 => vec![roots.last().ok_or_else(|| Error::Numerical("no root".into()))?.m],
        Domain::Theta13 => vec![roots.first().ok_or_else(|| Error::Numerical("no root".into()))?.m],
        Domain::Theta2 => {
            let m = symmetric_positive_root(theta2);
            if m <= 0.0 {
                return Err(Error::Numerical(format!("no positive root for theta2 = {theta2}")));
            }
            // Very close to the critical point the grid cannot separate ±m from 0.
            if roots.len() != 3 {
                roots = [-m, 0.0, m].iter().map(|&r| make_root(theta1, theta2, r)).collect();
            }
            vec![-m, m]
        }
    };
    for &m in &fixed {
        let r = mean_field_residual(theta1, theta2, m);
        if r.abs() >= 1e-10 {
            return Err(Error::Numerical(format!("fixed point {m} has residual {r}")));
        }
    }
    Ok(PhaseReport {
        theta1,
        theta2,
        domain,
        predicted_p: fixed.iter().map(|m| 0.5 * (m + 1.0)).collect(),
        fixed_points: fixed,
        is_critical: domain == Domain::Theta3,
        roots,
    })
}

/// Points `(t, tanh(2θ₂ t + θ₁))` on a uniform grid, for plotting against the
/// diagonal.
pub fn tanh_curve(theta1: f64, theta2: f64, t_min: f64, t_max: f64, points: usize) -> Vec<(f64, f64)> {
    let steps = points.max(2) - 1;
    (0..=steps)
        .map(|k| {
            let t = t_min + (t_max - t_min) * k as f64 / steps as f64;
            (t, (2.0 * theta2 * t + theta1).tanh())
        })
        .collect()
}
