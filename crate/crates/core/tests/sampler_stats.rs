//! Monte Carlo checks of the samplers against closed forms and the exact
//! distribution. All runs are seeded, so the outcomes are fixed.

mod common;

use twostar::analysis::ordering_bounds;
use twostar::oracle::{exact_edge_probability, tv_distance_keyed, EmpiricalDistribution};
use twostar::sampler::{chain_rng, edge_update, phi_update, AuxiliaryState};
use twostar::{enumerate, AdjacencyState, ChainConfig, InitialGraph, ModelParams, SamplerKind};

#[test]
fn phi_spread_matches_variance() {
    let p = ModelParams::from_theta(1000, 0.0, 0.25).unwrap();
    let mut rng = chain_rng(11);
    let g = common::random_graph(1000, 0.4, 3);
    let means: Vec<f64> = (0..1000).map(|i| g.spin_degree(i).unwrap() as f64 / 999.0).collect();
    let (mut sum, mut sum_sq, mut count) = (0.0, 0.0, 0.0);
    for _ in 0..100 {
        let phi = phi_update(&p, &g, &mut rng).unwrap();
        for (f, m) in phi.as_slice().iter().zip(&means) {
            let z = f - m;
            sum += z;
            sum_sq += z * z;
            count += 1.0;
        }
    }
    let sd = (sum_sq / count - (sum / count).powi(2)).sqrt();
    let expect = 1.0 / (999.0f64 * 0.25).sqrt();
    assert!((expect - 0.06328).abs() < 1e-5);
    assert!((sd / expect - 1.0).abs() < 0.01, "sd {sd} vs {expect}");
}

#[test]
fn edge_update_is_a_fair_coin_at_zero_field() {
    let p = ModelParams::from_theta(20, 0.0, 0.4).unwrap();
    let phi = AuxiliaryState::zeros(20);
    let mut rng = chain_rng(5);
    let draws = 10_000;
    let mean = (0..draws)
        .map(|_| edge_update(&p, &phi, &mut rng).unwrap().edge_count() as f64)
        .sum::<f64>()
        / draws as f64;
    // 190 independent fair coins per draw.
    let se = (190.0f64 * 0.25 / draws as f64).sqrt();
    assert!((mean - 95.0).abs() < 3.0 * se, "mean {mean}, se {se}");
}

fn degree_distribution(p: &ModelParams, kind: SamplerKind, seed: u64, sweeps: usize) -> EmpiricalDistribution {
    let mut chain = kind.chain(p, &InitialGraph::default(), seed).unwrap();
    for _ in 0..1000 {
        chain.sweep();
    }
    let mut emp = EmpiricalDistribution::new(p.n());
    for _ in 0..sweeps {
        chain.sweep();
        emp.record(chain.state());
    }
    emp
}

#[test]
fn samplers_agree_with_each_other() {
    // Small-n stand-ins for the uniqueness, tilted and two-mode regimes.
    for (t1, t2) in [(0.0, 0.25), (0.25, 0.25), (0.0, 0.9)] {
        let p = ModelParams::from_theta(4, t1, t2).unwrap();
        let gibbs = degree_distribution(&p, SamplerKind::Gibbs, 1, 300_000).degree_probs();
        let glauber = degree_distribution(&p, SamplerKind::Glauber, 2, 300_000).degree_probs();
        let tv = tv_distance_keyed(&gibbs, &glauber);
        assert!(tv < 0.03, "theta ({t1}, {t2}): TV {tv}");
    }
}

#[test]
fn degree_sequences_match_oracle_at_n5() {
    let p = ModelParams::new(5, -0.3, 0.6).unwrap();
    let exact = enumerate(&p).unwrap();
    for (kind, seed) in [(SamplerKind::Gibbs, 3), (SamplerKind::Glauber, 4)] {
        let emp = degree_distribution(&p, kind, seed, 300_000).degree_probs();
        let tv = tv_distance_keyed(&emp, &exact.degree_dist);
        assert!(tv < 0.02, "{}: TV {tv}", kind.name());
    }
}

#[test]
fn gibbs_edge_frequency_matches_exact_marginal() {
    let p = ModelParams::new(4, -0.2, 0.4).unwrap();
    let exact = exact_edge_probability(&p).unwrap();
    assert!((exact - 0.557_101_335_570_27).abs() < 1e-12);
    let mut chain = SamplerKind::Gibbs.chain(&p, &InitialGraph::Empty, 8).unwrap();
    for _ in 0..100 {
        chain.sweep();
    }
    let sweeps = 200_000;
    let mut hits = 0u64;
    for _ in 0..sweeps {
        chain.sweep();
        hits += chain.state().has_edge(0, 1).unwrap() as u64;
    }
    let freq = hits as f64 / sweeps as f64;
    // Successive sweeps of this chain are close to independent at n = 4.
    let se = (exact * (1.0 - exact) / sweeps as f64).sqrt();
    assert!((freq - exact).abs() < 3.0 * se, "freq {freq}, exact {exact}, se {se}");
}

#[test]
fn degrees_stay_inside_ordering_envelope() {
    let p = ModelParams::new(200, -0.3, 0.8).unwrap();
    let (a1, a2) = ordering_bounds(&p);
    let cfg = ChainConfig { burn_in: 50, ..ChainConfig::new(12, 200) };
    let out = twostar::run_gibbs(&p, &cfg).unwrap();
    let outside = out
        .samples
        .iter()
        .filter(|s| s.min < a1 - 0.1 || s.max > a2 + 0.1)
        .count();
    assert!((outside as f64) < 0.01 * out.samples.len() as f64, "{outside} of {}", out.samples.len());
}

#[test]
fn glauber_reaches_erdos_renyi_limit() {
    let p = ModelParams::new_unchecked(50, 0.0, 1e-12);
    let out = twostar::run_glauber(&p, &ChainConfig { burn_in: 10, init: InitialGraph::Empty, ..ChainConfig::new(4, 50) }).unwrap();
    let mean = out.samples.iter().map(|s| s.mean).sum::<f64>() / out.samples.len() as f64;
    assert!((mean - 0.5).abs() < 0.01, "{mean}");
}

#[test]
fn given_initial_graph_is_used() {
    let p = ModelParams::from_theta(6, 0.0, 0.3).unwrap();
    let g = AdjacencyState::complete(6).unwrap();
    let a = twostar::run_gibbs(&p, &ChainConfig { burn_in: 0, init: InitialGraph::Given(g.clone()), ..ChainConfig::new(1, 3) }).unwrap();
    let b = twostar::run_gibbs(&p, &ChainConfig { burn_in: 0, init: InitialGraph::Complete, ..ChainConfig::new(1, 3) }).unwrap();
    assert!(a.same_trajectory(&b));
}
