#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twostar::AdjacencyState;

/// Literal `Σ_i Σ_{j<l, j,l≠i} x_ij x_il`.
pub fn triple_sum_two_stars(g: &AdjacencyState) -> u64 {
    let n = g.n();
    let mut t = 0;
    for i in 0..n {
        for j in 0..n {
            for l in (j + 1)..n {
                if j != i && l != i && g.has_edge(i, j).unwrap() && g.has_edge(i, l).unwrap() {
                    t += 1;
                }
            }
        }
    }
    t
}

fn spin(g: &AdjacencyState, i: usize, j: usize) -> i64 {
    if g.has_edge(i, j).unwrap() {
        1
    } else {
        -1
    }
}

/// `(Σ_i Σ_{j<l≠i} y_ij y_il, Σ_{i<j} y_ij)` over the ±1 spin matrix.
pub fn spin_brute(g: &AdjacencyState) -> (i64, i64) {
    let n = g.n();
    let mut t = 0;
    let mut e = 0;
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            if i < j {
                e += spin(g, i, j);
            }
            for l in (j + 1)..n {
                if l != i {
                    t += spin(g, i, j) * spin(g, i, l);
                }
            }
        }
    }
    (t, e)
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> AdjacencyState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = AdjacencyState::empty(n).unwrap();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                g.toggle_edge(i, j).unwrap();
            }
        }
    }
    g
}
