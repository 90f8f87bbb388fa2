//! Labeled simple graphs with an incrementally maintained degree vector.
//!
//! The adjacency relation is stored as a bit-packed upper triangle: the pair
//! `{i, j}` with `i < j` lives at bit `pair_index(n, i, j)`, which enumerates
//! pairs in lexicographic order `(0,1), (0,2), …, (0,n-1), (1,2), …`. The same
//! ordering is the canonical bitmask used by the exact oracle.
//!
//! Vertices are 0-based. The spin view `y_ij = 2 x_ij - 1` is never stored; the
//! spin degree `k_i = 2 d_i - (n - 1)` and the spin statistics are derived from
//! the degrees on demand.

use std::io::{BufRead, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of the unordered pair `{i, j}` (`i < j`) in lexicographic order.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Number of unordered vertex pairs, `C(n, 2)`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Spin-variable statistics `T(y)` and `E(y)` of a graph.
///
/// Both are integers: `k_i` has the parity of `n - 1`, so the halvings in
/// `T(y) = (Σ k_i² - n(n-1)) / 2` and `E(y) = Σ k_i / 2` are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinStatistics {
    pub two_stars: i64,
    pub edges: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencyState {
    n: usize,
    bits: Vec<u64>,
    degrees: Vec<u32>,
}

impl AdjacencyState {
    pub fn empty(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        Ok(Self {
            n,
            bits: vec![0; pair_count(n).div_ceil(64)],
            degrees: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let pairs = pair_count(n);
        for (w, word) in g.bits.iter_mut().enumerate() {
            let remaining = pairs - w * 64;
            *word = if remaining >= 64 { u64::MAX } else { (1u64 << remaining) - 1 };
        }
        g.degrees.iter_mut().for_each(|d| *d = (n - 1) as u32);
        Ok(g)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (i, j) in edges {
            if !g.has_edge(i, j)? {
                g.toggle_edge(i, j)?;
            }
        }
        Ok(g)
    }

    /// Decodes a canonical pair bitmask (bit `k` is the `k`-th pair in
    /// lexicographic order). Only meaningful for `C(n, 2) <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let mut g = Self::empty(n)?;
        if pair_count(n) > 64 {
            return Err(Error::InvalidParameter(format!(
                "bitmask encoding needs C(n,2) <= 64, n = {n}"
            )));
        }
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> k & 1 == 1 {
                    g.insert_absent(i, j);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Canonical pair bitmask, or `None` when the graph has more than 64 pairs.
    pub fn to_mask(&self) -> Option<u64> {
        (pair_count(self.n) <= 64).then(|| self.bits[0])
    }

    /// Erdős–Rényi graph with independent edge probability `p`.
    pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("edge probability {p} not in [0, 1]")));
        }
        let mut g = Self::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < p {
                    g.insert_absent(i, j);
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> Result<u32> {
        self.check_vertex(i)?;
        Ok(self.degrees[i])
    }

    pub fn has_edge(&self, i: usize, j: usize) -> Result<bool> {
        let k = self.checked_pair(i, j)?;
        Ok(self.bit(k))
    }

    /// Flips the presence of `{i, j}` and returns whether the edge is present
    /// afterwards.
    pub fn toggle_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        let k = self.checked_pair(i, j)?;
        Ok(self.toggle_pair(k, i.min(j), i.max(j)))
    }

    /// `E(x)`, the number of edges.
    pub fn edge_count(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum::<u64>() / 2
    }

    /// `T(x) = Σ_i C(d_i, 2)`, the number of two-stars.
    pub fn two_star_count(&self) -> u64 {
        self.degrees
            .iter()
            .map(|&d| {
                let d = d as u64;
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }

    /// Spin degree `k_i = Σ_{j≠i} y_ij = 2 d_i - (n - 1)`.
    pub fn spin_degree(&self, i: usize) -> Result<i64> {
        self.check_vertex(i)?;
        Ok(self.spin_degree_unchecked(i))
    }

    #[inline]
    pub(crate) fn spin_degree_unchecked(&self, i: usize) -> i64 {
        2 * self.degrees[i] as i64 - (self.n as i64 - 1)
    }

    pub fn spin_statistics(&self) -> SpinStatistics {
        let n = self.n as i64;
        let (sum_k, sum_k2) = (0..self.n).fold((0i64, 0i64), |(s, s2), i| {
            let k = self.spin_degree_unchecked(i);
            (s + k, s2 + k * k)
        });
        SpinStatistics {
            two_stars: (sum_k2 - n * (n - 1)) / 2,
            edges: sum_k / 2,
        }
    }

    /// Edges as `(i, j)` pairs with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (i + 1..n).filter_map(move |j| self.bit(pair_index(n, i, j)).then_some((i, j)))
        })
    }

    pub fn clear(&mut self) {
        self.bits.iter_mut().for_each(|w| *w = 0);
        self.degrees.iter_mut().for_each(|d| *d = 0);
    }

    /// Writes the edge-list dump: a header `n <count>` followed by one `i j`
    /// line per edge, 0-based with `i < j`.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n {}", self.n)?;
        for (i, j) in self.edges() {
            writeln!(w, "{i} {j}")?;
        }
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))??;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad vertex count {count:?}: {e}")))?,
            _ => return Err(Error::Parse(format!("expected header `n <count>`, got {header:?}"))),
        };
        let mut g = Self::empty(n)?;
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace().map(str::parse::<usize>);
            let (i, j) = match (parts.next(), parts.next(), parts.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) if i < j => (i, j),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `i j` with i < j, got {line:?}",
                        lineno + 2
                    )))
                }
            };
            if g.has_edge(i, j)? {
                return Err(Error::Parse(format!("duplicate edge {i} {j}")));
            }
            g.toggle_edge(i, j)?;
        }
        Ok(g)
    }

    #[inline]
    fn bit(&self, k: usize) -> bool {
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    #[inline]
    fn toggle_pair(&mut self, k: usize, i: usize, j: usize) -> bool {
        self.bits[k / 64] ^= 1 << (k % 64);
        let present = self.bit(k);
        if present {
            self.degrees[i] += 1;
            self.degrees[j] += 1;
        } else {
            self.degrees[i] -= 1;
            self.degrees[j] -= 1;
        }
        present
    }

    /// Sets `{i, j}` (`i < j`) assuming it is currently absent.
    #[inline]
    pub(crate) fn insert_absent(&mut self, i: usize, j: usize) {
        let k = pair_index(self.n, i, j);
        debug_assert!(!self.bit(k));
        self.bits[k / 64] |= 1 << (k % 64);
        self.degrees[i] += 1;
        self.degrees[j] += 1;
    }

    /// Sets `{i, j}` (`i < j`) to `present` and returns the previous value.
    #[inline]
    pub(crate) fn set_pair(&mut self, i: usize, j: usize, present: bool) -> bool {
        let k = pair_index(self.n, i, j);
        let old = self.bit(k);
        if old != present {
            self.toggle_pair(k, i, j);
        }
        old
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::VertexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    fn checked_pair(&self, i: usize, j: usize) -> Result<usize> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(pair_index(self.n, i.min(j), i.max(j)))
    }
}
