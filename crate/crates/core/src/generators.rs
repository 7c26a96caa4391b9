//! Seeded generators for strongly chordal families: trees, interval graphs
//! and block graphs.
//!
//! Randomness comes from [`SplitMix64`], whose constants are fixed here so
//! that corpora can be regenerated bit-for-bit by other implementations.

use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;

/// SplitMix64 (Steele, Lea, Flood 2014).
///
/// ```text
/// state += 0x9E3779B97F4A7C15
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// return z ^ (z >> 31)
/// ```
///
/// All arithmetic wraps modulo 2^64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` by multiply-shift: `(x * bound) >> 64`.
    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// Fisher–Yates from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Tree,
    Interval,
    Block,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Tree, Family::Interval, Family::Block];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Interval => "interval",
            Family::Block => "block",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tree" => Ok(Family::Tree),
            "interval" => Ok(Family::Interval),
            "block" => Ok(Family::Block),
            other => Err(format!(
                "unknown family `{other}` (expected tree, interval or block)"
            )),
        }
    }
}

/// Mean interval length is `scale / n`; 4.0 gives roughly `m ≈ 4n`.
pub const DEFAULT_INTERVAL_SCALE: f64 = 4.0;
pub const DEFAULT_MAX_CLIQUE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    /// Interval length scale.
    Scale(f64),
    /// Largest block size.
    MaxClique(usize),
    Default,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub density: Density,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            seed,
            density: Density::Default,
        }
    }

    pub fn generate(&self) -> Graph {
        match (self.family, self.density) {
            (Family::Tree, _) => random_tree(self.n, self.seed),
            (Family::Interval, Density::Scale(s)) => random_interval_graph(self.n, self.seed, s),
            (Family::Interval, _) => {
                random_interval_graph(self.n, self.seed, DEFAULT_INTERVAL_SCALE)
            }
            (Family::Block, Density::MaxClique(k)) => random_block_graph(self.n, self.seed, k),
            (Family::Block, _) => random_block_graph(self.n, self.seed, DEFAULT_MAX_CLIQUE),
        }
    }
}

/// Uniform labeled tree decoded from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 3, "trees need n >= 3");
    let mut rng = SplitMix64::new(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.below(n)).collect();

    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    // Linear-time decoding: `leaf` is the smallest current leaf.
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &c in &code {
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_simple_edges(n, &edges)
}

/// Interval graph on `n` random intervals of `[0, 1)`.
///
/// Left endpoints are uniform; lengths are uniform in `[0, 2 * scale / n)`.
/// Whenever the union of the intervals seen so far (in left-endpoint order)
/// stops short of the next left endpoint, the interval reaching furthest is
/// stretched to touch it, so the result is always connected.
pub fn random_interval_graph(n: usize, seed: u64, scale: f64) -> Graph {
    assert!(n >= 3, "interval graphs need n >= 3");
    let mut rng = SplitMix64::new(seed);
    let max_len = 2.0 * scale / n as f64;
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for _ in 0..n {
        let l = rng.next_f64();
        left.push(l);
        right.push(l + rng.next_f64() * max_len);
    }
    let mut by_left: Vec<usize> = (0..n).collect();
    by_left.sort_by(|&a, &b| left[a].total_cmp(&left[b]).then(a.cmp(&b)));

    let mut edges = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut reach = by_left[0];
    for (k, &v) in by_left.iter().enumerate() {
        if k > 0 && right[reach] < left[v] {
            right[reach] = left[v];
        }
        active.retain(|&u| right[u] >= left[v]);
        edges.extend(active.iter().map(|&u| (u, v)));
        active.push(v);
        if right[v] > right[reach] {
            reach = v;
        }
    }
    Graph::from_simple_edges(n, &edges)
}

/// Random tree of cliques: blocks of size `2..=max_clique` glued at single
/// cut vertices. Labels are shuffled afterwards.
pub fn random_block_graph(n: usize, seed: u64, max_clique: usize) -> Graph {
    assert!(n >= 3, "block graphs need n >= 3");
    assert!(max_clique >= 2, "blocks need at least two vertices");
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    let mut size = 1;
    while size < n {
        let cut = rng.below(size);
        let block = rng.between(2, max_clique).min(n - size + 1);
        let mut members = vec![cut];
        members.extend(size..size + block - 1);
        for (a, &u) in members.iter().enumerate() {
            for &w in &members[a + 1..] {
                edges.push((u, w));
            }
        }
        size += block - 1;
    }
    let mut label: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut label);
    let edges: Vec<_> = edges
        .into_iter()
        .map(|(u, v)| (label[u], label[v]))
        .collect();
    Graph::from_simple_edges(n, &edges)
}
