//! Strong elimination orderings.
//!
//! An ordering `v_0, ..., v_{n-1}` is *strong* when for every position `i`
//! and every pair `j <= k` of positions in the closed forward neighborhood
//! `N_i[v_i]`, `N_i[v_j]` is contained in `N_i[v_k]`, where `N_i[x]` keeps
//! only vertices at positions `>= i`.
//!
//! [`find_seo`] builds an ordering by repeatedly deleting a simple vertex and
//! then gates the result through [`verify_seo`], so every [`SeoOrdering`] it
//! returns is verified.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Orderings on at most this many vertices fall back to exhaustive search
/// when the elimination result fails verification.
pub const EXHAUSTIVE_FALLBACK_MAX_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("ordering is not a permutation of the {n} vertices")]
    NotAPermutation { n: usize },
    #[error("graph is not strongly chordal")]
    NotStronglyChordal,
    #[error("ordering is not a strong elimination ordering")]
    NotAnSeo,
}

/// A vertex permutation together with everything the solver reads from it.
///
/// Neighbor lists are stored in position space: `neighbors_at(p)` lists the
/// SEO positions of the neighbors of `order[p]`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeoOrdering {
    order: Vec<usize>,
    pos: Vec<usize>,
    f: Vec<usize>,
    fwd_offsets: Vec<usize>,
    fwd: Vec<usize>,
    verified: bool,
}

impl SeoOrdering {
    /// Builds the position-space structures without checking strength.
    pub fn from_order(g: &Graph, order: Vec<usize>) -> Result<Self, OrderingError> {
        let n = g.n();
        let not_perm = OrderingError::NotAPermutation { n };
        if order.len() != n {
            return Err(not_perm);
        }
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(not_perm);
            }
            pos[v] = p;
        }

        let mut fwd_offsets = Vec::with_capacity(n + 1);
        fwd_offsets.push(0);
        for &v in &order {
            fwd_offsets.push(fwd_offsets.last().unwrap() + g.degree(v));
        }
        // Visiting positions in increasing order fills each list sorted.
        let mut fill = fwd_offsets[..n].to_vec();
        let mut fwd = vec![0; 2 * g.m()];
        for (q, &v) in order.iter().enumerate() {
            for &u in g.neighbors(v) {
                let p = pos[u];
                fwd[fill[p]] = q;
                fill[p] += 1;
            }
        }
        let f = (0..n)
            .map(|p| {
                let last = fwd[fwd_offsets[p]..fwd_offsets[p + 1]].last().copied();
                last.map_or(p, |q| q.max(p))
            })
            .collect();

        Ok(Self {
            order,
            pos,
            f,
            fwd_offsets,
            fwd,
            verified: false,
        })
    }

    /// [`from_order`](Self::from_order) followed by the strength check.
    pub fn verified(g: &Graph, order: Vec<usize>) -> Result<Self, OrderingError> {
        let mut seo = Self::from_order(g, order)?;
        if !seo.is_strong() {
            return Err(OrderingError::NotAnSeo);
        }
        seo.verified = true;
        Ok(seo)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn vertex(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Position of the highest-positioned neighbor of `order[p]`, or `p`
    /// itself when no neighbor comes later.
    pub fn f_of(&self, p: usize) -> usize {
        self.f[p]
    }

    pub fn neighbors_at(&self, p: usize) -> &[usize] {
        &self.fwd[self.fwd_offsets[p]..self.fwd_offsets[p + 1]]
    }

    /// Neighbor positions of `order[p]` that are `>= i`.
    pub fn tail_at(&self, p: usize, i: usize) -> &[usize] {
        let nb = self.neighbors_at(p);
        &nb[nb.partition_point(|&q| q < i)..]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `{v} ∪ {u ∈ N(v) : pos(u) >= i}` in original vertex ids.
    pub fn forward_closed_neighborhood(&self, i: usize, v: usize) -> VertexSet {
        let p = self.pos[v];
        let mut out: Vec<usize> = self.tail_at(p, i).iter().map(|&q| self.order[q]).collect();
        out.push(v);
        VertexSet::new(out)
    }

    /// One-based ids in position order, space separated.
    pub fn to_line(&self) -> String {
        let ids: Vec<String> = self.order.iter().map(|v| (v + 1).to_string()).collect();
        ids.join(" ")
    }

    /// Transitivity of inclusion reduces the pairwise condition to
    /// consecutive members of each `N_i[v_i]`.
    fn is_strong(&self) -> bool {
        (0..self.n()).all(|i| {
            let mut prev = i;
            self.tail_at(i, i + 1).iter().all(|&k| {
                let ok = self.forward_subset(i, prev, k);
                prev = k;
                ok
            })
        })
    }

    /// `N_i[a] ⊆ N_i[b]` for positions `a, b >= i`.
    fn forward_subset(&self, i: usize, a: usize, b: usize) -> bool {
        let nb = self.neighbors_at(b);
        let inside = |x: usize| x == b || nb.binary_search(&x).is_ok();
        inside(a) && self.tail_at(a, i).iter().all(|&x| inside(x))
    }

    pub fn forward_view(&self) -> ForwardView<'_> {
        ForwardView {
            seo: self,
            cursor: self.fwd_offsets[..self.n()].to_vec(),
            iteration: 0,
        }
    }
}

/// Lazily advanced cursors over the position-sorted neighbor lists.
///
/// The iteration index only moves forward, so every cursor moves at most
/// `deg(v)` times over a whole run.
#[derive(Debug, Clone)]
pub struct ForwardView<'a> {
    seo: &'a SeoOrdering,
    cursor: Vec<usize>,
    iteration: usize,
}

impl<'a> ForwardView<'a> {
    pub fn begin(&mut self, i: usize) {
        assert!(i >= self.iteration, "forward view moved backwards");
        self.iteration = i;
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Neighbor positions of `p` at or after the current iteration.
    pub fn tail(&mut self, p: usize) -> &'a [usize] {
        let end = self.seo.fwd_offsets[p + 1];
        let mut c = self.cursor[p];
        while c < end && self.seo.fwd[c] < self.iteration {
            c += 1;
        }
        self.cursor[p] = c;
        &self.seo.fwd[c..end]
    }

    /// `|N_i[v]|` for `v = order[p]` and the current iteration `i`.
    pub fn closed_degree(&mut self, p: usize) -> usize {
        self.tail(p).len() + usize::from(p >= self.iteration)
    }
}

/// Checks the strong elimination property of `order` (0-based vertex ids in
/// position order).
pub fn verify_seo(g: &Graph, order: &[usize]) -> Result<bool, OrderingError> {
    Ok(SeoOrdering::from_order(g, order.to_vec())?.is_strong())
}

pub fn is_simple_vertex(g: &Graph, v: usize) -> bool {
    Eliminator::new(g).check_simple(v)
}

/// Computes a verified strong elimination ordering.
///
/// Repeatedly deletes the lowest-id simple vertex of the remaining graph,
/// restricted to vertices whose deletion keeps earlier neighborhoods in
/// inclusion order. Small graphs whose result still fails verification are
/// searched exhaustively.
pub fn find_seo(g: &Graph) -> Result<SeoOrdering, OrderingError> {
    let order = Eliminator::new(g).run()?;
    match SeoOrdering::verified(g, order) {
        Ok(seo) => Ok(seo),
        Err(_) if g.n() <= EXHAUSTIVE_FALLBACK_MAX_N => exhaustive_seo(g),
        Err(_) => Err(OrderingError::NotStronglyChordal),
    }
}

fn exhaustive_seo(g: &Graph) -> Result<SeoOrdering, OrderingError> {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    loop {
        if verify_seo(g, &perm)? {
            return SeoOrdering::verified(g, perm);
        }
        if !next_permutation(&mut perm) {
            return Err(OrderingError::NotStronglyChordal);
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// A group of vertices that must all be deleted before the waiters may go.
#[derive(Debug)]
struct Barrier {
    remaining: usize,
    waiters: Vec<usize>,
}

/// Simple-vertex elimination over a shrinking induced subgraph.
///
/// A vertex that is simple stays simple when other vertices are deleted, so
/// only non-simple vertices within distance two of a deleted vertex are
/// re-examined.
struct Eliminator<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    simple: Vec<bool>,
    pending: Vec<usize>,
    barriers: Vec<Barrier>,
    member_of: Vec<Vec<usize>>,
    simple_set: BTreeSet<usize>,
    eligible: BTreeSet<usize>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'g> Eliminator<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Self {
            g,
            alive: vec![true; n],
            deg: (0..n).map(|v| g.degree(v)).collect(),
            simple: vec![false; n],
            pending: vec![0; n],
            barriers: Vec::new(),
            member_of: vec![Vec::new(); n],
            simple_set: BTreeSet::new(),
            eligible: BTreeSet::new(),
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    fn closed_alive(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(v).chain(
            self.g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| self.alive[u]),
        )
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// `N[a] ⊆ N[b]` in the current subgraph.
    fn closed_subset(&mut self, a: usize, b: usize) -> bool {
        let e = self.next_epoch();
        self.stamp[b] = e;
        for &u in self.g.neighbors(b) {
            if self.alive[u] {
                self.stamp[u] = e;
            }
        }
        let stamp = &self.stamp;
        std::iter::once(a)
            .chain(
                self.g
                    .neighbors(a)
                    .iter()
                    .copied()
                    .filter(|&u| self.alive[u]),
            )
            .all(|u| stamp[u] == e)
    }

    /// Closed neighbors of `v` sorted by closed-neighborhood size.
    fn chain_candidates(&self, v: usize) -> Vec<usize> {
        let mut members: Vec<usize> = self.closed_alive(v).collect();
        members.sort_by_key(|&u| (self.deg[u], u != v));
        members
    }

    fn check_simple(&mut self, v: usize) -> bool {
        let members = self.chain_candidates(v);
        members.windows(2).all(|w| self.closed_subset(w[0], w[1]))
    }

    fn set_simple(&mut self, v: usize) {
        self.simple[v] = true;
        self.simple_set.insert(v);
        if self.pending[v] == 0 {
            self.eligible.insert(v);
        }
    }

    fn run(mut self) -> Result<Vec<usize>, OrderingError> {
        let n = self.g.n();
        for v in 0..n {
            if self.check_simple(v) {
                self.set_simple(v);
            }
        }
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            // A stuck precedence set falls back to any simple vertex; the
            // verification gate decides whether the result is usable.
            let v = self
                .eligible
                .first()
                .or_else(|| self.simple_set.first())
                .copied()
                .ok_or(OrderingError::NotStronglyChordal)?;
            order.push(v);
            self.eliminate(v);
        }
        Ok(order)
    }

    fn eliminate(&mut self, v: usize) {
        // Neighbors with strictly smaller closed neighborhoods must leave
        // before those with larger ones.
        let chain: Vec<usize> = self
            .chain_candidates(v)
            .into_iter()
            .filter(|&u| u != v)
            .collect();
        let mut start = 0;
        let mut groups = Vec::new();
        for k in 1..=chain.len() {
            if k == chain.len() || self.deg[chain[k]] != self.deg[chain[start]] {
                groups.push(&chain[start..k]);
                start = k;
            }
        }
        for pair in groups.windows(2) {
            let id = self.barriers.len();
            self.barriers.push(Barrier {
                remaining: pair[0].len(),
                waiters: pair[1].to_vec(),
            });
            for &u in pair[0] {
                self.member_of[u].push(id);
            }
            for &w in pair[1] {
                self.pending[w] += 1;
                self.eligible.remove(&w);
            }
        }

        self.alive[v] = false;
        self.simple_set.remove(&v);
        self.eligible.remove(&v);
        for id in std::mem::take(&mut self.member_of[v]) {
            let barrier = &mut self.barriers[id];
            barrier.remaining -= 1;
            if barrier.remaining == 0 {
                for w in std::mem::take(&mut barrier.waiters) {
                    self.pending[w] -= 1;
                    if self.pending[w] == 0 && self.simple[w] && self.alive[w] {
                        self.eligible.insert(w);
                    }
                }
            }
        }

        let g = self.g;
        let mut recheck = Vec::new();
        let e = self.next_epoch();
        for &u in g.neighbors(v) {
            if !self.alive[u] {
                continue;
            }
            self.deg[u] -= 1;
            for w in std::iter::once(u).chain(g.neighbors(u).iter().copied()) {
                if self.alive[w] && !self.simple[w] && self.stamp[w] != e {
                    self.stamp[w] = e;
                    recheck.push(w);
                }
            }
        }
        for w in recheck {
            if self.check_simple(w) {
                self.set_simple(w);
            }
        }
    }
}
