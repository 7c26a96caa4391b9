//! Definitional re-implementations used to cross-check the library.
//!
//! Nothing here calls into the ordering, solver or oracle modules; only the
//! adjacency of [`Graph`] is read.

#![allow(dead_code)]

use std::collections::VecDeque;

use semitotal::Graph;

/// Position of each vertex in `order`.
pub fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; order.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    pos
}

/// BFS distances from `src`, capped: anything beyond `cap` is `usize::MAX`.
pub fn distances(g: &Graph, src: usize, cap: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == cap {
            continue;
        }
        for &u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// `N_i[v]`: `v` together with its neighbors at positions `>= i`.
pub fn forward_closed(g: &Graph, pos: &[usize], i: usize, v: usize) -> Vec<bool> {
    let mut set = vec![false; g.n()];
    set[v] = true;
    for &u in g.neighbors(v) {
        set[u] = pos[u] >= i;
    }
    set
}

/// `N_i²[v]`: `v` together with vertices at positions `>= i` within distance
/// two of `v` in the whole graph.
pub fn forward_ball2(g: &Graph, pos: &[usize], i: usize, v: usize) -> Vec<bool> {
    let dist = distances(g, v, 2);
    (0..g.n())
        .map(|u| u == v || (pos[u] >= i && dist[u] <= 2))
        .collect()
}

pub fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Highest-position neighbor of the vertex at position `p`, or `p` itself.
pub fn f_position(g: &Graph, order: &[usize], pos: &[usize], p: usize) -> usize {
    g.neighbors(order[p])
        .iter()
        .map(|&u| pos[u])
        .filter(|&q| q > p)
        .max()
        .unwrap_or(p)
}

/// The SEO condition checked over all triples: for every `i` and every
/// `j <= k` in `N_i[v_i]`, `N_i[v_j] ⊆ N_i[v_k]`.
pub fn is_seo_by_definition(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let pos = positions(order);
    if pos.contains(&usize::MAX) {
        return false;
    }
    (0..n).all(|i| {
        let head = forward_closed(g, &pos, i, order[i]);
        let mut members: Vec<usize> = (0..n).filter(|&u| head[u]).map(|u| pos[u]).collect();
        members.sort_unstable();
        let hoods: Vec<Vec<bool>> = members
            .iter()
            .map(|&q| forward_closed(g, &pos, i, order[q]))
            .collect();
        (0..hoods.len()).all(|a| (a..hoods.len()).all(|b| subset(&hoods[a], &hoods[b])))
    })
}

fn is_semitotal(g: &Graph, within2: &[u32], set: u32) -> bool {
    (0..g.n()).all(|v| {
        let member = set >> v & 1 == 1;
        let dominated = member || g.neighbors(v).iter().any(|&u| set >> u & 1 == 1);
        dominated && (!member || within2[v] & set & !(1 << v) != 0)
    })
}

/// Exhaustive γ_t2 over all `2^n` subsets; intended for `n <= 16`.
pub fn naive_gamma_t2(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let within2: Vec<u32> = (0..n)
        .map(|v| {
            let dist = distances(g, v, 2);
            (0..n)
                .filter(|&u| dist[u] <= 2)
                .fold(0, |acc, u| acc | 1 << u)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| is_semitotal(g, &within2, s))
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("V itself qualifies when no vertex is isolated")
}

/// Permutation of `0..n` from a seeded xorshift stream.
pub fn random_permutation(n: usize, state: &mut u64) -> Vec<usize> {
    let mut next = || {
        *state ^= *state << 13;
        *state ^= *state >> 7;
        *state ^= *state << 17;
        *state
    };
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, (next() % (i as u64 + 1)) as usize);
    }
    order
}
