//! Exhaustive solvers for γ, γ_t and γ_t2 on small graphs.
//!
//! Subsets are `u64` bitmasks enumerated by increasing cardinality
//! (Gosper's hack), so the first feasible subset found is a minimum witness.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub const MAX_ORACLE_N: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices; exhaustive search is limited to {MAX_ORACLE_N}")]
    TooLarge(usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub gamma: usize,
    pub gamma_t: usize,
    pub gamma_t2: usize,
    pub gamma_witness: VertexSet,
    pub gamma_t_witness: VertexSet,
    pub gamma_t2_witness: VertexSet,
}

struct Masks {
    n: usize,
    open: Vec<u64>,
    closed: Vec<u64>,
    /// Vertices at distance one or two, excluding the vertex itself.
    within_two: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Result<Self, OracleError> {
        let n = g.n();
        if n > MAX_ORACLE_N {
            return Err(OracleError::TooLarge(n));
        }
        let open: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0, |acc, &u| acc | 1 << u))
            .collect();
        let closed = (0..n).map(|v| open[v] | 1 << v).collect();
        let within_two = (0..n)
            .map(|v| {
                let reach = g.neighbors(v).iter().fold(open[v], |acc, &u| acc | open[u]);
                reach & !(1 << v)
            })
            .collect();
        Ok(Self {
            n,
            open,
            closed,
            within_two,
        })
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    fn dominates(&self, set: u64) -> bool {
        members(set).fold(0, |acc, v| acc | self.closed[v]) == self.full()
    }

    fn no_isolated(&self, g: &Graph) -> Result<(), OracleError> {
        match g.isolated_vertex() {
            Some(v) => Err(OracleError::IsolatedVertex(v + 1)),
            None => Ok(()),
        }
    }
}

fn members(set: u64) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            v
        })
    })
}

/// Smallest `k >= min_k` with a `k`-subset satisfying `pred`.
fn smallest(n: usize, min_k: usize, pred: impl Fn(u64) -> bool) -> Option<(usize, u64)> {
    for k in min_k..=n {
        if k == 0 {
            if pred(0) {
                return Some((0, 0));
            }
            continue;
        }
        let limit = 1u64 << n;
        let mut set = (1u64 << k) - 1;
        while set < limit {
            if pred(set) {
                return Some((k, set));
            }
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            set = (((ripple ^ set) >> 2) / low) | ripple;
        }
    }
    None
}

fn to_set(mask: u64) -> VertexSet {
    members(mask).collect()
}

pub fn brute_force_gamma(g: &Graph) -> Result<(usize, VertexSet), OracleError> {
    let masks = Masks::new(g)?;
    let (k, set) = smallest(masks.n, 0, |s| masks.dominates(s)).expect("V dominates itself");
    Ok((k, to_set(set)))
}

pub fn brute_force_gamma_t(g: &Graph) -> Result<(usize, VertexSet), OracleError> {
    let masks = Masks::new(g)?;
    masks.no_isolated(g)?;
    let (k, set) = smallest(masks.n, 2, |s| {
        members(s).all(|v| masks.open[v] & s != 0) && masks.dominates(s)
    })
    .expect("V is a total dominating set without isolated vertices");
    Ok((k, to_set(set)))
}

pub fn brute_force_gamma_t2(g: &Graph) -> Result<(usize, VertexSet), OracleError> {
    let masks = Masks::new(g)?;
    masks.no_isolated(g)?;
    let (k, set) = smallest(masks.n, 2, |s| {
        masks.dominates(s) && members(s).all(|v| masks.within_two[v] & s != 0)
    })
    .expect("V is semitotal dominating without isolated vertices");
    Ok((k, to_set(set)))
}

pub fn report(g: &Graph) -> Result<OracleReport, OracleError> {
    let (gamma, gamma_witness) = brute_force_gamma(g)?;
    let (gamma_t, gamma_t_witness) = brute_force_gamma_t(g)?;
    let (gamma_t2, gamma_t2_witness) = brute_force_gamma_t2(g)?;
    assert!(
        gamma <= gamma_t2 && gamma_t2 <= gamma_t,
        "sandwich violated: {gamma} {gamma_t2} {gamma_t}"
    );
    Ok(OracleReport {
        gamma,
        gamma_t,
        gamma_t2,
        gamma_witness,
        gamma_t_witness,
        gamma_t2_witness,
    })
}
