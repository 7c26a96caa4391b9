//! Undirected simple graphs in compressed adjacency form, plus the
//! domination checkers every other module leans on.
//!
//! Vertices are `0..n` internally. Every text format (edge lists, DIMACS,
//! vertex-set lines) uses 1-based ids; the shift happens only in this module.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed header, expected `n m` or `p edge n m`")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge line")]
    MalformedLine { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("missing header line")]
    Empty,
    #[error("vertex {0} is isolated; semitotal domination is undefined")]
    IsolatedVertex(usize),
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    /// Parses whitespace-separated 1-based ids; duplicates are rejected.
    pub fn parse(text: &str, n: usize) -> Result<Self, GraphError> {
        let members = parse_id_list(text, n)?;
        let mut seen = vec![false; n];
        for &v in &members {
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::DuplicateVertex(v + 1));
            }
        }
        Ok(Self::new(members))
    }

    /// One line of 1-based ids, space separated.
    pub fn to_line(&self) -> String {
        let ids: Vec<String> = self.members.iter().map(|v| (v + 1).to_string()).collect();
        ids.join(" ")
    }
}

/// Reads whitespace-separated 1-based ids in order, shifted to 0-based.
/// Blank lines and `#` comments are skipped.
pub fn parse_id_list(text: &str, n: usize) -> Result<Vec<usize>, GraphError> {
    let mut ids = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            ids.push(parse_id(tok, idx + 1, n)?);
        }
    }
    Ok(ids)
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Undirected simple graph stored as offset-indexed neighbor arrays.
///
/// `neighbors[offsets[v]..offsets[v + 1]]` holds the strictly increasing
/// neighbor list of `v`; the relation is symmetric.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects self-loops, duplicates and
    /// out-of-range endpoints; the reported `line` is the 1-based edge index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        line: idx + 1,
                        vertex: w as i64 + 1,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    line: idx + 1,
                    vertex: u + 1,
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge {
                    line: idx + 1,
                    u: u + 1,
                    v: v + 1,
                });
            }
        }
        Ok(Self::from_simple_edges(n, edges))
    }

    /// Builds from edges already known to be simple and in range.
    pub(crate) fn from_simple_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        for &(u, v) in edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Self { offsets, neighbors }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n()).find(|&v| self.degree(v) == 0)
    }

    /// True iff a BFS from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == n
    }

    /// Every `u != v` with distance at most two from `v`.
    pub fn within_two(&self, v: usize) -> VertexSet {
        let mut out = Vec::new();
        for &u in self.neighbors(v) {
            out.push(u);
            out.extend(self.neighbors(u).iter().copied().filter(|&w| w != v));
        }
        VertexSet::new(out)
    }

    /// `d(u, v) <= 2` for `u != v`.
    pub fn within_distance_two(&self, u: usize, v: usize) -> bool {
        if self.has_edge(u, v) {
            return true;
        }
        // Common neighbor via merge of the two sorted lists.
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Edge-list text: header `n m`, then one 1-based `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

fn parse_id(tok: &str, line: usize, n: usize) -> Result<usize, GraphError> {
    let raw: i64 = tok
        .parse()
        .map_err(|_| GraphError::MalformedLine { line })?;
    if raw < 1 || raw as u64 > n as u64 {
        return Err(GraphError::VertexOutOfRange {
            line,
            vertex: raw,
            n,
        });
    }
    Ok(raw as usize - 1)
}

/// Parses either the plain edge-list format (`n m` header, `u v` lines) or
/// the DIMACS-like variant (`p edge n m`, `e u v`). Blank lines and lines
/// starting with `#` (or `c` in DIMACS) are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .filter(|(_, l)| l.split_whitespace().next() != Some("c"));

    let (header_line, header) = lines.next().ok_or(GraphError::Empty)?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let dimacs = head.first() == Some(&"p");
    let counts = if dimacs {
        match head.as_slice() {
            ["p", _, n, m] => (n.parse::<usize>(), m.parse::<usize>()),
            _ => return Err(GraphError::MalformedHeader { line: header_line }),
        }
    } else {
        match head.as_slice() {
            [n, m] => (n.parse::<usize>(), m.parse::<usize>()),
            _ => return Err(GraphError::MalformedHeader { line: header_line }),
        }
    };
    let (n, m) = match counts {
        (Ok(n), Ok(m)) => (n, m),
        _ => return Err(GraphError::MalformedHeader { line: header_line }),
    };

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let pair = if dimacs {
            match toks.as_slice() {
                ["e", u, v] => (*u, *v),
                _ => return Err(GraphError::MalformedLine { line }),
            }
        } else {
            match toks.as_slice() {
                [u, v] => (*u, *v),
                _ => return Err(GraphError::MalformedLine { line }),
            }
        };
        let u = parse_id(pair.0, line, n)?;
        let v = parse_id(pair.1, line, n)?;
        if u == v {
            return Err(GraphError::SelfLoop {
                line,
                vertex: u + 1,
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge {
                line,
                u: u + 1,
                v: v + 1,
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_simple_edges(n, &edges))
}

/// The first condition a candidate set breaks, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Vertex (0-based) with no closed neighbor in the set.
    Domination(usize),
    /// Member (0-based) with no other member within distance two.
    Partner(usize),
    /// Member id outside `0..n`.
    OutOfRange(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Domination(v) => write!(f, "domination: vertex {} is not dominated", v + 1),
            Violation::Partner(v) => {
                write!(
                    f,
                    "partner: member {} has no other member within distance 2",
                    v + 1
                )
            }
            Violation::OutOfRange(v) => write!(f, "range: vertex {} does not exist", v + 1),
        }
    }
}

fn first_undominated(g: &Graph, in_set: &[bool]) -> Option<usize> {
    (0..g.n()).find(|&v| !in_set[v] && !g.neighbors(v).iter().any(|&u| in_set[u]))
}

fn membership(g: &Graph, d: &VertexSet) -> Result<Vec<bool>, Violation> {
    let mut in_set = vec![false; g.n()];
    for v in d.iter() {
        if v >= g.n() {
            return Err(Violation::OutOfRange(v));
        }
        in_set[v] = true;
    }
    Ok(in_set)
}

pub fn is_dominating(g: &Graph, d: &VertexSet) -> bool {
    match membership(g, d) {
        Ok(in_set) => first_undominated(g, &in_set).is_none(),
        Err(_) => false,
    }
}

/// Checks domination first, then the distance-two partner condition for
/// every member. `Ok(None)` means the set is a semitotal dominating set.
/// Graphs with an isolated vertex are rejected as invalid instances.
pub fn semitotal_violation(g: &Graph, d: &VertexSet) -> Result<Option<Violation>, GraphError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(GraphError::IsolatedVertex(v + 1));
    }
    let in_set = match membership(g, d) {
        Ok(s) => s,
        Err(v) => return Ok(Some(v)),
    };
    if let Some(v) = first_undominated(g, &in_set) {
        return Ok(Some(Violation::Domination(v)));
    }
    for u in d.iter() {
        let partnered = g
            .neighbors(u)
            .iter()
            .any(|&w| in_set[w] || g.neighbors(w).iter().any(|&x| x != u && in_set[x]));
        if !partnered {
            return Ok(Some(Violation::Partner(u)));
        }
    }
    Ok(None)
}

pub fn is_semitotal_dominating(g: &Graph, d: &VertexSet) -> Result<bool, GraphError> {
    semitotal_violation(g, d).map(|v| v.is_none())
}
