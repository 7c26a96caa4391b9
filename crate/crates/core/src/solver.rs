//! Minimum semitotal domination over a strong elimination ordering.
//!
//! The solver walks positions `0..n` once. Each vertex carries three labels:
//!
//! * `dominated` — some selected vertex lies in its closed neighborhood;
//! * `label` — 0 unselected, 1 selected but still lacking another selected
//!   vertex within distance two, 2 selected and partnered;
//! * `mark` — the position of a label-1 vertex in whose closed neighborhood
//!   it lies, or [`UNMARKED`].
//!
//! A label-1 vertex is only ever created by [`Step::SelectForward`], which
//! marks its forward closed neighborhood; the pairing obligation is then
//! discharged later either by a selection next to one of the marked vertices
//! or when the scan reaches the last marked vertex.
//!
//! All work is in position space on [`SeoOrdering`]'s neighbor lists, and the
//! total cost is `O(n + m)`.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::ordering::{ForwardView, OrderingError, SeoOrdering};

pub const UNMARKED: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {0} vertices; at least 3 are required")]
    TooSmall(usize),
    #[error("graph is not connected")]
    DisconnectedInput,
    #[error("ordering is not a verified strong elimination ordering")]
    UnverifiedOrdering,
    #[error("ordering does not match the graph: {0}")]
    Ordering(#[from] OrderingError),
    #[error("iteration {iteration}: invariant violated: {what}")]
    InvariantViolated { iteration: usize, what: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Run the strength check on orderings that were not built verified.
    pub verify_ordering: bool,
    /// Check the per-iteration label invariants (quadratic; small inputs).
    pub check_invariants: bool,
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            verify_ordering: true,
            check_invariants: false,
            trace: false,
        }
    }
}

/// What the solver did at one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Dominated and unmarked: nothing to do.
    Skip,
    /// Undominated, no candidate with a dominated neighbor: select the
    /// highest neighbor with label 1 and mark its closed neighborhood.
    SelectForward,
    /// Undominated with a candidate that already has a dominated neighbor:
    /// select the highest such candidate with label 2.
    SelectCandidate,
    /// Undominated last vertex: select it with label 2.
    SelectLast,
    /// Marked, but a later marked vertex still carries the obligation.
    ClearMark,
    /// Last marked vertex of the obligation is the last vertex overall:
    /// select a vertex of its closed neighborhood.
    PairAtEnd,
    /// Last marked vertex of the obligation: select its highest neighbor.
    PairForward,
}

impl Step {
    pub fn label(self) -> &'static str {
        match self {
            Step::Skip => "skip",
            Step::SelectForward => "a",
            Step::SelectCandidate => "b",
            Step::SelectLast => "c",
            Step::ClearMark => "d-i",
            Step::PairAtEnd => "d-ii",
            Step::PairForward => "d-iii",
        }
    }
}

/// One trace record per position. All vertex ids are original 0-based ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationEvent {
    pub position: usize,
    pub vertex: usize,
    pub step: Step,
    /// Newly selected vertices with the label they received.
    pub selected: Vec<(usize, u8)>,
    /// Vertices whose mark was set in this iteration.
    pub marked: Vec<usize>,
    /// Label-1 vertices promoted to label 2 in this iteration.
    pub paired: Vec<usize>,
}

impl fmt::Display for IterationEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |v: &usize| (v + 1).to_string();
        write!(
            f,
            "i={} v={} case={}",
            self.position + 1,
            self.vertex + 1,
            self.step.label()
        )?;
        if !self.selected.is_empty() {
            let s: Vec<String> = self
                .selected
                .iter()
                .map(|(v, l)| format!("{}:L{}", v + 1, l))
                .collect();
            write!(f, " select={}", s.join(","))?;
        }
        if !self.marked.is_empty() {
            write!(
                f,
                " mark={}",
                self.marked.iter().map(one).collect::<Vec<_>>().join(",")
            )?;
        }
        if !self.paired.is_empty() {
            write!(
                f,
                " pair={}",
                self.paired.iter().map(one).collect::<Vec<_>>().join(",")
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiTdResult {
    pub set: VertexSet,
    pub size: usize,
    pub trace: Option<Vec<IterationEvent>>,
}

/// Label arrays for one run, indexed by SEO position.
#[derive(Debug)]
pub struct SolverState<'a> {
    seo: &'a SeoOrdering,
    pub(crate) dominated: Vec<bool>,
    pub(crate) label: Vec<u8>,
    pub(crate) mark: Vec<usize>,
    pub(crate) has_dominated_neighbor: Vec<bool>,
    pub(crate) view: ForwardView<'a>,
    last_selected: usize,
    event: Option<IterationEvent>,
}

impl<'a> SolverState<'a> {
    pub fn new(seo: &'a SeoOrdering) -> Self {
        let n = seo.n();
        Self {
            seo,
            dominated: vec![false; n],
            label: vec![0; n],
            mark: vec![UNMARKED; n],
            has_dominated_neighbor: vec![false; n],
            view: seo.forward_view(),
            last_selected: UNMARKED,
            event: None,
        }
    }

    pub fn is_dominated(&self, p: usize) -> bool {
        self.dominated[p]
    }

    pub fn label(&self, p: usize) -> u8 {
        self.label[p]
    }

    /// Position of the label-1 vertex `p` is marked for.
    pub fn mark_of(&self, p: usize) -> Option<usize> {
        (self.mark[p] != UNMARKED).then_some(self.mark[p])
    }

    fn closed(&self, p: usize) -> impl Iterator<Item = usize> + 'a {
        let seo = self.seo;
        std::iter::once(p).chain(seo.neighbors_at(p).iter().copied())
    }

    fn dominate(&mut self, p: usize) {
        for q in self.closed(p) {
            if !self.dominated[q] {
                self.dominated[q] = true;
                for r in self.closed(q) {
                    self.has_dominated_neighbor[r] = true;
                }
            }
        }
    }

    fn select(&mut self, p: usize, label: u8) {
        debug_assert_eq!(self.label[p], 0, "position {p} selected twice");
        self.label[p] = label;
        self.last_selected = p;
        if let Some(ev) = self.event.as_mut() {
            ev.selected.push((self.seo.vertex(p), label));
        }
    }

    fn promote(&mut self, s: usize) {
        if self.label[s] == 1 {
            if let Some(ev) = self.event.as_mut() {
                ev.paired.push(self.seo.vertex(s));
            }
        }
        self.label[s] = 2;
    }

    /// Candidates in `N_i[v_i]` whose forward closed neighborhood equals that
    /// of `F(v_i)` and that have a dominated closed neighbor, ascending.
    ///
    /// Every candidate's forward closed neighborhood is already contained in
    /// that of `F(v_i)`, so equal sizes mean equal sets.
    pub fn compute_b(&mut self, i: usize) -> Vec<usize> {
        self.view.begin(i);
        let target = self.view.closed_degree(self.seo.f_of(i));
        let tail = self.view.tail(i);
        std::iter::once(i)
            .chain(tail.iter().copied())
            .filter(|&c| self.has_dominated_neighbor[c] && self.view.closed_degree(c) == target)
            .collect()
    }

    fn max_b(&mut self, i: usize) -> Option<usize> {
        self.view.begin(i);
        let target = self.view.closed_degree(self.seo.f_of(i));
        let tail = self.view.tail(i);
        std::iter::once(i)
            .chain(tail.iter().copied())
            .rev()
            .find(|&c| self.has_dominated_neighbor[c] && self.view.closed_degree(c) == target)
    }

    /// Records that `j`, just selected with label 1 while processing `i`,
    /// needs a partner: every closed neighbor of `j` after `i` gets mark `j`.
    pub fn mark(&mut self, j: usize, i: usize) {
        for q in self.closed(j) {
            if q > i {
                debug_assert!(
                    self.mark[q] == UNMARKED || self.label[self.mark[q]] == 2,
                    "mark on position {q} would discard a live obligation"
                );
                self.mark[q] = j;
                if let Some(ev) = self.event.as_mut() {
                    ev.marked.push(self.seo.vertex(q));
                }
            }
        }
    }

    pub fn unmark(&mut self, s: usize) {
        for q in self.closed(s) {
            self.mark[q] = UNMARKED;
        }
    }

    /// Partners every pending obligation found in `N[p]`. Marks are re-read
    /// as the scan goes because an unmark can clear later entries.
    fn pair_marked_around(&mut self, p: usize) {
        for r in self.closed(p) {
            let s = self.mark[r];
            if s != UNMARKED {
                self.promote(s);
                self.unmark(s);
            }
        }
    }

    fn step(&mut self, i: usize) -> Result<Step, SolveError> {
        let n = self.seo.n();
        let f = self.seo.f_of(i);
        if !self.dominated[i] {
            if f != i {
                match self.max_b(i) {
                    None => {
                        self.select(f, 1);
                        self.mark(f, i);
                        self.dominate(f);
                        Ok(Step::SelectForward)
                    }
                    Some(k) => {
                        self.select(k, 2);
                        self.dominate(k);
                        self.pair_marked_around(k);
                        Ok(Step::SelectCandidate)
                    }
                }
            } else {
                if i != n - 1 {
                    // Only possible when the ordering is not strong.
                    return Err(SolveError::UnverifiedOrdering);
                }
                self.select(i, 2);
                self.dominated[i] = true;
                Ok(Step::SelectLast)
            }
        } else if self.mark[i] != UNMARKED {
            let s = self.mark[i];
            let t = self.seo.f_of(s);
            if i < t {
                self.mark[i] = UNMARKED;
                Ok(Step::ClearMark)
            } else if i == t && f == i {
                // Highest position in N[v_i] other than v_s itself: v_i
                // unless v_i is the vertex waiting for a partner.
                let u = std::iter::once(i)
                    .chain(self.seo.neighbors_at(i).iter().rev().copied())
                    .find(|&u| u != s)
                    .ok_or(SolveError::UnverifiedOrdering)?;
                self.select(u, 2);
                self.promote(s);
                self.mark[i] = UNMARKED;
                Ok(Step::PairAtEnd)
            } else {
                debug_assert_eq!(i, t, "obligation of position {s} outlived F(v_s)");
                self.select(f, 2);
                self.promote(s);
                self.dominate(f);
                self.pair_marked_around(f);
                Ok(Step::PairForward)
            }
        } else {
            Ok(Step::Skip)
        }
    }

    fn violated(i: usize, what: String) -> SolveError {
        SolveError::InvariantViolated {
            iteration: i + 1,
            what,
        }
    }

    /// Head-of-iteration invariants: every earlier position is dominated and
    /// unmarked; every earlier label-1 vertex has a marked neighbor at or
    /// after `i`; closed neighborhoods of label-1 vertices are disjoint.
    fn check_head(&self, i: usize) -> Result<(), SolveError> {
        for j in 0..i {
            if !self.dominated[j] {
                return Err(Self::violated(i, format!("position {} undominated", j + 1)));
            }
            if self.mark[j] != UNMARKED {
                return Err(Self::violated(
                    i,
                    format!("position {} still marked", j + 1),
                ));
            }
            if self.label[j] == 1
                && !self
                    .seo
                    .neighbors_at(j)
                    .iter()
                    .any(|&q| q >= i && self.mark[q] == j)
            {
                return Err(Self::violated(
                    i,
                    format!("label-1 position {} has no live mark", j + 1),
                ));
            }
        }
        let mut owner = vec![UNMARKED; self.seo.n()];
        for s in (0..self.seo.n()).filter(|&s| self.label[s] == 1) {
            for q in self.closed(s) {
                if owner[q] != UNMARKED {
                    return Err(Self::violated(
                        i,
                        format!("label-1 positions {} and {} overlap", owner[q] + 1, s + 1),
                    ));
                }
                owner[q] = s;
            }
        }
        Ok(())
    }

    /// A clear at `i` is only safe when another marked vertex of the same
    /// obligation lies ahead.
    fn check_clear(&self, i: usize) -> Result<(), SolveError> {
        let s = self.mark[i];
        if s != UNMARKED && i < self.seo.f_of(s) {
            let ahead = self.closed(s).any(|r| r > i && self.mark[r] == s);
            if !ahead {
                return Err(Self::violated(
                    i,
                    format!("no marked neighbor of position {} after the clear", s + 1),
                ));
            }
        }
        Ok(())
    }

    fn has_partner(&self, g: &Graph, p: usize) -> bool {
        let v = self.seo.vertex(p);
        (0..self.seo.n())
            .filter(|&q| q != p && self.label[q] > 0)
            .any(|q| g.within_distance_two(v, self.seo.vertex(q)))
    }
}

/// Solves with default options.
pub fn solve(g: &Graph, seo: &SeoOrdering) -> Result<SemiTdResult, SolveError> {
    solve_with(g, seo, SolveOptions::default())
}

pub fn solve_with_trace(g: &Graph, seo: &SeoOrdering) -> Result<SemiTdResult, SolveError> {
    solve_with(
        g,
        seo,
        SolveOptions {
            trace: true,
            ..SolveOptions::default()
        },
    )
}

pub fn solve_with(
    g: &Graph,
    seo: &SeoOrdering,
    opts: SolveOptions,
) -> Result<SemiTdResult, SolveError> {
    let n = g.n();
    if n < 3 {
        return Err(SolveError::TooSmall(n));
    }
    if seo.n() != n {
        return Err(OrderingError::NotAPermutation { n }.into());
    }
    // Following later neighbors from any vertex ends at a vertex with none,
    // so if only the last position lacks one the graph is connected. On a
    // connected graph an SEO has no other such position, so a hit means the
    // graph is disconnected or the ordering is not an SEO; BFS tells which.
    if (0..n - 1).any(|p| seo.f_of(p) == p) {
        return Err(if g.is_connected() {
            SolveError::UnverifiedOrdering
        } else {
            SolveError::DisconnectedInput
        });
    }
    if opts.verify_ordering && !seo.is_verified() {
        SeoOrdering::verified(g, seo.order().to_vec())
            .map_err(|_| SolveError::UnverifiedOrdering)?;
    }

    let mut state = SolverState::new(seo);
    let mut trace = opts.trace.then(|| Vec::with_capacity(n));
    for i in 0..n {
        if opts.check_invariants {
            state.check_head(i)?;
            state.check_clear(i)?;
        }
        if trace.is_some() {
            state.event = Some(IterationEvent {
                position: i,
                vertex: seo.vertex(i),
                step: Step::Skip,
                selected: Vec::new(),
                marked: Vec::new(),
                paired: Vec::new(),
            });
        }
        let step = state.step(i)?;
        if opts.check_invariants && step == Step::SelectCandidate {
            let k = state.last_selected;
            if !state.has_partner(g, k) {
                return Err(SolveError::InvariantViolated {
                    iteration: i + 1,
                    what: format!("candidate at position {} has no selected partner", k + 1),
                });
            }
        }
        if let (Some(t), Some(mut ev)) = (trace.as_mut(), state.event.take()) {
            ev.step = step;
            t.push(ev);
        }
    }

    if let Some(p) = state.label.iter().position(|&l| l == 1) {
        return Err(SolveError::InvariantViolated {
            iteration: n,
            what: format!("position {} ends with label 1", p + 1),
        });
    }
    let set: VertexSet = (0..n)
        .filter(|&p| state.label[p] == 2)
        .map(|p| seo.vertex(p))
        .collect();
    Ok(SemiTdResult {
        size: set.len(),
        set,
        trace,
    })
}
