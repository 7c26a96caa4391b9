//! Minimum semitotal dominating sets of strongly chordal graphs.
//!
//! A semitotal dominating set is a dominating set in which every member has
//! another member within distance two. On strongly chordal graphs a minimum
//! one can be found in `O(n + m)` time from a strong elimination ordering:
//!
//! ```
//! use semitotal::{find_seo, parse_edge_list, solve};
//!
//! let g = parse_edge_list("4 3\n1 2\n2 3\n3 4\n").unwrap();
//! let seo = find_seo(&g).unwrap();
//! let result = solve(&g, &seo).unwrap();
//! assert_eq!(result.size, 2);
//! ```

pub mod bench;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod ordering;
pub mod solver;

pub use graph::{
    is_dominating, is_semitotal_dominating, parse_edge_list, parse_id_list, semitotal_violation,
    Graph, GraphError, VertexSet, Violation,
};
pub use oracle::{
    brute_force_gamma, brute_force_gamma_t, brute_force_gamma_t2, report, OracleError, OracleReport,
};
pub use ordering::{find_seo, is_simple_vertex, verify_seo, OrderingError, SeoOrdering};
pub use solver::{
    solve, solve_with, solve_with_trace, IterationEvent, SemiTdResult, SolveError, SolveOptions,
    Step,
};
