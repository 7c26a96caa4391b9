//! Scaling benchmark: generate, order, solve, time.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::generators::{Density, Family, GenSpec};
use crate::ordering::{find_seo, OrderingError};
use crate::solver::{solve_with, SolveError, SolveOptions};

pub const CSV_HEADER: &str = "n,m,family,seed,seo_ms,solve_ms,size";

/// Solve timings are the minimum over this many runs.
pub const SOLVE_REPEATS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub family: Family,
    pub seed: u64,
    pub seo_millis: f64,
    pub solve_millis: f64,
    pub result_size: usize,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{:.3},{}",
            self.n,
            self.m,
            self.family,
            self.seed,
            self.seo_millis,
            self.solve_millis,
            self.result_size
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("n = {n}: {source}")]
    Ordering { n: usize, source: OrderingError },
    #[error("n = {n}: {source}")]
    Solve { n: usize, source: SolveError },
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs one row per size. Sizes run sequentially; the timed solve excludes
/// ordering construction and skips the (already done) verification.
pub fn run(
    family: Family,
    sizes: &[usize],
    seed: u64,
    density: Density,
) -> Result<Vec<BenchRow>, BenchError> {
    sizes
        .iter()
        .map(|&n| {
            let g = GenSpec {
                family,
                n,
                seed,
                density,
            }
            .generate();
            let start = Instant::now();
            let seo = find_seo(&g).map_err(|source| BenchError::Ordering { n, source })?;
            let seo_millis = millis(start.elapsed());

            let opts = SolveOptions {
                verify_ordering: false,
                ..SolveOptions::default()
            };
            let mut best = Duration::MAX;
            let mut size = 0;
            for _ in 0..SOLVE_REPEATS {
                let start = Instant::now();
                let res =
                    solve_with(&g, &seo, opts).map_err(|source| BenchError::Solve { n, source })?;
                best = best.min(start.elapsed());
                size = res.size;
            }
            Ok(BenchRow {
                n,
                m: g.m(),
                family,
                seed,
                seo_millis,
                solve_millis: millis(best),
                result_size: size,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.to_csv());
    }
    out
}
