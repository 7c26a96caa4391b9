//! Acceptance suite. Runs every criterion in order, prints one line each,
//! and exits non-zero if any failed.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use semitotal::generators::{Density, Family, GenSpec, SplitMix64};
use semitotal::{
    brute_force_gamma, brute_force_gamma_t, brute_force_gamma_t2, find_seo,
    is_semitotal_dominating, solve, solve_with, verify_seo, Graph, OrderingError, SeoOrdering,
    SolveOptions, VertexSet,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Instance {
    family: Family,
    seed: u64,
    g: Graph,
    seo: Result<SeoOrdering, OrderingError>,
}

impl Instance {
    fn new(family: Family, n: usize, seed: u64) -> Self {
        let g = GenSpec::new(family, n, seed).generate();
        let seo = find_seo(&g);
        Self {
            family,
            seed,
            g,
            seo,
        }
    }

    fn tag(&self) -> String {
        format!("{} n={} seed={}", self.family, self.g.n(), self.seed)
    }
}

/// 500 instances per family with n up to 16.
fn small_corpus() -> Vec<Instance> {
    let mut rng = SplitMix64::new(0x5EED_C0DE);
    let mut out = Vec::with_capacity(1500);
    for (family, lo) in [(Family::Tree, 3), (Family::Interval, 4), (Family::Block, 4)] {
        for _ in 0..500 {
            let n = rng.between(lo, 16);
            out.push(Instance::new(family, n, rng.next_u64()));
        }
    }
    out
}

fn seo_of(inst: &Instance) -> Result<&SeoOrdering, String> {
    inst.seo
        .as_ref()
        .map_err(|e| format!("{}: find_seo failed: {e}", inst.tag()))
}

fn first_failures(failures: Vec<String>, total: usize) -> Outcome {
    if failures.is_empty() {
        return Ok(format!("{total}/{total}"));
    }
    let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
    Err(format!(
        "{} of {total} failed; first: {}",
        failures.len(),
        shown.join(" | ")
    ))
}

fn oracle_equivalence(corpus: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, inst) in corpus.iter().enumerate() {
        let check = || -> Result<(), String> {
            let seo = seo_of(inst)?;
            let size = solve(&inst.g, seo).map_err(|e| e.to_string())?.size;
            let (best, _) = brute_force_gamma_t2(&inst.g).map_err(|e| e.to_string())?;
            if k % 10 == 0 {
                let naive = naive_gamma_t2(&inst.g);
                if naive != best {
                    return Err(format!("oracles disagree: {best} vs {naive}"));
                }
            }
            if size != best {
                return Err(format!("solve gives {size}, optimum is {best}"));
            }
            Ok(())
        };
        if let Err(e) = check() {
            failures.push(format!("{}: {e}", inst.tag()));
        }
    }
    let elapsed = start.elapsed();
    let summary = first_failures(failures, corpus.len())?;
    if elapsed > Duration::from_secs(300) {
        return Err(format!("{summary} correct but took {elapsed:.1?}"));
    }
    Ok(format!(
        "{summary} match the exhaustive optimum in {elapsed:.1?}"
    ))
}

fn validity_at_scale() -> Outcome {
    let mut rng = SplitMix64::new(0xB16_5CA1E);
    let (lo, hi) = (17f64.ln(), 100_000f64.ln());
    let mut failures = Vec::new();
    let mut largest = 0;
    let total = 1000;
    for k in 0..total {
        let family = Family::ALL[k % 3];
        // The last instance of each family sits exactly at the upper bound.
        let n = if k >= total - 3 {
            100_000
        } else {
            (lo + rng.next_f64() * (hi - lo)).exp().round() as usize
        };
        largest = largest.max(n);
        let inst = Instance::new(family, n, rng.next_u64());
        let check = || -> Result<(), String> {
            let seo = seo_of(&inst)?;
            let res = solve(&inst.g, seo).map_err(|e| e.to_string())?;
            match is_semitotal_dominating(&inst.g, &res.set) {
                Ok(true) => Ok(()),
                Ok(false) => Err("result is not semitotal dominating".into()),
                Err(e) => Err(e.to_string()),
            }
        };
        if let Err(e) = check() {
            failures.push(format!("{}: {e}", inst.tag()));
        }
    }
    let summary = first_failures(failures, total)?;
    Ok(format!("{summary} results valid, largest n = {largest}"))
}

fn sandwich(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in corpus {
        let check = || -> Result<(), String> {
            let size = solve(&inst.g, seo_of(inst)?)
                .map_err(|e| e.to_string())?
                .size;
            let gamma = brute_force_gamma(&inst.g).map_err(|e| e.to_string())?.0;
            let gamma_t = brute_force_gamma_t(&inst.g).map_err(|e| e.to_string())?.0;
            if gamma <= size && size <= gamma_t {
                Ok(())
            } else {
                Err(format!("{gamma} <= {size} <= {gamma_t} fails"))
            }
        };
        if let Err(e) = check() {
            failures.push(format!("{}: {e}", inst.tag()));
        }
    }
    first_failures(failures, corpus.len()).map(|s| format!("{s} within [γ, γ_t]"))
}

fn invariants(corpus: &[Instance]) -> Outcome {
    let opts = SolveOptions {
        check_invariants: true,
        ..SolveOptions::default()
    };
    let mut failures = Vec::new();
    for inst in corpus {
        let outcome = seo_of(inst).and_then(|seo| {
            let run = panic::catch_unwind(AssertUnwindSafe(|| solve_with(&inst.g, seo, opts)));
            match run {
                Ok(Ok(_)) => Ok(()),
                Ok(Err(e)) => Err(e.to_string()),
                Err(_) => Err("assertion fired".into()),
            }
        });
        if let Err(e) = outcome {
            failures.push(format!("{}: {e}", inst.tag()));
        }
    }
    first_failures(failures, corpus.len()).map(|s| format!("{s} runs without a violated invariant"))
}

fn seo_machinery(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in corpus {
        let outcome = seo_of(inst).and_then(|seo| {
            let lib = verify_seo(&inst.g, seo.order()).map_err(|e| e.to_string())?;
            let def = is_seo_by_definition(&inst.g, seo.order());
            if lib && def {
                Ok(())
            } else {
                Err(format!("verify_seo = {lib}, definition = {def}"))
            }
        });
        if let Err(e) = outcome {
            failures.push(format!("{}: {e}", inst.tag()));
        }
    }
    let accepted = first_failures(failures, corpus.len())?;

    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut rejected = Vec::new();
    for family in Family::ALL {
        let mut count = 0;
        for inst in corpus
            .iter()
            .filter(|i| i.family == family)
            .cycle()
            .take(20_000)
        {
            if count == 100 {
                break;
            }
            let order = random_permutation(inst.g.n(), &mut state);
            let lib = verify_seo(&inst.g, &order).map_err(|e| e.to_string())?;
            let def = is_seo_by_definition(&inst.g, &order);
            if lib != def {
                return Err(format!(
                    "{}: verify_seo = {lib} but definition = {def} on {order:?}",
                    inst.tag()
                ));
            }
            count += usize::from(!def);
        }
        if count < 100 {
            return Err(format!(
                "only {count} non-SEO permutations sampled for {family}"
            ));
        }
        rejected.push(count);
    }

    let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let sun = Graph::from_edges(
        6,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (0, 3),
            (1, 3),
            (1, 4),
            (2, 4),
            (2, 5),
            (0, 5),
        ],
    )
    .unwrap();
    for (name, g) in [("C4", &c4), ("3-sun", &sun)] {
        match find_seo(g) {
            Err(OrderingError::NotStronglyChordal) => {}
            other => return Err(format!("find_seo on {name} returned {other:?}")),
        }
    }
    Ok(format!(
        "{accepted} find_seo outputs accepted; {rejected:?} non-SEO permutations rejected \
         (definition agrees); C4 and 3-sun rejected"
    ))
}

fn forward_containments() -> Outcome {
    let mut rng = SplitMix64::new(0x1E44A5);
    let mut violations = Vec::new();
    let mut checks = 0usize;
    for k in 0..100 {
        let family = Family::ALL[k % 3];
        let inst = Instance::new(family, rng.between(5, 40), rng.next_u64());
        let seo = seo_of(&inst)?;
        let order = seo.order();
        let g = &inst.g;
        if !is_seo_by_definition(g, order) {
            return Err(format!("{}: find_seo output is not an SEO", inst.tag()));
        }
        let n = g.n();
        let pos = positions(order);
        let mut expect = |ok: bool, what: &str, i: usize| {
            checks += 1;
            if !ok {
                violations.push(format!("{}: {what} at i={}", inst.tag(), i + 1));
            }
        };
        for i in 0..n {
            let vi = order[i];
            let fi = f_position(g, order, &pos, i);
            let vf = order[fi];
            let head = forward_closed(g, &pos, i, vi);
            let ball = forward_ball2(g, &pos, i, vi);
            expect(
                fi != i || i == n - 1,
                "only the last position is its own F",
                i,
            );
            if fi != i {
                expect(
                    subset(&ball, &forward_closed(g, &pos, i, vf)),
                    "N²_i[v_i] ⊆ N_i[F(v_i)]",
                    i,
                );
                let ball_f = forward_ball2(g, &pos, i, vf);
                for vk in (0..n).filter(|&u| head[u]) {
                    expect(
                        subset(&forward_ball2(g, &pos, i, vk), &ball_f),
                        "N²_i[v_k] ⊆ N²_i[F(v_i)] for v_k in N_i[v_i]",
                        i,
                    );
                }
            }
            let head_f = forward_closed(g, &pos, i, vf);
            for &vj in g.neighbors(vi).iter().filter(|&&u| pos[u] > i) {
                let head_j = forward_closed(g, &pos, i, vj);
                expect(subset(&head, &head_j), "N_i[v_i] ⊆ N_i[v_j]", i);
                expect(subset(&head_j, &head_f), "N_i[v_j] ⊆ N_i[F(v_i)]", i);
                expect(
                    subset(&ball, &forward_ball2(g, &pos, i, vj)),
                    "N²_i[v_i] ⊆ N²_i[v_j]",
                    i,
                );
                let vk = order[f_position(g, order, &pos, pos[vj])];
                expect(
                    subset(&ball, &forward_ball2(g, &pos, i, vk)),
                    "N²_i[v_i] ⊆ N²_i[F(v_j)]",
                    i,
                );
            }
        }
    }
    if violations.is_empty() {
        Ok(format!(
            "{checks} containments hold on 100 verified orderings"
        ))
    } else {
        Err(format!(
            "{} violations; first: {}",
            violations.len(),
            violations[0]
        ))
    }
}

fn linear_scaling() -> Outcome {
    const SIZES: [usize; 5] = [10_000, 20_000, 40_000, 80_000, 160_000];
    const REPEATS: usize = 15;
    let opts = SolveOptions {
        verify_ordering: false,
        ..SolveOptions::default()
    };
    let mut millis = Vec::new();
    let mut density = Vec::new();
    for n in SIZES {
        let g = GenSpec {
            family: Family::Interval,
            n,
            seed: 1,
            density: Density::Default,
        }
        .generate();
        let seo = find_seo(&g).map_err(|e| format!("n={n}: {e}"))?;
        density.push(g.m() as f64 / n as f64);
        let mut best = Duration::MAX;
        for _ in 0..REPEATS {
            let start = Instant::now();
            let res = solve_with(&g, &seo, opts).map_err(|e| format!("n={n}: {e}"))?;
            best = best.min(start.elapsed());
            std::hint::black_box(res);
        }
        millis.push(best.as_secs_f64() * 1e3);
    }
    let ratios: Vec<f64> = millis.windows(2).map(|w| w[1] / w[0]).collect();
    let detail = format!(
        "solve ms {:.2?}, ratios {:.2?}, m/n {:.2}..{:.2}",
        millis,
        ratios,
        density.iter().cloned().fold(f64::MAX, f64::min),
        density.iter().cloned().fold(0.0, f64::max)
    );
    let largest = *millis.last().unwrap();
    if ratios.iter().all(|&r| r <= 2.5) && largest < 2000.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn hand_traces() -> Outcome {
    let path = |n: usize| {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    };
    let fixtures = [
        ("P3", path(3), 2),
        (
            "K1,3",
            Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap(),
            2,
        ),
        ("P6", path(6), 3),
        (
            "K3",
            Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
            2,
        ),
    ];
    let mut seen = Vec::new();
    for (name, g, expected) in fixtures {
        let seo = find_seo(&g).map_err(|e| format!("{name}: {e}"))?;
        let res = solve(&g, &seo).map_err(|e| format!("{name}: {e}"))?;
        let exhaustive = naive_gamma_t2(&g);
        let library = brute_force_gamma_t2(&g).map_err(|e| e.to_string())?.0;
        if res.size != expected || exhaustive != expected || library != expected {
            return Err(format!(
                "{name}: solve {}, naive {exhaustive}, oracle {library}, expected {expected}",
                res.size
            ));
        }
        if name == "P3" && res.set != VertexSet::new(vec![1, 2]) {
            return Err(format!("P3 selects {} instead of 2 3", res.set.to_line()));
        }
        seen.push(format!("{name}={}", res.size));
    }
    Ok(seen.join(" "))
}

fn main() -> ExitCode {
    // Panics are reported through the criterion lines instead.
    panic::set_hook(Box::new(|_| {}));
    let corpus = small_corpus();
    let criteria: [Criterion; 8] = [
        (
            "C1 oracle equivalence",
            Box::new(|| oracle_equivalence(&corpus)),
        ),
        ("C2 validity up to n = 100000", Box::new(validity_at_scale)),
        ("C3 sandwich inequality", Box::new(|| sandwich(&corpus))),
        ("C4 solver invariants", Box::new(|| invariants(&corpus))),
        ("C5 SEO machinery", Box::new(|| seo_machinery(&corpus))),
        (
            "C6 forward-neighbourhood containments",
            Box::new(forward_containments),
        ),
        ("C7 linear scaling", Box::new(linear_scaling)),
        ("C8 hand-trace fixtures", Box::new(hand_traces)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
