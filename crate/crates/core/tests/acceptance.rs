//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mpemc_core::bench::{run_bench, Algorithm, BenchConfig, InstanceFamily};
use mpemc_core::edge_cover::{min_cost_edge_cover, CoverEdge, CoverMultigraph};
use mpemc_core::exact::{exact_bpbmem, exact_mpemc, exact_restricted};
use mpemc_core::logk::{
    completion, reduce_step, residual_potential, solve_logk, Gamma, ReduceOutcome, ReduceParams,
};
use mpemc_core::matching::{max_weight_matching, WeightedGraph};
use mpemc_core::{
    coverage_value, solve_bpbmem, solve_khalf, solve_restricted, to_bipartite, verify,
    BipartiteInstance, BpbmemMode, Cost, EdgeId, Instance, NodeId, RestrictedInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Oracle cap for original instances.
const EDGE_LIMIT: usize = 16;
/// Oracle cap for bipartite images of instances with at most 12 edges.
const BIPARTITE_LIMIT: usize = 24;
/// `1 - 1/e` rounded down at the tenth decimal.
const ONE_MINUS_INV_E: u128 = 6_321_205_588;
const SCALE: u128 = 10_000_000_000;
const SUITE_RUNTIME: Duration = Duration::from_secs(60);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: &[String], checked: usize, what: &str) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, detail: format!("{checked} {what}") }
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Outcome {
            passed: false,
            detail: format!("{} of {checked} {what} failed: {}", failures.len(), shown.join("; ")),
        }
    }
}

/// n <= 7, |E| <= 12, costs in [1, 10], k <= 3.
fn family(seed: u64, count: usize) -> InstanceFamily {
    InstanceFamily {
        seed,
        count,
        min_nodes: 4,
        max_nodes: 7,
        edge_probability: 0.6,
        max_cost: 10,
        k: 3,
        max_edges: Some(12),
    }
}

struct SuiteRow {
    seed: u64,
    k: u32,
    opt: Cost,
    opt_bipartite: Cost,
    trivial: Cost,
    khalf: Cost,
    logk: Cost,
    tau: Cost,
    iterations: u32,
}

struct Suite {
    rows: Vec<SuiteRow>,
    infeasible: Vec<String>,
    elapsed: Duration,
}

fn run_suite() -> Suite {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut infeasible = Vec::new();
    let params = ReduceParams::new(Gamma::default());
    for member in family(1, 500).instances().expect("family generates") {
        let inst = &member.instance;
        let seed = member.seed;
        let mut check = |name: &str, sol: &mpemc_core::Solution| {
            let report = verify(inst, sol);
            if !report.is_ok() {
                infeasible.push(format!("seed {seed} {name}: {:?}", report.issues));
            }
            sol.total_power
        };
        let exact = exact_mpemc(inst, EDGE_LIMIT).expect("oracle runs");
        let opt = check("exact", &exact);
        let trivial = check("trivial", &inst.trivial_cover());
        let khalf = check("khalf", &solve_khalf(inst).expect("khalf runs").solution);
        let logk = solve_logk(inst, &params).expect("logk runs");
        let logk_power = check("logk", &logk.solution);
        let opt_bipartite = exact_mpemc(to_bipartite(inst).instance(), BIPARTITE_LIMIT)
            .expect("bipartite oracle runs")
            .total_power;
        rows.push(SuiteRow {
            seed,
            k: inst.max_requirement(),
            opt,
            opt_bipartite,
            trivial,
            khalf,
            logk: logk_power,
            tau: logk.tau,
            iterations: logk.iterations,
        });
    }
    Suite { rows, infeasible, elapsed: start.elapsed() }
}

fn criterion_1(suite: &Suite) -> Outcome {
    let mut failures = suite.infeasible.clone();
    if suite.elapsed > SUITE_RUNTIME {
        failures.push(format!("took {:.1?}, limit {SUITE_RUNTIME:?}", suite.elapsed));
    }
    let mut o = outcome(&failures, suite.rows.len(), "instances x 4 algorithms verified");
    o.detail += &format!(" in {:.1?}", suite.elapsed);
    o
}

fn criterion_2(suite: &Suite) -> Outcome {
    let failures: Vec<String> = suite
        .rows
        .iter()
        .filter(|r| r.trivial as u128 > (r.k as u128 + 1) * r.opt as u128)
        .map(|r| format!("seed {}: {} > ({} + 1) * {}", r.seed, r.trivial, r.k, r.opt))
        .collect();
    outcome(&failures, suite.rows.len(), "instances")
}

fn criterion_3(suite: &Suite) -> Outcome {
    let failures: Vec<String> = suite
        .rows
        .iter()
        .filter(|r| 2 * r.khalf as u128 > (2 * r.k as u128 + 1) * r.opt as u128)
        .map(|r| format!("seed {}: 2 * {} > (2 * {} + 1) * {}", r.seed, r.khalf, r.k, r.opt))
        .collect();
    outcome(&failures, suite.rows.len(), "instances")
}

fn criterion_4(suite: &Suite) -> Outcome {
    // γ = 2: 2 (t (1 + γ) τ + 2 τ) = 2 (3 t τ + 2 τ).
    let failures: Vec<String> = suite
        .rows
        .iter()
        .filter_map(|r| {
            let (t, tau) = (r.iterations as u128, r.tau as u128);
            let bound = 2 * (3 * t * tau + 2 * tau);
            if r.logk as u128 > bound {
                Some(format!("seed {}: power {} > {bound}", r.seed, r.logk))
            } else if r.tau > r.opt_bipartite {
                Some(format!("seed {}: tau {} > bipartite opt {}", r.seed, r.tau, r.opt_bipartite))
            } else {
                None
            }
        })
        .collect();
    outcome(&failures, suite.rows.len(), "instances")
}

/// Bipartite instances with `k >= 2`, so that at least one reduce step runs.
fn contraction_instances(count: usize) -> Vec<(u64, Instance)> {
    let fam = family(100_000, usize::MAX);
    (0..)
        .map(|id| fam.instance(id).expect("family generates"))
        .filter(|m| m.instance.max_requirement() >= 2)
        .take(count)
        .map(|m| (m.seed, m.instance))
        .collect()
}

struct StepCheck {
    seed: u64,
    potentials: Vec<u128>,
    outcome: Result<(), String>,
    /// Edge sets reached before each step and after the last.
    states: Vec<Vec<EdgeId>>,
}

fn contraction_runs(instances: &[(u64, Instance)]) -> Vec<(StepCheck, BipartiteInstance, Cost)> {
    let params = ReduceParams::new(Gamma::default());
    instances
        .iter()
        .map(|(seed, inst)| {
            let bip = to_bipartite(inst);
            let w = bip.instance().threshold_costs().0;
            let tau = exact_mpemc(bip.instance(), BIPARTITE_LIMIT).expect("oracle runs").total_power;
            let t = params.iterations(inst.max_requirement());
            let mut j: Vec<EdgeId> = Vec::new();
            let mut potentials = vec![residual_potential(&bip, &w, &j).unwrap().1];
            let mut states = vec![j.clone()];
            let mut result = Ok(());
            for step in 0..t {
                match reduce_step(&bip, &w, &j, tau, &params).expect("reduce step runs") {
                    ReduceOutcome::TauTooSmall => {
                        result = Err(format!("seed {seed}: step {step} reported tau too small"));
                        break;
                    }
                    ReduceOutcome::Reduced(i) => {
                        j.extend(i);
                        j.sort_unstable();
                        j.dedup();
                        let before = *potentials.last().unwrap();
                        let after = residual_potential(&bip, &w, &j).unwrap().1;
                        potentials.push(after);
                        states.push(j.clone());
                        if after * SCALE > params.theta_scaled as u128 * before {
                            result = Err(format!("seed {seed}: step {step} R {before} -> {after}"));
                            break;
                        }
                    }
                }
            }
            (StepCheck { seed: *seed, potentials, outcome: result, states }, bip, tau)
        })
        .collect()
}

fn criterion_5(runs: &[(StepCheck, BipartiteInstance, Cost)]) -> Outcome {
    let failures: Vec<String> =
        runs.iter().filter_map(|(c, _, _)| c.outcome.clone().err()).collect();
    let steps: usize = runs.iter().map(|(c, _, _)| c.potentials.len() - 1).sum();
    let mut o = outcome(&failures, runs.len(), "bipartite instances");
    o.detail += &format!(", {steps} reduce steps");
    o
}

fn criterion_6(runs: &[(StepCheck, BipartiteInstance, Cost)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (c, bip, opt) in runs {
        let w = bip.instance().threshold_costs().0;
        for j in &c.states {
            checked += 1;
            let f = completion(bip, &w, j).expect("completion runs");
            let (pa, pb) = bip.side_powers(&f).unwrap();
            let r = residual_potential(bip, &w, j).unwrap().1;
            if pb > *opt || pa as u128 > r {
                failures.push(format!("seed {}: p_F(B) {pb}, opt {opt}, p_F(A) {pa}, R {r}", c.seed));
            }
        }
    }
    let mut o = outcome(&failures, runs.len(), "bipartite instances");
    o.detail += &format!(", {checked} completions");
    o
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fam = InstanceFamily { max_edges: Some(6), ..family(200_000, usize::MAX) };
    let mut checked = 0;
    for id in 0.. {
        if checked == 200 {
            break;
        }
        let inst = fam.instance(id).expect("family generates").instance;
        if inst.edges().is_empty() {
            continue;
        }
        let bip = to_bipartite(&inst);
        let w = bip.instance().threshold_costs().0;
        let m = bip.instance().edges().len();
        // Random partial solution, so residual requirements vary.
        let j: Vec<EdgeId> = (0..m).filter(|_| rng.gen_bool(0.25)).collect();
        let r = bip.instance().residual_requirements(&j).unwrap().0;
        let candidates: Vec<EdgeId> = (0..m).filter(|e| j.binary_search(e).is_err()).collect();
        let (full, _) = bip.side_powers(&candidates).unwrap();
        let tau = rng.gen_range(0..=full);
        let approx = solve_bpbmem(&bip, &w, &r, &candidates, tau, BpbmemMode::PartialEnumeration);
        let best = exact_bpbmem(&bip, &w, &r, &candidates, tau, 12).expect("oracle runs");
        let (spent, _) = bip.side_powers(&approx).unwrap();
        let got = coverage_value(&bip, &w, &r, &approx);
        let want = coverage_value(&bip, &w, &r, &best);
        if spent > tau || got * SCALE < ONE_MINUS_INV_E * want {
            failures.push(format!("instance {id}: value {got} vs optimum {want}, spent {spent} of {tau}"));
        }
        checked += 1;
    }
    outcome(&failures, checked, "budgeted coverage instances")
}

fn brute_matching(n: usize, edges: &[(NodeId, NodeId, i64)]) -> i64 {
    let mut weight = vec![vec![None; n]; n];
    for &(u, v, w) in edges {
        if u != v && w > 0 {
            let slot: &mut Option<i64> = &mut weight[u][v];
            *slot = Some(slot.map_or(w, |x| x.max(w)));
            weight[v][u] = weight[u][v];
        }
    }
    fn rec(weight: &[Vec<Option<i64>>], used: &mut [bool]) -> i64 {
        let Some(u) = used.iter().position(|&x| !x) else { return 0 };
        used[u] = true;
        let mut best = rec(weight, used);
        for v in 0..used.len() {
            if let (false, Some(w)) = (used[v], weight[u][v]) {
                used[v] = true;
                best = best.max(w + rec(weight, used));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    rec(&weight, &mut vec![false; n])
}

fn brute_edge_cover(n: usize, edges: &[CoverEdge]) -> Option<Cost> {
    (0u32..1 << edges.len())
        .filter_map(|mask| {
            let mut covered = vec![false; n];
            let mut cost = 0;
            for (_, e) in edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1) {
                covered[e.u] = true;
                covered[e.v] = true;
                cost += e.cost;
            }
            covered.iter().all(|&c| c).then_some(cost)
        })
        .min()
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..300 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..=1.0);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v, rng.gen_range(-5..=40)));
                }
            }
        }
        let got = max_weight_matching(&WeightedGraph::new(n, edges.iter().copied())).weight;
        let want = brute_matching(n, &edges);
        if got != want {
            failures.push(format!("matching case {case}: {got} vs {want}"));
        }
    }
    for case in 0..300 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(1..=14 - n);
        let mut edges: Vec<CoverEdge> = (0..m)
            .map(|_| CoverEdge { u: rng.gen_range(0..n), v: rng.gen_range(0..n), cost: rng.gen_range(1..=20) })
            .collect();
        // A loop on each uncovered node keeps the instance coverable.
        for u in 0..n {
            if !edges.iter().any(|e| e.u == u || e.v == u) {
                edges.push(CoverEdge { u, v: u, cost: rng.gen_range(1..=20) });
            }
        }
        let edges = edges;
        let want = brute_edge_cover(n, &edges);
        let got = CoverMultigraph::new(n, edges)
            .and_then(|g| min_cost_edge_cover(&g))
            .map(|c| c.cost)
            .ok();
        if got.is_none() || got != want {
            failures.push(format!("edge cover case {case}: {got:?} vs {want:?}"));
        }
    }
    outcome(&failures, 600, "graphs (300 matching, 300 edge cover)")
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fam = InstanceFamily { max_edges: Some(EDGE_LIMIT), ..family(300_000, usize::MAX) };
    for id in 0..300 {
        let inst = fam.instance(id).expect("family generates").instance;
        let g = inst.graph().clone();
        let n = g.node_count();
        let targets: Vec<NodeId> = (0..n).filter(|&v| g.degree(v) > 0 && rng.gen_bool(0.7)).collect();
        let lower: Vec<Cost> = (0..n).map(|_| rng.gen_range(0..=12)).collect();
        let ri = RestrictedInstance::new(g, &targets, &lower).expect("targets have edges");
        let sol = solve_restricted(&ri).expect("restricted solver runs");
        let opt = exact_restricted(&ri, EDGE_LIMIT).expect("oracle runs").total;
        let total = sol.assignment.total;
        if 2 * total > 3 * opt || total > sol.cover_cost || !sol.assignment.is_feasible(&ri) {
            failures.push(format!(
                "instance {id}: sum {total}, optimum {opt}, cover cost {}",
                sol.cover_cost
            ));
        }
    }
    outcome(&failures, 300, "restricted instances")
}

fn criterion_10() -> Outcome {
    let algorithms: Vec<Algorithm> = ["trivial", "logk", "logk:4", "logk-greedy", "khalf", "exact"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let config = BenchConfig { family: family(400_000, 40), algorithms, ..Default::default() };
    let a = run_bench(&config).expect("bench runs").without_timing().to_json_lines();
    let b = run_bench(&config).expect("bench runs").without_timing().to_json_lines();
    let failures = if a == b { vec![] } else { vec!["reports differ".to_string()] };
    outcome(&failures, a.lines().count(), "report rows reproduced")
}

fn main() -> ExitCode {
    let suite = run_suite();
    let contraction = contraction_runs(&contraction_instances(200));
    let results = [
        ("1 feasibility", criterion_1(&suite)),
        ("2 trivial (k+1) bound", criterion_2(&suite)),
        ("3 khalf (k+1/2) bound", criterion_3(&suite)),
        ("4 logk bound and tau <= opt", criterion_4(&suite)),
        ("5 reduce-step contraction", criterion_5(&contraction)),
        ("6 completion inequalities", criterion_6(&contraction)),
        ("7 budgeted coverage (1-1/e) factor", criterion_7()),
        ("8 matching and edge cover exactness", criterion_8()),
        ("9 restricted 3/2 bound", criterion_9()),
        ("10 bench determinism", criterion_10()),
    ];
    let mut all = true;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        all &= o.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
