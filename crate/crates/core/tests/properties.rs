use mpemc_core::bench::InstanceFamily;
use mpemc_core::coverage::star_choices;
use mpemc_core::exact::{exact_bpbmem, exact_mpemc};
use mpemc_core::io::{emit_json, emit_text, parse_json, parse_text};
use mpemc_core::logk::{cheap_edges, reduce_step, residual_potential, Gamma, ReduceOutcome, ReduceParams};
use mpemc_core::restricted::{build_cover_graph, CoverEdgeKind};
use mpemc_core::{
    coverage_value, deficiency, deficiency_potential, gen_random, solve_bpbmem, solve_khalf,
    solve_restricted, to_bipartite, BpbmemMode, Cost, EdgeId, GenParams, Instance, NodeId,
    RestrictedInstance,
};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = Instance> {
    (any::<u64>(), 2usize..=7, 0.2f64..=0.9).prop_filter_map("too many edges", |(seed, n, p)| {
        let inst = gen_random(seed, &GenParams { nodes: n, edge_probability: p, max_cost: 10, k: 3 }).ok()?;
        (inst.edges().len() <= 12).then_some(inst)
    })
}

fn subset(mask: u64, m: usize) -> Vec<EdgeId> {
    (0..m).filter(|i| mask >> (i % 64) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn power_is_zero_exactly_at_untouched_nodes(inst in arb_instance(), mask in any::<u64>()) {
        let set = subset(mask, inst.edges().len());
        let sol = inst.power_profile(&set).unwrap();
        let deg = inst.graph().degrees(&set).unwrap();
        for v in 0..inst.node_count() {
            prop_assert_eq!(sol.power[v] == 0, deg[v] == 0);
        }
        prop_assert_eq!(sol.total_power, sol.power.iter().sum::<Cost>());
    }

    #[test]
    fn trivial_cover_is_within_k_plus_one(inst in arb_instance()) {
        let t = inst.trivial_cover();
        prop_assert!(inst.is_cover(&t.chosen).unwrap());
        let opt = exact_mpemc(&inst, 16).unwrap().total_power;
        prop_assert!(t.total_power <= (inst.max_requirement() as u64 + 1) * opt);
    }

    #[test]
    fn thresholds_bound_every_cover(inst in arb_instance(), mask in any::<u64>()) {
        let mut set = subset(mask, inst.edges().len());
        set.extend(inst.trivial_cover().chosen);
        let p = inst.power_profile(&set).unwrap().power;
        let w = inst.threshold_costs();
        for v in 0..inst.node_count() {
            prop_assert!(w[v] <= p[v]);
        }
    }

    #[test]
    fn initial_potential_at_most_k_times_thresholds(inst in arb_instance()) {
        let w = inst.threshold_costs();
        let r0 = deficiency_potential(&w, inst.requirements(), 0..inst.node_count());
        prop_assert!(r0 <= inst.max_requirement() as u128 * w.sum());
    }

    #[test]
    fn map_back_keeps_degrees_and_never_adds_power(inst in arb_instance(), mask in any::<u64>()) {
        let bip = to_bipartite(&inst);
        let set = subset(mask, bip.instance().edges().len());
        let back = bip.from_bipartite(&set).unwrap();
        let deg_b = bip.instance().graph().degrees(&set).unwrap();
        let deg = inst.graph().degrees(&back).unwrap();
        for v in 0..inst.node_count() {
            prop_assert!(deg[v] >= deg_b[bip.b(v)]);
        }
        prop_assert!(
            inst.graph().total_power(&back).unwrap()
                <= bip.instance().graph().total_power(&set).unwrap()
        );
    }

    #[test]
    fn coverage_value_is_monotone_submodular(
        inst in arb_instance(),
        small in any::<u64>(),
        extra in any::<u64>(),
        pick in any::<prop::sample::Index>(),
    ) {
        let bip = to_bipartite(&inst);
        let m = bip.instance().edges().len();
        prop_assume!(m > 0);
        let w = bip.instance().threshold_costs().0;
        let r = bip.instance().requirements().to_vec();
        let i = subset(small, m);
        let mut big = i.clone();
        big.extend(subset(extra, m));
        big.sort_unstable();
        big.dedup();
        let e = pick.index(m);
        prop_assume!(big.binary_search(&e).is_err());
        let gain = |s: &[EdgeId]| {
            let mut with = s.to_vec();
            with.push(e);
            coverage_value(&bip, &w, &r, &with) as i128 - coverage_value(&bip, &w, &r, s) as i128
        };
        prop_assert!(gain(&i) >= gain(&big));
        prop_assert!(gain(&big) >= 0);
    }

    #[test]
    fn budgeted_coverage_respects_budget(inst in arb_instance(), tau in 0u64..40) {
        let bip = to_bipartite(&inst);
        let w = bip.instance().threshold_costs().0;
        let r = bip.instance().requirements().to_vec();
        let all: Vec<EdgeId> = (0..bip.instance().edges().len()).collect();
        for mode in [BpbmemMode::PartialEnumeration, BpbmemMode::GreedyOnly] {
            let set = solve_bpbmem(&bip, &w, &r, &all, tau, mode);
            prop_assert!(bip.side_powers(&set).unwrap().0 <= tau);
            prop_assert!(set.windows(2).all(|p| p[0] < p[1]));
        }
        // Star choices carry one level per distinct useful cost at a center.
        for c in star_choices(&bip, &w, &r, &all) {
            prop_assert!(c.covered.iter().all(|&e| bip.a_end(e) == c.center));
            prop_assert!(c.covered.iter().any(|&e| bip.instance().graph().cost(e) == c.level));
        }
    }

    #[test]
    fn budgeted_coverage_factor_on_small_images(inst in arb_instance(), tau in 0u64..30) {
        prop_assume!(inst.edges().len() <= 6);
        let bip = to_bipartite(&inst);
        let w = bip.instance().threshold_costs().0;
        let r = bip.instance().requirements().to_vec();
        let all: Vec<EdgeId> = (0..bip.instance().edges().len()).collect();
        let got = coverage_value(&bip, &w, &r, &solve_bpbmem(&bip, &w, &r, &all, tau, BpbmemMode::PartialEnumeration));
        let best = coverage_value(&bip, &w, &r, &exact_bpbmem(&bip, &w, &r, &all, tau, 12).unwrap());
        prop_assert!(got * 10_000_000_000 >= 6_321_205_588 * best);
    }

    #[test]
    fn any_cheap_subset_has_bounded_b_power(inst in arb_instance(), tau in 0u64..40, mask in any::<u64>()) {
        let bip = to_bipartite(&inst);
        let w = bip.instance().threshold_costs().0;
        let (r, potential) = residual_potential(&bip, &w, &[]).unwrap();
        prop_assume!(potential > 0);
        let gamma = Gamma::default();
        let cheap = cheap_edges(&bip, &w, &r, potential, tau, gamma, &[]);
        let pick: Vec<EdgeId> = cheap.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, &e)| e).collect();
        let (_, pb) = bip.side_powers(&pick).unwrap();
        prop_assert!(pb <= 2 * tau);
    }

    #[test]
    fn steps_at_bipartite_optimum_reach_threshold_sum(inst in arb_instance()) {
        let bip = to_bipartite(&inst);
        let w = bip.instance().threshold_costs().0;
        let tau = exact_mpemc(bip.instance(), 24).unwrap().total_power;
        let params = ReduceParams::default();
        let mut j: Vec<EdgeId> = Vec::new();
        for _ in 0..params.iterations(inst.max_requirement()) {
            match reduce_step(&bip, &w, &j, tau, &params).unwrap() {
                ReduceOutcome::Reduced(i) => j.extend(i),
                ReduceOutcome::TauTooSmall => prop_assert!(false, "tau = opt was rejected"),
            }
            j.sort_unstable();
            j.dedup();
        }
        let w_sum: u128 = bip.side_b().map(|b| w[b] as u128).sum();
        prop_assert!(residual_potential(&bip, &w, &j).unwrap().1 <= w_sum);
    }

    #[test]
    fn khalf_structure(inst in arb_instance()) {
        let r = solve_khalf(&inst).unwrap();
        let g = inst.graph();
        let deg = g.degrees(&r.induced).unwrap();
        let w = inst.threshold_costs();
        for v in 0..inst.node_count() {
            if inst.requirement(v) >= 1 {
                prop_assert!(deg[v] >= 1);
            }
        }
        for &e in &r.top_up {
            let edge = g.edge(e);
            prop_assert!(g.cost(e) <= w[edge.u].max(w[edge.v]));
        }
        let opt = exact_mpemc(&inst, 16).unwrap().total_power;
        prop_assert!(2 * r.solution.total_power <= (2 * inst.max_requirement() as u64 + 1) * opt);
    }

    #[test]
    fn deficiency_is_subadditive(inst in arb_instance(), a in any::<u64>(), b in any::<u64>(), lower in prop::collection::vec(0u64..12, 7)) {
        let g = inst.graph();
        let m = g.edge_count();
        let lower = &lower[..g.node_count()];
        let (x, y) = (subset(a, m), subset(b, m));
        let mut both = x.clone();
        both.extend(&y);
        both.sort_unstable();
        both.dedup();
        let d = |s: &[EdgeId]| deficiency(g, lower, s).unwrap();
        prop_assert!(d(&both) <= d(&x) + d(&y));
    }

    #[test]
    fn cover_graph_costs_and_map_back(inst in arb_instance(), picks in any::<u64>(), lower in prop::collection::vec(0u64..12, 7)) {
        let g = inst.graph().clone();
        let n = g.node_count();
        let targets: Vec<NodeId> = (0..n).filter(|&v| g.degree(v) > 0 && picks >> v & 1 == 1).collect();
        let ri = RestrictedInstance::new(g, &targets, &lower[..n]).unwrap();
        let norm = ri.normalized();
        let cg = build_cover_graph(&norm).unwrap();
        for e in &cg.edges {
            let d = deficiency(norm.graph(), norm.lower(), &e.origin).unwrap();
            prop_assert_eq!(e.cost, e.bound(norm.lower()) + d);
            if let CoverEdgeKind::Path { via } = e.kind {
                prop_assert!(e.u != e.v);
                prop_assert!(e.origin.iter().all(|&o| norm.graph().edge(o).touches(via)));
            }
        }
        let sol = solve_restricted(&ri).unwrap();
        prop_assert!(sol.assignment.total <= sol.cover_cost);
        prop_assert!(sol.assignment.is_feasible(&ri));
    }

    #[test]
    fn text_and_json_round_trip(inst in arb_instance()) {
        let text = emit_text(&inst);
        let back = parse_text(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(emit_text(&back), text);
        prop_assert_eq!(parse_json(&emit_json(&inst)).unwrap(), inst);
    }
}

#[test]
fn family_is_deterministic() {
    let fam = InstanceFamily { seed: 9, count: 30, ..Default::default() };
    let a: Vec<String> = fam.instances().unwrap().iter().map(|m| emit_text(&m.instance)).collect();
    let b: Vec<String> = fam.instances().unwrap().iter().map(|m| emit_text(&m.instance)).collect();
    assert_eq!(a, b);
}
