//! Power-budgeted maximum edge multi-coverage on bipartite instances.
//!
//! Maximizes `val(I) = Σ_b w_b · min(d_I(b), r(b))` over edge sets `I` with
//! `p_I(A) <= τ`. The A-side power is not additive over edges, but it is
//! additive over stars: picking a center `a` together with a power level
//! buys every candidate edge at `a` of cost at most that level. Over this
//! ground set of [`StarChoice`]s the objective is monotone submodular and
//! the budget is a knapsack constraint, so partial enumeration followed by
//! density greedy gives a `(1 - 1/e)` approximation.

use std::cmp::Ordering;

use crate::arith::cmp_products;
use crate::bipartite::BipartiteInstance;
use crate::instance::{normalize, Cost, EdgeId, NodeId};

/// Number of star choices fixed before the greedy phase takes over.
pub const SEED_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarChoice {
    pub center: NodeId,
    pub level: Cost,
    pub covered: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BpbmemMode {
    /// Enumerate every seed of at most [`SEED_SIZE`] choices, extend each
    /// greedily, keep the best. Carries the `(1 - 1/e)` guarantee.
    #[default]
    PartialEnumeration,
    /// Best of plain density greedy and the best single choice. Faster,
    /// weaker guarantee.
    GreedyOnly,
}

/// `Σ_{b ∈ B} w_b · min(d_I(b), r(b))`.
///
/// `w` and `r` are indexed by bipartite node id.
pub fn coverage_value(bip: &BipartiteInstance, w: &[Cost], r: &[u32], set: &[EdgeId]) -> u128 {
    let mut deg = vec![0u32; bip.instance().node_count()];
    for &id in &normalize(set) {
        deg[bip.b_end(id)] += 1;
    }
    bip.side_b()
        .map(|b| w[b] as u128 * deg[b].min(r[b]) as u128)
        .sum()
}

/// Builds the star ground set for `candidates`, sorted by `(center, level)`.
///
/// Edges whose B endpoint has zero weight or zero requirement cannot add
/// value and are left out, so every level is the cost of a useful edge.
pub fn star_choices(
    bip: &BipartiteInstance,
    w: &[Cost],
    r: &[u32],
    candidates: &[EdgeId],
) -> Vec<StarChoice> {
    let graph = bip.instance().graph();
    let mut useful: Vec<EdgeId> = normalize(candidates)
        .into_iter()
        .filter(|&id| {
            let b = bip.b_end(id);
            w[b] > 0 && r[b] > 0
        })
        .collect();
    useful.sort_by_key(|&id| (bip.a_end(id), graph.cost(id), id));

    let mut choices = Vec::new();
    for (i, &id) in useful.iter().enumerate() {
        let center = bip.a_end(id);
        let level = graph.cost(id);
        let last_at_level = useful
            .get(i + 1)
            .map_or(true, |&next| bip.a_end(next) != center || graph.cost(next) != level);
        if last_at_level {
            let covered = useful[..=i]
                .iter()
                .copied()
                .filter(|&e| bip.a_end(e) == center)
                .collect();
            choices.push(StarChoice { center, level, covered });
        }
    }
    choices
}

/// Incremental coverage state for one candidate solution.
#[derive(Clone)]
struct Coverage<'a> {
    bip: &'a BipartiteInstance,
    w: &'a [Cost],
    r: &'a [u32],
    deg: Vec<u32>,
    taken: Vec<bool>,
    chosen: Vec<usize>,
    value: u128,
    spent: u128,
}

impl<'a> Coverage<'a> {
    fn new(bip: &'a BipartiteInstance, w: &'a [Cost], r: &'a [u32]) -> Self {
        Coverage {
            bip,
            w,
            r,
            deg: vec![0; bip.instance().node_count()],
            taken: vec![false; bip.instance().edges().len()],
            chosen: Vec::new(),
            value: 0,
            spent: 0,
        }
    }

    fn gain(&self, choice: &StarChoice) -> u128 {
        // A center has at most one edge to each b, so edges of a star never
        // compete for the same requirement.
        choice
            .covered
            .iter()
            .filter(|&&e| !self.taken[e])
            .map(|&e| self.bip.b_end(e))
            .filter(|&b| self.deg[b] < self.r[b])
            .map(|b| self.w[b] as u128)
            .sum()
    }

    fn add(&mut self, index: usize, choice: &StarChoice) {
        for &e in &choice.covered {
            if !self.taken[e] {
                self.taken[e] = true;
                let b = self.bip.b_end(e);
                if self.deg[b] < self.r[b] {
                    self.value += self.w[b] as u128;
                }
                self.deg[b] += 1;
            }
        }
        self.chosen.push(index);
        self.spent += choice.level as u128;
    }

    fn edges(&self) -> Vec<EdgeId> {
        (0..self.taken.len()).filter(|&e| self.taken[e]).collect()
    }
}

/// `true` when `gain_a / level_a` beats `gain_b / level_b`. Free choices with
/// positive gain beat everything priced.
fn denser(gain_a: u128, level_a: Cost, gain_b: u128, level_b: Cost) -> bool {
    match (level_a, level_b) {
        (0, 0) => gain_a > gain_b,
        (0, _) => true,
        (_, 0) => false,
        _ => cmp_products(&[gain_a, level_b as u128], &[gain_b, level_a as u128]) == Ordering::Greater,
    }
}

/// Density greedy: repeatedly take the densest remaining choice, dropping
/// it instead when it no longer fits the budget. Ties go to the lowest
/// `(center, level)`.
fn greedy_extend(state: &mut Coverage<'_>, choices: &[StarChoice], budget: u128, alive: &mut [bool]) {
    loop {
        let mut best: Option<(usize, u128)> = None;
        for (i, choice) in choices.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let gain = state.gain(choice);
            if gain == 0 {
                // Gains only shrink as coverage grows.
                alive[i] = false;
                continue;
            }
            let better = match best {
                None => true,
                Some((j, best_gain)) => denser(gain, choice.level, best_gain, choices[j].level),
            };
            if better {
                best = Some((i, gain));
            }
        }
        let Some((i, _)) = best else { break };
        alive[i] = false;
        if state.spent + choices[i].level as u128 <= budget {
            state.add(i, &choices[i]);
        }
    }
}

enum Walk {
    Descend,
    Prune,
    Stop,
}

/// Visits every set of at most `size` indices from `0..m` in lexicographic
/// order, each index larger than the previous one.
fn for_each_seed(m: usize, size: usize, visit: &mut impl FnMut(&[usize]) -> Walk) {
    fn rec(
        start: usize,
        m: usize,
        size: usize,
        seed: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> Walk,
    ) -> bool {
        match visit(seed) {
            Walk::Stop => return false,
            Walk::Prune => return true,
            Walk::Descend => {}
        }
        if seed.len() == size {
            return true;
        }
        for i in start..m {
            seed.push(i);
            let go_on = rec(i + 1, m, size, seed, visit);
            seed.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(0, m, size, &mut Vec::with_capacity(size), visit);
}

/// Approximately maximizes coverage over `candidates` subject to
/// `p_I(A) <= budget`.
///
/// `w` and `r` are indexed by bipartite node id; only their side-B entries
/// matter. The result is sorted and deterministic.
pub fn solve_bpbmem(
    bip: &BipartiteInstance,
    w: &[Cost],
    r: &[u32],
    candidates: &[EdgeId],
    budget: Cost,
    mode: BpbmemMode,
) -> Vec<EdgeId> {
    let choices = star_choices(bip, w, r, candidates);
    let budget = budget as u128;
    let ceiling = coverage_value(bip, w, r, candidates);

    let mut best = Coverage::new(bip, w, r);
    let run_greedy = |seed: &[usize]| -> Option<Coverage<'_>> {
        let mut state = Coverage::new(bip, w, r);
        let mut alive = vec![true; choices.len()];
        for &i in seed {
            if state.spent + choices[i].level as u128 > budget {
                return None;
            }
            state.add(i, &choices[i]);
            alive[i] = false;
        }
        greedy_extend(&mut state, &choices, budget, &mut alive);
        Some(state)
    };

    match mode {
        BpbmemMode::GreedyOnly => {
            if let Some(state) = run_greedy(&[]) {
                best = state;
            }
            for (i, choice) in choices.iter().enumerate() {
                if choice.level as u128 <= budget {
                    let mut single = Coverage::new(bip, w, r);
                    single.add(i, choice);
                    if single.value > best.value {
                        best = single;
                    }
                }
            }
        }
        BpbmemMode::PartialEnumeration => {
            for_each_seed(choices.len(), SEED_SIZE, &mut |seed| {
                // Two levels at one center are dominated by the higher one
                // and cost more, and extra choices never lower the cost.
                if let Some((&last, rest)) = seed.split_last() {
                    if rest.iter().any(|&i| choices[i].center == choices[last].center) {
                        return Walk::Prune;
                    }
                }
                let seed_cost: u128 = seed.iter().map(|&i| choices[i].level as u128).sum();
                if seed_cost > budget {
                    return Walk::Prune;
                }
                if let Some(state) = run_greedy(seed) {
                    if state.value > best.value {
                        best = state;
                    }
                }
                if best.value < ceiling {
                    Walk::Descend
                } else {
                    Walk::Stop
                }
            });
        }
    }
    best.edges()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::to_bipartite;
    use crate::exact::exact_bpbmem;
    use crate::instance::fixtures::path;

    fn path_setup() -> (BipartiteInstance, Vec<Cost>, Vec<u32>) {
        let bip = to_bipartite(&path());
        let w = bip.instance().threshold_costs().0;
        let r = bip.instance().requirements().to_vec();
        (bip, w, r)
    }

    #[test]
    fn value_examples() {
        let (bip, w, r) = path_setup();
        assert_eq!(coverage_value(&bip, &w, &r, &[]), 0);
        assert_eq!(coverage_value(&bip, &w, &r, &[0]), 2);
        assert_eq!(coverage_value(&bip, &w, &r, &[0, 1, 2, 3]), 7);
    }

    #[test]
    fn star_ground_set() {
        let (bip, w, r) = path_setup();
        let choices = star_choices(&bip, &w, &r, &[0, 1, 2, 3]);
        let summary: Vec<_> = choices.iter().map(|c| (c.center, c.level, c.covered.clone())).collect();
        assert_eq!(
            summary,
            vec![(0, 1, vec![0]), (1, 1, vec![1]), (1, 2, vec![1, 2]), (2, 2, vec![3])]
        );
    }

    #[test]
    fn zero_budget_buys_nothing() {
        let (bip, w, r) = path_setup();
        for mode in [BpbmemMode::PartialEnumeration, BpbmemMode::GreedyOnly] {
            assert!(solve_bpbmem(&bip, &w, &r, &[0, 1, 2, 3], 0, mode).is_empty());
        }
    }

    #[test]
    fn budget_two_reaches_optimum_three() {
        let (bip, w, r) = path_setup();
        let all = [0, 1, 2, 3];
        let exact = exact_bpbmem(&bip, &w, &r, &all, 2, 16).unwrap();
        assert_eq!(coverage_value(&bip, &w, &r, &exact), 3);

        let got = solve_bpbmem(&bip, &w, &r, &all, 2, BpbmemMode::PartialEnumeration);
        assert_eq!(coverage_value(&bip, &w, &r, &got), 3);
        assert!(bip.side_powers(&got).unwrap().0 <= 2);
    }

    #[test]
    fn budget_seven_covers_everything() {
        let (bip, w, r) = path_setup();
        let all = [0, 1, 2, 3];
        let exact = exact_bpbmem(&bip, &w, &r, &all, 7, 16).unwrap();
        assert_eq!(coverage_value(&bip, &w, &r, &exact), 7);
        let got = solve_bpbmem(&bip, &w, &r, &all, 7, BpbmemMode::PartialEnumeration);
        assert_eq!(coverage_value(&bip, &w, &r, &got), 7);
        assert_eq!(bip.side_powers(&got).unwrap().0, 5);
    }

    #[test]
    fn free_edges_are_taken_first() {
        let inst = crate::instance::Instance::new(
            3,
            vec![
                crate::instance::Edge::new(0, 1, 0),
                crate::instance::Edge::new(1, 2, 5),
            ],
            vec![1, 1, 1],
        )
        .unwrap();
        let bip = to_bipartite(&inst);
        let w = vec![1; 6];
        let r = bip.instance().requirements().to_vec();
        let got = solve_bpbmem(&bip, &w, &r, &[0, 1, 2, 3], 0, BpbmemMode::GreedyOnly);
        assert_eq!(got, vec![0, 1]);
    }

    #[test]
    fn seeds_are_enumerated_in_order() {
        let mut seen = Vec::new();
        for_each_seed(3, 2, &mut |s| {
            seen.push(s.to_vec());
            Walk::Descend
        });
        assert_eq!(
            seen,
            vec![vec![], vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]
        );
    }
}
