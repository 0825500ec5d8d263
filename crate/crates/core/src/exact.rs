//! Exhaustive solvers used as ground truth in tests and benchmarks.
//!
//! Both power problems are solved by enumerating power levels rather than
//! edge subsets: an optimal solution is determined by its powers `π`, each
//! of which is 0, a lower bound, or the cost of an incident edge, and the
//! edge set is then everything `π` induces. Nodes whose neighbours have no
//! requirement of their own never need more power than their own demand,
//! so their level is computed instead of enumerated.

use crate::bipartite::BipartiteInstance;
use crate::coverage::coverage_value;
use crate::error::{Error, Result};
use crate::instance::{Cost, EdgeId, Graph, Instance, NodeId, Solution};
use crate::restricted::{PowerAssignment, RestrictedInstance};

/// Edge-count cap used when no explicit limit is given.
pub const DEFAULT_EDGE_LIMIT: usize = 16;
/// Candidate-count cap for [`exact_bpbmem`].
pub const DEFAULT_CANDIDATE_LIMIT: usize = 20;

struct LevelSearch<'a> {
    graph: &'a Graph,
    /// Minimum induced degree per node.
    need: Vec<u32>,
    /// Minimum power per node.
    floor: Vec<Cost>,
    /// Lower bound on each node's power in any feasible assignment.
    lb: Vec<Cost>,
    /// Enumerated nodes in search order, with their candidate levels.
    order: Vec<NodeId>,
    levels: Vec<Vec<Cost>>,
    /// Nodes to settle once the search reaches a depth, `events[0]` being
    /// the root.
    events: Vec<Vec<NodeId>>,
    derived: Vec<bool>,
    pi: Vec<Cost>,
    best: Cost,
    best_pi: Option<Vec<Cost>>,
}

impl<'a> LevelSearch<'a> {
    fn new(graph: &'a Graph, need: Vec<u32>, floor: Vec<Cost>) -> Result<Self> {
        let n = graph.node_count();
        for v in 0..n {
            if need[v] as usize > graph.degree(v) {
                return Err(Error::Infeasible(v));
            }
        }
        let demand = |v: NodeId| match need[v] {
            0 => floor[v],
            k => floor[v].max(graph.cost(graph.incident(v)[k as usize - 1])),
        };
        let lb: Vec<Cost> = (0..n).map(demand).collect();

        let mut derived = vec![false; n];
        for v in 0..n {
            let free = graph.incident(v).iter().all(|&id| {
                let x = graph.edge(id).other(v);
                need[x] == 0 && !derived[x]
            });
            derived[v] = free;
        }

        let order: Vec<NodeId> = (0..n).filter(|&v| !derived[v]).collect();
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i + 1;
        }
        let levels = order
            .iter()
            .map(|&v| {
                let base = lb[v];
                let mut out = vec![base];
                out.extend(
                    graph.incident(v).iter().map(|&id| graph.cost(id)).filter(|&c| c > base),
                );
                out.dedup();
                out
            })
            .collect();

        let mut events = vec![Vec::new(); order.len() + 1];
        for v in 0..n {
            if !derived[v] && need[v] == 0 {
                continue;
            }
            let ready = graph
                .incident(v)
                .iter()
                .map(|&id| position[graph.edge(id).other(v)])
                .chain(std::iter::once(position[v]))
                .max()
                .unwrap_or(0);
            events[ready].push(v);
        }

        Ok(LevelSearch {
            graph,
            need,
            floor,
            lb,
            order,
            levels,
            events,
            derived,
            pi: vec![0; n],
            best: Cost::MAX,
            best_pi: None,
        })
    }

    fn with_incumbent(&mut self, pi: Vec<Cost>) {
        self.best = pi.iter().sum();
        self.best_pi = Some(pi);
    }

    /// Settles the nodes of one event list; `None` if one is infeasible.
    fn settle(&mut self, depth: usize) -> Option<Cost> {
        let mut added = 0;
        for &v in &self.events[depth] {
            let g = self.graph;
            let available = g.incident(v).iter().filter(|&&id| {
                let c = g.cost(id);
                self.pi[g.edge(id).other(v)] >= c
            });
            if self.derived[v] {
                let power = match self.need[v] {
                    0 => self.floor[v],
                    k => {
                        let id = available.clone().nth(k as usize - 1)?;
                        self.floor[v].max(g.cost(*id))
                    }
                };
                self.pi[v] = power;
                added += power;
            } else {
                let own = self.pi[v];
                let degree = available.filter(|&&id| g.cost(id) <= own).count();
                if degree < self.need[v] as usize {
                    return None;
                }
            }
        }
        Some(added)
    }

    fn run(&mut self) {
        let rest: Cost = self.lb.iter().sum();
        if let Some(added) = self.settle(0) {
            let settled: Cost = self.events[0].iter().filter(|&&v| self.derived[v]).map(|&v| self.lb[v]).sum();
            self.descend(0, added, rest - settled);
        }
    }

    /// `spent` is the exact power settled so far and `rest` the lower bound
    /// of everything still open.
    fn descend(&mut self, depth: usize, spent: Cost, rest: Cost) {
        if depth == self.order.len() {
            if spent < self.best {
                self.best = spent;
                self.best_pi = Some(self.pi.clone());
            }
            return;
        }
        let v = self.order[depth];
        let rest = rest - self.lb[v];
        let settled: Cost = self.events[depth + 1]
            .iter()
            .filter(|&&x| self.derived[x])
            .map(|&x| self.lb[x])
            .sum();
        for li in 0..self.levels[depth].len() {
            let level = self.levels[depth][li];
            if spent + level + rest >= self.best {
                break;
            }
            self.pi[v] = level;
            if let Some(added) = self.settle(depth + 1) {
                let spent = spent + level + added;
                let rest = rest - settled;
                if spent + rest < self.best {
                    self.descend(depth + 1, spent, rest);
                }
            }
        }
    }
}

/// Minimum-power cover of `inst`, or an error when `|E| > limit`.
pub fn exact_mpemc(inst: &Instance, limit: usize) -> Result<Solution> {
    let graph = inst.graph();
    if graph.edge_count() > limit {
        return Err(Error::TooLarge { size: graph.edge_count(), limit });
    }
    let n = inst.node_count();
    let mut search = LevelSearch::new(graph, inst.requirements().to_vec(), vec![0; n])?;
    search.with_incumbent(inst.trivial_cover().power);
    search.run();
    let pi = search.best_pi.expect("the trivial cover is an incumbent");
    Solution::from_edges(graph, &graph.induced_by_powers(&pi))
}

/// Minimum of `Σ max(p_F(v), ℓ_v)` over edge sets `F` covering the targets.
pub fn exact_restricted(ri: &RestrictedInstance, limit: usize) -> Result<PowerAssignment> {
    let graph = ri.graph();
    if graph.edge_count() > limit {
        return Err(Error::TooLarge { size: graph.edge_count(), limit });
    }
    let n = graph.node_count();
    let need: Vec<u32> = (0..n).map(|v| ri.is_target(v) as u32).collect();
    let floor = ri.lower().to_vec();

    // Every target alone on its cheapest edge.
    let cheapest: Vec<EdgeId> =
        ri.targets().iter().map(|&u| graph.cheapest_incident(u).expect("targets have edges")).collect();
    let incumbent: Vec<Cost> =
        graph.powers(&cheapest)?.into_iter().zip(&floor).map(|(p, &l)| p.max(l)).collect();

    let mut search = LevelSearch::new(graph, need, floor.clone())?;
    search.with_incumbent(incumbent);
    search.run();
    let pi = search.best_pi.expect("an incumbent exists");
    let induced = graph.induced_by_powers(&pi);
    let power = graph.powers(&induced)?.into_iter().zip(&floor).map(|(p, &l)| p.max(l)).collect();
    Ok(PowerAssignment::new(graph, power))
}

/// Maximum coverage value subject to `p_I(A) <= budget`, by enumerating
/// every subset of `candidates`. Ties go to the first subset in mask order.
pub fn exact_bpbmem(
    bip: &BipartiteInstance,
    w: &[Cost],
    r: &[u32],
    candidates: &[EdgeId],
    budget: Cost,
    limit: usize,
) -> Result<Vec<EdgeId>> {
    let candidates = crate::instance::normalize(candidates);
    if candidates.len() > limit.min(63) {
        return Err(Error::TooLarge { size: candidates.len(), limit: limit.min(63) });
    }
    let graph = bip.instance().graph();
    graph.check_edges(&candidates)?;

    let mut best: Option<(u128, Vec<EdgeId>)> = None;
    let mut set = Vec::with_capacity(candidates.len());
    for mask in 0u64..(1 << candidates.len()) {
        set.clear();
        set.extend((0..candidates.len()).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]));
        let (spent, _) = bip.side_powers(&set)?;
        if spent > budget {
            continue;
        }
        let value = coverage_value(bip, w, r, &set);
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, set.clone()));
        }
    }
    Ok(best.map(|(_, s)| s).unwrap_or_default())
}
