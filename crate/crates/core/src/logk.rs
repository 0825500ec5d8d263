//! The `O(log k)` algorithm.
//!
//! Works on the bipartite image. For a guess `τ` it repeatedly buys, among
//! the `τ`-cheap edges, a budgeted coverage solution that shrinks the
//! weighted residual `R_J` by a factor `θ`, then finishes with each B-node's
//! cheapest missing edges. A binary search finds the least `τ` for which no
//! step fails. The result is mapped back to the original graph.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::product_le;
use crate::bipartite::{to_bipartite, BipartiteInstance};
use crate::coverage::{solve_bpbmem, BpbmemMode};
use crate::error::{Error, Result};
use crate::instance::{deficiency_potential, normalize, Cost, EdgeId, Instance, Solution};

/// Fixed-point scale of `θ`.
pub const THETA_SCALE: u64 = 10_000_000_000;
/// `1 - 1/e` rounded down at the tenth decimal, scaled by [`THETA_SCALE`].
pub const ONE_MINUS_INV_E_SCALED: u64 = 6_321_205_588;

/// The rational parameter `γ > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gamma(Ratio<u64>);

impl Gamma {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num <= den {
            return Err(Error::Parameter(format!("gamma must exceed 1, got {num}/{den}")));
        }
        Ok(Gamma(Ratio::new(num, den)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }
}

impl Default for Gamma {
    fn default() -> Self {
        Gamma(Ratio::from_integer(2))
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Accepts `"2"`, `"3/2"` and `"1.5"`.
impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse gamma {s:?}"));
        let s = s.trim();
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
            return Gamma::new(num, den);
        }
        let ratio: Ratio<u64> = s.parse().map_err(|_| bad())?;
        Gamma::new(*ratio.numer(), *ratio.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceParams {
    pub gamma: Gamma,
    /// `θ = 1 - (1 - 1/γ)(1 - 1/e)`, rounded up, times [`THETA_SCALE`].
    pub theta_scaled: u64,
    pub mode: BpbmemMode,
}

impl ReduceParams {
    pub fn new(gamma: Gamma) -> Self {
        let (p, q) = (gamma.numer() as u128, gamma.denom() as u128);
        let shrink = (p - q) * ONE_MINUS_INV_E_SCALED as u128 / p;
        ReduceParams {
            gamma,
            theta_scaled: THETA_SCALE - shrink as u64,
            mode: BpbmemMode::PartialEnumeration,
        }
    }

    pub fn with_mode(mut self, mode: BpbmemMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn theta(&self) -> Ratio<u64> {
        Ratio::new(self.theta_scaled, THETA_SCALE)
    }

    /// `⌈log_{1/θ} k⌉`: the least `t` with `k · θ^t <= 1`.
    pub fn iterations(&self, k: u32) -> u32 {
        if k <= 1 {
            return 0;
        }
        let theta = BigUint::from(self.theta_scaled);
        let scale = BigUint::from(THETA_SCALE);
        let mut lhs = BigUint::from(k);
        let mut rhs = BigUint::from(1u32);
        let mut t = 0;
        while lhs > rhs {
            lhs *= &theta;
            rhs *= &scale;
            t += 1;
        }
        t
    }
}

impl Default for ReduceParams {
    fn default() -> Self {
        ReduceParams::new(Gamma::default())
    }
}

/// Residual requirements and weighted residual `R_J` of a bipartite edge set.
pub fn residual_potential(bip: &BipartiteInstance, w: &[Cost], set: &[EdgeId]) -> Result<(Vec<u32>, u128)> {
    let residual = bip.instance().residual_requirements(set)?.0;
    let potential = deficiency_potential(w, &residual, bip.side_b());
    Ok((residual, potential))
}

/// Edges of `E ∖ J` at each `b` with `c(e) · R_J <= τ · γ · w_b · r_J(b)`.
pub fn cheap_edges(
    bip: &BipartiteInstance,
    w: &[Cost],
    residual: &[u32],
    potential: u128,
    tau: Cost,
    gamma: Gamma,
    excluded: &[EdgeId],
) -> Vec<EdgeId> {
    let graph = bip.instance().graph();
    let mut out = Vec::new();
    for b in bip.side_b() {
        if residual[b] == 0 {
            continue;
        }
        let rhs = [tau as u128, gamma.numer() as u128, w[b] as u128, residual[b] as u128];
        for &id in graph.incident(b) {
            if excluded.binary_search(&id).is_ok() {
                continue;
            }
            let lhs = [graph.cost(id) as u128, potential, gamma.denom() as u128];
            if product_le(&lhs, &rhs) {
                out.push(id);
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceOutcome {
    Reduced(Vec<EdgeId>),
    TauTooSmall,
}

/// One contraction step from `J` at guess `τ`.
pub fn reduce_step(
    bip: &BipartiteInstance,
    w: &[Cost],
    current: &[EdgeId],
    tau: Cost,
    params: &ReduceParams,
) -> Result<ReduceOutcome> {
    let current = normalize(current);
    let (residual, potential) = residual_potential(bip, w, &current)?;
    if potential == 0 {
        return Ok(ReduceOutcome::Reduced(Vec::new()));
    }
    let cheap = cheap_edges(bip, w, &residual, potential, tau, params.gamma, &current);
    let picked = solve_bpbmem(bip, w, &residual, &cheap, tau, params.mode);

    let mut union = current.clone();
    union.extend_from_slice(&picked);
    let (_, after) = residual_potential(bip, w, &normalize(&union))?;
    if !product_le(&[after, THETA_SCALE as u128], &[params.theta_scaled as u128, potential]) {
        return Ok(ReduceOutcome::TauTooSmall);
    }

    let (pa, pb) = bip.side_powers(&picked)?;
    assert!(pa <= tau, "p_I(A) = {pa} exceeds budget {tau}");
    assert!(
        product_le(
            &[pb as u128, params.gamma.denom() as u128],
            &[tau as u128, params.gamma.numer() as u128]
        ),
        "p_I(B) = {pb} exceeds gamma * {tau}"
    );
    Ok(ReduceOutcome::Reduced(picked))
}

/// The `r_J(b)` cheapest edges of `E ∖ J` at every `b`.
pub fn completion(bip: &BipartiteInstance, w: &[Cost], current: &[EdgeId]) -> Result<Vec<EdgeId>> {
    let current = normalize(current);
    let (residual, potential) = residual_potential(bip, w, &current)?;
    let graph = bip.instance().graph();
    let mut out = Vec::new();
    for b in bip.side_b() {
        let need = residual[b] as usize;
        let fresh: Vec<EdgeId> = graph
            .incident(b)
            .iter()
            .copied()
            .filter(|id| current.binary_search(id).is_err())
            .take(need)
            .collect();
        if fresh.len() < need {
            return Err(Error::Infeasible(b));
        }
        out.extend(fresh);
    }
    out.sort_unstable();

    let (pa, pb) = bip.side_powers(&out)?;
    let w_sum: u128 = bip.side_b().filter(|&b| residual[b] > 0).map(|b| w[b] as u128).sum();
    assert!(pb as u128 <= w_sum, "p_F(B) = {pb} exceeds the threshold sum {w_sum}");
    assert!(pa as u128 <= potential, "p_F(A) = {pa} exceeds R_J = {potential}");
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub tau: Cost,
    pub step: u32,
    pub potential_before: u128,
    pub potential_after: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub tau: Cost,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogkResult {
    pub solution: Solution,
    pub tau: Cost,
    pub iterations: u32,
    /// Total power of the bipartite cover before mapping back.
    pub bipartite_power: Cost,
    /// Steps of the run at the returned `τ`.
    pub trace: Vec<TraceStep>,
    /// Every `τ` the binary search tried, in order.
    pub probes: Vec<Probe>,
}

struct Run {
    edges: Vec<EdgeId>,
    trace: Vec<TraceStep>,
}

fn run_at(
    bip: &BipartiteInstance,
    w: &[Cost],
    tau: Cost,
    iterations: u32,
    params: &ReduceParams,
) -> Result<Option<Run>> {
    let mut edges = Vec::new();
    let mut trace = Vec::new();
    let (_, mut potential) = residual_potential(bip, w, &edges)?;
    for step in 0..iterations {
        match reduce_step(bip, w, &edges, tau, params)? {
            ReduceOutcome::TauTooSmall => return Ok(None),
            ReduceOutcome::Reduced(picked) => {
                edges.extend(picked);
                edges = normalize(&edges);
                let (_, after) = residual_potential(bip, w, &edges)?;
                trace.push(TraceStep {
                    tau,
                    step,
                    potential_before: potential,
                    potential_after: after,
                });
                potential = after;
            }
        }
    }
    Ok((potential <= tau as u128).then_some(Run { edges, trace }))
}

pub fn solve_logk(inst: &Instance, params: &ReduceParams) -> Result<LogkResult> {
    let k = inst.max_requirement();
    if k == 0 {
        return Ok(LogkResult {
            solution: Solution::empty(inst.node_count()),
            tau: 0,
            iterations: 0,
            bipartite_power: 0,
            trace: Vec::new(),
            probes: Vec::new(),
        });
    }
    let bip = to_bipartite(inst);
    let w = bip.instance().threshold_costs().0;
    let t = params.iterations(k);

    let mut probes = Vec::new();
    let mut probe = |tau: Cost| -> Result<Option<Run>> {
        let run = run_at(&bip, &w, tau, t, params)?;
        probes.push(Probe { tau, success: run.is_some() });
        Ok(run)
    };

    let mut lo: Cost = 0;
    let mut hi: Cost = bip.instance().trivial_cover().total_power;
    let mut best = probe(hi)?.expect("the search succeeds at the trivial cover's power");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid)? {
            Some(run) => {
                hi = mid;
                best = run;
            }
            None => lo = mid + 1,
        }
    }
    let tau = hi;

    let extra = completion(&bip, &w, &best.edges)?;
    let mut cover = best.edges;
    cover.extend(extra);
    let cover = normalize(&cover);
    assert!(bip.instance().is_cover(&cover)?, "bipartite result is not a cover");

    let bipartite_power = bip.instance().graph().total_power(&cover)?;
    let (num, den) = (params.gamma.numer() as u128, params.gamma.denom() as u128);
    let tau_wide = tau as u128;
    let bound_times_den = t as u128 * (num + den) * tau_wide + 2 * tau_wide * den;
    assert!(
        product_le(&[bipartite_power as u128, den], &[bound_times_den]),
        "bipartite power {bipartite_power} exceeds its bound at tau = {tau}"
    );

    let original = bip.from_bipartite(&cover)?;
    let solution = Solution::from_edges(inst.graph(), &original)?;
    assert!(inst.is_cover(&solution.chosen)?, "mapped-back result is not a cover");

    Ok(LogkResult { solution, tau, iterations: t, bipartite_power, trace: best.trace, probes })
}
