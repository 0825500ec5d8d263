//! Benchmark runner: every algorithm on every instance of a seeded family,
//! checked for feasibility and against its approximation bound.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bipartite::to_bipartite;
use crate::coverage::BpbmemMode;
use crate::error::{Error, Result};
use crate::exact::exact_mpemc;
use crate::generate::{generate, GenParams};
use crate::instance::{Cost, Instance, Solution};
use crate::khalf::solve_khalf;
use crate::logk::{solve_logk, Gamma, ReduceParams};
use crate::verify::verify;

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Trivial,
    Logk { gamma: Gamma, greedy_only: bool },
    Khalf,
    Exact,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Trivial => f.write_str("trivial"),
            Algorithm::Logk { gamma, greedy_only } => {
                let name = if *greedy_only { "logk-greedy" } else { "logk" };
                if *gamma == Gamma::default() {
                    f.write_str(name)
                } else {
                    write!(f, "{name}:{gamma}")
                }
            }
            Algorithm::Khalf => f.write_str("khalf"),
            Algorithm::Exact => f.write_str("exact"),
        }
    }
}

/// `trivial`, `khalf`, `exact`, `logk`, `logk:<gamma>`, `logk-greedy` or
/// `logk-greedy:<gamma>`.
impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, gamma) = match s.split_once(':') {
            Some((name, g)) => (name, Some(g.parse::<Gamma>()?)),
            None => (s, None),
        };
        let logk = |greedy_only| Algorithm::Logk { gamma: gamma.unwrap_or_default(), greedy_only };
        let algorithm = match name {
            "trivial" => Algorithm::Trivial,
            "khalf" => Algorithm::Khalf,
            "exact" => Algorithm::Exact,
            "logk" => return Ok(logk(false)),
            "logk-greedy" => return Ok(logk(true)),
            _ => return Err(Error::Parameter(format!("unknown algorithm {s:?}"))),
        };
        if gamma.is_some() {
            return Err(Error::Parameter(format!("{name} takes no gamma")));
        }
        Ok(algorithm)
    }
}

impl Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Algorithm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Seeds `seed..seed + count`. Each seed draws a node count in
/// `min_nodes..=max_nodes` and then instances until one has at most
/// `max_edges` edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InstanceFamily {
    pub seed: u64,
    pub count: usize,
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub edge_probability: f64,
    pub max_cost: Cost,
    pub k: u32,
    pub max_edges: Option<usize>,
}

impl Default for InstanceFamily {
    fn default() -> Self {
        InstanceFamily {
            seed: 0,
            count: 0,
            min_nodes: 2,
            max_nodes: 7,
            edge_probability: 0.5,
            max_cost: 10,
            k: 3,
            max_edges: Some(12),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub id: usize,
    pub seed: u64,
    pub instance: Instance,
}

impl InstanceFamily {
    pub fn instance(&self, id: usize) -> Result<FamilyMember> {
        if self.min_nodes > self.max_nodes {
            return Err(Error::Parameter(format!(
                "min_nodes {} exceeds max_nodes {}",
                self.min_nodes, self.max_nodes
            )));
        }
        let seed = self.seed.wrapping_add(id as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_ATTEMPTS {
            let params = GenParams {
                nodes: rng.gen_range(self.min_nodes..=self.max_nodes),
                edge_probability: self.edge_probability,
                max_cost: self.max_cost,
                k: self.k,
            };
            let instance = generate(&mut rng, &params)?;
            if self.max_edges.map_or(true, |m| instance.edges().len() <= m) {
                return Ok(FamilyMember { id, seed, instance });
            }
        }
        Err(Error::Parameter(format!("seed {seed}: no instance within the edge limit")))
    }

    pub fn instances(&self) -> Result<Vec<FamilyMember>> {
        (0..self.count).map(|id| self.instance(id)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub family: InstanceFamily,
    pub algorithms: Vec<Algorithm>,
    /// Exact optimum computed when `|E|` is at most this.
    pub oracle_limit: usize,
    /// Exact optimum of the bipartite image computed when `2|E|` is at most
    /// this; only used to check the returned `τ` of the log-k solver.
    pub bipartite_oracle_limit: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            family: InstanceFamily::default(),
            algorithms: Vec::new(),
            oracle_limit: crate::exact::DEFAULT_EDGE_LIMIT,
            bipartite_oracle_limit: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    /// Skipped because the instance exceeds the oracle cap.
    Skipped,
    Infeasible,
    BoundViolated,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: usize,
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub k: u32,
    pub algorithm: Algorithm,
    pub status: RowStatus,
    pub power: Option<Cost>,
    pub opt: Option<Cost>,
    pub ratio: Option<f64>,
    pub tau: Option<Cost>,
    pub opt_bipartite: Option<Cost>,
    pub error: Option<String>,
    pub elapsed_us: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn failures(&self) -> impl Iterator<Item = &BenchRow> {
        self.rows
            .iter()
            .filter(|r| !matches!(r.status, RowStatus::Ok | RowStatus::Skipped))
    }

    pub fn is_success(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn without_timing(&self) -> BenchReport {
        let rows = self.rows.iter().cloned().map(|r| BenchRow { elapsed_us: None, ..r }).collect();
        BenchReport { rows }
    }

    /// One JSON object per row.
    pub fn to_json_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
            .collect()
    }
}

/// Approximation bound check for one algorithm, `None` when nothing applies.
fn within_bound(
    algorithm: Algorithm,
    k: u32,
    power: Cost,
    opt: Option<Cost>,
    logk: Option<(Cost, u32)>,
    opt_bipartite: Option<Cost>,
) -> Option<bool> {
    let (p, k) = (power as u128, k as u128);
    match algorithm {
        Algorithm::Trivial => opt.map(|o| p <= (k + 1) * o as u128),
        Algorithm::Khalf => opt.map(|o| 2 * p <= (2 * k + 1) * o as u128),
        Algorithm::Exact => opt.map(|o| power == o),
        Algorithm::Logk { greedy_only: true, .. } => None,
        Algorithm::Logk { gamma, greedy_only: false } => {
            let (tau, t) = logk.expect("log-k rows carry tau");
            let (num, den) = (gamma.numer() as u128, gamma.denom() as u128);
            let (tau, t) = (tau as u128, t as u128);
            let power_ok = p * den <= 2 * (t * (num + den) * tau + 2 * tau * den);
            let tau_ok = opt_bipartite.map_or(true, |o| tau <= o as u128);
            Some(power_ok && tau_ok)
        }
    }
}

fn run_algorithm(
    algorithm: Algorithm,
    inst: &Instance,
    oracle_limit: usize,
) -> Result<(Solution, Option<(Cost, u32)>)> {
    match algorithm {
        Algorithm::Trivial => Ok((inst.trivial_cover(), None)),
        Algorithm::Khalf => Ok((solve_khalf(inst)?.solution, None)),
        Algorithm::Exact => Ok((exact_mpemc(inst, oracle_limit)?, None)),
        Algorithm::Logk { gamma, greedy_only } => {
            let mode =
                if greedy_only { BpbmemMode::GreedyOnly } else { BpbmemMode::PartialEnumeration };
            let r = solve_logk(inst, &ReduceParams::new(gamma).with_mode(mode))?;
            Ok((r.solution, Some((r.tau, r.iterations))))
        }
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let mut rows = Vec::new();
    if config.algorithms.is_empty() {
        return Ok(BenchReport { rows });
    }
    let wants_bipartite = config
        .algorithms
        .iter()
        .any(|a| matches!(a, Algorithm::Logk { greedy_only: false, .. }));

    for member in config.family.instances()? {
        let inst = &member.instance;
        let m = inst.edges().len();
        let opt = (m <= config.oracle_limit)
            .then(|| exact_mpemc(inst, config.oracle_limit).map(|s| s.total_power))
            .transpose()?;
        let opt_bipartite = (wants_bipartite && 2 * m <= config.bipartite_oracle_limit)
            .then(|| {
                exact_mpemc(to_bipartite(inst).instance(), config.bipartite_oracle_limit)
                    .map(|s| s.total_power)
            })
            .transpose()?;

        for &algorithm in &config.algorithms {
            let mut row = BenchRow {
                instance: member.id,
                seed: member.seed,
                nodes: inst.node_count(),
                edges: m,
                k: inst.max_requirement(),
                algorithm,
                status: RowStatus::Ok,
                power: None,
                opt,
                ratio: None,
                tau: None,
                opt_bipartite: if matches!(algorithm, Algorithm::Logk { .. }) {
                    opt_bipartite
                } else {
                    None
                },
                error: None,
                elapsed_us: None,
            };
            let start = Instant::now();
            let outcome = run_algorithm(algorithm, inst, config.oracle_limit);
            row.elapsed_us = Some(start.elapsed().as_micros() as u64);
            match outcome {
                Err(Error::TooLarge { .. }) if algorithm == Algorithm::Exact => {
                    row.status = RowStatus::Skipped;
                }
                Err(e) => {
                    row.status = RowStatus::Failed;
                    row.error = Some(e.to_string());
                }
                Ok((solution, logk)) => {
                    let power = solution.total_power;
                    row.power = Some(power);
                    row.tau = logk.map(|(tau, _)| tau);
                    row.ratio = opt.filter(|&o| o > 0).map(|o| power as f64 / o as f64);
                    let report = verify(inst, &solution);
                    if !report.is_ok() {
                        row.status = RowStatus::Infeasible;
                        row.error = Some(
                            report.issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
                        );
                    } else if within_bound(algorithm, row.k, power, opt, logk, row.opt_bipartite)
                        == Some(false)
                    {
                        row.status = RowStatus::BoundViolated;
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(BenchReport { rows })
}
