//! Attribute reduction algorithms.
//!
//! The three greedy reducers share one skeleton: seed `R` with the
//! discernibility core, then add one attribute per step until a stopping
//! test holds.
//!
//! | algorithm | stopping test               | score                          |
//! |-----------|-----------------------------|--------------------------------|
//! | `hu`      | `POS_R(D) = POS_C(D)`       | `Sig(a, R, D)`                 |
//! | `mibark`  | `I(R; D) = I(C; D)`         | `SGF(a, R, D)`                 |
//! | `srs`     | `POS_R(D) = POS_C(D)`       | `SigSPS`, falling back to `Sig`|
//!
//! Ties go to the lowest column index. When no candidate has a positive
//! score the step adds the attribute that splits the current partition into
//! the most blocks, which keeps the search moving towards `R = C`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::dataset::{check_consistency, Consistency, DecisionTable};
use crate::discern::{self, DiscernMatrix};
use crate::error::{Error, Result};
use crate::metrics::{self, SpsParams};
use crate::partition::Partition;
use crate::sets::AttrSet;

/// Absolute tolerance for comparing mutual information values.
pub const INFO_TOLERANCE: f64 = 1e-10;

/// Entropy-based scores closer than this are treated as ties.
const ENTROPY_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Discern,
    Hu,
    Mibark,
    Srs,
}

impl Algorithm {
    pub const GREEDY: [Algorithm; 3] = [Algorithm::Hu, Algorithm::Mibark, Algorithm::Srs];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Discern => "discern",
            Algorithm::Hu => "hu",
            Algorithm::Mibark => "mibark",
            Algorithm::Srs => "srs",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "discern" => Ok(Algorithm::Discern),
            "hu" => Ok(Algorithm::Hu),
            "mibark" => Ok(Algorithm::Mibark),
            "srs" => Ok(Algorithm::Srs),
            other => Err(Error::InvalidParams(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// How the reducers treat tables where `POS_C(D) ≠ U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InconsistencyPolicy {
    /// Fail with [`Error::InconsistentTable`].
    #[default]
    Reject,
    /// Stop once `R` matches what the full condition set achieves
    /// (`POS_C(D)`, or `I(C; D)` for MIBARK).
    MatchFullSet,
    /// Keep the target at `POS_R(D) = U` (`H(D | R) = 0` for MIBARK). On an
    /// inconsistent table the target is unreachable and the search ends with
    /// `R = C`.
    RequireUniverse,
}

impl FromStr for InconsistencyPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reject" => Ok(InconsistencyPolicy::Reject),
            "match-full-set" => Ok(InconsistencyPolicy::MatchFullSet),
            "require-universe" => Ok(InconsistencyPolicy::RequireUniverse),
            other => Err(Error::InvalidParams(format!(
                "unknown inconsistency policy `{other}` \
                 (expected reject, match-full-set or require-universe)"
            ))),
        }
    }
}

impl fmt::Display for InconsistencyPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InconsistencyPolicy::Reject => "reject",
            InconsistencyPolicy::MatchFullSet => "match-full-set",
            InconsistencyPolicy::RequireUniverse => "require-universe",
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReduceOptions {
    pub params: SpsParams,
    pub policy: InconsistencyPolicy,
    /// Drop attributes whose removal keeps the stopping test satisfied.
    pub prune: bool,
}

/// Which rule picked the attribute of a trace step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Core,
    /// Best positive `Sig` (hu) or `SGF` (mibark).
    Greedy,
    /// Best positive `SigSPS`.
    Sps,
    /// No positive `SigSPS`; best `Sig` instead.
    Fallback,
    /// No positive score at all; largest refined partition.
    Guard,
}

impl Branch {
    pub fn id(self) -> &'static str {
        match self {
            Branch::Core => "core",
            Branch::Greedy => "greedy",
            Branch::Sps => "sps",
            Branch::Fallback => "fallback",
            Branch::Guard => "guard",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateScore {
    pub attr: usize,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub step: usize,
    pub branch: Branch,
    pub chosen: usize,
    /// Primary scores of every candidate, in column order. Empty for core steps.
    pub scores: Vec<CandidateScore>,
    /// `Sig` values on a fallback step, block counts on a guard step.
    pub secondary: Vec<CandidateScore>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductStats {
    pub dependency: f64,
    pub spatial_similarity: f64,
    pub rule_count: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductResult {
    pub algorithm: Algorithm,
    /// Core attributes first (ascending), then greedy picks in order.
    pub reduct: Vec<usize>,
    pub trace: Vec<TraceStep>,
    pub stats: ReductStats,
    /// False only when [`InconsistencyPolicy::RequireUniverse`] ran out of candidates.
    pub target_reached: bool,
    /// Attributes removed by post-pruning, in removal order.
    pub pruned: Vec<usize>,
}

impl ReductResult {
    pub fn attr_set(&self) -> AttrSet {
        self.reduct.iter().collect()
    }

    pub fn names<'a>(&self, table: &'a DecisionTable) -> Vec<&'a str> {
        table.attr_names(self.reduct.iter().copied())
    }
}

pub fn reduce_hu(table: &DecisionTable) -> Result<ReductResult> {
    greedy(table, Algorithm::Hu, &ReduceOptions::default())
}

pub fn reduce_mibark(table: &DecisionTable) -> Result<ReductResult> {
    greedy(table, Algorithm::Mibark, &ReduceOptions::default())
}

pub fn reduce_srs(table: &DecisionTable, params: SpsParams) -> Result<ReductResult> {
    let options = ReduceOptions {
        params,
        ..ReduceOptions::default()
    };
    greedy(table, Algorithm::Srs, &options)
}

/// Runs one of the greedy reducers with explicit options.
pub fn reduce_greedy(
    table: &DecisionTable,
    algorithm: Algorithm,
    options: &ReduceOptions,
) -> Result<ReductResult> {
    if algorithm == Algorithm::Discern {
        return Err(Error::InvalidParams(
            "discern enumerates all reducts; use reduce_discern".into(),
        ));
    }
    greedy(table, algorithm, options)
}

/// Every minimal reduct of a consistent table, one result each.
pub fn reduce_discern(table: &DecisionTable, limit: usize) -> Result<Vec<ReductResult>> {
    reduce_discern_with(table, limit, InconsistencyPolicy::Reject)
}

pub fn reduce_discern_with(
    table: &DecisionTable,
    limit: usize,
    policy: InconsistencyPolicy,
) -> Result<Vec<ReductResult>> {
    if table.n_conditions() > limit {
        return Err(Error::TooManyAttributes {
            count: table.n_conditions(),
            limit,
        });
    }
    let start = Instant::now();
    let matrix = match policy {
        InconsistencyPolicy::Reject => DiscernMatrix::build(table)?,
        _ => DiscernMatrix::build_skipping_conflicts(table),
    };
    let reducts = discern::all_reducts(&matrix, limit)?;
    let elapsed = start.elapsed();
    let decision = Partition::by_decision(table);
    reducts
        .into_iter()
        .map(|attrs| {
            let partition = Partition::of(table, &attrs)?;
            Ok(ReductResult {
                algorithm: Algorithm::Discern,
                reduct: attrs.to_vec(),
                trace: Vec::new(),
                stats: stats_for(table, &partition, &decision, elapsed)?,
                target_reached: true,
                pruned: Vec::new(),
            })
        })
        .collect()
}

fn stats_for(
    table: &DecisionTable,
    partition: &Partition,
    decision: &Partition,
    elapsed: Duration,
) -> Result<ReductStats> {
    Ok(ReductStats {
        dependency: metrics::dependency_of(partition, table),
        spatial_similarity: metrics::spatial_similarity(partition, decision)?,
        rule_count: partition.len(),
        elapsed,
    })
}

/// The quantity the stopping test compares.
enum Target {
    Positive(usize),
    Information { info: f64, entropy: f64 },
}

impl Target {
    fn reached(
        &self,
        table: &DecisionTable,
        partition: &Partition,
        decision: &Partition,
    ) -> Result<bool> {
        Ok(match *self {
            Target::Positive(count) => partition.positive_count(table) == count,
            Target::Information { info, entropy } => {
                let h = metrics::conditional_entropy_between(partition, decision)?;
                ((entropy - h) - info).abs() <= INFO_TOLERANCE
            }
        })
    }
}

struct Candidate {
    attr: usize,
    partition: Partition,
    positive: usize,
}

fn argmax(scores: &[CandidateScore], tie: f64) -> CandidateScore {
    let best = scores
        .iter()
        .map(|s| s.score)
        .fold(f64::NEG_INFINITY, f64::max);
    *scores
        .iter()
        .find(|s| s.score >= best - tie)
        .expect("at least one candidate")
}

fn greedy(
    table: &DecisionTable,
    algorithm: Algorithm,
    options: &ReduceOptions,
) -> Result<ReductResult> {
    let start = Instant::now();
    let consistent = match check_consistency(table) {
        Consistency::Consistent => true,
        Consistency::Conflicts(pairs) => {
            if options.policy == InconsistencyPolicy::Reject {
                return Err(Error::InconsistentTable {
                    conflicts: pairs.len(),
                    first: pairs[0],
                });
            }
            false
        }
    };
    let n = table.n_objects();
    let decision = Partition::by_decision(table);
    let full = Partition::of(table, &table.all_conditions())?;
    let require_universe = options.policy == InconsistencyPolicy::RequireUniverse;

    let target = match algorithm {
        Algorithm::Mibark => {
            let entropy = metrics::entropy(&decision);
            let info = if require_universe {
                entropy
            } else {
                entropy - metrics::conditional_entropy_between(&full, &decision)?
            };
            Target::Information { info, entropy }
        }
        _ if require_universe => Target::Positive(n),
        _ => Target::Positive(full.positive_count(table)),
    };

    let core = discern::core_of_table(table);
    let mut reduct: Vec<usize> = core.to_vec();
    let mut chosen = core;
    let mut trace: Vec<TraceStep> = reduct
        .iter()
        .enumerate()
        .map(|(step, &a)| TraceStep {
            step,
            branch: Branch::Core,
            chosen: a,
            scores: Vec::new(),
            secondary: Vec::new(),
        })
        .collect();
    let mut partition = Partition::of(table, &chosen)?;
    let mut target_reached = true;

    while !target.reached(table, &partition, &decision)? {
        let pool: Vec<usize> = (0..table.n_conditions())
            .filter(|a| !chosen.contains(*a))
            .collect();
        if pool.is_empty() {
            if require_universe && !consistent {
                target_reached = false;
                break;
            }
            return Err(Error::NoProgress { step: trace.len() });
        }

        let candidates: Vec<Candidate> = pool
            .par_iter()
            .map(|&attr| {
                let refined = partition.refine(table, attr);
                Candidate {
                    attr,
                    positive: refined.positive_count(table),
                    partition: refined,
                }
            })
            .collect();
        let base_positive = partition.positive_count(table);
        let significance: Vec<CandidateScore> = candidates
            .iter()
            .map(|c| CandidateScore {
                attr: c.attr,
                score: c.positive as f64 / n as f64 - base_positive as f64 / n as f64,
            })
            .collect();

        let (scores, pick, branch, secondary) = match algorithm {
            Algorithm::Hu => {
                let best = argmax(&significance, 0.0);
                (significance, best, Branch::Greedy, Vec::new())
            }
            Algorithm::Mibark => {
                let base = metrics::conditional_entropy_between(&partition, &decision)?;
                let gains = candidates
                    .par_iter()
                    .map(|c| {
                        Ok(CandidateScore {
                            attr: c.attr,
                            score: base
                                - metrics::conditional_entropy_between(&c.partition, &decision)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let best = argmax(&gains, ENTROPY_TIE);
                let best = if best.score > ENTROPY_TIE {
                    best
                } else {
                    // Treat sub-tolerance gains as zero so the guard decides.
                    CandidateScore {
                        attr: best.attr,
                        score: 0.0,
                    }
                };
                (gains, best, Branch::Greedy, Vec::new())
            }
            Algorithm::Srs => {
                let base = metrics::sps_of(&partition, &decision, table, options.params)?;
                let gains = candidates
                    .par_iter()
                    .map(|c| {
                        Ok(CandidateScore {
                            attr: c.attr,
                            score: metrics::sps_of(&c.partition, &decision, table, options.params)?
                                - base,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let best = argmax(&gains, 0.0);
                if best.score > 0.0 {
                    (gains, best, Branch::Sps, Vec::new())
                } else {
                    let fallback = argmax(&significance, 0.0);
                    (gains, fallback, Branch::Fallback, significance)
                }
            }
            Algorithm::Discern => unreachable!("handled by reduce_discern"),
        };

        let (branch, pick, secondary) = if pick.score > 0.0 {
            (branch, pick.attr, secondary)
        } else {
            let blocks: Vec<CandidateScore> = candidates
                .iter()
                .map(|c| CandidateScore {
                    attr: c.attr,
                    score: c.partition.len() as f64,
                })
                .collect();
            (Branch::Guard, argmax(&blocks, 0.0).attr, blocks)
        };

        let winner = candidates
            .into_iter()
            .find(|c| c.attr == pick)
            .expect("pick is a candidate");
        partition = winner.partition;
        chosen.insert(pick);
        reduct.push(pick);
        trace.push(TraceStep {
            step: trace.len(),
            branch,
            chosen: pick,
            scores,
            secondary,
        });
    }

    let mut pruned = Vec::new();
    if options.prune && target_reached {
        for &a in reduct.clone().iter().rev() {
            let without = chosen.difference(&AttrSet::singleton(a));
            let p = Partition::of(table, &without)?;
            if target.reached(table, &p, &decision)? {
                chosen = without;
                partition = p;
                reduct.retain(|&x| x != a);
                pruned.push(a);
            }
        }
    }

    let stats = stats_for(table, &partition, &decision, start.elapsed())?;
    Ok(ReductResult {
        algorithm,
        reduct,
        trace,
        stats,
        target_reached,
        pruned,
    })
}
