//! Scalar measures driving the greedy reducers.
//!
//! Entropies are in bits with `0 · log 0 = 0`. Spatial similarity is the
//! cosine between the descending block-size vectors of two partitions, the
//! shorter vector padded with zeros.

use crate::dataset::DecisionTable;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sets::AttrSet;

/// Weights of the spatial-optimisation measure, `alpha + beta = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpsParams {
    alpha: f64,
    beta: f64,
}

impl SpsParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let in_unit = |w: f64| (0.0..=1.0).contains(&w);
        if !in_unit(alpha) || !in_unit(beta) {
            return Err(Error::InvalidParams(format!(
                "weights must lie in [0, 1], got alpha={alpha}, beta={beta}"
            )));
        }
        if (alpha + beta - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "alpha + beta must equal 1, got {}",
                alpha + beta
            )));
        }
        Ok(SpsParams { alpha, beta })
    }

    /// Sets `beta = 1 - alpha`.
    pub fn with_alpha(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0 - alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Default for SpsParams {
    fn default() -> Self {
        SpsParams {
            alpha: 0.5,
            beta: 0.5,
        }
    }
}

fn check_candidate(table: &DecisionTable, a: usize, r: &AttrSet) -> Result<()> {
    if a >= table.n_conditions() {
        return Err(Error::UnknownAttribute(format!("#{a}")));
    }
    table.check_attrs(r)?;
    if r.contains(a) {
        return Err(Error::AttributeAlreadyInSet(
            table.condition_names()[a].clone(),
        ));
    }
    Ok(())
}

/// Dependency degree of an already-computed condition partition.
pub fn dependency_of(p: &Partition, table: &DecisionTable) -> f64 {
    p.positive_count(table) as f64 / table.n_objects() as f64
}

/// `K(R, D) = |POS_R(D)| / |U|`.
pub fn dependency(table: &DecisionTable, attrs: &AttrSet) -> Result<f64> {
    Ok(dependency_of(&Partition::of(table, attrs)?, table))
}

/// `Sig(a, R, D) = K(R ∪ {a}, D) − K(R, D)`.
pub fn significance(table: &DecisionTable, a: usize, r: &AttrSet) -> Result<f64> {
    check_candidate(table, a, r)?;
    Ok(dependency(table, &r.with(a))? - dependency(table, r)?)
}

/// Shannon entropy of the block distribution.
pub fn entropy(p: &Partition) -> f64 {
    let n = p.universe() as f64;
    p.blocks()
        .iter()
        .map(|b| {
            let q = b.len() as f64 / n;
            -q * q.log2()
        })
        .sum()
}

/// `H(Q | P)` for two partitions of the same universe.
pub fn conditional_entropy_between(p: &Partition, q: &Partition) -> Result<f64> {
    if p.universe() != q.universe() {
        return Err(Error::UniverseMismatch {
            left: p.universe(),
            right: q.universe(),
        });
    }
    let mut label = vec![0usize; q.universe()];
    for (k, block) in q.blocks().iter().enumerate() {
        for &x in block {
            label[x] = k;
        }
    }
    let n = p.universe() as f64;
    let mut counts = vec![0usize; q.len()];
    let mut touched = Vec::new();
    let mut h = 0.0;
    for block in p.blocks() {
        for &x in block {
            if counts[label[x]] == 0 {
                touched.push(label[x]);
            }
            counts[label[x]] += 1;
        }
        let size = block.len() as f64;
        let inner: f64 = touched
            .iter()
            .map(|&k| {
                let c = counts[k] as f64 / size;
                -c * c.log2()
            })
            .sum();
        h += size / n * inner;
        for &k in &touched {
            counts[k] = 0;
        }
        touched.clear();
    }
    Ok(h)
}

/// `H(D | R)`: uncertainty left in the decision given attribute set `attrs`.
pub fn conditional_entropy(table: &DecisionTable, attrs: &AttrSet) -> Result<f64> {
    conditional_entropy_between(
        &Partition::of(table, attrs)?,
        &Partition::by_decision(table),
    )
}

/// `SGF(a, R, D) = H(D | R) − H(D | R ∪ {a})`.
pub fn sgf(table: &DecisionTable, a: usize, r: &AttrSet) -> Result<f64> {
    check_candidate(table, a, r)?;
    Ok(conditional_entropy(table, r)? - conditional_entropy(table, &r.with(a))?)
}

/// `I(R; D) = H(D) − H(D | R)`.
pub fn mutual_information(table: &DecisionTable, attrs: &AttrSet) -> Result<f64> {
    Ok(entropy(&Partition::by_decision(table)) - conditional_entropy(table, attrs)?)
}

fn sorted_sizes(p: &Partition) -> Vec<u64> {
    let mut sizes: Vec<u64> = p.blocks().iter().map(|b| b.len() as u64).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Cosine between the descending block-size vectors of `p` and `q`.
///
/// The result lies in `(0, 1]` for non-empty universes: both leading
/// components are positive.
pub fn spatial_similarity(p: &Partition, q: &Partition) -> Result<f64> {
    if p.universe() != q.universe() {
        return Err(Error::UniverseMismatch {
            left: p.universe(),
            right: q.universe(),
        });
    }
    let (u, v) = (sorted_sizes(p), sorted_sizes(q));
    // Zero padding contributes nothing to the dot product or either norm.
    let dot: u64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let nu: u64 = u.iter().map(|a| a * a).sum();
    let nv: u64 = v.iter().map(|b| b * b).sum();
    let cos = dot as f64 / (nu as f64 * nv as f64).sqrt();
    Ok(cos.min(1.0))
}

/// SPS of an already-computed condition partition against the decision partition.
pub fn sps_of(
    p: &Partition,
    decision: &Partition,
    table: &DecisionTable,
    params: SpsParams,
) -> Result<f64> {
    let cos = spatial_similarity(p, decision)?;
    Ok(params.alpha * cos + params.beta * dependency_of(p, table))
}

/// `SPS = α · cos(P, D) + β · |POS_P(D)| / |U|` with `P` induced by `attrs`.
pub fn sps(table: &DecisionTable, attrs: &AttrSet, params: SpsParams) -> Result<f64> {
    sps_of(
        &Partition::of(table, attrs)?,
        &Partition::by_decision(table),
        table,
        params,
    )
}

/// `SigSPS(a, R, D) = SPS(R ∪ {a}, D) − SPS(R, D)`; may be negative.
pub fn sig_sps(table: &DecisionTable, a: usize, r: &AttrSet, params: SpsParams) -> Result<f64> {
    check_candidate(table, a, r)?;
    Ok(sps(table, &r.with(a), params)? - sps(table, r, params)?)
}
