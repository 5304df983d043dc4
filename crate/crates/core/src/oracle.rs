//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive and shares no code with the fast
//! paths it checks: partitions come from pairwise row comparison, measures
//! are recomputed from raw counts.

use std::collections::{BTreeMap, HashSet};

use crate::dataset::DecisionTable;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sets::{AttrSet, ObjectSet};

/// Attribute limit for exhaustive subset enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 12;

fn agree(table: &DecisionTable, x: usize, y: usize, attrs: &[usize]) -> bool {
    attrs
        .iter()
        .all(|&a| table.value(x, a) == table.value(y, a))
}

/// `U/IND(attrs)` by comparing every object with the first member of each
/// block found so far.
pub fn naive_partition(table: &DecisionTable, attrs: &AttrSet) -> Result<Partition> {
    table.check_attrs(attrs)?;
    let attrs = attrs.to_vec();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..table.n_objects() {
        match blocks.iter_mut().find(|b| agree(table, b[0], x, &attrs)) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    Partition::from_blocks(table.n_objects(), blocks)
}

/// Objects whose `attrs`-class carries a single decision, by pairwise scan.
pub fn naive_positive_region(table: &DecisionTable, attrs: &AttrSet) -> Result<ObjectSet> {
    table.check_attrs(attrs)?;
    let attrs = attrs.to_vec();
    let n = table.n_objects();
    let d = table.decisions();
    let pos = (0..n).filter(|&x| (0..n).all(|y| d[x] == d[y] || !agree(table, x, y, &attrs)));
    Ok(ObjectSet::from_indices(n, pos))
}

/// All minimal subsets whose positive region equals that of the full
/// condition set (`U` on consistent tables).
///
/// Returned in canonical order (size, then lexicographic).
pub fn brute_force_reducts(table: &DecisionTable, limit: usize) -> Result<Vec<AttrSet>> {
    let m = table.n_conditions();
    if m > limit {
        return Err(Error::TooManyAttributes { count: m, limit });
    }
    let full = naive_positive_region(table, &table.all_conditions())?;
    let mut preserving: HashSet<AttrSet> = HashSet::new();
    for mask in 0u64..(1 << m) {
        let subset: AttrSet = (0..m).filter(|a| mask >> a & 1 == 1).collect();
        if naive_positive_region(table, &subset)? == full {
            preserving.insert(subset);
        }
    }
    // Preservation is monotone, so minimal means no preserving set one
    // element smaller.
    let mut reducts: Vec<AttrSet> = preserving
        .iter()
        .filter(|s| {
            s.iter().all(|a| {
                let mut smaller = (*s).clone();
                smaller.remove(a);
                !preserving.contains(&smaller)
            })
        })
        .cloned()
        .collect();
    reducts.sort();
    Ok(reducts)
}

fn plogp_sum(counts: impl Iterator<Item = usize>, total: usize) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum::<f64>()
        .abs()
}

/// Entropy recomputed from a per-object labelling.
pub fn naive_entropy(labels: &[usize]) -> f64 {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1;
    }
    plogp_sum(counts.into_values(), labels.len())
}

/// `H(Y | X)` from two per-object labellings.
pub fn naive_conditional_entropy(x: &[usize], y: &[usize]) -> f64 {
    let n = x.len();
    let mut joint: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for (&a, &b) in x.iter().zip(y) {
        *joint.entry(a).or_default().entry(b).or_default() += 1;
    }
    joint
        .values()
        .map(|row| {
            let size: usize = row.values().sum();
            size as f64 / n as f64 * plogp_sum(row.values().copied(), size)
        })
        .sum()
}

fn label_sizes(labels: &[usize]) -> Vec<f64> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1;
    }
    let mut sizes: Vec<f64> = counts.into_values().map(|c| c as f64).collect();
    sizes.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sizes
}

/// Cosine of the padded descending class-size vectors of two labellings.
pub fn naive_cosine(x: &[usize], y: &[usize]) -> f64 {
    let (mut u, mut v) = (label_sizes(x), label_sizes(y));
    let len = u.len().max(v.len());
    u.resize(len, 0.0);
    v.resize(len, 0.0);
    let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|b| b * b).sum::<f64>().sqrt();
    dot / (nu * nv)
}

/// Per-object block index of a partition.
pub fn labels_of(p: &Partition) -> Vec<usize> {
    let mut labels = vec![0; p.universe()];
    for (k, block) in p.blocks().iter().enumerate() {
        for &x in block {
            labels[x] = k;
        }
    }
    labels
}

/// One cross-check of the fast path against the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Recomputes everything about `reduct` the naive way and compares.
///
/// Exhaustive checks (brute-force reducts against the discernibility
/// matrix) run only when the table has at most `limit` attributes.
pub fn cross_check(table: &DecisionTable, reduct: &AttrSet, limit: usize) -> Result<Vec<Check>> {
    use crate::discern::{all_reducts, DiscernMatrix};
    use crate::metrics;
    use crate::partition::positive_region;

    let mut checks = Vec::new();
    let fast = Partition::of(table, reduct)?;
    let naive = naive_partition(table, reduct)?;
    checks.push(check(
        "partition",
        fast == naive,
        format!("{} blocks vs {} naive", fast.len(), naive.len()),
    ));

    let decision = Partition::by_decision(table);
    let (x, y) = (
        labels_of(&naive),
        table
            .decisions()
            .iter()
            .map(|&d| d as usize)
            .collect::<Vec<_>>(),
    );
    let h = metrics::conditional_entropy_between(&fast, &decision)?;
    let h_naive = naive_conditional_entropy(&x, &y);
    checks.push(check(
        "conditional entropy",
        (h - h_naive).abs() <= 1e-12,
        format!("{h:.15} vs {h_naive:.15}"),
    ));
    let c = metrics::spatial_similarity(&fast, &decision)?;
    let c_naive = naive_cosine(&x, &y);
    checks.push(check(
        "spatial similarity",
        (c - c_naive).abs() <= 1e-12,
        format!("{c:.15} vs {c_naive:.15}"),
    ));

    let pos = positive_region(table, reduct)?;
    let pos_naive = naive_positive_region(table, reduct)?;
    checks.push(check(
        "positive region",
        pos == pos_naive,
        format!("{} vs {} objects", pos.len(), pos_naive.len()),
    ));
    let full = naive_positive_region(table, &table.all_conditions())?;
    checks.push(check(
        "preserves full positive region",
        pos_naive == full,
        format!("{} of {} objects", pos_naive.len(), full.len()),
    ));

    if table.n_conditions() > limit {
        checks.push(check(
            "exhaustive reducts",
            true,
            format!(
                "skipped: {} attributes exceed {limit}",
                table.n_conditions()
            ),
        ));
        return Ok(checks);
    }
    let brute = brute_force_reducts(table, limit)?;
    if crate::dataset::check_consistency(table).is_consistent() {
        let fast_all = all_reducts(&DiscernMatrix::build(table)?, limit)?;
        checks.push(check(
            "discernibility reducts",
            fast_all == brute,
            format!("{} vs {} brute-force", fast_all.len(), brute.len()),
        ));
    }
    checks.push(check(
        "contains a minimal reduct",
        brute.iter().any(|m| m.is_subset(reduct)),
        format!("{} minimal reducts", brute.len()),
    ));
    Ok(checks)
}
