//! Discernibility matrix, attribute core and exhaustive reduct enumeration.
//!
//! Reducts are the prime implicants of the discernibility function, the
//! conjunction over all non-zero entries of the disjunction of their
//! attributes. [`all_reducts`] expands that CNF into a minimal DNF by
//! multiplying in one clause at a time and absorbing supersets eagerly.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dataset::DecisionTable;
use crate::error::{Error, Result};
use crate::sets::AttrSet;

/// Default attribute limit for exhaustive reduct enumeration.
pub const DEFAULT_REDUCT_LIMIT: usize = 20;

/// Entries for object pairs `(i, j)`, `i < j`, with differing decisions.
/// Pairs with equal decisions are the implicit zero entries.
#[derive(Debug, Clone)]
pub struct DiscernMatrix {
    n_objects: usize,
    n_conditions: usize,
    entries: Vec<((u32, u32), AttrSet)>,
}

fn rows_of(table: &DecisionTable) -> Vec<Vec<u32>> {
    (0..table.n_objects())
        .map(|x| {
            (0..table.n_conditions())
                .map(|a| table.value(x, a))
                .collect()
        })
        .collect()
}

fn differing(a: &[u32], b: &[u32]) -> AttrSet {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (u, v))| u != v)
        .map(|(k, _)| k)
        .collect()
}

impl DiscernMatrix {
    /// Builds the matrix of a consistent table.
    pub fn build(table: &DecisionTable) -> Result<Self> {
        let m = Self::build_skipping_conflicts(table);
        let conflicts = count_conflicts(table);
        if let Some(first) = conflicts.1 {
            return Err(Error::InconsistentTable {
                conflicts: conflicts.0,
                first,
            });
        }
        Ok(m)
    }

    /// Like [`DiscernMatrix::build`] but drops the empty entries that
    /// conflicting pairs would produce instead of failing.
    pub fn build_skipping_conflicts(table: &DecisionTable) -> Self {
        let rows = rows_of(table);
        let d = table.decisions();
        let n = table.n_objects();
        let entries: Vec<((u32, u32), AttrSet)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let rows = &rows;
                (i + 1..n).filter_map(move |j| {
                    if d[i] == d[j] {
                        return None;
                    }
                    let diff = differing(&rows[i], &rows[j]);
                    (!diff.is_empty()).then_some(((i as u32, j as u32), diff))
                })
            })
            .collect();
        DiscernMatrix {
            n_objects: n,
            n_conditions: table.n_conditions(),
            entries,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_conditions(&self) -> usize {
        self.n_conditions
    }

    /// Stored (non-zero) entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &AttrSet)> {
        self.entries
            .iter()
            .map(|((i, j), s)| ((*i as usize, *j as usize), s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Symmetric lookup; `None` is a zero entry.
    pub fn get(&self, i: usize, j: usize) -> Option<&AttrSet> {
        let key = (i.min(j) as u32, i.max(j) as u32);
        self.entries
            .binary_search_by_key(&key, |(k, _)| *k)
            .ok()
            .map(|idx| &self.entries[idx].1)
    }

    /// One line per stored entry, using object labels and attribute names.
    pub fn dump(&self, table: &DecisionTable) -> String {
        let mut out = String::new();
        for ((i, j), attrs) in self.entries() {
            let _ = writeln!(
                out,
                "({}, {}): {{{}}}",
                table.object_ids()[i],
                table.object_ids()[j],
                table.attr_names(attrs.iter()).join(", ")
            );
        }
        out
    }
}

fn count_conflicts(table: &DecisionTable) -> (usize, Option<(usize, usize)>) {
    match crate::dataset::check_consistency(table) {
        crate::dataset::Consistency::Consistent => (0, None),
        crate::dataset::Consistency::Conflicts(pairs) => (pairs.len(), pairs.first().copied()),
    }
}

/// Union of the singleton entries.
pub fn core(m: &DiscernMatrix) -> AttrSet {
    m.entries
        .iter()
        .filter(|(_, s)| s.len() == 1)
        .fold(AttrSet::new(), |acc, (_, s)| acc.union(s))
}

/// Core of a table computed pair by pair without materialising the matrix.
/// Conflicting pairs (empty entries) are ignored.
pub fn core_of_table(table: &DecisionTable) -> AttrSet {
    let rows = rows_of(table);
    let d = table.decisions();
    let n = table.n_objects();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut found = AttrSet::new();
            for j in i + 1..n {
                if d[i] == d[j] {
                    continue;
                }
                let mut only = None;
                let mut count = 0;
                for (k, (u, v)) in rows[i].iter().zip(&rows[j]).enumerate() {
                    if u != v {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                        only = Some(k);
                    }
                }
                if count == 1 {
                    found.insert(only.unwrap());
                }
            }
            found
        })
        .reduce(AttrSet::new, |a, b| a.union(&b))
}

/// Keeps only the inclusion-minimal sets, sorted and deduplicated.
fn absorb(mut sets: Vec<AttrSet>) -> Vec<AttrSet> {
    sets.sort();
    sets.dedup();
    let mut kept: Vec<AttrSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// All reducts: minimal attribute sets meeting every non-zero entry.
///
/// Returned in canonical order (size, then lexicographic). An empty matrix
/// yields the single empty reduct.
pub fn all_reducts(m: &DiscernMatrix, limit: usize) -> Result<Vec<AttrSet>> {
    if m.n_conditions > limit {
        return Err(Error::TooManyAttributes {
            count: m.n_conditions,
            limit,
        });
    }
    let mut clauses = absorb(m.entries.iter().map(|(_, s)| s.clone()).collect());

    // Short clauses first, and among equals those over frequent attributes,
    // so that early terms already satisfy many later clauses.
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for c in &clauses {
        for a in c.iter() {
            *freq.entry(a).or_default() += 1;
        }
    }
    let weight = |c: &AttrSet| c.iter().map(|a| freq[&a]).sum::<usize>();
    clauses.sort_by(|x, y| {
        x.len()
            .cmp(&y.len())
            .then_with(|| weight(y).cmp(&weight(x)))
            .then_with(|| x.cmp(y))
    });

    let mut terms = vec![AttrSet::new()];
    for clause in &clauses {
        let mut next = Vec::with_capacity(terms.len());
        for term in &terms {
            if term.intersects(clause) {
                next.push(term.clone());
            } else {
                next.extend(clause.iter().map(|a| term.with(a)));
            }
        }
        terms = absorb(next);
    }
    Ok(terms)
}
