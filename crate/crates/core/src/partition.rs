//! Indiscernibility partitions and the approximation-space primitives.
//!
//! A [`Partition`] is the quotient `U/IND(R)` of the universe under agreement
//! on an attribute subset `R`. Blocks are kept sorted internally and ordered
//! by their smallest member, so two partitions with the same blocks compare
//! equal regardless of how they were built.

use crate::dataset::DecisionTable;
use crate::error::{Error, Result};
use crate::sets::{AttrSet, ObjectSet};

/// What induced a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Attributes { conditions: AttrSet, decision: bool },
    Explicit,
}

#[derive(Debug, Clone)]
pub struct Partition {
    universe: usize,
    blocks: Vec<Vec<usize>>,
    source: Source,
}

/// Partitions are equal when their blocks are; the source is provenance only.
impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.blocks == other.blocks
    }
}

impl Eq for Partition {}

/// Positive, negative and boundary regions of a target set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionTriple {
    pub positive: ObjectSet,
    pub negative: ObjectSet,
    pub boundary: ObjectSet,
}

impl Partition {
    /// The single-block partition `{U}`.
    pub fn whole(universe: usize) -> Self {
        let blocks = if universe == 0 {
            Vec::new()
        } else {
            vec![(0..universe).collect()]
        };
        Partition {
            universe,
            blocks,
            source: Source::Attributes {
                conditions: AttrSet::new(),
                decision: false,
            },
        }
    }

    /// Validates explicit blocks: non-empty, disjoint, covering `0..universe`.
    pub fn from_blocks(universe: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; universe];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= universe {
                    return Err(Error::InvalidPartition(format!(
                        "object {x} outside universe of {universe}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("object {x} repeated")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("object {x} not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition {
            universe,
            blocks,
            source: Source::Explicit,
        })
    }

    /// Partition of `table` by the condition attributes in `attrs`.
    pub fn of(table: &DecisionTable, attrs: &AttrSet) -> Result<Self> {
        table.check_attrs(attrs)?;
        let mut p = Partition::whole(table.n_objects());
        for a in attrs.iter() {
            p = p.refine(table, a);
        }
        Ok(p)
    }

    /// Partition `U/IND(D)` by the decision attribute.
    pub fn by_decision(table: &DecisionTable) -> Self {
        Partition::whole(table.n_objects()).refine_by_decision(table)
    }

    /// Partition by attribute names, which may include the decision attribute.
    pub fn by_names<S: AsRef<str>>(table: &DecisionTable, names: &[S]) -> Result<Self> {
        let mut conditions = AttrSet::new();
        let mut decision = false;
        for name in names {
            let name = name.as_ref();
            if name == table.decision_name() {
                decision = true;
            } else {
                conditions.insert(table.attr_index(name)?);
            }
        }
        let p = Partition::of(table, &conditions)?;
        Ok(if decision {
            p.refine_by_decision(table)
        } else {
            p
        })
    }

    /// Splits every block by the values of condition attribute `attr`.
    pub fn refine(&self, table: &DecisionTable, attr: usize) -> Partition {
        let blocks = split_blocks(&self.blocks, table.column(attr), table.cardinality(attr));
        let source = match &self.source {
            Source::Attributes {
                conditions,
                decision,
            } => Source::Attributes {
                conditions: conditions.with(attr),
                decision: *decision,
            },
            Source::Explicit => Source::Explicit,
        };
        Partition {
            universe: self.universe,
            blocks,
            source,
        }
    }

    pub fn refine_by_decision(&self, table: &DecisionTable) -> Partition {
        let blocks = split_blocks(
            &self.blocks,
            table.decisions(),
            table.decision_cardinality(),
        );
        let source = match &self.source {
            Source::Attributes { conditions, .. } => Source::Attributes {
                conditions: conditions.clone(),
                decision: true,
            },
            Source::Explicit => Source::Explicit,
        };
        Partition {
            universe: self.universe,
            blocks,
            source,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, `|U/IND(R)|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn block_set(&self, i: usize) -> ObjectSet {
        ObjectSet::from_indices(self.universe, self.blocks[i].iter().copied())
    }

    /// Blocks on which every object has the same decision.
    pub fn pure_blocks<'a>(
        &'a self,
        table: &'a DecisionTable,
    ) -> impl Iterator<Item = &'a Vec<usize>> {
        let d = table.decisions();
        self.blocks
            .iter()
            .filter(move |b| b.iter().all(|&x| d[x] == d[b[0]]))
    }

    /// `|POS_R(D)|` for the attribute set that induced this partition.
    pub fn positive_count(&self, table: &DecisionTable) -> usize {
        self.pure_blocks(table).map(Vec::len).sum()
    }
}

fn split_blocks(blocks: &[Vec<usize>], key: &[u32], cardinality: usize) -> Vec<Vec<usize>> {
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cardinality];
    let mut touched = Vec::new();
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        for &x in block {
            let k = key[x] as usize;
            if buckets[k].is_empty() {
                touched.push(k);
            }
            buckets[k].push(x);
        }
        // Blocks are sorted, so each piece is sorted and starts at its minimum.
        for &k in &touched {
            out.push(std::mem::take(&mut buckets[k]));
        }
        touched.clear();
    }
    out.sort_unstable_by_key(|b| b[0]);
    out
}

/// `R(X)` lower approximation: union of blocks contained in `x`.
pub fn lower_approx(p: &Partition, x: &ObjectSet) -> ObjectSet {
    let mut out = ObjectSet::empty(p.universe);
    for block in &p.blocks {
        if block.iter().all(|&o| x.contains(o)) {
            for &o in block {
                out.insert(o);
            }
        }
    }
    out
}

/// Upper approximation: union of blocks meeting `x`.
pub fn upper_approx(p: &Partition, x: &ObjectSet) -> ObjectSet {
    let mut out = ObjectSet::empty(p.universe);
    for block in &p.blocks {
        if block.iter().any(|&o| x.contains(o)) {
            for &o in block {
                out.insert(o);
            }
        }
    }
    out
}

pub fn regions(p: &Partition, x: &ObjectSet) -> RegionTriple {
    let lower = lower_approx(p, x);
    let upper = upper_approx(p, x);
    RegionTriple {
        negative: upper.complement(),
        boundary: upper.difference(&lower),
        positive: lower,
    }
}

/// `POS_R(D)`: objects whose `R`-block carries a single decision.
pub fn positive_region(table: &DecisionTable, attrs: &AttrSet) -> Result<ObjectSet> {
    let p = Partition::of(table, attrs)?;
    Ok(ObjectSet::from_indices(
        table.n_objects(),
        p.pure_blocks(table).flatten().copied(),
    ))
}
