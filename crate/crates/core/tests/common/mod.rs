#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use rand::Rng;
use rough_reduct::DecisionTable;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Shape limits for [`random_table`].
#[derive(Clone, Copy)]
pub struct Shape {
    pub max_objects: usize,
    pub max_attrs: usize,
    pub max_values: u32,
    pub max_classes: u32,
}

/// Uniform random codes. With `consistent`, the decision is a random
/// function of the whole row, so equal rows share a decision.
pub fn random_table<R: Rng>(rng: &mut R, shape: Shape, consistent: bool) -> DecisionTable {
    let n = rng.gen_range(1..=shape.max_objects);
    let m = rng.gen_range(1..=shape.max_attrs);
    let cards: Vec<u32> = (0..m)
        .map(|_| rng.gen_range(1..=shape.max_values))
        .collect();
    let classes = rng.gen_range(1..=shape.max_classes);
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|_| cards.iter().map(|&k| rng.gen_range(0..k)).collect())
        .collect();
    let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
    let decisions: Vec<u32> = rows
        .iter()
        .map(|r| {
            let fresh = rng.gen_range(0..classes);
            if consistent {
                *seen.entry(r.clone()).or_insert(fresh)
            } else {
                fresh
            }
        })
        .collect();
    let names: Vec<String> = (0..m).map(|a| format!("c{a}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    DecisionTable::from_codes(&names, "d", &rows, &decisions).unwrap()
}

/// Every subset of `0..m` as a bitmask-ordered list.
pub fn subsets(m: usize) -> impl Iterator<Item = rough_reduct::AttrSet> {
    (0u32..1 << m).map(move |mask| (0..m).filter(|a| mask >> a & 1 == 1).collect())
}
