//! Rough-set attribute reduction.
//!
//! Decision tables are loaded from CSV into dictionary-coded columns
//! ([`dataset`]), split into indiscernibility partitions ([`partition`]) and
//! reduced by one of four algorithms ([`reducers`]):
//!
//! * `discern`: every minimal reduct, from the discernibility matrix;
//! * `hu`: greedy on positive-region significance;
//! * `mibark`: greedy on conditional-entropy gain;
//! * `srs`: greedy on SPS, a blend of dependency degree and the cosine
//!   between the block-size vectors of the reduct and decision partitions.
//!
//! ```
//! use rough_reduct::{DecisionTable, reduce_srs, SpsParams};
//!
//! let t = DecisionTable::from_codes(
//!     &["a", "b"],
//!     "d",
//!     &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
//!     &[0, 0, 1, 1],
//! )
//! .unwrap();
//! let r = reduce_srs(&t, SpsParams::default()).unwrap();
//! assert_eq!(r.names(&t), ["a"]);
//! assert_eq!(r.stats.spatial_similarity, 1.0);
//! ```

pub mod bench;
pub mod dataset;
pub mod discern;
pub mod error;
pub mod metrics;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod partition;
pub mod reducers;
pub mod rules;
pub mod sets;

pub use dataset::{
    check_consistency, load_csv, read_csv, ColumnRef, Consistency, DecisionTable, LoadOptions,
};
pub use discern::{all_reducts, core, DiscernMatrix, DEFAULT_REDUCT_LIMIT};
pub use error::{Error, Result};
pub use metrics::SpsParams;
pub use partition::{positive_region, Partition, RegionTriple};
pub use reducers::{
    reduce_discern, reduce_greedy, reduce_hu, reduce_mibark, reduce_srs, Algorithm, Branch,
    InconsistencyPolicy, ReduceOptions, ReductResult,
};
pub use rules::{extract_rules, rule_count, Rule};
pub use sets::{AttrSet, ObjectSet};
