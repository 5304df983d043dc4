use proptest::prelude::*;
use rough_reduct::metrics::{self, SpsParams};
use rough_reduct::oracle;
use rough_reduct::reducers::{self, ReduceOptions};
use rough_reduct::{check_consistency, Algorithm, AttrSet, DecisionTable, Partition};

/// Rows over up to 6 attributes with up to 4 values; `consistent` derives
/// the decision from the row itself.
fn table(consistent: bool) -> impl Strategy<Value = DecisionTable> {
    (1usize..=6, 1usize..=30).prop_flat_map(move |(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(0u32..4, m), n),
            prop::collection::vec(0u32..3, n),
            0u32..1000,
        )
            .prop_map(move |(rows, noise, salt)| {
                let decisions: Vec<u32> = if consistent {
                    rows.iter()
                        .map(|r| {
                            r.iter()
                                .fold(salt, |h, v| h.wrapping_mul(31).wrapping_add(*v))
                                % 3
                        })
                        .collect()
                } else {
                    noise
                };
                let names: Vec<String> = (0..m).map(|a| format!("c{a}")).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                DecisionTable::from_codes(&names, "d", &rows, &decisions).unwrap()
            })
    })
}

fn subset_of(m: usize, mask: u32) -> AttrSet {
    (0..m).filter(|a| mask >> a & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn naive_partition_agrees(t in table(false), mask in 0u32..64) {
        let r = subset_of(t.n_conditions(), mask);
        prop_assert_eq!(Partition::of(&t, &r).unwrap(), oracle::naive_partition(&t, &r).unwrap());
        prop_assert_eq!(
            rough_reduct::positive_region(&t, &r).unwrap(),
            oracle::naive_positive_region(&t, &r).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn measure_identities(t in table(false), mask in 0u32..64, alpha in 0.0f64..=1.0) {
        let r = subset_of(t.n_conditions(), mask);
        let d = Partition::by_decision(&t);
        let h_d = metrics::entropy(&d);
        let h = metrics::conditional_entropy(&t, &r).unwrap();
        let mi = metrics::mutual_information(&t, &r).unwrap();
        prop_assert!((mi + h - h_d).abs() < 1e-12);
        prop_assert!(h >= -1e-12 && h <= h_d + 1e-12);

        let k = metrics::dependency(&t, &r).unwrap();
        prop_assert!((0.0..=1.0).contains(&k));

        let params = SpsParams::with_alpha(alpha).unwrap();
        for a in (0..t.n_conditions()).filter(|a| !r.contains(*a)) {
            let ra = r.with(a);
            let dcos = metrics::spatial_similarity(&Partition::of(&t, &ra).unwrap(), &d).unwrap()
                - metrics::spatial_similarity(&Partition::of(&t, &r).unwrap(), &d).unwrap();
            let sig = metrics::significance(&t, a, &r).unwrap();
            let expected = params.alpha() * dcos + params.beta() * sig;
            prop_assert!((metrics::sig_sps(&t, a, &r, params).unwrap() - expected).abs() < 1e-12);
            prop_assert!(sig >= 0.0);
            prop_assert!(metrics::sgf(&t, a, &r).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn greedy_reducts_are_complete(t in table(true), alpha in 0.0f64..=1.0) {
        prop_assume!(check_consistency(&t).is_consistent());
        let minimal = oracle::brute_force_reducts(&t, 12).unwrap();
        let core = rough_reduct::discern::core_of_table(&t);
        let universe = rough_reduct::ObjectSet::full(t.n_objects());
        for algo in Algorithm::GREEDY {
            let options = ReduceOptions {
                params: SpsParams::with_alpha(alpha).unwrap(),
                ..ReduceOptions::default()
            };
            let r = reducers::reduce_greedy(&t, algo, &options).unwrap();
            let set = r.attr_set();
            prop_assert!(core.is_subset(&set));
            prop_assert!(minimal.iter().any(|m| m.is_subset(&set)));
            prop_assert_eq!(oracle::naive_positive_region(&t, &set).unwrap(), universe.clone());
            let picks: Vec<usize> = r.trace.iter().map(|s| s.chosen).collect();
            prop_assert_eq!(&picks, &r.reduct);

            let pruned = reducers::reduce_greedy(&t, algo, &ReduceOptions { prune: true, ..options }).unwrap();
            prop_assert!(minimal.contains(&pruned.attr_set()), "{} pruned to non-minimal {:?}", algo, pruned.reduct);
        }
    }

    #[test]
    fn determinism(t in table(false)) {
        for algo in Algorithm::GREEDY {
            let options = ReduceOptions {
                policy: rough_reduct::InconsistencyPolicy::MatchFullSet,
                ..ReduceOptions::default()
            };
            let a = reducers::reduce_greedy(&t, algo, &options).unwrap();
            let b = reducers::reduce_greedy(&t, algo, &options).unwrap();
            prop_assert_eq!(a.reduct, b.reduct);
            prop_assert_eq!(a.trace, b.trace);
        }
    }
}
