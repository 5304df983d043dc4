//! Decision rules read off a reduct: one exact rule per block of `U/IND(R)`.

use std::fmt::Write as _;

use crate::dataset::DecisionTable;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sets::AttrSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    /// `(attribute, value code)` pairs in ascending attribute order.
    pub antecedent: Vec<(usize, u32)>,
    pub consequent: u32,
    pub support: usize,
}

impl Rule {
    /// `IF a1=v1 AND a2=v2 THEN d=w  [support=n]`, with decoded values.
    pub fn render(&self, table: &DecisionTable) -> String {
        let condition = if self.antecedent.is_empty() {
            "TRUE".to_string()
        } else {
            self.antecedent
                .iter()
                .map(|&(a, v)| format!("{}={}", table.condition_names()[a], table.decode(a, v)))
                .collect::<Vec<_>>()
                .join(" AND ")
        };
        format!(
            "IF {condition} THEN {}={}  [support={}]",
            table.decision_name(),
            table.decode_decision(self.consequent),
            self.support
        )
    }
}

/// One rule per block of the reduct's partition, in canonical block order.
///
/// Fails with `IncompleteReduct` if some block mixes decisions.
pub fn extract_rules(table: &DecisionTable, reduct: &AttrSet) -> Result<Vec<Rule>> {
    let partition = Partition::of(table, reduct)?;
    let d = table.decisions();
    partition
        .blocks()
        .iter()
        .map(|block| {
            let first = block[0];
            if block.iter().any(|&x| d[x] != d[first]) {
                return Err(Error::IncompleteReduct {
                    first_object: first,
                });
            }
            Ok(Rule {
                antecedent: reduct.iter().map(|a| (a, table.value(first, a))).collect(),
                consequent: d[first],
                support: block.len(),
            })
        })
        .collect()
}

/// `num(R, D) = |U/IND(R)|` for a complete reduct.
pub fn rule_count(table: &DecisionTable, reduct: &AttrSet) -> Result<usize> {
    let partition = Partition::of(table, reduct)?;
    if let Some(block) = partition.blocks().iter().find(|b| {
        let d = table.decisions();
        b.iter().any(|&x| d[x] != d[b[0]])
    }) {
        return Err(Error::IncompleteReduct {
            first_object: block[0],
        });
    }
    Ok(partition.len())
}

pub fn render_rules(table: &DecisionTable, rules: &[Rule]) -> String {
    let mut out = String::new();
    for rule in rules {
        let _ = writeln!(out, "{}", rule.render(table));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> DecisionTable {
        DecisionTable::from_codes(
            &["a", "b"],
            "d",
            &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            &[0, 0, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn t1_rules() {
        let t = t1();
        let rules = extract_rules(&t, &AttrSet::singleton(0)).unwrap();
        assert_eq!(
            rules,
            vec![
                Rule {
                    antecedent: vec![(0, 0)],
                    consequent: 0,
                    support: 2
                },
                Rule {
                    antecedent: vec![(0, 1)],
                    consequent: 1,
                    support: 2
                },
            ]
        );
        assert_eq!(
            render_rules(&t, &rules),
            "IF a=0 THEN d=0  [support=2]\nIF a=1 THEN d=1  [support=2]\n"
        );
        assert_eq!(rule_count(&t, &AttrSet::singleton(0)).unwrap(), 2);
        assert_eq!(rule_count(&t, &t.all_conditions()).unwrap(), 4);
    }

    #[test]
    fn empty_reduct_with_constant_decision() {
        let t = DecisionTable::from_codes(&["a"], "d", &[vec![0], vec![1]], &[3, 3]).unwrap();
        let rules = extract_rules(&t, &AttrSet::new()).unwrap();
        assert_eq!(rules.len(), 1);
        assert!(rules[0].antecedent.is_empty());
        assert_eq!(rules[0].render(&t), "IF TRUE THEN d=3  [support=2]");
        assert_eq!(rule_count(&t, &AttrSet::new()).unwrap(), 1);
    }

    #[test]
    fn incomplete_reduct_is_rejected() {
        let t = t1();
        assert!(matches!(
            extract_rules(&t, &AttrSet::singleton(1)),
            Err(Error::IncompleteReduct { first_object: 0 })
        ));
        assert!(rule_count(&t, &AttrSet::new()).is_err());
    }
}
