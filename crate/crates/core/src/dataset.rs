//! Categorical decision tables: CSV ingestion, validation and dictionary coding.

use std::collections::HashMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::AttrSet;

/// Names a CSV column either by header text or by zero-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl ColumnRef {
    fn resolve(&self, header: &[String]) -> Option<usize> {
        match self {
            ColumnRef::Name(name) => header.iter().position(|h| h == name),
            ColumnRef::Index(i) => (*i < header.len()).then_some(*i),
        }
    }

    fn describe(&self) -> String {
        match self {
            ColumnRef::Name(name) => name.clone(),
            ColumnRef::Index(i) => format!("#{i}"),
        }
    }
}

/// All-digit strings are positions, anything else is a header name.
impl FromStr for ColumnRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.to_string()),
        })
    }
}

impl From<&str> for ColumnRef {
    fn from(s: &str) -> Self {
        ColumnRef::Name(s.to_string())
    }
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Decision column; the last column when unset.
    pub decision: Option<ColumnRef>,
    /// Column holding row labels. It is excluded from the condition attributes.
    pub id_column: Option<ColumnRef>,
}

impl LoadOptions {
    pub fn decision(column: impl Into<ColumnRef>) -> Self {
        LoadOptions {
            decision: Some(column.into()),
            id_column: None,
        }
    }

    pub fn with_id_column(mut self, column: impl Into<ColumnRef>) -> Self {
        self.id_column = Some(column.into());
        self
    }
}

/// A complete decision information system with dictionary-coded values.
///
/// Cells are stored column-major: `columns[a][x]` is the code of object `x`
/// on condition attribute `a`. Codes of each attribute run over `0..k` in
/// order of first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    object_ids: Vec<String>,
    condition_names: Vec<String>,
    decision_name: String,
    columns: Vec<Vec<u32>>,
    decisions: Vec<u32>,
    condition_values: Vec<Vec<String>>,
    decision_values: Vec<String>,
}

/// Outcome of [`check_consistency`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    /// Object pairs `(i, j)`, `i < j`, that agree on every condition
    /// attribute but carry different decisions.
    Conflicts(Vec<(usize, usize)>),
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

struct Dictionary {
    codes: HashMap<String, u32>,
    values: Vec<String>,
}

impl Dictionary {
    fn new() -> Self {
        Dictionary {
            codes: HashMap::new(),
            values: Vec::new(),
        }
    }

    fn encode(&mut self, value: &str) -> u32 {
        if let Some(&code) = self.codes.get(value) {
            return code;
        }
        let code = self.values.len() as u32;
        self.codes.insert(value.to_string(), code);
        self.values.push(value.to_string());
        code
    }
}

pub fn load_csv(path: impl AsRef<Path>, options: &LoadOptions) -> Result<DecisionTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, options)
}

pub fn read_csv<R: Read>(reader: R, options: &LoadOptions) -> Result<DecisionTable> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header: Vec<String> = csv.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for record in csv.records() {
        let record = record?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    DecisionTable::from_records(header, rows, options)
}

impl DecisionTable {
    /// Validates and encodes raw string records. Row order is preserved.
    pub fn from_records(
        header: Vec<String>,
        rows: Vec<Vec<String>>,
        options: &LoadOptions,
    ) -> Result<Self> {
        for (i, name) in header.iter().enumerate() {
            if header[..i].contains(name) {
                return Err(Error::DuplicateColumnName(name.clone()));
            }
        }
        let decision_col = match &options.decision {
            None if header.is_empty() => {
                return Err(Error::DecisionColumnNotFound("<last>".into()))
            }
            None => header.len() - 1,
            Some(col) => col
                .resolve(&header)
                .ok_or_else(|| Error::DecisionColumnNotFound(col.describe()))?,
        };
        let id_col = match &options.id_column {
            None => None,
            Some(col) => {
                let idx = col
                    .resolve(&header)
                    .ok_or_else(|| Error::IdColumnNotFound(col.describe()))?;
                if idx == decision_col {
                    return Err(Error::IdColumnNotFound(format!(
                        "{} (same as decision column)",
                        col.describe()
                    )));
                }
                Some(idx)
            }
        };
        let condition_cols: Vec<usize> = (0..header.len())
            .filter(|&c| c != decision_col && Some(c) != id_col)
            .collect();
        if condition_cols.is_empty() {
            return Err(Error::NoConditionAttributes);
        }
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }

        let mut dictionaries: Vec<Dictionary> =
            condition_cols.iter().map(|_| Dictionary::new()).collect();
        let mut decision_dict = Dictionary::new();
        let mut columns = vec![Vec::with_capacity(rows.len()); condition_cols.len()];
        let mut decisions = Vec::with_capacity(rows.len());
        let mut object_ids = Vec::with_capacity(rows.len());

        for (r, row) in rows.iter().enumerate() {
            if row.len() != header.len() {
                return Err(Error::RaggedRow {
                    row: r + 1,
                    expected: header.len(),
                    found: row.len(),
                });
            }
            if let Some(c) = row.iter().position(|cell| cell.trim().is_empty()) {
                return Err(Error::MissingValue {
                    row: r + 1,
                    column: header[c].clone(),
                });
            }
            for (k, &c) in condition_cols.iter().enumerate() {
                columns[k].push(dictionaries[k].encode(&row[c]));
            }
            decisions.push(decision_dict.encode(&row[decision_col]));
            object_ids.push(match id_col {
                Some(c) => row[c].clone(),
                None => (r + 1).to_string(),
            });
        }

        Ok(DecisionTable {
            object_ids,
            condition_names: condition_cols.iter().map(|&c| header[c].clone()).collect(),
            decision_name: header[decision_col].clone(),
            columns,
            decisions,
            condition_values: dictionaries.into_iter().map(|d| d.values).collect(),
            decision_values: decision_dict.values,
        })
    }

    /// Builds a table from row-major integer cells. Values are re-coded in
    /// first-occurrence order, so arbitrary labels are accepted.
    pub fn from_codes(
        condition_names: &[&str],
        decision_name: &str,
        rows: &[Vec<u32>],
        decisions: &[u32],
    ) -> Result<Self> {
        if rows.len() != decisions.len() {
            return Err(Error::InvalidParams(format!(
                "{} rows but {} decisions",
                rows.len(),
                decisions.len()
            )));
        }
        let mut header: Vec<String> = condition_names.iter().map(|s| s.to_string()).collect();
        header.push(decision_name.to_string());
        let records = rows
            .iter()
            .zip(decisions)
            .map(|(row, d)| {
                row.iter()
                    .chain(std::iter::once(d))
                    .map(u32::to_string)
                    .collect()
            })
            .collect();
        Self::from_records(header, records, &LoadOptions::default())
    }

    pub fn n_objects(&self) -> usize {
        self.decisions.len()
    }

    pub fn n_conditions(&self) -> usize {
        self.columns.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.object_ids
    }

    pub fn condition_names(&self) -> &[String] {
        &self.condition_names
    }

    pub fn decision_name(&self) -> &str {
        &self.decision_name
    }

    /// Codes of every object on condition attribute `attr`.
    pub fn column(&self, attr: usize) -> &[u32] {
        &self.columns[attr]
    }

    pub fn value(&self, object: usize, attr: usize) -> u32 {
        self.columns[attr][object]
    }

    pub fn decisions(&self) -> &[u32] {
        &self.decisions
    }

    /// Number of distinct values of a condition attribute.
    pub fn cardinality(&self, attr: usize) -> usize {
        self.condition_values[attr].len()
    }

    pub fn decision_cardinality(&self) -> usize {
        self.decision_values.len()
    }

    pub fn decode(&self, attr: usize, code: u32) -> &str {
        &self.condition_values[attr][code as usize]
    }

    pub fn decode_decision(&self, code: u32) -> &str {
        &self.decision_values[code as usize]
    }

    pub fn attr_index(&self, name: &str) -> Result<usize> {
        self.condition_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    /// Resolves names to an attribute subset.
    pub fn attrs<S: AsRef<str>>(&self, names: &[S]) -> Result<AttrSet> {
        names.iter().map(|n| self.attr_index(n.as_ref())).collect()
    }

    pub fn all_conditions(&self) -> AttrSet {
        AttrSet::full(self.n_conditions())
    }

    pub fn attr_names(&self, attrs: impl IntoIterator<Item = usize>) -> Vec<&str> {
        attrs
            .into_iter()
            .map(|a| self.condition_names[a].as_str())
            .collect()
    }

    /// Fails with `UnknownAttribute` if `attrs` names a column past `|C|`.
    pub fn check_attrs(&self, attrs: &AttrSet) -> Result<()> {
        match attrs.max() {
            Some(a) if a >= self.n_conditions() => Err(Error::UnknownAttribute(format!("#{a}"))),
            _ => Ok(()),
        }
    }

    /// Restores the original string row for object `x` (conditions then decision).
    pub fn decode_row(&self, x: usize) -> Vec<&str> {
        (0..self.n_conditions())
            .map(|a| self.decode(a, self.value(x, a)))
            .chain(std::iter::once(self.decode_decision(self.decisions[x])))
            .collect()
    }
}

/// Lists every pair of objects that agree on all condition attributes but
/// differ in decision.
pub fn check_consistency(table: &DecisionTable) -> Consistency {
    let mut groups: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for x in 0..table.n_objects() {
        let key: Vec<u32> = (0..table.n_conditions())
            .map(|a| table.value(x, a))
            .collect();
        groups.entry(key).or_default().push(x);
    }
    let mut conflicts = Vec::new();
    for members in groups.values() {
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if table.decisions[x] != table.decisions[y] {
                    conflicts.push((x.min(y), x.max(y)));
                }
            }
        }
    }
    if conflicts.is_empty() {
        Consistency::Consistent
    } else {
        conflicts.sort_unstable();
        Consistency::Conflicts(conflicts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, options: &LoadOptions) -> Result<DecisionTable> {
        read_csv(text.as_bytes(), options)
    }

    const T1: &str = "a,b,d\n0,0,0\n0,1,0\n1,0,1\n1,1,1\n";

    #[test]
    fn loads_small_table() {
        let t = parse(T1, &LoadOptions::decision("d")).unwrap();
        assert_eq!(t.n_objects(), 4);
        assert_eq!(t.n_conditions(), 2);
        assert_eq!(t.condition_names(), ["a", "b"]);
        assert_eq!(t.decision_name(), "d");
        assert_eq!(t.column(1), [0, 1, 0, 1]);
        assert_eq!(t.decisions(), [0, 0, 1, 1]);
    }

    #[test]
    fn decision_defaults_to_last_column() {
        let t = parse(T1, &LoadOptions::default()).unwrap();
        assert_eq!(t.decision_name(), "d");
        let t = parse(T1, &LoadOptions::decision(ColumnRef::Index(0))).unwrap();
        assert_eq!(t.decision_name(), "a");
        assert_eq!(t.condition_names(), ["b", "d"]);
    }

    #[test]
    fn codes_follow_first_occurrence() {
        let t = parse("c,d\nz,y\na,n\nz,n\nq,y\n", &LoadOptions::default()).unwrap();
        assert_eq!(t.column(0), [0, 1, 0, 2]);
        assert_eq!(t.decode(0, 2), "q");
        assert_eq!(t.decisions(), [0, 1, 1, 0]);
        assert_eq!(t.decode_decision(1), "n");
    }

    #[test]
    fn blank_cell_is_missing_value() {
        let err = parse("a,b,d\n0,0,0\n0,,1\n", &LoadOptions::default()).unwrap_err();
        match err {
            Error::MissingValue { row, column } => {
                assert_eq!(row, 2);
                assert_eq!(column, "b");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            parse("a,a,d\n0,0,0\n", &LoadOptions::default()),
            Err(Error::DuplicateColumnName(n)) if n == "a"
        ));
        assert!(matches!(
            parse("a,b,d\n", &LoadOptions::default()),
            Err(Error::EmptyTable)
        ));
        assert!(matches!(
            parse(T1, &LoadOptions::decision("class")),
            Err(Error::DecisionColumnNotFound(_))
        ));
        assert!(matches!(
            parse(T1, &LoadOptions::decision(ColumnRef::Index(7))),
            Err(Error::DecisionColumnNotFound(_))
        ));
        assert!(matches!(
            parse("d\n0\n", &LoadOptions::default()),
            Err(Error::NoConditionAttributes)
        ));
        assert!(matches!(
            parse("a,b,d\n0,0\n", &LoadOptions::default()),
            Err(Error::RaggedRow {
                row: 1,
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn id_column_is_label_only() {
        let opts = LoadOptions::decision("d").with_id_column("name");
        let t = parse("name,a,d\nant,0,0\nbee,1,1\n", &opts).unwrap();
        assert_eq!(t.condition_names(), ["a"]);
        assert_eq!(t.object_ids(), ["ant", "bee"]);
        let t = parse("name,a,d\nant,0,0\nbee,1,1\n", &LoadOptions::decision("d")).unwrap();
        assert_eq!(t.condition_names(), ["name", "a"]);
        assert_eq!(t.object_ids(), ["1", "2"]);
        assert!(matches!(
            parse(T1, &LoadOptions::default().with_id_column("zz")),
            Err(Error::IdColumnNotFound(_))
        ));
    }

    #[test]
    fn consistency_verdicts() {
        let same = parse("a,b,d\n0,0,1\n0,0,1\n1,0,0\n", &LoadOptions::default()).unwrap();
        assert_eq!(check_consistency(&same), Consistency::Consistent);
        let clash = parse("a,b,d\n0,0,0\n0,0,1\n1,0,0\n", &LoadOptions::default()).unwrap();
        assert_eq!(
            check_consistency(&clash),
            Consistency::Conflicts(vec![(0, 1)])
        );
    }

    #[test]
    fn decode_round_trip() {
        let text = "colour,size,act,inflated\nYELLOW,SMALL,DIP,T\nPURPLE,LARGE,STRETCH,F\nYELLOW,LARGE,DIP,F\n";
        let t = parse(text, &LoadOptions::default()).unwrap();
        let rows: Vec<Vec<&str>> = (0..t.n_objects()).map(|x| t.decode_row(x)).collect();
        let original: Vec<Vec<&str>> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').collect())
            .collect();
        assert_eq!(rows, original);
    }

    #[test]
    fn from_codes_recodes_sparse_labels() {
        let t = DecisionTable::from_codes(&["a"], "d", &[vec![7], vec![3], vec![7]], &[5, 5, 9])
            .unwrap();
        assert_eq!(t.column(0), [0, 1, 0]);
        assert_eq!(t.cardinality(0), 2);
        assert_eq!(t.decode(0, 1), "3");
    }
}
