//! Reference dimension tables shipped as CSV, with a side-car file of cells
//! where the derived value is known to differ from the published one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomp::{DecompositionReport, Histogram};
use crate::genus2::AutGroupId;

const TABLES: [(AutGroupId, &str); 5] = [
    (AutGroupId::D4_8, include_str!("../../fixtures/table1_D4_8.csv")),
    (AutGroupId::C10, include_str!("../../fixtures/table2_C10.csv")),
    (AutGroupId::D6_12, include_str!("../../fixtures/table3_D6_12.csv")),
    (AutGroupId::C3sdD4_24, include_str!("../../fixtures/table4_C3sdD4_24.csv")),
    (AutGroupId::GL2F3_48, include_str!("../../fixtures/table5_GL2F3_48.csv")),
];
const ERRATA: &str = include_str!("../../fixtures/errata.csv");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("FixtureCorrupt: {0}")]
    Corrupt(String),
    #[error("FixtureCorrupt: {0}")]
    Csv(#[from] csv::Error),
}

fn corrupt(msg: impl Into<String>) -> FixtureError {
    FixtureError::Corrupt(msg.into())
}

/// Parses a column header of the form `n:<int>`.
fn parse_column(header: &str) -> Result<i64, FixtureError> {
    header.strip_prefix("n:").and_then(|n| n.parse().ok()).ok_or_else(|| corrupt(format!("bad column {header:?}")))
}

/// A published erratum covering one or more adjacent cells of a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub group: AutGroupId,
    pub row: usize,
    pub cells: Vec<i64>,
    pub paper: Vec<usize>,
    pub derived: Vec<usize>,
    pub note: String,
}

impl Erratum {
    pub fn cell_label(&self) -> String {
        self.cells.iter().map(|n| format!("n:{n}")).collect::<Vec<_>>().join("/")
    }
}

#[derive(Deserialize)]
struct ErratumRecord {
    group: String,
    row: usize,
    cell: String,
    paper_value: String,
    derived_value: String,
    note: String,
}

fn split_values(field: &str) -> Result<Vec<usize>, FixtureError> {
    field.split('/').map(|v| v.trim().parse().map_err(|_| corrupt(format!("bad value {v:?}")))).collect()
}

pub fn parse_errata(text: &str) -> Result<Vec<Erratum>, FixtureError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut errata = Vec::new();
    for record in reader.deserialize() {
        let r: ErratumRecord = record?;
        let cells = r.cell.split('/').map(parse_column).collect::<Result<Vec<_>, _>>()?;
        let paper = split_values(&r.paper_value)?;
        let derived = split_values(&r.derived_value)?;
        if paper.len() != cells.len() || derived.len() != cells.len() {
            return Err(corrupt(format!("erratum for {} row {} has mismatched cell counts", r.group, r.row)));
        }
        let group = r.group.parse().map_err(|_| corrupt(format!("unknown group {:?}", r.group)))?;
        errata.push(Erratum { group, row: r.row, cells, paper, derived, note: r.note });
    }
    Ok(errata)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CellAnnotation {
    Confirmed,
    SuspectedErratum { derived: usize },
}

/// One published table: for each row `|H|`, the expected `𝒟ₙ` per column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureTable {
    pub group: AutGroupId,
    pub columns: Vec<i64>,
    pub rows: BTreeMap<usize, Histogram>,
    pub errata: Vec<Erratum>,
}

impl FixtureTable {
    pub fn parse(group: AutGroupId, text: &str, errata: &[Erratum]) -> Result<Self, FixtureError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        if headers.get(0) != Some("H") {
            return Err(corrupt("first column must be H"));
        }
        let columns = headers.iter().skip(1).map(parse_column).collect::<Result<Vec<_>, _>>()?;
        let mut rows = BTreeMap::new();
        for record in reader.records() {
            let record = record?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| corrupt(format!("bad cell {s:?}")));
            let order = parse(&record[0])?;
            let cells = columns
                .iter()
                .zip(record.iter().skip(1))
                .map(|(&n, v)| Ok((n, parse(v)?)))
                .collect::<Result<Histogram, FixtureError>>()?;
            if rows.insert(order, cells).is_some() {
                return Err(corrupt(format!("duplicate row {order}")));
            }
        }
        let errata = errata.iter().filter(|e| e.group == group).cloned().collect();
        Ok(FixtureTable { group, columns, rows, errata })
    }

    pub fn cell(&self, row: usize, n: i64) -> usize {
        self.rows.get(&row).and_then(|r| r.get(&n)).copied().unwrap_or(0)
    }

    pub fn annotation(&self, row: usize, n: i64) -> CellAnnotation {
        for e in self.errata.iter().filter(|e| e.row == row) {
            if let Some(i) = e.cells.iter().position(|&c| c == n) {
                return CellAnnotation::SuspectedErratum { derived: e.derived[i] };
            }
        }
        CellAnnotation::Confirmed
    }
}

/// The shipped table for `group`, if one was published.
pub fn fixture_for(group: AutGroupId) -> Result<Option<FixtureTable>, FixtureError> {
    let errata = parse_errata(ERRATA)?;
    TABLES.iter().find(|(id, _)| *id == group).map(|(id, text)| FixtureTable::parse(*id, text, &errata)).transpose()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Match,
    Mismatch,
    KnownErratum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub row: usize,
    /// `n:<k>`, or several joined by `/` for a multi-cell erratum.
    pub cell: String,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    pub status: CellStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiffStatus {
    Clean,
    CleanWithErrata,
    Mismatch,
}

impl DiffStatus {
    /// 0 when every cell matches or is a known erratum, 1 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            DiffStatus::Clean | DiffStatus::CleanWithErrata => 0,
            DiffStatus::Mismatch => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureDiff {
    pub group: AutGroupId,
    pub cells: Vec<CellDiff>,
    /// Rows present in only one of the report set and the fixture.
    pub missing_rows: Vec<usize>,
    pub extra_rows: Vec<usize>,
}

impl FixtureDiff {
    fn count(&self, status: CellStatus) -> usize {
        self.cells.iter().filter(|c| c.status == status).count()
    }

    pub fn matches(&self) -> usize {
        self.count(CellStatus::Match)
    }

    pub fn mismatches(&self) -> usize {
        self.count(CellStatus::Mismatch)
    }

    pub fn known_errata(&self) -> usize {
        self.count(CellStatus::KnownErratum)
    }

    pub fn status(&self) -> DiffStatus {
        if self.mismatches() > 0 || !self.missing_rows.is_empty() || !self.extra_rows.is_empty() {
            DiffStatus::Mismatch
        } else if self.known_errata() > 0 {
            DiffStatus::CleanWithErrata
        } else {
            DiffStatus::Clean
        }
    }

    /// Sum of expected values over the visited cells of `row`.
    pub fn expected_total(&self, row: usize) -> usize {
        self.cells.iter().filter(|c| c.row == row).flat_map(|c| &c.expected).sum()
    }

    pub fn computed_total(&self, row: usize) -> usize {
        self.cells.iter().filter(|c| c.row == row).flat_map(|c| &c.computed).sum()
    }
}

/// Compares one histogram per row against the fixture. Every fixture cell is
/// visited once; cells the computation fills outside the fixture's columns
/// are visited too, with an expected value of 0.
pub fn diff_against_fixture(reports: &[DecompositionReport], fixture: &FixtureTable) -> FixtureDiff {
    let computed: BTreeMap<usize, &Histogram> = reports.iter().map(|r| (r.h.order, &r.histogram)).collect();
    let mut diff = FixtureDiff {
        group: fixture.group,
        cells: Vec::new(),
        missing_rows: fixture.rows.keys().filter(|k| !computed.contains_key(k)).copied().collect(),
        extra_rows: computed.keys().filter(|k| !fixture.rows.contains_key(k)).copied().collect(),
    };
    for (&row, expected) in &fixture.rows {
        let Some(found) = computed.get(&row) else { continue };
        let value = |h: &Histogram, n: i64| h.get(&n).copied().unwrap_or(0);
        let mut cells: BTreeSet<i64> = fixture.columns.iter().copied().collect();
        cells.extend(found.iter().filter(|(_, &v)| v > 0).map(|(&n, _)| n));

        for e in fixture.errata.iter().filter(|e| e.row == row) {
            let paper: Vec<usize> = e.cells.iter().map(|&n| value(expected, n)).collect();
            let derived: Vec<usize> = e.cells.iter().map(|&n| value(found, n)).collect();
            // An erratum only excuses the exact values it records.
            if paper == e.paper && derived == e.derived {
                e.cells.iter().for_each(|n| {
                    cells.remove(n);
                });
                diff.cells.push(CellDiff {
                    row,
                    cell: e.cell_label(),
                    expected: paper,
                    computed: derived,
                    status: CellStatus::KnownErratum,
                });
            }
        }
        for n in cells {
            let (e, c) = (value(expected, n), value(found, n));
            diff.cells.push(CellDiff {
                row,
                cell: format!("n:{n}"),
                expected: vec![e],
                computed: vec![c],
                status: if e == c { CellStatus::Match } else { CellStatus::Mismatch },
            });
        }
    }
    diff
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_parses_and_rows_sum_to_the_census() {
        let totals = [
            (AutGroupId::D4_8, 5),
            (AutGroupId::C10, 3),
            (AutGroupId::D6_12, 9),
            (AutGroupId::C3sdD4_24, 21),
            (AutGroupId::GL2F3_48, 42),
        ];
        for (id, total) in totals {
            let table = fixture_for(id).unwrap().unwrap();
            assert!(!table.rows.is_empty());
            for (row, cells) in &table.rows {
                assert_eq!(cells.len(), table.columns.len());
                assert_eq!(cells.values().sum::<usize>(), total, "{id} row {row}");
            }
        }
        assert!(fixture_for(AutGroupId::C2).unwrap().is_none());
    }

    #[test]
    fn the_erratum_is_annotated() {
        let table = fixture_for(AutGroupId::C10).unwrap().unwrap();
        assert_eq!(table.errata.len(), 1);
        assert_eq!(table.errata[0].cell_label(), "n:2/n:3");
        assert_eq!(table.cell(10, 2), 1);
        assert_eq!(table.annotation(10, 2), CellAnnotation::SuspectedErratum { derived: 0 });
        assert_eq!(table.annotation(10, 6), CellAnnotation::Confirmed);
        assert_eq!(table.annotation(5, 2), CellAnnotation::Confirmed);
    }

    fn computed(id: AutGroupId) -> Vec<DecompositionReport> {
        let ctx = crate::genus2::CurveContext::from_catalog(id).unwrap();
        let ledger = crate::picard::build_ledger(&ctx).unwrap();
        crate::decomp::decompose_all_orders(&ctx, &ledger).unwrap()
    }

    #[test]
    fn computed_tables_against_fixtures() {
        for id in [AutGroupId::D4_8, AutGroupId::D6_12, AutGroupId::GL2F3_48] {
            let table = fixture_for(id).unwrap().unwrap();
            let diff = diff_against_fixture(&computed(id), &table);
            assert_eq!(
                diff.status(),
                DiffStatus::Clean,
                "{id}: {:?}",
                diff.cells.iter().filter(|c| c.status != CellStatus::Match).collect::<Vec<_>>()
            );
            assert_eq!(diff.cells.len(), table.rows.len() * table.columns.len(), "{id}");
        }
        // Row 12 of the C3⋊D4 table places the order-6 components one
        // dimension too high; the degree gap of 6 forces dimension 4.
        let table = fixture_for(AutGroupId::C3sdD4_24).unwrap().unwrap();
        let diff = diff_against_fixture(&computed(AutGroupId::C3sdD4_24), &table);
        assert_eq!(diff.status(), DiffStatus::CleanWithErrata);
        assert_eq!(diff.known_errata(), 1);
        assert_eq!(diff.mismatches(), 0);

        let table = fixture_for(AutGroupId::C10).unwrap().unwrap();
        let diff = diff_against_fixture(&computed(AutGroupId::C10), &table);
        assert_eq!(diff.status(), DiffStatus::CleanWithErrata);
        assert_eq!(diff.status().exit_code(), 0);
        assert_eq!(diff.known_errata(), 1);
        assert_eq!(diff.mismatches(), 0);
        let erratum = diff.cells.iter().find(|c| c.status == CellStatus::KnownErratum).unwrap();
        assert_eq!((erratum.row, erratum.cell.as_str()), (10, "n:2/n:3"));
        for (&row, cells) in &table.rows {
            assert_eq!(diff.expected_total(row), cells.values().sum::<usize>());
            assert_eq!(diff.computed_total(row), 3);
        }
    }

    #[test]
    fn fabricated_histogram_is_a_mismatch() {
        let table = fixture_for(AutGroupId::D6_12).unwrap().unwrap();
        let mut reports = computed(AutGroupId::D6_12);
        *reports[0].histogram.get_mut(&0).unwrap() -= 1;
        *reports[0].histogram.entry(1).or_insert(0) += 1;
        let diff = diff_against_fixture(&reports, &table);
        assert_eq!(diff.status(), DiffStatus::Mismatch);
        assert_eq!(diff.status().exit_code(), 1);
        assert_eq!(diff.mismatches(), 2);

        reports.pop();
        assert_eq!(diff_against_fixture(&reports, &table).missing_rows, vec![12]);
    }

    #[test]
    fn an_erratum_does_not_excuse_other_values() {
        let table = fixture_for(AutGroupId::C10).unwrap().unwrap();
        let mut reports = computed(AutGroupId::C10);
        let row10 = reports.iter_mut().find(|r| r.h.order == 10).unwrap();
        row10.histogram.remove(&3);
        row10.histogram.insert(4, 1);
        let diff = diff_against_fixture(&reports, &table);
        assert_eq!(diff.known_errata(), 0);
        assert_eq!(diff.status(), DiffStatus::Mismatch);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(FixtureTable::parse(AutGroupId::D4_8, "H,m:0\n8,1\n", &[]).is_err());
        assert!(FixtureTable::parse(AutGroupId::D4_8, "H,n:0\n8,x\n", &[]).is_err());
        assert!(FixtureTable::parse(AutGroupId::D4_8, "H,n:0\n8,1\n8,1\n", &[]).is_err());
        assert!(parse_errata("group,row,cell,paper_value,derived_value,note\nC10,10,n:2,1/0,0,x\n").is_err());
    }
}
