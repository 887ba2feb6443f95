use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{decimal, frieze_count, Method};
use crate::error::{FriezeError, Result};
use crate::limits::Limits;

/// The two published tables of small frieze counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    /// SL_3, w = 1..5.
    Fig1,
    /// SL_4, w ∈ {2, 4}.
    Fig2,
}

const QS: [u64; 5] = [2, 3, 4, 5, 7];

// Expected values exactly as published; rows are widths, columns follow QS.
const FIG1: [(usize, [u64; 5]); 5] = [
    (1, [5, 10, 17, 26, 50]),
    (2, [29, 145, 433, 1001, 3529]),
    (3, [93, 847, 4433, 16401, 120443]),
    (4, [381, 7651, 70993, 410151, 5902051]),
    (5, [1597, 72775, 1172305, 10443901, 291371347]),
];

const FIG2: [(usize, [u64; 5]); 2] = [
    (2, [93, 847, 4433, 16401, 120443]),
    (4, [6477, 627382, 18245201, 256754526, 14176726502]),
];

impl Table {
    pub fn id(self) -> &'static str {
        match self {
            Table::Fig1 => "fig1",
            Table::Fig2 => "fig2",
        }
    }

    pub fn k(self) -> usize {
        match self {
            Table::Fig1 => 3,
            Table::Fig2 => 4,
        }
    }

    pub fn field_orders(self) -> &'static [u64] {
        &QS
    }

    /// `(w, expected counts per field order)` rows.
    pub fn expected(self) -> &'static [(usize, [u64; 5])] {
        match self {
            Table::Fig1 => &FIG1,
            Table::Fig2 => &FIG2,
        }
    }
}

impl FromStr for Table {
    type Err = FriezeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig1" | "1" => Ok(Table::Fig1),
            "fig2" | "2" => Ok(Table::Fig2),
            other => Err(FriezeError::InvalidParameter(format!("unknown table '{other}' (expected fig1 or fig2)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub w: usize,
    pub q: u64,
    #[serde(with = "decimal")]
    pub expected: BigUint,
    /// `None` when the count could not be computed; see `error`.
    #[serde(default, with = "opt_decimal", skip_serializing_if = "Option::is_none")]
    pub computed: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::decimal::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| serde::de::Error::custom("bad integer")))
            .transpose()
    }
}

/// Every cell of a table, recomputed and compared with the published value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: Table,
    pub k: usize,
    pub cells: Vec<TableCell>,
}

impl TableReport {
    pub fn matched(&self) -> usize {
        self.cells.iter().filter(|c| c.matches).count()
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.cells.len()
    }

    pub fn cell(&self, w: usize, q: u64) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.w == w && c.q == q)
    }

    /// Aligned grid, widths down and field orders across. Mismatching cells
    /// show `computed≠expected`.
    pub fn to_text(&self) -> String {
        let qs = self.table.field_orders();
        let mut widths: Vec<usize> = self.cells.iter().map(|c| c.w).collect();
        widths.dedup();
        let label = |c: &TableCell| match (&c.computed, c.matches) {
            (Some(v), true) => v.to_string(),
            (Some(v), false) => format!("{v}≠{}", c.expected),
            (None, _) => format!("error≠{}", c.expected),
        };
        let mut grid: Vec<Vec<String>> = vec![std::iter::once(format!("SL_{}  w\\q", self.k))
            .chain(qs.iter().map(|q| q.to_string()))
            .collect()];
        for &w in &widths {
            let mut row = vec![format!("w={w}")];
            row.extend(qs.iter().map(|&q| self.cell(w, q).map(label).unwrap_or_default()));
            grid.push(row);
        }
        let cols = grid[0].len();
        let width: Vec<usize> =
            (0..cols).map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    let pad = width[c] - s.chars().count();
                    if c == 0 { format!("{s}{}", " ".repeat(pad)) } else { format!("{}{s}", " ".repeat(pad)) }
                })
                .collect();
            writeln!(out, "{}", cells.join("  ")).unwrap();
        }
        writeln!(out, "{}/{} cells match", self.matched(), self.cells.len()).unwrap();
        out
    }

    /// One line per cell: `table,k,w,q,expected,computed,match`.
    pub fn to_csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["table", "k", "w", "q", "expected", "computed", "match"]).unwrap();
        for c in &self.cells {
            wtr.write_record([
                self.table.id().to_string(),
                self.k.to_string(),
                c.w.to_string(),
                c.q.to_string(),
                c.expected.to_string(),
                c.computed.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                c.matches.to_string(),
            ])
            .unwrap();
        }
        String::from_utf8(wtr.into_inner().expect("in-memory writer")).expect("utf-8")
    }
}

/// Recomputes every cell of `table` through [`frieze_count`] and diffs it
/// against the embedded published value.
pub fn reproduce_table(table: Table, limits: &Limits) -> TableReport {
    let k = table.k();
    let jobs: Vec<(usize, u64, u64)> = table
        .expected()
        .iter()
        .flat_map(|(w, row)| QS.iter().zip(row).map(move |(&q, &e)| (*w, q, e)))
        .collect();
    let cells = limits.install(|| {
        jobs.par_iter()
            .map(|&(w, q, e)| {
                let expected = BigUint::from(e);
                match frieze_count(k, w, q, limits) {
                    Ok(r) => TableCell {
                        w,
                        q,
                        matches: r.value == expected,
                        expected,
                        computed: Some(r.value),
                        method: Some(r.method),
                        error: None,
                    },
                    Err(err) => TableCell {
                        w,
                        q,
                        expected,
                        computed: None,
                        method: None,
                        matches: false,
                        error: Some(err.to_string()),
                    },
                }
            })
            .collect()
    });
    TableReport { table, k, cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_tables_match() {
        for t in [Table::Fig1, Table::Fig2] {
            let r = reproduce_table(t, &Limits::default());
            assert!(r.all_match(), "{}", r.to_text());
        }
    }

    #[test]
    fn json_roundtrip() {
        let r = reproduce_table(Table::Fig2, &Limits::default());
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<TableReport>(&s).unwrap(), r);
    }
}
