//! Plain-text files for quiddity matrices and frieze patterns.
//!
//! Both formats start with a header line `k n q`, followed by rows of `n`
//! whitespace-separated field elements written as packed integers
//! (`Σ c_j p^j` for the coefficient vector of an element of GF(p^e)):
//!
//! * a quiddity matrix has `k − 1` rows, row `s` holding `a_{s,1}, …, a_{s,n}`;
//! * a frieze pattern has `n + k − 1` rows, `e_j(1), …, e_j(n)` for
//!   `j = −(k−1), …, n − 1`.
//!
//! Several records may follow each other, separated by blank lines. Lines
//! starting with `#` are ignored.

use crate::error::{FriezeError, Result};
use crate::frieze::{FriezePattern, QuiddityMatrix};
use crate::gf::{make_field, Field, FieldElem};

fn header(k: usize, n: usize, q: u32) -> String {
    format!("{k} {n} {q}\n")
}

fn write_row(field: &Field, out: &mut String, row: &[FieldElem]) {
    let cells: Vec<String> = row.iter().map(|&x| field.display(x)).collect();
    out.push_str(&cells.join(" "));
    out.push('\n');
}

pub fn write_quiddity(field: &Field, quid: &QuiddityMatrix) -> String {
    let mut out = header(quid.k(), quid.n(), field.q());
    for s in 1..quid.k() {
        write_row(field, &mut out, quid.row(s));
    }
    out
}

pub fn write_quiddities(field: &Field, quids: &[QuiddityMatrix]) -> String {
    let blocks: Vec<String> = quids.iter().map(|m| write_quiddity(field, m)).collect();
    blocks.join("\n")
}

pub fn write_frieze(field: &Field, pat: &FriezePattern) -> String {
    let mut out = header(pat.k(), pat.n(), field.q());
    for j in pat.row_range() {
        write_row(field, &mut out, pat.row(j));
    }
    out
}

struct Block {
    line: usize,
    k: usize,
    n: usize,
    q: u64,
    rows: Vec<Vec<u64>>,
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| FriezeError::Parse(format!("line {lineno}: '{t}' is not a non-negative integer"))))
        .collect()
}

/// Splits text into header-plus-rows blocks.
fn blocks(text: &str) -> Result<Vec<Block>> {
    let mut out: Vec<Block> = Vec::new();
    let mut open = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            open = false;
            continue;
        }
        let nums = numbers(line, lineno)?;
        if open {
            out.last_mut().expect("open block").rows.push(nums);
        } else {
            let [k, n, q] = nums[..] else {
                return Err(FriezeError::Parse(format!("line {lineno}: expected header 'k n q', found '{line}'")));
            };
            out.push(Block { line: lineno, k: k as usize, n: n as usize, q, rows: vec![] });
            open = true;
        }
    }
    Ok(out)
}

fn elements(field: &Field, b: &Block, rows: usize) -> Result<Vec<Vec<FieldElem>>> {
    if b.rows.len() != rows {
        return Err(FriezeError::Parse(format!(
            "record at line {}: expected {rows} rows for k = {}, n = {}, found {}",
            b.line,
            b.k,
            b.n,
            b.rows.len()
        )));
    }
    b.rows
        .iter()
        .map(|r| {
            if r.len() != b.n {
                return Err(FriezeError::Parse(format!(
                    "record at line {}: rows must have n = {} entries",
                    b.line, b.n
                )));
            }
            r.iter().map(|&v| field.from_packed(v)).collect()
        })
        .collect()
}

fn field_for(blocks: &[Block]) -> Result<Field> {
    let q = blocks.first().ok_or_else(|| FriezeError::Parse("no records found".into()))?.q;
    if let Some(b) = blocks.iter().find(|b| b.q != q) {
        return Err(FriezeError::Parse(format!("record at line {} uses q = {}, expected {q}", b.line, b.q)));
    }
    make_field(q)
}

/// Reads every quiddity matrix in `text`; all must share one field.
pub fn read_quiddities(text: &str) -> Result<(Field, Vec<QuiddityMatrix>)> {
    let bs = blocks(text)?;
    let field = field_for(&bs)?;
    let mut out = Vec::with_capacity(bs.len());
    for b in &bs {
        if b.k < 2 {
            return Err(FriezeError::Parse(format!("record at line {}: k must be at least 2", b.line)));
        }
        let rows = elements(&field, b, b.k - 1)?;
        out.push(QuiddityMatrix::new(b.k, b.n, rows.into_iter().flatten().collect())?);
    }
    Ok((field, out))
}

/// Reads a single quiddity matrix.
pub fn read_quiddity(text: &str) -> Result<(Field, QuiddityMatrix)> {
    let (field, mut all) = read_quiddities(text)?;
    if all.len() != 1 {
        return Err(FriezeError::Parse(format!("expected one quiddity matrix, found {}", all.len())));
    }
    Ok((field, all.pop().expect("one record")))
}

/// Reads a single frieze pattern.
pub fn read_frieze(text: &str) -> Result<(Field, FriezePattern)> {
    let bs = blocks(text)?;
    if bs.len() != 1 {
        return Err(FriezeError::Parse(format!("expected one frieze pattern, found {}", bs.len())));
    }
    let field = field_for(&bs)?;
    let b = &bs[0];
    if b.k < 2 {
        return Err(FriezeError::Parse("k must be at least 2".into()));
    }
    let rows = elements(&field, b, b.n + b.k - 1)?;
    let pat = FriezePattern::from_rows(b.k, b.n, rows)?;
    Ok((field, pat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiddity_roundtrip_gf4() {
        let f = make_field(4).unwrap();
        let e: Vec<FieldElem> = (0..10).map(|i| f.elem(i % 4)).collect();
        let m = QuiddityMatrix::new(3, 5, e).unwrap();
        let text = write_quiddity(&f, &m);
        assert!(text.starts_with("3 5 4\n"));
        let (g, back) = read_quiddity(&text).unwrap();
        assert_eq!(g.q(), 4);
        assert_eq!(back, m);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(read_quiddity("3 5 2\n1 1 1 1 1\n"), Err(FriezeError::Parse(_))));
        assert!(matches!(read_quiddity("3 5\n"), Err(FriezeError::Parse(_))));
        assert!(matches!(read_quiddity("2 3 2\n1 x 1\n"), Err(FriezeError::Parse(_))));
        assert!(read_quiddity("2 3 6\n1 1 1\n").is_err());
    }
}
