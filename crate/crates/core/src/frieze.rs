//! Tame SL_k-frieze patterns and their quiddity matrices.
//!
//! Indexing follows the usual conventions: quiddity entries `a_{s,i}` with
//! `s ∈ 1..=k−1` and cyclic `i`, frieze entries `e_j(i)` for rows
//! `j ∈ −(k−1)..=n−1`. Every public accessor takes these 1-based (row) and
//! cyclic (column) indices; storage is 0-based.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;

use rayon::prelude::*;

use crate::error::{FriezeError, Result};
use crate::gf::{Field, FieldElem};
use crate::limits::Limits;
use crate::projlin::SquareMatrix;

#[inline]
fn cyc(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiddityMatrix {
    k: usize,
    n: usize,
    /// Row `s − 1` holds `a_{s,1..=n}`.
    entries: Vec<FieldElem>,
}

impl QuiddityMatrix {
    /// `entries` is row-major: `(k − 1)` rows of `n` values.
    pub fn new(k: usize, n: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if k < 2 {
            return Err(FriezeError::InvalidParameter(format!("order k = {k} must be at least 2")));
        }
        if n < k + 1 {
            return Err(FriezeError::InvalidParameter(format!(
                "period n = {n} must be at least k + 1 = {}",
                k + 1
            )));
        }
        if entries.len() != (k - 1) * n {
            return Err(FriezeError::InvalidParameter(format!(
                "expected {} quiddity entries, got {}",
                (k - 1) * n,
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| w[0].field_order() != w[1].field_order()) {
            return Err(FriezeError::InvalidParameter("entries from different fields".into()));
        }
        Ok(QuiddityMatrix { k, n, entries })
    }

    pub fn zeros(field: &Field, k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, vec![field.zero(); (k.max(2) - 1) * n])
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// Width `w = n − k − 1`.
    pub fn width(&self) -> usize {
        self.n - self.k - 1
    }

    /// `a_{s,i}` with `s ∈ 1..=k−1` and `i` taken mod n.
    pub fn get(&self, s: usize, i: i64) -> FieldElem {
        assert!((1..self.k).contains(&s), "quiddity row {s} out of range");
        self.entries[(s - 1) * self.n + cyc(i, self.n)]
    }

    pub fn set(&mut self, s: usize, i: i64, x: FieldElem) {
        assert!((1..self.k).contains(&s), "quiddity row {s} out of range");
        let n = self.n;
        self.entries[(s - 1) * n + cyc(i, n)] = x;
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn row(&self, s: usize) -> &[FieldElem] {
        &self.entries[(s - 1) * self.n..s * self.n]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FriezePattern {
    k: usize,
    n: usize,
    /// Rows `j = −(k−1) ..= n−1`, each holding `e_j(1..=n)`.
    entries: Vec<FieldElem>,
}

impl FriezePattern {
    /// `rows[r]` is row `j = r − (k − 1)`.
    pub fn from_rows(k: usize, n: usize, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        if k < 2 || n < k + 1 {
            return Err(FriezeError::InvalidParameter(format!(
                "need k ≥ 2 and n ≥ k + 1, got k = {k}, n = {n}"
            )));
        }
        if rows.len() != n + k - 1 || rows.iter().any(|r| r.len() != n) {
            return Err(FriezeError::InvalidParameter(format!(
                "a frieze with k = {k}, n = {n} has {} rows of {n} entries",
                n + k - 1
            )));
        }
        Ok(FriezePattern { k, n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn width(&self) -> usize {
        self.n - self.k - 1
    }

    /// Lowest and highest stored row index.
    pub fn row_range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.k as i64 - 1)..=self.n as i64 - 1
    }

    /// `e_j(i)`, `i` taken mod n.
    pub fn get(&self, j: i64, i: i64) -> FieldElem {
        assert!(self.row_range().contains(&j), "frieze row {j} out of range");
        let r = (j + self.k as i64 - 1) as usize;
        self.entries[r * self.n + cyc(i, self.n)]
    }

    pub fn set(&mut self, j: i64, i: i64, x: FieldElem) {
        assert!(self.row_range().contains(&j), "frieze row {j} out of range");
        let r = (j + self.k as i64 - 1) as usize;
        let n = self.n;
        self.entries[r * n + cyc(i, n)] = x;
    }

    pub fn row(&self, j: i64) -> &[FieldElem] {
        let r = (j + self.k as i64 - 1) as usize;
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    /// The `size × size` diamond with top-left entry `e_j(i)`: entry
    /// `(r, c)` is `e_{j+c−r}(i+r)`.
    pub fn diamond(&self, j: i64, i: i64, size: usize) -> SquareMatrix {
        SquareMatrix::from_fn(size, |r, c| self.get(j + c as i64 - r as i64, i + r as i64))
    }
}

/// Expected value of a border row entry, or `None` for nontrivial rows.
fn border_value(field: &Field, k: usize, n: usize, j: i64) -> Option<FieldElem> {
    let w = (n - k - 1) as i64;
    if j < 0 || j > w + 1 {
        Some(field.zero())
    } else if j == 0 || j == w + 1 {
        Some(field.one())
    } else {
        None
    }
}

/// The companion-style matrix `A_i`.
pub fn companion_matrix(field: &Field, quid: &QuiddityMatrix, i: usize) -> Result<SquareMatrix> {
    if !(1..=quid.n).contains(&i) {
        return Err(FriezeError::InvalidParameter(format!(
            "column {i} out of range 1..={}",
            quid.n
        )));
    }
    let k = quid.k;
    let i = i as i64;
    Ok(SquareMatrix::from_fn(k, |r, c| {
        if r == 0 {
            if c + 1 == k {
                field.sign(k - 1)
            } else {
                let a = quid.get(k - 1 - c, i + c as i64);
                if c % 2 == 0 { a } else { field.neg(a) }
            }
        } else if c + 1 == r {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// `A_1 ⋯ A_n`.
pub fn quiddity_product(field: &Field, quid: &QuiddityMatrix) -> SquareMatrix {
    (1..=quid.n).fold(SquareMatrix::identity(field, quid.k), |acc, i| {
        acc.mul(field, &companion_matrix(field, quid, i).expect("in range"))
    })
}

/// True iff `A_1 ⋯ A_n = (−1)^{k−1} I`, i.e. the matrix is the quiddity of
/// a tame frieze.
pub fn check_quiddity(field: &Field, quid: &QuiddityMatrix) -> bool {
    quiddity_product(field, quid) == SquareMatrix::scalar(field, quid.k, field.sign(quid.k - 1))
}

fn fmt_matrix(field: &Field, m: &SquareMatrix) -> String {
    let rows: Vec<String> = (0..m.dim())
        .map(|r| {
            let row: Vec<String> = m.row(r).iter().map(|&x| field.display(x)).collect();
            format!("[{}]", row.join(" "))
        })
        .collect();
    rows.join(" ")
}

/// Fills rows `1..=n−1` from the trivial rows with the linear recursion in
/// the quiddity entries. No criterion check.
fn recurse_rows(field: &Field, quid: &QuiddityMatrix) -> FriezePattern {
    let (k, n) = (quid.k, quid.n);
    let rows = n + k - 1;
    let mut pat = FriezePattern { k, n, entries: vec![field.zero(); rows * n] };
    for i in 1..=n as i64 {
        pat.set(0, i, field.one());
    }
    let last_sign = field.sign(k - 1);
    for j in 1..n as i64 {
        for i in 1..=n as i64 {
            let mut acc = field.mul(last_sign, pat.get(j - k as i64, i + k as i64));
            for t in 0..k - 1 {
                let a = quid.get(k - 1 - t, i + t as i64);
                let term = field.mul(a, pat.get(j - t as i64 - 1, i + t as i64 + 1));
                acc = if t % 2 == 0 { field.add(acc, term) } else { field.sub(acc, term) };
            }
            pat.set(j, i, acc);
        }
    }
    pat
}

/// Builds the frieze with the given quiddity matrix.
pub fn build_frieze(field: &Field, quid: &QuiddityMatrix) -> Result<FriezePattern> {
    let product = quiddity_product(field, quid);
    if product != SquareMatrix::scalar(field, quid.k, field.sign(quid.k - 1)) {
        return Err(FriezeError::PreconditionViolation(format!(
            "A_1⋯A_n = {} is not (−1)^(k−1)·I",
            fmt_matrix(field, &product)
        )));
    }
    let pat = recurse_rows(field, quid);
    // The recursion must land exactly on the upper border rows.
    for j in pat.width() as i64 + 1..quid.n as i64 {
        let want = border_value(field, quid.k, quid.n, j).expect("border row");
        if pat.row(j).iter().any(|&x| x != want) {
            return Err(FriezeError::InvariantViolation(format!(
                "recursion did not reproduce border row {j}"
            )));
        }
    }
    Ok(pat)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondFailure {
    /// Row index `j` of the diamond's top-left entry.
    pub row: i64,
    /// Column `i` of the diamond's top-left entry.
    pub column: i64,
    pub det: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// First border entry `(j, i)` that is wrong, if any.
    pub border_failure: Option<(i64, i64)>,
    pub unimodular_checked: usize,
    /// First `k × k` diamond whose determinant is not 1.
    pub unimodular_failure: Option<DiamondFailure>,
    pub tame_checked: usize,
    /// First `(k+1) × (k+1)` diamond whose determinant is not 0.
    pub tame_failure: Option<DiamondFailure>,
}

impl ValidationReport {
    pub fn borders_ok(&self) -> bool {
        self.border_failure.is_none()
    }
    pub fn unimodular_ok(&self) -> bool {
        self.unimodular_failure.is_none()
    }
    pub fn tame_ok(&self) -> bool {
        self.tame_failure.is_none()
    }
    pub fn is_valid(&self) -> bool {
        self.borders_ok() && self.unimodular_ok() && self.tame_ok()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAILED" };
        match self.border_failure {
            None => writeln!(f, "borders: ok")?,
            Some((j, i)) => writeln!(f, "borders: FAILED at row {j}, column {i}")?,
        }
        write!(f, "k x k diamonds ({} checked): {}", self.unimodular_checked, verdict(self.unimodular_ok()))?;
        if let Some(d) = &self.unimodular_failure {
            write!(f, " first at row {}, column {}", d.row, d.column)?;
        }
        writeln!(f)?;
        write!(f, "(k+1) x (k+1) diamonds ({} checked): {}", self.tame_checked, verdict(self.tame_ok()))?;
        if let Some(d) = &self.tame_failure {
            write!(f, " first at row {}, column {}", d.row, d.column)?;
        }
        Ok(())
    }
}

/// Checks borders, all `k × k` diamonds (determinant 1) and all
/// `(k+1) × (k+1)` diamonds (determinant 0), cyclically in the columns.
pub fn validate_frieze(field: &Field, pat: &FriezePattern) -> ValidationReport {
    let (k, n) = (pat.k, pat.n);
    let w = pat.width() as i64;
    let mut border_failure = None;
    'rows: for j in pat.row_range() {
        if let Some(want) = border_value(field, k, n, j) {
            for i in 1..=n as i64 {
                if pat.get(j, i) != want {
                    border_failure = Some((j, i));
                    break 'rows;
                }
            }
        }
    }
    let mut report = ValidationReport {
        border_failure,
        unimodular_checked: 0,
        unimodular_failure: None,
        tame_checked: 0,
        tame_failure: None,
    };
    for j in 0..=w + 1 {
        for i in 1..=n as i64 {
            let det = pat.diamond(j, i, k).det(field);
            report.unimodular_checked += 1;
            if det != field.one() && report.unimodular_failure.is_none() {
                report.unimodular_failure = Some(DiamondFailure { row: j, column: i, det });
            }
        }
    }
    for j in 1..=w {
        for i in 1..=n as i64 {
            let det = pat.diamond(j, i, k + 1).det(field);
            report.tame_checked += 1;
            if !det.is_zero() && report.tame_failure.is_none() {
                report.tame_failure = Some(DiamondFailure { row: j, column: i, det });
            }
        }
    }
    report
}

/// Reads the quiddity matrix back off a valid frieze.
pub fn extract_quiddity(field: &Field, pat: &FriezePattern) -> Result<QuiddityMatrix> {
    let report = validate_frieze(field, pat);
    if !report.is_valid() {
        return Err(FriezeError::PreconditionViolation(format!(
            "not a tame frieze:\n{report}"
        )));
    }
    let (k, n) = (pat.k, pat.n);
    let mut quid = QuiddityMatrix::zeros(field, k, n)?;
    for i in 1..=n as i64 {
        quid.set(k - 1, i, pat.get(1, i));
    }
    // Row j = k − s of the recursion involves a_{s, i+k−1−s} linearly with
    // coefficient (−1)^{k−1−s}; everything else in it is already known.
    for s in (1..k - 1).rev() {
        let j = (k - s) as i64;
        for i in 1..=n as i64 {
            let mut rest = pat.get(j, i);
            for t in 0..k - 1 - s {
                let a = quid.get(k - 1 - t, i + t as i64);
                let term = field.mul(a, pat.get(j - t as i64 - 1, i + t as i64 + 1));
                rest = if t % 2 == 0 { field.sub(rest, term) } else { field.add(rest, term) };
            }
            quid.set(s, i + (k - 1 - s) as i64, field.mul(field.sign(k - 1 - s), rest));
        }
    }
    Ok(quid)
}

// ---------------------------------------------------------------------------
// brute-force enumeration

/// Visits every valid quiddity matrix. The first rows of `A_1, …, A_{n−1}`
/// range freely over `K^{k−1}`; the last matrix is then forced to be
/// `(−1)^{k−1} (A_1⋯A_{n−1})^{−1}` and is accepted iff it has companion
/// shape. First rows determine the quiddity bijectively.
struct QuidSearch<'a> {
    field: &'a Field,
    k: usize,
    n: usize,
    /// All of `K^{k−1}` as raw index vectors, lexicographic.
    rows: Vec<Vec<u16>>,
}

impl<'a> QuidSearch<'a> {
    fn new(field: &'a Field, k: usize, n: usize) -> Self {
        let q = field.q() as usize;
        let rows = (0..q.pow(k as u32 - 1))
            .map(|mut t| {
                let mut v = vec![0u16; k - 1];
                for j in (0..k - 1).rev() {
                    v[j] = (t % q) as u16;
                    t /= q;
                }
                v
            })
            .collect();
        QuidSearch { field, k, n, rows }
    }

    fn companion(&self, first_row: &[u16]) -> SquareMatrix {
        let f = self.field;
        let k = self.k;
        SquareMatrix::from_fn(k, |r, c| {
            if r == 0 {
                if c + 1 == k { f.sign(k - 1) } else { f.elem(first_row[c] as usize) }
            } else if c + 1 == r {
                f.one()
            } else {
                f.zero()
            }
        })
    }

    /// If `m` has companion shape, its free first-row entries.
    fn companion_row(&self, m: &SquareMatrix) -> Option<Vec<u16>> {
        let f = self.field;
        let k = self.k;
        if m.get(0, k - 1) != f.sign(k - 1) {
            return None;
        }
        for r in 1..k {
            for c in 0..k {
                let want = if c + 1 == r { f.one() } else { f.zero() };
                if m.get(r, c) != want {
                    return None;
                }
            }
        }
        Some((0..k - 1).map(|c| m.get(0, c).index() as u16).collect())
    }

    fn quiddity(&self, chosen: &[usize], last: &[u16]) -> QuiddityMatrix {
        let f = self.field;
        let (k, n) = (self.k, self.n);
        let mut quid = QuiddityMatrix::zeros(f, k, n).expect("valid shape");
        for i in 1..=n {
            let row: &[u16] = if i < n { &self.rows[chosen[i - 1]] } else { last };
            for (c, &x) in row.iter().enumerate() {
                let x = f.elem(x as usize);
                // first-row entry c of A_i is (−1)^c a_{k−1−c, i+c}
                let a = if c % 2 == 0 { x } else { f.neg(x) };
                quid.set(k - 1 - c, (i + c) as i64, a);
            }
        }
        quid
    }

    /// Depth-first search below a fixed choice for column 1.
    fn run_from(&self, first: usize, visit: &mut dyn FnMut(QuiddityMatrix)) {
        let mut chosen = vec![first];
        let prefix = self.companion(&self.rows[first]);
        self.dfs(&mut chosen, &prefix, visit);
    }

    fn dfs(&self, chosen: &mut Vec<usize>, prefix: &SquareMatrix, visit: &mut dyn FnMut(QuiddityMatrix)) {
        let f = self.field;
        if chosen.len() == self.n - 1 {
            let inv = prefix.inverse(f).expect("products of companions are invertible");
            if let Some(last) = self.companion_row(&inv.scale(f, f.sign(self.k - 1))) {
                visit(self.quiddity(chosen, &last));
            }
            return;
        }
        for pick in 0..self.rows.len() {
            let m = prefix.mul(f, &self.companion(&self.rows[pick]));
            chosen.push(pick);
            self.dfs(chosen, &m, visit);
            chosen.pop();
        }
    }
}

fn check_quid_budget(field: &Field, k: usize, n: usize, limits: &Limits) -> Result<()> {
    if k < 2 || n < k + 1 {
        return Err(FriezeError::InvalidParameter(format!(
            "need k ≥ 2 and n ≥ k + 1, got k = {k}, n = {n}"
        )));
    }
    let volume = BigUint::from(field.q()).pow(((k - 1) * (n - 1)) as u32);
    if volume > BigUint::from(limits.node_cap) {
        return Err(FriezeError::ResourceLimit {
            what: format!("quiddity enumeration (k = {k}, n = {n}, q = {})", field.q()),
            visited: 0,
            cap: limits.node_cap,
        });
    }
    Ok(())
}

/// Calls `visit` on every valid quiddity matrix, in a fixed order.
pub fn for_each_quiddity(
    field: &Field,
    k: usize,
    n: usize,
    limits: &Limits,
    mut visit: impl FnMut(QuiddityMatrix),
) -> Result<()> {
    check_quid_budget(field, k, n, limits)?;
    let search = QuidSearch::new(field, k, n);
    for first in 0..search.rows.len() {
        search.run_from(first, &mut visit);
    }
    Ok(())
}

/// All valid quiddity matrices, in a fixed order.
pub fn enumerate_quiddities(field: &Field, k: usize, n: usize, limits: &Limits) -> Result<Vec<QuiddityMatrix>> {
    let mut out = Vec::new();
    for_each_quiddity(field, k, n, limits, |m| out.push(m))?;
    Ok(out)
}

/// |Quid(k, n)| over `field`, in parallel over the choice for column 1.
pub fn count_quiddities(field: &Field, k: usize, n: usize, limits: &Limits) -> Result<BigUint> {
    check_quid_budget(field, k, n, limits)?;
    let search = QuidSearch::new(field, k, n);
    let total = AtomicU64::new(0);
    limits.install(|| {
        (0..search.rows.len()).into_par_iter().for_each(|first| {
            let mut local = 0u64;
            search.run_from(first, &mut |_| local += 1);
            total.fetch_add(local, Ordering::Relaxed);
        })
    });
    Ok(BigUint::from(total.into_inner()))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn quid(field: &Field, k: usize, n: usize, vals: &[i64]) -> QuiddityMatrix {
        QuiddityMatrix::new(k, n, vals.iter().map(|&x| field.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn companion_shapes() {
        let f5 = make_field(5).unwrap();
        let m = quid(&f5, 2, 3, &[1, 2, 3]);
        let a2 = companion_matrix(&f5, &m, 2).unwrap();
        assert_eq!(a2.row(0), &[f5.from_int(2), f5.from_int(-1)]);
        assert_eq!(a2.row(1), &[f5.one(), f5.zero()]);
        assert!(companion_matrix(&f5, &m, 4).is_err());

        let f2 = make_field(2).unwrap();
        let z = QuiddityMatrix::zeros(&f2, 3, 5).unwrap();
        let a = companion_matrix(&f2, &z, 1).unwrap();
        let expect = SquareMatrix::from_rows(vec![
            vec![f2.zero(), f2.zero(), f2.one()],
            vec![f2.one(), f2.zero(), f2.zero()],
            vec![f2.zero(), f2.one(), f2.zero()],
        ])
        .unwrap();
        assert_eq!(a, expect);
    }

    #[test]
    fn criterion_examples() {
        let f5 = make_field(5).unwrap();
        let m = QuiddityMatrix::new(2, 3, vec![f5.one(); 3]).unwrap();
        assert!(check_quiddity(&f5, &m));
        let f2 = make_field(2).unwrap();
        assert!(!check_quiddity(&f2, &QuiddityMatrix::zeros(&f2, 3, 5).unwrap()));
    }

    #[test]
    fn small_counts() {
        let f2 = make_field(2).unwrap();
        let lim = Limits::default();
        assert_eq!(enumerate_quiddities(&f2, 3, 5, &lim).unwrap().len(), 5);
        assert_eq!(count_quiddities(&f2, 3, 6, &lim).unwrap(), BigUint::from(29u32));
    }

    #[test]
    fn k3_quiddity_rows_sit_at_frieze_edges() {
        let f3 = make_field(3).unwrap();
        for m in enumerate_quiddities(&f3, 3, 5, &Limits::default()).unwrap() {
            let pat = build_frieze(&f3, &m).unwrap();
            let w = pat.width() as i64;
            for i in 1..=5 {
                assert_eq!(pat.get(1, i), m.get(2, i));
                assert_eq!(pat.get(w, i), m.get(1, i - 2));
            }
        }
    }

    #[test]
    fn build_rejects_non_quiddities() {
        let f2 = make_field(2).unwrap();
        let err = build_frieze(&f2, &QuiddityMatrix::zeros(&f2, 3, 5).unwrap()).unwrap_err();
        assert!(matches!(err, FriezeError::PreconditionViolation(_)));
    }

    #[test]
    fn node_cap_is_enforced() {
        let f2 = make_field(2).unwrap();
        let lim = Limits::default().with_node_cap(10);
        assert!(matches!(
            count_quiddities(&f2, 3, 6, &lim),
            Err(FriezeError::ResourceLimit { .. })
        ));
    }
}
