//! Small dense linear algebra over a [`Field`], projective points and
//! group orders.

use std::ops::Index;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{FriezeError, Result};
use crate::gf::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<FieldElem>);

impl Vector {
    pub fn new(entries: Vec<FieldElem>) -> Self {
        Vector(entries)
    }

    pub fn zeros(field: &Field, k: usize) -> Self {
        Vector(vec![field.zero(); k])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(field: &Field, k: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, k);
        v.0[i] = field.one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn scale(&self, field: &Field, c: FieldElem) -> Vector {
        Vector(self.0.iter().map(|&x| field.mul(c, x)).collect())
    }

    pub fn add(&self, field: &Field, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| field.add(a, b)).collect())
    }

    pub fn sub(&self, field: &Field, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| field.sub(a, b)).collect())
    }
}

impl Index<usize> for Vector {
    type Output = FieldElem;
    fn index(&self, i: usize) -> &FieldElem {
        &self.0[i]
    }
}

/// A point of P^{k−1}, stored by its canonical representative (first
/// nonzero coordinate equal to 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vector);

impl ProjPoint {
    /// The line spanned by `v`. Fails on the zero vector.
    pub fn from_vector(field: &Field, v: &Vector) -> Result<ProjPoint> {
        normalize(field, v).ok_or_else(|| {
            FriezeError::InvalidParameter("the zero vector spans no projective point".into())
        })
    }

    pub fn rep(&self) -> &Vector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize(field: &Field, v: &Vector) -> Option<ProjPoint> {
    let lead = v.0.iter().copied().find(|x| !x.is_zero())?;
    let inv = field.inv(lead).expect("nonzero lead");
    Some(ProjPoint(v.scale(field, inv)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    k: usize,
    entries: Vec<FieldElem>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(FriezeError::InvalidParameter("matrix rows must all have length k".into()));
        }
        Ok(SquareMatrix { k, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let k = cols.len();
        if cols.iter().any(|c| c.len() != k) {
            return Err(FriezeError::InvalidParameter("need k column vectors of length k".into()));
        }
        let entries = (0..k).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
        Ok(SquareMatrix { k, entries })
    }

    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let entries = (0..k * k).map(|i| f(i / k, i % k)).collect();
        SquareMatrix { k, entries }
    }

    pub fn identity(field: &Field, k: usize) -> Self {
        Self::scalar(field, k, field.one())
    }

    pub fn scalar(field: &Field, k: usize, c: FieldElem) -> Self {
        Self::from_fn(k, |r, col| if r == col { c } else { field.zero() })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.entries[r * self.k + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElem) {
        self.entries[r * self.k + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.entries[r * self.k..(r + 1) * self.k]
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector((0..self.k).map(|r| self.get(r, c)).collect())
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn mul(&self, field: &Field, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.k, other.k, "dimension mismatch");
        let k = self.k;
        SquareMatrix::from_fn(k, |r, c| {
            (0..k).fold(field.zero(), |acc, t| {
                field.add(acc, field.mul(self.get(r, t), other.get(t, c)))
            })
        })
    }

    pub fn mul_vec(&self, field: &Field, v: &Vector) -> Vector {
        Vector(
            (0..self.k)
                .map(|r| {
                    (0..self.k).fold(field.zero(), |acc, t| {
                        field.add(acc, field.mul(self.get(r, t), v[t]))
                    })
                })
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: FieldElem) -> SquareMatrix {
        SquareMatrix { k: self.k, entries: self.entries.iter().map(|&x| field.mul(c, x)).collect() }
    }

    pub fn det(&self, field: &Field) -> FieldElem {
        let mut raw: Vec<u16> = self.entries.iter().map(|x| x.index() as u16).collect();
        field.elem(field.det_raw(&mut raw, self.k) as usize)
    }

    /// Gauss–Jordan inverse; `None` for singular matrices.
    pub fn inverse(&self, field: &Field) -> Option<SquareMatrix> {
        let k = self.k;
        let mut a = self.clone();
        let mut inv = SquareMatrix::identity(field, k);
        for col in 0..k {
            let piv = (col..k).find(|&r| !a.get(r, col).is_zero())?;
            for c in 0..k {
                a.entries.swap(piv * k + c, col * k + c);
                inv.entries.swap(piv * k + c, col * k + c);
            }
            let s = field.inv(a.get(col, col)).ok()?;
            for c in 0..k {
                a.set(col, c, field.mul(s, a.get(col, c)));
                inv.set(col, c, field.mul(s, inv.get(col, c)));
            }
            for r in 0..k {
                let f = a.get(r, col);
                if r == col || f.is_zero() {
                    continue;
                }
                for c in 0..k {
                    a.set(r, c, field.sub(a.get(r, c), field.mul(f, a.get(col, c))));
                    inv.set(r, c, field.sub(inv.get(r, c), field.mul(f, inv.get(col, c))));
                }
            }
        }
        Some(inv)
    }

    /// Solves `self · x = b`; `None` if singular.
    pub fn solve(&self, field: &Field, b: &Vector) -> Option<Vector> {
        Some(self.inverse(field)?.mul_vec(field, b))
    }
}

/// Determinant of a square matrix.
pub fn det(field: &Field, m: &SquareMatrix) -> FieldElem {
    m.det(field)
}

/// Determinant of the matrix with the given vectors as columns.
pub fn det_of(field: &Field, vs: &[&Vector]) -> FieldElem {
    let k = vs.len();
    let mut raw = vec![0u16; k * k];
    for (c, v) in vs.iter().enumerate() {
        assert_eq!(v.len(), k, "need k vectors of length k");
        for r in 0..k {
            raw[r * k + c] = v[r].index() as u16;
        }
    }
    field.elem(field.det_raw(&mut raw, k) as usize)
}

/// Rank of a list of vectors of equal length.
pub fn rank(field: &Field, vs: &[&Vector]) -> usize {
    let Some(first) = vs.first() else { return 0 };
    let cols = first.len();
    let mut raw: Vec<u16> = vs.iter().flat_map(|v| v.0.iter().map(|x| x.index() as u16)).collect();
    field.rank_raw(&mut raw, vs.len(), cols)
}

/// True iff the vectors are linearly independent. Lists longer than the
/// ambient dimension are rejected rather than answered.
pub fn is_independent(field: &Field, vs: &[&Vector]) -> Result<bool> {
    if let Some(first) = vs.first() {
        if vs.len() > first.len() {
            return Err(FriezeError::InvalidParameter(format!(
                "{} vectors cannot be tested for independence in dimension {}",
                vs.len(),
                first.len()
            )));
        }
    }
    Ok(rank(field, vs) == vs.len())
}

/// Same as [`is_independent`] for projective points.
pub fn points_independent(field: &Field, ps: &[&ProjPoint]) -> Result<bool> {
    let vs: Vec<&Vector> = ps.iter().map(|p| p.rep()).collect();
    is_independent(field, &vs)
}

/// All points of P^{k−1}(GF(q)) in lexicographic order of their canonical
/// representatives.
pub fn all_proj_points(k: usize, field: &Field) -> Vec<ProjPoint> {
    assert!(k >= 1, "dimension must be positive");
    let q = field.q() as usize;
    let mut out = Vec::new();
    // Canonical reps: a run of zeros, then a 1, then anything.
    for lead in (0..k).rev() {
        let tail = k - lead - 1;
        let count = q.pow(tail as u32);
        for t in 0..count {
            let mut v = vec![field.zero(); k];
            v[lead] = field.one();
            let mut r = t;
            for j in (lead + 1..k).rev() {
                v[j] = field.elem(r % q);
                r /= q;
            }
            out.push(ProjPoint(Vector(v)));
        }
    }
    out.sort();
    out
}

pub fn gl_order(k: usize, q: u64) -> BigUint {
    let qk = BigUint::from(q).pow(k as u32);
    (0..k).fold(BigUint::one(), |acc, i| acc * (&qk - BigUint::from(q).pow(i as u32)))
}

/// |PGL(k, GF(q))| = |GL(k, GF(q))| / (q − 1).
pub fn pgl_order(k: usize, q: u64) -> BigUint {
    gl_order(k, q) / BigUint::from(q - 1)
}

/// Default bound on |GL| for [`enumerate_invertible`].
pub const DEFAULT_GL_CAP: u64 = 10_000_000;

/// Every invertible `k × k` matrix, built row by row (each new row outside
/// the span of the previous ones), in lexicographic order of entries.
pub fn enumerate_invertible(k: usize, field: &Field, cap: u64) -> Result<Vec<SquareMatrix>> {
    let order = gl_order(k, field.q() as u64);
    if order > BigUint::from(cap) {
        return Err(FriezeError::ResourceLimit {
            what: format!("enumerating GL({k}, {})", field.q()),
            visited: 0,
            cap,
        });
    }
    let q = field.q() as usize;
    let vectors: Vec<Vec<u16>> = (0..q.pow(k as u32))
        .map(|mut t| {
            let mut v = vec![0u16; k];
            for j in (0..k).rev() {
                v[j] = (t % q) as u16;
                t /= q;
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        field: &Field,
        k: usize,
        vectors: &[Vec<u16>],
        rows: &mut Vec<usize>,
        out: &mut Vec<SquareMatrix>,
    ) {
        if rows.len() == k {
            let entries =
                rows.iter().flat_map(|&r| vectors[r].iter().map(|&x| field.elem(x as usize))).collect();
            out.push(SquareMatrix { k, entries });
            return;
        }
        for (i, v) in vectors.iter().enumerate() {
            let mut buf: Vec<u16> = rows.iter().flat_map(|&r| vectors[r].iter().copied()).collect();
            buf.extend_from_slice(v);
            if field.rank_raw(&mut buf, rows.len() + 1, k) == rows.len() + 1 {
                rows.push(i);
                rec(field, k, vectors, rows, out);
                rows.pop();
            }
        }
    }
    rec(field, k, &vectors, &mut rows, &mut out);
    Ok(out)
}
