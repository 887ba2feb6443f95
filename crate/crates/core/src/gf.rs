//! Arithmetic in GF(p^e) via precomputed tables.
//!
//! Elements are stored as an index into the field's canonical enumeration:
//! coefficient vectors `(c_0, …, c_{e−1})` (constant term first) in
//! lexicographic order with `c_0` most significant, so index 0 is zero and
//! `all_elements` is simply `0..q`. For a prime field the index *is* the
//! residue. For I/O the element is written as its packed little-endian
//! integer `Σ c_j p^j`, which for e = 1 again coincides with the residue.

use std::fmt;
use std::sync::Arc;

use crate::error::{FriezeError, Result};

/// Largest field order we build tables for.
pub const MAX_FIELD_ORDER: u32 = 1024;

/// An element of some finite field. Carries the field order as a tag so
/// mixing elements of different fields is detected instead of coerced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    q: u16,
    idx: u16,
}

impl FieldElem {
    /// Position in the field's canonical element order.
    #[inline]
    pub fn index(self) -> usize {
        self.idx as usize
    }

    /// Order of the field this element belongs to.
    #[inline]
    pub fn field_order(self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.idx == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}@GF({})", self.idx, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    packed: Vec<u32>,
    unpacked: Vec<u16>,
}

/// A finite field GF(q), q = p^e. Cheap to clone and safe to share across
/// threads; all tables are built once at construction.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}
impl Eq for Field {}

/// Splits `q` as `p^e`, or returns `None` if it is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut e) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// Builds GF(q). Errors if `q` is not a prime power or exceeds
/// [`MAX_FIELD_ORDER`].
pub fn make_field(q: u64) -> Result<Field> {
    Field::new(q)
}

// ---------------------------------------------------------------------------
// dense polynomials over Z/p, constant term first

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let d = r.len() - 1;
        let factor = r[d] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let t = &mut r[d - dm + j];
            *t = (*t + p - factor * mj % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Inverse of `a` modulo the irreducible `m` via the extended Euclidean
/// algorithm. `a` must be nonzero and reduced.
fn poly_inv(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        // polynomial long division r0 = qt * r1 + rem
        let mut rem = r0.clone();
        let mut qt = vec![0u32; r0.len().saturating_sub(r1.len()) + 1];
        let lead_inv = pow_mod(*r1.last().unwrap(), p - 2, p);
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let f = rem[rem.len() - 1] * lead_inv % p;
            qt[shift] = f;
            for (j, &c) in r1.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p - f * c % p) % p;
            }
            poly_trim(&mut rem);
        }
        poly_trim(&mut qt);
        let s2 = poly_sub(&s0, &poly_mul(&qt, &s1, p), p);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant; normalize
    let c_inv = pow_mod(r0[0], p - 2, p);
    let mut out: Vec<u32> = s0.iter().map(|&c| c * c_inv % p).collect();
    out = poly_rem(&out, m, p);
    out
}

/// Smallest monic irreducible of degree `e` over Z/p, comparing the
/// non-leading coefficients lexicographically with the constant term first.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    'candidates: for rank in 0..total {
        // rank enumerates (c_0, …, c_{e−1}) with c_0 most significant
        let mut m = vec![0u32; e + 1];
        let mut r = rank;
        for j in (0..e).rev() {
            m[j] = (r % p as u64) as u32;
            r /= p as u64;
        }
        m[e] = 1;
        if m[0] == 0 {
            continue;
        }
        for d in 1..=e / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut f = vec![0u32; d + 1];
                let mut r = low;
                for c in f.iter_mut().take(d) {
                    *c = (r % p as u64) as u32;
                    r /= p as u64;
                }
                f[d] = 1;
                if poly_rem(&m, &f, p).is_empty() {
                    continue 'candidates;
                }
            }
        }
        return m;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or_else(|| {
            FriezeError::InvalidParameter(format!("{q} is not a prime power"))
        })?;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(FriezeError::InvalidParameter(format!(
                "field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        let q = q as u32;
        let modulus = smallest_irreducible(p, e);
        let eu = e as usize;

        let coeffs_of = |idx: u32| -> Vec<u32> {
            let mut c = vec![0u32; eu];
            let mut r = idx;
            for j in (0..eu).rev() {
                c[j] = r % p;
                r /= p;
            }
            c
        };
        let index_of = |c: &[u32]| -> u32 {
            let mut idx = 0;
            for j in 0..eu {
                idx = idx * p + c.get(j).copied().unwrap_or(0);
            }
            idx
        };
        let all: Vec<Vec<u32>> = (0..q).map(coeffs_of).collect();
        let qs = q as usize;

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in a..qs {
                let sum: Vec<u32> = (0..eu).map(|j| (all[a][j] + all[b][j]) % p).collect();
                let s = index_of(&sum) as u16;
                let prod = if e == 1 {
                    ((a * b) % p as usize) as u16
                } else {
                    index_of(&poly_rem(&poly_mul(&all[a], &all[b], p), &modulus, p)) as u16
                };
                add[a * qs + b] = s;
                add[b * qs + a] = s;
                mul[a * qs + b] = prod;
                mul[b * qs + a] = prod;
            }
        }
        let mut neg = vec![0u16; qs];
        for a in 0..qs {
            let n: Vec<u32> = all[a].iter().map(|&c| (p - c) % p).collect();
            neg[a] = index_of(&n) as u16;
        }
        let mut inv = vec![0u16; qs];
        for a in 1..qs {
            inv[a] = if e == 1 {
                pow_mod(a as u32, p - 2, p) as u16
            } else {
                index_of(&poly_inv(&all[a], &modulus, p)) as u16
            };
        }
        let mut packed = vec![0u32; qs];
        let mut unpacked = vec![0u16; qs];
        for a in 0..qs {
            let mut v = 0;
            for j in (0..eu).rev() {
                v = v * p + all[a][j];
            }
            packed[a] = v;
            unpacked[v as usize] = a as u16;
        }
        let modulus = modulus[..eu].to_vec();
        Ok(Field(Arc::new(Tables {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            packed,
            unpacked,
        })))
    }

    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.0.p
    }
    /// Extension degree.
    pub fn e(&self) -> u32 {
        self.0.e
    }
    /// Cardinality.
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// The non-leading coefficients of the defining polynomial (constant
    /// term first); the polynomial itself is monic of degree `e`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    fn tag(&self, idx: u16) -> FieldElem {
        FieldElem { q: self.0.q as u16, idx }
    }

    /// The element at position `idx` in the canonical order.
    pub fn elem(&self, idx: usize) -> FieldElem {
        assert!(idx < self.0.q as usize, "element index {idx} out of range for GF({})", self.0.q);
        self.tag(idx as u16)
    }

    pub fn zero(&self) -> FieldElem {
        self.tag(0)
    }

    pub fn one(&self) -> FieldElem {
        self.tag(self.0.unpacked[1])
    }

    /// Image of an integer under Z → Z/p ⊂ GF(q).
    pub fn from_int(&self, n: i64) -> FieldElem {
        let r = n.rem_euclid(self.0.p as i64) as usize;
        self.tag(self.0.unpacked[r])
    }

    /// `(-1)^e`.
    pub fn sign(&self, e: usize) -> FieldElem {
        if e.is_multiple_of(2) {
            self.one()
        } else {
            self.neg(self.one())
        }
    }

    /// Element with the given coefficients (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FriezeError::InvalidParameter(format!(
                "coefficients {coeffs:?} do not describe an element of GF({})",
                self.0.q
            )));
        }
        let idx = coeffs.iter().fold(0, |acc, &c| acc * self.0.p + c);
        Ok(self.tag(idx as u16))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut packed = self.packed(a);
        (0..self.0.e)
            .map(|_| {
                let c = packed % self.0.p;
                packed /= self.0.p;
                c
            })
            .collect()
    }

    /// Little-endian base-p packing of the coefficient vector, used by the
    /// text formats.
    pub fn packed(&self, a: FieldElem) -> u32 {
        self.0.packed[a.index()]
    }

    pub fn from_packed(&self, v: u64) -> Result<FieldElem> {
        if v >= self.0.q as u64 {
            return Err(FriezeError::InvalidParameter(format!(
                "{v} is not a packed element of GF({})",
                self.0.q
            )));
        }
        Ok(self.tag(self.0.unpacked[v as usize]))
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.q as u32 == self.0.q
    }

    fn check(&self, a: FieldElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FriezeError::InvalidParameter(format!(
                "element of GF({}) used with GF({})",
                a.q, self.0.q
            )))
        }
    }

    #[inline]
    fn expect(&self, a: FieldElem) {
        assert!(self.contains(a), "element of GF({}) used with GF({})", a.q, self.0.q);
    }

    /// Checked binary arithmetic.
    pub fn arith(&self, a: FieldElem, b: FieldElem, op: ArithOp) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.expect(a);
        self.expect(b);
        self.tag(self.add_raw(a.idx, b.idx))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.expect(a);
        self.expect(b);
        self.tag(self.sub_raw(a.idx, b.idx))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.expect(a);
        self.expect(b);
        self.tag(self.mul_raw(a.idx, b.idx))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.expect(a);
        self.tag(self.0.neg[a.index()])
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FriezeError::DivisionByZero);
        }
        Ok(self.tag(self.0.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest (in canonical order) `x ∈ K^*` with `x^t = a`, if any.
    pub fn nth_root(&self, a: FieldElem, t: u64) -> Result<Option<FieldElem>> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FriezeError::InvalidParameter(
                "roots are only sought for nonzero elements".into(),
            ));
        }
        if t == 0 {
            return Err(FriezeError::InvalidParameter("root degree must be positive".into()));
        }
        let qm1 = self.0.q as u64 - 1;
        let g = num_integer::gcd(t, qm1);
        if self.pow(a, qm1 / g) != self.one() {
            return Ok(None);
        }
        Ok(self.nonzero().find(|&x| self.pow(x, t) == a))
    }

    /// All q elements in canonical order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.q as u16).map(move |i| self.tag(i))
    }

    /// K^* in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.0.q as u16).map(move |i| self.tag(i))
    }

    /// Renders an element the way the text formats write it.
    pub fn display(&self, a: FieldElem) -> String {
        self.packed(a).to_string()
    }

    // Raw index-level operations for hot loops; callers guarantee indices
    // are in range.

    #[inline]
    pub(crate) fn add_raw(&self, a: u16, b: u16) -> u16 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub(crate) fn sub_raw(&self, a: u16, b: u16) -> u16 {
        self.add_raw(a, self.0.neg[b as usize])
    }
    #[inline]
    pub(crate) fn mul_raw(&self, a: u16, b: u16) -> u16 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub(crate) fn inv_raw(&self, a: u16) -> u16 {
        self.0.inv[a as usize]
    }
    #[inline]
    pub(crate) fn one_raw(&self) -> u16 {
        self.0.unpacked[1]
    }

    /// Rank of the `rows × cols` matrix stored row-major in `m` (raw
    /// indices). The buffer is destroyed.
    pub(crate) fn rank_raw(&self, m: &mut [u16], rows: usize, cols: usize) -> usize {
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    m.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = self.inv_raw(m[rank * cols + col]);
            for r in rank + 1..rows {
                let f = m[r * cols + col];
                if f == 0 {
                    continue;
                }
                let f = self.mul_raw(f, inv);
                for c in col..cols {
                    let t = self.mul_raw(f, m[rank * cols + c]);
                    m[r * cols + c] = self.sub_raw(m[r * cols + c], t);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Determinant of the `k × k` matrix in `m` (raw indices). The buffer is
    /// destroyed.
    pub(crate) fn det_raw(&self, m: &mut [u16], k: usize) -> u16 {
        let mut det = self.one_raw();
        for col in 0..k {
            let Some(piv) = (col..k).find(|&r| m[r * k + col] != 0) else {
                return 0;
            };
            if piv != col {
                for c in 0..k {
                    m.swap(piv * k + c, col * k + c);
                }
                det = self.0.neg[det as usize];
            }
            let p = m[col * k + col];
            det = self.mul_raw(det, p);
            let inv = self.inv_raw(p);
            for r in col + 1..k {
                let f = m[r * k + col];
                if f == 0 {
                    continue;
                }
                let f = self.mul_raw(f, inv);
                for c in col..k {
                    let t = self.mul_raw(f, m[col * k + c]);
                    m[r * k + c] = self.sub_raw(m[r * k + c], t);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 15] {
            assert!(make_field(q).is_err(), "{q}");
        }
    }

    #[test]
    fn gf4_modulus_and_reduction() {
        let f = make_field(4).unwrap();
        assert_eq!((f.p(), f.e()), (2, 2));
        assert_eq!(f.modulus(), &[1, 1]);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x_plus_1);
    }

    #[test]
    fn small_prime_examples() {
        let f2 = make_field(2).unwrap();
        assert_eq!(f2.add(f2.one(), f2.one()), f2.zero());
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.mul(f5.from_int(3), f5.from_int(4)), f5.from_int(2));
        let f7 = make_field(7).unwrap();
        assert_eq!(f7.inv(f7.from_int(3)).unwrap(), f7.from_int(5));
        assert!(matches!(f7.inv(f7.zero()), Err(FriezeError::DivisionByZero)));
    }

    #[test]
    fn cube_roots_in_gf7() {
        let f = make_field(7).unwrap();
        assert_eq!(f.nth_root(f.from_int(6), 3).unwrap(), Some(f.from_int(3)));
        assert_eq!(f.nth_root(f.from_int(2), 3).unwrap(), None);
        assert!(f.nth_root(f.zero(), 3).is_err());
    }

    #[test]
    fn packing_roundtrip_and_order() {
        let f = make_field(9).unwrap();
        // index order: c_0 most significant, so (0,1) < (0,2) < (1,0)
        assert_eq!(f.coeffs(f.elem(1)), vec![0, 1]);
        assert_eq!(f.coeffs(f.elem(3)), vec![1, 0]);
        assert_eq!(f.one(), f.elem(3));
        for a in f.elements() {
            assert_eq!(f.from_packed(f.packed(a) as u64).unwrap(), a);
        }
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f3 = make_field(3).unwrap();
        let f5 = make_field(5).unwrap();
        assert!(f3.arith(f3.one(), f5.one(), ArithOp::Add).is_err());
    }

    #[test]
    fn irreducible_moduli_are_the_expected_ones() {
        // x^2 + 1 is the first irreducible quadratic over F_3 (x^2 + 0x + 1)
        assert_eq!(make_field(9).unwrap().modulus(), &[1, 0]);
        // x^3 + x^2 + 1 precedes x^3 + x + 1 in constant-term-first order
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 0, 1]);
        // x^2 + 1 splits over F_5, x^2 + x + 1 does not
        assert_eq!(make_field(25).unwrap().modulus(), &[1, 1]);
    }
}
