use std::collections::BTreeSet;

use super::spec::DetFilter;
use super::Configuration;
use crate::error::{FriezeError, Result};
use crate::frieze::QuiddityMatrix;
use crate::gf::{Field, FieldElem};
use crate::projlin::{det_of, rank, SquareMatrix, Vector};

/// Coefficients of a lift expanded in its own consecutive vectors; same
/// shape (and meaning) as a quiddity matrix.
pub type CoeffMatrix = QuiddityMatrix;

/// Representatives `V_1, …, V_n` whose consecutive determinants (with the
/// twisted continuation `V_{i+n} = (−1)^{k−1} V_i`) all equal
/// `common_det`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub k: usize,
    pub vectors: Vec<Vector>,
    pub common_det: FieldElem,
    /// `lambda[i − 1]` is the scalar taking the canonical representative of
    /// `v_i` to `V_i`.
    pub lambda: Vec<FieldElem>,
}

impl Lift {
    pub fn n(&self) -> usize {
        self.vectors.len()
    }
}

/// `V_i` for any integer `i`, continued by `V_{i+n} = (−1)^{k−1} V_i`.
pub fn twisted_vector(field: &Field, k: usize, vs: &[Vector], i: i64) -> Vector {
    let n = vs.len() as i64;
    let wraps = (i - 1).div_euclid(n);
    let v = &vs[(i - 1).rem_euclid(n) as usize];
    if (k - 1) % 2 == 1 && wraps.rem_euclid(2) == 1 {
        v.scale(field, field.neg(field.one()))
    } else {
        v.clone()
    }
}

/// `det(V_i, …, V_{i+k−1})` with the twisted continuation.
pub fn consecutive_det(field: &Field, k: usize, vs: &[Vector], i: i64) -> FieldElem {
    let cols: Vec<Vector> = (0..k as i64).map(|t| twisted_vector(field, k, vs, i + t)).collect();
    let refs: Vec<&Vector> = cols.iter().collect();
    det_of(field, &refs)
}

fn product(field: &Field, xs: impl IntoIterator<Item = FieldElem>) -> FieldElem {
    xs.into_iter().fold(field.one(), |acc, x| field.mul(acc, x))
}

/// `∏_{s} d_{i+sg}` over one residue class mod g.
fn class_product(field: &Field, k: usize, vs: &[Vector], i: usize) -> FieldElem {
    let n = vs.len();
    let g = num_integer::gcd(k, n);
    product(field, (0..n / g).map(|s| consecutive_det(field, k, vs, (i + s * g) as i64)))
}

/// The star equation for row `i`: the class products at `i` and `i + 1`
/// agree.
fn star_row(field: &Field, k: usize, vs: &[Vector], i: usize) -> bool {
    class_product(field, k, vs, i) == class_product(field, k, vs, i + 1)
}

/// `d_i d_{i+3} ⋯` for `i, i+3, …, last` (empty product is 1).
fn stride3(field: &Field, vs: &[Vector], from: i64, last: i64) -> FieldElem {
    product(field, (from..=last).step_by(3).map(|j| consecutive_det(field, 3, vs, j)))
}

pub(crate) fn eval_filter(field: &Field, k: usize, vs: &[Vector], filter: &DetFilter) -> bool {
    let n = vs.len() as i64;
    let v = |i: i64| twisted_vector(field, k, vs, i);
    match filter {
        DetFilter::Star => {
            let g = num_integer::gcd(k, vs.len());
            (1..g).all(|i| star_row(field, k, vs, i))
        }
        DetFilter::StarRow(i) => star_row(field, k, vs, *i),
        DetFilter::W1Dependent => {
            // W_1 = d_1 d_4 ⋯ d_{n−4} V_{n−1} − d_2 d_5 ⋯ d_{n−3} V_1
            let w = v(n - 1)
                .scale(field, stride3(field, vs, 1, n - 4))
                .sub(field, &v(1).scale(field, stride3(field, vs, 2, n - 3)));
            rank(field, &[&w, &v(n)]) < 2
        }
        DetFilter::W2Dependent => {
            // W_2 = d_2 d_5 ⋯ d_{n−3} V_n − d_3 d_6 ⋯ d_{n−2} V_2
            let w = v(n)
                .scale(field, stride3(field, vs, 2, n - 3))
                .sub(field, &v(2).scale(field, stride3(field, vs, 3, n - 2)));
            rank(field, &[&w, &v(1)]) < 2
        }
        DetFilter::PlusMinusOdd => {
            let lhs = stride3(field, vs, 1, n - 3);
            let extra = det_of(field, &[&v(n - 1), &v(1), &v(2)]);
            lhs == field.mul(stride3(field, vs, 3, n - 4), extra)
        }
    }
}

fn require_base_space(field: &Field, config: &Configuration) -> Result<()> {
    if config.is_in_base_space(field) {
        Ok(())
    } else {
        Err(FriezeError::PreconditionViolation(
            "some window of k consecutive points is dependent".into(),
        ))
    }
}

/// The `gcd(k, n) − 1` determinant-product equations. Independent of the
/// chosen lift.
pub fn star_condition(field: &Field, config: &Configuration) -> Result<bool> {
    let g = config.g();
    if g == 1 {
        return Err(FriezeError::InvalidParameter(format!(
            "the star condition needs gcd(k, n) > 1 (k = {}, n = {})",
            config.k(),
            config.n()
        )));
    }
    require_base_space(field, config)?;
    Ok(eval_filter(field, config.k(), &config.canonical_lift(), &DetFilter::Star))
}

/// Rescales the canonical lift to one with constant consecutive
/// determinants, or returns `None` if none exists (only possible when
/// `gcd(k, n) > 1`).
///
/// Equal determinants force `λ_{i+k} = (d_i / d_{i+1}) λ_i`, so the scalars
/// on each residue class mod g are fixed up to one free factor per class.
/// The first g − 1 factors are set to 1; the last must satisfy a t-th root
/// equation (t = k/g) and the common determinant is the first element of
/// K^* for which that root exists.
pub fn constant_det_lift(field: &Field, config: &Configuration) -> Result<Option<Lift>> {
    require_base_space(field, config)?;
    let (k, n, g) = (config.k(), config.n(), config.g());
    let base = config.canonical_lift();
    let d: Vec<FieldElem> = (1..=n).map(|i| consecutive_det(field, k, &base, i as i64)).collect();
    let dd = |i: usize| d[(i - 1) % n];

    // Relative scalars mu along each k-step orbit, starting at 1 on 1..=g.
    let mut mu: Vec<Option<FieldElem>> = vec![None; n];
    for r in 1..=g {
        let mut i = r;
        let mut cur = field.one();
        for _ in 0..n / g {
            mu[i - 1] = Some(cur);
            let ratio = field.div(dd(i), dd(i + 1))?;
            cur = field.mul(cur, ratio);
            i = (i - 1 + k) % n + 1;
        }
        if cur != field.one() {
            if g == 1 {
                return Err(FriezeError::InvariantViolation(
                    "consecutive determinant ratios do not close up for gcd(k, n) = 1".into(),
                ));
            }
            return Ok(None);
        }
    }
    let mu: Vec<FieldElem> = mu.into_iter().map(|m| m.expect("every index lies on an orbit")).collect();

    // det of window 1 becomes  d_1 · ∏_{i≤k} mu_i · x_g^t  (x_1..x_{g−1} = 1)
    let t = (k / g) as u64;
    let base_det = field.mul(dd(1), product(field, mu[..k].iter().copied()));
    let (common_det, root) = field
        .nonzero()
        .find_map(|c| {
            let rhs = field.div(c, base_det).ok()?;
            field.nth_root(rhs, t).ok().flatten().map(|x| (c, x))
        })
        .ok_or_else(|| FriezeError::InvariantViolation("no common determinant found".into()))?;

    let lambda: Vec<FieldElem> = (1..=n)
        .map(|i| if i % g == 0 { field.mul(mu[i - 1], root) } else { mu[i - 1] })
        .collect();
    let vectors: Vec<Vector> = base.iter().zip(&lambda).map(|(v, &l)| v.scale(field, l)).collect();
    for i in 1..=n {
        if consecutive_det(field, k, &vectors, i as i64) != common_det {
            return Err(FriezeError::InvariantViolation(format!(
                "lift verification failed at window {i}"
            )));
        }
    }
    Ok(Some(Lift { k, vectors, common_det, lambda }))
}

/// Expands each `V_i` in the basis `V_{i+1}, …, V_{i+k}` and reads off the
/// coefficient matrix: `V_i = Σ_l (−1)^{l−1} a_{k−l, i+l−1} V_{i+l}` with the
/// last coefficient forced to `(−1)^{k−1}`.
pub fn coefficients_of_lift(field: &Field, lift: &Lift) -> Result<CoeffMatrix> {
    let (k, n) = (lift.k, lift.n());
    let mut coeffs = QuiddityMatrix::zeros(field, k, n)?;
    for i in 1..=n as i64 {
        let basis: Vec<Vector> = (1..=k as i64).map(|l| twisted_vector(field, k, &lift.vectors, i + l)).collect();
        let m = SquareMatrix::from_columns(&basis)?;
        let x = m
            .solve(field, &lift.vectors[(i - 1) as usize])
            .ok_or_else(|| FriezeError::InvariantViolation(format!("singular basis at index {i}")))?;
        if x[k - 1] != field.sign(k - 1) {
            return Err(FriezeError::InvariantViolation(format!(
                "trailing coefficient at index {i} is not (−1)^(k−1)"
            )));
        }
        for l in 1..k {
            coeffs.set(k - l, i + l as i64 - 1, field.mul(field.sign(l - 1), x[l - 1]));
        }
    }
    Ok(coeffs)
}

/// Every coefficient matrix arising from lifts of `config` with constant
/// consecutive determinants.
pub fn coeff_set(field: &Field, config: &Configuration) -> Result<BTreeSet<CoeffMatrix>> {
    let lift = constant_det_lift(field, config)?.ok_or_else(|| {
        FriezeError::PreconditionViolation("configuration has no lift with constant determinants".into())
    })?;
    let base = coefficients_of_lift(field, &lift)?;
    let (k, n, g) = (config.k(), config.n(), config.g());
    let mut out = BTreeSet::new();
    if g == 1 {
        out.insert(base);
        return Ok(out);
    }
    // λ ranges over (K^*)^{g−1} × {1}; entries transform as
    // a_{j,i} ↦ (λ_{i+j+1} / λ_{i+1}) a_{j,i}, λ indexed mod g.
    let units: Vec<FieldElem> = field.nonzero().collect();
    let mut choice = vec![0usize; g - 1];
    loop {
        let lam = |i: i64| -> FieldElem {
            let r = (i - 1).rem_euclid(g as i64) as usize;
            if r + 1 == g { field.one() } else { units[choice[r]] }
        };
        let mut m = base.clone();
        for j in 1..k {
            for i in 1..=n as i64 {
                let f = field.div(lam(i + j as i64 + 1), lam(i + 1))?;
                m.set(j, i, field.mul(f, base.get(j, i)));
            }
        }
        out.insert(m);
        // odometer over (K^*)^{g−1}
        let mut pos = 0;
        loop {
            if pos == g - 1 {
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < units.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
