//! Exact counts: closed forms and recursions for the configuration families,
//! the frieze-count pipeline built on them, the tables of small values and
//! the conjectural count for larger k.

mod closed;
mod recursion;
mod tables;

pub use closed::closed_form;
pub use recursion::{recursion_eval, recursion_series};
pub use tables::{reproduce_table, Table, TableCell, TableReport};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{count_configs, WindowSpec};
use crate::error::{FriezeError, Result};
use crate::family::Family;
use crate::gf::{make_field, prime_power};
use crate::limits::Limits;
use crate::projlin::pgl_order;

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Recursion,
    Dfs,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::ClosedForm, Method::Recursion, Method::Dfs];

    pub fn id(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Recursion => "recursion",
            Method::Dfs => "dfs",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = FriezeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "closed_form" | "closed" => Ok(Method::ClosedForm),
            "recursion" => Ok(Method::Recursion),
            "dfs" => Ok(Method::Dfs),
            other => Err(FriezeError::InvalidParameter(format!(
                "unknown method '{other}' (expected closed_form, recursion or dfs)"
            ))),
        }
    }
}

/// Serializes big integers as decimal strings so JSON consumers never lose
/// precision.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| de::Error::custom(format!("not a decimal integer: {s}")))
    }
}

/// One count together with how it was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    /// A family id (`c3`, `c4_ppm`, …), `frieze` or `conjecture`.
    pub family: String,
    pub k: usize,
    pub n: usize,
    /// Width, for frieze counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    pub q: u64,
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub method: Method,
    /// Wall-clock time, only filled in on request so that default output is
    /// reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CountReport {
    /// Records the time elapsed since `start`.
    pub fn with_runtime(mut self, start: Instant) -> Self {
        self.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        self
    }
}

/// |family(n)| over GF(q) by the requested method.
pub fn count_family(family: Family, n: usize, q: u64, method: Method, limits: &Limits) -> Result<CountReport> {
    let value = match method {
        Method::ClosedForm => closed_form(family, n, q)?,
        Method::Recursion => recursion_eval(family, n, q)?,
        Method::Dfs => {
            let field = make_field(q)?;
            count_configs(&field, &WindowSpec::for_family(family, n)?, limits)?
        }
    };
    Ok(CountReport {
        family: family.id().to_string(),
        k: family.k(),
        n,
        w: None,
        q,
        value,
        method,
        runtime_ms: None,
        notes: vec![],
    })
}

/// The formulas are polynomials in q, but only prime powers are field orders.
pub(crate) fn check_field_order(q: u64) -> Result<()> {
    match prime_power(q) {
        Some(_) => Ok(()),
        None => Err(FriezeError::InvalidParameter(format!("q = {q} is not a prime power"))),
    }
}

fn exact_quotient(num: BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (quo, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(FriezeError::InvariantViolation(format!("{what} is not divisible by |PGL| = {den}")));
    }
    Ok(quo)
}

fn check_kq(k: usize, q: u64) -> Result<()> {
    if k < 2 {
        return Err(FriezeError::InvalidParameter(format!("k = {k} must be at least 2")));
    }
    make_field(q).map(|_| ())
}

/// Number of tame SL_k-frieze patterns of width `w` over GF(q).
///
/// With `n = w + k + 1` and `g = gcd(k, n)` this is `|C_k(n)| / |PGL(k, q)|`
/// for `g = 1` and `|C_k^*(n)| (q − 1)^{g−1} / |PGL(k, q)|` otherwise. The
/// configuration counts come from closed forms for k = 3 and for k = 4 with
/// n odd; other k fall back to exhaustive search within `limits`. k = 4 with
/// even n has no closed form and is refused.
pub fn frieze_count(k: usize, w: usize, q: u64, limits: &Limits) -> Result<CountReport> {
    check_kq(k, q)?;
    let n = w + k + 1;
    let g = k.gcd(&n);
    let mut notes = Vec::new();
    if w == 0 {
        notes.push("w = 0 lies outside the range w ≥ 1 covered by the counting formulas".to_string());
    }
    let (configs, method) = match (k, g) {
        (3, 1) => (closed_form(Family::C3, n, q)?, Method::ClosedForm),
        (3, _) => (closed_form(Family::C3Star, n, q)?, Method::ClosedForm),
        (4, 1) => (closed_form(Family::C4, n, q)?, Method::ClosedForm),
        (4, _) => {
            return Err(FriezeError::Unsupported(format!(
                "no closed form for k = 4 with even n (here w = {w}, n = {n}); only odd n is covered"
            )))
        }
        _ => {
            let field = make_field(q)?;
            let count = count_configs(&field, &WindowSpec::star(k, n)?, limits).map_err(|e| match e {
                FriezeError::ResourceLimit { cap, .. } => FriezeError::Unsupported(format!(
                    "no closed form for k = {k}, and exhaustive search of C_{k}{}({n}) over GF({q}) \
                     exceeds the node cap of {cap}",
                    if g > 1 { "^*" } else { "" }
                )),
                other => other,
            })?;
            (count, Method::Dfs)
        }
    };
    let weighted = configs * BigUint::from(q - 1).pow(g as u32 - 1);
    let value = exact_quotient(weighted, &pgl_order(k, q), "configuration count")?;
    Ok(CountReport { family: "frieze".into(), k, n, w: Some(w), q, value, method, runtime_ms: None, notes })
}

/// `(q^n − q)(q^n − q^2)⋯(q^n − q^{k−1}) / |PGL(k, q)|` for `n = w + k + 1`
/// with `gcd(k, n) = 1`: the conjectured frieze count for k ≥ 5, which is
/// proven (and checked here) for k ≤ 4.
pub fn conjecture_count(k: usize, w: usize, q: u64) -> Result<CountReport> {
    check_kq(k, q)?;
    let n = w + k + 1;
    if k.gcd(&n) != 1 {
        return Err(FriezeError::InvalidParameter(format!(
            "the conjectured formula covers gcd(k, n) = 1 only; gcd({k}, {n}) = {}",
            k.gcd(&n)
        )));
    }
    let qb = BigUint::from(q);
    let qn = qb.pow(n as u32);
    let prod = (1..k).fold(BigUint::one(), |acc, i| acc * (&qn - qb.pow(i as u32)));
    let value = exact_quotient(prod, &pgl_order(k, q), "conjectural product")?;
    let mut notes = vec![];
    if k >= 5 {
        notes.push("conjectural: not proven for k ≥ 5".to_string());
    }
    Ok(CountReport {
        family: "conjecture".into(),
        k,
        n,
        w: Some(w),
        q,
        value,
        method: Method::ClosedForm,
        runtime_ms: None,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frieze_counts_from_closed_forms() {
        let lim = Limits::default();
        assert_eq!(frieze_count(3, 1, 2, &lim).unwrap().value, BigUint::from(5u32));
        assert_eq!(frieze_count(3, 5, 7, &lim).unwrap().value, BigUint::from(291_371_347u64));
        assert_eq!(frieze_count(4, 2, 2, &lim).unwrap().value, BigUint::from(93u32));
        assert!(matches!(frieze_count(4, 3, 2, &lim), Err(FriezeError::Unsupported(_))));
    }

    #[test]
    fn small_k_falls_back_to_search() {
        let r = frieze_count(2, 3, 3, &Limits::default()).unwrap();
        assert_eq!(r.method, Method::Dfs);
        assert_eq!(r.value, BigUint::from(35u32));
        let capped = frieze_count(2, 6, 5, &Limits::default().with_node_cap(100));
        assert!(matches!(capped, Err(FriezeError::Unsupported(_))));
    }

    #[test]
    fn conjecture_scope() {
        assert_eq!(conjecture_count(3, 1, 2).unwrap().value, BigUint::from(5u32));
        assert_eq!(conjecture_count(5, 1, 2).unwrap().value, BigUint::from(21u32));
        assert!(conjecture_count(3, 2, 2).is_err());
    }

    #[test]
    fn report_json_roundtrip() {
        let r = frieze_count(4, 4, 7, &Limits::default()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"14176726502\""));
        assert_eq!(serde_json::from_str::<CountReport>(&s).unwrap(), r);
    }
}
