//! Declarative description of a configuration space: which cyclic windows
//! must be independent, extra rank conditions, and determinant filters.
//!
//! Text format (one directive per line, `#` starts a comment):
//!
//! ```text
//! k 4
//! n 7
//! window 5 -        # window i = {v_i, …, v_{i+k−1}}; + independent, - dependent, * free
//! set - 7 1 2       # extra condition on an index list: + independent, - dependent
//! filter star       # star | star-row <i> | w1 | w2 | pm-odd
//! ```
//!
//! Windows not mentioned are required to be independent.

use std::fmt;

use crate::error::{FriezeError, Result};
use crate::family::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Requirement {
    Independent,
    Dependent,
    Unconstrained,
}

impl Requirement {
    fn symbol(self) -> char {
        match self {
            Requirement::Independent => '+',
            Requirement::Dependent => '-',
            Requirement::Unconstrained => '*',
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Requirement::Independent),
            "-" => Ok(Requirement::Dependent),
            "*" => Ok(Requirement::Unconstrained),
            _ => Err(FriezeError::Parse(format!("expected +, - or *, found '{s}'"))),
        }
    }
}

/// A rank condition on the points with the given 1-based indices. A list is
/// independent iff its rank equals its length, so repeated indices make it
/// dependent; `v_i ≠ v_j` is the pair `{i, j}` being independent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub indices: Vec<usize>,
    pub required: Requirement,
}

/// Determinant conditions evaluated on a lift of a complete configuration.
/// `d_i` denotes the consecutive determinant of `V_i, …, V_{i+k−1}` with the
/// twisted continuation `V_{i+n} = (−1)^{k−1} V_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DetFilter {
    /// `∏_s d_{i+sg} = ∏_s d_{i+1+sg}` for every `i ∈ [g−1]`, g = gcd(k, n).
    Star,
    /// The same product equation for a single `i`.
    StarRow(usize),
    /// k = 3, n ≡ 2 mod 3: `{W_1, V_n}` dependent.
    W1Dependent,
    /// k = 3, n ≡ 2 mod 3: `{W_2, V_1}` dependent.
    W2Dependent,
    /// k = 3, n ≡ 1 mod 3:
    /// `d_1 d_4 ⋯ d_{n−3} = d_3 d_6 ⋯ d_{n−4} · det(V_{n−1}, V_1, V_2)`.
    PlusMinusOdd,
}

impl fmt::Display for DetFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetFilter::Star => write!(f, "star"),
            DetFilter::StarRow(i) => write!(f, "star-row {i}"),
            DetFilter::W1Dependent => write!(f, "w1"),
            DetFilter::W2Dependent => write!(f, "w2"),
            DetFilter::PlusMinusOdd => write!(f, "pm-odd"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindowSpec {
    pub k: usize,
    pub n: usize,
    /// `windows[i − 1]` constrains `{v_i, …, v_{i+k−1}}`, indices mod n.
    pub windows: Vec<Requirement>,
    pub extras: Vec<Constraint>,
    pub filters: Vec<DetFilter>,
}

fn sign(plus: bool) -> Requirement {
    if plus { Requirement::Independent } else { Requirement::Dependent }
}

impl WindowSpec {
    /// C_k(n): every cyclic window independent.
    pub fn base(k: usize, n: usize) -> Result<Self> {
        if k < 2 || n < 2 {
            return Err(FriezeError::InvalidParameter(format!(
                "need k ≥ 2 and n ≥ 2, got k = {k}, n = {n}"
            )));
        }
        Ok(WindowSpec { k, n, windows: vec![Requirement::Independent; n], extras: vec![], filters: vec![] })
    }

    /// C_k^*(n): the base space plus the star equations (none when
    /// gcd(k, n) = 1).
    pub fn star(k: usize, n: usize) -> Result<Self> {
        let mut spec = Self::base(k, n)?;
        if num_integer::gcd(k, n) > 1 {
            spec.filters.push(DetFilter::Star);
        }
        Ok(spec)
    }

    pub fn with_window(mut self, i: usize, r: Requirement) -> Self {
        self.windows[i - 1] = r;
        self
    }

    pub fn with_extra(mut self, indices: &[usize], r: Requirement) -> Self {
        self.extras.push(Constraint { indices: indices.to_vec(), required: r });
        self
    }

    pub fn with_filter(mut self, f: DetFilter) -> Self {
        self.filters.push(f);
        self
    }

    /// C_3^{s1 s2}(n).
    pub fn c3_signed(n: usize, s1: bool, s2: bool) -> Result<Self> {
        Ok(Self::base(3, n)?
            .with_window(n - 1, sign(s1))
            .with_window(n, sign(s2))
            .with_extra(&[n, 1], Requirement::Independent))
    }

    /// C_4^{s1 s2 s3}(n).
    pub fn c4_signed(n: usize, s1: bool, s2: bool, s3: bool) -> Result<Self> {
        Ok(Self::base(4, n)?
            .with_window(n - 2, sign(s1))
            .with_window(n - 1, sign(s2))
            .with_window(n, sign(s3))
            .with_extra(&[n - 1, n, 1], Requirement::Independent)
            .with_extra(&[n, 1, 2], Requirement::Independent))
    }

    /// C_4^{s1(−)[s2]}(n). `v_n ≠ v_1` is required explicitly: for `s1 = −`
    /// nothing else excludes it, and the counting argument assumes the line
    /// `v_n ∨ v_1` exists. For `s1 = +` it is implied by window `n − 2`.
    pub fn c4_dep_last(n: usize, s1: bool, s2: bool) -> Result<Self> {
        Ok(Self::base(4, n)?
            .with_window(n - 2, sign(s1))
            .with_window(n - 1, Requirement::Unconstrained)
            .with_window(n, Requirement::Unconstrained)
            .with_extra(&[n, 1, 2], Requirement::Dependent)
            .with_extra(&[n, 1], Requirement::Independent)
            .with_extra(&[n - 1, 1, 2, 3], sign(s2)))
    }

    /// C_4^{(−)s1[s2]}(n).
    pub fn c4_dep_first(n: usize, s1: bool, s2: bool) -> Result<Self> {
        Ok(Self::base(4, n)?
            .with_window(n - 2, Requirement::Unconstrained)
            .with_window(n - 1, Requirement::Unconstrained)
            .with_window(n, sign(s1))
            .with_extra(&[n - 1, n, 1], Requirement::Dependent)
            .with_extra(&[n - 2, n - 1, n, 2], sign(s2)))
    }

    /// C_4^{(−−)[+]}(n).
    pub fn c4_dep_both(n: usize) -> Result<Self> {
        Ok(Self::base(4, n)?
            .with_window(n - 2, Requirement::Unconstrained)
            .with_window(n - 1, Requirement::Unconstrained)
            .with_window(n, Requirement::Unconstrained)
            .with_extra(&[n - 1, n, 1], Requirement::Dependent)
            .with_extra(&[n, 1, 2], Requirement::Dependent)
            .with_extra(&[n, 1], Requirement::Independent)
            .with_extra(&[n - 2, 1, 2, 3], Requirement::Independent))
    }

    /// The space counted by `family` at period `n`.
    pub fn for_family(family: Family, n: usize) -> Result<Self> {
        if !family.applies_to(n) {
            return Err(FriezeError::InvalidParameter(format!(
                "{} is not defined for n = {n}",
                family.notation()
            )));
        }
        Ok(match family {
            Family::C3 => Self::base(3, n)?,
            Family::C3Pm => Self::c3_signed(n, true, false)?,
            Family::C3Mm => Self::c3_signed(n, false, false)?,
            Family::C3Star => Self::base(3, n)?
                .with_filter(DetFilter::StarRow(1))
                .with_filter(DetFilter::StarRow(2)),
            Family::C3StarStar => Self::base(3, n)?.with_filter(DetFilter::StarRow(1)),
            Family::C3PmStar => {
                let s = Self::c3_signed(n, true, false)?;
                match n % 3 {
                    0 => s.with_filter(DetFilter::StarRow(1)),
                    1 => s.with_filter(DetFilter::PlusMinusOdd),
                    _ => s.with_filter(DetFilter::W2Dependent),
                }
            }
            Family::C3MmStar => Self::c3_signed(n, false, false)?
                .with_filter(DetFilter::W1Dependent)
                .with_filter(DetFilter::W2Dependent),
            Family::C3MmStarStar => {
                Self::c3_signed(n, false, false)?.with_filter(DetFilter::W1Dependent)
            }
            Family::C4 => Self::base(4, n)?,
            Family::C4Ppm => Self::c4_signed(n, true, true, false)?,
            Family::C4Pmm => Self::c4_signed(n, true, false, false)?,
            Family::C4Mpm => Self::c4_signed(n, false, true, false)?,
            Family::C4Mmm => Self::c4_signed(n, false, false, false)?,
            Family::C4PdP => Self::c4_dep_last(n, true, true)?,
            Family::C4PdM => Self::c4_dep_last(n, true, false)?,
            Family::C4MdP => Self::c4_dep_last(n, false, true)?,
            Family::C4DdP => Self::c4_dep_both(n)?,
        })
    }

    /// Checks index ranges and filter applicability.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(FriezeError::InvalidParameter(m));
        if self.k < 2 || self.n < 2 {
            return bad(format!("need k ≥ 2 and n ≥ 2, got k = {}, n = {}", self.k, self.n));
        }
        if self.windows.len() != self.n {
            return bad(format!("{} window requirements for n = {}", self.windows.len(), self.n));
        }
        for c in &self.extras {
            if c.indices.is_empty() || c.indices.len() > self.k {
                return bad(format!("condition on {:?} must name 1..={} points", c.indices, self.k));
            }
            if c.indices.iter().any(|&i| i == 0 || i > self.n) {
                return bad(format!("condition indices {:?} out of range 1..={}", c.indices, self.n));
            }
            if c.required == Requirement::Unconstrained {
                return bad("extra conditions must be + or -".into());
            }
        }
        let g = num_integer::gcd(self.k, self.n);
        for f in &self.filters {
            match f {
                DetFilter::Star if g == 1 => {
                    return bad(format!("star equations need gcd(k, n) > 1 (k = {}, n = {})", self.k, self.n))
                }
                DetFilter::StarRow(i) if g == 1 || *i == 0 || *i > g => {
                    return bad(format!("star row {i} needs 1 ≤ i ≤ gcd(k, n) = {g}"))
                }
                DetFilter::W1Dependent | DetFilter::W2Dependent
                    if self.k != 3 || self.n % 3 != 2 || self.n < 5 =>
                {
                    return bad("w1/w2 filters need k = 3 and n ≡ 2 mod 3, n ≥ 5".into())
                }
                DetFilter::PlusMinusOdd if self.k != 3 || self.n % 3 != 1 || self.n < 4 => {
                    return bad("pm-odd filter needs k = 3 and n ≡ 1 mod 3".into())
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut k = None;
        let mut n = None;
        let mut windows = Vec::new();
        let mut extras = Vec::new();
        let mut filters = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| FriezeError::Parse(format!("line {}: {m}: '{line}'", lineno + 1));
            let int = |s: &str| s.parse::<usize>().map_err(|_| err("expected a non-negative integer"));
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or_default();
            let rest: Vec<&str> = words.collect();
            match head {
                "k" | "n" => {
                    let [v] = rest[..] else { return Err(err("expected one value")) };
                    if head == "k" { k = Some(int(v)?) } else { n = Some(int(v)?) }
                }
                "window" => {
                    let [i, r] = rest[..] else { return Err(err("expected 'window <i> <+|-|*>'")) };
                    windows.push((int(i)?, Requirement::parse(r)?));
                }
                "set" => {
                    let (r, idx) = rest.split_first().ok_or_else(|| err("expected 'set <+|-> <i>…'"))?;
                    let indices = idx.iter().map(|s| int(s)).collect::<Result<Vec<_>>>()?;
                    extras.push(Constraint { indices, required: Requirement::parse(r)? });
                }
                "filter" => filters.push(match rest[..] {
                    ["star"] => DetFilter::Star,
                    ["star-row", i] => DetFilter::StarRow(int(i)?),
                    ["w1"] => DetFilter::W1Dependent,
                    ["w2"] => DetFilter::W2Dependent,
                    ["pm-odd"] => DetFilter::PlusMinusOdd,
                    _ => return Err(err("unknown filter")),
                }),
                _ => return Err(err("unknown directive")),
            }
        }
        let k = k.ok_or_else(|| FriezeError::Parse("missing 'k' line".into()))?;
        let n = n.ok_or_else(|| FriezeError::Parse("missing 'n' line".into()))?;
        let mut spec = WindowSpec::base(k, n)?;
        for (i, r) in windows {
            if i == 0 || i > n {
                return Err(FriezeError::Parse(format!("window {i} out of range 1..={n}")));
            }
            spec.windows[i - 1] = r;
        }
        spec.extras = extras;
        spec.filters = filters;
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "n {}", self.n)?;
        for (i, r) in self.windows.iter().enumerate() {
            if *r != Requirement::Independent {
                writeln!(f, "window {} {}", i + 1, r.symbol())?;
            }
        }
        for c in &self.extras {
            let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
            writeln!(f, "set {} {}", c.required.symbol(), idx.join(" "))?;
        }
        for flt in &self.filters {
            writeln!(f, "filter {flt}")?;
        }
        Ok(())
    }
}
