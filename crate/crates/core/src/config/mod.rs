//! Cyclic configurations of points in P^{k−1}: enumeration of the counted
//! spaces, lifts with constant consecutive determinants, coefficient sets,
//! maximal decompositions and stabilizers.

mod decomposition;
mod lift;
mod orbits;
mod search;
mod spec;

pub use decomposition::{maximal_decomposition, stabilizer_order, Decomposition, StabilizerMethod};
pub use lift::{
    coeff_set, coefficients_of_lift, constant_det_lift, consecutive_det, star_condition,
    twisted_vector, CoeffMatrix, Lift,
};
pub use orbits::{orbit_partition, GroupAction, Orbit};
pub use search::{count_configs, enumerate_configs, ConfigSearch};
pub use spec::{Constraint, DetFilter, Requirement, WindowSpec};

use crate::error::{FriezeError, Result};
use crate::gf::Field;
use crate::projlin::{rank, ProjPoint, Vector};

/// A cyclic tuple `(v_1, …, v_n)` of points of P^{k−1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    k: usize,
    points: Vec<ProjPoint>,
}

impl Configuration {
    pub fn new(k: usize, points: Vec<ProjPoint>) -> Result<Self> {
        if k < 2 {
            return Err(FriezeError::InvalidParameter(format!("dimension k = {k} must be at least 2")));
        }
        if points.len() < 2 {
            return Err(FriezeError::InvalidParameter("a configuration needs at least two points".into()));
        }
        if points.iter().any(|p| p.dim() != k) {
            return Err(FriezeError::InvalidParameter(format!("all points must lie in P^{}", k - 1)));
        }
        Ok(Configuration { k, points })
    }

    /// Convenience constructor from coordinate vectors (any nonzero
    /// representatives).
    pub fn from_vectors(field: &Field, k: usize, vs: &[Vector]) -> Result<Self> {
        let points = vs.iter().map(|v| ProjPoint::from_vector(field, v)).collect::<Result<_>>()?;
        Self::new(k, points)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// gcd(k, n).
    pub fn g(&self) -> usize {
        num_integer::gcd(self.k, self.n())
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// `v_i`, 1-based, indices mod n.
    pub fn point(&self, i: i64) -> &ProjPoint {
        &self.points[(i - 1).rem_euclid(self.n() as i64) as usize]
    }

    /// The canonical lift: every `V_i` is the canonical representative.
    pub fn canonical_lift(&self) -> Vec<Vector> {
        self.points.iter().map(|p| p.rep().clone()).collect()
    }

    fn rank_of(&self, field: &Field, idx: &[usize]) -> usize {
        let vs: Vec<&Vector> = idx.iter().map(|&i| self.point(i as i64).rep()).collect();
        rank(field, &vs)
    }

    /// Whether every consecutive window of `k` points is independent.
    pub fn is_in_base_space(&self, field: &Field) -> bool {
        (1..=self.n()).all(|i| self.rank_of(field, &(i..i + self.k).collect::<Vec<_>>()) == self.k)
    }

    /// Direct (non-incremental) check against a specification. Used as an
    /// oracle for the search.
    pub fn satisfies(&self, field: &Field, spec: &WindowSpec) -> Result<bool> {
        spec.validate()?;
        if spec.k != self.k || spec.n != self.n() {
            return Err(FriezeError::InvalidParameter("specification shape differs from configuration".into()));
        }
        let ok = |idx: &[usize], r: Requirement| {
            let full = self.rank_of(field, idx) == idx.len();
            match r {
                Requirement::Independent => full,
                Requirement::Dependent => !full,
                Requirement::Unconstrained => true,
            }
        };
        for (i, &r) in spec.windows.iter().enumerate() {
            let idx: Vec<usize> = (i + 1..i + 1 + self.k).collect();
            if !ok(&idx, r) {
                return Ok(false);
            }
        }
        for c in &spec.extras {
            if !ok(&c.indices, c.required) {
                return Ok(false);
            }
        }
        let lift = self.canonical_lift();
        Ok(spec.filters.iter().all(|f| lift::eval_filter(field, self.k, &lift, f)))
    }

    /// Writes the configuration in the stream format: points separated by
    /// spaces, coordinates by commas, elements as packed integers.
    pub fn format(&self, field: &Field) -> String {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let c: Vec<String> = p.rep().entries().iter().map(|&x| field.display(x)).collect();
                c.join(",")
            })
            .collect();
        pts.join(" ")
    }

    /// Parses the stream format written by [`Configuration::format`].
    pub fn parse(field: &Field, line: &str) -> Result<Self> {
        let mut vs = Vec::new();
        for tok in line.split_whitespace() {
            let coords = tok
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|s| {
                    let v: u64 = s
                        .trim()
                        .parse()
                        .map_err(|_| FriezeError::Parse(format!("bad coordinate '{s}' in '{tok}'")))?;
                    field.from_packed(v)
                })
                .collect::<Result<Vec<_>>>()?;
            vs.push(Vector::new(coords));
        }
        let k = vs.first().map(|v| v.len()).unwrap_or(0);
        if vs.iter().any(|v| v.len() != k) {
            return Err(FriezeError::Parse("points of different dimensions".into()));
        }
        Self::from_vectors(field, k, &vs)
    }
}
