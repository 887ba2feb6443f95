use num_bigint::BigUint;

use super::lift::{coefficients_of_lift, constant_det_lift, twisted_vector};
use super::Configuration;
use crate::error::{FriezeError, Result};
use crate::gf::Field;
use crate::projlin::{enumerate_invertible, normalize, rank, Vector};

/// The maximal direct-sum decomposition `K^k = U_1 ⊕ … ⊕ U_r` compatible
/// with a configuration, together with the residue map it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Parts of Z/g, residues written `1..=g`. Ordered by dimension, then by
    /// smallest residue.
    pub residue_partition: Vec<Vec<usize>>,
    /// A basis of `U_t` for each part (chosen among the lift vectors).
    pub subspaces: Vec<Vec<Vector>>,
    /// Sorted `(dim U_1, …, dim U_r)`.
    pub dims: Vec<usize>,
}

impl Decomposition {
    /// Number of parts r.
    pub fn parts(&self) -> usize {
        self.dims.len()
    }

    /// The part containing residue class of `i` (1-based).
    pub fn part_of(&self, i: usize) -> usize {
        let g: usize = self.residue_partition.iter().map(Vec::len).sum();
        let r = (i - 1) % g + 1;
        self.residue_partition.iter().position(|p| p.contains(&r)).expect("partition covers Z/g")
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Computes the maximal decomposition from the zero pattern of the
/// coefficients and verifies it geometrically.
pub fn maximal_decomposition(field: &Field, config: &Configuration) -> Result<Decomposition> {
    let lift = constant_det_lift(field, config)?.ok_or_else(|| {
        FriezeError::PreconditionViolation("configuration has no lift with constant determinants".into())
    })?;
    let coeffs = coefficients_of_lift(field, &lift)?;
    let (k, n, g) = (config.k(), config.n(), config.g());

    // V_i involves V_{i+j} exactly when a_{k−j, i+j−1} ≠ 0.
    let mut parent: Vec<usize> = (0..g).collect();
    for i in 1..=n {
        for j in 1..k {
            if !coeffs.get(k - j, (i + j - 1) as i64).is_zero() {
                let (a, b) = (find(&mut parent, (i - 1) % g), find(&mut parent, (i + j - 1) % g));
                parent[a] = b;
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut root_of_part: Vec<usize> = Vec::new();
    for r in 0..g {
        let root = find(&mut parent, r);
        match root_of_part.iter().position(|&x| x == root) {
            Some(p) => parts[p].push(r + 1),
            None => {
                root_of_part.push(root);
                parts.push(vec![r + 1]);
            }
        }
    }

    let mut bases: Vec<Vec<Vector>> = Vec::new();
    for part in &parts {
        let mut basis: Vec<Vector> = Vec::new();
        for i in (1..=n).filter(|i| part.contains(&((i - 1) % g + 1))) {
            let v = twisted_vector(field, k, &lift.vectors, i as i64);
            let mut trial: Vec<&Vector> = basis.iter().collect();
            trial.push(&v);
            if rank(field, &trial) == trial.len() {
                basis.push(v);
            }
        }
        bases.push(basis);
    }
    let total: usize = bases.iter().map(Vec::len).sum();
    let all: Vec<&Vector> = bases.iter().flatten().collect();
    if total != k || rank(field, &all) != k {
        return Err(FriezeError::InvariantViolation(format!(
            "subspaces from the coefficient graph do not form a direct sum of K^{k}"
        )));
    }

    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&p| (bases[p].len(), parts[p][0]));
    let residue_partition: Vec<Vec<usize>> = order.iter().map(|&p| parts[p].clone()).collect();
    let subspaces: Vec<Vec<Vector>> = order.iter().map(|&p| bases[p].clone()).collect();
    let dims = subspaces.iter().map(Vec::len).collect();
    Ok(Decomposition { residue_partition, subspaces, dims })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerMethod {
    /// `(q − 1)^{r − 1}` from the maximal decomposition.
    Formula,
    /// Count of GL matrices fixing every point, divided by `q − 1`.
    BruteForce { gl_cap: u64 },
}

/// Order of the stabilizer of `config` in PGL(k, q).
pub fn stabilizer_order(field: &Field, config: &Configuration, method: StabilizerMethod) -> Result<BigUint> {
    match method {
        StabilizerMethod::Formula => {
            let r = maximal_decomposition(field, config)?.parts();
            Ok(BigUint::from(field.q() - 1).pow(r as u32 - 1))
        }
        StabilizerMethod::BruteForce { gl_cap } => {
            let k = config.k();
            let mats = enumerate_invertible(k, field, gl_cap)?;
            let fixing = mats
                .iter()
                .filter(|m| {
                    config.points().iter().all(|p| normalize(field, &m.mul_vec(field, p.rep())).as_ref() == Some(p))
                })
                .count();
            Ok(BigUint::from(fixing as u64 / (field.q() as u64 - 1)))
        }
    }
}
