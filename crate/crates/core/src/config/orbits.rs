use std::collections::HashMap;

use crate::error::Result;
use crate::gf::Field;
use crate::projlin::{enumerate_invertible, normalize, ProjPoint};

/// GL(k, q) acting on a table of projective points, one permutation per
/// matrix.
pub struct GroupAction {
    perms: Vec<Vec<u16>>,
    q: u64,
}

impl GroupAction {
    /// `points` must be closed under the action (e.g. all of P^{k−1}).
    pub fn new(field: &Field, k: usize, points: &[ProjPoint], gl_cap: u64) -> Result<Self> {
        let index: HashMap<&ProjPoint, u16> = points.iter().enumerate().map(|(i, p)| (p, i as u16)).collect();
        let perms = enumerate_invertible(k, field, gl_cap)?
            .iter()
            .map(|m| {
                points
                    .iter()
                    .map(|p| {
                        let img = normalize(field, &m.mul_vec(field, p.rep())).expect("invertible");
                        index[&img]
                    })
                    .collect()
            })
            .collect();
        Ok(GroupAction { perms, q: field.q() as u64 })
    }

    pub fn gl_order(&self) -> u64 {
        self.perms.len() as u64
    }

    pub fn pgl_order(&self) -> u64 {
        self.gl_order() / (self.q - 1)
    }

    /// Image of a configuration (as point indices) under matrix `m`.
    pub fn apply(&self, m: usize, config: &[u16]) -> Vec<u16> {
        config.iter().map(|&p| self.perms[m][p as usize]).collect()
    }

    /// Number of elements of PGL fixing every point of `config`.
    pub fn stabilizer(&self, config: &[u16]) -> u64 {
        let fixing = (0..self.perms.len()).filter(|&m| self.apply(m, config) == config).count() as u64;
        fixing / (self.q - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Indices into the configuration list passed to [`orbit_partition`].
    pub members: Vec<usize>,
    /// PGL-stabilizer order of the first member, counted directly.
    pub stabilizer: u64,
}

/// Splits an action-closed list of configurations into PGL-orbits by brute
/// force expansion.
pub fn orbit_partition(action: &GroupAction, configs: &[Vec<u16>]) -> Vec<Orbit> {
    let index: HashMap<&[u16], usize> = configs.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut seen = vec![false; configs.len()];
    let mut orbits = Vec::new();
    for start in 0..configs.len() {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut fixing = 0u64;
        for m in 0..action.perms.len() {
            let img = action.apply(m, &configs[start]);
            if img == configs[start] {
                fixing += 1;
            }
            if let Some(&j) = index.get(img.as_slice()) {
                if !seen[j] {
                    seen[j] = true;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(Orbit { members, stabilizer: fixing / (action.q - 1) });
    }
    orbits
}
