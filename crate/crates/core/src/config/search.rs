use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;

use super::lift::eval_filter;
use super::spec::{Requirement, WindowSpec};
use super::Configuration;
use crate::error::{FriezeError, Result};
use crate::gf::Field;
use crate::limits::Limits;
use crate::projlin::{all_proj_points, ProjPoint, Vector};

/// A rank test scheduled at the depth where its last point is placed.
#[derive(Clone, Debug)]
struct Check {
    /// 0-based positions in the tuple.
    positions: Vec<usize>,
    independent: bool,
}

/// Exhaustive depth-first enumeration of the configurations satisfying a
/// [`WindowSpec`]. Points are tried in `all_proj_points` order, so the
/// stream order is fixed.
pub struct ConfigSearch {
    field: Field,
    spec: WindowSpec,
    points: Vec<ProjPoint>,
    /// Coordinates of `points`, flattened, as raw field indices.
    coords: Vec<u16>,
    checks: Vec<Vec<Check>>,
}

/// Nodes are flushed to the shared counter in batches of at most this size;
/// small caps use smaller batches so the overshoot stays proportionate.
const FLUSH: u64 = 1 << 14;

struct Budget<'a> {
    shared: &'a AtomicU64,
    cap: u64,
    batch: u64,
    local: u64,
    stop: &'a AtomicBool,
}

impl Budget<'_> {
    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local >= self.batch {
            self.flush()
        } else {
            true
        }
    }

    fn flush(&mut self) -> bool {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.cap {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

impl ConfigSearch {
    pub fn new(field: &Field, spec: &WindowSpec) -> Result<Self> {
        spec.validate()?;
        let (k, n) = (spec.k, spec.n);
        if k > 8 {
            return Err(FriezeError::Unsupported(format!("configuration search supports k ≤ 8, got {k}")));
        }
        let points = all_proj_points(k, field);
        let coords = points
            .iter()
            .flat_map(|p| p.rep().entries().iter().map(|x| x.index() as u16))
            .collect();
        let mut checks: Vec<Vec<Check>> = vec![Vec::new(); n];
        let mut schedule = |idx: Vec<usize>, r: Requirement| {
            if r == Requirement::Unconstrained {
                return;
            }
            let positions: Vec<usize> = idx.iter().map(|&i| (i - 1) % n).collect();
            let depth = *positions.iter().max().expect("nonempty");
            checks[depth].push(Check { positions, independent: r == Requirement::Independent });
        };
        for (i, &r) in spec.windows.iter().enumerate() {
            schedule((i + 1..i + 1 + k).collect(), r);
        }
        for c in &spec.extras {
            schedule(c.indices.clone(), c.required);
        }
        Ok(ConfigSearch { field: field.clone(), spec: spec.clone(), points, coords, checks })
    }

    pub fn spec(&self) -> &WindowSpec {
        &self.spec
    }

    /// The point table; search results are indices into it.
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn configuration(&self, idx: &[usize]) -> Configuration {
        Configuration::new(self.spec.k, idx.iter().map(|&i| self.points[i].clone()).collect())
            .expect("search produces well-formed configurations")
    }

    fn passes(&self, prefix: &[usize], depth: usize) -> bool {
        let k = self.spec.k;
        let mut buf = [0u16; 64];
        for check in &self.checks[depth] {
            let rows = check.positions.len();
            for (r, &pos) in check.positions.iter().enumerate() {
                let p = prefix[pos];
                buf[r * k..(r + 1) * k].copy_from_slice(&self.coords[p * k..(p + 1) * k]);
            }
            let full = self.field.rank_raw(&mut buf[..rows * k], rows, k) == rows;
            if full != check.independent {
                return false;
            }
        }
        true
    }

    fn leaf_ok(&self, prefix: &[usize]) -> bool {
        if self.spec.filters.is_empty() {
            return true;
        }
        let lift: Vec<Vector> = prefix.iter().map(|&i| self.points[i].rep().clone()).collect();
        self.spec.filters.iter().all(|f| eval_filter(&self.field, self.spec.k, &lift, f))
    }

    fn dfs(
        &self,
        prefix: &mut Vec<usize>,
        budget: &mut Budget<'_>,
        visit: &mut dyn FnMut(&[usize]),
    ) -> bool {
        let depth = prefix.len();
        for p in 0..self.points.len() {
            if !budget.tick() {
                return false;
            }
            prefix.push(p);
            if self.passes(prefix, depth) {
                if depth + 1 == self.spec.n {
                    if self.leaf_ok(prefix) {
                        visit(prefix);
                    }
                } else if !self.dfs(prefix, budget, visit) {
                    prefix.pop();
                    return false;
                }
            }
            prefix.pop();
        }
        true
    }

    fn limit_error(&self, visited: u64, cap: u64) -> FriezeError {
        FriezeError::ResourceLimit {
            what: format!(
                "configuration search (k = {}, n = {}, q = {})",
                self.spec.k,
                self.spec.n,
                self.field.q()
            ),
            visited,
            cap,
        }
    }

    /// Runs the search below the first point `first`.
    fn run_from(
        &self,
        first: usize,
        shared: &AtomicU64,
        stop: &AtomicBool,
        cap: u64,
        visit: &mut dyn FnMut(&[usize]),
    ) -> bool {
        let mut budget = Budget { shared, cap, batch: (cap / 64).clamp(1, FLUSH), local: 0, stop };
        let mut prefix = Vec::with_capacity(self.spec.n);
        let mut ok = budget.tick();
        if ok {
            prefix.push(first);
            if self.passes(&prefix, 0) {
                ok = if self.spec.n == 1 {
                    if self.leaf_ok(&prefix) {
                        visit(&prefix);
                    }
                    true
                } else {
                    self.dfs(&mut prefix, &mut budget, visit)
                };
            }
        }
        ok && budget.flush()
    }

    /// Number of configurations; parallel over the choice of `v_1`.
    pub fn count(&self, limits: &Limits) -> Result<BigUint> {
        let shared = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        let per_first: Vec<(bool, u64)> = limits.install(|| {
            (0..self.points.len())
                .into_par_iter()
                .map(|first| {
                    let mut found = 0u64;
                    let ok = self.run_from(first, &shared, &stop, limits.node_cap, &mut |_| found += 1);
                    (ok, found)
                })
                .collect()
        });
        if per_first.iter().any(|&(ok, _)| !ok) {
            return Err(self.limit_error(shared.load(Ordering::Relaxed), limits.node_cap));
        }
        Ok(per_first.iter().map(|&(_, c)| BigUint::from(c)).sum())
    }

    /// Calls `visit` with point-table indices of every configuration, in
    /// search order. Returns the count.
    pub fn for_each(&self, limits: &Limits, mut visit: impl FnMut(&[usize])) -> Result<BigUint> {
        let shared = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        let mut found = 0u64;
        for first in 0..self.points.len() {
            let ok = self.run_from(first, &shared, &stop, limits.node_cap, &mut |idx| {
                found += 1;
                visit(idx)
            });
            if !ok {
                return Err(self.limit_error(shared.load(Ordering::Relaxed), limits.node_cap));
            }
        }
        Ok(BigUint::from(found))
    }

    /// All solutions as index tuples (compact), in search order.
    pub fn indices(&self, limits: &Limits) -> Result<Vec<Vec<u16>>> {
        let mut out = Vec::new();
        self.for_each(limits, |idx| out.push(idx.iter().map(|&i| i as u16).collect()))?;
        Ok(out)
    }

    /// Nodes a search visits (for diagnostics and budget tuning).
    pub fn nodes_visited(&self, limits: &Limits) -> Result<u64> {
        let shared = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        for first in 0..self.points.len() {
            if !self.run_from(first, &shared, &stop, limits.node_cap, &mut |_| {}) {
                return Err(self.limit_error(shared.load(Ordering::Relaxed), limits.node_cap));
            }
        }
        Ok(shared.load(Ordering::Relaxed))
    }
}

/// Exact size of the space described by `spec`.
pub fn count_configs(field: &Field, spec: &WindowSpec, limits: &Limits) -> Result<BigUint> {
    ConfigSearch::new(field, spec)?.count(limits)
}

/// Every configuration in the space, in search order.
pub fn enumerate_configs(field: &Field, spec: &WindowSpec, limits: &Limits) -> Result<Vec<Configuration>> {
    let search = ConfigSearch::new(field, spec)?;
    let mut out = Vec::new();
    search.for_each(limits, |idx| out.push(search.configuration(idx)))?;
    Ok(out)
}
