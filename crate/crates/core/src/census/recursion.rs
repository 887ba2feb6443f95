//! Bottom-up evaluation of the coupled recursions between the families.
//!
//! Three systems: the signed k = 3 families (from n = 3), the starred k = 3
//! families (cycling through n mod 3, fed by the first system) and the nine
//! k = 4 families (from n = 4).

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{FriezeError, Result};
use crate::family::Family;

type Table = HashMap<(Family, usize), BigUint>;

struct System {
    q: BigUint,
    qm1: BigUint,
    values: Table,
}

impl System {
    fn new(q: u64) -> Self {
        System { q: BigUint::from(q), qm1: BigUint::from(q - 1), values: HashMap::new() }
    }

    fn get(&self, f: Family, n: usize) -> &BigUint {
        self.values.get(&(f, n)).unwrap_or_else(|| panic!("{} at n = {n} not yet evaluated", f.id()))
    }

    fn set(&mut self, f: Family, n: usize, v: BigUint) {
        self.values.insert((f, n), v);
    }

    /// (q − 1)^a q^b.
    fn w(&self, a: u32, b: u32) -> BigUint {
        self.qm1.pow(a) * self.q.pow(b)
    }

    fn k3(&mut self, upto: usize) {
        use Family::*;
        let q = self.q.clone();
        let c3_3 = (&q * &q + &q + 1u32) * (&q * &q + &q) * &q * &q;
        self.set(C3, 2, BigUint::zero());
        self.set(C3, 3, c3_3);
        self.set(C3Pm, 3, BigUint::zero());
        self.set(C3Mm, 3, BigUint::zero());
        for n in 4..=upto {
            let (a, b, c) = (self.get(C3, n - 1), self.get(C3Pm, n - 1), self.get(C3Mm, n - 1));
            let c3 = self.w(2, 0) * a + self.w(1, 1) * 2u32 * b + self.w(0, 2) * c;
            let pm = self.w(1, 0) * a + self.w(0, 1) * b;
            let mm = self.w(1, 0) * b + self.w(0, 1) * self.get(C3, n - 2);
            self.set(C3, n, c3);
            self.set(C3Pm, n, pm);
            self.set(C3Mm, n, mm);
        }
    }

    fn k3_star(&mut self, upto: usize) {
        use Family::*;
        self.k3(upto);
        let c3_3 = self.get(C3, 3).clone();
        self.set(C3Star, 3, c3_3.clone());
        self.set(C3StarStar, 3, c3_3);
        self.set(C3PmStar, 3, BigUint::zero());
        for n in 4..=upto {
            let a1 = self.get(C3, n - 1).clone();
            let pms1 = self.get(C3PmStar, n - 1).clone();
            match n % 3 {
                1 => {
                    let v = self.w(1, 0) * self.get(C3StarStar, n - 1) + self.w(0, 1) * &pms1;
                    self.set(C3PmStar, n, v);
                }
                2 => {
                    let pms = &a1 + self.w(0, 1) * &pms1;
                    let mms = &pms1 + self.w(0, 1) * self.get(C3Star, n - 2);
                    let mmss = self.get(C3Pm, n - 1) + self.w(0, 1) * self.get(C3StarStar, n - 2);
                    self.set(C3PmStar, n, pms);
                    self.set(C3MmStar, n, mms);
                    self.set(C3MmStarStar, n, mmss);
                }
                _ => {
                    let s = &a1 + self.w(0, 1) * 2u32 * &pms1 + self.w(0, 2) * self.get(C3MmStar, n - 1);
                    let ss = self.w(1, 0) * &a1
                        + self.w(0, 1) * self.get(C3Pm, n - 1)
                        + self.w(1, 1) * &pms1
                        + self.w(0, 2) * self.get(C3MmStarStar, n - 1);
                    let pms = &a1 + self.w(0, 1) * &pms1;
                    self.set(C3Star, n, s);
                    self.set(C3StarStar, n, ss);
                    self.set(C3PmStar, n, pms);
                }
            }
        }
    }

    fn k4(&mut self, upto: usize) {
        use Family::*;
        let q = self.q.clone();
        let q2 = &q * &q;
        let q3 = &q2 * &q;
        self.set(C4, 3, BigUint::zero());
        self.set(C4, 4, (&q3 + &q2 + &q + 1u32) * (&q3 + &q2 + &q) * (&q3 + &q2) * &q3);
        for f in [C4Ppm, C4Pmm, C4Mpm, C4Mmm, C4PdP, C4PdM, C4MdP, C4DdP] {
            self.set(f, 4, BigUint::zero());
        }
        for n in 5..=upto {
            let p = |s: &Self, f: Family| s.get(f, n - 1).clone();
            let (c4, ppm, pmm, mpm, mmm) = (p(self, C4), p(self, C4Ppm), p(self, C4Pmm), p(self, C4Mpm), p(self, C4Mmm));
            let (pdp, pdm, mdp, ddp) = (p(self, C4PdP), p(self, C4PdM), p(self, C4MdP), p(self, C4DdP));
            let next = [
                (
                    C4,
                    self.w(3, 0) * &c4
                        + self.w(2, 1) * 3u32 * &ppm
                        + self.w(1, 2) * 2u32 * &pmm
                        + self.w(1, 2) * &mpm
                        + self.w(0, 3) * &mmm,
                ),
                (C4Ppm, self.w(2, 0) * &c4 + self.w(1, 1) * 2u32 * &ppm + self.w(0, 2) * &pmm),
                (
                    C4Pmm,
                    self.w(2, 0) * &ppm + self.w(1, 1) * &mpm + self.w(1, 1) * &pdp + self.w(0, 2) * &mdp,
                ),
                (C4Mpm, self.w(1, 0) * &c4 + self.w(1, 1) * &pdp + self.w(0, 2) * &pdm),
                (
                    C4Mmm,
                    self.w(2, 0) * &pmm + self.w(1, 1) * &pdm + self.w(1, 1) * &mdp + self.w(0, 2) * &ddp,
                ),
                (C4PdP, self.w(1, 0) * &c4 + self.w(0, 1) * &ppm),
                (C4PdM, self.w(1, 0) * &ppm + self.w(0, 1) * &mpm),
                (C4MdP, self.w(1, 0) * &ppm + self.w(0, 1) * &pdp),
                (C4DdP, self.w(1, 0) * &pdp + self.w(0, 1) * self.get(C4, n - 2)),
            ];
            for (f, v) in next {
                self.set(f, n, v);
            }
        }
    }
}

/// Evaluates `family` at period `n` over GF(q) by running its recursion
/// system up from the base values.
pub fn recursion_eval(family: Family, n: usize, q: u64) -> Result<BigUint> {
    super::check_field_order(q)?;
    if !family.applies_to(n) {
        return Err(FriezeError::InvalidParameter(format!(
            "{} has no recursion value at n = {n} (defined from n = {}{})",
            family.notation(),
            family.min_n(),
            match family {
                Family::C3Star | Family::C3StarStar => ", n ≡ 0 mod 3",
                Family::C3MmStar | Family::C3MmStarStar => ", n ≡ 2 mod 3",
                _ => "",
            }
        )));
    }
    Ok(recursion_table(family, n, q).remove(&(family, n)).expect("value computed"))
}

/// Every value of the system containing `family` for periods up to `upto`.
fn recursion_table(family: Family, upto: usize, q: u64) -> Table {
    let mut sys = System::new(q);
    if family.k() == 4 {
        sys.k4(upto);
    } else if family.is_starred() {
        sys.k3_star(upto);
    } else {
        sys.k3(upto);
    }
    sys.values
}

/// `(n, value)` for every n in `family.min_n()..=upto` where the family is
/// defined; one pass over the recursion.
pub fn recursion_series(family: Family, upto: usize, q: u64) -> Result<Vec<(usize, BigUint)>> {
    super::check_field_order(q)?;
    let mut table = recursion_table(family, upto, q);
    Ok((family.min_n()..=upto)
        .filter(|&n| family.applies_to(n))
        .map(|n| (n, table.remove(&(family, n)).expect("value computed")))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_examples() {
        assert_eq!(recursion_eval(Family::C3, 4, 2).unwrap(), BigUint::from(168u32));
        assert_eq!(recursion_eval(Family::C4, 4, 2).unwrap(), BigUint::from(15u32 * 14 * 12 * 8));
        assert_eq!(recursion_eval(Family::C3Mm, 3, 7).unwrap(), BigUint::zero());
    }

    #[test]
    fn below_base_is_rejected() {
        assert!(recursion_eval(Family::C4Ppm, 3, 2).is_err());
        assert!(recursion_eval(Family::C3Star, 4, 2).is_err());
    }
}
