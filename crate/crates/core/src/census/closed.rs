//! Closed-form counts of the configuration families.
//!
//! Every formula is a polynomial in `q` and `q^n` with a few fractional
//! exponents (`3n/2`, `4n/3`, …) that are integral exactly on the residue
//! classes where the branch applies; those exponents go through
//! [`Powers::frac`] so a wrong branch fails loudly instead of rounding.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;

use crate::error::{FriezeError, Result};
use crate::family::Family;

struct Powers {
    q: BigInt,
    x: i128,
}

impl Powers {
    fn new(q: u64) -> Self {
        Powers { q: BigInt::from(q), x: q as i128 }
    }

    fn p(&self, e: i64) -> BigInt {
        assert!(e >= 0, "negative exponent {e}");
        self.q.pow(e as u32)
    }

    /// `q^{num/den}`, requiring `den | num`.
    fn frac(&self, num: i64, den: i64) -> Result<BigInt> {
        if num.rem_euclid(den) != 0 {
            return Err(FriezeError::InvariantViolation(format!(
                "non-integral exponent {num}/{den} in a closed form"
            )));
        }
        Ok(self.p(num / den))
    }

    /// A small polynomial in `q`, already evaluated, times a power.
    fn t(&self, coeff: i128, pow: BigInt) -> BigInt {
        BigInt::from(coeff) * pow
    }
}

fn exact_div(num: BigInt, den: i128) -> Result<BigInt> {
    let den = BigInt::from(den);
    let (quo, rem) = num.div_rem(&den);
    if rem.sign() != Sign::NoSign {
        return Err(FriezeError::InvariantViolation(format!("closed form not divisible by {den}")));
    }
    Ok(quo)
}

fn to_count(v: BigInt) -> Result<BigUint> {
    v.to_biguint()
        .ok_or_else(|| FriezeError::InvariantViolation(format!("closed form evaluated to {v}")))
}

/// Exact value of the closed form for `family` at period `n` over GF(q).
pub fn closed_form(family: Family, n: usize, q: u64) -> Result<BigUint> {
    super::check_field_order(q)?;
    if !family.applies_to(n) {
        return Err(FriezeError::InvalidParameter(format!(
            "{} is not defined for n = {n}",
            family.notation()
        )));
    }
    let w = Powers::new(q);
    let n = n as i64;
    let v = match family {
        Family::C3 => c3(&w, n),
        Family::C3Pm => c3_pm(&w, n),
        Family::C3Mm => c3_mm(&w, n),
        Family::C3Star => c3_star(&w, n)?,
        Family::C3StarStar => c3_starstar(&w, n)?,
        Family::C3PmStar => c3_pm_star(&w, n)?,
        Family::C3MmStar => c3_mm_star(&w, n)?,
        Family::C3MmStarStar => c3_mm_starstar(&w, n)?,
        Family::C4 => c4(&w, n)?,
        Family::C4Ppm => c4_ppm(&w, n)?,
        Family::C4Pmm => c4_pmm(&w, n)?,
        Family::C4Mpm => c4_mpm(&w, n)?,
        Family::C4Mmm => c4_mmm(&w, n)?,
        Family::C4PdP => c4_pdp(&w, n)?,
        Family::C4PdM => c4_pdm(&w, n)?,
        Family::C4MdP => c4_mdp(&w, n)?,
        Family::C4DdP => c4_ddp(&w, n)?,
    };
    to_count(v)
}

fn c3(w: &Powers, n: i64) -> BigInt {
    if n % 3 != 0 {
        w.p(2 * n) - w.p(n + 2) - w.p(n + 1) + w.p(3)
    } else {
        w.p(2 * n) + 2 * w.p(n + 2) + 2 * w.p(n + 1) + w.p(3)
    }
}

fn c3_pm(w: &Powers, n: i64) -> BigInt {
    match n % 3 {
        0 => w.p(2 * n - 1) - w.p(n + 2) + w.p(n) - w.p(3),
        1 => w.p(2 * n - 1) + w.p(n + 2) - w.p(n) - w.p(3),
        _ => w.p(2 * n - 1) - w.p(3),
    }
}

fn c3_mm(w: &Powers, n: i64) -> BigInt {
    match n % 3 {
        0 => w.p(2 * n - 2) - w.p(n + 1) - w.p(n) + w.p(3),
        1 => w.p(2 * n - 2) - w.p(n + 2) - w.p(n - 1) + w.p(3),
        _ => w.p(2 * n - 2) + w.p(n + 2) + w.p(n + 1) + w.p(n) + w.p(n - 1) + w.p(3),
    }
}

// The three auxiliary polynomials of the starred k = 3 formulas.
fn f3(x: i128) -> i128 {
    x.pow(3) - x.pow(2) - x - 2
}

fn g3(x: i128) -> i128 {
    x.pow(4) + x.pow(3) - 3 * x.pow(2) - 4 * x - 4
}

fn h3(x: i128) -> i128 {
    2 * x.pow(4) - x.pow(3) - 3 * x.pow(2) - 5 * x - 2
}

fn c3_star(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    let v = w.p(2 * n)
        + w.t(3 * f3(x), w.frac(4 * n, 3)?)
        + w.t(x.pow(5) - 3 * x.pow(4) - 2 * x.pow(3) + 5 * x.pow(2) + 9 * x + 6, w.p(n))
        + w.t(3 * f3(x), w.frac(2 * n + 3, 3)?)
        + w.p(3);
    exact_div(v, (x - 1).pow(2))
}

fn c3_starstar(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    let v = w.p(2 * n)
        + w.t(f3(x), w.frac(4 * n, 3)?)
        + w.t(2 * x * x + 2 * x, w.p(n))
        + w.t(f3(x), w.frac(2 * n + 3, 3)?)
        + w.p(3);
    exact_div(v, x - 1)
}

fn c3_pm_star(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    let v = match n % 3 {
        0 => {
            w.p(2 * n - 1) + w.t(f3(x), w.frac(4 * n - 3, 3)?) + w.t(1 - x * x, w.p(n))
                - w.t(f3(x), w.frac(2 * n + 3, 3)?)
                - w.p(3)
        }
        1 => {
            w.p(2 * n - 1) + w.t(f3(x), w.frac(4 * (n - 1) + 3, 3)?) + w.t(x * x - 1, w.p(n))
                - w.t(f3(x), w.frac(2 * (n - 1) + 3, 3)?)
                - w.p(3)
        }
        _ => {
            w.p(2 * n - 1) + w.t(f3(x), w.frac(4 * (n - 2) + 6, 3)?)
                - w.t(f3(x), w.frac(2 * (n - 2) + 6, 3)?)
                - w.p(3)
        }
    };
    exact_div(v, x - 1)
}

fn c3_mm_star(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    let v = w.p(2 * n - 2)
        + w.t(g3(x), w.frac(4 * (n - 2) + 3, 3)?)
        + w.t(x.pow(5) - 3 * x.pow(4) - x.pow(3) + 4 * x.pow(2) + 8 * x + 7, w.p(n - 1))
        + w.t(h3(x), w.frac(2 * (n - 2) + 3, 3)?)
        + w.p(3);
    exact_div(v, (x - 1).pow(2))
}

fn c3_mm_starstar(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    let v = w.p(2 * n - 2)
        + w.t(f3(x), w.frac(4 * (n - 2) + 3, 3)?)
        + w.t(x.pow(3) + x.pow(2) + x + 1, w.p(n - 1))
        + w.t(f3(x), w.frac(2 * (n - 2) + 6, 3)?)
        + w.p(3);
    exact_div(v, x - 1)
}

fn c4(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    let a = x.pow(3) + x.pow(2) + x;
    let b = x.pow(5) + x.pow(4) + x.pow(3);
    Ok(match num_integer::gcd(n, 4) {
        1 => w.p(3 * n) - w.t(a, w.p(2 * n)) + w.t(b, w.p(n)) - w.p(6),
        2 => {
            w.p(3 * n) - w.t(a, w.p(2 * n)) + w.t(2 * (x.pow(4) + x.pow(2)), w.frac(3 * n, 2)?)
                - w.t(b, w.p(n))
                + w.p(6)
        }
        _ => {
            w.p(3 * n)
                + w.t(3 * a, w.p(2 * n))
                + w.t(2 * (x.pow(4) + x.pow(2)), w.frac(3 * n, 2)?)
                + w.t(3 * b, w.p(n))
                + w.p(6)
        }
    })
}

fn c4_ppm(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 1) - w.t(x.pow(3) - x.pow(2) - x - 2, w.p(2 * n))
                - w.t(x.pow(4) - x.pow(3) + x.pow(2) - x, w.frac(3 * n, 2)?)
                - w.t(2 * x.pow(5) + x.pow(4) + x.pow(3) - x.pow(2), w.p(n))
                - w.p(6)
        }
        1 => {
            w.p(3 * n - 1) + w.t(x.pow(3) - 1, w.p(2 * n))
                - w.t(x.pow(2) + 1, w.frac(3 * (n + 1), 2)?)
                - w.t(x.pow(5) - x.pow(2), w.p(n))
                + w.p(6)
        }
        2 => {
            w.p(3 * n - 1) - w.t(x.pow(2) + x + 1, w.p(2 * n))
                - w.t(x.pow(4) - x.pow(3) + x.pow(2) - x, w.frac(3 * n, 2)?)
                + w.t(x.pow(5) + x.pow(4) + x.pow(3), w.p(n))
                - w.p(6)
        }
        _ => w.p(3 * n - 1) - w.t(x.pow(2) + 1, w.frac(3 * (n + 1), 2)?) + w.p(6),
    })
}

fn c4_pmm(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 2) - w.t(x.pow(3) - 1, w.p(2 * n - 1)) - w.t(x.pow(3) + x, w.frac(3 * n, 2)?)
                + w.t(x.pow(5) - x.pow(2), w.p(n))
                + w.p(6)
        }
        1 => {
            w.p(3 * n - 2) - w.t(x.pow(4) + x.pow(2) + 1, w.p(2 * n - 1))
                + w.t(x.pow(5) - x.pow(4) + x.pow(3) - x.pow(2), w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(5) + x.pow(3) + x, w.p(n))
                - w.p(6)
        }
        2 => {
            w.p(3 * n - 2) + w.t(x.pow(4) + x.pow(3) - x - 1, w.p(2 * n - 1))
                - w.t(x.pow(3) + x, w.frac(3 * n, 2)?)
                - w.t(x.pow(5) + x.pow(4) - x.pow(2) - x, w.p(n))
                + w.p(6)
        }
        _ => {
            w.p(3 * n - 2) + w.t(x.pow(2) + x + 1, w.p(2 * n - 1))
                + w.t(x.pow(5) - x.pow(4) + x.pow(3) - x.pow(2), w.frac(3 * (n - 1), 2)?)
                - w.t(x.pow(5) + x.pow(4) + x.pow(3), w.p(n))
                - w.p(6)
        }
    })
}

fn c4_mpm(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 2) - w.t(2 * x.pow(3) + x.pow(2) + x - 1, w.p(2 * n - 1))
                + w.t((x.pow(2) + 1).pow(2), w.frac(3 * n, 2)?)
                + w.t(x.pow(5) - x.pow(4) - x.pow(3) - 2 * x.pow(2), w.p(n))
                + w.p(6)
        }
        1 => {
            w.p(3 * n - 2)
                + w.t(2 * x.pow(3) + x.pow(2) + x - 1, w.p(2 * n - 1))
                + w.t(x.pow(5) - x.pow(4) + x.pow(3) - x.pow(2), w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(5) - x.pow(4) - x.pow(3) - 2 * x.pow(2), w.p(n))
                - w.p(6)
        }
        2 => {
            w.p(3 * n - 2) - w.t(x.pow(2) + x + 1, w.p(2 * n - 1))
                + w.t((x.pow(2) + 1).pow(2), w.frac(3 * n, 2)?)
                - w.t(x.pow(5) + x.pow(4) + x.pow(3), w.p(n))
                + w.p(6)
        }
        _ => {
            w.p(3 * n - 2) + w.t(x.pow(2) + x + 1, w.p(2 * n - 1))
                + w.t(x.pow(5) - x.pow(4) + x.pow(3) - x.pow(2), w.frac(3 * (n - 1), 2)?)
                - w.t(x.pow(5) + x.pow(4) + x.pow(3), w.p(n))
                - w.p(6)
        }
    })
}

fn c4_mmm(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 3) - w.t(x.pow(3) + x.pow(2) + x, w.p(2 * n - 2))
                + w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(n))
                - w.p(6)
        }
        1 => {
            w.p(3 * n - 3) - w.t(x.pow(4) + x.pow(2) + 1, w.p(2 * n - 2))
                + w.t(2 * (x.pow(4) + x.pow(2)), w.frac(3 * (n - 1), 2)?)
                - w.t(x.pow(5) + x.pow(3) + x, w.p(n))
                + w.p(6)
        }
        2 => {
            w.p(3 * n - 3) - w.t(x.pow(5) + x + 1, w.p(2 * n - 2)) + w.t(x.pow(5) + x.pow(4) + 1, w.p(n))
                - w.p(6)
        }
        _ => {
            w.p(3 * n - 3)
                + w.t(x.pow(5) + x.pow(4) + x.pow(3) + 2 * x.pow(2) + 2 * x + 2, w.p(2 * n - 2))
                + w.t(2 * (x.pow(4) + x.pow(2)), w.frac(3 * (n - 1), 2)?)
                + w.t(2 * x.pow(5) + 2 * x.pow(4) + 2 * x.pow(3) + x.pow(2) + x + 1, w.p(n))
                + w.p(6)
        }
    })
}

fn c4_pdp(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 2) - w.t(x.pow(3) - 1, w.p(2 * n - 1)) - w.t(x.pow(3) + x, w.frac(3 * n, 2)?)
                + w.t(x.pow(5) - x.pow(2), w.p(n))
                + w.p(6)
        }
        1 => {
            w.p(3 * n - 2)
                + w.t(2 * x.pow(3) + x.pow(2) + x - 1, w.p(2 * n - 1))
                + w.t(x.pow(5) - x.pow(4) + x.pow(3) - x.pow(2), w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(5) - x.pow(4) - x.pow(3) - 2 * x.pow(2), w.p(n))
                - w.p(6)
        }
        2 => w.p(3 * n - 2) - w.t(x.pow(3) + x, w.frac(3 * n, 2)?) + w.p(6),
        _ => {
            w.p(3 * n - 2) - w.t(x.pow(3) + x.pow(2) + x, w.p(2 * n - 1))
                + w.t(x.pow(5) - x.pow(4) + x.pow(3) - x.pow(2), w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(n))
                - w.p(6)
        }
    })
}

fn c4_pdm(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 3) + w.t(x.pow(2) + x + 1, w.p(2 * n - 2))
                - w.t(x.pow(5) + x.pow(4) + x.pow(3), w.p(n))
                - w.p(6)
        }
        1 => {
            w.p(3 * n - 3) - w.t(x.pow(4) + x.pow(2) + 1, w.p(2 * n - 2))
                + w.t(2 * (x.pow(4) + x.pow(2)), w.frac(3 * (n - 1), 2)?)
                - w.t(x.pow(5) + x.pow(3) + x, w.p(n))
                + w.p(6)
        }
        2 => {
            w.p(3 * n - 3) + w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(2 * n - 2))
                - w.t(x.pow(3) + x.pow(2) + x, w.p(n))
                - w.p(6)
        }
        _ => {
            w.p(3 * n - 3) - w.t(x.pow(3) + x.pow(2) + x, w.p(2 * n - 2))
                + w.t(2 * (x.pow(4) + x.pow(2)), w.frac(3 * (n - 1), 2)?)
                - w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(n))
                + w.p(6)
        }
    })
}

fn c4_mdp(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 3) - w.t(x.pow(3) + x.pow(2) + x, w.p(2 * n - 2))
                + w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(n))
                - w.p(6)
        }
        1 => {
            w.p(3 * n - 3) - w.t(x.pow(4) - x.pow(3) - x + 1, w.p(2 * n - 2))
                - w.t(x.pow(5) - x.pow(4) + 2 * x.pow(3) - x.pow(2) + x, w.frac(3 * (n - 1), 2)?)
                - w.t(x.pow(5) - x.pow(4) - x.pow(2) + x, w.p(n))
                + w.p(6)
        }
        2 => {
            w.p(3 * n - 3) + w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(2 * n - 2))
                - w.t(x.pow(3) + x.pow(2) + x, w.p(n))
                - w.p(6)
        }
        _ => {
            w.p(3 * n - 3) - w.t(x.pow(3) - 1, w.p(2 * n - 2))
                - w.t(x.pow(5) - x.pow(4) + 2 * x.pow(3) - x.pow(2) + x, w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(5) - x.pow(2), w.p(n))
                + w.p(6)
        }
    })
}

fn c4_ddp(w: &Powers, n: i64) -> Result<BigInt> {
    let x = w.x;
    Ok(match n % 4 {
        0 => {
            w.p(3 * n - 4) - w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(2 * n - 3))
                + w.t(x.pow(4) + 2 * x.pow(2) + 1, w.frac(3 * n - 2, 2)?)
                - w.t(x.pow(3) + x.pow(2) + x, w.p(n))
                + w.p(6)
        }
        1 => {
            w.p(3 * n - 4) - w.t(x.pow(4) + x.pow(2) + 1, w.p(2 * n - 3))
                - w.t(x.pow(4) - x.pow(3) + x.pow(2) - x, w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(5) + x.pow(3) + x, w.p(n))
                - w.p(6)
        }
        2 => {
            w.p(3 * n - 4)
                + w.t(2 * x.pow(4) + 2 * x.pow(3) + 3 * x.pow(2) + x + 1, w.p(2 * n - 3))
                + w.t(x.pow(4) + 2 * x.pow(2) + 1, w.frac(3 * n - 2, 2)?)
                + w.t(x.pow(5) + x.pow(4) + 3 * x.pow(3) + 2 * x.pow(2) + 2 * x, w.p(n))
                + w.p(6)
        }
        _ => {
            w.p(3 * n - 4) - w.t(x.pow(3) + x.pow(2) + x, w.p(2 * n - 3))
                - w.t(x.pow(4) - x.pow(3) + x.pow(2) - x, w.frac(3 * (n - 1), 2)?)
                + w.t(x.pow(4) + x.pow(3) + x.pow(2), w.p(n))
                - w.p(6)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn known_values() {
        assert_eq!(closed_form(Family::C3, 4, 2).unwrap(), big(168));
        assert_eq!(closed_form(Family::C3Star, 6, 3).unwrap(), big(203_580));
        assert_eq!(closed_form(Family::C4, 7, 2).unwrap(), big(1_874_880));
        assert_eq!(closed_form(Family::C3Mm, 3, 5).unwrap(), big(0));
    }

    #[test]
    fn residue_mismatch_is_rejected() {
        assert!(matches!(closed_form(Family::C3Star, 7, 2), Err(FriezeError::InvalidParameter(_))));
        assert!(matches!(closed_form(Family::C3MmStar, 6, 2), Err(FriezeError::InvalidParameter(_))));
    }

    #[test]
    fn fractional_exponent_guard() {
        let w = Powers::new(3);
        assert!(w.frac(7, 2).is_err());
        assert_eq!(w.frac(6, 2).unwrap(), BigInt::from(27));
    }
}
