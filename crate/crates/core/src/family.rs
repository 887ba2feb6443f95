//! Names of the counted point-configuration families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FriezeError;

/// One counted set of point configurations. Signs follow the usual notation:
/// `+`/`−` record whether a trailing window is independent, `(−)` marks a
/// dependent consecutive triple and `[s]` the sign of the extra quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// C_3(n)
    C3,
    /// C_3^{+−}(n)
    C3Pm,
    /// C_3^{−−}(n)
    C3Mm,
    /// C_3^*(n), 3 | n
    C3Star,
    /// C_3^{**}(n), 3 | n
    C3StarStar,
    /// C_3^{+−*}(n); its definition depends on n mod 3
    C3PmStar,
    /// C_3^{−−*}(n), n ≡ 2 mod 3
    C3MmStar,
    /// C_3^{−−**}(n), n ≡ 2 mod 3
    C3MmStarStar,
    /// C_4(n)
    C4,
    /// C_4^{++−}(n)
    C4Ppm,
    /// C_4^{+−−}(n)
    C4Pmm,
    /// C_4^{−+−}(n)
    C4Mpm,
    /// C_4^{−−−}(n)
    C4Mmm,
    /// C_4^{+(−)[+]}(n)
    C4PdP,
    /// C_4^{+(−)[−]}(n)
    C4PdM,
    /// C_4^{−(−)[+]}(n)
    C4MdP,
    /// C_4^{(−−)[+]}(n)
    C4DdP,
}

impl Family {
    pub const ALL: [Family; 17] = [
        Family::C3,
        Family::C3Pm,
        Family::C3Mm,
        Family::C3Star,
        Family::C3StarStar,
        Family::C3PmStar,
        Family::C3MmStar,
        Family::C3MmStarStar,
        Family::C4,
        Family::C4Ppm,
        Family::C4Pmm,
        Family::C4Mpm,
        Family::C4Mmm,
        Family::C4PdP,
        Family::C4PdM,
        Family::C4MdP,
        Family::C4DdP,
    ];

    /// Stable identifier used on the command line and in reports.
    pub fn id(self) -> &'static str {
        match self {
            Family::C3 => "c3",
            Family::C3Pm => "c3_pm",
            Family::C3Mm => "c3_mm",
            Family::C3Star => "c3_star",
            Family::C3StarStar => "c3_starstar",
            Family::C3PmStar => "c3_pm_star",
            Family::C3MmStar => "c3_mm_star",
            Family::C3MmStarStar => "c3_mm_starstar",
            Family::C4 => "c4",
            Family::C4Ppm => "c4_ppm",
            Family::C4Pmm => "c4_pmm",
            Family::C4Mpm => "c4_mpm",
            Family::C4Mmm => "c4_mmm",
            Family::C4PdP => "c4_pdp",
            Family::C4PdM => "c4_pdm",
            Family::C4MdP => "c4_mdp",
            Family::C4DdP => "c4_ddp",
        }
    }

    /// Conventional notation, e.g. `c_4^{+(-)[+]}`.
    pub fn notation(self) -> &'static str {
        match self {
            Family::C3 => "c_3",
            Family::C3Pm => "c_3^{+-}",
            Family::C3Mm => "c_3^{--}",
            Family::C3Star => "c_3^{*}",
            Family::C3StarStar => "c_3^{**}",
            Family::C3PmStar => "c_3^{+-*}",
            Family::C3MmStar => "c_3^{--*}",
            Family::C3MmStarStar => "c_3^{--**}",
            Family::C4 => "c_4",
            Family::C4Ppm => "c_4^{++-}",
            Family::C4Pmm => "c_4^{+--}",
            Family::C4Mpm => "c_4^{-+-}",
            Family::C4Mmm => "c_4^{---}",
            Family::C4PdP => "c_4^{+(-)[+]}",
            Family::C4PdM => "c_4^{+(-)[-]}",
            Family::C4MdP => "c_4^{-(-)[+]}",
            Family::C4DdP => "c_4^{(--)[+]}",
        }
    }

    pub fn k(self) -> usize {
        if self >= Family::C4 { 4 } else { 3 }
    }

    /// Whether the family's definition involves determinant equations.
    pub fn is_starred(self) -> bool {
        matches!(
            self,
            Family::C3Star
                | Family::C3StarStar
                | Family::C3PmStar
                | Family::C3MmStar
                | Family::C3MmStarStar
        )
    }

    /// Smallest n for which the family is defined and counted.
    pub fn min_n(self) -> usize {
        match self {
            Family::C3 | Family::C3Pm | Family::C3Mm => 3,
            Family::C3Star | Family::C3StarStar => 3,
            Family::C3PmStar => 3,
            Family::C3MmStar | Family::C3MmStarStar => 5,
            _ => 4,
        }
    }

    /// Whether the family is defined for this n (residue restrictions).
    pub fn applies_to(self, n: usize) -> bool {
        if n < self.min_n() {
            return false;
        }
        match self {
            Family::C3Star | Family::C3StarStar => n.is_multiple_of(3),
            Family::C3MmStar | Family::C3MmStarStar => n % 3 == 2,
            _ => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = FriezeError;

    /// Accepts either the identifier or the notation (with or without the
    /// `c_k` prefix spelled `c3`/`c_3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Family::ALL
            .into_iter()
            .find(|f| {
                f.id() == t
                    || f.notation() == t
                    || f.notation().replace(['{', '}'], "") == t
                    || f.notation().replacen("c_", "c", 1) == t
                    || f.notation().replacen("c_", "c", 1).replace(['{', '}'], "") == t
            })
            .ok_or_else(|| {
                let known: Vec<&str> = Family::ALL.iter().map(|f| f.id()).collect();
                FriezeError::InvalidParameter(format!(
                    "unknown family '{t}' (known: {})",
                    known.join(", ")
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_and_notation_parse_back() {
        for f in Family::ALL {
            assert_eq!(f.id().parse::<Family>().unwrap(), f);
            assert_eq!(f.notation().parse::<Family>().unwrap(), f);
        }
        assert_eq!("c4^+(-)[+]".parse::<Family>().unwrap(), Family::C4PdP);
        assert!("c5".parse::<Family>().is_err());
    }
}
