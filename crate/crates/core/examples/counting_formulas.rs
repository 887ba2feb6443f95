//! Exact counts of the configuration families three ways: closed form,
//! recursion, and exhaustive search.

use friezelab::census::{closed_form, count_family, recursion_eval, recursion_series, Method};
use friezelab::{Family, Limits, Result};

fn main() -> Result<()> {
    let limits = Limits::default();

    println!("{:<16} {:>3} {:>2} {:>14} {:>14} {:>14}", "family", "n", "q", "closed", "recursion", "search");
    for (family, n, q) in [
        (Family::C3, 7, 2),
        (Family::C3Pm, 6, 3),
        (Family::C3Star, 6, 3),
        (Family::C3MmStar, 5, 2),
        (Family::C4, 7, 2),
        (Family::C4DdP, 6, 2),
    ] {
        let dfs = count_family(family, n, q, Method::Dfs, &limits)?.value;
        println!(
            "{:<16} {n:>3} {q:>2} {:>14} {:>14} {:>14}",
            family.notation(),
            closed_form(family, n, q)?,
            recursion_eval(family, n, q)?,
            dfs
        );
    }

    // Large n is no problem for the formulas.
    println!("\nc_4(30) over GF(7) = {}", closed_form(Family::C4, 30, 7)?);
    let series = recursion_series(Family::C3PmStar, 12, 2)?;
    println!("c_3^(+-*)(n) over GF(2), n = 3..12: {:?}", series.iter().map(|(_, v)| v.to_string()).collect::<Vec<_>>());

    // Residue restrictions are enforced.
    println!("\nc_3^* at n = 7: {}", closed_form(Family::C3Star, 7, 2).unwrap_err());
    Ok(())
}
