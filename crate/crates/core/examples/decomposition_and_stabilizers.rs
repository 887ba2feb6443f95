//! Maximal decompositions K^k = U_1 ⊕ … ⊕ U_r compatible with a
//! configuration, and the PGL-stabilizer they predict: (q − 1)^{r − 1}.

use std::collections::BTreeMap;

use friezelab::config::{
    coeff_set, maximal_decomposition, stabilizer_order, star_condition, ConfigSearch, StabilizerMethod, WindowSpec,
};
use friezelab::projlin::DEFAULT_GL_CAP;
use friezelab::{make_field, Limits, Result};

fn main() -> Result<()> {
    let f = make_field(3)?;
    let search = ConfigSearch::new(&f, &WindowSpec::base(3, 6)?)?;
    let mut by_type: BTreeMap<Vec<usize>, (u64, String)> = BTreeMap::new();
    let mut checked = 0;
    search.for_each(&Limits::default(), |idx| {
        let c = search.configuration(idx);
        if !star_condition(&f, &c).unwrap() {
            return;
        }
        let dec = maximal_decomposition(&f, &c).unwrap();
        let entry = by_type.entry(dec.dims.clone()).or_insert((0, c.format(&f)));
        entry.0 += 1;
        // Spot-check the formula against brute force and the coefficient count.
        if entry.0 <= 2 {
            let formula = stabilizer_order(&f, &c, StabilizerMethod::Formula).unwrap();
            let brute = stabilizer_order(&f, &c, StabilizerMethod::BruteForce { gl_cap: DEFAULT_GL_CAP }).unwrap();
            assert_eq!(formula, brute);
            let r = dec.parts() as u32;
            assert_eq!(coeff_set(&f, &c).unwrap().len() as u64, 2u64.pow(3 - r));
            checked += 1;
        }
    })?;
    println!("C_3^*(6) over GF(3) by type (sorted subspace dimensions):");
    for (dims, (count, sample)) in &by_type {
        println!("  {dims:?}: {count:>6} configurations, e.g. {sample}");
    }
    println!("{checked} stabilizers confirmed by brute force over GL(3, 3)");

    let (_, (_, sample)) = by_type.iter().next_back().unwrap();
    let c = friezelab::config::Configuration::parse(&f, sample)?;
    let dec = maximal_decomposition(&f, &c)?;
    println!("\n{} splits residues mod 3 as {:?}", sample, dec.residue_partition);
    Ok(())
}
