//! Lifts with constant consecutive determinants and the coefficient matrices
//! they produce, which are exactly the quiddities of tame friezes.

use std::collections::BTreeSet;

use friezelab::config::{coeff_set, coefficients_of_lift, constant_det_lift, star_condition, ConfigSearch, WindowSpec};
use friezelab::frieze::{check_quiddity, enumerate_quiddities};
use friezelab::{make_field, Limits, Result};

fn main() -> Result<()> {
    let f = make_field(3)?;
    let limits = Limits::default();
    let search = ConfigSearch::new(&f, &WindowSpec::base(3, 6)?)?;

    let (mut total, mut star) = (0u64, 0u64);
    let mut union = BTreeSet::new();
    let mut example = None;
    search.for_each(&limits, |idx| {
        let c = search.configuration(idx);
        total += 1;
        // gcd(3, 6) = 3: a constant-determinant lift exists iff the star
        // condition holds.
        let lift = constant_det_lift(&f, &c).unwrap();
        assert_eq!(lift.is_some(), star_condition(&f, &c).unwrap());
        if let Some(lift) = lift {
            star += 1;
            let coeffs = coefficients_of_lift(&f, &lift).unwrap();
            assert!(check_quiddity(&f, &coeffs));
            union.extend(coeff_set(&f, &c).unwrap());
            // Keep the first one with every coefficient nonzero.
            if example.is_none() && coeffs.entries().iter().all(|x| !x.is_zero()) {
                example = Some((c, lift, coeffs));
            }
        }
    })?;
    println!("C_3(6) over GF(3): {total} configurations, {star} satisfy the star condition");

    let (c, lift, coeffs) = example.expect("some configuration has a lift");
    println!("\nconfiguration: {}", c.format(&f));
    println!("common determinant {}, scalars {:?}", f.display(lift.common_det), lift.lambda.iter().map(|&x| f.display(x)).collect::<Vec<_>>());
    for s in 1..coeffs.k() {
        println!("  a_{s},· = {:?}", coeffs.row(s).iter().map(|&x| f.display(x)).collect::<Vec<_>>());
    }

    let quids: BTreeSet<_> = enumerate_quiddities(&f, 3, 6, &limits)?.into_iter().collect();
    println!("\nunion of coefficient sets: {}, |Quid(3, 6)|: {}, equal: {}", union.len(), quids.len(), union == quids);
    Ok(())
}
