//! The product criterion: a (k−1) × n matrix of field elements is the
//! quiddity of a tame SL_k-frieze exactly when the product of its n
//! companion matrices is (−1)^{k−1} I.

use friezelab::frieze::{check_quiddity, companion_matrix, count_quiddities, enumerate_quiddities, quiddity_product, QuiddityMatrix};
use friezelab::{make_field, Limits, Result};

fn main() -> Result<()> {
    let f = make_field(2)?;
    let limits = Limits::default();

    // The classical SL_2 case: Conway–Coxeter sequences over GF(2).
    let quids = enumerate_quiddities(&f, 2, 5, &limits)?;
    println!("SL_2, n = 5 over GF(2): {} quiddities", quids.len());
    for m in &quids {
        let row: Vec<String> = m.row(1).iter().map(|&x| f.display(x)).collect();
        println!("  ({})", row.join(", "));
    }

    // A single check, with the companion matrices spelled out.
    let m = &quids[0];
    println!("\ncompanion matrices of the first one:");
    for i in 1..=m.n() {
        println!("  A_{i} = {:?}", companion_matrix(&f, m, i)?.entries().iter().map(|&x| f.display(x)).collect::<Vec<_>>());
    }
    let prod = quiddity_product(&f, m);
    println!("product = {:?}", prod.entries().iter().map(|&x| f.display(x)).collect::<Vec<_>>());

    // Almost every matrix fails.
    let zero = QuiddityMatrix::zeros(&f, 3, 5)?;
    println!("\nall-zero 2 x 5 matrix passes: {}", check_quiddity(&f, &zero));

    // Counting without materializing: SL_3, n = 6 over GF(2) and GF(3).
    for q in [2, 3] {
        let fq = make_field(q)?;
        println!("|Quid(3, 6)| over GF({q}) = {}", count_quiddities(&fq, 3, 6, &limits)?);
    }
    Ok(())
}
