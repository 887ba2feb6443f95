//! From quiddity to frieze and back: build the pattern row by row, check
//! every diamond, and recover the quiddity from the pattern.

use friezelab::formats::{write_frieze, write_quiddity};
use friezelab::frieze::{build_frieze, enumerate_quiddities, extract_quiddity, validate_frieze, QuiddityMatrix};
use friezelab::{make_field, FriezeError, Limits, Result};

fn main() -> Result<()> {
    let f = make_field(3)?;
    let quids = enumerate_quiddities(&f, 3, 6, &Limits::default())?;
    let m = &quids[quids.len() / 2];
    println!("quiddity (file format):\n{}", write_quiddity(&f, m));

    let pat = build_frieze(&f, m)?;
    println!("frieze (rows j = -2 ..= 5):\n{}", write_frieze(&f, &pat));

    let report = validate_frieze(&f, &pat);
    println!("{report}\nvalid: {}", report.is_valid());
    assert_eq!(&extract_quiddity(&f, &pat)?, m);
    println!("extract_quiddity recovers the input\n");

    // Tampering with one entry is caught.
    let mut bad = pat.clone();
    bad.set(1, 2, f.add(pat.get(1, 2), f.one()));
    println!("after changing e_1(2):\n{}\n", validate_frieze(&f, &bad));

    // Changing a single quiddity entry breaks the product criterion, and
    // such a matrix is refused up front.
    let mut wrong: QuiddityMatrix = m.clone();
    wrong.set(1, 1, f.add(m.get(1, 1), f.one()));
    match build_frieze(&f, &wrong) {
        Err(FriezeError::PreconditionViolation(msg)) => println!("perturbed quiddity refused: {msg}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
