//! Arithmetic in GF(p^e): elements are polynomials over GF(p) reduced by the
//! smallest monic irreducible modulus; on the outside they are written as
//! packed integers Σ c_j p^j.

use friezelab::{make_field, Result};

fn main() -> Result<()> {
    let f = make_field(9)?;
    println!("GF({}) = GF({})[x] / modulus with coefficients {:?}", f.q(), f.p(), f.modulus());

    let x = f.from_packed(3)?; // the class of x
    let y = f.from_packed(5)?; // x + 2
    println!("x       = {}", f.display(x));
    println!("x + 2   = {}", f.display(y));
    println!("sum     = {}", f.display(f.add(x, y)));
    println!("product = {}", f.display(f.mul(x, y)));
    println!("x^-1    = {}", f.display(f.inv(x)?));
    println!("x^8     = {}  (Fermat: a^(q-1) = 1)", f.display(f.pow(x, 8)));

    // Roots are found by search; a missing root is `None`, not an error.
    let f7 = make_field(7)?;
    for a in [6, 2] {
        let root = f7.nth_root(f7.from_int(a), 3)?;
        println!("cube root of {a} in GF(7): {:?}", root.map(|r| f7.display(r)));
    }

    // Division by zero is reported rather than panicking.
    println!("1/0 in GF(9): {}", f.inv(f.zero()).unwrap_err());

    // Multiplication table of GF(4) in packed notation.
    let f4 = make_field(4)?;
    println!("\nGF(4) multiplication:");
    for a in f4.elements() {
        let row: Vec<String> = f4.elements().map(|b| f4.display(f4.mul(a, b))).collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
