//! The conjectured product formula for k ≥ 5, compared with proven counts
//! for k ≤ 4 and evaluated (without any claim of truth) beyond.

use friezelab::census::{conjecture_count, frieze_count};
use friezelab::{Limits, Result};

fn main() -> Result<()> {
    let limits = Limits::default();
    println!("k  w  q  conjecture  frieze_count");
    for k in 2..=4usize {
        for w in 1..=4usize {
            if num_integer::gcd(k, w + k + 1) != 1 {
                continue;
            }
            let q = 3;
            let c = conjecture_count(k, w, q)?.value;
            let fc = frieze_count(k, w, q, &limits)?.value;
            println!("{k}  {w}  {q}  {c:>10}  {fc:>12}{}", if c == fc { "" } else { "  MISMATCH" });
        }
    }

    println!("\nconjectural values:");
    for (k, w, q) in [(5usize, 1usize, 2u64), (5, 2, 2), (6, 4, 2), (7, 1, 2)] {
        let r = conjecture_count(k, w, q)?;
        println!("  k = {k}, w = {w}, q = {q}: {}  [{}]", r.value, r.notes.join("; "));
    }

    // Outside gcd(k, n) = 1 the formula says nothing.
    println!("\nk = 5, w = 4: {}", conjecture_count(5, 4, 2).unwrap_err());
    Ok(())
}
