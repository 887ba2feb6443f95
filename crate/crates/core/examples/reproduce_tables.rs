//! Recomputes the published tables of tame SL_3- and SL_4-frieze counts and
//! prints them in all three output formats.

use friezelab::census::{frieze_count, reproduce_table, Table};
use friezelab::{Limits, Result};

fn main() -> Result<()> {
    let limits = Limits::default();
    for table in [Table::Fig1, Table::Fig2] {
        let report = reproduce_table(table, &limits);
        print!("{}", report.to_text());
        assert!(report.all_match());
        println!();
    }
    print!("{}", reproduce_table(Table::Fig2, &limits).to_csv());

    // Two rows coincide: SL_3 with w = 3 and SL_4 with w = 2.
    for q in [2, 3, 4, 5, 7] {
        let a = frieze_count(3, 3, q, &limits)?.value;
        let b = frieze_count(4, 2, q, &limits)?.value;
        println!("q = {q}: {a} {b} (q^6+q^4+q^3+q^2+1 = {})", q.pow(6) + q.pow(4) + q.pow(3) + q.pow(2) + 1);
    }

    let r = frieze_count(3, 5, 7, &limits)?;
    println!("\n{}", serde_json::to_string_pretty(&r).expect("serializable"));
    Ok(())
}
