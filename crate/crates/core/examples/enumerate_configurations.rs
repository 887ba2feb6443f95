//! Exhaustive enumeration of cyclic point configurations described by a
//! declarative window spec: built-in families, hand-written specs, caps.

use friezelab::config::{count_configs, enumerate_configs, ConfigSearch, Requirement, WindowSpec};
use friezelab::{make_field, Family, FriezeError, Limits, Result};

fn main() -> Result<()> {
    let f2 = make_field(2)?;
    let limits = Limits::default();

    // Every family has a spec; the count is exact.
    for family in [Family::C3, Family::C3Pm, Family::C3Mm, Family::C3Star] {
        let spec = WindowSpec::for_family(family, 6)?;
        println!("{:<10} n = 6, q = 2: {}", family.notation(), count_configs(&f2, &spec, &limits)?);
    }

    // The text format round-trips and can express new conditions.
    let text = "k 3\nn 5\nwindow 5 -\nset + 5 1\n";
    let spec = WindowSpec::parse(text)?;
    println!("\nparsed spec:\n{spec}");
    assert_eq!(spec, WindowSpec::for_family(Family::C3Pm, 5)?);
    let custom = WindowSpec::base(3, 5)?.with_window(4, Requirement::Dependent).with_window(5, Requirement::Dependent);
    println!("two dependent windows, q = 2: {}", count_configs(&f2, &custom, &limits)?);

    // Streaming: first few configurations of C_3(4) over GF(2).
    let search = ConfigSearch::new(&f2, &WindowSpec::base(3, 4)?)?;
    let mut shown = 0;
    search.for_each(&limits, |idx| {
        if shown < 3 {
            println!("  {}", search.configuration(idx).format(&f2));
            shown += 1;
        }
    })?;
    println!("  … {} in total", enumerate_configs(&f2, &WindowSpec::base(3, 4)?, &limits)?.len());

    // Searches that would exceed the node cap stop with a resource error.
    let f3 = make_field(3)?;
    match count_configs(&f3, &WindowSpec::base(3, 7)?, &Limits::default().with_node_cap(10_000)) {
        Err(e @ FriezeError::ResourceLimit { .. }) => println!("\ncapped: {e} (exit status {})", e.exit_code()),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
