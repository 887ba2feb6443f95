//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary
//! (`harness = false`) so the lines always appear in the test log; any
//! asserted failure makes the process exit non-zero.
//!
//! Tolerances: every comparison is exact big-integer or set equality; the
//! time limits below are the only tolerances.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use friezelab::census::{closed_form, conjecture_count, frieze_count, recursion_eval, reproduce_table, Table};
use friezelab::config::{
    coeff_set, constant_det_lift, count_configs, maximal_decomposition, orbit_partition, star_condition,
    ConfigSearch, GroupAction, WindowSpec,
};
use friezelab::frieze::{build_frieze, enumerate_quiddities, extract_quiddity, validate_frieze};
use friezelab::projlin::{pgl_order, DEFAULT_GL_CAP};
use friezelab::{make_field, Family, Limits};

const TABLE_LIMIT: Duration = Duration::from_secs(1);
const QUID_LIMIT: Duration = Duration::from_secs(60);
const SEARCH_SUITE_LIMIT: Duration = Duration::from_secs(600);
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(600);

struct Line {
    label: String,
    passed: bool,
    /// Informational lines are printed but do not fail the run.
    asserted: bool,
    detail: String,
}

fn line(label: impl Into<String>, passed: bool, detail: String) -> Line {
    Line { label: label.into(), passed, asserted: true, detail }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let r = reproduce_table(Table::Fig1, &Limits::default());
    let t = start.elapsed();
    let sample = r.cell(5, 7).and_then(|c| c.computed.clone());
    line(
        "1 fig1 (closed forms)",
        r.all_match() && r.cells.len() == 25 && t < TABLE_LIMIT && sample == Some(big(291_371_347)),
        format!("{}/{} cells exact, (w=5,q=7) = {:?}, {t:.2?} (limit {TABLE_LIMIT:?})", r.matched(), r.cells.len(), sample.map(|v| v.to_string())),
    )
}

fn criterion_2() -> Line {
    let start = Instant::now();
    let r = reproduce_table(Table::Fig2, &Limits::default());
    let t = start.elapsed();
    let a = r.cell(4, 2).and_then(|c| c.computed.clone());
    let b = r.cell(4, 7).and_then(|c| c.computed.clone());
    line(
        "2 fig2",
        r.all_match() && r.cells.len() == 10 && t < TABLE_LIMIT && a == Some(big(6477)) && b == Some(big(14_176_726_502)),
        format!("{}/{} cells exact, {t:.2?} (limit {TABLE_LIMIT:?})", r.matched(), r.cells.len()),
    )
}

fn criterion_3() -> Line {
    let limits = Limits::default().with_workers(1);
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, w, q, expected) in [(3usize, 1usize, 2u64, 5u64), (3, 2, 2, 29), (3, 1, 3, 10), (4, 2, 2, 93)] {
        let start = Instant::now();
        let found = make_field(q).and_then(|f| enumerate_quiddities(&f, k, w + k + 1, &limits)).map(|v| v.len() as u64);
        let t = start.elapsed();
        let good = found.as_ref().ok() == Some(&expected) && t < QUID_LIMIT;
        ok &= good;
        parts.push(format!("(k={k},w={w},q={q}) {:?} {t:.2?}", found.map_err(|e| e.to_string())));
    }
    line("3 quiddity enumeration = table values", ok, format!("{} (limit {QUID_LIMIT:?} each, 1 worker)", parts.join("; ")))
}

fn criterion_4() -> Vec<Line> {
    let limits = Limits::default();
    let start = Instant::now();
    let mut cases: Vec<(Family, usize, u64)> = Vec::new();
    for q in [2u64, 3] {
        for n in 3..=7 {
            for f in [Family::C3, Family::C3Pm, Family::C3Mm] {
                cases.push((f, n, q));
            }
        }
        cases.push((Family::C3Star, 6, q));
        cases.push((Family::C3StarStar, 6, q));
    }
    for n in 4..=7 {
        cases.push((Family::C4, n, 2));
    }
    let mut mismatches = Vec::new();
    let mut c4_7_2 = None;
    for &(f, n, q) in &cases {
        let field = make_field(q).expect("field");
        let dfs = WindowSpec::for_family(f, n).and_then(|s| count_configs(&field, &s, &limits));
        let cf = closed_form(f, n, q);
        match (&dfs, &cf) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => mismatches.push(format!("{} n={n} q={q}: search {dfs:?} closed {cf:?}", f.id())),
        }
        if (f, n, q) == (Family::C4, 7, 2) {
            c4_7_2 = dfs.ok();
        }
    }
    let t = start.elapsed();
    let mut out = vec![line(
        "4 search counts = closed forms",
        mismatches.is_empty() && t < SEARCH_SUITE_LIMIT && c4_7_2 == Some(big(1_874_880)),
        format!(
            "{} cases exact, c_4(7,2) = {}, {t:.1?} (limit {SEARCH_SUITE_LIMIT:?}){}",
            cases.len(),
            c4_7_2.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            if mismatches.is_empty() { String::new() } else { format!("; mismatches: {}", mismatches.join(", ")) }
        ),
    )];
    // The stated literal for c_4(7, 2) does not match its own formula:
    // 2^21 − 14·2^14 + 56·2^7 − 64 = 1,874,880. Reported, not asserted.
    let literal = big(1_875_968);
    out.push(Line {
        label: "4 literal c_4(7,2) = 1,875,968".into(),
        passed: c4_7_2.as_ref() == Some(&literal),
        asserted: false,
        detail: "search and closed form agree on 1,874,880 = 2^21 - 14*2^14 + 56*2^7 - 64; the literal is an arithmetic slip".into(),
    });
    out
}

fn criterion_5() -> Line {
    let mut compared = 0;
    let mut bad = Vec::new();
    for f in Family::ALL {
        for q in [2u64, 3, 4, 5, 7] {
            for n in (f.min_n()..=30).filter(|&n| f.applies_to(n)) {
                let (a, b) = (closed_form(f, n, q), recursion_eval(f, n, q));
                match (&a, &b) {
                    (Ok(x), Ok(y)) if x == y => compared += 1,
                    _ => bad.push(format!("{} n={n} q={q}", f.id())),
                }
            }
        }
    }
    line(
        "5 closed form = recursion",
        bad.is_empty(),
        format!("{compared} values exact, {} families, q in 2,3,4,5,7, n <= 30{}", Family::ALL.len(), if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }),
    )
}

/// All five sub-checks of criterion 6 on one exhaustive space.
fn machinery(k: usize, n: usize, q: u64) -> Result<String, String> {
    let field = make_field(q).map_err(|e| e.to_string())?;
    let limits = Limits::default();
    let search = ConfigSearch::new(&field, &WindowSpec::base(k, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let g = num_integer::gcd(k, n);
    let qm1 = q - 1;
    let mut failures: Vec<String> = Vec::new();
    let mut liftable: Vec<Vec<u16>> = Vec::new();
    let mut formula_stab: HashMap<Vec<u16>, u64> = HashMap::new();
    let mut coeff_sizes: HashMap<Vec<u16>, usize> = HashMap::new();
    let mut union = BTreeSet::new();
    let mut weighted = BigUint::from(0u32);
    let mut total = 0u64;
    search
        .for_each(&limits, |idx| {
            total += 1;
            let c = search.configuration(idx);
            let lift = constant_det_lift(&field, &c).expect("base-space configuration");
            // (a)
            let expect_lift = if g == 1 { true } else { star_condition(&field, &c).expect("g > 1") };
            if lift.is_some() != expect_lift && failures.len() < 5 {
                failures.push(format!("(a) {}", c.format(&field)));
            }
            if lift.is_none() {
                return;
            }
            let r = maximal_decomposition(&field, &c).expect("liftable").parts() as u32;
            let set = coeff_set(&field, &c).expect("liftable");
            // (b)
            if set.len() as u64 != qm1.pow(g as u32 - r) && failures.len() < 5 {
                failures.push(format!("(b) {} has {} coefficient matrices", c.format(&field), set.len()));
            }
            let key: Vec<u16> = idx.iter().map(|&i| i as u16).collect();
            let stab = qm1.pow(r - 1);
            weighted += BigUint::from(set.len() as u64 * stab);
            formula_stab.insert(key.clone(), stab);
            coeff_sizes.insert(key.clone(), set.len());
            liftable.push(key);
            union.extend(set);
        })
        .map_err(|e| e.to_string())?;

    // (c) brute-force stabilizers, one per orbit, against the formula on
    // every member.
    let action = GroupAction::new(&field, k, search.points(), DEFAULT_GL_CAP).map_err(|e| e.to_string())?;
    let orbits = orbit_partition(&action, &liftable);
    let mut orbit_sum = 0usize;
    for o in &orbits {
        for &m in &o.members {
            if formula_stab[&liftable[m]] != o.stabilizer && failures.len() < 5 {
                failures.push(format!("(c) stabilizer {} vs formula {}", o.stabilizer, formula_stab[&liftable[m]]));
            }
        }
        if o.members.len() as u64 * o.stabilizer != action.pgl_order() && failures.len() < 5 {
            failures.push("(c) orbit-stabilizer".into());
        }
        orbit_sum += coeff_sizes[&liftable[o.members[0]]];
    }

    // (d) and (e) against the enumerated quiddities.
    let quids: BTreeSet<_> = enumerate_quiddities(&field, k, n, &limits).map_err(|e| e.to_string())?.into_iter().collect();
    let pgl = pgl_order(k, q);
    if orbit_sum != quids.len() || weighted != BigUint::from(quids.len()) * &pgl {
        failures.push(format!("(d) orbit sum {orbit_sum}, weighted sum {weighted}, |Quid| {}", quids.len()));
    }
    if union != quids {
        failures.push(format!("(e) union has {} matrices, |Quid| = {}", union.len(), quids.len()));
    }
    if failures.is_empty() {
        Ok(format!("{total} configs, {} liftable, {} orbits, |Quid| = {}", liftable.len(), orbits.len(), quids.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_6() -> Vec<Line> {
    [(3usize, 6usize, 2u64), (3, 6, 3), (3, 5, 2), (3, 5, 3)]
        .into_iter()
        .map(|(k, n, q)| {
            let start = Instant::now();
            let r = machinery(k, n, q);
            let t = start.elapsed();
            line(
                format!("6 lift/coeff/stabilizer/summation/union (k={k},n={n},q={q})"),
                r.is_ok() && t < EXHAUSTIVE_LIMIT,
                format!("{}, {t:.1?} (limit {EXHAUSTIVE_LIMIT:?})", r.unwrap_or_else(|e| e)),
            )
        })
        .collect()
}

fn criterion_7() -> Line {
    let limits = Limits::default();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (k, n, q) in [(2usize, 5usize, 7u64), (3, 5, 3), (4, 7, 2)] {
        let field = make_field(q).expect("field");
        let quids = enumerate_quiddities(&field, k, n, &limits).expect("in cap");
        for m in &quids {
            checked += 1;
            let ok = build_frieze(&field, m)
                .map(|pat| validate_frieze(&field, &pat).is_valid() && extract_quiddity(&field, &pat).ok().as_ref() == Some(m))
                .unwrap_or(false);
            if !ok {
                failures.push(format!("k={k} n={n} q={q}"));
            }
        }
    }
    line("7 build/validate/extract roundtrip", failures.is_empty(), format!("{checked} quiddities, {} failures", failures.len()))
}

fn criterion_8() -> Line {
    let limits = Limits::default();
    let mut ok = true;
    let mut vals = Vec::new();
    for q in [2u64, 3, 4, 5, 7] {
        let expect = big(q.pow(6) + q.pow(4) + q.pow(3) + q.pow(2) + 1);
        let a = frieze_count(3, 3, q, &limits).map(|r| r.value);
        let b = frieze_count(4, 2, q, &limits).map(|r| r.value);
        ok &= a.as_ref().ok() == Some(&expect) && b.as_ref().ok() == Some(&expect);
        vals.push(expect.to_string());
    }
    line("8 cross-row identity", ok, format!("q = 2,3,4,5,7 -> {}", vals.join(", ")))
}

fn criterion_9() -> Line {
    let limits = Limits::default();
    let mut compared = 0;
    let mut bad = Vec::new();
    for k in [2usize, 3, 4] {
        for w in 1..=6usize {
            if num_integer::gcd(k, w + k + 1) != 1 {
                continue;
            }
            for q in [2u64, 3, 5] {
                let c = conjecture_count(k, w, q).map(|r| r.value);
                let f = frieze_count(k, w, q, &limits).map(|r| r.value);
                match (&c, &f) {
                    (Ok(x), Ok(y)) if x == y => compared += 1,
                    _ => bad.push(format!("k={k} w={w} q={q}: {c:?} vs {f:?}")),
                }
            }
        }
    }
    let smoke = conjecture_count(5, 1, 2).map(|r| r.value.to_string()).unwrap_or_else(|e| e.to_string());
    line(
        "9 conjecture consistency",
        bad.is_empty() && compared > 0,
        format!("{compared} gcd-1 cells exact; k=5,w=1,q=2 evaluates to {smoke} (not verifiable){}", if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }),
    )
}

fn main() {
    let mut lines = vec![criterion_1(), criterion_2(), criterion_3()];
    lines.extend(criterion_4());
    lines.push(criterion_5());
    lines.extend(criterion_6());
    lines.push(criterion_7());
    lines.push(criterion_8());
    lines.push(criterion_9());

    println!("\nacceptance criteria");
    for l in &lines {
        let tag = match (l.passed, l.asserted) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (not asserted)",
        };
        println!("{tag}  criterion {}: {}", l.label, l.detail);
    }
    let failed = lines.iter().filter(|l| l.asserted && !l.passed).count();
    println!("{} asserted criteria failed\n", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
