use num_bigint::BigUint;
use num_integer::Integer;

use friezelab::census::{closed_form, count_family, frieze_count, recursion_eval, recursion_series, Method};
use friezelab::frieze::count_quiddities;
use friezelab::projlin::pgl_order;
use friezelab::{make_field, Family, FriezeError, Limits};

/// (q^n − q)(q^n − q^2)⋯(q^n − q^{k−1}) · q^0: for gcd(k, n) = 1 the number
/// of configurations is |PGL| times the frieze count, and this product is
/// what those counts factor as.
fn product(k: usize, n: usize, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let qn = qb.pow(n as u32);
    (1..k).fold(BigUint::from(1u32), |acc, i| acc * (&qn - qb.pow(i as u32)))
}

#[test]
fn coprime_counts_factor() {
    let mut points = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 4..=14 {
            if n % 3 != 0 {
                assert_eq!(closed_form(Family::C3, n, q).unwrap(), product(3, n, q), "c3 n={n} q={q}");
                points += 1;
            }
            if n % 2 == 1 {
                assert_eq!(closed_form(Family::C4, n, q).unwrap(), product(4, n, q), "c4 n={n} q={q}");
                points += 1;
            }
        }
    }
    assert!(points >= 20);
}

#[test]
fn c3_expanded_form() {
    // q^{2n} − q^{n+2} − q^{n+1} + q^3 for 3 ∤ n
    for q in [2u64, 3, 5, 7] {
        for n in (4..=20).filter(|n| n % 3 != 0) {
            let qb = BigUint::from(q);
            let expect = qb.pow(2 * n as u32) + qb.pow(3) - qb.pow(n as u32 + 2) - qb.pow(n as u32 + 1);
            assert_eq!(closed_form(Family::C3, n, q).unwrap(), expect);
        }
    }
}

#[test]
fn series_agree_with_pointwise_evaluation() {
    for f in Family::ALL {
        for q in [2u64, 3, 4] {
            let series = recursion_series(f, 40, q).unwrap();
            assert!(!series.is_empty());
            for (n, v) in series {
                assert!(f.applies_to(n));
                assert_eq!(v, recursion_eval(f, n, q).unwrap(), "{} n={n}", f.id());
                assert_eq!(v, closed_form(f, n, q).unwrap(), "{} n={n}", f.id());
            }
        }
    }
}

#[test]
fn counts_divide_by_the_group_order() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
        for n in 4..=25 {
            let g = 3usize.gcd(&n);
            let (fam, weight) = if g == 1 { (Family::C3, 1) } else { (Family::C3Star, q - 1) };
            let c = closed_form(fam, n, q).unwrap() * BigUint::from(weight).pow(g as u32 - 1);
            assert!((c % pgl_order(3, q)) == BigUint::from(0u32), "n={n} q={q}");
        }
    }
}

#[test]
fn frieze_counts_equal_quiddity_counts() {
    let lim = Limits::default();
    let cells = [
        (2usize, 1usize, 2u64),
        (2, 2, 3),
        (2, 3, 3),
        (2, 3, 4),
        (2, 4, 5),
        (3, 1, 2),
        (3, 2, 2),
        (3, 3, 2),
        (3, 1, 3),
        (3, 2, 3),
        (3, 1, 4),
        (4, 2, 2),
    ];
    for (k, w, q) in cells {
        let field = make_field(q).unwrap();
        let brute = count_quiddities(&field, k, w + k + 1, &lim).unwrap();
        assert_eq!(frieze_count(k, w, q, &lim).unwrap().value, brute, "k={k} w={w} q={q}");
    }
}

#[test]
fn search_agrees_on_starred_and_signed_families() {
    let lim = Limits::default();
    for (f, n, q) in [
        (Family::C3PmStar, 6, 3),
        (Family::C3PmStar, 7, 2),
        (Family::C3MmStar, 5, 3),
        (Family::C3MmStarStar, 5, 3),
        (Family::C3MmStar, 8, 2),
        (Family::C3Star, 9, 2),
        (Family::C4Ppm, 6, 2),
        (Family::C4Pmm, 6, 2),
        (Family::C4Mmm, 6, 2),
        (Family::C4PdP, 6, 2),
        (Family::C4PdM, 6, 2),
        (Family::C4MdP, 6, 2),
        (Family::C4DdP, 6, 2),
        (Family::C4Ppm, 7, 2),
    ] {
        let closed = count_family(f, n, q, Method::ClosedForm, &lim).unwrap().value;
        let dfs = count_family(f, n, q, Method::Dfs, &lim).unwrap().value;
        assert_eq!(closed, dfs, "{} n={n} q={q}", f.id());
    }
}

#[test]
fn out_of_range_requests() {
    assert!(matches!(closed_form(Family::C3MmStar, 6, 2), Err(FriezeError::InvalidParameter(_))));
    assert!(matches!(closed_form(Family::C4, 3, 2), Err(FriezeError::InvalidParameter(_))));
    assert!(matches!(closed_form(Family::C3, 5, 6), Err(FriezeError::InvalidParameter(_))));
    assert!(matches!(frieze_count(1, 3, 2, &Limits::default()), Err(FriezeError::InvalidParameter(_))));
    let w0 = frieze_count(3, 0, 2, &Limits::default()).unwrap();
    assert_eq!(w0.value, BigUint::from(1u32));
    assert!(!w0.notes.is_empty());
}
