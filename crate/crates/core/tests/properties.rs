//! Invariants checked on random inputs.

use std::sync::OnceLock;

use proptest::prelude::*;

use friezelab::config::{
    coeff_set, coefficients_of_lift, constant_det_lift, consecutive_det, maximal_decomposition, Configuration,
    ConfigSearch, WindowSpec,
};
use friezelab::frieze::{
    build_frieze, check_quiddity, enumerate_quiddities, extract_quiddity, quiddity_product, validate_frieze,
    QuiddityMatrix,
};
use friezelab::projlin::{det, normalize, SquareMatrix, Vector};
use friezelab::{make_field, Field, FieldElem, Limits};

const ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<FieldElem>)> {
    prop::sample::select(&ORDERS[..]).prop_flat_map(move |q| {
        prop::collection::vec(0..q as usize, n).prop_map(move |idx| {
            let f = make_field(q).unwrap();
            let xs = idx.iter().map(|&i| f.elem(i)).collect();
            (f, xs)
        })
    })
}

fn square(k: usize, xs: &[FieldElem]) -> SquareMatrix {
    SquareMatrix::from_rows(xs.chunks(k).map(<[FieldElem]>::to_vec).collect()).unwrap()
}

/// Liftable configurations of C_3(6) over GF(3), computed once.
fn star_configs() -> &'static (Field, Vec<Configuration>) {
    static CELL: OnceLock<(Field, Vec<Configuration>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = make_field(3).unwrap();
        let search = ConfigSearch::new(&f, &WindowSpec::star(3, 6).unwrap()).unwrap();
        let mut out = Vec::new();
        search.for_each(&Limits::default(), |idx| out.push(search.configuration(idx))).unwrap();
        (f, out)
    })
}

/// Valid quiddities for (k, n, q) = (2, 6, 5), (3, 6, 3), (4, 7, 2).
fn quiddities(which: usize) -> &'static (Field, Vec<QuiddityMatrix>) {
    static CELLS: [OnceLock<(Field, Vec<QuiddityMatrix>)>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[which].get_or_init(|| {
        let (k, n, q) = [(2, 6, 5), (3, 6, 3), (4, 7, 2)][which];
        let f = make_field(q).unwrap();
        let all = enumerate_quiddities(&f, k, n, &Limits::default()).unwrap();
        (f, all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((f, xs) in field_and_elems(3)) {
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.q() as u64 - 1), f.one());
        }
        prop_assert_eq!(f.from_packed(f.packed(a) as u64).unwrap(), a);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
    }

    #[test]
    fn frobenius_is_additive((f, xs) in field_and_elems(2)) {
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.add(xs[0], xs[1]), p), f.add(f.pow(xs[0], p), f.pow(xs[1], p)));
    }

    #[test]
    fn det_is_multiplicative((f, xs) in field_and_elems(18)) {
        let a = square(3, &xs[..9]);
        let b = square(3, &xs[9..]);
        prop_assert_eq!(det(&f, &a.mul(&f, &b)), f.mul(det(&f, &a), det(&f, &b)));
        match a.inverse(&f) {
            Some(inv) => {
                prop_assert!(!det(&f, &a).is_zero());
                prop_assert_eq!(a.mul(&f, &inv), SquareMatrix::identity(&f, 3));
            }
            None => prop_assert!(det(&f, &a).is_zero()),
        }
    }

    #[test]
    fn normalization_ignores_scalars((f, xs) in field_and_elems(5)) {
        let v = Vector::new(xs[..4].to_vec());
        let c = if xs[4].is_zero() { f.one() } else { xs[4] };
        let p = normalize(&f, &v);
        prop_assert_eq!(p.is_none(), v.is_zero());
        prop_assert_eq!(normalize(&f, &v.scale(&f, c)), p.clone());
        if let Some(p) = p {
            // The representative's first nonzero entry is 1.
            prop_assert_eq!(p.rep().entries().iter().find(|x| !x.is_zero()).copied(), Some(f.one()));
        }
    }

    #[test]
    fn lift_data_ignores_representatives(pick in any::<prop::sample::Index>(), scalars in prop::collection::vec(1usize..3, 6)) {
        let (f, configs) = star_configs();
        let c = &configs[pick.index(configs.len())];
        let rescaled: Vec<Vector> = c.points().iter().zip(&scalars)
            .map(|(p, &s)| p.rep().scale(f, f.elem(s)))
            .collect();
        let c2 = Configuration::from_vectors(f, 3, &rescaled).unwrap();
        prop_assert_eq!(&c2, c);
        prop_assert_eq!(coeff_set(f, &c2).unwrap(), coeff_set(f, c).unwrap());
        prop_assert_eq!(maximal_decomposition(f, &c2).unwrap(), maximal_decomposition(f, c).unwrap());
    }

    #[test]
    fn lifts_have_constant_determinants(pick in any::<prop::sample::Index>()) {
        let (f, configs) = star_configs();
        let c = &configs[pick.index(configs.len())];
        let lift = constant_det_lift(f, c).unwrap().expect("star configurations lift");
        for i in 1..=12 {
            prop_assert_eq!(consecutive_det(f, 3, &lift.vectors, i), lift.common_det);
        }
        // Every coefficient matrix is a quiddity matrix with a valid frieze.
        for m in coeff_set(f, c).unwrap() {
            prop_assert!(check_quiddity(f, &m));
            prop_assert!(validate_frieze(f, &build_frieze(f, &m).unwrap()).is_valid());
        }
        prop_assert!(coeff_set(f, c).unwrap().contains(&coefficients_of_lift(f, &lift).unwrap()));
    }

    #[test]
    fn frieze_bijection(pick in any::<prop::sample::Index>(), which in 0usize..3) {
        let (f, all) = quiddities(which);
        let m = &all[pick.index(all.len())];
        let pat = build_frieze(f, m).unwrap();
        prop_assert!(validate_frieze(f, &pat).is_valid());
        prop_assert_eq!(&extract_quiddity(f, &pat).unwrap(), m);
    }

    #[test]
    fn criterion_matches_product(k in 2usize..5, extra in 1usize..4, (f, xs) in field_and_elems(40)) {
        let n = k + extra;
        let m = QuiddityMatrix::new(k, n, xs[..(k - 1) * n].to_vec()).unwrap();
        let expected = quiddity_product(&f, &m) == SquareMatrix::scalar(&f, k, f.sign(k - 1));
        prop_assert_eq!(check_quiddity(&f, &m), expected);
        prop_assert_eq!(build_frieze(&f, &m).is_ok(), expected);
    }
}
