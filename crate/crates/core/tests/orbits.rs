use num_bigint::BigUint;

use friezelab::config::{orbit_partition, ConfigSearch, GroupAction, WindowSpec};
use friezelab::frieze::count_quiddities;
use friezelab::projlin::{pgl_order, DEFAULT_GL_CAP};
use friezelab::{make_field, Limits};

/// With gcd(k, n) = 1 the action is free, so every orbit has |PGL| members
/// and orbits correspond one-to-one to friezes.
#[test]
fn orbits_partition_the_space() {
    let lim = Limits::default();
    for (k, n, q) in [(2usize, 5usize, 4u64), (2, 6, 3), (3, 5, 2), (3, 4, 3)] {
        let field = make_field(q).unwrap();
        let search = ConfigSearch::new(&field, &WindowSpec::base(k, n).unwrap()).unwrap();
        let configs = search.indices(&lim).unwrap();
        let action = GroupAction::new(&field, k, search.points(), DEFAULT_GL_CAP).unwrap();
        assert_eq!(BigUint::from(action.pgl_order()), pgl_order(k, q));
        let orbits = orbit_partition(&action, &configs);

        let mut seen = vec![0u8; configs.len()];
        for o in &orbits {
            for &m in &o.members {
                seen[m] += 1;
            }
            assert_eq!(o.members.len() as u64 * o.stabilizer, action.pgl_order(), "k={k} n={n} q={q}");
            // Every member has the same stabilizer order.
            for &m in o.members.iter().step_by(7) {
                assert_eq!(action.stabilizer(&configs[m]), o.stabilizer);
            }
        }
        assert!(seen.iter().all(|&c| c == 1), "orbits overlap or miss configurations");

        if num_integer::gcd(k, n) == 1 {
            assert!(orbits.iter().all(|o| o.stabilizer == 1));
            let quids = count_quiddities(&field, k, n, &lim).unwrap();
            assert_eq!(BigUint::from(orbits.len()), quids, "k={k} n={n} q={q}");
        }
    }
}
