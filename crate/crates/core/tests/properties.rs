use std::sync::OnceLock;

use proptest::prelude::*;

use annulus::category::group::{cyclic_table, symmetric_table, GroupBackend};
use annulus::category::quantum::{format_spin, parse_spin};
use annulus::io::report::{fmt_float, Check, Report};
use annulus::io::table::{parse_structure_csv, structure_csv, table_json};
use annulus::io::{canonical_json, parse_group, parse_input, parse_table};
use annulus::numerics::linalg::C64;
use annulus::tube::{build_tube, gauge, GaugeVector, TubeTable};

fn s3_tube() -> &'static TubeTable {
    static T: OnceLock<TubeTable> = OnceLock::new();
    T.get_or_init(|| build_tube(&GroupBackend::new(symmetric_table(3), None, 1).unwrap().engine().unwrap()).unwrap())
}

fn group_json(mul: &[Vec<usize>]) -> String {
    serde_json::json!({ "order": mul.len(), "mul": mul }).to_string()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauge_is_multiplicative_and_star_preserving(
        p1 in -3.2f64..3.2, p2 in -3.2f64..3.2, a in 0usize..17, b in 0usize..17,
    ) {
        let t = s3_tube();
        let z = GaugeVector::new(vec![C64::new(1.0, 0.0), C64::from_polar(1.0, p1), C64::from_polar(1.0, p2)]).unwrap();
        let (ea, eb) = (t.unit_vector(a), t.unit_vector(b));
        let lhs = gauge(t, &z, &t.algebra.mul(&ea, &eb)).unwrap();
        let rhs = t.algebra.mul(&gauge(t, &z, &ea).unwrap(), &gauge(t, &z, &eb).unwrap());
        prop_assert!((lhs - rhs).camax() < 1e-9);
        let star_first = gauge(t, &z, &t.algebra.star(&ea)).unwrap();
        let star_after = t.algebra.star(&gauge(t, &z, &ea).unwrap());
        prop_assert!((star_first - star_after).camax() < 1e-9);
    }

    #[test]
    fn cyclic_tubes_have_square_dimension(n in 1usize..6) {
        let g = parse_group(&group_json(&cyclic_table(n)), 0).unwrap();
        let t = build_tube(&g.engine().unwrap()).unwrap();
        prop_assert_eq!(t.dim(), n * n);
        prop_assert!(t.algebra.associativity_residual() < 1e-9);
        prop_assert!(t.algebra.commutator_residual() < 1e-9);
    }

    #[test]
    fn exported_tables_read_back(n in 1usize..5) {
        let t = build_tube(&GroupBackend::new(cyclic_table(n), None, 0).unwrap().engine().unwrap()).unwrap();
        let back = parse_table(&table_json(&t)).unwrap();
        prop_assert_eq!(back.algebra.dim(), t.dim());
        prop_assert!((&back.trace - &t.trace).camax() == 0.0);
        let csv = parse_structure_csv(&structure_csv(&t.algebra), t.dim()).unwrap();
        for a in 0..t.dim() {
            for b in 0..t.dim() {
                prop_assert_eq!(&csv[a * t.dim() + b], t.algebra.basis_product(a, b));
            }
        }
    }

    #[test]
    fn floats_survive_the_report_format(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
        prop_assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn reports_are_deterministic_and_checks_honest(
        values in proptest::collection::vec((any::<f64>(), 1e-12f64..1.0), 0..8), seed in any::<u64>(),
    ) {
        let mut r = Report::new("prop", seed);
        for (k, &(v, t)) in values.iter().enumerate() {
            r.check(Check::at_most(format!("c{k}"), v, t));
            prop_assert_eq!(r.checks[k].pass, v.is_finite() && v <= t);
        }
        r.add_input("x", &seed.to_le_bytes());
        let s = r.to_json();
        prop_assert_eq!(&s, &r.clone().to_json());
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(canonical_json(&v), s);
        prop_assert_eq!(v["pass"].as_bool().unwrap(), r.pass());
    }

    #[test]
    fn parsers_reject_garbage_without_panicking(s in ".{0,200}") {
        let _ = parse_input(&s, 0);
        let _ = parse_table(&s);
        let _ = parse_structure_csv(&s, 4);
        let _ = parse_spin(&s);
    }

    #[test]
    fn corrupted_group_tables_are_rejected(n in 2usize..6, i in 0usize..6, j in 0usize..6, v in 0usize..6) {
        let mut mul = cyclic_table(n);
        let (i, j, v) = (i % n, j % n, v % n);
        prop_assume!(mul[i][j] != v);
        mul[i][j] = v;
        prop_assert!(parse_group(&group_json(&mul), 0).is_err());
    }

    #[test]
    fn spins_round_trip(twice in 0usize..10_000) {
        prop_assert_eq!(parse_spin(&format_spin(twice)).unwrap(), twice);
    }
}
