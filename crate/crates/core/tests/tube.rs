use annulus::category::group::{cyclic_table, symmetric_table, GroupBackend};
use annulus::category::quantum::QuantumBackend;
use annulus::category::Engine;
use annulus::numerics::gram_positivity;
use annulus::numerics::linalg::{c, C64};
use annulus::tube::*;
use annulus::Error;

fn group_engine(mul: Vec<Vec<usize>>) -> Engine {
    GroupBackend::new(mul, None, 5).unwrap().engine().unwrap()
}

fn check_table(engine: &Engine, dim: usize) -> TubeTable {
    let t = build_tube(engine).unwrap();
    assert_eq!(t.dim(), dim);
    assert!(t.algebra.associativity_residual() < 1e-9, "assoc {}", t.algebra.associativity_residual());
    assert!(t.algebra.involution_residual() < 1e-9, "inv {}", t.algebra.involution_residual());
    let (pos, min) = gram_positivity(&t.trace, &t.algebra).unwrap();
    assert!(pos, "min gram eigenvalue {min}");
    assert!(trace_residual(&t) < 1e-9);
    assert!(projection_residual(&t) < 1e-9);
    t
}

#[test]
fn cyclic_two_has_commutative_four_dimensional_tube() {
    let e = group_engine(cyclic_table(2));
    let t = check_table(&e, 4);
    assert!(t.algebra.commutator_residual() < 1e-9);
    let d = decompose(&t, 1e-9, 1).unwrap();
    assert_eq!(d.sorted_dims(), vec![1, 1, 1, 1]);
}

#[test]
fn cyclic_three_has_nine_dimensions() {
    let e = group_engine(cyclic_table(3));
    let t = check_table(&e, 9);
    let corner = fusion_corner(&e, &t, 0).unwrap();
    assert!(corner.integrality_residual < 1e-9);
    // pointed fusion: [a][b] = [a+b]
    for r in 0..3 {
        for s in 0..3 {
            let ones: Vec<usize> = (0..3).filter(|&u| (corner.n[r][s][u] - 1.0).abs() < 1e-9).collect();
            assert_eq!(ones.len(), 1);
        }
    }
}

#[test]
fn symmetric_three_tube_has_eight_blocks() {
    let e = group_engine(symmetric_table(3));
    let t = check_table(&e, 17);
    let d = decompose(&t, 1e-9, 3).unwrap();
    assert_eq!(d.blocks.len(), 8);
    assert_eq!(d.sorted_dims(), vec![1, 1, 1, 1, 1, 2, 2, 2]);
    let corner = fusion_corner(&e, &t, 0).unwrap();
    // labels: 0 trivial, 1 sign, 2 standard
    assert!((corner.n[2][2][0] - 1.0).abs() < 1e-9);
    assert!((corner.n[2][2][1] - 1.0).abs() < 1e-9);
    assert!((corner.n[2][2][2] - 1.0).abs() < 1e-9);
    let p = t.projection(2).unwrap();
    assert!((t.tube_trace(p) - c(2.0)).norm() < 1e-9);
}

#[test]
fn vee_is_star_anti_automorphism_with_trivial_square_on_groups() {
    let e = group_engine(symmetric_table(3));
    let t = build_tube(&e).unwrap();
    let v = vee_anti(&e, &t).unwrap();
    let (anti, star) = v.residuals(&t);
    assert!(anti < 1e-9 && star < 1e-9, "{anti} {star}");
    assert!(v.gauge_residual < 1e-9);
    for z in &v.double_gauge.z {
        assert!((z - c(1.0)).norm() < 1e-9);
    }
}

#[test]
fn gauge_is_an_automorphism() {
    let e = group_engine(symmetric_table(3));
    let t = build_tube(&e).unwrap();
    let z = GaugeVector::new(vec![c(1.0), C64::from_polar(1.0, 0.7), C64::from_polar(1.0, -2.1)]).unwrap();
    for a in 0..t.dim() {
        for b in 0..t.dim() {
            let (ea, eb) = (t.unit_vector(a), t.unit_vector(b));
            let lhs = gauge(&t, &z, &t.algebra.mul(&ea, &eb)).unwrap();
            let rhs = t.algebra.mul(&gauge(&t, &z, &ea).unwrap(), &gauge(&t, &z, &eb).unwrap());
            assert!((lhs - rhs).camax() < 1e-9);
        }
    }
    assert!(GaugeVector::new(vec![c(2.0)]).is_err());
}

#[test]
fn trivial_half_braiding_gives_counit() {
    let e = group_engine(symmetric_table(3));
    let t = build_tube(&e).unwrap();
    let hb = HalfBraiding::trivial(&e, 0);
    let rep = represent_half_braiding(&e, &t, &hb).unwrap();
    assert_eq!(rep.dim, 1);
    let (m, s) = rep.star_rep_residuals(&t);
    assert!(m < 1e-9 && s < 1e-9);
    assert!(coefficient_residual(&e, &t, &hb, &rep).unwrap() < 1e-9);
    let pe = rep.apply(t.projection(0).unwrap());
    assert!((pe[(0, 0)] - c(1.0)).norm() < 1e-9);
}

#[test]
fn quantum_tube_refuses_a_global_table() {
    let e = QuantumBackend::new(0.5, 2).unwrap().engine().unwrap();
    assert!(matches!(build_tube(&e), Err(Error::TruncationEscape { .. })));
}

#[test]
fn temperley_lieb_half_corner() {
    // labels are twice the spin; window s ≤ 2, cutoff 4
    let e = QuantumBackend::new(0.5, 8).unwrap().engine().unwrap();
    let window: Vec<usize> = (0..=4).collect();
    let corner = annular_corner(&e, &window, 1, 1).unwrap();
    assert_eq!(corner.window_dim(), 9);
    assert!(corner.commutator_residual().unwrap() < 1e-9);
    assert!((corner.projection_trace().unwrap() - c(2.5)).norm() < 1e-9);
    let unit = annular_corner(&e, &window, 0, 0).unwrap();
    assert_eq!(unit.window_dim(), 5);
    assert!(unit.commutator_residual().unwrap() < 1e-9);
}
