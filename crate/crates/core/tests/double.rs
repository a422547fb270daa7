use annulus::category::group::{cyclic_table, symmetric_table, GroupBackend};
use annulus::double::*;
use annulus::numerics::decompose_star_algebra;
use annulus::tube::{build_tube, decompose, vee_anti};

fn run(mul: Vec<Vec<usize>>) -> (usize, IsomorphismReport, CornerReport) {
    let g = GroupBackend::new(mul, None, 7).unwrap();
    let e = g.engine().unwrap();
    let t = build_tube(&e).unwrap();
    let v = vee_anti(&e, &t).unwrap();
    let tg = build_tub_g(&e, &t).unwrap();
    let d = build_double(&g).unwrap();
    let rep = tube_to_double(&e, &t, &v, &tg, &d, g.identity()).unwrap();
    let corner = verify_full_corner(&t, &tg);
    (d.dim(), rep, corner)
}

#[test]
fn cyclic_two_double_matches_tube() {
    let (dim, rep, corner) = run(cyclic_table(2));
    assert_eq!(dim, 4);
    assert!(rep.homomorphism_residual < 1e-8, "{}", rep.homomorphism_residual);
    assert!(rep.star_residual < 1e-8, "{}", rep.star_residual);
    assert!(rep.expectation_residual < 1e-8, "{}", rep.expectation_residual);
    assert_eq!(corner.corner_dim, 4);
    assert!(corner.local_unit_residual < 1e-9);
}

#[test]
fn symmetric_three_double_matches_tube() {
    let (dim, rep, corner) = run(symmetric_table(3));
    assert_eq!(dim, 36);
    assert!(rep.homomorphism_residual < 1e-8, "{}", rep.homomorphism_residual);
    assert!(rep.star_residual < 1e-8, "{}", rep.star_residual);
    assert!(rep.expectation_residual < 1e-8, "{}", rep.expectation_residual);
    assert_eq!(rep.corner_image_dim, 17);
    assert_eq!(corner.corner_dim, 17);
    assert_eq!(corner.family_size, 4);
    assert!(corner.local_unit_residual < 1e-9);
    assert!(corner.isometry_residual < 1e-9);
    assert!(corner.embedding_residual < 1e-9);
}

#[test]
fn double_irreps_agree_with_blocks() {
    let g = GroupBackend::new(symmetric_table(3), None, 7).unwrap();
    let irr = double_irreps(&g, 3).unwrap();
    let mut dims: Vec<usize> = irr.iter().map(|d| d.dim).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    let d = build_double(&g).unwrap();
    assert!(d.algebra.associativity_residual() < 1e-12);
    assert!(d.expectation_residual(g.identity()) < 1e-12);
    assert!(d.expectation_gram_min(g.identity()) > 0.0);
    assert!(d.multiplicative_unitary_residual(&g) < 1e-9);
    let blocks = decompose_star_algebra(&d.algebra, 1e-9, 5).unwrap();
    assert_eq!(blocks.sorted_dims(), dims);
    let e = g.engine().unwrap();
    let t = build_tube(&e).unwrap();
    let mut tube_dims = decompose(&t, 1e-9, 5).unwrap().sorted_dims();
    let mut want: Vec<usize> = irr.iter().map(|d| d.multiplicities.iter().sum()).collect();
    want.sort();
    tube_dims.sort();
    assert_eq!(tube_dims, want);
}
