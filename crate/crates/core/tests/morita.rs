use annulus::category::group::{cyclic_table, symmetric_table, GroupBackend};
use annulus::morita::*;

fn z2() -> Morita {
    build_morita(GroupBackend::new(cyclic_table(2), None, 3).unwrap(), &[0]).unwrap()
}

#[test]
fn z2_modules_and_grades() {
    let m = z2();
    assert_eq!(m.right_labels().len(), 1);
    assert_eq!(m.bimodule_labels().len(), 2);
    let sp = module_standard_pair(&m, 0).unwrap();
    assert!(sp.conjugate_residual < 1e-9, "{}", sp.conjugate_residual);
    assert!((sp.norm_sq - 2f64.sqrt()).abs() < 1e-9, "{}", sp.norm_sq);
    assert!((sp.engine_qdim - sp.expected_norm_sq).abs() < 1e-9);

    let table = build_tube_2cat(&m).unwrap();
    let g = grade_report(&m, &table).unwrap();
    assert_eq!(g.dims[0][0], 4);
    assert_eq!(g.dims[1][1], 4);
    assert!(g.residual_00 < 1e-9 && g.residual_11 < 1e-9 && g.grading_residual < 1e-9, "{g:?}");

    let imp = verify_imprimitivity(&m, &table).unwrap();
    assert!(imp.worst() < 1e-9, "{imp:?}");
}

#[test]
fn z2_regular_half_braiding() {
    let m = z2();
    let q = m.bimodule_labels()[0];
    let z = build_zreg(&m, q).unwrap();
    let r = zreg_report(&m, &z).unwrap();
    assert!(r.worst() < 1e-9, "{r:?}");
    let table = build_tube_2cat(&m).unwrap();
    let rep = zreg_representation(&m, &table, &z).unwrap();
    let (mult, star) = rep.star_rep_residuals(&table);
    assert!(mult < 1e-9 && star < 1e-9);
    assert!(rep.dim > 0);
}

#[test]
fn s3_morita_invariance() {
    let m = build_morita(GroupBackend::new(symmetric_table(3), None, 3).unwrap(), &[0]).unwrap();
    let table = build_tube_2cat(&m).unwrap();
    let g = grade_report(&m, &table).unwrap();
    assert_eq!(g.dims, [[17, 24], [24, 36]]);
    assert!(g.residual_00 < 1e-9 && g.residual_11 < 1e-9, "{g:?}");
    let imp = verify_imprimitivity(&m, &table).unwrap();
    assert!(imp.worst() < 1e-9, "{imp:?}");
    let inv = invariance_report(&m, &table, 1e-9, 5).unwrap();
    assert_eq!(inv.blocks[0].len(), 8);
    assert_eq!(inv.blocks[1].len(), 8);
    assert_eq!(inv.fusion_ranks, [3, 6]);
}
