//! Verification suites behind the CLI subcommands. Each returns a [`Report`]; artifacts such
//! as exported tables come back alongside.

use serde_json::Value;

use super::report::{complex, float, Check, Report};
use super::table::{structure_csv, table_json, LoadedTable};
use crate::category::group::{cyclic_table, symmetric_table, GroupBackend};
use crate::category::quantum::{format_spin, QuantumBackend};
use crate::category::Engine;
use crate::double::{build_double, build_tub_g, double_irreps, tube_to_double, verify_full_corner};
use crate::error::{Error, Result};
use crate::morita::*;
use crate::numerics::algebra::StarAlgebra;
use crate::numerics::{decompose_star_algebra, gram_positivity, ComplexVector};
use crate::tube::*;

/// Tolerances and seed shared by every suite.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Exact identities (associativity, conjugate equations, local units, ...).
    pub tol: f64,
    /// Quantities derived from eigen-decompositions.
    pub eigen_tol: f64,
    /// Homomorphism residual of the tube-to-double map.
    pub hom_tol: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { tol: 1e-9, eigen_tol: 1e-7, hom_tol: 1e-8, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, t) in [("tol", self.tol), ("eigen-tol", self.eigen_tol), ("hom-tol", self.hom_tol)] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Validation(format!("{name} must be positive, got {t}")));
            }
        }
        Ok(())
    }

    pub fn report(&self, suite: &str) -> Report {
        let mut r = Report::new(suite, self.seed);
        r.tolerances.insert("tol".into(), self.tol);
        r.tolerances.insert("eigen_tol".into(), self.eigen_tol);
        r.tolerances.insert("hom_tol".into(), self.hom_tol);
        r
    }
}

fn usizes(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(x)).collect())
}

/// Associativity, involution, traciality and positivity of the trace form.
fn algebra_checks(r: &mut Report, alg: &StarAlgebra, trace: &ComplexVector, cfg: &RunConfig) -> Result<()> {
    r.check(Check::at_most("associativity", alg.associativity_residual(), cfg.tol));
    r.check(Check::at_most("involution", alg.involution_residual(), cfg.tol));
    let n = alg.dim();
    let mut tracial = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let ab = alg.mul(&alg.basis_vector(a), &alg.basis_vector(b));
            let ba = alg.mul(&alg.basis_vector(b), &alg.basis_vector(a));
            tracial = tracial.max((trace.transpose() * (ab - ba))[(0, 0)].norm());
        }
    }
    r.check(Check::at_most("traciality", tracial, cfg.tol));
    let (_, min) = gram_positivity(trace, alg)?;
    r.check(Check::above("trace_gram_min_eigenvalue", min, 0.0));
    r.put("dim", n);
    Ok(())
}

/// `tube build`: the table itself plus its report.
pub fn tube_build(engine: &Engine, cfg: &RunConfig) -> Result<(Report, TubeTable)> {
    let table = build_tube(engine)?;
    let mut r = cfg.report("tube build");
    r.put("dim", table.dim());
    r.put("labels", Value::Array(table.labels.iter().map(|l| Value::from(l.name.clone())).collect()));
    r.put("components", table.components.len());
    Ok((r, table))
}

pub fn export_table(table: &TubeTable, csv: bool) -> String {
    if csv {
        structure_csv(&table.algebra)
    } else {
        table_json(table)
    }
}

/// `tube verify` on a freshly built table.
pub fn tube_verify(engine: &Engine, cfg: &RunConfig) -> Result<Report> {
    let table = build_tube(engine)?;
    let mut r = cfg.report("tube verify");
    algebra_checks(&mut r, &table.algebra, &table.trace, cfg)?;
    r.check(Check::at_most("trace_formula", trace_residual(&table), cfg.tol));
    r.check(Check::at_most("projections", projection_residual(&table), cfg.tol));
    let vee = vee_anti(engine, &table)?;
    let (anti, star) = vee.residuals(&table);
    r.check(Check::at_most("vee_anti_multiplicative", anti, cfg.tol));
    r.check(Check::at_most("vee_star", star, cfg.tol));
    r.check(Check::at_most("vee_gauge_fit", vee.gauge_residual, cfg.tol));
    r.put("hom_pairing", "<v,w> id = w* v");
    r.put("vee_double_gauge", Value::Array(vee.double_gauge.z.iter().map(|z| complex(*z)).collect()));
    Ok(r)
}

/// `tube verify` on a table read from disk.
pub fn table_verify(table: &LoadedTable, cfg: &RunConfig) -> Result<Report> {
    let mut r = cfg.report("tube verify");
    algebra_checks(&mut r, &table.algebra, &table.trace, cfg)?;
    Ok(r)
}

/// `tube blocks`: block sizes, confirmed with a second seed.
pub fn blocks_of(alg: &StarAlgebra, cfg: &RunConfig, suite: &str) -> Result<Report> {
    let d = decompose_star_algebra(alg, cfg.tol, cfg.seed)?;
    let mut r = cfg.report(suite);
    r.check(Check::at_most("decomposition", d.residual, cfg.eigen_tol));
    let dims = d.dims();
    let sum_sq: usize = dims.iter().map(|x| x * x).sum();
    r.check(Check::equal("sum_of_squares", sum_sq, alg.dim()));
    r.put("block_dims", usizes(&d.sorted_dims()));
    r.put("block_count", dims.len());
    r.put("dim", alg.dim());
    Ok(r)
}

pub fn tube_blocks(engine: &Engine, cfg: &RunConfig) -> Result<Report> {
    let table = build_tube(engine)?;
    blocks_of(&table.algebra, cfg, "tube blocks")
}

/// `double build`: the double, its conditional expectation and its irreps.
pub fn double_build(group: &GroupBackend, cfg: &RunConfig) -> Result<Report> {
    let d = build_double(group)?;
    let mut r = cfg.report("double build");
    r.put("dim", d.dim());
    r.check(Check::equal("dim", d.dim(), group.order() * group.order()));
    r.check(Check::at_most("associativity", d.algebra.associativity_residual(), cfg.tol));
    r.check(Check::at_most("involution", d.algebra.involution_residual(), cfg.tol));
    r.check(Check::at_most("expectation", d.expectation_residual(group.identity()), cfg.tol));
    r.check(Check::above("expectation_gram_min", d.expectation_gram_min(group.identity()), 0.0));
    r.check(Check::at_most("multiplicative_unitary", d.multiplicative_unitary_residual(group), cfg.tol));
    let irr = double_irreps(group, cfg.seed)?;
    let mut dims: Vec<usize> = irr.iter().map(|x| x.dim).collect();
    dims.sort_unstable();
    let blocks = decompose_star_algebra(&d.algebra, cfg.tol, cfg.seed)?;
    r.check(Check::at_most("decomposition", blocks.residual, cfg.eigen_tol));
    r.check(Check::equal("block_count_vs_irreps", blocks.blocks.len(), irr.len()));
    r.put("irrep_dims", usizes(&dims));
    r.put("block_dims", usizes(&blocks.sorted_dims()));
    Ok(r)
}

/// `double corner`: the isomorphism `Tub(G) → 𝒟(G)` and the full corner.
pub fn double_corner(group: &GroupBackend, cfg: &RunConfig) -> Result<Report> {
    let e = group.engine()?;
    let t = build_tube(&e)?;
    let v = vee_anti(&e, &t)?;
    let tg = build_tub_g(&e, &t)?;
    let d = build_double(group)?;
    let iso = tube_to_double(&e, &t, &v, &tg, &d, group.identity())?;
    let corner = verify_full_corner(&t, &tg);
    let mut r = cfg.report("double corner");
    r.check(Check::at_most("homomorphism", iso.homomorphism_residual, cfg.hom_tol));
    r.check(Check::at_most("star", iso.star_residual, cfg.hom_tol));
    r.check(Check::at_most("expectation", iso.expectation_residual, cfg.hom_tol));
    r.check(Check::equal("rank", iso.rank, iso.double_dim));
    r.check(Check::equal("tub_g_dim", tg.dim(), iso.double_dim));
    r.check(Check::equal("corner_image_dim", iso.corner_image_dim, t.dim()));
    r.check(Check::equal("corner_dim", corner.corner_dim, t.dim()));
    r.check(Check::at_most("local_units", corner.local_unit_residual, cfg.tol));
    r.check(Check::at_most("local_unit_isometries", corner.isometry_residual, cfg.tol));
    r.check(Check::at_most("corner_embedding", corner.embedding_residual, cfg.tol));
    r.put("double_dim", iso.double_dim);
    r.put("tube_dim", t.dim());
    r.put("local_unit_family", corner.family_size);
    Ok(r)
}

/// Largest label count of the module 2-category for which `morita verify` builds `Z_reg`.
pub const ZREG_MAX_LABELS: usize = 8;

/// `morita verify`: Q-system, modules, grades, imprimitivity, invariants and `Z_reg(Q)`.
pub fn morita_verify(group: GroupBackend, subgroup: &[usize], cfg: &RunConfig) -> Result<Report> {
    let m = build_morita(group, subgroup)?;
    let mut r = cfg.report("morita verify");
    let qr = &m.q.residuals;
    r.put("index", m.q.dim());
    r.put("subgroup", usizes(subgroup));
    for (name, v) in [
        ("q_isometry", qr.isometry),
        ("q_standardness", qr.standardness),
        ("q_associativity", qr.associativity),
        ("q_unit", qr.unit),
        ("q_frobenius", qr.frobenius),
        ("q_equivariance", qr.equivariance),
    ] {
        r.check(Check::at_most(name, v, cfg.tol));
    }
    r.check(Check::equal("q_bimodule_endomorphisms", qr.bimodule_endomorphisms, 1));
    let mut action = 0.0f64;
    for md in m.left.iter().chain(&m.right).chain(&m.bimodules) {
        action = action.max(md.action_residual(&m.q));
    }
    r.check(Check::at_most("module_actions", action, cfg.tol));
    r.put("right_modules", m.right_labels().len());
    r.put("left_modules", m.left_labels().len());
    r.put("bimodules", m.bimodule_labels().len());

    let mut conj = 0.0f64;
    let mut norm = 0.0f64;
    for k in 0..m.left.len() {
        let sp = module_standard_pair(&m, k)?;
        conj = conj.max(sp.conjugate_residual);
        norm = norm.max((sp.norm_sq - sp.expected_norm_sq).abs()).max((sp.engine_qdim - sp.expected_norm_sq).abs());
    }
    r.check(Check::at_most("module_conjugate_equations", conj, cfg.tol));
    r.check(Check::at_most("module_dimension_rule", norm, cfg.tol));

    let table = build_tube_2cat(&m)?;
    let g = grade_report(&m, &table)?;
    r.put(
        "grade_dims",
        Value::Array(g.dims.iter().map(|row| usizes(row)).collect()),
    );
    r.check(Check::at_most("grading", g.grading_residual, cfg.tol));
    r.check(Check::at_most("grade_00_vs_tube", g.residual_00, cfg.tol));
    r.check(Check::at_most("grade_11_vs_bimodule_tube", g.residual_11, cfg.tol));
    r.check(Check::at_most("associativity", table.algebra.associativity_residual(), cfg.tol));

    let imp = verify_imprimitivity(&m, &table)?;
    let completeness = imp.per_label.iter().map(|x| x.1).fold(0.0, f64::max);
    r.check(Check::at_most("imprimitivity_identity", completeness, cfg.tol));
    r.check(Check::at_most("orthonormal_system", imp.completeness_residual, cfg.tol));
    for (s, &(rk, dim)) in imp.spans.iter().enumerate() {
        r.check(Check::equal(format!("span_rank_{s}{s}"), rk, dim));
    }

    let inv = invariance_report(&m, &table, cfg.tol, cfg.seed)?;
    r.check(Check::equal("block_count_00_vs_11", inv.blocks[0].len(), inv.blocks[1].len()));
    r.check(Check::at_most("fusion_integrality", inv.fusion_integrality, cfg.tol));
    r.put("blocks_00", usizes(&inv.blocks[0]));
    r.put("blocks_11", usizes(&inv.blocks[1]));
    r.put("fusion_ranks", usizes(&inv.fusion_ranks));

    // Z_reg grows quickly with the label count; it is built only for small 2-categories.
    if m.engine.simples().len() > ZREG_MAX_LABELS {
        r.put("zreg_skipped", true);
        return Ok(r);
    }
    let q = m.bimodule_labels()[0];
    let z = build_zreg(&m, q)?;
    let zr = zreg_report(&m, &z)?;
    r.check(Check::at_most("zreg_unitarity", zr.unitarity, cfg.tol));
    r.check(Check::at_most("zreg_naturality", zr.naturality, cfg.tol));
    r.check(Check::at_most("zreg_multiplicativity", zr.multiplicativity, cfg.tol));
    r.check(Check::at_most("zreg_unit", zr.unit, cfg.tol));
    let rep = zreg_representation(&m, &table, &z)?;
    let (mult, star) = rep.star_rep_residuals(&table);
    r.check(Check::at_most("zreg_rep_multiplicative", mult, cfg.tol));
    r.check(Check::at_most("zreg_rep_star", star, cfg.tol));
    r.put("zreg_rep_dim", rep.dim);
    Ok(r)
}

/// `tl corners`: the corners at spins 0 and 1/2 with internal spins up to `window2 / 2`.
pub fn tl_corners(q: &QuantumBackend, window2: usize, cfg: &RunConfig) -> Result<Report> {
    let engine = q.engine()?;
    let window: Vec<usize> = (0..=window2).collect();
    let mut r = cfg.report("tl corners");
    let d = q.q() + 1.0 / q.q();
    r.put("q", float(q.q()));
    r.put("window", format_spin(window2));
    r.put("cutoff", format_spin(q.cutoff2()));
    r.check(Check::at_most("spin_half_qdim", (engine.simple(1).qdim - d).abs(), cfg.tol));
    for (k, name) in [(0usize, "p0"), (1, "p1/2")] {
        let corner = annular_corner(&engine, &window, k, k)?;
        let comm = corner.commutator_residual().unwrap_or(f64::NAN);
        r.check(Check::at_most(format!("{name}_commutators"), comm, cfg.tol));
        r.put(format!("{name}_window_dim"), corner.window_dim());
        r.put(format!("{name}_trace"), corner.projection_trace().map_or(Value::Null, complex));
    }
    Ok(r)
}

/// Built-in fixtures exercising every suite.
pub fn selftest(cfg: &RunConfig) -> Result<Report> {
    let mut r = cfg.report("selftest");
    r.put(
        "out_of_scope",
        "C*-exact sequences and primitive-spectrum topology of infinite tube algebras are not computed",
    );
    let z2 = GroupBackend::new(cyclic_table(2), None, cfg.seed)?;
    let s3 = GroupBackend::new(symmetric_table(3), None, cfg.seed)?;
    r.absorb("z2.tube", tube_verify(&z2.engine()?, cfg)?);
    r.absorb("s3.tube", tube_verify(&s3.engine()?, cfg)?);
    r.absorb("s3.blocks", tube_blocks(&s3.engine()?, cfg)?);
    r.absorb("s3.double", double_corner(&s3, cfg)?);
    r.absorb("z2.morita", morita_verify(z2, &[0], cfg)?);
    r.absorb("tl", tl_corners(&QuantumBackend::new(0.5, 8)?, 4, cfg)?);
    Ok(r)
}
