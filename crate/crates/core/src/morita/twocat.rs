//! The 2-category of `Q`-modules over `Rep G` and its tube algebra.

use std::collections::HashMap;

use super::modules::{simple_modules, QModule, Side};
use super::qsystem::{qsystem_from_gset, QSystem};
use crate::category::carrier::{intertwiners, Carrier};
use crate::category::group::GroupBackend;
use crate::category::{Atom, Engine, Morphism, Word};
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, identity, kron, max_abs, rank, ComplexMatrix, ComplexVector};
use crate::tube::{build_tube, fusion_corner, TubeTable};

/// `𝒞 = Rep G` at 0-cell 0 and `Q-mod-Q` at 0-cell 1, with the one-sided modules between.
pub struct Morita {
    pub group: GroupBackend,
    pub q: QSystem,
    /// Simple left modules; `left[0]` is `Q`.
    pub left: Vec<QModule>,
    /// `right[k]` is the conjugate of `left[k]`.
    pub right: Vec<QModule>,
    /// Simple bimodules other than `Q`.
    pub bimodules: Vec<QModule>,
    pub engine: Engine,
}

impl Morita {
    /// Labels of `mod-Q`, from cell 0 to cell 1.
    pub fn right_labels(&self) -> Vec<usize> {
        self.engine.simples_between(0, 1)
    }

    /// Labels of `Q-mod`, from cell 1 to cell 0.
    pub fn left_labels(&self) -> Vec<usize> {
        self.engine.simples_between(1, 0)
    }

    /// Labels of `Q-mod-Q`, the unit first.
    pub fn bimodule_labels(&self) -> Vec<usize> {
        self.engine.simples_between(1, 1)
    }
}

pub fn build_morita(group: GroupBackend, subgroup: &[usize]) -> Result<Morita> {
    let q = qsystem_from_gset(&group, subgroup)?;
    let left = simple_modules(&group, &q, Side::Left)?;
    let right: Vec<QModule> = left.iter().map(|m| m.conjugate(&q)).collect();
    let bimodules: Vec<QModule> = simple_modules(&group, &q, Side::Bi)?.into_iter().skip(1).collect();

    let mut atoms = group.irrep_atoms();
    let mut simples = vec![("irrep0".to_string(), Word::unit(0))];
    for (k, a) in atoms.iter().enumerate() {
        simples.push((a.name.clone(), Word { source: 0, target: 0, atoms: vec![k] }));
    }
    let mut push = |name: String, source: u8, target: u8, carrier: Carrier, simples: &mut Vec<(String, Word)>| {
        simples.push((name.clone(), Word { source, target, atoms: vec![atoms.len()] }));
        atoms.push(Atom { name, source, target, carrier });
    };
    for (k, m) in right.iter().enumerate() {
        push(format!("M{k}"), 0, 1, m.carrier.clone(), &mut simples);
    }
    for (k, m) in left.iter().enumerate() {
        push(format!("Mbar{k}"), 1, 0, m.carrier.clone(), &mut simples);
    }
    simples.push(("Q".to_string(), Word::unit(1)));
    for (k, m) in bimodules.iter().enumerate() {
        push(format!("X{}", k + 1), 1, 1, m.carrier.clone(), &mut simples);
    }
    let engine = Engine::new(group.coproducts(), Some(q.algebra_object()), atoms, simples)?;
    Ok(Morita { group, q, left, right, bimodules, engine })
}

/// Standard solution of a one-sided module, built from the ordinary one in `Rep G`.
#[derive(Clone, Debug)]
pub struct ModuleStandardPair {
    /// Label of the left module `M`.
    pub label: usize,
    /// `R: 1 → M̄⊗_Q M`.
    pub r: Morphism,
    /// `R̄: Q → M⊗M̄`.
    pub rbar: Morphism,
    pub conjugate_residual: f64,
    pub norm_sq: f64,
    /// `d(Q)^{-1/2} d(M)`.
    pub expected_norm_sq: f64,
    /// Intrinsic dimension the engine assigned to the label.
    pub engine_qdim: f64,
}

/// `R = d(Q)^{-3/4} P_{M̄,M} R_M`, `R̄ = d(Q)^{-1/4} (m^l⊗ι)(ι⊗R̄_M)` for the `k`-th left module.
pub fn module_standard_pair(morita: &Morita, k: usize) -> Result<ModuleStandardPair> {
    let e = &morita.engine;
    let label = morita.left_labels()[k];
    let mw = e.word_of(label).clone();
    let mbw = e.word_of(morita.right_labels()[k]).clone();
    let d = morita.left[k].carrier.dim;
    let dq = morita.q.qdim();
    let n = morita.q.dim();
    // Σ_i ē_i ⊗ e_i, standard for the conjugate representation
    let mut canon = ComplexMatrix::zeros(d * d, 1);
    for i in 0..d {
        canon[(i * d + i, 0)] = c(1.0);
    }
    // P = √d(Q) V* for the fold V, so d(Q)^{-3/4} P = d(Q)^{-1/4} V*
    let v = e.embedding(&mbw, &mw)?;
    let r = Morphism { dom: Word::unit(0), cod: mbw.concat(&mw)?, mat: v.adjoint() * &canon * c(dq.powf(-0.25)) };
    let ml = morita.left[k].carrier.left.as_ref().expect("left module");
    let rbar_mat = kron(ml, &identity(d)) * kron(&identity(n), &canon) * c(dq.powf(-0.25));
    let rbar = Morphism { dom: Word::unit(1), cod: mw.concat(&mbw)?, mat: rbar_mat };

    let e1 = e.tensor(&rbar.adjoint(), &e.identity(&mw))?.compose(&e.tensor(&e.identity(&mw), &r)?)?;
    let e2 = e.tensor(&e.identity(&mbw), &rbar.adjoint())?.compose(&e.tensor(&r, &e.identity(&mbw))?)?;
    let conjugate_residual = max_abs(&(e1.mat - identity(d))).max(max_abs(&(e2.mat - identity(d))));
    let norm_sq = e.scalar(&(r.mat.adjoint() * &r.mat)).re;
    Ok(ModuleStandardPair {
        label,
        r,
        rbar,
        conjugate_residual,
        norm_sq,
        expected_norm_sq: d as f64 / dq.sqrt(),
        engine_qdim: e.simple(label).qdim,
    })
}

pub fn build_tube_2cat(morita: &Morita) -> Result<TubeTable> {
    build_tube(&morita.engine)
}

/// Largest difference of structure constants between grade `(s, s)` of `big` and the whole of
/// `small`, after matching basis elements by label names and basis index.
fn grade_match_residual(big: &TubeTable, s: u8, small: &TubeTable) -> Result<f64> {
    let key = |t: &TubeTable, n: usize| {
        let b = &t.basis[n];
        (t.label_name(b.i).to_string(), t.label_name(b.j).to_string(), t.label_name(b.k).to_string(), b.index)
    };
    let grade = big.grade(s, s);
    let by_key: HashMap<_, usize> = grade.iter().map(|&n| (key(big, n), n)).collect();
    let small_idx: Vec<usize> = (0..small.dim())
        .filter(|&n| {
            let comp = &small.components[small.basis[n].component];
            comp.source == s && comp.target == s
        })
        .collect();
    if small_idx.len() != grade.len() {
        return Err(Error::IsomorphismFailure(format!(
            "grade ({s},{s}) has dimension {}, the reference table {}",
            grade.len(),
            small_idx.len()
        )));
    }
    let mut map = HashMap::new();
    for &n in &small_idx {
        let m = by_key
            .get(&key(small, n))
            .ok_or_else(|| Error::IsomorphismFailure(format!("basis element {:?} has no partner", key(small, n))))?;
        map.insert(n, *m);
    }
    let mut worst = 0.0f64;
    for &a in &small_idx {
        for &b in &small_idx {
            let mut diff: HashMap<usize, crate::numerics::linalg::C64> = HashMap::new();
            for &(x, z) in small.algebra.basis_product(a, b) {
                let target = *map.get(&(x as usize)).ok_or_else(|| Error::IsomorphismFailure("product leaves the grade".into()))?;
                *diff.entry(target).or_default() += z;
            }
            for &(x, z) in big.algebra.basis_product(map[&a], map[&b]) {
                *diff.entry(x as usize).or_default() -= z;
            }
            worst = diff.values().map(|z| z.norm()).fold(worst, f64::max);
        }
    }
    Ok(worst)
}

/// The tube algebra of `Q-mod-Q` alone, with a bare unit at cell 0.
fn bimodule_engine(morita: &Morita) -> Result<Engine> {
    let mut atoms = Vec::new();
    let mut simples = vec![("irrep0".to_string(), Word::unit(0)), ("Q".to_string(), Word::unit(1))];
    for (k, m) in morita.bimodules.iter().enumerate() {
        simples.push((format!("X{}", k + 1), Word { source: 1, target: 1, atoms: vec![k] }));
        atoms.push(Atom { name: format!("X{}", k + 1), source: 1, target: 1, carrier: m.carrier.clone() });
    }
    Engine::new(morita.group.coproducts(), Some(morita.q.algebra_object()), atoms, simples)
}

#[derive(Clone, Debug)]
pub struct GradeReport {
    pub dims: [[usize; 2]; 2],
    /// Structure-constant residual of grade 00 against the tube algebra of `Rep G`.
    pub residual_00: f64,
    /// Same for grade 11 against the tube algebra of `Q-mod-Q`.
    pub residual_11: f64,
    /// Largest coefficient of a product outside the grade it should land in.
    pub grading_residual: f64,
}

pub fn grade_report(morita: &Morita, table: &TubeTable) -> Result<GradeReport> {
    let mut dims = [[0; 2]; 2];
    let mut grade_of = vec![(0u8, 0u8); table.dim()];
    for s in 0..2u8 {
        for t in 0..2u8 {
            let g = table.grade(s, t);
            dims[s as usize][t as usize] = g.len();
            for n in g {
                grade_of[n] = (s, t);
            }
        }
    }
    let mut grading_residual = 0.0f64;
    for a in 0..table.dim() {
        for b in 0..table.dim() {
            let ((r, s1), (s2, t)) = (grade_of[a], grade_of[b]);
            for &(x, z) in table.algebra.basis_product(a, b) {
                if s1 != s2 || grade_of[x as usize] != (r, t) {
                    grading_residual = grading_residual.max(z.norm());
                }
            }
        }
    }
    let rep_table = build_tube(&morita.group.engine()?)?;
    let residual_00 = grade_match_residual(table, 0, &rep_table)?;
    let bi_table = build_tube(&bimodule_engine(morita)?)?;
    let residual_11 = grade_match_residual(table, 1, &bi_table)?;
    Ok(GradeReport { dims, residual_00, residual_11, grading_residual })
}

#[derive(Clone, Debug)]
pub struct ImprimitivityReport {
    /// Per bimodule label: `‖d(Q) p(a) − Σ T T*‖` and the number of `T`s.
    pub per_label: Vec<(usize, f64, usize)>,
    /// Worst `‖Σ u u* − ι‖` over the orthonormal systems used.
    pub completeness_residual: f64,
    /// `(rank of Tub^{st}·Tub^{ts}, dim Tub^{ss})` for `s = 0, 1`.
    pub spans: [(usize, usize); 2],
}

impl ImprimitivityReport {
    pub fn worst(&self) -> f64 {
        self.per_label.iter().map(|x| x.1).fold(self.completeness_residual, f64::max)
    }
}

/// Table vector of `T_j^α = m^l_a(ι_Q ⊗ u)`, viewed in `hom(M̄_e U_j, X_a ⊗_Q M̄_e)`.
fn t_element(morita: &Morita, table: &TubeTable, a: usize, j: usize, u: &ComplexMatrix) -> Result<ComplexVector> {
    let e = &morita.engine;
    let mbar = morita.left_labels()[0];
    let aw = e.word_of(a);
    let mbw = e.word_of(mbar);
    let comp = table
        .components
        .iter()
        .find(|cp| cp.source == 1 && cp.target == 0 && cp.i == a && cp.j == j && cp.k == mbar)
        .ok_or_else(|| Error::ImprimitivityFailure(format!("no component for labels ({a}, {j})")))?;
    let xa = e.carrier(aw);
    let n = morita.q.dim();
    let ml = xa.left.as_ref().expect("bimodule has a left action");
    let mr = xa.right.as_ref().expect("bimodule has a right action");
    let v = e.embedding(aw, mbw)?;
    let mat = v.adjoint() * mr.adjoint() * ml * kron(&identity(n), u) * c(morita.q.qdim().powf(-0.5));
    let mut out = ComplexVector::zeros(table.dim());
    for (q, z) in crate::tube::coordinates(comp, &mat).into_iter().enumerate() {
        out[comp.offset + q] = z;
    }
    Ok(out)
}

pub fn verify_imprimitivity(morita: &Morita, table: &TubeTable) -> Result<ImprimitivityReport> {
    let e = &morita.engine;
    let n = morita.q.dim();
    let dq = morita.q.qdim();
    let mut per_label = Vec::new();
    let mut completeness_residual = 0.0f64;
    for a in morita.bimodule_labels() {
        let xa = e.carrier(e.word_of(a));
        let plain_a = Carrier::plain(xa.gens.clone());
        let mut sum = ComplexVector::zeros(table.dim());
        let mut uu = ComplexMatrix::zeros(xa.dim, xa.dim);
        let mut count = 0;
        for j in e.simples_between(0, 0) {
            let uj = e.carrier(e.word_of(j));
            let scale = c((uj.dim as f64).sqrt());
            for b in intertwiners(&Carrier::plain(uj.gens.clone()), &plain_a, n) {
                let u = b * scale;
                uu += &u * u.adjoint();
                let t = t_element(morita, table, a, j, &u)?;
                sum += table.algebra.mul(&t, &table.algebra.star(&t));
                count += 1;
            }
        }
        completeness_residual = completeness_residual.max(max_abs(&(uu - identity(xa.dim))));
        let p = table
            .projection(a)
            .ok_or_else(|| Error::ImprimitivityFailure(format!("no projection for label {a}")))?;
        let residual = (p * c(dq) - sum).camax();
        per_label.push((a, residual, count));
    }
    let mut spans = [(0, 0); 2];
    for s in 0..2u8 {
        let t = 1 - s;
        let target = table.grade(s, s);
        let pos: HashMap<usize, usize> = target.iter().enumerate().map(|(r, &x)| (x, r)).collect();
        let (left, right) = (table.grade(s, t), table.grade(t, s));
        let mut cols = Vec::new();
        for &x in &left {
            for &y in &right {
                let mut v = ComplexVector::zeros(target.len());
                for &(z, coef) in table.algebra.basis_product(x, y) {
                    let r = *pos.get(&(z as usize)).ok_or_else(|| Error::ImprimitivityFailure("product leaves the grade".into()))?;
                    v[r] += coef;
                }
                cols.push(v);
            }
        }
        let rk = if cols.is_empty() { 0 } else { rank(&ComplexMatrix::from_columns(&cols)) };
        spans[s as usize] = (rk, target.len());
    }
    let report = ImprimitivityReport { per_label, completeness_residual, spans };
    for (s, &(rk, dim)) in report.spans.iter().enumerate() {
        if rk != dim {
            return Err(Error::ImprimitivityFailure(format!(
                "span of products has rank {rk} in grade ({s},{s}) of dimension {dim}"
            )));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// Block sizes of the grades `00` and `11`.
    pub blocks: [Vec<usize>; 2],
    /// Number of simple labels in each cell (the rank of the fusion corner).
    pub fusion_ranks: [usize; 2],
    pub fusion_integrality: f64,
}

pub fn invariance_report(morita: &Morita, table: &TubeTable, tol: f64, seed: u64) -> Result<InvarianceReport> {
    let mut blocks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut fusion_ranks = [0; 2];
    let mut fusion_integrality = 0.0f64;
    for s in 0..2u8 {
        let alg = table.grade_algebra(s)?;
        blocks[s as usize] = crate::numerics::decompose_star_algebra(&alg, tol, seed)?.sorted_dims();
        let fc = fusion_corner(&morita.engine, table, s)?;
        fusion_ranks[s as usize] = fc.labels.len();
        fusion_integrality = fusion_integrality.max(fc.integrality_residual);
    }
    Ok(InvarianceReport { blocks, fusion_ranks, fusion_integrality })
}
