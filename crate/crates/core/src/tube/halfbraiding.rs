//! The representation `π^∨_Z` of the tube algebra defined by a unitary half-braiding.

use crate::category::{Engine, Morphism, Word};
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, frobenius_inner, identity, max_abs, ComplexMatrix, ComplexVector};

use super::table::TubeTable;

/// A finite direct sum `Z_σ = ⊕_m W_m` per covered cell together with unitaries
/// `c_s: U_s ⊗ Z_t → Z_σ ⊗ U_s` for every label `s: σ → t` between covered cells.
#[derive(Clone, Debug)]
pub struct HalfBraiding {
    pub summands: [Option<Vec<Word>>; 2],
    /// Indexed by simple label; block rows follow the summands of the codomain, block
    /// columns those of the domain.
    pub c: Vec<Option<ComplexMatrix>>,
}

fn block_offsets(engine: &Engine, words: &[Word], left: Option<&Word>, right: Option<&Word>) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut at = 0;
    for w in words {
        let mut full = w.clone();
        if let Some(l) = left {
            full = l.concat(&full)?;
        }
        if let Some(r) = right {
            full = full.concat(r)?;
        }
        let d = engine.carrier_dim(&full);
        out.push((at, d));
        at += d;
    }
    Ok(out)
}

impl HalfBraiding {
    /// `Z = 1` in `cell` with identity braidings.
    pub fn trivial(engine: &Engine, cell: u8) -> Self {
        let mut c = vec![None; engine.simples().len()];
        for s in engine.simples_between(cell, cell) {
            c[s] = Some(identity(engine.carrier_dim(engine.word_of(s))));
        }
        let mut summands = [None, None];
        summands[cell as usize] = Some(vec![Word::unit(cell)]);
        Self { summands, c }
    }

    pub fn covers(&self, cell: u8) -> bool {
        self.summands[cell as usize].is_some()
    }

    fn words(&self, cell: u8) -> &[Word] {
        self.summands[cell as usize].as_deref().unwrap_or(&[])
    }

    /// Block `(n, m)` of `c_s*`: `W'_m ⊗ U_s → U_s ⊗ W_n`.
    fn c_star_block(&self, engine: &Engine, s: usize, m: usize, n: usize) -> Result<Morphism> {
        let us = engine.word_of(s);
        let src = self.words(us.source);
        let tgt = self.words(us.target);
        let cs = self.c[s]
            .as_ref()
            .ok_or_else(|| Error::Validation(format!("half-braiding has no component for label {s}")))?;
        let rows = block_offsets(engine, src, None, Some(us))?;
        let cols = block_offsets(engine, tgt, Some(us), None)?;
        let (r0, rd) = rows[m];
        let (c0, cd) = cols[n];
        let blk = cs.view((r0, c0), (rd, cd)).adjoint();
        Ok(Morphism { dom: src[m].concat(us)?, cod: us.concat(&tgt[n])?, mat: blk })
    }

    /// `max ‖c_s c_s* − 1‖, ‖c_s* c_s − 1‖` over available components.
    pub fn unitarity_residual(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .map(|m| {
                let a = max_abs(&(m * m.adjoint() - identity(m.nrows())));
                let b = max_abs(&(m.adjoint() * m - identity(m.ncols())));
                a.max(b)
            })
            .fold(0.0, f64::max)
    }
}

/// One orthonormal vector of `H^∨_{Z,i}`: a morphism `W_m → U_i` supported on one summand.
#[derive(Clone, Debug)]
struct Vector {
    label: usize,
    summand: usize,
    mat: ComplexMatrix,
}

/// Orthonormal basis of `H^∨_Z` for the pairing `(ξ, ζ)ι = ξζ*`, label by label.
fn fibre_basis(engine: &Engine, hb: &HalfBraiding) -> Result<Vec<Vector>> {
    let mut vectors = Vec::new();
    for (i, lab) in engine.simples().iter().enumerate() {
        let cell = lab.word.source;
        if lab.word.target != cell || !hb.covers(cell) {
            continue;
        }
        let scale = c((engine.carrier_dim(&lab.word) as f64).sqrt());
        for (m, w) in hb.words(cell).iter().enumerate() {
            for b in engine.hom(w, &lab.word)?.iter() {
                vectors.push(Vector { label: i, summand: m, mat: b * scale });
            }
        }
    }
    Ok(vectors)
}

#[derive(Clone, Debug)]
pub struct HalfBraidingRep {
    /// Table basis indices on which the representation is defined.
    pub covered: Vec<usize>,
    /// `π^∨_Z(e_a)` for each covered basis index, in the same order.
    pub matrices: Vec<ComplexMatrix>,
    /// Dimension of `H^∨_{Z,i}` per label.
    pub fibre_dims: Vec<usize>,
    pub dim: usize,
}

pub fn represent_half_braiding(engine: &Engine, table: &TubeTable, hb: &HalfBraiding) -> Result<HalfBraidingRep> {
    let unit = hb.unitarity_residual();
    if unit > 1e-8 {
        return Err(Error::Validation(format!("half-braiding is not unitary (residual {unit:.3e})")));
    }
    let vectors = fibre_basis(engine, hb)?;
    let mut fibre_dims = vec![0; engine.simples().len()];
    for v in &vectors {
        fibre_dims[v.label] += 1;
    }
    let covered: Vec<usize> = table
        .basis
        .iter()
        .enumerate()
        .filter(|(_, el)| {
            let comp = &table.components[el.component];
            hb.covers(comp.source) && hb.covers(comp.target)
        })
        .map(|(a, _)| a)
        .collect();
    let dim = vectors.len();
    let mut matrices = Vec::with_capacity(covered.len());
    for &a in &covered {
        let el = &table.basis[a];
        let comp = &table.components[el.component];
        let x = &comp.basis[el.index];
        let (i, j, s) = (comp.i, comp.j, comp.k);
        let (ui, uj, us) = (engine.word_of(i).clone(), engine.word_of(j).clone(), engine.word_of(s).clone());
        let sbar = engine.dual_word(&us);
        let rbar = Morphism { dom: Word::unit(us.source), cod: us.concat(&sbar)?, mat: engine.simple(s).rbar.clone() };
        let xm = Morphism { dom: us.concat(&uj)?, cod: ui.concat(&us)?, mat: x.clone() };
        let head = engine
            .tensor(&engine.identity(&ui), &rbar.adjoint())?
            .compose(&engine.tensor(&xm, &engine.identity(&sbar))?)?;
        let factor = (engine.simple(i).qdim / engine.simple(j).qdim).sqrt();
        let zs = hb.words(comp.source);
        let mut rep = ComplexMatrix::zeros(dim, dim);
        for (col, xi) in vectors.iter().enumerate() {
            if xi.label != j {
                continue;
            }
            let n = xi.summand;
            let wn = &hb.words(comp.target)[n];
            let xim = Morphism { dom: wn.clone(), cod: uj.clone(), mat: xi.mat.clone() };
            let mid = engine.tensor3(&engine.identity(&us), &xim, &engine.identity(&sbar))?;
            for (m, wm) in zs.iter().enumerate() {
                let cstar = hb.c_star_block(engine, s, m, n)?;
                let tail = engine
                    .tensor(&cstar, &engine.identity(&sbar))?
                    .compose(&engine.tensor(&engine.identity(wm), &rbar)?)?;
                let out = head.compose(&mid)?.compose(&tail)?.scale(c(factor));
                let di = engine.carrier_dim(&ui) as f64;
                for (row, zeta) in vectors.iter().enumerate() {
                    if zeta.label == i && zeta.summand == m {
                        rep[(row, col)] += frobenius_inner(&out.mat, &zeta.mat) / c(di);
                    }
                }
            }
        }
        matrices.push(rep);
    }
    Ok(HalfBraidingRep { covered, matrices, fibre_dims, dim })
}

/// Right-hand side of the matrix-coefficient identity, `(1/√(d_i d_j)) Tr_{U_i U_s}(x (ι⊗ξ) c_s* (ζ*⊗ι))`,
/// compared against the representation matrices on every covered basis element.
pub fn coefficient_residual(engine: &Engine, table: &TubeTable, hb: &HalfBraiding, rep: &HalfBraidingRep) -> Result<f64> {
    let vectors = fibre_basis(engine, hb)?;
    let mut worst = 0.0f64;
    for (pos, &a) in rep.covered.iter().enumerate() {
        let el = &table.basis[a];
        let comp = &table.components[el.component];
        let (i, j, s) = (comp.i, comp.j, comp.k);
        let (ui, uj, us) = (engine.word_of(i).clone(), engine.word_of(j).clone(), engine.word_of(s).clone());
        let xm = Morphism { dom: us.concat(&uj)?, cod: ui.concat(&us)?, mat: comp.basis[el.index].clone() };
        let norm = 1.0 / (engine.simple(i).qdim * engine.simple(j).qdim).sqrt();
        for (col, xi) in vectors.iter().enumerate() {
            if xi.label != j {
                continue;
            }
            let wn = &hb.words(comp.target)[xi.summand];
            let xim = Morphism { dom: wn.clone(), cod: uj.clone(), mat: xi.mat.clone() };
            for (row, zeta) in vectors.iter().enumerate() {
                if zeta.label != i {
                    continue;
                }
                let wm = &hb.words(comp.source)[zeta.summand];
                let zm = Morphism { dom: wm.clone(), cod: ui.clone(), mat: zeta.mat.clone() };
                let cstar = hb.c_star_block(engine, s, zeta.summand, xi.summand)?;
                let t = xm
                    .compose(&engine.tensor(&engine.identity(&us), &xim)?)?
                    .compose(&cstar)?
                    .compose(&engine.tensor(&zm.adjoint(), &engine.identity(&us))?)?;
                let want = engine.categorical_trace(&t)? * c(norm);
                worst = worst.max((rep.matrices[pos][(row, col)] - want).norm());
            }
        }
    }
    Ok(worst)
}

impl HalfBraidingRep {
    fn position(&self, a: usize) -> Option<usize> {
        self.covered.binary_search(&a).ok()
    }

    /// `π(v)` for a table vector supported on covered indices.
    pub fn apply(&self, v: &ComplexVector) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (pos, &a) in self.covered.iter().enumerate() {
            if v[a].norm() > 0.0 {
                out += &self.matrices[pos] * v[a];
            }
        }
        out
    }

    /// `max ‖π(ab) − π(a)π(b)‖` and `max ‖π(a*) − π(a)†‖` over covered basis elements.
    pub fn star_rep_residuals(&self, table: &TubeTable) -> (f64, f64) {
        let alg = &table.algebra;
        let mut mult = 0.0f64;
        for (pa, &a) in self.covered.iter().enumerate() {
            for (pb, &b) in self.covered.iter().enumerate() {
                let mut lhs = ComplexMatrix::zeros(self.dim, self.dim);
                for &(k, z) in alg.basis_product(a, b) {
                    if let Some(pk) = self.position(k as usize) {
                        lhs += &self.matrices[pk] * z;
                    }
                }
                let rhs = &self.matrices[pa] * &self.matrices[pb];
                mult = mult.max(max_abs(&(lhs - rhs)));
            }
        }
        let mut star = 0.0f64;
        for (pa, &a) in self.covered.iter().enumerate() {
            let st = alg.star(&table.unit_vector(a));
            star = star.max(max_abs(&(self.apply(&st) - self.matrices[pa].adjoint())));
        }
        (mult, star)
    }
}
