//! Regular half-braidings `Z_reg(Q, Y)` on the module 2-category.

use super::twocat::Morita;
use crate::category::{Engine, Morphism, Word};
use crate::error::Result;
use crate::numerics::linalg::{c, identity, max_abs, ComplexMatrix};
use crate::tube::{represent_half_braiding, HalfBraiding, HalfBraidingRep, TubeTable};

/// `Z_0 = ⊕_k M_k⊗_Q Y⊗_Q M̄_k`, `Z_1 = ⊕_a X_a⊗_Q Y⊗_Q X̄_a`, with components `c_X` for every
/// simple label.
#[derive(Clone, Debug)]
pub struct RegularHalfBraiding {
    /// Label of the coefficient bimodule.
    pub y: usize,
    pub half: HalfBraiding,
}

/// Summands `A·Y·Ā` of `Z_t`, one per simple `A: t → 1`.
fn summands(engine: &Engine, y: usize, t: u8) -> Result<Vec<(usize, Word)>> {
    let yw = engine.word_of(y);
    engine
        .simples_between(t, 1)
        .into_iter()
        .map(|a| {
            let aw = engine.word_of(a);
            Ok((a, Word::cat(&[aw, yw, &engine.dual_word(aw)])?))
        })
        .collect()
}

fn offsets(engine: &Engine, words: &[Word]) -> Vec<(usize, usize)> {
    let mut at = 0;
    words
        .iter()
        .map(|w| {
            let d = engine.carrier_dim(w);
            at += d;
            (at - d, d)
        })
        .collect()
}

/// `c_X: X⊗Z_t → Z_s⊗X` for an arbitrary word `X: s → t`. The block from summand `a` to
/// summand `k` is `√(d_a/d_k) Σ_α (u_α*⊗ι_Y⊗u_α^∨⊗ι_X)(ι⊗R_X)` over an orthonormal basis of
/// isometries `u_α: A_k → X⊗A_a`.
pub fn zreg_component(engine: &Engine, y: usize, x: &Word) -> Result<ComplexMatrix> {
    let yw = engine.word_of(y).clone();
    let rows = summands(engine, y, x.source)?;
    let cols = summands(engine, y, x.target)?;
    let row_words: Vec<Word> = rows.iter().map(|(_, w)| w.concat(x)).collect::<Result<_>>()?;
    let col_words: Vec<Word> = cols.iter().map(|(_, w)| x.concat(w)).collect::<Result<_>>()?;
    let (ro, co) = (offsets(engine, &row_words), offsets(engine, &col_words));
    let total_r: usize = ro.iter().map(|p| p.1).sum();
    let total_c: usize = co.iter().map(|p| p.1).sum();
    let mut out = ComplexMatrix::zeros(total_r, total_c);
    let (rx, _) = engine.standard_pair(x)?;
    for (ci, (a, _)) in cols.iter().enumerate() {
        let aw = engine.word_of(*a).clone();
        let xa = x.concat(&aw)?;
        let lift = engine.tensor(&engine.identity(&col_words[ci]), &rx)?;
        for (ri, (k, _)) in rows.iter().enumerate() {
            let kw = engine.word_of(*k).clone();
            let factor = (engine.simple(*a).qdim / engine.simple(*k).qdim).sqrt();
            let mut block = ComplexMatrix::zeros(ro[ri].1, co[ci].1);
            for u in engine.hom_isometries(&kw, &xa)? {
                let um = Morphism { dom: kw.clone(), cod: xa.clone(), mat: u };
                let uv = engine.vee(&um)?;
                let head = engine.tensor(
                    &engine.tensor3(&um.adjoint(), &engine.identity(&yw), &uv)?,
                    &engine.identity(x),
                )?;
                block += head.compose(&lift)?.mat;
            }
            out.view_mut((ro[ri].0, co[ci].0), (ro[ri].1, co[ci].1)).copy_from(&(block * c(factor)));
        }
    }
    Ok(out)
}

pub fn build_zreg(morita: &Morita, y: usize) -> Result<RegularHalfBraiding> {
    let e = &morita.engine;
    let z0 = summands(e, y, 0)?.into_iter().map(|p| p.1).collect();
    let z1 = summands(e, y, 1)?.into_iter().map(|p| p.1).collect();
    let c = (0..e.simples().len())
        .map(|s| zreg_component(e, y, e.word_of(s)).map(Some))
        .collect::<Result<_>>()?;
    Ok(RegularHalfBraiding { y, half: HalfBraiding { summands: [Some(z0), Some(z1)], c } })
}

#[derive(Clone, Debug)]
pub struct ZregReport {
    pub unitarity: f64,
    pub naturality: f64,
    pub multiplicativity: f64,
    /// `‖c_1 − ι‖` at the units of both cells.
    pub unit: f64,
}

impl ZregReport {
    pub fn worst(&self) -> f64 {
        self.unitarity.max(self.naturality).max(self.multiplicativity).max(self.unit)
    }
}

/// Block-diagonal `T⊗ι_Z` (`left = true`) or `ι_Z⊗T` over the summands of `Z`.
fn whisker(engine: &Engine, t: &Morphism, z: &[Word], left: bool) -> Result<ComplexMatrix> {
    let blocks: Vec<ComplexMatrix> = z
        .iter()
        .map(|w| {
            let id = engine.identity(w);
            Ok(if left { engine.tensor(t, &id)? } else { engine.tensor(&id, t)? }.mat)
        })
        .collect::<Result<_>>()?;
    let (r, cc) = blocks.iter().fold((0, 0), |(r, cc), b| (r + b.nrows(), cc + b.ncols()));
    let mut out = ComplexMatrix::zeros(r, cc);
    let (mut i, mut j) = (0, 0);
    for b in blocks {
        out.view_mut((i, j), (b.nrows(), b.ncols())).copy_from(&b);
        i += b.nrows();
        j += b.ncols();
    }
    Ok(out)
}

/// `(c_X⊗ι_{X'})(ι_X⊗c_{X'})` assembled block by block through the middle summands.
fn composite(engine: &Engine, y: usize, x: &Word, x2: &Word) -> Result<ComplexMatrix> {
    let z = |cell| -> Result<Vec<Word>> { Ok(summands(engine, y, cell)?.into_iter().map(|p| p.1).collect()) };
    let (zr, zs, zt) = (z(x.source)?, z(x.target)?, z(x2.target)?);
    let cx = zreg_component(engine, y, x)?;
    let cx2 = zreg_component(engine, y, x2)?;
    let words = |zz: &[Word], l: Option<&Word>, r: Option<&Word>| -> Result<Vec<Word>> {
        zz.iter()
            .map(|w| {
                let mut f = w.clone();
                if let Some(l) = l {
                    f = l.concat(&f)?;
                }
                if let Some(r) = r {
                    f = f.concat(r)?;
                }
                Ok(f)
            })
            .collect()
    };
    // c_X rows Z_r X, cols X Z_s; c_{X'} rows Z_s X', cols X' Z_t
    let cx_rows = offsets(engine, &words(&zr, None, Some(x))?);
    let cx_cols = offsets(engine, &words(&zs, Some(x), None)?);
    let c2_rows = offsets(engine, &words(&zs, None, Some(x2))?);
    let c2_cols = offsets(engine, &words(&zt, Some(x2), None)?);
    let out_rows = offsets(engine, &words(&zr, None, Some(&x.concat(x2)?))?);
    let out_cols = offsets(engine, &words(&zt, Some(&x.concat(x2)?), None)?);
    let nr: usize = out_rows.iter().map(|p| p.1).sum();
    let nc: usize = out_cols.iter().map(|p| p.1).sum();
    let mut out = ComplexMatrix::zeros(nr, nc);
    for (k, wk) in zr.iter().enumerate() {
        for (a, wa) in zt.iter().enumerate() {
            let mut block = ComplexMatrix::zeros(out_rows[k].1, out_cols[a].1);
            for (m, wm) in zs.iter().enumerate() {
                let b2 = Morphism {
                    dom: x2.concat(wa)?,
                    cod: wm.concat(x2)?,
                    mat: cx2.view((c2_rows[m].0, c2_cols[a].0), (c2_rows[m].1, c2_cols[a].1)).into_owned(),
                };
                let b1 = Morphism {
                    dom: x.concat(wm)?,
                    cod: wk.concat(x)?,
                    mat: cx.view((cx_rows[k].0, cx_cols[m].0), (cx_rows[k].1, cx_cols[m].1)).into_owned(),
                };
                let step = engine.tensor(&engine.identity(x), &b2)?;
                let step2 = engine.tensor(&b1, &engine.identity(x2))?;
                block += step2.compose(&step)?.mat;
            }
            out.view_mut((out_rows[k].0, out_cols[a].0), (out_rows[k].1, out_cols[a].1)).copy_from(&block);
        }
    }
    Ok(out)
}

/// Unitarity on all simple labels, multiplicativity on all composable label pairs, and
/// naturality on the hom bases from those pairs to simple labels.
pub fn zreg_report(morita: &Morita, z: &RegularHalfBraiding) -> Result<ZregReport> {
    let e = &morita.engine;
    let unitarity = z.half.unitarity_residual();
    let mut unit = 0.0f64;
    for cell in 0..2u8 {
        let m = zreg_component(e, z.y, &Word::unit(cell))?;
        unit = unit.max(max_abs(&(&m - identity(m.nrows()))));
    }
    let zw = |cell: u8| -> Vec<Word> { z.half.summands[cell as usize].clone().unwrap_or_default() };
    let n = e.simples().len();
    let mut multiplicativity = 0.0f64;
    let mut naturality = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            let (xp, xq) = (e.word_of(p).clone(), e.word_of(q).clone());
            if xp.target != xq.source || xp.is_unit() || xq.is_unit() {
                continue;
            }
            let xx = xp.concat(&xq)?;
            let direct = zreg_component(e, z.y, &xx)?;
            let comp = composite(e, z.y, &xp, &xq)?;
            multiplicativity = multiplicativity.max(max_abs(&(&direct - comp)));
            for l in e.simples_between(xx.source, xx.target) {
                let lw = e.word_of(l).clone();
                let cl = z.half.c[l].as_ref().expect("every label has a component");
                for t in e.hom(&xx, &lw)?.iter() {
                    let tm = Morphism { dom: xx.clone(), cod: lw.clone(), mat: t.clone() };
                    let lhs = cl * whisker(e, &tm, &zw(xx.target), true)?;
                    let rhs = whisker(e, &tm, &zw(xx.source), false)? * &direct;
                    naturality = naturality.max(max_abs(&(lhs - rhs)));
                }
            }
        }
    }
    Ok(ZregReport { unitarity, naturality, multiplicativity, unit })
}

/// `π^∨` of the grade-00 part `(Z_0, c^{00})`, a representation of `Tub(𝒞)`.
pub fn zreg_representation(morita: &Morita, table: &TubeTable, z: &RegularHalfBraiding) -> Result<HalfBraidingRep> {
    let e = &morita.engine;
    let mut c = vec![None; e.simples().len()];
    for s in e.simples_between(0, 0) {
        c[s] = z.half.c[s].clone();
    }
    let half = HalfBraiding { summands: [z.half.summands[0].clone(), None], c };
    represent_half_braiding(e, table, &half)
}
