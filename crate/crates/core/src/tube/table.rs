//! Structure constants of the tube algebra of a (2-)category engine.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::category::{Engine, Morphism, Word};
use crate::error::{Error, Result};
use crate::numerics::algebra::{SparseVec, StarAlgebra};
use crate::numerics::linalg::{c, frobenius_inner, ComplexMatrix, ComplexVector, C64};

/// Coefficients below this are treated as structural zeros.
const COEFF_DROP: f64 = 1e-13;

/// One summand `hom(U_k ⊗ U_j, U_i ⊗ U_k)` with `k` from cell `source` to cell `target`.
#[derive(Clone, Debug)]
pub struct TubeComponent {
    pub source: u8,
    pub target: u8,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Index of the first basis vector of this component in the table.
    pub offset: usize,
    /// Frobenius-orthonormal basis; empty when the table was loaded from a file.
    pub basis: Vec<ComplexMatrix>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeBasisElement {
    pub component: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct LabelInfo {
    pub name: String,
    pub source: u8,
    pub target: u8,
    pub dual: usize,
    pub qdim: f64,
}

/// Tube algebra as a structure-constant table.
#[derive(Clone, Debug)]
pub struct TubeTable {
    pub labels: Vec<LabelInfo>,
    pub components: Vec<TubeComponent>,
    pub basis: Vec<TubeBasisElement>,
    pub algebra: StarAlgebra,
    pub trace: ComplexVector,
    /// `(label, p_label)` for every label with a diagonal unit component.
    pub projections: Vec<(usize, ComplexVector)>,
}

pub(crate) fn label_infos(engine: &Engine) -> Vec<LabelInfo> {
    engine
        .simples()
        .iter()
        .map(|s| LabelInfo {
            name: s.name.clone(),
            source: s.word.source,
            target: s.word.target,
            dual: s.dual,
            qdim: s.qdim,
        })
        .collect()
}

/// Enumerates the nonzero components whose internal label passes `keep`, in the order
/// (source, target, i, j, k) with labels in engine order.
pub(crate) fn enumerate_components<F>(engine: &Engine, keep: F) -> Result<Vec<TubeComponent>>
where
    F: Fn(u8, u8, usize, usize, usize) -> bool + Sync,
{
    let cells: Vec<u8> = if engine.algebra().is_some() { vec![0, 1] } else { vec![0] };
    let mut keys = Vec::new();
    for &s in &cells {
        for &t in &cells {
            for &i in &engine.simples_between(s, s) {
                for &j in &engine.simples_between(t, t) {
                    for &k in &engine.simples_between(s, t) {
                        if keep(s, t, i, j, k) {
                            keys.push((s, t, i, j, k));
                        }
                    }
                }
            }
        }
    }
    let bases: Vec<Result<Vec<ComplexMatrix>>> = keys
        .par_iter()
        .map(|&(_, _, i, j, k)| {
            let dom = engine.word_of_labels(&[k, j])?;
            let cod = engine.word_of_labels(&[i, k])?;
            Ok(engine.hom(&dom, &cod)?.as_ref().clone())
        })
        .collect();
    let mut out = Vec::new();
    let mut offset = 0;
    for (&(s, t, i, j, k), basis) in keys.iter().zip(bases) {
        let basis = basis?;
        if basis.is_empty() {
            continue;
        }
        let dim = basis.len();
        out.push(TubeComponent { source: s, target: t, i, j, k, offset, basis, dim });
        offset += dim;
    }
    Ok(out)
}

pub(crate) fn basis_elements(components: &[TubeComponent]) -> Vec<TubeBasisElement> {
    components
        .iter()
        .enumerate()
        .flat_map(|(ci, comp)| {
            (0..comp.dim).map(move |index| TubeBasisElement { component: ci, i: comp.i, j: comp.j, k: comp.k, index })
        })
        .collect()
}

pub(crate) type ComponentIndex = HashMap<(usize, usize, usize), usize>;

pub(crate) fn component_index(components: &[TubeComponent]) -> ComponentIndex {
    components.iter().enumerate().map(|(n, c)| ((c.i, c.j, c.k), n)).collect()
}

fn morphism(dom: Word, cod: Word, mat: ComplexMatrix) -> Morphism {
    Morphism { dom, cod, mat }
}

/// Coordinates of `m` in a Frobenius-orthonormal component basis.
pub(crate) fn coordinates(comp: &TubeComponent, m: &ComplexMatrix) -> Vec<C64> {
    comp.basis.iter().map(|b| frobenius_inner(m, b)).collect()
}

/// Products of all basis pairs of two components, as sparse vectors in table coordinates.
/// Fails with a truncation escape when `U_r ⊗ U_t` is not exhausted by the engine's labels.
pub(crate) fn component_product(
    engine: &Engine,
    components: &[TubeComponent],
    index: &ComponentIndex,
    ca: &TubeComponent,
    cb: &TubeComponent,
) -> Result<Vec<SparseVec>> {
    let (r, t) = (ca.k, cb.k);
    let (i, k, j) = (ca.i, ca.j, cb.j);
    let ur = engine.word_of(r).clone();
    let ut = engine.word_of(t).clone();
    let ui = engine.word_of(i).clone();
    let uj = engine.word_of(j).clone();
    let uk = engine.word_of(k).clone();
    let rt = ur.concat(&ut)?;
    let id_t = engine.identity(&ut);
    let id_r = engine.identity(&ur);
    let id_i = engine.identity(&ui);
    let id_j = engine.identity(&uj);
    let xs: Vec<ComplexMatrix> = ca
        .basis
        .iter()
        .map(|x| {
            let xm = morphism(ur.concat(&uk)?, ui.concat(&ur)?, x.clone());
            Ok(engine.tensor(&xm, &id_t)?.mat)
        })
        .collect::<Result<_>>()?;
    let ys: Vec<ComplexMatrix> = cb
        .basis
        .iter()
        .map(|y| {
            let ym = morphism(ut.concat(&uj)?, uk.concat(&ut)?, y.clone());
            Ok(engine.tensor(&id_r, &ym)?.mat)
        })
        .collect::<Result<_>>()?;
    let mut out = vec![SparseVec::new(); ca.dim * cb.dim];
    let mut covered = 0usize;
    for s in engine.simples_between(ca.source, cb.target) {
        let us = engine.word_of(s).clone();
        let ws = engine.hom_isometries(&us, &rt)?;
        covered += ws.len() * engine.carrier_dim(&us);
        if ws.is_empty() {
            continue;
        }
        let Some(&target) = index.get(&(i, j, s)) else {
            continue;
        };
        let tc = &components[target];
        let mut acc = vec![ComplexMatrix::zeros(0, 0); ca.dim * cb.dim];
        for w in &ws {
            let wm = morphism(us.clone(), rt.clone(), w.clone());
            let wj = engine.tensor(&wm, &id_j)?.mat;
            let wi = engine.tensor(&id_i, &wm.adjoint())?.mat;
            let left: Vec<ComplexMatrix> = xs.iter().map(|x| &wi * x).collect();
            let right: Vec<ComplexMatrix> = ys.iter().map(|y| y * &wj).collect();
            for (a, l) in left.iter().enumerate() {
                for (b, rgt) in right.iter().enumerate() {
                    let p = l * rgt;
                    let slot = &mut acc[a * cb.dim + b];
                    if slot.nrows() == 0 {
                        *slot = p;
                    } else {
                        *slot += p;
                    }
                }
            }
        }
        for (ab, m) in acc.iter().enumerate() {
            for (n, z) in coordinates(tc, m).into_iter().enumerate() {
                if z.norm() > COEFF_DROP {
                    out[ab].push(((tc.offset + n) as u32, z));
                }
            }
        }
    }
    if covered != engine.carrier_dim(&rt) {
        return Err(Error::TruncationEscape {
            left: engine.simple(r).name.clone(),
            right: engine.simple(t).name.clone(),
            needed: "a label beyond the cutoff".into(),
            cutoff: engine.simples().last().map(|s| s.name.clone()).unwrap_or_default(),
        });
    }
    Ok(out)
}

/// Image of a basis element under the involution, in table coordinates.
pub(crate) fn involution_of(
    engine: &Engine,
    components: &[TubeComponent],
    index: &ComponentIndex,
    comp: &TubeComponent,
    x: &ComplexMatrix,
) -> Result<ComplexVector> {
    let k = comp.k;
    let s = engine.simple(k).dual;
    let (i, j) = (comp.i, comp.j);
    let us = engine.word_of(s).clone();
    let uk = engine.word_of(k).clone();
    let ui = engine.word_of(i).clone();
    let uj = engine.word_of(j).clone();
    let ls = engine.simple(s);
    // R_s: 1 → U_k U_s and R̄_s: 1 → U_s U_k
    let r_s = morphism(Word::unit(us.target), uk.concat(&us)?, ls.r.clone());
    let rb_s = morphism(Word::unit(us.source), us.concat(&uk)?, ls.rbar.clone());
    let xm = morphism(uk.concat(&uj)?, ui.concat(&uk)?, x.clone());
    let step1 = engine.tensor(&engine.identity(&us.concat(&ui)?), &r_s)?;
    let step2 = engine.tensor3(&engine.identity(&us), &xm.adjoint(), &engine.identity(&us))?;
    let step3 = engine.tensor(&rb_s.adjoint(), &engine.identity(&uj.concat(&us)?))?;
    let m = step3.compose(&step2)?.compose(&step1)?;
    let n = components.last().map_or(0, |c| c.offset + c.dim);
    let mut out = ComplexVector::zeros(n);
    let target = index
        .get(&(j, i, s))
        .ok_or_else(|| Error::Validation(format!("involution target component ({j},{i},{s}) is missing")))?;
    let tc = &components[*target];
    for (q, z) in coordinates(tc, &m.mat).into_iter().enumerate() {
        out[tc.offset + q] = z;
    }
    Ok(out)
}

/// Builds the tube algebra over every simple label of the engine.
pub fn build_tube(engine: &Engine) -> Result<TubeTable> {
    let components = enumerate_components(engine, |_, _, _, _, _| true)?;
    assemble(engine, components)
}

pub(crate) fn assemble(engine: &Engine, components: Vec<TubeComponent>) -> Result<TubeTable> {
    let index = component_index(&components);
    let basis = basis_elements(&components);
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..components.len())
        .flat_map(|a| (0..components.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| components[a].target == components[b].source && components[a].j == components[b].i)
        .collect();
    let blocks: Vec<Result<((usize, usize), Vec<SparseVec>)>> = pairs
        .par_iter()
        .map(|&(a, b)| Ok(((a, b), component_product(engine, &components, &index, &components[a], &components[b])?)))
        .collect();
    let mut products = vec![SparseVec::new(); n * n];
    for blk in blocks {
        let ((ca, cb), prods) = blk?;
        let (a0, b0) = (components[ca].offset, components[cb].offset);
        let db = components[cb].dim;
        for (ab, v) in prods.into_iter().enumerate() {
            products[(a0 + ab / db) * n + b0 + ab % db] = v;
        }
    }
    let stars: Vec<Result<(usize, ComplexVector)>> = basis
        .par_iter()
        .enumerate()
        .map(|(a, el)| {
            let comp = &components[el.component];
            Ok((a, involution_of(engine, &components, &index, comp, &comp.basis[el.index])?))
        })
        .collect();
    let mut involution = ComplexMatrix::zeros(n, n);
    for st in stars {
        let (a, v) = st?;
        involution.set_column(a, &v);
    }
    let algebra = StarAlgebra::new(n, products, involution)?;
    let mut trace = ComplexVector::zeros(n);
    let mut projections = Vec::new();
    for comp in &components {
        let unit = engine.unit_label(comp.source);
        if comp.source != comp.target || Some(comp.k) != unit || comp.i != comp.j {
            continue;
        }
        let ui = engine.word_of(comp.i).clone();
        let mut p = ComplexVector::zeros(n);
        let id = crate::numerics::linalg::identity(engine.carrier_dim(&ui));
        for (q, b) in comp.basis.iter().enumerate() {
            let m = morphism(ui.clone(), ui.clone(), b.clone());
            trace[comp.offset + q] = engine.categorical_trace(&m)?;
            p[comp.offset + q] = frobenius_inner(&id, b);
        }
        projections.push((comp.i, p));
    }
    Ok(TubeTable { labels: label_infos(engine), components, basis, algebra, trace, projections })
}

impl TubeTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn tube_trace(&self, x: &ComplexVector) -> C64 {
        (self.trace.transpose() * x)[(0, 0)]
    }

    pub fn projection(&self, label: usize) -> Option<&ComplexVector> {
        self.projections.iter().find(|(l, _)| *l == label).map(|(_, p)| p)
    }

    /// Sum of all `p_i`.
    pub fn unit(&self) -> ComplexVector {
        let mut u = ComplexVector::zeros(self.dim());
        for (_, p) in &self.projections {
            u += p;
        }
        u
    }

    /// Basis indices of the grade `(s, t)`.
    pub fn grade(&self, s: u8, t: u8) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, b)| {
                let comp = &self.components[b.component];
                comp.source == s && comp.target == t
            })
            .map(|(n, _)| n)
            .collect()
    }

    /// The diagonal grade `(s, s)` as a *-algebra on its own basis.
    pub fn grade_algebra(&self, s: u8) -> Result<StarAlgebra> {
        self.algebra.coordinate_subalgebra(&self.grade(s, s))
    }

    pub fn label_name(&self, k: usize) -> &str {
        &self.labels[k].name
    }

    pub fn unit_vector(&self, a: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.dim());
        v[a] = c(1.0);
        v
    }
}
