//! Corners `p_k Tub p_l` over a support window, for categories with infinitely many simples.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::category::{Engine, Morphism};
use crate::error::{Error, Result};
use crate::numerics::algebra::SparseVec;
use crate::numerics::linalg::{ComplexVector, C64};

use super::table::{
    basis_elements, component_index, component_product, enumerate_components, label_infos, LabelInfo,
    TubeBasisElement, TubeComponent,
};

#[derive(Clone, Debug)]
pub struct AnnularCorner {
    pub k: usize,
    pub l: usize,
    pub window: Vec<usize>,
    pub labels: Vec<LabelInfo>,
    /// Every nonzero component `(k, l, s)` with `s` among the engine's labels.
    pub components: Vec<TubeComponent>,
    pub basis: Vec<TubeBasisElement>,
    /// Indices of basis vectors whose internal label lies in the window.
    pub window_basis: Vec<usize>,
    /// Products of window basis pairs (only for diagonal corners).
    pub products: BTreeMap<(usize, usize), SparseVec>,
    pub trace: ComplexVector,
    unit: Option<usize>,
}

/// Builds `p_k Tub p_l` with internal labels from the whole engine and products for pairs of
/// window-supported basis vectors. Products escaping the engine's labels are reported.
pub fn annular_corner(engine: &Engine, window: &[usize], k: usize, l: usize) -> Result<AnnularCorner> {
    let n_labels = engine.simples().len();
    if let Some(bad) = window.iter().chain([&k, &l]).find(|&&x| x >= n_labels) {
        return Err(Error::Validation(format!("label {bad} is beyond the engine's {n_labels} labels")));
    }
    let components = enumerate_components(engine, |_, _, i, j, _| i == k && j == l)?;
    let basis = basis_elements(&components);
    let index = component_index(&components);
    let window_basis: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, b)| window.contains(&b.k))
        .map(|(a, _)| a)
        .collect();
    let mut products = BTreeMap::new();
    if k == l {
        let win_comps: Vec<usize> = (0..components.len()).filter(|&c| window.contains(&components[c].k)).collect();
        let pairs: Vec<(usize, usize)> = win_comps.iter().flat_map(|&a| win_comps.iter().map(move |&b| (a, b))).collect();
        let blocks: Vec<Result<((usize, usize), Vec<SparseVec>)>> = pairs
            .par_iter()
            .map(|&(a, b)| Ok(((a, b), component_product(engine, &components, &index, &components[a], &components[b])?)))
            .collect();
        for blk in blocks {
            let ((ca, cb), prods) = blk?;
            let (a0, b0, db) = (components[ca].offset, components[cb].offset, components[cb].dim);
            for (ab, v) in prods.into_iter().enumerate() {
                products.insert((a0 + ab / db, b0 + ab % db), v);
            }
        }
    }
    let mut trace = ComplexVector::zeros(basis.len());
    let unit = engine.unit_label(engine.word_of(k).source);
    if k == l {
        if let Some(e) = unit {
            for comp in components.iter().filter(|c| c.k == e) {
                let uk = engine.word_of(k).clone();
                for (q, b) in comp.basis.iter().enumerate() {
                    let m = Morphism { dom: uk.clone(), cod: uk.clone(), mat: b.clone() };
                    trace[comp.offset + q] = engine.categorical_trace(&m)?;
                }
            }
        }
    }
    Ok(AnnularCorner {
        k,
        l,
        window: window.to_vec(),
        labels: label_infos(engine),
        components,
        basis,
        window_basis,
        products,
        trace,
        unit,
    })
}

impl AnnularCorner {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn window_dim(&self) -> usize {
        self.window_basis.len()
    }

    fn product(&self, a: usize, b: usize) -> Option<ComplexVector> {
        let sv = self.products.get(&(a, b))?;
        let mut v = ComplexVector::zeros(self.dim());
        for &(c, z) in sv {
            v[c as usize] += z;
        }
        Some(v)
    }

    /// `max ‖ab − ba‖` over window basis pairs; `None` for off-diagonal corners.
    pub fn commutator_residual(&self) -> Option<f64> {
        if self.k != self.l {
            return None;
        }
        let mut worst = 0.0f64;
        for &a in &self.window_basis {
            for &b in &self.window_basis {
                let d = self.product(a, b)? - self.product(b, a)?;
                worst = worst.max(d.camax());
            }
        }
        Some(worst)
    }

    /// Trace of the identity of `U_k`, i.e. `τ(p_k)`.
    pub fn projection_trace(&self) -> Option<C64> {
        let e = self.unit?;
        let comp = self.components.iter().find(|c| c.k == e && self.k == self.l)?;
        let d = comp.basis.first()?.nrows();
        let id = crate::numerics::linalg::identity(d);
        let coords = super::table::coordinates(comp, &id);
        Some(coords.iter().enumerate().map(|(q, z)| z * self.trace[comp.offset + q]).sum())
    }
}
