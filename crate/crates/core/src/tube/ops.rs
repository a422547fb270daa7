use std::collections::VecDeque;

use crate::category::{Engine, Morphism};
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, identity, ComplexMatrix, ComplexVector, C64};
use crate::numerics::{decompose_star_algebra, BlockDecomposition};

use super::table::{component_index, coordinates, TubeTable};

/// Unit-modulus phase per simple label.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeVector {
    pub z: Vec<C64>,
}

impl GaugeVector {
    pub fn new(z: Vec<C64>) -> Result<Self> {
        if let Some((k, bad)) = z.iter().enumerate().find(|(_, w)| (w.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::Validation(format!("gauge phase {k} has modulus {}", bad.norm())));
        }
        Ok(Self { z })
    }

    pub fn trivial(n: usize) -> Self {
        Self { z: vec![c(1.0); n] }
    }

    pub fn compose(&self, other: &GaugeVector) -> GaugeVector {
        GaugeVector { z: self.z.iter().zip(&other.z).map(|(a, b)| a * b).collect() }
    }
}

/// Multiplication table of the corner `p_e Tub p_e` in the basis `[U_s]`.
#[derive(Clone, Debug)]
pub struct FusionCorner {
    pub labels: Vec<usize>,
    /// `n[r][t][s]` is the coefficient of `[U_s]` in `[U_r][U_t]`.
    pub n: Vec<Vec<Vec<f64>>>,
    /// Largest imaginary part or deviation from an integer seen.
    pub integrality_residual: f64,
}

/// Table coordinates of `[U_s]`, the identity morphism in the component `(e, e, s)`.
fn class_vector(table: &TubeTable, e: usize, s: usize) -> Option<ComplexVector> {
    let comp = table.components.iter().find(|c| c.i == e && c.j == e && c.k == s)?;
    let d = comp.basis.first()?.nrows();
    let mut v = ComplexVector::zeros(table.dim());
    for (q, z) in coordinates(comp, &identity(d)).into_iter().enumerate() {
        v[comp.offset + q] = z;
    }
    Some(v)
}

pub fn fusion_corner(engine: &Engine, table: &TubeTable, cell: u8) -> Result<FusionCorner> {
    let e = engine
        .unit_label(cell)
        .ok_or_else(|| Error::Validation(format!("no unit label in cell {cell}")))?;
    let labels = engine.simples_between(cell, cell);
    let classes: Vec<ComplexVector> = labels
        .iter()
        .map(|&s| class_vector(table, e, s).ok_or_else(|| Error::Validation(format!("label {s} missing from the unit corner"))))
        .collect::<Result<_>>()?;
    let mut n = vec![vec![vec![0.0; labels.len()]; labels.len()]; labels.len()];
    let mut worst = 0.0f64;
    for (r, xr) in classes.iter().enumerate() {
        for (t, xt) in classes.iter().enumerate() {
            let prod = table.algebra.mul(xr, xt);
            let mut rest = prod.clone();
            for (s, xs) in classes.iter().enumerate() {
                let norm2 = xs.norm_squared();
                let coef = xs.dotc(&prod) / c(norm2);
                rest -= xs * coef;
                worst = worst.max(coef.im.abs()).max((coef.re - coef.re.round()).abs());
                n[r][t][s] = coef.re;
            }
            worst = worst.max(rest.camax());
        }
    }
    Ok(FusionCorner { labels, n, integrality_residual: worst })
}

/// `γ_z(x)^s_{ij} = z_i z̄_j x^s_{ij}` on table coordinates.
pub fn gauge(table: &TubeTable, z: &GaugeVector, x: &ComplexVector) -> Result<ComplexVector> {
    if z.z.len() != table.labels.len() {
        return Err(Error::Shape(format!("gauge vector has {} phases, table has {} labels", z.z.len(), table.labels.len())));
    }
    let mut out = x.clone();
    for (a, el) in table.basis.iter().enumerate() {
        out[a] *= z.z[el.i] * z.z[el.j].conj();
    }
    Ok(out)
}

/// Matrix of `x ↦ x^∨` (column `a` is the image of basis vector `a`) and the gauge vector with
/// `∨∨ = γ_z`, fitted from the per-component scalars of `∨∨`.
#[derive(Clone, Debug)]
pub struct VeeMap {
    pub matrix: ComplexMatrix,
    pub double_gauge: GaugeVector,
    /// `max ‖x^∨∨ − γ_z(x)‖` over the basis.
    pub gauge_residual: f64,
}

pub fn vee_anti(engine: &Engine, table: &TubeTable) -> Result<VeeMap> {
    let n = table.dim();
    let index = component_index(&table.components);
    let mut matrix = ComplexMatrix::zeros(n, n);
    for comp in &table.components {
        let dom = engine.word_of_labels(&[comp.k, comp.j])?;
        let cod = engine.word_of_labels(&[comp.i, comp.k])?;
        let dual = |l: usize| engine.simple(l).dual;
        let (ti, tj, tk) = (dual(comp.j), dual(comp.i), dual(comp.k));
        let target = index
            .get(&(ti, tj, tk))
            .map(|&t| &table.components[t])
            .ok_or_else(|| Error::Validation(format!("∨ target component ({ti},{tj},{tk}) is missing")))?;
        for (q, x) in comp.basis.iter().enumerate() {
            let v = engine.vee(&Morphism { dom: dom.clone(), cod: cod.clone(), mat: x.clone() })?;
            for (p, z) in coordinates(target, &v.mat).into_iter().enumerate() {
                matrix[(target.offset + p, comp.offset + q)] = z;
            }
        }
    }
    let twice = &matrix * &matrix;
    // Per-component scalars c_{ij} with x^∨∨ = c_{ij} x, then phases by breadth-first propagation.
    let labels = table.labels.len();
    let mut edges: Vec<Vec<(usize, C64)>> = vec![Vec::new(); labels];
    for comp in &table.components {
        let mut acc = C64::new(0.0, 0.0);
        for q in 0..comp.dim {
            acc += twice[(comp.offset + q, comp.offset + q)];
        }
        let cij = acc / c(comp.dim as f64);
        let cij = if cij.norm() > 1e-12 { cij / cij.norm() } else { c(1.0) };
        edges[comp.j].push((comp.i, cij));
        edges[comp.i].push((comp.j, cij.conj()));
    }
    let mut z: Vec<Option<C64>> = vec![None; labels];
    for root in 0..labels {
        if z[root].is_some() {
            continue;
        }
        z[root] = Some(c(1.0));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let zu = z[u].expect("visited");
            // edge u→v carries c with z_v z̄_u = c
            for &(v, cuv) in &edges[u] {
                if z[v].is_none() {
                    z[v] = Some(cuv * zu);
                    queue.push_back(v);
                }
            }
        }
    }
    let double_gauge = GaugeVector::new(z.into_iter().map(|w| w.unwrap_or(c(1.0))).collect())?;
    let mut gauge_residual = 0.0f64;
    for a in 0..n {
        let e = table.unit_vector(a);
        let g = gauge(table, &double_gauge, &e)?;
        gauge_residual = gauge_residual.max((twice.column(a) - g).camax());
    }
    Ok(VeeMap { matrix, double_gauge, gauge_residual })
}

impl VeeMap {
    pub fn apply(&self, x: &ComplexVector) -> ComplexVector {
        &self.matrix * x
    }

    /// `max ‖(ab)^∨ − b^∨a^∨‖` and `max ‖(a*)^∨ − (a^∨)*‖` over basis pairs.
    pub fn residuals(&self, table: &TubeTable) -> (f64, f64) {
        let n = table.dim();
        let alg = &table.algebra;
        let images: Vec<ComplexVector> = (0..n).map(|a| self.matrix.column(a).into_owned()).collect();
        let mut anti = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let ab = alg.mul(&table.unit_vector(a), &table.unit_vector(b));
                let lhs = self.apply(&ab);
                let rhs = alg.mul(&images[b], &images[a]);
                anti = anti.max((lhs - rhs).camax());
            }
        }
        let mut star = 0.0f64;
        for (a, img) in images.iter().enumerate() {
            let lhs = self.apply(&alg.star(&table.unit_vector(a)));
            star = star.max((lhs - alg.star(img)).camax());
        }
        (anti, star)
    }
}

pub fn decompose(table: &TubeTable, tol: f64, seed: u64) -> Result<BlockDecomposition> {
    decompose_star_algebra(&table.algebra, tol, seed)
}

/// Residual of `τ(xy) = τ(yx)` over basis pairs.
pub fn trace_residual(table: &TubeTable) -> f64 {
    let n = table.dim();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let ea = table.unit_vector(a);
            let eb = table.unit_vector(b);
            let l = table.tube_trace(&table.algebra.mul(&ea, &eb));
            let r = table.tube_trace(&table.algebra.mul(&eb, &ea));
            worst = worst.max((l - r).norm());
        }
    }
    worst
}

/// Residual of `p_i p_j = δ_ij p_i` and `Σ p_i · x = x = x · Σ p_i` on the basis.
pub fn projection_residual(table: &TubeTable) -> f64 {
    let mut worst = 0.0f64;
    for (i, pi) in &table.projections {
        for (j, pj) in &table.projections {
            let prod = table.algebra.mul(pi, pj);
            let want = if i == j { pi.clone() } else { ComplexVector::zeros(table.dim()) };
            worst = worst.max((prod - want).camax());
        }
    }
    let u = table.unit();
    for a in 0..table.dim() {
        let e = table.unit_vector(a);
        worst = worst.max((table.algebra.mul(&u, &e) - &e).camax());
        worst = worst.max((table.algebra.mul(&e, &u) - &e).camax());
    }
    worst
}
