//! The annular algebra `Tub(G) = ⊕ Tub(Rep G)_{ij} ⊗ B(H_j̄, H_ī)`, its full corner and the
//! explicit isomorphism onto the double.

use std::collections::HashMap;

use crate::category::Engine;
use crate::error::{Error, Result};
use crate::numerics::algebra::{SparseVec, StarAlgebra};
use crate::numerics::linalg::{c, max_abs, rank, ComplexMatrix, ComplexVector};
use crate::tube::{TubeTable, VeeMap};

use super::algebra::DoubleAlgebra;

/// Basis `x ⊗ E_pq` with `x` a tube basis vector of `Tub(Rep G)_{ij}`, `p < dim H_ī`, `q < dim H_j̄`.
#[derive(Clone, Debug)]
pub struct TubG {
    pub basis: Vec<(usize, usize, usize)>,
    pub algebra: StarAlgebra,
    /// `dim H_ī` per label.
    pub dual_dims: Vec<usize>,
    index: HashMap<(usize, usize, usize), usize>,
}

pub fn build_tub_g(engine: &Engine, table: &TubeTable) -> Result<TubG> {
    let dual_dims: Vec<usize> = (0..engine.simples().len())
        .map(|i| engine.carrier_dim(engine.word_of(engine.simple(i).dual)))
        .collect();
    let mut basis = Vec::new();
    for (a, el) in table.basis.iter().enumerate() {
        for p in 0..dual_dims[el.i] {
            for q in 0..dual_dims[el.j] {
                basis.push((a, p, q));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = basis.iter().enumerate().map(|(n, &k)| (k, n)).collect();
    let n = basis.len();
    let mut products: Vec<SparseVec> = Vec::with_capacity(n * n);
    for &(a, p, q) in &basis {
        for &(b, q2, r) in &basis {
            if q != q2 {
                products.push(Vec::new());
                continue;
            }
            let v = table
                .algebra
                .basis_product(a, b)
                .iter()
                .map(|&(cc, z)| (index[&(cc as usize, p, r)] as u32, z))
                .collect();
            products.push(v);
        }
    }
    let mut inv = ComplexMatrix::zeros(n, n);
    let j = table.algebra.involution();
    for (col, &(a, p, q)) in basis.iter().enumerate() {
        for cc in 0..table.dim() {
            let z = j[(cc, a)];
            if z.norm() > 0.0 {
                inv[(index[&(cc, q, p)], col)] = z;
            }
        }
    }
    let algebra = StarAlgebra::new(n, products, inv)?;
    Ok(TubG { basis, algebra, dual_dims, index })
}

impl TubG {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, a: usize, p: usize, q: usize) -> Option<usize> {
        self.index.get(&(a, p, q)).copied()
    }

    /// `x ↦ x ⊗ m_ij`, the corner embedding of `Tub(Rep G)` with `e_i` the first basis vector.
    pub fn corner_embedding(&self, table: &TubeTable) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim(), table.dim());
        for a in 0..table.dim() {
            m[(self.index[&(a, 0, 0)], a)] = c(1.0);
        }
        m
    }

    /// `p_i ⊗ E_{a0}` for every label `i` and `a < dim H_ī`, as vectors.
    pub fn local_unit_family(&self, table: &TubeTable) -> Vec<ComplexVector> {
        let mut out = Vec::new();
        for (i, p) in &table.projections {
            for a in 0..self.dual_dims[*i] {
                let mut v = ComplexVector::zeros(self.dim());
                for (k, z) in p.iter().enumerate() {
                    if z.norm() > 0.0 {
                        v[self.index[&(k, a, 0)]] = *z;
                    }
                }
                out.push(v);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CornerReport {
    pub corner_dim: usize,
    pub family_size: usize,
    /// `‖x x_F − x‖, ‖x_F x − x‖` and vanishing outside `F`, over the basis.
    pub local_unit_residual: f64,
    /// `x_α* x_α = f`-component and `x_α f = x_α`.
    pub isometry_residual: f64,
    /// Multiplicativity and *-compatibility of the corner embedding.
    pub embedding_residual: f64,
}

pub fn verify_full_corner(table: &TubeTable, tubg: &TubG) -> CornerReport {
    let alg = &tubg.algebra;
    let family = tubg.local_unit_family(table);
    let emb = tubg.corner_embedding(table);
    let f = &emb * table.unit();
    let mut iso = 0.0f64;
    let projs: Vec<ComplexVector> = family.iter().map(|x| alg.mul(x, &alg.star(x))).collect();
    for x in &family {
        let xsx = alg.mul(&alg.star(x), x);
        iso = iso.max((alg.mul(&xsx, &f) - &xsx).camax());
        iso = iso.max((alg.mul(&f, &xsx) - &xsx).camax());
        iso = iso.max((alg.mul(x, &f) - x).camax());
    }
    let mut local = 0.0f64;
    for b in 0..tubg.dim() {
        let x = alg.basis_vector(b);
        let mut xf = ComplexVector::zeros(tubg.dim());
        for pr in &projs {
            let l = alg.mul(pr, &x);
            let r = alg.mul(&x, pr);
            if l.camax() > 1e-12 || r.camax() > 1e-12 {
                xf += pr;
            }
        }
        local = local.max((alg.mul(&x, &xf) - &x).camax());
        local = local.max((alg.mul(&xf, &x) - &x).camax());
        for pr in &projs {
            let l = alg.mul(pr, &x);
            let r = alg.mul(&x, pr);
            let inside = l.camax() > 1e-12 || r.camax() > 1e-12;
            if !inside {
                local = local.max(l.camax()).max(r.camax());
            }
        }
    }
    let mut embed = 0.0f64;
    for a in 0..table.dim() {
        let ea = table.unit_vector(a);
        let ia = &emb * &ea;
        embed = embed.max((&emb * table.algebra.star(&ea) - alg.star(&ia)).camax());
        for b in 0..table.dim() {
            let eb = table.unit_vector(b);
            let lhs = &emb * table.algebra.mul(&ea, &eb);
            let rhs = alg.mul(&ia, &(&emb * &eb));
            embed = embed.max((lhs - rhs).camax());
        }
    }
    CornerReport {
        corner_dim: rank(&emb),
        family_size: family.len(),
        local_unit_residual: local,
        isometry_residual: iso,
        embedding_residual: embed,
    }
}

/// `π(Y ⊗ E_{z'z})` for a tube basis vector `Y` of `Tub(Rep G)_{i'j'}` in component `s'`:
/// `(1/√(d_i' d_j')) Σ Y[(y',x'),(x,y)] m^{j'}_{zy} · ū^{s'}_{x'x} · m^{i'}_{y'z'}`, products in the double.
fn pi_element(double: &DoubleAlgebra, identity: usize, table: &TubeTable, engine: &Engine, a: usize, zp: usize, z: usize) -> ComplexVector {
    let el = &table.basis[a];
    let comp = &table.components[el.component];
    let y = &comp.basis[el.index];
    let (ip, jp, sp) = (comp.i, comp.j, comp.k);
    let dim = |l: usize| engine.carrier_dim(engine.word_of(l));
    let (di, dj, ds) = (dim(ip), dim(jp), dim(sp));
    let alg = &double.algebra;
    let mut out = ComplexVector::zeros(double.dim());
    for yy in 0..dj {
        let left = double.matrix_unit(jp, z, yy);
        for x in 0..ds {
            for xp in 0..ds {
                let mid = alg.mul(&left, &double.coefficient(sp, xp, x, true, identity));
                for yp in 0..di {
                    let coef = y[(yp * ds + xp, x * dj + yy)];
                    if coef.norm() < 1e-15 {
                        continue;
                    }
                    out += alg.mul(&mid, &double.matrix_unit(ip, yp, zp)) * coef;
                }
            }
        }
    }
    out / c(((di * dj) as f64).sqrt())
}

#[derive(Clone, Debug)]
pub struct IsomorphismReport {
    /// `Φ: Tub(G) → 𝒟(G)`, column per `Tub(G)` basis vector.
    pub matrix: ComplexMatrix,
    pub homomorphism_residual: f64,
    pub star_residual: f64,
    pub rank: usize,
    pub double_dim: usize,
    /// Rank of `Φ` restricted to the corner `f Tub(G) f`.
    pub corner_image_dim: usize,
    /// `E ∘ π = F` on the twisted algebra `⊕ Tub(Rep G)_{ij} ⊗ B(H̄_j, H̄_i)`.
    pub expectation_residual: f64,
}

/// Assembles `Φ(x ⊗ E_pq) = π(x^∨ ⊗ E_qp)` and checks that it is a bijective *-homomorphism.
pub fn tube_to_double(
    engine: &Engine,
    table: &TubeTable,
    vee: &VeeMap,
    tubg: &TubG,
    double: &DoubleAlgebra,
    identity: usize,
) -> Result<IsomorphismReport> {
    let n = tubg.dim();
    let m = double.dim();
    let mut pis: HashMap<(usize, usize, usize), ComplexVector> = HashMap::new();
    let mut matrix = ComplexMatrix::zeros(m, n);
    for (col, &(a, p, q)) in tubg.basis.iter().enumerate() {
        let image = vee.matrix.column(a);
        let mut v = ComplexVector::zeros(m);
        for (cc, z) in image.iter().enumerate() {
            if z.norm() < 1e-14 {
                continue;
            }
            let e = pis
                .entry((cc, q, p))
                .or_insert_with(|| pi_element(double, identity, table, engine, cc, q, p));
            v += &*e * *z;
        }
        matrix.set_column(col, &v);
    }
    let dalg = &double.algebra;
    let mut hom = 0.0f64;
    let mut star = 0.0f64;
    let cols: Vec<ComplexVector> = (0..n).map(|k| matrix.column(k).into_owned()).collect();
    for a in 0..n {
        let ea = tubg.algebra.basis_vector(a);
        star = star.max((&matrix * tubg.algebra.star(&ea) - dalg.star(&cols[a])).camax());
        for b in 0..n {
            let ab = tubg.algebra.mul(&ea, &tubg.algebra.basis_vector(b));
            hom = hom.max((&matrix * ab - dalg.mul(&cols[a], &cols[b])).camax());
        }
    }
    let emb = tubg.corner_embedding(table);
    let corner_image_dim = rank(&(&matrix * emb));
    // E(π(T)) against F(T) = τ(Y) E_{z'z} ↦ τ(Y) m^{i'}_{zz'}
    let mut expect = 0.0f64;
    for (a, el) in table.basis.iter().enumerate() {
        let di = engine.carrier_dim(engine.word_of(el.i));
        let dj = engine.carrier_dim(engine.word_of(el.j));
        for zp in 0..di {
            for z in 0..dj {
                let pi = pis
                    .entry((a, zp, z))
                    .or_insert_with(|| pi_element(double, identity, table, engine, a, zp, z));
                let blocks = double.fourier(&double.cond_expectation(pi));
                let tau = table.trace[a];
                for (k, blk) in blocks.iter().enumerate() {
                    let dk = blk.nrows() as f64;
                    let mut want = ComplexMatrix::zeros(blk.nrows(), blk.ncols());
                    if k == el.i && el.i == el.j {
                        want[(z, zp)] = tau;
                    }
                    expect = expect.max(max_abs(&(blk * c(dk) - want)));
                }
            }
        }
    }
    let rank = rank(&matrix);
    if rank != m || n != m {
        return Err(Error::IsomorphismFailure(format!(
            "assembled map has rank {rank} from dimension {n} onto dimension {m}"
        )));
    }
    Ok(IsomorphismReport {
        matrix,
        homomorphism_residual: hom,
        star_residual: star,
        rank,
        double_dim: m,
        corner_image_dim,
        expectation_residual: expect,
    })
}
