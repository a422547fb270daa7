//! Block decomposition of a finite-dimensional C*-algebra through its centre.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::StarAlgebra;
use super::linalg::{c, hermitian_eigen, ComplexMatrix, ComplexVector, C64};
use crate::error::{Error, Result};

/// Salt for the confirming second run.
pub const SECOND_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Debug)]
pub struct Block {
    /// `n` such that the block is isomorphic to `M_n(C)`.
    pub dim: usize,
    /// Minimal central projection, in basis coordinates.
    pub idempotent: ComplexVector,
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub seed: u64,
    /// Worst of the idempotent, self-adjointness, centrality and completeness residuals.
    pub residual: f64,
    pub associativity_residual: f64,
    pub min_gram_eigenvalue: f64,
}

impl BlockDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    pub fn sorted_dims(&self) -> Vec<usize> {
        let mut d = self.dims();
        d.sort_unstable();
        d
    }
}

fn max_abs(v: &ComplexVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Decomposes `alg` into matrix blocks, then repeats with a second seed and requires the same
/// multiset of block sizes.
pub fn decompose_star_algebra(alg: &StarAlgebra, tol: f64, seed: u64) -> Result<BlockDecomposition> {
    let first = decompose_once(alg, tol, seed)?;
    let second = decompose_once(alg, tol, seed ^ SECOND_SEED_SALT)?;
    if first.sorted_dims() != second.sorted_dims() {
        return Err(Error::Decomposition(format!(
            "block sizes depend on the seed: {:?} vs {:?}",
            first.sorted_dims(),
            second.sorted_dims()
        )));
    }
    Ok(first)
}

fn decompose_once(alg: &StarAlgebra, tol: f64, seed: u64) -> Result<BlockDecomposition> {
    let n = alg.dim();
    if n == 0 {
        return Err(Error::Shape("empty algebra".into()));
    }
    let assoc = alg.associativity_residual();
    if assoc > tol {
        return Err(Error::NotAnAlgebra { residual: assoc, tol });
    }
    let trace = alg.regular_trace();
    let gram = alg.gram(&trace);
    let (gvals, _) = hermitian_eigen(&gram);
    let gmin = gvals[0];
    let gmax = gvals[gvals.len() - 1].abs().max(1.0);
    if gmin <= 1e-10 * gmax {
        return Err(Error::NonSemisimple { min_eigenvalue: gmin });
    }

    let z = alg.center_basis();
    let m = z.ncols();
    if m == 0 {
        return Err(Error::Decomposition("trivial centre".into()));
    }
    // orthonormalise the centre for <x,y> = Tr(L_{x*y})
    let zg = z.adjoint() * &gram * &z;
    let (zv, zu) = hermitian_eigen(&zg);
    if zv[0] <= 0.0 {
        return Err(Error::NonSemisimple { min_eigenvalue: zv[0] });
    }
    let inv_sqrt = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        m,
        zv.iter().map(|v| c(1.0 / v.sqrt())),
    ));
    let zo = &z * &zu * inv_sqrt * zu.adjoint();
    let zcols: Vec<ComplexVector> = (0..m).map(|k| zo.column(k).into_owned()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<ComplexVector>)> = None;
    for _ in 0..6 {
        let mut h = ComplexVector::zeros(n);
        for zc in &zcols {
            // complex weights: real ones cannot split blocks exchanged by a real structure
            let r = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            h += zc * r;
        }
        let h = (&h + alg.star(&h)) * c(0.5);
        let mut a = ComplexMatrix::zeros(m, m);
        let hz: Vec<ComplexVector> = zcols.iter().map(|zc| alg.mul(&h, zc)).collect();
        for k in 0..m {
            for l in 0..m {
                a[(k, l)] = (zcols[k].adjoint() * &gram * &hz[l])[(0, 0)];
            }
        }
        let (vals, vecs) = hermitian_eigen(&a);
        let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
        let gap = vals.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let rel_gap = if m == 1 { f64::INFINITY } else { gap / scale };
        let idems: Vec<ComplexVector> = (0..m)
            .map(|k| {
                let mut e = ComplexVector::zeros(n);
                for l in 0..m {
                    e += &zcols[l] * vecs[(l, k)];
                }
                e
            })
            .collect();
        if best.as_ref().is_none_or(|(g, _)| rel_gap > *g) {
            best = Some((rel_gap, idems));
        }
        if rel_gap > 1e-4 {
            break;
        }
    }
    let (gap, raw) = best.expect("at least one attempt");
    if gap < 1e-8 {
        return Err(Error::Decomposition("could not separate central eigenvalues".into()));
    }

    let mut blocks = Vec::with_capacity(m);
    let mut residual = 0.0f64;
    let mut total = ComplexVector::zeros(n);
    for e0 in raw {
        // e0 is a multiple of a minimal central projection: e0^2 = mu e0
        let sq = alg.mul(&e0, &e0);
        let mu: C64 = (e0.adjoint() * &gram * &sq)[(0, 0)] / (e0.adjoint() * &gram * &e0)[(0, 0)];
        let e = e0 / mu;
        let tr = (trace.transpose() * &e)[(0, 0)];
        let nk = tr.re.max(0.0).sqrt();
        let dim = nk.round() as usize;
        if dim == 0 || (nk - dim as f64).abs() > 1e-6 * nk.max(1.0) {
            return Err(Error::Decomposition(format!("block trace {tr} is not a square")));
        }
        residual = residual.max(max_abs(&(alg.mul(&e, &e) - &e)));
        residual = residual.max(max_abs(&(alg.star(&e) - &e)));
        for x in 0..n {
            let bx = alg.basis_vector(x);
            residual = residual.max(max_abs(&(alg.mul(&e, &bx) - alg.mul(&bx, &e))));
        }
        total += &e;
        blocks.push(Block { dim, idempotent: e });
    }
    for x in 0..n {
        let bx = alg.basis_vector(x);
        residual = residual.max(max_abs(&(alg.mul(&total, &bx) - &bx)));
    }
    let sum_sq: usize = blocks.iter().map(|b| b.dim * b.dim).sum();
    if sum_sq != n {
        return Err(Error::Decomposition(format!("block sizes squared sum to {sum_sq}, dimension is {n}")));
    }
    Ok(BlockDecomposition {
        blocks,
        seed,
        residual,
        associativity_residual: assoc,
        min_gram_eigenvalue: gmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::algebra::{group_algebra, StarAlgebra};

    fn matrix_units(n: usize) -> StarAlgebra {
        let dim = n * n;
        let mut inv = ComplexMatrix::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                inv[(j * n + i, i * n + j)] = c(1.0);
            }
        }
        StarAlgebra::from_fn(dim, inv, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut v = ComplexVector::zeros(dim);
            if j == k {
                v[i * n + l] = c(1.0);
            }
            v
        })
        .unwrap()
    }

    #[test]
    fn full_matrix_algebra_is_one_block() {
        let d = decompose_star_algebra(&matrix_units(3), 1e-9, 1).unwrap();
        assert_eq!(d.dims(), vec![3]);
        assert!(d.residual < 1e-9);
    }

    #[test]
    fn s3_group_algebra_blocks() {
        let a = group_algebra(&crate::category::group::symmetric_table(3)).unwrap();
        let d = decompose_star_algebra(&a, 1e-9, 7).unwrap();
        assert_eq!(d.sorted_dims(), vec![1, 1, 2]);
        assert!(d.residual < 1e-9);
    }

    #[test]
    fn nilpotent_algebra_is_rejected() {
        // span{1, x} with x^2 = 0
        let products = vec![vec![(0, c(1.0))], vec![(1, c(1.0))], vec![(1, c(1.0))], vec![]];
        let a = StarAlgebra::new(2, products, ComplexMatrix::identity(2, 2)).unwrap();
        assert!(matches!(
            decompose_star_algebra(&a, 1e-9, 1),
            Err(Error::NonSemisimple { .. })
        ));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // (b1 b0) b1 = 0 but b1 (b0 b1) = b1
        let products = vec![vec![(0, c(1.0))], vec![(0, c(1.0))], vec![(1, c(1.0))], vec![(0, c(1.0))]];
        let a = StarAlgebra::new(2, products, ComplexMatrix::identity(2, 2)).unwrap();
        assert!(matches!(decompose_star_algebra(&a, 1e-9, 1), Err(Error::NotAnAlgebra { .. })));
    }
}
