//! Representation spaces of the underlying Hopf algebra, optionally carrying module actions of
//! the algebra object, and the intertwiner solver used for every hom space.

use super::super::numerics::linalg::{c, identity, kron, nullspace, ComplexMatrix};

/// Coproduct type of a generator: grouplike `Δg = g⊗g`, or skew `Δx = x⊗right + left⊗x`
/// where `right`/`left` index grouplike generators (`None` is the unit).
#[derive(Clone, Debug, PartialEq)]
pub enum Coproduct {
    Grouplike,
    Skew { right: Option<usize>, left: Option<usize> },
}

/// Finite-dimensional representation with optional left action `Q⊗A → A` and right action
/// `A⊗Q → A` of the algebra object.
#[derive(Clone, Debug)]
pub struct Carrier {
    pub dim: usize,
    pub gens: Vec<ComplexMatrix>,
    pub left: Option<ComplexMatrix>,
    pub right: Option<ComplexMatrix>,
}

impl Carrier {
    pub fn plain(gens: Vec<ComplexMatrix>) -> Self {
        let dim = gens.first().map_or(0, |g| g.nrows());
        Self { dim, gens, left: None, right: None }
    }

    /// The trivial representation: counit values on the generators.
    pub fn trivial(coproducts: &[Coproduct]) -> Self {
        let gens = coproducts
            .iter()
            .map(|cp| match cp {
                Coproduct::Grouplike => identity(1),
                Coproduct::Skew { .. } => ComplexMatrix::zeros(1, 1),
            })
            .collect();
        Self { dim: 1, gens, left: None, right: None }
    }
}

fn gen_or_identity(c: &Carrier, g: Option<usize>) -> ComplexMatrix {
    match g {
        Some(k) => c.gens[k].clone(),
        None => identity(c.dim),
    }
}

/// Generator matrices on `A⊗B` through the coproduct.
pub fn tensor_gens(coproducts: &[Coproduct], a: &Carrier, b: &Carrier) -> Vec<ComplexMatrix> {
    coproducts
        .iter()
        .enumerate()
        .map(|(k, cp)| match cp {
            Coproduct::Grouplike => kron(&a.gens[k], &b.gens[k]),
            Coproduct::Skew { right, left } => {
                kron(&a.gens[k], &gen_or_identity(b, *right)) + kron(&gen_or_identity(a, *left), &b.gens[k])
            }
        })
        .collect()
}

/// Plain tensor product, keeping the left action of `a` and the right action of `b`.
pub fn plain_tensor(coproducts: &[Coproduct], a: &Carrier, b: &Carrier) -> Carrier {
    let gens = tensor_gens(coproducts, a, b);
    let left = a.left.as_ref().map(|m| kron(m, &identity(b.dim)));
    let right = b.right.as_ref().map(|m| kron(&identity(a.dim), m));
    Carrier { dim: a.dim * b.dim, gens, left, right }
}

/// Restriction to the invariant subspace spanned by the isometry `v`.
pub fn compress(carrier: &Carrier, v: &ComplexMatrix, q_dim: usize) -> Carrier {
    let vt = v.adjoint();
    let gens = carrier.gens.iter().map(|g| &vt * g * v).collect();
    let left = carrier.left.as_ref().map(|m| &vt * m * kron(&identity(q_dim), v));
    let right = carrier.right.as_ref().map(|m| &vt * m * kron(v, &identity(q_dim)));
    Carrier { dim: v.ncols(), gens, left, right }
}

fn diagonal(m: &ComplexMatrix) -> Option<Vec<num_complex::Complex64>> {
    let n = m.nrows();
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)].norm() > 0.0 {
                return None;
            }
        }
    }
    Some((0..n).map(|i| m[(i, i)]).collect())
}

/// Frobenius-orthonormal basis of the intertwiners `A → B` (matrices `dim B × dim A`) commuting
/// with all generators and with whichever actions both carriers have.
pub fn intertwiners(a: &Carrier, b: &Carrier, q_dim: usize) -> Vec<ComplexMatrix> {
    let (da, db) = (a.dim, b.dim);
    if da == 0 || db == 0 {
        return Vec::new();
    }
    // generators diagonal on both sides restrict the support of T
    let mut diags = Vec::new();
    let mut gens: Vec<(&ComplexMatrix, &ComplexMatrix)> = Vec::new();
    for (ga, gb) in a.gens.iter().zip(&b.gens) {
        match (diagonal(ga), diagonal(gb)) {
            (Some(xa), Some(xb)) => diags.push((xa, xb)),
            _ => gens.push((ga, gb)),
        }
    }
    let mut unknowns = Vec::new();
    for p in 0..db {
        for q in 0..da {
            let ok = diags.iter().all(|(xa, xb)| {
                let scale = 1.0 + xa[q].norm().max(xb[p].norm());
                (xb[p] - xa[q]).norm() <= 1e-9 * scale
            });
            if ok {
                unknowns.push((p, q));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let mut blocks: Vec<usize> = Vec::new();
    let mut offset = 0;
    for _ in &gens {
        blocks.push(offset);
        offset += db * da;
    }
    let left = match (&a.left, &b.left) {
        (Some(ma), Some(mb)) => {
            let o = offset;
            offset += db * q_dim * da;
            Some((ma, mb, o))
        }
        _ => None,
    };
    let right = match (&a.right, &b.right) {
        (Some(ma), Some(mb)) => {
            let o = offset;
            offset += db * da * q_dim;
            Some((ma, mb, o))
        }
        _ => None,
    };
    if offset == 0 {
        // no constraints at all
        return unknowns
            .iter()
            .map(|&(p, q)| {
                let mut t = ComplexMatrix::zeros(db, da);
                t[(p, q)] = c(1.0);
                t
            })
            .collect();
    }
    let mut cons = ComplexMatrix::zeros(offset, unknowns.len());
    for (col, &(p, q)) in unknowns.iter().enumerate() {
        for ((ga, gb), &o) in gens.iter().zip(&blocks) {
            // E_pq ρ_A - ρ_B E_pq
            for cc in 0..da {
                cons[(o + p * da + cc, col)] += ga[(q, cc)];
            }
            for r in 0..db {
                cons[(o + r * da + q, col)] -= gb[(r, p)];
            }
        }
        if let Some((ma, mb, o)) = left {
            let w = q_dim * da;
            for cc in 0..w {
                cons[(o + p * w + cc, col)] += ma[(q, cc)];
            }
            for r in 0..db {
                for al in 0..q_dim {
                    cons[(o + r * w + al * da + q, col)] -= mb[(r, al * db + p)];
                }
            }
        }
        if let Some((ma, mb, o)) = right {
            let w = da * q_dim;
            for cc in 0..w {
                cons[(o + p * w + cc, col)] += ma[(q, cc)];
            }
            for r in 0..db {
                for be in 0..q_dim {
                    cons[(o + r * w + q * q_dim + be, col)] -= mb[(r, p * q_dim + be)];
                }
            }
        }
    }
    let kernel = nullspace(&cons);
    (0..kernel.ncols())
        .map(|k| {
            let mut t = ComplexMatrix::zeros(db, da);
            for (row, &(p, q)) in unknowns.iter().enumerate() {
                t[(p, q)] = kernel[(row, k)];
            }
            t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_sign() -> Carrier {
        Carrier::plain(vec![ComplexMatrix::from_element(1, 1, c(-1.0))])
    }

    #[test]
    fn sign_squared_is_trivial() {
        let cp = [Coproduct::Grouplike];
        let s = z2_sign();
        let ss = plain_tensor(&cp, &s, &s);
        let triv = Carrier::trivial(&cp);
        assert_eq!(intertwiners(&triv, &ss, 0).len(), 1);
        assert_eq!(intertwiners(&triv, &s, 0).len(), 0);
    }

    #[test]
    fn unconstrained_space_is_full() {
        let a = Carrier { dim: 2, gens: vec![], left: None, right: None };
        assert_eq!(intertwiners(&a, &a, 0).len(), 4);
    }
}
