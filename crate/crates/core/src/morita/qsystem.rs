//! Q-systems `C(G/H)` in `Rep G`.

use crate::category::carrier::{intertwiners, Carrier};
use crate::category::group::GroupBackend;
use crate::category::AlgebraObject;
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, identity, kron, max_abs, ComplexMatrix};

/// Functions on `G/H` with `w = √n·(diagonal copy)`, `v = n^{-1/2} Σ δ_x`.
#[derive(Clone, Debug)]
pub struct QSystem {
    /// Left cosets `xH`, each sorted, in order of smallest element.
    pub cosets: Vec<Vec<usize>>,
    /// Permutation matrices of the group generators on `C(G/H)`.
    pub gens: Vec<ComplexMatrix>,
    pub v: ComplexMatrix,
    pub w: ComplexMatrix,
    pub residuals: QSystemResiduals,
}

#[derive(Clone, Debug, Default)]
pub struct QSystemResiduals {
    pub isometry: f64,
    pub standardness: f64,
    pub associativity: f64,
    pub unit: f64,
    pub frobenius: f64,
    pub equivariance: f64,
    /// Dimension of the bimodule endomorphisms of `Q`.
    pub bimodule_endomorphisms: usize,
}

impl QSystemResiduals {
    pub fn worst(&self) -> f64 {
        [self.isometry, self.standardness, self.associativity, self.unit, self.frobenius, self.equivariance]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

impl QSystem {
    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    /// `d(Q)`, equal to the index `[G:H]`.
    pub fn qdim(&self) -> f64 {
        self.dim() as f64
    }

    pub fn mult(&self) -> ComplexMatrix {
        self.w.adjoint()
    }

    /// `Q` as a bimodule over itself.
    pub fn carrier(&self) -> Carrier {
        let m = self.mult();
        Carrier { dim: self.dim(), gens: self.gens.clone(), left: Some(m.clone()), right: Some(m) }
    }

    pub fn algebra_object(&self) -> AlgebraObject {
        AlgebraObject { gens: self.gens.clone(), mult: self.mult(), unit: self.v.clone(), dim: self.qdim() }
    }
}

/// Builds `C(G/H)` for the subgroup `H` given by its elements, and checks every Q-system axiom.
pub fn qsystem_from_gset(group: &GroupBackend, subgroup: &[usize]) -> Result<QSystem> {
    let order = group.order();
    let mut in_h = vec![false; order];
    for &h in subgroup {
        if h >= order {
            return Err(Error::Validation(format!("subgroup element {h} is outside the group of order {order}")));
        }
        in_h[h] = true;
    }
    if !in_h[group.identity()] {
        return Err(Error::Validation("subgroup does not contain the identity".into()));
    }
    let members: Vec<usize> = (0..order).filter(|&g| in_h[g]).collect();
    for &a in &members {
        for &b in &members {
            if !in_h[group.mul(a, b)] {
                return Err(Error::Validation(format!("subset is not closed: {a}·{b} = {}", group.mul(a, b))));
            }
        }
    }

    let mut coset_of = vec![usize::MAX; order];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut cs: Vec<usize> = members.iter().map(|&h| group.mul(x, h)).collect();
        cs.sort_unstable();
        for &y in &cs {
            coset_of[y] = cosets.len();
        }
        cosets.push(cs);
    }
    let n = cosets.len();
    let gens: Vec<ComplexMatrix> = group
        .generators()
        .iter()
        .map(|&g| {
            let mut p = ComplexMatrix::zeros(n, n);
            for (k, cs) in cosets.iter().enumerate() {
                p[(coset_of[group.mul(g, cs[0])], k)] = c(1.0);
            }
            p
        })
        .collect();

    let nf = n as f64;
    let mut w = ComplexMatrix::zeros(n * n, n);
    for x in 0..n {
        w[(x * n + x, x)] = c(nf.sqrt());
    }
    let v = ComplexMatrix::from_element(n, 1, c(1.0 / nf.sqrt()));

    let mut q = QSystem { cosets, gens, v, w, residuals: QSystemResiduals::default() };
    q.residuals = check(&q);
    if q.residuals.bimodule_endomorphisms != 1 {
        return Err(Error::Validation(format!(
            "Q is not simple as a bimodule: endomorphisms have dimension {}",
            q.residuals.bimodule_endomorphisms
        )));
    }
    Ok(q)
}

fn check(q: &QSystem) -> QSystemResiduals {
    let n = q.dim();
    let id = identity(n);
    let m = q.mult();
    let w = &q.w;
    let isometry = max_abs(&(q.v.adjoint() * &q.v - identity(1)));
    let standardness = max_abs(&(w.adjoint() * w - &id * c(q.qdim())));
    let associativity = max_abs(&(&m * kron(&m, &id) - &m * kron(&id, &m)));
    let unit = max_abs(&(&m * kron(&q.v, &id) - &id)).max(max_abs(&(&m * kron(&id, &q.v) - &id)));
    let frobenius = max_abs(&(kron(&m, &id) * kron(&id, w) - w * &m));
    let mut equivariance = 0.0f64;
    for g in &q.gens {
        equivariance = equivariance.max(max_abs(&(w * g - kron(g, g) * w)));
        equivariance = equivariance.max(max_abs(&(g * &q.v - &q.v)));
    }
    let bimodule_endomorphisms = intertwiners(&q.carrier(), &q.carrier(), n).len();
    QSystemResiduals { isometry, standardness, associativity, unit, frobenius, equivariance, bimodule_endomorphisms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group::{cyclic_table, symmetric_table};

    #[test]
    fn trivial_subquotient_is_the_unit() {
        let g = GroupBackend::new(cyclic_table(3), None, 1).unwrap();
        let q = qsystem_from_gset(&g, &[0, 1, 2]).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.residuals.worst() < 1e-12);
    }

    #[test]
    fn z2_regular() {
        let g = GroupBackend::new(cyclic_table(2), None, 1).unwrap();
        let q = qsystem_from_gset(&g, &[0]).unwrap();
        assert_eq!(q.qdim(), 2.0);
        assert!(q.residuals.worst() < 1e-12);
    }

    #[test]
    fn s3_mod_z2() {
        let g = GroupBackend::new(symmetric_table(3), None, 1).unwrap();
        let h: Vec<usize> = (0..6).filter(|&x| g.mul(x, x) == g.identity()).take(2).collect();
        let q = qsystem_from_gset(&g, &h).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.residuals.worst() < 1e-12);
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = GroupBackend::new(cyclic_table(4), None, 1).unwrap();
        assert!(matches!(qsystem_from_gset(&g, &[0, 1]), Err(Error::Validation(_))));
    }
}
