//! Simple modules and bimodules over a Q-system, found by splitting free modules.
//!
//! The endomorphisms of a free module are parametrised by Frobenius reciprocity, so only
//! intertwiner spaces out of an irrep are ever solved for.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qsystem::QSystem;
use crate::category::carrier::{compress, intertwiners, tensor_gens, Carrier};
use crate::category::group::GroupBackend;
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, cluster_sorted, hermitian_eigen, identity, kron, max_abs, ComplexMatrix, C64};

/// Module enumeration does not depend on the run seed.
const SPLIT_SEED: u64 = 0x51_4d_4f_44;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Bi,
}

#[derive(Clone, Debug)]
pub struct QModule {
    pub side: Side,
    pub carrier: Carrier,
}

impl QModule {
    /// Associativity, unit and (for bimodules) commutation residual of the actions.
    pub fn action_residual(&self, q: &QSystem) -> f64 {
        let n = q.dim();
        let d = self.carrier.dim;
        let (iq, id) = (identity(n), identity(d));
        let m = q.mult();
        let mut worst = 0.0f64;
        if let Some(l) = &self.carrier.left {
            worst = worst.max(max_abs(&(l * kron(&m, &id) - l * kron(&iq, l))));
            worst = worst.max(max_abs(&(l * kron(&q.v, &id) - &id)));
        }
        if let Some(r) = &self.carrier.right {
            worst = worst.max(max_abs(&(r * kron(&id, &m) - r * kron(r, &iq))));
            worst = worst.max(max_abs(&(r * kron(&id, &q.v) - &id)));
        }
        if let (Some(l), Some(r)) = (&self.carrier.left, &self.carrier.right) {
            worst = worst.max(max_abs(&(r * kron(l, &iq) - l * kron(&iq, r))));
        }
        worst
    }

    /// The conjugate module: entrywise conjugate carrier with the side reversed.
    /// Valid because `Q` is commutative with a real basis of minimal projections.
    pub fn conjugate(&self, q: &QSystem) -> QModule {
        let n = q.dim();
        let d = self.carrier.dim;
        let gens = self.carrier.gens.iter().map(|g| g.map(|z| z.conj())).collect();
        // (ξ̄·δ_x) = conj(δ_x·ξ) and vice versa
        let swap = |a: &ComplexMatrix, q_first: bool| {
            let mut out = ComplexMatrix::zeros(d, d * n);
            for j in 0..d {
                for i in 0..d {
                    for x in 0..n {
                        let (src, dst) = if q_first { (x * d + i, i * n + x) } else { (i * n + x, x * d + i) };
                        out[(j, dst)] = a[(j, src)].conj();
                    }
                }
            }
            out
        };
        let right = self.carrier.left.as_ref().map(|l| swap(l, true));
        let left = self.carrier.right.as_ref().map(|r| swap(r, false));
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Bi => Side::Bi,
        };
        QModule { side, carrier: Carrier { dim: d, gens, left, right } }
    }
}

/// Free module on the irrep `i`: `Q⊗U_i`, `U_i⊗Q` or `Q⊗U_i⊗Q`, with its endomorphisms.
fn free_module(group: &GroupBackend, q: &QSystem, i: usize, side: Side) -> (Carrier, Vec<ComplexMatrix>) {
    let cps = group.coproducts();
    let n = q.dim();
    let m = q.mult();
    let u = group.irrep_carrier(i);
    let du = u.dim;
    let qc = Carrier::plain(q.gens.clone());
    let (free, embed): (Carrier, Box<dyn Fn(&ComplexMatrix) -> ComplexMatrix>) = match side {
        Side::Left => {
            let gens = tensor_gens(&cps, &qc, &u);
            let act = kron(&m, &identity(du));
            let mm = m.clone();
            (
                Carrier { dim: n * du, gens, left: Some(act), right: None },
                Box::new(move |phi| kron(&mm, &identity(du)) * kron(&identity(n), phi)),
            )
        }
        Side::Right => {
            let gens = tensor_gens(&cps, &u, &qc);
            let act = kron(&identity(du), &m);
            let mm = m.clone();
            (
                Carrier { dim: n * du, gens, left: None, right: Some(act) },
                Box::new(move |phi| kron(&identity(du), &mm) * kron(phi, &identity(n))),
            )
        }
        Side::Bi => {
            let qu = Carrier::plain(tensor_gens(&cps, &qc, &u));
            let gens = tensor_gens(&cps, &qu, &qc);
            let left = kron(&m, &identity(du * n));
            let right = kron(&identity(n * du), &m);
            let mm = m.clone();
            (
                Carrier { dim: n * du * n, gens, left: Some(left), right: Some(right) },
                Box::new(move |phi| {
                    kron(&kron(&mm, &identity(du)), &mm) * kron(&kron(&identity(n), phi), &identity(n))
                }),
            )
        }
    };
    // reciprocity: End(free) ≅ hom(U_i, underlying object of free)
    let endos = intertwiners(&u, &Carrier::plain(free.gens.clone()), n).iter().map(embed).collect();
    (free, endos)
}

/// Splits a free module into simple submodules along the eigenspaces of a generic self-adjoint
/// endomorphism.
fn split(free: &Carrier, endos: &[ComplexMatrix], n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Carrier>> {
    if endos.is_empty() {
        return Err(Error::Decomposition("free module has no endomorphisms".into()));
    }
    let mut h = ComplexMatrix::zeros(free.dim, free.dim);
    for e in endos {
        let r = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        h += e * r;
    }
    let h = (&h + h.adjoint()) * c(0.5);
    let (vals, vecs) = hermitian_eigen(&h);
    let scale = vals.iter().map(|v| v.abs()).fold(1e-300, f64::max);
    let mut out = Vec::new();
    for range in cluster_sorted(&vals, 1e-6 * scale) {
        let v = vecs.columns(range.start, range.len()).into_owned();
        out.push(compress(free, &v, n));
    }
    Ok(out)
}

fn isomorphic(a: &Carrier, b: &Carrier, n: usize) -> bool {
    a.dim == b.dim && !intertwiners(a, b, n).is_empty()
}

/// Pairwise non-isomorphic simple modules of the given side. The first entry is `Q` itself
/// (as a one-sided module, or as the unit bimodule).
pub fn simple_modules(group: &GroupBackend, q: &QSystem, side: Side) -> Result<Vec<QModule>> {
    let n = q.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let qc = q.carrier();
    let seed = match side {
        Side::Left => Carrier { right: None, ..qc },
        Side::Right => Carrier { left: None, ..qc },
        Side::Bi => qc,
    };
    let mut found: Vec<Carrier> = vec![seed];
    for i in 0..group.irreps().len() {
        let (free, endos) = free_module(group, q, i, side);
        for piece in split(&free, &endos, n, &mut rng)? {
            let ends = intertwiners(&piece, &piece, n).len();
            if ends != 1 {
                return Err(Error::NotSimple(ends));
            }
            if !found.iter().any(|f| isomorphic(f, &piece, n)) {
                found.push(piece);
            }
        }
    }
    Ok(found.into_iter().map(|carrier| QModule { side, carrier }).collect())
}

#[cfg(test)]
mod tests {
    use super::super::qsystem::qsystem_from_gset;
    use super::*;
    use crate::category::group::{cyclic_table, symmetric_table};

    #[test]
    fn z2_counts() {
        let g = GroupBackend::new(cyclic_table(2), None, 1).unwrap();
        let q = qsystem_from_gset(&g, &[0]).unwrap();
        assert_eq!(simple_modules(&g, &q, Side::Right).unwrap().len(), 1);
        assert_eq!(simple_modules(&g, &q, Side::Left).unwrap().len(), 1);
        let bi = simple_modules(&g, &q, Side::Bi).unwrap();
        assert_eq!(bi.len(), 2);
        for m in &bi {
            assert!(m.action_residual(&q) < 1e-9);
        }
    }

    #[test]
    fn s3_over_z2() {
        let g = GroupBackend::new(symmetric_table(3), None, 1).unwrap();
        let h: Vec<usize> = (0..6).filter(|&x| g.mul(x, x) == g.identity()).take(2).collect();
        let q = qsystem_from_gset(&g, &h).unwrap();
        // simple modules correspond to irreps of H = Z_2
        let left = simple_modules(&g, &q, Side::Left).unwrap();
        assert_eq!(left.len(), 2);
        for m in &left {
            assert!(m.action_residual(&q) < 1e-9);
            assert!(m.conjugate(&q).action_residual(&q) < 1e-9);
        }
    }
}
