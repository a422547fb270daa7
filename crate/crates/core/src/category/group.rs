//! Finite groups: validated multiplication tables, unitary irreducible representations and the
//! category of finite-dimensional unitary representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::carrier::{Carrier, Coproduct};
use super::engine::{Atom, Engine, Word};
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, cluster_sorted, hermitian_eigen, max_abs, ComplexMatrix, C64};

/// Tolerance for unitarity, homomorphism and Schur checks on ingested irreps.
const REP_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct GroupBackend {
    order: usize,
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    /// `irreps[i][g]`; index 0 is the trivial representation.
    irreps: Vec<Vec<ComplexMatrix>>,
}

/// Multiplication table of the cyclic group `Z_n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Multiplication table of `S_n` on permutations in lexicographic order, `(στ)(x) = σ(τ(x))`.
pub fn symmetric_table(n: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(&mut Vec::new(), &mut vec![false; n], &mut perms);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
    perms
        .iter()
        .map(|s| perms.iter().map(|t| index(&t.iter().map(|&x| s[x]).collect())).collect())
        .collect()
}

/// Checks that `mul` is a group law; returns (identity, inverses).
pub fn validate_table(mul: &[Vec<usize>]) -> Result<(usize, Vec<usize>)> {
    let n = mul.len();
    if n == 0 {
        return Err(Error::GroupLaw("empty table".into()));
    }
    for (a, row) in mul.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Schema(format!("row {a} has length {}, expected {n}", row.len())));
        }
        if let Some(b) = row.iter().position(|&x| x >= n) {
            return Err(Error::GroupLaw(format!("({a},{b}): product {} out of range", row[b])));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                if mul[mul[a][b]][cc] != mul[a][mul[b][cc]] {
                    return Err(Error::GroupLaw(format!("associativity fails at ({a},{b},{cc})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&g| (0..n).all(|h| mul[g][h] == h && mul[h][g] == h))
        .ok_or_else(|| Error::GroupLaw("no two-sided identity".into()))?;
    let mut inv = vec![0; n];
    for g in 0..n {
        inv[g] = (0..n)
            .find(|&h| mul[g][h] == e && mul[h][g] == e)
            .ok_or_else(|| Error::GroupLaw(format!("element {g} has no inverse")))?;
    }
    Ok((e, inv))
}

fn generating_set(mul: &[Vec<usize>], e: usize) -> Vec<usize> {
    let n = mul.len();
    let mut inside = vec![false; n];
    inside[e] = true;
    let mut gens = Vec::new();
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        // closure of the subgroup generated so far
        let mut members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        let mut k = 0;
        members.push(g);
        inside[g] = true;
        while k < members.len() {
            let x = members[k];
            for &s in &gens {
                let y = mul[x][s];
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
    }
    gens
}

pub fn character(rep: &[ComplexMatrix]) -> Vec<C64> {
    rep.iter().map(|m| m.trace()).collect()
}

fn char_inner(a: &[C64], b: &[C64]) -> C64 {
    let n = a.len() as f64;
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<C64>() / n
}

/// Irreducible unitary representations cut out of the left regular representation by the
/// eigenspaces of a random element of its commutant; trivial first, then by dimension.
pub fn irreps_from_regular(mul: &[Vec<usize>], seed: u64) -> Result<Vec<Vec<ComplexMatrix>>> {
    let n = mul.len();
    let (_, inv) = validate_table(mul)?;
    let regular: Vec<ComplexMatrix> = (0..n)
        .map(|g| {
            let mut m = ComplexMatrix::zeros(n, n);
            for h in 0..n {
                m[(mul[g][h], h)] = c(1.0);
            }
            m
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..8 {
        let mut h = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let h = &h + h.adjoint();
        let mut avg = ComplexMatrix::zeros(n, n);
        for g in 0..n {
            avg += &regular[g] * &h * &regular[inv[g]];
        }
        avg /= c(n as f64);
        let (vals, vecs) = hermitian_eigen(&avg);
        let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
        let clusters = cluster_sorted(&vals, 1e-7 * scale);
        let mut found: Vec<(Vec<C64>, Vec<ComplexMatrix>)> = Vec::new();
        let mut ok = true;
        for r in clusters {
            let v = vecs.columns(r.start, r.len()).into_owned();
            let rep: Vec<ComplexMatrix> = regular.iter().map(|l| v.adjoint() * l * &v).collect();
            let chi = character(&rep);
            let norm = char_inner(&chi, &chi);
            if (norm.re - 1.0).abs() > 1e-6 {
                ok = false;
                break;
            }
            if !found.iter().any(|(x, _)| char_inner(x, &chi).norm() > 0.5) {
                found.push((chi, rep));
            }
        }
        let total: usize = found.iter().map(|(_, r)| r[0].nrows().pow(2)).sum();
        if !ok || total != n {
            continue;
        }
        let triv = found
            .iter()
            .position(|(x, _)| x.iter().all(|z| (z - c(1.0)).norm() < 1e-6))
            .ok_or_else(|| Error::Decomposition("trivial representation not found".into()))?;
        let first = found.remove(triv);
        found.sort_by_key(|(_, r)| r[0].nrows());
        let mut out = vec![first.1];
        out.extend(found.into_iter().map(|(_, r)| r));
        return Ok(out);
    }
    Err(Error::Decomposition("regular representation did not split into irreducibles".into()))
}

impl GroupBackend {
    /// Validates the table and the irreps (computing them when absent).
    pub fn new(mul: Vec<Vec<usize>>, irreps: Option<Vec<Vec<ComplexMatrix>>>, seed: u64) -> Result<Self> {
        let (identity, inverse) = validate_table(&mul)?;
        let n = mul.len();
        let irreps = match irreps {
            Some(list) => Self::validate_irreps(&mul, &inverse, list)?,
            None => irreps_from_regular(&mul, seed)?,
        };
        let generators = generating_set(&mul, identity);
        Ok(Self { order: n, mul, inverse, identity, generators, irreps })
    }

    fn validate_irreps(
        mul: &[Vec<usize>],
        inverse: &[usize],
        list: Vec<Vec<ComplexMatrix>>,
    ) -> Result<Vec<Vec<ComplexMatrix>>> {
        let n = mul.len();
        let mut chars = Vec::new();
        for (k, rep) in list.iter().enumerate() {
            if rep.len() != n {
                return Err(Error::Schema(format!("irrep {k} has {} matrices, expected {n}", rep.len())));
            }
            let d = rep[0].nrows();
            if d == 0 || rep.iter().any(|m| m.nrows() != d || m.ncols() != d) {
                return Err(Error::Schema(format!("irrep {k} has inconsistent or empty matrices")));
            }
            let mut worst = 0.0f64;
            for g in 0..n {
                worst = worst.max(max_abs(&(rep[g].adjoint() * &rep[g] - ComplexMatrix::identity(d, d))));
                worst = worst.max(max_abs(&(rep[inverse[g]].clone() - rep[g].adjoint())));
            }
            if worst > REP_TOL {
                return Err(Error::NonUnitary { index: k, residual: worst });
            }
            for g in 0..n {
                for h in 0..n {
                    let r = max_abs(&(&rep[g] * &rep[h] - &rep[mul[g][h]]));
                    if r > REP_TOL {
                        return Err(Error::Validation(format!(
                            "irrep {k} is not a homomorphism at ({g},{h}), residual {r:.3e}"
                        )));
                    }
                }
            }
            let chi = character(rep);
            let norm = char_inner(&chi, &chi).re;
            if (norm - 1.0).abs() > 1e-6 {
                return Err(Error::Validation(format!("irrep {k} is reducible (character norm {norm:.6})")));
            }
            if let Some(j) = chars.iter().position(|x: &Vec<C64>| char_inner(x, &chi).norm() > 1e-6) {
                return Err(Error::Validation(format!("irreps {j} and {k} are equivalent")));
            }
            chars.push(chi);
        }
        let total: usize = list.iter().map(|r| r[0].nrows().pow(2)).sum();
        if total != n {
            return Err(Error::Validation(format!("irrep dimensions squared sum to {total}, group order is {n}")));
        }
        let triv = chars
            .iter()
            .position(|x| x.iter().all(|z| (z - c(1.0)).norm() < 1e-8))
            .ok_or_else(|| Error::Validation("trivial representation missing".into()))?;
        let mut list = list;
        let t = list.remove(triv);
        list.insert(0, t);
        Ok(list)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn irreps(&self) -> &[Vec<ComplexMatrix>] {
        &self.irreps
    }

    pub fn irrep_dim(&self, i: usize) -> usize {
        self.irreps[i][0].nrows()
    }

    pub fn coproducts(&self) -> Vec<Coproduct> {
        vec![Coproduct::Grouplike; self.generators.len()]
    }

    /// Generator matrices of a representation given on all elements.
    pub fn restrict_to_generators(&self, rep: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
        self.generators.iter().map(|&g| rep[g].clone()).collect()
    }

    pub fn irrep_carrier(&self, i: usize) -> Carrier {
        Carrier::plain(self.restrict_to_generators(&self.irreps[i]))
    }

    /// Atoms for the nontrivial irreps, in label order.
    pub fn irrep_atoms(&self) -> Vec<Atom> {
        (1..self.irreps.len())
            .map(|i| Atom { name: format!("irrep{i}"), source: 0, target: 0, carrier: self.irrep_carrier(i) })
            .collect()
    }

    /// The representation category: label 0 is the unit, label `i` is irrep `i`.
    pub fn engine(&self) -> Result<Engine> {
        let atoms = self.irrep_atoms();
        let mut simples = vec![("irrep0".to_string(), Word::unit(0))];
        for i in 1..self.irreps.len() {
            simples.push((format!("irrep{i}"), Word { source: 0, target: 0, atoms: vec![i - 1] }));
        }
        Engine::new(self.coproducts(), None, atoms, simples)
    }

    /// Conjugacy classes in order of first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.mul[self.mul[g][x]][self.inverse[g]]).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class);
        }
        out
    }
}
