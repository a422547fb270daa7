//! A strict C*-2-category with 0-cells `{0, 1}`, realised concretely: 1-morphisms are words of
//! atoms, each atom a representation of a Hopf *-algebra, with module actions of an algebra
//! object `Q` on the sides that sit at 0-cell 1. Relative tensor products over `Q` are ranges of
//! the separability projection, folded in one atom at a time.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::carrier::{compress, intertwiners, plain_tensor, Carrier, Coproduct};
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, identity, kron, range_basis, ComplexMatrix, C64};

/// Tensor word of atoms running from 0-cell `source` to 0-cell `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub source: u8,
    pub target: u8,
    pub atoms: Vec<usize>,
}

impl Word {
    pub fn unit(cell: u8) -> Self {
        Self { source: cell, target: cell, atoms: Vec::new() }
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.target != other.source {
            return Err(Error::BackendMismatch(format!(
                "cannot compose a word ending at cell {} with one starting at cell {}",
                self.target, other.source
            )));
        }
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Ok(Word { source: self.source, target: other.target, atoms })
    }

    pub fn cat(words: &[&Word]) -> Result<Word> {
        let mut out = words[0].clone();
        for w in &words[1..] {
            out = out.concat(w)?;
        }
        Ok(out)
    }
}

/// A morphism between two words, stored as a matrix between their carriers.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub dom: Word,
    pub cod: Word,
    pub mat: ComplexMatrix,
}

impl Morphism {
    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.dom != other.cod {
            return Err(Error::Shape(format!(
                "composition of {:?} after {:?} is undefined",
                self.dom.atoms, other.cod.atoms
            )));
        }
        Ok(Morphism { dom: other.dom.clone(), cod: self.cod.clone(), mat: &self.mat * &other.mat })
    }

    pub fn adjoint(&self) -> Morphism {
        Morphism { dom: self.cod.clone(), cod: self.dom.clone(), mat: self.mat.adjoint() }
    }

    pub fn scale(&self, z: C64) -> Morphism {
        Morphism { dom: self.dom.clone(), cod: self.cod.clone(), mat: &self.mat * z }
    }
}

/// Algebra object: `mult: Q⊗Q → Q` with `mult mult* = dim·ι`, and `unit: 1 → Q`.
#[derive(Clone, Debug)]
pub struct AlgebraObject {
    pub gens: Vec<ComplexMatrix>,
    pub mult: ComplexMatrix,
    pub unit: ComplexMatrix,
    pub dim: f64,
}

#[derive(Clone, Debug)]
pub struct Atom {
    pub name: String,
    pub source: u8,
    pub target: u8,
    pub carrier: Carrier,
}

/// A simple 1-morphism with its dual label and standard solution.
#[derive(Clone, Debug)]
pub struct SimpleLabel {
    pub name: String,
    pub word: Word,
    pub dual: usize,
    pub qdim: f64,
    /// `R: 1_t → k̄⊗k`
    pub r: ComplexMatrix,
    /// `R̄: 1_s → k⊗k̄`
    pub rbar: ComplexMatrix,
}

#[derive(Debug)]
struct WordData {
    carrier: Carrier,
    /// Isometry from the carrier into `carrier(prefix) ⊗ carrier(last atom)`; `None` is identity.
    fold: Option<ComplexMatrix>,
}

type HomKey = (Word, Word);

#[derive(Debug)]
pub struct Engine {
    coproducts: Vec<Coproduct>,
    algebra: Option<AlgebraObject>,
    atoms: Vec<Atom>,
    atom_simple: Vec<usize>,
    simples: Vec<SimpleLabel>,
    words: RwLock<HashMap<Word, Arc<WordData>>>,
    splits: RwLock<HashMap<HomKey, Option<Arc<ComplexMatrix>>>>,
    homs: RwLock<HashMap<HomKey, Arc<Vec<ComplexMatrix>>>>,
}

impl Engine {
    /// Builds the engine and fixes duals and standard solutions for the listed simples, which
    /// must be the units and single atoms, in the order they should be labelled.
    pub fn new(
        coproducts: Vec<Coproduct>,
        algebra: Option<AlgebraObject>,
        atoms: Vec<Atom>,
        simple_words: Vec<(String, Word)>,
    ) -> Result<Self> {
        let mut atom_simple = vec![usize::MAX; atoms.len()];
        for (k, (_, w)) in simple_words.iter().enumerate() {
            match w.atoms.as_slice() {
                [] => {}
                [a] if *a < atoms.len() => atom_simple[*a] = k,
                _ => return Err(Error::Validation(format!("simple {k} is not a unit or a single atom"))),
            }
        }
        if let Some(a) = atom_simple.iter().position(|&s| s == usize::MAX) {
            return Err(Error::Validation(format!("atom {a} is not listed as a simple")));
        }
        for (k, a) in atoms.iter().enumerate() {
            if (a.source == 1 || a.target == 1) && algebra.is_none() {
                return Err(Error::Validation(format!("atom {k} touches cell 1 but no algebra object was given")));
            }
            if (a.source == 1) != a.carrier.left.is_some() || (a.target == 1) != a.carrier.right.is_some() {
                return Err(Error::Validation(format!("atom {k} has actions inconsistent with its cells")));
            }
        }
        let simples = simple_words
            .into_iter()
            .map(|(name, word)| SimpleLabel {
                name,
                word,
                dual: usize::MAX,
                qdim: 0.0,
                r: ComplexMatrix::zeros(0, 0),
                rbar: ComplexMatrix::zeros(0, 0),
            })
            .collect();
        let mut engine = Self {
            coproducts,
            algebra,
            atoms,
            atom_simple,
            simples,
            words: RwLock::new(HashMap::new()),
            splits: RwLock::new(HashMap::new()),
            homs: RwLock::new(HashMap::new()),
        };
        engine.fix_standard_solutions()?;
        Ok(engine)
    }

    pub fn coproducts(&self) -> &[Coproduct] {
        &self.coproducts
    }

    pub fn algebra(&self) -> Option<&AlgebraObject> {
        self.algebra.as_ref()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn simples(&self) -> &[SimpleLabel] {
        &self.simples
    }

    pub fn simple(&self, k: usize) -> &SimpleLabel {
        &self.simples[k]
    }

    /// Simple labels from cell `s` to cell `t`, in label order.
    pub fn simples_between(&self, s: u8, t: u8) -> Vec<usize> {
        (0..self.simples.len())
            .filter(|&k| self.simples[k].word.source == s && self.simples[k].word.target == t)
            .collect()
    }

    pub fn unit_label(&self, cell: u8) -> Option<usize> {
        self.simples.iter().position(|l| l.word == Word::unit(cell))
    }

    pub fn q_dim(&self) -> usize {
        self.algebra.as_ref().map_or(0, |a| a.gens.first().map_or(a.mult.nrows(), |g| g.nrows()))
    }

    pub fn carrier_dim(&self, w: &Word) -> usize {
        self.word_data(w).carrier.dim
    }

    pub fn carrier(&self, w: &Word) -> Carrier {
        self.word_data(w).carrier.clone()
    }

    fn word_data(&self, w: &Word) -> Arc<WordData> {
        if let Some(d) = self.words.read().expect("word cache poisoned").get(w) {
            return d.clone();
        }
        let data = Arc::new(self.build_word(w));
        self.words.write().expect("word cache poisoned").entry(w.clone()).or_insert(data).clone()
    }

    fn build_word(&self, w: &Word) -> WordData {
        match w.atoms.len() {
            0 => {
                let carrier = if w.source == 0 {
                    Carrier::trivial(&self.coproducts)
                } else {
                    let q = self.algebra.as_ref().expect("cell 1 requires an algebra object");
                    Carrier {
                        dim: q.mult.nrows(),
                        gens: q.gens.clone(),
                        left: Some(q.mult.clone()),
                        right: Some(q.mult.clone()),
                    }
                };
                WordData { carrier, fold: None }
            }
            1 => WordData { carrier: self.atoms[w.atoms[0]].carrier.clone(), fold: None },
            n => {
                let last = w.atoms[n - 1];
                let prefix = Word {
                    source: w.source,
                    target: self.atoms[last].source,
                    atoms: w.atoms[..n - 1].to_vec(),
                };
                let pd = self.word_data(&prefix);
                let ad = &self.atoms[last].carrier;
                let amb = plain_tensor(&self.coproducts, &pd.carrier, ad);
                if prefix.target == 1 {
                    let q = self.algebra.as_ref().expect("cell 1 requires an algebra object");
                    let nq = q.mult.nrows();
                    let mr = pd.carrier.right.as_ref().expect("prefix ends at cell 1");
                    let ml = ad.left.as_ref().expect("atom starts at cell 1");
                    let proj = kron(mr, &identity(ad.dim))
                        * kron(&identity(pd.carrier.dim), &ml.adjoint())
                        * c(1.0 / q.dim);
                    let v = range_basis(&proj);
                    let carrier = compress(&amb, &v, nq);
                    WordData { carrier, fold: Some(v) }
                } else {
                    WordData { carrier: amb, fold: None }
                }
            }
        }
    }

    fn q_scale(&self) -> f64 {
        self.algebra.as_ref().map_or(1.0, |q| q.dim)
    }

    /// Isometric embedding `carrier(a·b) → carrier(a) ⊗ carrier(b)`; `None` means identity.
    fn split(&self, a: &Word, b: &Word) -> Result<Option<Arc<ComplexMatrix>>> {
        if a.target != b.source {
            return Err(Error::BackendMismatch("split of non-composable words".into()));
        }
        let key = (a.clone(), b.clone());
        if let Some(s) = self.splits.read().expect("split cache poisoned").get(&key) {
            return Ok(s.clone());
        }
        let value = self.build_split(a, b)?.map(Arc::new);
        Ok(self.splits.write().expect("split cache poisoned").entry(key).or_insert(value).clone())
    }

    fn build_split(&self, a: &Word, b: &Word) -> Result<Option<ComplexMatrix>> {
        let norm = c(self.q_scale().powf(-0.5));
        if a.is_unit() {
            if a.source == 0 {
                return Ok(None);
            }
            let bd = self.word_data(b);
            let ml = bd.carrier.left.as_ref().expect("word starting at cell 1 has a left action");
            return Ok(Some(ml.adjoint() * norm));
        }
        if b.is_unit() {
            if b.source == 0 {
                return Ok(None);
            }
            let ad = self.word_data(a);
            let mr = ad.carrier.right.as_ref().expect("word ending at cell 1 has a right action");
            return Ok(Some(mr.adjoint() * norm));
        }
        let ab = a.concat(b)?;
        let fold = self.word_data(&ab).fold.clone();
        if b.atoms.len() == 1 {
            return Ok(fold);
        }
        let n = b.atoms.len();
        let last = b.atoms[n - 1];
        let b_prefix = Word { source: b.source, target: self.atoms[last].source, atoms: b.atoms[..n - 1].to_vec() };
        let inner = self.split(a, &b_prefix)?;
        let b_fold = self.word_data(b).fold.clone();
        if inner.is_none() && b_fold.is_none() && fold.is_none() {
            return Ok(None);
        }
        let da = self.carrier_dim(a);
        let dlast = self.atoms[last].carrier.dim;
        let dab_prefix = self.carrier_dim(&a.concat(&b_prefix)?);
        let mut m = match &fold {
            Some(f) => f.clone(),
            None => identity(dab_prefix * dlast),
        };
        if let Some(s) = inner {
            m = kron(&s, &identity(dlast)) * m;
        }
        if let Some(bf) = b_fold {
            m = kron(&identity(da), &bf.adjoint()) * m;
        }
        Ok(Some(m))
    }

    /// The isometry `carrier(a·b) → carrier(a) ⊗ carrier(b)` used by [`Engine::tensor`].
    pub fn embedding(&self, a: &Word, b: &Word) -> Result<ComplexMatrix> {
        Ok(match self.split(a, b)? {
            Some(s) => s.as_ref().clone(),
            None => identity(self.carrier_dim(a) * self.carrier_dim(b)),
        })
    }

    pub fn identity(&self, w: &Word) -> Morphism {
        Morphism { dom: w.clone(), cod: w.clone(), mat: identity(self.carrier_dim(w)) }
    }

    /// Tensor product of morphisms `x: A → A'` and `y: B → B'` as a morphism `A·B → A'·B'`.
    pub fn tensor(&self, x: &Morphism, y: &Morphism) -> Result<Morphism> {
        let dom = x.dom.concat(&y.dom)?;
        let cod = x.cod.concat(&y.cod)?;
        let mut m = kron(&x.mat, &y.mat);
        if let Some(s) = self.split(&x.dom, &y.dom)? {
            m *= s.as_ref();
        }
        if let Some(s) = self.split(&x.cod, &y.cod)? {
            m = s.adjoint() * m;
        }
        Ok(Morphism { dom, cod, mat: m })
    }

    pub fn tensor3(&self, x: &Morphism, y: &Morphism, z: &Morphism) -> Result<Morphism> {
        self.tensor(&self.tensor(x, y)?, z)
    }

    /// Frobenius-orthonormal basis of `hom(a, b)`, memoised.
    pub fn hom(&self, a: &Word, b: &Word) -> Result<Arc<Vec<ComplexMatrix>>> {
        if a.source != b.source || a.target != b.target {
            return Err(Error::BackendMismatch(format!(
                "hom between words of cells ({},{}) and ({},{})",
                a.source, a.target, b.source, b.target
            )));
        }
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.read().expect("hom cache poisoned").get(&key) {
            return Ok(h.clone());
        }
        let basis = Arc::new(intertwiners(&self.word_data(a).carrier, &self.word_data(b).carrier, self.q_dim()));
        Ok(self.homs.write().expect("hom cache poisoned").entry(key).or_insert(basis).clone())
    }

    /// Basis of `hom(U, b)` for a simple `U`, normalised so that `w_α* w_β = δ_αβ ι`.
    pub fn hom_isometries(&self, simple: &Word, b: &Word) -> Result<Vec<ComplexMatrix>> {
        let scale = c((self.carrier_dim(simple) as f64).sqrt());
        Ok(self.hom(simple, b)?.iter().map(|m| m * scale).collect())
    }

    pub fn hom_dim(&self, a: &Word, b: &Word) -> Result<usize> {
        Ok(self.hom(a, b)?.len())
    }

    /// The scalar `λ` with `T = λ ι` for an endomorphism of a unit word.
    pub fn scalar(&self, t: &ComplexMatrix) -> C64 {
        t.trace() / c(t.nrows().max(1) as f64)
    }

    pub fn dual_word(&self, w: &Word) -> Word {
        Word {
            source: w.target,
            target: w.source,
            atoms: w
                .atoms
                .iter()
                .rev()
                .map(|&a| {
                    let d = self.simples[self.atom_simple[a]].dual;
                    self.simples[d].word.atoms[0]
                })
                .collect(),
        }
    }

    pub fn atom_label(&self, atom: usize) -> usize {
        self.atom_simple[atom]
    }

    fn fix_standard_solutions(&mut self) -> Result<()> {
        let n = self.simples.len();
        for k in 0..n {
            if self.simples[k].dual != usize::MAX {
                continue;
            }
            let kw = self.simples[k].word.clone();
            if kw.is_unit() {
                let d = self.carrier_dim(&kw);
                let s = &mut self.simples[k];
                s.dual = k;
                s.qdim = 1.0;
                s.r = identity(d);
                s.rbar = identity(d);
                continue;
            }
            let (s, t) = (kw.source, kw.target);
            let one_t = Word::unit(t);
            let one_s = Word::unit(s);
            let mut found = None;
            for cand in self.simples_between(t, s) {
                if self.simples[cand].dual != usize::MAX && cand != k {
                    continue;
                }
                let cw = self.simples[cand].word.clone();
                if cw.is_unit() {
                    continue;
                }
                if self.hom_dim(&one_t, &cw.concat(&kw)?)? == 1 {
                    found = Some(cand);
                    break;
                }
            }
            let kb = found.ok_or_else(|| Error::Validation(format!("simple {k} has no dual among the labels")))?;
            let kbw = self.simples[kb].word.clone();
            let r = self.hom_isometries(&one_t, &kbw.concat(&kw)?)?[0].clone();
            let rbar_list = self.hom_isometries(&one_s, &kw.concat(&kbw)?)?;
            if rbar_list.len() != 1 {
                return Err(Error::Validation(format!("simple {k}: hom(1, k⊗k̄) has dimension {}", rbar_list.len())));
            }
            let rbar = rbar_list[0].clone();
            let rm = Morphism { dom: one_t.clone(), cod: kbw.concat(&kw)?, mat: r };
            let rbm = Morphism { dom: one_s.clone(), cod: kw.concat(&kbw)?, mat: rbar };
            // (ι_k̄ ⊗ r̄*)(r ⊗ ι_k̄) = a ι_k̄
            let lhs = self
                .tensor(&self.identity(&kbw), &rbm.adjoint())?
                .compose(&self.tensor(&rm, &self.identity(&kbw))?)?;
            let a = self.scalar(&lhs.mat);
            if a.norm() < 1e-12 {
                return Err(Error::Validation(format!("simple {k}: degenerate duality pairing")));
            }
            let alpha = a.norm().powf(-0.5);
            let big_r = &rm.mat * c(alpha);
            let big_rbar = &rbm.mat / (a.conj() * alpha);
            let d = 1.0 / a.norm();
            {
                let sk = &mut self.simples[k];
                sk.dual = kb;
                sk.qdim = d;
                sk.r = big_r.clone();
                sk.rbar = big_rbar.clone();
            }
            if kb != k {
                let sb = &mut self.simples[kb];
                sb.dual = k;
                sb.qdim = d;
                sb.r = big_rbar;
                sb.rbar = big_r;
            }
        }
        Ok(())
    }

    /// Standard solution `(R_W, R̄_W)` of a word, composed from those of its letters.
    pub fn standard_pair(&self, w: &Word) -> Result<(Morphism, Morphism)> {
        if w.is_unit() {
            let id = self.identity(w);
            return Ok((id.clone(), id));
        }
        let u = self.atom_simple[w.atoms[0]];
        let lu = &self.simples[u];
        let uw = lu.word.clone();
        let ubar = self.dual_word(&uw);
        let ru = Morphism { dom: Word::unit(uw.target), cod: ubar.concat(&uw)?, mat: lu.r.clone() };
        let rbu = Morphism { dom: Word::unit(uw.source), cod: uw.concat(&ubar)?, mat: lu.rbar.clone() };
        if w.atoms.len() == 1 {
            return Ok((ru, rbu));
        }
        let v = Word { source: uw.target, target: w.target, atoms: w.atoms[1..].to_vec() };
        let vbar = self.dual_word(&v);
        let (rv, rbv) = self.standard_pair(&v)?;
        let r = self
            .tensor3(&self.identity(&vbar), &ru, &self.identity(&v))?
            .compose(&rv)?;
        let rbar = self
            .tensor3(&self.identity(&uw), &rbv, &self.identity(&ubar))?
            .compose(&rbu)?;
        Ok((r, rbar))
    }

    /// Intrinsic dimension `R*R` of a word.
    pub fn qdim(&self, w: &Word) -> Result<f64> {
        let (r, _) = self.standard_pair(w)?;
        Ok(self.scalar(&(r.mat.adjoint() * &r.mat)).re)
    }

    /// `Tr_X(T) = R*(ι⊗T)R`.
    pub fn categorical_trace(&self, t: &Morphism) -> Result<C64> {
        if t.dom != t.cod {
            return Err(Error::Shape("categorical trace of a non-endomorphism".into()));
        }
        let (r, _) = self.standard_pair(&t.dom)?;
        let xbar = self.dual_word(&t.dom);
        let inner = self.tensor(&self.identity(&xbar), t)?;
        Ok(self.scalar(&(r.mat.adjoint() * inner.mat * &r.mat)))
    }

    /// `R̄*(T⊗ι)R̄`, the second expression for the trace.
    pub fn categorical_trace_bar(&self, t: &Morphism) -> Result<C64> {
        if t.dom != t.cod {
            return Err(Error::Shape("categorical trace of a non-endomorphism".into()));
        }
        let (_, rb) = self.standard_pair(&t.dom)?;
        let xbar = self.dual_word(&t.dom);
        let inner = self.tensor(t, &self.identity(&xbar))?;
        Ok(self.scalar(&(rb.mat.adjoint() * inner.mat * &rb.mat)))
    }

    /// `T^∨ = (ι_X̄ ⊗ R̄_Y*)(ι_X̄ ⊗ T ⊗ ι_Ȳ)(R_X ⊗ ι_Ȳ)`, a morphism `Ȳ → X̄`.
    pub fn vee(&self, t: &Morphism) -> Result<Morphism> {
        let xbar = self.dual_word(&t.dom);
        let ybar = self.dual_word(&t.cod);
        let (rx, _) = self.standard_pair(&t.dom)?;
        let (_, rby) = self.standard_pair(&t.cod)?;
        let step1 = self.tensor(&rx, &self.identity(&ybar))?;
        let step2 = self.tensor3(&self.identity(&xbar), t, &self.identity(&ybar))?;
        let step3 = self.tensor(&self.identity(&xbar), &rby.adjoint())?;
        step3.compose(&step2)?.compose(&step1)
    }

    /// Max residual of the two conjugate equations for a word's standard pair.
    pub fn conjugate_residual(&self, w: &Word) -> Result<f64> {
        let (r, rb) = self.standard_pair(w)?;
        let wbar = self.dual_word(w);
        let e1 = self
            .tensor(&self.identity(&wbar), &rb.adjoint())?
            .compose(&self.tensor(&r, &self.identity(&wbar))?)?;
        let e2 = self
            .tensor(&self.identity(w), &r.adjoint())?
            .compose(&self.tensor(&rb, &self.identity(w))?)?;
        let d1 = crate::numerics::linalg::max_abs(&(e1.mat - identity(self.carrier_dim(&wbar))));
        let d2 = crate::numerics::linalg::max_abs(&(e2.mat - identity(self.carrier_dim(w))));
        Ok(d1.max(d2))
    }

    /// Residual of `T` being an intertwiner between the carriers of its words.
    pub fn equivariance_residual(&self, t: &Morphism) -> f64 {
        let a = self.word_data(&t.dom);
        let b = self.word_data(&t.cod);
        let mut worst = 0.0f64;
        for (ga, gb) in a.carrier.gens.iter().zip(&b.carrier.gens) {
            worst = worst.max(crate::numerics::linalg::max_abs(&(&t.mat * ga - gb * &t.mat)));
        }
        let nq = self.q_dim();
        if let (Some(ma), Some(mb)) = (&a.carrier.left, &b.carrier.left) {
            let lhs = &t.mat * ma;
            let rhs = mb * kron(&identity(nq), &t.mat);
            worst = worst.max(crate::numerics::linalg::max_abs(&(lhs - rhs)));
        }
        if let (Some(ma), Some(mb)) = (&a.carrier.right, &b.carrier.right) {
            let lhs = &t.mat * ma;
            let rhs = mb * kron(&t.mat, &identity(nq));
            worst = worst.max(crate::numerics::linalg::max_abs(&(lhs - rhs)));
        }
        worst
    }

    /// Word of a simple label.
    pub fn word_of(&self, label: usize) -> &Word {
        &self.simples[label].word
    }

    /// Concatenation of the words of a sequence of simple labels.
    pub fn word_of_labels(&self, labels: &[usize]) -> Result<Word> {
        let ws: Vec<&Word> = labels.iter().map(|&l| &self.simples[l].word).collect();
        Word::cat(&ws)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group::{symmetric_table, GroupBackend};
    use crate::category::quantum::QuantumBackend;
    use crate::numerics::linalg::max_abs;

    fn s3() -> Engine {
        GroupBackend::new(symmetric_table(3), None, 11).unwrap().engine().unwrap()
    }

    fn word(e: &Engine, labels: &[usize]) -> Word {
        e.word_of_labels(labels).unwrap()
    }

    #[test]
    fn s3_dimensions_and_conjugate_equations() {
        let e = s3();
        let dims: Vec<f64> = e.simples().iter().map(|s| s.qdim).collect();
        assert_eq!(dims.len(), 3);
        for (k, d) in dims.iter().enumerate() {
            let expected = e.carrier_dim(e.word_of(k)) as f64;
            assert!((d - expected).abs() < 1e-9);
            assert!(e.conjugate_residual(e.word_of(k)).unwrap() < 1e-9);
        }
        let w = word(&e, &[2, 1, 2]);
        assert!(e.conjugate_residual(&w).unwrap() < 1e-9);
        assert!((e.qdim(&w).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn s3_two_by_two_contains_two_once() {
        let e = s3();
        assert_eq!(e.hom_dim(&word(&e, &[2]), &word(&e, &[2, 2])).unwrap(), 1);
        assert_eq!(e.hom_dim(&word(&e, &[2, 2]), &word(&e, &[2, 2])).unwrap(), 3);
        assert_eq!(e.hom_dim(&Word::unit(0), &Word::unit(0)).unwrap(), 1);
    }

    #[test]
    fn vee_properties() {
        let e = s3();
        let x = word(&e, &[2, 1]);
        let y = word(&e, &[1, 2]);
        let z = word(&e, &[2]);
        let basis_xy = e.hom(&x, &y).unwrap();
        let basis_yz = e.hom(&y, &word(&e, &[2, 2, 1])).unwrap();
        let t = Morphism { dom: x.clone(), cod: y.clone(), mat: basis_xy[0].clone() };
        let s = Morphism { dom: y.clone(), cod: word(&e, &[2, 2, 1]), mat: basis_yz[0].clone() };
        let st = s.compose(&t).unwrap();
        let lhs = e.vee(&st).unwrap();
        let rhs = e.vee(&t).unwrap().compose(&e.vee(&s).unwrap()).unwrap();
        assert!(max_abs(&(lhs.mat - rhs.mat)) < 1e-9);
        let a = e.vee(&t.adjoint()).unwrap();
        let b = e.vee(&t).unwrap().adjoint();
        assert!(max_abs(&(a.mat - b.mat)) < 1e-9);
        let id = e.identity(&z);
        assert!(max_abs(&(e.vee(&id).unwrap().mat - e.identity(&e.dual_word(&z)).mat)) < 1e-9);
        // (T⊗ι)R̄_X = (ι⊗T^∨)R̄_Y and (ι⊗T)R_X = (T^∨⊗ι)R_Y
        let tv = e.vee(&t).unwrap();
        let (rx, rbx) = e.standard_pair(&x).unwrap();
        let (ry, rby) = e.standard_pair(&y).unwrap();
        let l1 = e.tensor(&t, &e.identity(&e.dual_word(&x))).unwrap().compose(&rbx).unwrap();
        let r1 = e.tensor(&e.identity(&y), &tv).unwrap().compose(&rby).unwrap();
        assert!(max_abs(&(l1.mat - r1.mat)) < 1e-9);
        let l2 = e.tensor(&e.identity(&e.dual_word(&x)), &t).unwrap().compose(&rx).unwrap();
        let r2 = e.tensor(&tv, &e.identity(&y)).unwrap().compose(&ry).unwrap();
        assert!(max_abs(&(l2.mat - r2.mat)) < 1e-9);
    }

    #[test]
    fn trace_expressions_agree() {
        let e = s3();
        let x = word(&e, &[2, 2]);
        for b in e.hom(&x, &x).unwrap().iter() {
            let t = Morphism { dom: x.clone(), cod: x.clone(), mat: b.clone() };
            let a = e.categorical_trace(&t).unwrap();
            let c_ = e.categorical_trace_bar(&t).unwrap();
            assert!((a - c_).norm() < 1e-9);
            let pos = e.categorical_trace(&t.adjoint().compose(&t).unwrap()).unwrap();
            assert!(pos.re > 0.0 && pos.im.abs() < 1e-9);
        }
    }

    #[test]
    fn quantum_half_spin() {
        let e = QuantumBackend::new(0.5, 4).unwrap().engine().unwrap();
        let half = e.word_of(1).clone();
        assert!((e.simple(1).qdim - 2.5).abs() < 1e-12);
        assert!(e.conjugate_residual(&half).unwrap() < 1e-9);
        let hh = word(&e, &[1, 1]);
        assert_eq!(e.hom_dim(&hh, &hh).unwrap(), 2);
        let t = e.categorical_trace(&e.identity(&half)).unwrap();
        assert!((t.re - 2.5).abs() < 1e-12);
        for k in 1..=4 {
            let j = k as f64 / 2.0;
            let expected: f64 = (0..=k).map(|m| 0.5f64.powf(2.0 * (m as f64 - j))).sum();
            assert!((e.simple(k).qdim - expected).abs() < 1e-9 * expected);
        }
    }
}
