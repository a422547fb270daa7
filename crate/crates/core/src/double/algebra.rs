//! The convolution algebra of the Drinfeld double of a finite group, in the basis `δ_x λ_g`.
//!
//! The defining rule `ω(· a₍₁₎) a₍₂₎ = a₍₁₎ ω(a₍₂₎ ·)` gives `λ_g δ_y = δ_{g y g⁻¹} λ_g`, hence
//! `(δ_x λ_g)(δ_y λ_h) = [x = g y g⁻¹] δ_x λ_{gh}` and `(δ_x λ_g)* = δ_{g⁻¹ x g} λ_{g⁻¹}`.

use crate::category::group::{character, irreps_from_regular, GroupBackend};
use crate::error::Result;
use crate::numerics::algebra::StarAlgebra;
use crate::numerics::linalg::{c, max_abs, ComplexMatrix, ComplexVector, C64};

#[derive(Clone, Debug)]
pub struct DoubleAlgebra {
    pub order: usize,
    pub algebra: StarAlgebra,
    irreps: Vec<Vec<ComplexMatrix>>,
}

pub fn build_double(group: &GroupBackend) -> Result<DoubleAlgebra> {
    let n = group.order();
    let dim = n * n;
    let mut inv = ComplexMatrix::zeros(dim, dim);
    for x in 0..n {
        for g in 0..n {
            let gi = group.inverse(g);
            let y = group.mul(group.mul(gi, x), g);
            inv[(y * n + gi, x * n + g)] = c(1.0);
        }
    }
    let mut products = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        let (x, g) = (a / n, a % n);
        for b in 0..dim {
            let (y, h) = (b / n, b % n);
            let conj = group.mul(group.mul(g, y), group.inverse(g));
            if conj == x {
                products.push(vec![((x * n + group.mul(g, h)) as u32, c(1.0))]);
            } else {
                products.push(Vec::new());
            }
        }
    }
    let algebra = StarAlgebra::new(dim, products, inv)?;
    Ok(DoubleAlgebra { order: n, algebra, irreps: group.irreps().to_vec() })
}

impl DoubleAlgebra {
    pub fn dim(&self) -> usize {
        self.order * self.order
    }

    /// `λ_g = Σ_x δ_x λ_g`.
    pub fn lambda(&self, g: usize) -> ComplexVector {
        let n = self.order;
        let mut v = ComplexVector::zeros(self.dim());
        for x in 0..n {
            v[x * n + g] = c(1.0);
        }
        v
    }

    /// `Σ_x f(x) δ_x λ_e` for a function on the group.
    pub fn function(&self, f: &[C64], identity: usize) -> ComplexVector {
        let n = self.order;
        let mut v = ComplexVector::zeros(self.dim());
        for (x, z) in f.iter().enumerate() {
            v[x * n + identity] = *z;
        }
        v
    }

    /// Matrix unit `m^i_{ab} = (d_i/|G|) Σ_g conj(U_i(g)_{ab}) λ_g` of `B(H_i) ⊂ c_c(Ĝ)`.
    pub fn matrix_unit(&self, i: usize, a: usize, b: usize) -> ComplexVector {
        let n = self.order;
        let d = self.irreps[i][0].nrows() as f64;
        let mut v = ComplexVector::zeros(self.dim());
        for g in 0..n {
            let z = self.irreps[i][g][(a, b)].conj() * c(d / n as f64);
            for x in 0..n {
                v[x * n + g] = z;
            }
        }
        v
    }

    /// Matrix coefficient `u^s_{ab} = Σ_x U_s(x)_{ab} δ_x`, optionally conjugated.
    pub fn coefficient(&self, s: usize, a: usize, b: usize, conjugate: bool, identity: usize) -> ComplexVector {
        let f: Vec<C64> = self.irreps[s]
            .iter()
            .map(|m| if conjugate { m[(a, b)].conj() } else { m[(a, b)] })
            .collect();
        self.function(&f, identity)
    }

    /// `E_0(δ_x λ_g) = φ(δ_x) λ_g = λ_g / |G|`, returned as coefficients on `{λ_g}`.
    pub fn cond_expectation(&self, x: &ComplexVector) -> ComplexVector {
        let n = self.order;
        let mut out = ComplexVector::zeros(n);
        for (a, z) in x.iter().enumerate() {
            out[a % n] += z / c(n as f64);
        }
        out
    }

    /// Embeds coefficients on `{λ_g}` back into the double.
    pub fn from_group_algebra(&self, w: &ComplexVector) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.dim());
        for (g, z) in w.iter().enumerate() {
            v += self.lambda(g) * *z;
        }
        v
    }

    /// Fourier transform `ω ↦ (U_i(ω))_i` of an element of the group algebra.
    pub fn fourier(&self, w: &ComplexVector) -> Vec<ComplexMatrix> {
        self.irreps
            .iter()
            .map(|rep| {
                let d = rep[0].nrows();
                let mut m = ComplexMatrix::zeros(d, d);
                for (g, z) in w.iter().enumerate() {
                    m += &rep[g] * *z;
                }
                m
            })
            .collect()
    }

    /// Max residual of `E_0(ω X ω') = ω E_0(X) ω'` over `X` in the basis and `ω, ω' ∈ {λ_g}`,
    /// together with `E_0(λ_g) = λ_g` and `E_0(u^s_{ab}) = δ_{s,0}λ_e`.
    pub fn expectation_residual(&self, identity: usize) -> f64 {
        let n = self.order;
        let mut worst = 0.0f64;
        for a in 0..self.dim() {
            let x = self.algebra.basis_vector(a);
            let ex = self.from_group_algebra(&self.cond_expectation(&x));
            for g in 0..n {
                for h in 0..n {
                    let (lg, lh) = (self.lambda(g), self.lambda(h));
                    let lhs = self.from_group_algebra(&self.cond_expectation(&self.algebra.mul(&self.algebra.mul(&lg, &x), &lh)));
                    let rhs = self.algebra.mul(&self.algebra.mul(&lg, &ex), &lh);
                    worst = worst.max((lhs - rhs).camax());
                }
            }
        }
        for g in 0..n {
            let e = self.cond_expectation(&self.lambda(g));
            let mut want = ComplexVector::zeros(n);
            want[g] = c(1.0);
            worst = worst.max((e - want).camax());
        }
        for (s, rep) in self.irreps.iter().enumerate() {
            let d = rep[0].nrows();
            for p in 0..d {
                for q in 0..d {
                    let e = self.cond_expectation(&self.coefficient(s, p, q, false, identity));
                    let mut want = ComplexVector::zeros(n);
                    if s == 0 {
                        want[identity] = c(1.0);
                    }
                    worst = worst.max((e - want).camax());
                }
            }
        }
        worst
    }

    /// Minimal eigenvalue of `G_ab = ε(E_0(a* b))` with `ε(λ_g) = δ_{g,e}`.
    pub fn expectation_gram_min(&self, identity: usize) -> f64 {
        let d = self.dim();
        let mut gram = ComplexMatrix::zeros(d, d);
        for a in 0..d {
            let sa = self.algebra.star(&self.algebra.basis_vector(a));
            for b in 0..d {
                let prod = self.algebra.mul(&sa, &self.algebra.basis_vector(b));
                gram[(a, b)] = self.cond_expectation(&prod)[identity];
            }
        }
        crate::numerics::linalg::hermitian_eigen(&gram).0.first().copied().unwrap_or(0.0)
    }

    /// `(ι⊗Δ)(W) = W₁₂W₁₃` for `W = (U_s)_s`, i.e. `U_s(gh) = U_s(g)U_s(h)`.
    pub fn multiplicative_unitary_residual(&self, group: &GroupBackend) -> f64 {
        let n = self.order;
        let mut worst = 0.0f64;
        for rep in &self.irreps {
            for g in 0..n {
                for h in 0..n {
                    worst = worst.max(max_abs(&(&rep[group.mul(g, h)] - &rep[g] * &rep[h])));
                }
            }
        }
        worst
    }
}

/// An irreducible representation of the double: a conjugacy class with an irrep of the
/// centraliser of its first element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleIrrep {
    pub class_representative: usize,
    pub dim: usize,
    /// Multiplicity of each irrep of `G` in the restriction to `c_c(Ĝ)`.
    pub multiplicities: Vec<usize>,
}

pub fn double_irreps(group: &GroupBackend, seed: u64) -> Result<Vec<DoubleIrrep>> {
    let mut out = Vec::new();
    let chars: Vec<Vec<C64>> = group.irreps().iter().map(|r| character(r)).collect();
    for class in group.conjugacy_classes() {
        let g = class[0];
        let cent: Vec<usize> = (0..group.order()).filter(|&h| group.mul(h, g) == group.mul(g, h)).collect();
        let pos = |x: usize| cent.iter().position(|&y| y == x).expect("centraliser is closed");
        let table: Vec<Vec<usize>> = cent.iter().map(|&a| cent.iter().map(|&b| pos(group.mul(a, b))).collect()).collect();
        for rho in irreps_from_regular(&table, seed)? {
            let chi = character(&rho);
            let dim = rho[0].nrows();
            let multiplicities = chars
                .iter()
                .map(|full| {
                    let m: C64 = cent.iter().enumerate().map(|(k, &h)| full[h].conj() * chi[k]).sum::<C64>()
                        / c(cent.len() as f64);
                    m.re.round() as usize
                })
                .collect();
            out.push(DoubleIrrep { class_representative: g, dim: class.len() * dim, multiplicities });
        }
    }
    Ok(out)
}
