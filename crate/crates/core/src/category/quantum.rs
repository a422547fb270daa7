//! Finite-dimensional representations of `U_q(su_2)`, `0 < q < 1`, truncated at a spin cutoff.
//!
//! Spin `j` acts on `|m⟩`, `m = -j..j`, by `K|m⟩ = q^{2m}|m⟩`, `E|m⟩ = a_m|m+1⟩`,
//! `F|m+1⟩ = a_m q^{-2(m+1)}|m⟩`. The coproduct is `ΔK = K⊗K`, `ΔE = E⊗K + 1⊗E`,
//! `ΔF = F⊗1 + K⁻¹⊗F`, and `E* = FK` makes every tensor power a unitary representation.

use super::carrier::{Carrier, Coproduct};
use super::engine::{Atom, Engine, Word};
use crate::error::{Error, Result};
use crate::numerics::linalg::{c, ComplexMatrix};

#[derive(Clone, Debug)]
pub struct QuantumBackend {
    q: f64,
    /// Twice the spin cutoff.
    cutoff2: usize,
}

/// Parses `"3/2"` or `"2"` into twice the spin.
pub fn parse_spin(s: &str) -> Result<usize> {
    let s = s.trim();
    let twice = if let Some(num) = s.strip_suffix("/2") {
        num.trim().parse::<usize>().map_err(|_| Error::Schema(format!("bad spin {s:?}")))?
    } else {
        s.parse::<usize>()
            .ok()
            .and_then(|v| v.checked_mul(2))
            .ok_or_else(|| Error::Schema(format!("bad spin {s:?}")))?
    };
    Ok(twice)
}

pub fn format_spin(twice: usize) -> String {
    if twice.is_multiple_of(2) {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

pub fn coproducts() -> Vec<Coproduct> {
    vec![
        Coproduct::Grouplike,
        Coproduct::Grouplike,
        Coproduct::Skew { right: Some(0), left: None },
        Coproduct::Skew { right: None, left: Some(1) },
    ]
}

/// `[K, K⁻¹, E, F]` on spin `twice/2`.
pub fn spin_generators(q: f64, twice: usize) -> Vec<ComplexMatrix> {
    let n = twice + 1;
    let j = twice as f64 / 2.0;
    let m = |k: usize| k as f64 - j;
    let qq = q - 1.0 / q;
    // x_m = a_m b_m with x_j = 0 and x_{m-1} = x_m + (q^{2m} - q^{-2m})/(q - q^{-1})
    let mut x = vec![0.0; n];
    for k in (1..n).rev() {
        let mm = m(k);
        x[k - 1] = x[k] + (q.powf(2.0 * mm) - q.powf(-2.0 * mm)) / qq;
    }
    let mut kk = ComplexMatrix::zeros(n, n);
    let mut ki = ComplexMatrix::zeros(n, n);
    let mut e = ComplexMatrix::zeros(n, n);
    let mut f = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        kk[(k, k)] = c(q.powf(2.0 * m(k)));
        ki[(k, k)] = c(q.powf(-2.0 * m(k)));
    }
    for k in 0..n.saturating_sub(1) {
        let a = (x[k].max(0.0) * q.powf(2.0 * (m(k) + 1.0))).sqrt();
        e[(k + 1, k)] = c(a);
        f[(k, k + 1)] = c(a * q.powf(-2.0 * (m(k) + 1.0)));
    }
    vec![kk, ki, e, f]
}

/// Diagonal of the Woronowicz character on spin `twice/2`: `q^{2m}`.
pub fn rho_diagonal(q: f64, twice: usize) -> Vec<f64> {
    let j = twice as f64 / 2.0;
    (0..=twice).map(|k| q.powf(2.0 * (k as f64 - j))).collect()
}

impl QuantumBackend {
    pub fn new(q: f64, cutoff2: usize) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Validation(format!("q = {q} is not in (0,1)")));
        }
        Ok(Self { q, cutoff2 })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn cutoff2(&self) -> usize {
        self.cutoff2
    }

    /// Spins `0, 1/2, ..., cutoff` as twice-values.
    pub fn spins(&self) -> Vec<usize> {
        (0..=self.cutoff2).collect()
    }

    /// `q + q^{-1}`.
    pub fn loop_value(&self) -> f64 {
        self.q + 1.0 / self.q
    }

    /// The engine; label `k` is spin `k/2`, label 0 the unit.
    pub fn engine(&self) -> Result<Engine> {
        let atoms = (1..=self.cutoff2)
            .map(|t| Atom {
                name: format_spin(t),
                source: 0,
                target: 0,
                carrier: Carrier::plain(spin_generators(self.q, t)),
            })
            .collect();
        let mut simples = vec![("0".to_string(), Word::unit(0))];
        for t in 1..=self.cutoff2 {
            simples.push((format_spin(t), Word { source: 0, target: 0, atoms: vec![t - 1] }));
        }
        Engine::new(coproducts(), None, atoms, simples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::max_abs;

    #[test]
    fn spin_parsing() {
        assert_eq!(parse_spin("3/2").unwrap(), 3);
        assert_eq!(parse_spin("2").unwrap(), 4);
        assert!(parse_spin("x").is_err());
        assert_eq!(format_spin(3), "3/2");
        assert_eq!(format_spin(4), "2");
    }

    #[test]
    fn generators_satisfy_relations() {
        let q = 0.5;
        for t in 1..6 {
            let g = spin_generators(q, t);
            let (k, ki, e, f) = (&g[0], &g[1], &g[2], &g[3]);
            let comm = e * f - f * e;
            let rhs = (k - ki) / c(q - 1.0 / q);
            assert!(max_abs(&(comm - rhs)) < 1e-12, "spin {t}/2");
            assert!(max_abs(&(k * e - e * k * c(q * q))) < 1e-12);
            assert!(max_abs(&(e.adjoint() - f * k)) < 1e-12);
        }
    }

    #[test]
    fn rho_trace_is_quantum_dimension() {
        let q = 0.5;
        let half: f64 = rho_diagonal(q, 1).iter().sum();
        assert!((half - 2.5).abs() < 1e-15);
    }
}
