//! Dense complex kernels: Kronecker products, rank-revealing null spaces,
//! Hermitian spectral decompositions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
/// Dense complex matrix; every morphism and structure table is stored this way.
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Singular values below this (relative to the largest, floored at 1) are numerical zeros.
pub const SINGULAR_CUTOFF: f64 = 1e-10;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Hilbert-Schmidt pairing `tr(b^† a)`.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| y.conj() * x).sum()
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn all_finite(a: &ComplexMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn singular_threshold(values: &[f64]) -> f64 {
    let top = values.iter().cloned().fold(0.0, f64::max);
    SINGULAR_CUTOFF * top.max(1.0)
}

/// Orthonormal basis (as columns) of the kernel of `a`.
pub fn nullspace(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.ncols();
    if n == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return identity(n);
    }
    // Reduce tall systems to a square triangular factor first.
    let square = if a.nrows() > n {
        a.clone().qr().r()
    } else {
        let mut padded = ComplexMatrix::zeros(n, n);
        padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        padded
    };
    let svd = square.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let thr = singular_threshold(&sv);
    let cols: Vec<ComplexVector> = sv
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= thr)
        .map(|(k, _)| vt.row(k).adjoint())
        .collect();
    let mut basis = if cols.is_empty() {
        ComplexMatrix::zeros(n, 0)
    } else {
        ComplexMatrix::from_columns(&cols)
    };
    fix_phases(&mut basis);
    basis
}

/// Orthonormal basis (as columns) of the column space of `a`.
pub fn range_basis(a: &ComplexMatrix) -> ComplexMatrix {
    let m = a.nrows();
    if a.ncols() == 0 || m == 0 {
        return ComplexMatrix::zeros(m, 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let thr = singular_threshold(&sv);
    let mut idx: Vec<usize> = (0..sv.len()).filter(|&k| sv[k] > thr).collect();
    idx.sort_by(|&x, &y| sv[y].partial_cmp(&sv[x]).unwrap());
    let cols: Vec<ComplexVector> = idx.iter().map(|&k| u.column(k).into_owned()).collect();
    let mut basis = if cols.is_empty() {
        ComplexMatrix::zeros(m, 0)
    } else {
        ComplexMatrix::from_columns(&cols)
    };
    fix_phases(&mut basis);
    basis
}

pub fn rank(a: &ComplexMatrix) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv: Vec<f64> = a.singular_values().iter().cloned().collect();
    let thr = singular_threshold(&sv);
    sv.iter().filter(|s| **s > thr).count()
}

/// Rotates every column so that its first entry of non-negligible modulus is real positive.
pub fn fix_phases(basis: &mut ComplexMatrix) {
    for mut col in basis.column_iter_mut() {
        let top = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if let Some(z) = col.iter().find(|z| z.norm() > 1e-6 * top.max(1e-300)).cloned() {
            let phase = z.conj() / z.norm();
            col *= phase;
        }
    }
}

/// Joint kernel of a family of linear constraints acting on the same space.
pub fn solve_linear_space(constraints: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let Some(first) = constraints.first() else {
        return Err(Error::Shape("no constraints given; domain dimension unknown".into()));
    };
    let n = first.ncols();
    if let Some((k, bad)) = constraints.iter().enumerate().find(|(_, m)| m.ncols() != n) {
        return Err(Error::Shape(format!(
            "constraint {k} acts on dimension {} but constraint 0 acts on {n}",
            bad.ncols()
        )));
    }
    let rows: usize = constraints.iter().map(|m| m.nrows()).sum();
    let mut stacked = ComplexMatrix::zeros(rows, n);
    let mut at = 0;
    for m in constraints {
        stacked.view_mut((at, 0), (m.nrows(), n)).copy_from(m);
        at += m.nrows();
    }
    Ok(nullspace(&stacked))
}

/// Eigen-decomposition of the Hermitian part of `h`; eigenvalues ascending.
pub fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.nrows();
    if n == 0 {
        return (vec![], ComplexMatrix::zeros(0, 0));
    }
    let sym = (h + h.adjoint()) * c(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let cols: Vec<ComplexVector> = order.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
    let mut vectors = ComplexMatrix::from_columns(&cols);
    fix_phases(&mut vectors);
    (values, vectors)
}

/// Groups sorted eigenvalues into clusters separated by more than `gap`.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > gap {
            if k > start {
                out.push(start..k);
            }
            start = k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_constraint_keeps_everything() {
        let basis = solve_linear_space(&[ComplexMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(basis.ncols(), 2);
        let gram = basis.adjoint() * &basis;
        assert!(max_abs(&(gram - identity(2))) < 1e-12);
    }

    #[test]
    fn identity_constraint_kills_everything() {
        let basis = solve_linear_space(&[identity(2)]).unwrap();
        assert_eq!(basis.ncols(), 0);
    }

    #[test]
    fn projector_constraint_leaves_second_axis() {
        let p = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![c(1.0), c(0.0)]));
        let basis = solve_linear_space(&[p]).unwrap();
        assert_eq!(basis.ncols(), 1);
        assert!(basis[(0, 0)].norm() < 1e-12);
        assert!((basis[(1, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let err = solve_linear_space(&[identity(2), identity(3)]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn tall_systems_reduce_correctly() {
        // rows span only the first coordinate
        let mut a = ComplexMatrix::zeros(7, 3);
        for r in 0..7 {
            a[(r, 0)] = c(r as f64 + 1.0);
        }
        let basis = nullspace(&a);
        assert_eq!(basis.ncols(), 2);
        assert!(max_abs(&(&a * &basis)) < 1e-10);
    }

    #[test]
    fn clusters_split_on_gaps() {
        let r = cluster_sorted(&[0.0, 1e-12, 1.0, 1.0, 3.0], 1e-6);
        assert_eq!(r, vec![0..2, 2..4, 4..5]);
    }
}
