//! Finite-dimensional *-algebras given by structure constants.

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::linalg::{c, hermitian_eigen, nullspace, ComplexMatrix, ComplexVector, C64};
use crate::error::{Error, Result};

/// Entries of modulus below this are dropped from the sparse product table.
const DROP: f64 = 1e-14;

pub type SparseVec = Vec<(u32, C64)>;

/// A *-algebra on the basis `0..dim`: `products[a*dim+b]` holds the coordinates of `ab`,
/// column `a` of `involution` holds the coordinates of `a*` (the involution is antilinear).
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    dim: usize,
    products: Vec<SparseVec>,
    involution: ComplexMatrix,
}

pub fn sparsify(v: &ComplexVector) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > DROP)
        .map(|(k, z)| (k as u32, *z))
        .collect()
}

fn max_abs_vec(v: &ComplexVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl StarAlgebra {
    pub fn new(dim: usize, products: Vec<SparseVec>, involution: ComplexMatrix) -> Result<Self> {
        if products.len() != dim * dim {
            return Err(Error::Shape(format!("expected {} products, got {}", dim * dim, products.len())));
        }
        if involution.nrows() != dim || involution.ncols() != dim {
            return Err(Error::Shape(format!(
                "involution is {}x{}, algebra has dimension {dim}",
                involution.nrows(),
                involution.ncols()
            )));
        }
        if products.iter().flatten().any(|(k, _)| *k as usize >= dim) {
            return Err(Error::Shape("product coordinate out of range".into()));
        }
        Ok(Self { dim, products, involution })
    }

    /// Builds the table from a product rule on basis pairs, in parallel with a fixed merge order.
    pub fn from_fn<F>(dim: usize, involution: ComplexMatrix, rule: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> ComplexVector + Sync,
    {
        let products: Vec<SparseVec> = (0..dim * dim)
            .into_par_iter()
            .map(|ab| sparsify(&rule(ab / dim, ab % dim)))
            .collect();
        Self::new(dim, products, involution)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.products[a * self.dim + b]
    }

    pub fn involution(&self) -> &ComplexMatrix {
        &self.involution
    }

    pub fn basis_vector(&self, a: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.dim);
        v[a] = c(1.0);
        v
    }

    pub fn mul(&self, x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
        let mut out = ComplexVector::zeros(self.dim);
        for (a, xa) in x.iter().enumerate().filter(|(_, z)| z.norm() > 0.0) {
            for (b, yb) in y.iter().enumerate().filter(|(_, z)| z.norm() > 0.0) {
                let w = xa * yb;
                for (k, v) in self.basis_product(a, b) {
                    out[*k as usize] += w * v;
                }
            }
        }
        out
    }

    pub fn star(&self, x: &ComplexVector) -> ComplexVector {
        &self.involution * x.map(|z| z.conj())
    }

    /// Matrix of `y -> x y`.
    pub fn left_matrix(&self, x: &ComplexVector) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (a, xa) in x.iter().enumerate().filter(|(_, z)| z.norm() > 0.0) {
            for b in 0..self.dim {
                for (k, v) in self.basis_product(a, b) {
                    m[(*k as usize, b)] += xa * v;
                }
            }
        }
        m
    }

    fn sparse_times_basis(&self, x: &SparseVec, c_: usize) -> ComplexVector {
        let mut out = ComplexVector::zeros(self.dim);
        for (d, xd) in x {
            for (k, v) in self.basis_product(*d as usize, c_) {
                out[*k as usize] += xd * v;
            }
        }
        out
    }

    fn basis_times_sparse(&self, a: usize, x: &SparseVec) -> ComplexVector {
        let mut out = ComplexVector::zeros(self.dim);
        for (d, xd) in x {
            for (k, v) in self.basis_product(a, *d as usize) {
                out[*k as usize] += xd * v;
            }
        }
        out
    }

    /// max over basis triples of |(ab)c - a(bc)|.
    pub fn associativity_residual(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .into_par_iter()
            .map(|a| {
                let mut worst = 0.0f64;
                for b in 0..n {
                    let ab = self.basis_product(a, b);
                    for c_ in 0..n {
                        let bc = self.basis_product(b, c_);
                        if ab.is_empty() && bc.is_empty() {
                            continue;
                        }
                        let lhs = self.sparse_times_basis(ab, c_);
                        let rhs = self.basis_times_sparse(a, bc);
                        worst = worst.max(max_abs_vec(&(lhs - rhs)));
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// max over basis pairs of |(ab)* - b*a*| together with max |(a*)* - a|.
    pub fn involution_residual(&self) -> f64 {
        let n = self.dim;
        let stars: Vec<ComplexVector> = (0..n).map(|a| self.involution.column(a).into_owned()).collect();
        let twice = (0..n)
            .map(|a| max_abs_vec(&(self.star(&stars[a]) - self.basis_vector(a))))
            .fold(0.0, f64::max);
        let anti = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut worst = 0.0f64;
                for b in 0..n {
                    let ab = self.basis_product(a, b);
                    let mut abv = ComplexVector::zeros(n);
                    for (k, v) in ab {
                        abv[*k as usize] = *v;
                    }
                    let lhs = self.star(&abv);
                    let rhs = self.mul(&stars[b], &stars[a]);
                    worst = worst.max(max_abs_vec(&(lhs - rhs)));
                }
                worst
            })
            .reduce(|| 0.0, f64::max);
        twice.max(anti)
    }

    /// max over basis pairs of |ab - ba|.
    pub fn commutator_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let mut d = ComplexVector::zeros(n);
                for (k, v) in self.basis_product(a, b) {
                    d[*k as usize] += v;
                }
                for (k, v) in self.basis_product(b, a) {
                    d[*k as usize] -= v;
                }
                worst = worst.max(max_abs_vec(&d));
            }
        }
        worst
    }

    /// `t_d = Tr(L_d)`, the trace of the left regular representation.
    pub fn regular_trace(&self) -> ComplexVector {
        let n = self.dim;
        let mut t = ComplexVector::zeros(n);
        for d in 0..n {
            for b in 0..n {
                for (k, v) in self.basis_product(d, b) {
                    if *k as usize == b {
                        t[d] += v;
                    }
                }
            }
        }
        t
    }

    /// `G_ab = tau(a* b)` for a linear functional given by its values on the basis.
    pub fn gram(&self, trace: &ComplexVector) -> ComplexMatrix {
        let n = self.dim;
        let mut g = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            let astar = self.involution.column(a);
            for b in 0..n {
                let mut s = C64::new(0.0, 0.0);
                for (d, w) in astar.iter().enumerate().filter(|(_, z)| z.norm() > 0.0) {
                    for (k, v) in self.basis_product(d, b) {
                        s += w * v * trace[*k as usize];
                    }
                }
                g[(a, b)] = s;
            }
        }
        g
    }

    /// Orthonormal basis (columns) of the centre, in the Euclidean coordinate metric.
    pub fn center_basis(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut cons = ComplexMatrix::zeros(n * n, n);
        for a in 0..n {
            for b in 0..n {
                // column b: coefficient of z_b in (z a - a z)
                for (k, v) in self.basis_product(b, a) {
                    cons[(a * n + *k as usize, b)] += v;
                }
                for (k, v) in self.basis_product(a, b) {
                    cons[(a * n + *k as usize, b)] -= v;
                }
            }
        }
        nullspace(&cons)
    }

    /// Two-sided unit, if one exists (least squares, then verified).
    pub fn unit(&self) -> Option<ComplexVector> {
        let n = self.dim;
        if n == 0 {
            return None;
        }
        let mut sys = ComplexMatrix::zeros(2 * n * n, n);
        let mut rhs = ComplexVector::zeros(2 * n * n);
        for a in 0..n {
            rhs[a * n + a] = c(1.0);
            rhs[n * n + a * n + a] = c(1.0);
            for u in 0..n {
                for (k, v) in self.basis_product(u, a) {
                    sys[(a * n + *k as usize, u)] += v;
                }
                for (k, v) in self.basis_product(a, u) {
                    sys[(n * n + a * n + *k as usize, u)] += v;
                }
            }
        }
        let svd = sys.clone().svd(true, true);
        let u = svd.solve(&rhs, 1e-10).ok()?;
        let res = &sys * &u - rhs;
        if max_abs_vec(&res) < 1e-8 {
            Some(u)
        } else {
            None
        }
    }

    /// Restriction of the product to a subspace spanned by columns of `basis`, which must be a
    /// *-subalgebra; coordinates are recovered through the pseudo-inverse.
    pub fn restrict(&self, basis: &ComplexMatrix) -> Result<StarAlgebra> {
        let m = basis.ncols();
        let pinv = basis
            .clone()
            .pseudo_inverse(1e-12)
            .map_err(|e| Error::Shape(e.to_string()))?;
        let cols: Vec<ComplexVector> = (0..m).map(|k| basis.column(k).into_owned()).collect();
        let mut inv = ComplexMatrix::zeros(m, m);
        for k in 0..m {
            let s = self.star(&cols[k]);
            inv.set_column(k, &(&pinv * s));
        }
        StarAlgebra::from_fn(m, inv, |a, b| &pinv * self.mul(&cols[a], &cols[b]))
    }

    /// Subalgebra spanned by a subset of basis vectors; fails if the span is not closed.
    pub fn coordinate_subalgebra(&self, indices: &[usize]) -> Result<StarAlgebra> {
        let m = indices.len();
        let mut pos = vec![u32::MAX; self.dim];
        for (new, &old) in indices.iter().enumerate() {
            pos[old] = new as u32;
        }
        let relabel = |v: &SparseVec| -> Result<SparseVec> {
            v.iter()
                .map(|&(k, z)| match pos[k as usize] {
                    u32::MAX if z.norm() > 1e-9 => {
                        Err(Error::Validation(format!("basis span not closed: coordinate {k} is reached")))
                    }
                    u32::MAX => Ok(None),
                    p => Ok(Some((p, z))),
                })
                .filter_map(|r| r.transpose())
                .collect()
        };
        let mut products = Vec::with_capacity(m * m);
        for &a in indices {
            for &b in indices {
                products.push(relabel(self.basis_product(a, b))?);
            }
        }
        let mut inv = ComplexMatrix::zeros(m, m);
        for (new, &old) in indices.iter().enumerate() {
            for (p, &q) in indices.iter().enumerate() {
                inv[(p, new)] = self.involution[(q, old)];
            }
        }
        StarAlgebra::new(m, products, inv)
    }
}

/// Reports whether `G_ab = tau(a* b)` is positive definite, and its minimal eigenvalue.
pub fn gram_positivity(trace: &ComplexVector, algebra: &StarAlgebra) -> Result<(bool, f64)> {
    if trace.len() != algebra.dim() {
        return Err(Error::Shape(format!(
            "trace vector has length {}, algebra has dimension {}",
            trace.len(),
            algebra.dim()
        )));
    }
    let g = algebra.gram(trace);
    let (values, _) = hermitian_eigen(&g);
    let min = values.first().cloned().unwrap_or(f64::INFINITY);
    Ok((min > 0.0 && min > 1e-10 * values.last().cloned().unwrap_or(1.0).abs(), min))
}

/// Full multiplication table of a finite group algebra, `mul[g][h] = gh`.
pub fn group_algebra(mul: &[Vec<usize>]) -> Result<StarAlgebra> {
    let n = mul.len();
    let e = (0..n)
        .find(|&g| (0..n).all(|h| mul[g][h] == h))
        .ok_or_else(|| Error::GroupLaw("no identity element".into()))?;
    let mut inv = DMatrix::zeros(n, n);
    for g in 0..n {
        let gi = (0..n).find(|&h| mul[g][h] == e).ok_or_else(|| Error::GroupLaw(format!("{g} has no inverse")))?;
        inv[(gi, g)] = c(1.0);
    }
    let products = (0..n * n).map(|ab| vec![(mul[ab / n][ab % n] as u32, c(1.0))]).collect();
    StarAlgebra::new(n, products, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc() -> StarAlgebra {
        // C + C with idempotent basis
        let products = vec![vec![(0, c(1.0))], vec![], vec![], vec![(1, c(1.0))]];
        StarAlgebra::new(2, products, ComplexMatrix::identity(2, 2)).unwrap()
    }

    #[test]
    fn idempotent_algebra_is_associative_and_commutative() {
        let a = cc();
        assert!(a.associativity_residual() < 1e-15);
        assert!(a.involution_residual() < 1e-15);
        assert!(a.commutator_residual() < 1e-15);
        let u = a.unit().unwrap();
        assert!((u[0] - c(1.0)).norm() < 1e-12 && (u[1] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn scalar_trace_is_positive() {
        let a = StarAlgebra::new(1, vec![vec![(0, c(1.0))]], ComplexMatrix::identity(1, 1)).unwrap();
        let (pos, min) = gram_positivity(&ComplexVector::from_element(1, c(1.0)), &a).unwrap();
        assert!(pos);
        assert!((min - 1.0).abs() < 1e-12);
        let (pos, _) = gram_positivity(&ComplexVector::zeros(1), &a).unwrap();
        assert!(!pos);
    }

    #[test]
    fn centre_of_s3_group_algebra_has_three_classes() {
        let mul = crate::category::group::symmetric_table(3);
        let a = group_algebra(&mul).unwrap();
        assert_eq!(a.center_basis().ncols(), 3);
        assert!(a.associativity_residual() < 1e-15);
    }
}
