//! Finite-dimensional associative unital algebras given by structure constants.

mod builders;
mod idempotents;
mod radical;

use std::fmt;
use std::sync::Arc;

pub use builders::{
    field_extension_algebra, frobenius_aut, group_algebra, group_algebra_from_table, matrix_algebra, path_algebra,
    path_algebra_aut, product_algebra, skew_group_algebra, twisted_group_ring, Quiver,
};
pub(crate) use builders::{path_basis, PathElem};
pub use idempotents::{is_local, lift_idempotent, primitive_orthogonal_idempotents, IdempotentSet};
pub use radical::radical;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::{axpy, Mat, Subspace};
use crate::poly::Poly;

#[derive(Clone)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// `b_i b_j = sum_k consts[(i * dim + j) * dim + k] b_k`
    consts: Vec<Scalar>,
    unit: Vec<Scalar>,
    labels: Vec<String>,
    /// Elements generating the algebra (with 1); used to shorten linear systems.
    generators: Vec<Vec<Scalar>>,
    /// A faithful representation, one matrix per basis element, if known to be cheaper than the regular one.
    faithful: Option<Arc<Vec<Mat>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {:?})", self.dim, self.field)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.consts == other.consts && self.unit == other.unit
    }
}

impl Algebra {
    /// Builds and validates associativity and the unit axioms on the basis.
    pub fn new(field: &Field, dim: usize, consts: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Algebra> {
        if consts.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::InvalidAlgebra("structure constant shape".into()));
        }
        let a = Algebra::from_parts(field, dim, consts, unit);
        a.check_axioms()?;
        Ok(a)
    }

    /// Builds without validation; callers guarantee the axioms.
    pub(crate) fn from_parts(field: &Field, dim: usize, consts: Vec<Scalar>, unit: Vec<Scalar>) -> Algebra {
        let generators = (0..dim).map(|i| unit_vec(field, dim, i)).collect();
        Algebra {
            field: field.clone(),
            dim,
            consts,
            unit,
            labels: (0..dim).map(|i| format!("b{i}")).collect(),
            generators,
            faithful: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Algebra {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn with_generators(mut self, generators: Vec<Vec<Scalar>>) -> Algebra {
        self.generators = generators;
        self
    }

    pub(crate) fn with_faithful_rep(mut self, rep: Vec<Mat>) -> Algebra {
        self.faithful = Some(Arc::new(rep));
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub(crate) fn faithful_rep(&self) -> Option<&[Mat]> {
        self.faithful.as_deref().map(|v| v.as_slice())
    }

    pub fn consts(&self) -> &[Scalar] {
        &self.consts
    }

    #[inline]
    pub fn structure_const(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.consts[(i * self.dim + j) * self.dim + k]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vec(&self.field, self.dim, i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let f = &self.field;
        let mut out = vec![f.zero(); d];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let base = (i * d + j) * d;
                axpy(f, &mut out, f.mul(xi, yj), &self.consts[base..base + d]);
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        crate::mat::add_vec(&self.field, x, y)
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        crate::mat::sub_vec(&self.field, x, y)
    }

    pub fn scale(&self, c: Scalar, x: &[Scalar]) -> Vec<Scalar> {
        crate::mat::scale_vec(&self.field, c, x)
    }

    pub fn pow(&self, x: &[Scalar], mut e: u64) -> Vec<Scalar> {
        let mut base = x.to_vec();
        let mut r = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// Matrix of `y -> x y`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.mul(x, &self.basis_vector(i))).collect();
        Mat::from_cols(&self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.mul(&self.basis_vector(i), x)).collect();
        Mat::from_cols(&self.field, self.dim, &cols)
    }

    pub fn eval_poly(&self, p: &Poly, x: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut acc = self.zero();
        for &c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            axpy(f, &mut acc, c, &self.unit);
        }
        acc
    }

    /// Minimal polynomial of an element (via its left multiplication, which is faithful).
    pub fn min_poly(&self, x: &[Scalar]) -> Poly {
        self.left_matrix(x).min_poly().expect("square")
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.structure_const(i, j, k) == self.structure_const(j, i, k))))
    }

    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::InvalidAlgebra(format!("unit fails on basis element {i}")));
            }
        }
        // (b_i b_j) b_k = b_i (b_j b_k)
        let right: Vec<Mat> = (0..d).map(|k| self.right_matrix(&self.basis_vector(k))).collect();
        for i in 0..d {
            let left_i = self.left_matrix(&self.basis_vector(i));
            for j in 0..d {
                let bij = &self.consts[(i * d + j) * d..(i * d + j + 1) * d];
                for (k, rk) in right.iter().enumerate() {
                    let lhs = rk.mul_vec(bij);
                    let bjk = &self.consts[(j * d + k) * d..(j * d + k + 1) * d];
                    if lhs != left_i.mul_vec(bjk) {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The center as a subspace.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        let f = &self.field;
        if d == 0 {
            return Subspace::zero(f, 0);
        }
        let mut eqs = Mat::zeros(f, 0, d);
        for g in &self.generators {
            let comm = &self.right_matrix(g) - &self.left_matrix(g);
            eqs = eqs.vstack(&comm);
        }
        Subspace::span(f, d, &eqs.null_space())
    }

    /// The subalgebra on a subspace closed under multiplication, with unit `unit`
    /// (which need not be the unit of `self`, e.g. for corners). Returns the
    /// algebra and the `dim x k` embedding matrix whose columns are the echelon basis.
    pub fn subalgebra(&self, space: &Subspace, unit: &[Scalar]) -> Result<(Algebra, Mat)> {
        let k = space.dim();
        let f = &self.field;
        let basis = space.basis();
        let mut consts = Vec::with_capacity(k * k * k);
        for a in basis {
            for b in basis {
                let c = space
                    .coords(&self.mul(a, b))
                    .ok_or_else(|| Error::InvalidAlgebra("subspace not closed under products".into()))?;
                consts.extend(c);
            }
        }
        let u = space
            .coords(unit)
            .ok_or_else(|| Error::InvalidAlgebra("unit outside subspace".into()))?;
        let mut sub = Algebra::from_parts(f, k, consts, u);
        if let Some(rep) = self.faithful_rep() {
            // restrictions of a faithful representation stay faithful
            let mats = basis.iter().map(|v| combine(f, rep, v)).collect();
            sub = sub.with_faithful_rep(mats);
        }
        Ok((sub, Mat::from_cols(f, self.dim, basis)))
    }

    /// The corner `e A e` and its embedding.
    pub fn corner(&self, e: &[Scalar]) -> Result<(Algebra, Mat)> {
        let vecs: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|i| self.mul(&self.mul(e, &self.basis_vector(i)), e))
            .collect();
        let space = Subspace::span(&self.field, self.dim, &vecs);
        self.subalgebra(&space, e)
    }

    /// Quotient by a two-sided ideal. Returns the quotient, the projection
    /// (`k x dim`) and a linear section (`dim x k`).
    pub fn quotient(&self, ideal: &Subspace) -> (Algebra, Mat, Mat) {
        let f = &self.field;
        let comp = ideal.complement_indices();
        let k = comp.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let mut r = v.to_vec();
            for (row, &p) in ideal.basis().iter().zip(ideal.pivots()) {
                let c = r[p];
                if !c.is_zero() {
                    axpy(f, &mut r, f.neg(c), row);
                }
            }
            comp.iter().map(|&i| r[i]).collect()
        };
        let mut consts = Vec::with_capacity(k * k * k);
        for &i in &comp {
            for &j in &comp {
                consts.extend(project(&self.mul(&self.basis_vector(i), &self.basis_vector(j))));
            }
        }
        let unit = project(&self.unit);
        let gens = self.generators.iter().map(|g| project(g)).collect();
        let q = Algebra::from_parts(f, k, consts, unit)
            .with_generators(gens)
            .with_labels(comp.iter().map(|&i| self.labels[i].clone()).collect());
        let proj_cols: Vec<Vec<Scalar>> = (0..self.dim).map(|i| project(&self.basis_vector(i))).collect();
        let proj = Mat::from_cols(f, k, &proj_cols);
        let section = Mat::from_fn(f, self.dim, k, |r, c| if comp[c] == r { f.one() } else { f.zero() });
        (q, proj, section)
    }

    /// The product of two subspaces, `span{u v}`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mats: Vec<Mat> = b.basis().iter().map(|v| self.right_matrix(v)).collect();
        let mut vecs = Vec::new();
        for u in a.basis() {
            for m in &mats {
                vecs.push(m.mul_vec(u));
            }
        }
        Subspace::span(&self.field, self.dim, &vecs)
    }
}

pub(crate) fn unit_vec(field: &Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// `sum_i v_i mats[i]`
pub(crate) fn combine(field: &Field, mats: &[Mat], v: &[Scalar]) -> Mat {
    let (r, c) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
    let mut acc = Mat::zeros(field, r, c);
    for (m, &x) in mats.iter().zip(v) {
        if !x.is_zero() {
            acc.add_scaled(x, m);
        }
    }
    acc
}

/// An automorphism given by its matrix on the basis (column `i` = image of `b_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraAut {
    matrix: Mat,
    inverse: Mat,
}

impl AlgebraAut {
    pub fn new(algebra: &Algebra, matrix: Mat) -> Result<AlgebraAut> {
        let d = algebra.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::InvalidAutomorphism(format!("expected a {d}x{d} matrix")));
        }
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::InvalidAutomorphism("matrix is singular".into()))?;
        if matrix.mul_vec(algebra.unit()) != algebra.unit() {
            return Err(Error::InvalidAutomorphism("unit is not fixed".into()));
        }
        let images: Vec<Vec<Scalar>> = (0..d).map(|i| matrix.col(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let prod = &algebra.consts()[(i * d + j) * d..(i * d + j + 1) * d];
                if matrix.mul_vec(prod) != algebra.mul(&images[i], &images[j]) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(AlgebraAut { matrix, inverse })
    }

    pub fn identity(algebra: &Algebra) -> AlgebraAut {
        let m = Mat::identity(algebra.field(), algebra.dim());
        AlgebraAut {
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inverse
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AlgebraAut) -> AlgebraAut {
        AlgebraAut {
            matrix: &self.matrix * &other.matrix,
            inverse: &other.inverse * &self.inverse,
        }
    }

    pub fn inverse(&self) -> AlgebraAut {
        AlgebraAut {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}
