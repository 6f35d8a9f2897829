//! Modules over an [`Algebra`] given by action matrices.

mod decompose;

use std::fmt;
use std::sync::Arc;

pub use decompose::{decompose, is_isomorphic, Decomposition, Summand};

use crate::algebra::{
    combine, path_basis, primitive_orthogonal_idempotents, radical, Algebra, AlgebraAut, PathElem, Quiver,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::{Mat, Subspace};

#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    /// One matrix per basis element of the algebra.
    action: Arc<Vec<Mat>>,
    /// Action of the algebra's generators.
    gens: Arc<Vec<Mat>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over {:?})", self.dim, self.algebra)
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}

impl Module {
    /// Builds and validates the module axioms on basis pairs.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Mat>) -> Result<Module> {
        let d = algebra.dim();
        if action.len() != d {
            return Err(Error::InvalidModule(format!(
                "{} matrices for an algebra of dimension {d}",
                action.len()
            )));
        }
        let m = action.first().map_or(0, |a| a.rows());
        if action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::InvalidModule(
                "action matrices must be square of equal size".into(),
            ));
        }
        let module = Module::from_parts(algebra, m, action);
        module.check_axioms()?;
        Ok(module)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Module {
        let f = algebra.field().clone();
        let gens = algebra
            .generators()
            .iter()
            .map(|g| {
                if dim == 0 {
                    Mat::zeros(&f, 0, 0)
                } else {
                    combine(&f, &action, g)
                }
            })
            .collect();
        let action = if dim == 0 {
            vec![Mat::zeros(&f, 0, 0); algebra.dim()]
        } else {
            action
        };
        Module {
            algebra,
            dim,
            action: Arc::new(action),
            gens: Arc::new(gens),
        }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        Module::from_parts(algebra, 0, Vec::new())
    }

    /// The left regular module.
    pub fn regular(algebra: Arc<Algebra>) -> Module {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_matrix(&algebra.basis_vector(i)))
            .collect();
        let d = algebra.dim();
        Module::from_parts(algebra, d, action)
    }

    pub fn check_axioms(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        let d = a.dim();
        if !self.act(a.unit()).is_identity() {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = &self.action[i] * &self.action[j];
                let prod = &a.consts()[(i * d + j) * d..(i * d + j + 1) * d];
                if lhs != combine(f, &self.action, prod) {
                    return Err(Error::InvalidModule(format!("action fails on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    pub fn generator_action(&self) -> &[Mat] {
        &self.gens
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    /// Matrix by which an algebra element acts.
    pub fn act(&self, x: &[Scalar]) -> Mat {
        if self.dim == 0 {
            return Mat::zeros(self.field(), 0, 0);
        }
        combine(self.field(), &self.action, x)
    }

    pub fn is_intertwiner(&self, target: &Module, f: &Mat) -> bool {
        f.rows() == target.dim
            && f.cols() == self.dim
            && self.gens.iter().zip(target.gens.iter()).all(|(a, b)| f * a == b * f)
    }

    /// The module with action transported through `g`: `a·m = ρ(g⁻¹(a)) m`.
    pub fn twist(&self, g: &AlgebraAut) -> Module {
        let inv = g.inverse_matrix();
        let action = (0..self.algebra.dim()).map(|i| self.act(&inv.col(i))).collect();
        Module::from_parts(self.algebra.clone(), self.dim, action)
    }

    /// Conjugate by an invertible `p`: the module on which `p` is an isomorphism from `self`.
    pub fn base_change(&self, p: &Mat) -> Result<Module> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::InvalidModule("base change matrix is singular".into()))?;
        if p.rows() != self.dim {
            return Err(Error::ShapeMismatch("base change size".into()));
        }
        let action = self.action.iter().map(|a| &(p * a) * &pinv).collect();
        Ok(Module::from_parts(self.algebra.clone(), self.dim, action))
    }

    /// Submodule spanned by the columns of `span` (which must be invariant).
    /// Returns the module and the inclusion in the echelon basis.
    pub fn submodule(&self, vectors: &[Vec<Scalar>]) -> Result<(Module, Mat)> {
        let f = self.field();
        let space = Subspace::span(f, self.dim, vectors);
        let incl = Mat::from_cols(f, self.dim, space.basis());
        let k = space.dim();
        let mut action = Vec::with_capacity(self.algebra.dim());
        for a in self.action.iter() {
            let mut cols = Vec::with_capacity(k);
            for v in space.basis() {
                let w = a.mul_vec(v);
                cols.push(
                    space
                        .coords(&w)
                        .ok_or_else(|| Error::InvalidModule("subspace is not invariant".into()))?,
                );
            }
            action.push(Mat::from_cols(f, k, &cols));
        }
        Ok((Module::from_parts(self.algebra.clone(), k, action), incl))
    }

    /// Quotient by an invariant subspace; returns the module and the projection.
    pub fn quotient(&self, vectors: &[Vec<Scalar>]) -> Result<(Module, Mat)> {
        let f = self.field();
        let space = Subspace::span(f, self.dim, vectors);
        let comp = space.complement_indices();
        let k = comp.len();
        let reduce = |v: &[Scalar]| -> Vec<Scalar> {
            let mut r = v.to_vec();
            for (row, &p) in space.basis().iter().zip(space.pivots()) {
                let c = r[p];
                if !c.is_zero() {
                    crate::mat::axpy(f, &mut r, f.neg(c), row);
                }
            }
            comp.iter().map(|&i| r[i]).collect()
        };
        for a in self.action.iter() {
            for v in space.basis() {
                if !space.contains(&a.mul_vec(v)) {
                    return Err(Error::InvalidModule("subspace is not invariant".into()));
                }
            }
        }
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> = comp.iter().map(|&i| reduce(&a.col(i))).collect();
                Mat::from_cols(f, k, &cols)
            })
            .collect();
        let proj_cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|i| reduce(&crate::algebra::unit_vec(f, self.dim, i)))
            .collect();
        Ok((
            Module::from_parts(self.algebra.clone(), k, action),
            Mat::from_cols(f, k, &proj_cols),
        ))
    }

    /// Restriction along an algebra map given by `embed` (`dim A x dim B`, column j = image of b_j).
    pub fn restrict(&self, sub: Arc<Algebra>, embed: &Mat) -> Result<Module> {
        if embed.rows() != self.algebra.dim() || embed.cols() != sub.dim() {
            return Err(Error::ShapeMismatch("restriction map".into()));
        }
        let action = (0..sub.dim()).map(|j| self.act(&embed.col(j))).collect();
        Module::new(sub, action)
    }

    /// The smallest submodule containing `v`.
    pub fn spin(&self, v: &[Scalar]) -> Subspace {
        let f = self.field();
        let mut space = Subspace::span(f, self.dim, &[v.to_vec()]);
        let mut frontier = space.basis().to_vec();
        while let Some(w) = frontier.pop() {
            for g in self.gens.iter() {
                let u = g.mul_vec(&w);
                if !space.contains(&u) {
                    space = space.sum(&Subspace::span(f, self.dim, std::slice::from_ref(&u)));
                    frontier.push(u);
                }
            }
        }
        space
    }
}

/// Block-diagonal direct sum with inclusions and projections, in argument order.
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<Mat>,
    pub projections: Vec<Mat>,
}

pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> Result<DirectSum> {
    let f = algebra.field();
    if parts.iter().any(|m| *m.algebra != **algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let total: usize = parts.iter().map(|m| m.dim).sum();
    let action = (0..algebra.dim())
        .map(|i| {
            let blocks: Vec<&Mat> = parts.iter().map(|m| &m.action[i]).collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in parts {
        let mut inc = Mat::zeros(f, total, m.dim);
        let mut proj = Mat::zeros(f, m.dim, total);
        for i in 0..m.dim {
            inc.set(off + i, i, f.one());
            proj.set(i, off + i, f.one());
        }
        inclusions.push(inc);
        projections.push(proj);
        off += m.dim;
    }
    Ok(DirectSum {
        module: Module::from_parts(algebra.clone(), total, action),
        inclusions,
        projections,
    })
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    /// Reduced echelon basis (in row-major flattening) of the intertwiners.
    pub basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Intertwiners `M -> N`: all `F` with `F ρ_M(g) = ρ_N(g) F` on generators.
pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let vars = dm * dn;
    if vars == 0 {
        return Ok(HomSpace {
            source: m.clone(),
            target: n.clone(),
            basis: Vec::new(),
        });
    }
    let gens = m.gens.len();
    let mut sys = Mat::zeros(f, gens * vars, vars);
    for (g, (a, b)) in m.gens.iter().zip(n.gens.iter()).enumerate() {
        for i in 0..dn {
            for l in 0..dm {
                let row = g * vars + i * dm + l;
                for j in 0..dm {
                    let c = a.get(j, l);
                    if !c.is_zero() {
                        let idx = i * dm + j;
                        sys.set(row, idx, f.add(sys.get(row, idx), c));
                    }
                }
                for k in 0..dn {
                    let c = b.get(i, k);
                    if !c.is_zero() {
                        let idx = k * dm + l;
                        sys.set(row, idx, f.sub(sys.get(row, idx), c));
                    }
                }
            }
        }
    }
    let space = Subspace::span(f, vars, &sys.null_space());
    let basis = space
        .basis()
        .iter()
        .map(|v| Mat::from_vec(f, dn, dm, v.clone()).unwrap())
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

/// `End(M)` as an algebra on the hom-space basis, with product = composition,
/// together with the basis matrices.
pub fn end_algebra(m: &Module) -> Result<(Algebra, Vec<Mat>)> {
    let f = m.field();
    let hom = hom_space(m, m)?;
    let basis = hom.basis;
    let e = basis.len();
    let flat: Vec<Vec<Scalar>> = basis.iter().map(|b| b.data().to_vec()).collect();
    let space = Subspace::span(f, m.dim * m.dim, &flat);
    let mut consts = Vec::with_capacity(e * e * e);
    for a in &basis {
        for b in &basis {
            let prod = a * b;
            consts.extend(
                space
                    .coords(prod.data())
                    .ok_or_else(|| Error::Certificate("endomorphisms not closed under composition".into()))?,
            );
        }
    }
    let unit = if m.dim == 0 {
        Vec::new()
    } else {
        space
            .coords(Mat::identity(f, m.dim).data())
            .ok_or_else(|| Error::Certificate("identity is not an endomorphism".into()))?
    };
    let mut alg = Algebra::from_parts(f, e, consts, unit);
    if e > 0 {
        alg = alg.with_faithful_rep(basis.clone());
    }
    Ok((alg, basis))
}

/// Projective indecomposables `A e` for a complete set of primitive idempotents,
/// one per isomorphism class, in idempotent order.
pub fn projective_indecomposables(algebra: &Arc<Algebra>) -> Result<Vec<Module>> {
    let reg = Module::regular(algebra.clone());
    let ids = primitive_orthogonal_idempotents(algebra)?;
    let mut out: Vec<Module> = Vec::new();
    for e in &ids.elements {
        let vecs: Vec<Vec<Scalar>> = (0..algebra.dim())
            .map(|i| algebra.mul(&algebra.basis_vector(i), e))
            .collect();
        let (p, _) = reg.submodule(&vecs)?;
        let mut seen = false;
        for q in &out {
            if is_isomorphic(q, &p)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(p);
        }
    }
    Ok(out)
}

/// Simple modules `A e / J e`, one per isomorphism class, in idempotent order.
pub fn simple_modules(algebra: &Arc<Algebra>) -> Result<Vec<Module>> {
    let reg = Module::regular(algebra.clone());
    let j = radical(algebra)?;
    let ids = primitive_orthogonal_idempotents(algebra)?;
    let mut out: Vec<Module> = Vec::new();
    for e in &ids.elements {
        let ae: Vec<Vec<Scalar>> = (0..algebra.dim())
            .map(|i| algebra.mul(&algebra.basis_vector(i), e))
            .collect();
        // the submodule basis is the echelon basis of `sub`
        let (p, _) = reg.submodule(&ae)?;
        let je: Vec<Vec<Scalar>> = j.basis().iter().map(|x| algebra.mul(x, e)).collect();
        // coordinates of J e inside A e
        let sub = Subspace::span(algebra.field(), algebra.dim(), &ae);
        let je_coords: Vec<Vec<Scalar>> = je.iter().map(|v| sub.coords(v).expect("J e lies in A e")).collect();
        let (s, _) = p.quotient(&je_coords)?;
        let mut seen = false;
        for q in &out {
            if is_isomorphic(q, &s)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(s);
        }
    }
    Ok(out)
}

/// Whether `M` is simple: the radical acts as zero and `M` is indecomposable.
pub fn is_simple(m: &Module) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    // J(A) must act as zero, and M must be indecomposable; a semisimple
    // indecomposable module is simple.
    let j = radical(m.algebra())?;
    if j.basis().iter().any(|x| !m.act(x).is_zero()) {
        return Ok(false);
    }
    let d = decompose(m)?;
    if d.summands.len() != 1 {
        return Ok(false);
    }
    // spin-up from a basis vector as a cross-check
    let e0 = crate::algebra::unit_vec(m.field(), m.dim, 0);
    Ok(m.spin(&e0).dim() == m.dim)
}

/// Left module of a path algebra from a representation of the opposite quiver:
/// arrow `a: s -> t` acts by a `dims[s] x dims[t]` matrix `V_t -> V_s`.
pub fn quiver_module(
    algebra: &Arc<Algebra>,
    q: &Quiver,
    relations: &[Vec<usize>],
    dims: &[usize],
    arrows: &[Mat],
) -> Result<Module> {
    let f = algebra.field();
    let basis = path_basis(q, relations)?;
    if basis.len() != algebra.dim() {
        return Err(Error::AlgebraMismatch);
    }
    if dims.len() != q.vertices || arrows.len() != q.arrows.len() {
        return Err(Error::InvalidModule(
            "one dimension per vertex and one matrix per arrow".into(),
        ));
    }
    let mut offset = vec![0; dims.len() + 1];
    for (v, &d) in dims.iter().enumerate() {
        offset[v + 1] = offset[v] + d;
    }
    let n = offset[dims.len()];
    let mut embedded = Vec::with_capacity(arrows.len());
    for (x, m) in arrows.iter().enumerate() {
        let (s, t) = q.arrows[x];
        if m.rows() != dims[s] || m.cols() != dims[t] {
            return Err(Error::InvalidModule(format!(
                "arrow {x} needs a {}x{} matrix, got {}x{}",
                dims[s],
                dims[t],
                m.rows(),
                m.cols()
            )));
        }
        let mut big = Mat::zeros(f, n, n);
        big.set_block(offset[s], offset[t], m);
        embedded.push(big);
    }
    let action = basis
        .iter()
        .map(|p| match p {
            PathElem::Trivial(v) => {
                let mut e = Mat::zeros(f, n, n);
                for i in offset[*v]..offset[v + 1] {
                    e.set(i, i, f.one());
                }
                e
            }
            PathElem::Path(xs) => xs[1..]
                .iter()
                .fold(embedded[xs[0]].clone(), |acc, &x| &acc * &embedded[x]),
        })
        .collect();
    Module::new(algebra.clone(), action)
}
