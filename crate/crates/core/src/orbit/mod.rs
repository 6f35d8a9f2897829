//! Strict group actions on module categories and the orbit category `H[Γ]`
//! (the Kleisli category of `TS = ⊕_g E_g`).
//!
//! A morphism `X -> Y` of `H[Γ]` is a family `f_g: X -> twist(Y, g)`. Under a
//! strict action, twisting a morphism leaves its matrix unchanged, so all the
//! coherence isomorphisms reduce to reindexing components.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraAut};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::FiniteGroup;
use crate::mat::Mat;
use crate::rep::{direct_sum, hom_space, HomSpace, Module};

/// A finite group acting on an algebra through automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    algebra: Arc<Algebra>,
    group: FiniteGroup,
    auts: Vec<AlgebraAut>,
}

impl GroupAction {
    pub fn new(algebra: Arc<Algebra>, group: FiniteGroup, auts: Vec<AlgebraAut>) -> Result<GroupAction> {
        let a = GroupAction { algebra, group, auts };
        a.check()?;
        Ok(a)
    }

    pub fn trivial(algebra: Arc<Algebra>) -> GroupAction {
        let id = AlgebraAut::identity(&algebra);
        GroupAction {
            algebra,
            group: FiniteGroup::trivial(),
            auts: vec![id],
        }
    }

    /// Verifies `σ_1 = id` and `σ_g σ_h = σ_{gh}` exactly.
    pub fn check(&self) -> Result<()> {
        let g = &self.group;
        if self.auts.len() != g.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} automorphisms for a group of order {}",
                self.auts.len(),
                g.order()
            )));
        }
        let d = self.algebra.dim();
        for (i, s) in self.auts.iter().enumerate() {
            if s.matrix().rows() != d || s.matrix().cols() != d {
                return Err(Error::InvalidAutomorphism(format!(
                    "automorphism {i} has the wrong size"
                )));
            }
        }
        if !self.auts[0].is_identity() {
            return Err(Error::NotHomomorphism("identity element does not act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.auts[a].compose(&self.auts[b]).matrix() != self.auts[g.mul(a, b)].matrix() {
                    return Err(Error::NotHomomorphism(format!("σ_{a} σ_{b} ≠ σ_{}", g.mul(a, b))));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn aut(&self, g: usize) -> &AlgebraAut {
        &self.auts[g]
    }

    pub fn twist(&self, m: &Module, g: usize) -> Module {
        if g == 0 {
            return m.clone();
        }
        m.twist(&self.auts[g])
    }

    /// `Q` acting on `kN` by group automorphisms: `perms[q][n]` is the image of `n`.
    pub fn from_group_automorphisms(
        algebra: Arc<Algebra>,
        n: &FiniteGroup,
        q: FiniteGroup,
        perms: &[Vec<usize>],
    ) -> Result<GroupAction> {
        if algebra.dim() != n.order() {
            return Err(Error::AlgebraMismatch);
        }
        let f = algebra.field().clone();
        let mut auts = Vec::with_capacity(perms.len());
        for p in perms {
            if !n.is_automorphism(p) {
                return Err(Error::InvalidAutomorphism(format!("{p:?} is not a group automorphism")));
            }
            let m = Mat::from_fn(
                &f,
                n.order(),
                n.order(),
                |i, j| if p[j] == i { f.one() } else { f.zero() },
            );
            auts.push(AlgebraAut::new(&algebra, m)?);
        }
        GroupAction::new(algebra, q, auts)
    }

    /// `C_2` acting on `kN` (N abelian) by inversion.
    pub fn inversion(algebra: Arc<Algebra>, n: &FiniteGroup) -> Result<GroupAction> {
        if !n.is_abelian() {
            return Err(Error::InvalidAutomorphism(
                "inversion is an automorphism only for abelian groups".into(),
            ));
        }
        let id: Vec<usize> = n.elements().collect();
        let inv: Vec<usize> = n.elements().map(|x| n.inv(x)).collect();
        GroupAction::from_group_automorphisms(algebra, n, FiniteGroup::cyclic(2), &[id, inv])
    }

    /// Action on `Mat_n(k)` by conjugation `X -> P_g X P_g^{-1}`.
    pub fn conjugation(algebra: Arc<Algebra>, group: FiniteGroup, mats: &[Mat]) -> Result<GroupAction> {
        let d = algebra.dim();
        let n = (d as f64).sqrt().round() as usize;
        if n * n != d {
            return Err(Error::AlgebraMismatch);
        }
        let f = algebra.field().clone();
        let mut auts = Vec::with_capacity(mats.len());
        for p in mats {
            let pinv = p
                .inverse()
                .ok_or_else(|| Error::InvalidAutomorphism("conjugating matrix is singular".into()))?;
            if p.rows() != n {
                return Err(Error::InvalidAutomorphism(format!(
                    "conjugating matrix must be {n}x{n}"
                )));
            }
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|k| {
                    let mut e = Mat::zeros(&f, n, n);
                    e.set(k / n, k % n, f.one());
                    (&(p * &e) * &pinv).into_data()
                })
                .collect();
            auts.push(AlgebraAut::new(&algebra, Mat::from_cols(&f, d, &cols))?);
        }
        GroupAction::new(algebra, group, auts)
    }

    /// `C_n` generated by a single automorphism `s` of order dividing `n`.
    pub fn cyclic(algebra: Arc<Algebra>, n: usize, s: AlgebraAut) -> Result<GroupAction> {
        let mut auts = vec![AlgebraAut::identity(&algebra)];
        for k in 1..n {
            auts.push(s.compose(&auts[k - 1]));
        }
        GroupAction::new(algebra, FiniteGroup::cyclic(n), auts)
    }
}

/// The orbit category `H[Γ₀]` for a subgroup `Γ₀` of the acting group.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    action: Arc<GroupAction>,
    elements: Vec<usize>,
}

/// A morphism of an orbit category: sparse components `g -> f_g: X -> twist(Y, g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitMor {
    pub source: Module,
    pub target: Module,
    comps: BTreeMap<usize, Mat>,
}

impl OrbitMor {
    pub fn new(source: Module, target: Module, comps: BTreeMap<usize, Mat>) -> OrbitMor {
        let mut m = OrbitMor { source, target, comps };
        m.prune();
        m
    }

    pub fn zero(source: Module, target: Module) -> OrbitMor {
        OrbitMor::new(source, target, BTreeMap::new())
    }

    fn prune(&mut self) {
        self.comps.retain(|_, m| !m.is_zero());
    }

    pub fn components(&self) -> &BTreeMap<usize, Mat> {
        &self.comps
    }

    /// Component at `g`, zero if absent.
    pub fn component(&self, g: usize) -> Mat {
        self.comps
            .get(&g)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.source.field(), self.target.dim(), self.source.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, other: &OrbitMor) -> OrbitMor {
        let mut comps = self.comps.clone();
        for (g, m) in &other.comps {
            let e = comps
                .entry(*g)
                .or_insert_with(|| Mat::zeros(m.field(), m.rows(), m.cols()));
            *e = &*e + m;
        }
        OrbitMor::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, c: Scalar) -> OrbitMor {
        let comps = self.comps.iter().map(|(g, m)| (*g, m.scale(c))).collect();
        OrbitMor::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn sub(&self, other: &OrbitMor) -> OrbitMor {
        let f = self.source.field();
        self.add(&other.scale(f.neg(f.one())))
    }
}

/// Basis of `H[Γ₀](X, Y) = ⊕_g H(X, twist(Y, g))`, ordered by group element.
#[derive(Clone, Debug)]
pub struct OrbitHomSpace {
    pub components: Vec<(usize, HomSpace)>,
}

impl OrbitHomSpace {
    pub fn dim(&self) -> usize {
        self.components.iter().map(|(_, h)| h.dim()).sum()
    }

    pub fn basis(&self) -> Vec<OrbitMor> {
        let mut out = Vec::new();
        for (g, h) in &self.components {
            for b in &h.basis {
                out.push(OrbitMor::new(
                    h.source.clone(),
                    self.target_object().clone(),
                    BTreeMap::from([(*g, b.clone())]),
                ));
            }
        }
        out
    }

    /// The morphism with the given coordinates in [`OrbitHomSpace::basis`].
    pub fn combination(&self, coeffs: &[Scalar]) -> OrbitMor {
        let mut out = OrbitMor::zero(self.components[0].1.source.clone(), self.target_object().clone());
        for (b, &c) in self.basis().iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    fn target_object(&self) -> &Module {
        // component 0 is always present and targets Y itself
        &self.components[0].1.target
    }
}

/// The pair `(T[Γ^0] X, blocks)` materialized as a module.
pub struct Induced {
    pub module: Module,
    /// Group element indexing each block, in block order.
    pub blocks: Vec<usize>,
}

impl OrbitCategory {
    pub fn new(action: Arc<GroupAction>) -> OrbitCategory {
        let elements = action.group().elements().collect();
        OrbitCategory { action, elements }
    }

    pub fn with_subgroup(action: Arc<GroupAction>, sub: &[usize]) -> Result<OrbitCategory> {
        let elements = action.group().check_subgroup(sub)?;
        Ok(OrbitCategory { action, elements })
    }

    pub fn action(&self) -> &Arc<GroupAction> {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    /// Sorted elements of the subgroup this category is built on.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.group().order()
    }

    pub fn twist(&self, m: &Module, g: usize) -> Module {
        self.action.twist(m, g)
    }

    fn check_object(&self, m: &Module) -> Result<()> {
        if **m.algebra() != **self.action.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn hom(&self, x: &Module, y: &Module) -> Result<OrbitHomSpace> {
        self.check_object(x)?;
        self.check_object(y)?;
        let mut components = Vec::with_capacity(self.elements.len());
        for &g in &self.elements {
            let mut h = hom_space(x, &self.twist(y, g))?;
            h.target = y.clone();
            components.push((g, h));
        }
        Ok(OrbitHomSpace { components })
    }

    pub fn identity(&self, x: &Module) -> OrbitMor {
        OrbitMor::new(
            x.clone(),
            x.clone(),
            BTreeMap::from([(0, Mat::identity(x.field(), x.dim()))]),
        )
    }

    /// Verifies every component is an intertwiner into the right twist and indexed by the subgroup.
    pub fn check_mor(&self, f: &OrbitMor) -> Result<()> {
        for (g, m) in &f.comps {
            if self.elements.binary_search(g).is_err() {
                return Err(Error::ObjectMismatch(format!("component {g} outside the subgroup")));
            }
            if !f.source.is_intertwiner(&self.twist(&f.target, *g), m) {
                return Err(Error::ObjectMismatch(format!("component {g} is not an intertwiner")));
            }
        }
        Ok(())
    }

    /// `h ∘ f` with `(h ∘ f)_{g k} += h_k f_g`.
    pub fn compose(&self, f: &OrbitMor, h: &OrbitMor) -> Result<OrbitMor> {
        if f.target != h.source {
            return Err(Error::ObjectMismatch(
                "target of the first morphism is not the source of the second".into(),
            ));
        }
        let g = self.group();
        let mut comps: BTreeMap<usize, Mat> = BTreeMap::new();
        for (&a, fa) in &f.comps {
            for (&k, hk) in &h.comps {
                let prod = hk * fa;
                let idx = g.mul(a, k);
                match comps.get_mut(&idx) {
                    Some(m) => *m = &*m + &prod,
                    None => {
                        comps.insert(idx, prod);
                    }
                }
            }
        }
        Ok(OrbitMor::new(f.source.clone(), h.target.clone(), comps))
    }

    /// `S(f)`: the single component `f` at the identity.
    pub fn functor_s(&self, x: &Module, y: &Module, f: &Mat) -> OrbitMor {
        OrbitMor::new(x.clone(), y.clone(), BTreeMap::from([(0, f.clone())]))
    }

    /// `T(X) = ⊕_g twist(X, g)` over the subgroup, in element order.
    pub fn functor_t_obj(&self, x: &Module) -> Result<Module> {
        let parts: Vec<Module> = self.elements.iter().map(|&g| self.twist(x, g)).collect();
        Ok(direct_sum(x.algebra(), &parts)?.module)
    }

    /// `T(f)`: block `(h', h)` is `f_{h⁻¹ h'}`.
    pub fn functor_t_mor(&self, f: &OrbitMor) -> Mat {
        let g = self.group();
        let (dx, dy) = (f.source.dim(), f.target.dim());
        let n = self.elements.len();
        let mut out = Mat::zeros(f.source.field(), n * dy, n * dx);
        for (c, &h) in self.elements.iter().enumerate() {
            for (r, &hp) in self.elements.iter().enumerate() {
                if let Some(m) = f.comps.get(&g.mul(g.inv(h), hp)) {
                    out.set_block(r * dy, c * dx, m);
                }
            }
        }
        out
    }

    fn block_index(&self, g: usize) -> usize {
        self.elements.binary_search(&g).expect("element of the subgroup")
    }

    /// `η_X: X -> TS X`, the inclusion into the identity block.
    pub fn unit(&self, x: &Module) -> Mat {
        let f = x.field();
        let n = self.elements.len();
        let mut m = Mat::zeros(f, n * x.dim(), x.dim());
        m.set_block(0, 0, &Mat::identity(f, x.dim()));
        m
    }

    /// `ε_X: S T X -> X` with component at `g` the projection onto block `g`.
    pub fn counit(&self, x: &Module) -> Result<OrbitMor> {
        let f = x.field();
        let tx = self.functor_t_obj(x)?;
        let d = x.dim();
        let n = self.elements.len();
        let mut comps = BTreeMap::new();
        for (b, &g) in self.elements.iter().enumerate() {
            let mut p = Mat::zeros(f, d, n * d);
            p.set_block(0, b * d, &Mat::identity(f, d));
            comps.insert(g, p);
        }
        Ok(OrbitMor::new(tx, x.clone(), comps))
    }

    /// Kleisli multiplication `μ_X: TST X -> T X`, the block map `δ_{h', h k}`.
    pub fn multiplication(&self, x: &Module) -> Mat {
        let f = x.field();
        let g = self.group();
        let n = self.elements.len();
        let d = x.dim();
        let mut m = Mat::zeros(f, n * d, n * n * d);
        for (hi, &h) in self.elements.iter().enumerate() {
            for (ki, &k) in self.elements.iter().enumerate() {
                let target = self.block_index(g.mul(h, k));
                m.set_block(target * d, (hi * n + ki) * d, &Mat::identity(f, d));
            }
        }
        m
    }

    /// `A(F) = TS(F)` for a module map `F`: block diagonal copies.
    pub fn monad_on_map(&self, f: &Mat) -> Mat {
        let copies: Vec<&Mat> = vec![f; self.elements.len()];
        Mat::block_diag(f.field(), &copies)
    }

    /// `φ`: Kleisli block map `T X -> T Y` to its component family (precompose with `η`).
    pub fn kleisli_phi(&self, x: &Module, y: &Module, big: &Mat) -> OrbitMor {
        let (dx, dy) = (x.dim(), y.dim());
        let comps = self
            .elements
            .iter()
            .enumerate()
            .map(|(b, &g)| (g, big.submatrix(b * dy, 0, dy, dx)))
            .collect();
        OrbitMor::new(x.clone(), y.clone(), comps)
    }

    /// `ψ(f) = μ_Y ∘ A(f)`, realized as the block matrix `T(f)`.
    pub fn kleisli_psi(&self, f: &OrbitMor) -> Mat {
        self.functor_t_mor(f)
    }

    /// `Ê_g`: on objects `twist(X, g)`, on morphisms `(Ê_g f)_{g k g⁻¹} = f_k`.
    pub fn lifted_aut_obj(&self, g: usize, x: &Module) -> Module {
        self.twist(x, g)
    }

    pub fn lifted_aut(&self, g: usize, f: &OrbitMor) -> Result<OrbitMor> {
        let grp = self.group();
        if !grp.normalizes(g, &self.elements) {
            return Err(Error::Precondition(format!("{g} does not normalize the subgroup")));
        }
        let gi = grp.inv(g);
        let comps = f
            .comps
            .iter()
            .map(|(&k, m)| (grp.mul(grp.mul(g, k), gi), m.clone()))
            .collect();
        Ok(OrbitMor::new(self.twist(&f.source, g), self.twist(&f.target, g), comps))
    }

    /// `ν_{g,X}: S X -> S(twist(X, g))`, the identity placed at `g⁻¹`.
    pub fn adjuster_nu(&self, g: usize, x: &Module) -> OrbitMor {
        let gi = self.group().inv(g);
        OrbitMor::new(
            x.clone(),
            self.twist(x, g),
            BTreeMap::from([(gi, Mat::identity(x.field(), x.dim()))]),
        )
    }

    /// `Ê_g X ≅ X`: `u: twist(X, g) -> X` (identity at `g`) and `v: X -> twist(X, g)` (identity at `g⁻¹`).
    pub fn twist_iso(&self, g: usize, x: &Module) -> (OrbitMor, OrbitMor) {
        let tx = self.twist(x, g);
        let id = Mat::identity(x.field(), x.dim());
        let u = OrbitMor::new(tx.clone(), x.clone(), BTreeMap::from([(g, id.clone())]));
        let v = OrbitMor::new(x.clone(), tx, BTreeMap::from([(self.group().inv(g), id)]));
        (u, v)
    }

    /// `S[Γ^0]`: a morphism of the subcategory `sub` viewed in `self` (extension by zero).
    pub fn sub_inclusion_s(&self, sub: &OrbitCategory, f: &OrbitMor) -> Result<OrbitMor> {
        if !sub.elements.iter().all(|g| self.elements.binary_search(g).is_ok()) {
            return Err(Error::NotSubgroup(sub.elements.clone()));
        }
        sub.check_indices(f)?;
        Ok(f.clone())
    }

    fn check_indices(&self, f: &OrbitMor) -> Result<()> {
        if let Some(g) = f.comps.keys().find(|g| self.elements.binary_search(g).is_err()) {
            return Err(Error::ObjectMismatch(format!("component {g} outside the subgroup")));
        }
        Ok(())
    }

    /// Right-coset representatives of `sub` in `self`: least index per coset `Γ₀ σ`.
    pub fn coset_reps(&self, sub: &OrbitCategory) -> Result<Vec<usize>> {
        let g = self.group();
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for &x in &self.elements {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &h in &sub.elements {
                seen[g.mul(h, x)] = true;
            }
        }
        Ok(reps)
    }

    fn check_reps(&self, sub: &OrbitCategory, reps: &[usize]) -> Result<()> {
        let g = self.group();
        if !sub.elements.iter().all(|x| self.elements.binary_search(x).is_ok()) {
            return Err(Error::NotSubgroup(sub.elements.clone()));
        }
        if reps.first() != Some(&0) {
            return Err(Error::InvalidCosetReps(
                "the identity must represent the subgroup".into(),
            ));
        }
        let mut seen = BTreeMap::new();
        for &r in reps {
            if self.elements.binary_search(&r).is_err() {
                return Err(Error::InvalidCosetReps(format!("{r} is outside the group")));
            }
            for &h in &sub.elements {
                if seen.insert(g.mul(h, r), r).is_some() {
                    return Err(Error::InvalidCosetReps(format!("{r} repeats a coset")));
                }
            }
        }
        if seen.len() != self.elements.len() {
            return Err(Error::InvalidCosetReps("cosets not covered".into()));
        }
        Ok(())
    }

    /// `T[Γ^0] X = ⊕_{σ ∈ reps} twist(X, σ)`.
    pub fn sub_restriction_t_obj(&self, sub: &OrbitCategory, reps: &[usize], x: &Module) -> Result<Induced> {
        self.check_reps(sub, reps)?;
        let parts: Vec<Module> = reps.iter().map(|&s| self.twist(x, s)).collect();
        Ok(Induced {
            module: direct_sum(x.algebra(), &parts)?.module,
            blocks: reps.to_vec(),
        })
    }

    /// `T[Γ^0] f`: component at `γ ∈ Γ₀` has block `(τ, σ)` equal to `f_{σ⁻¹ γ τ}`.
    pub fn sub_restriction_t(&self, sub: &OrbitCategory, reps: &[usize], f: &OrbitMor) -> Result<OrbitMor> {
        self.check_indices(f)?;
        let src = self.sub_restriction_t_obj(sub, reps, &f.source)?.module;
        let tgt = self.sub_restriction_t_obj(sub, reps, &f.target)?.module;
        let g = self.group();
        let (dx, dy) = (f.source.dim(), f.target.dim());
        let n = reps.len();
        let mut comps = BTreeMap::new();
        for &gamma in &sub.elements {
            let mut m = Mat::zeros(f.source.field(), n * dy, n * dx);
            for (c, &sigma) in reps.iter().enumerate() {
                for (r, &tau) in reps.iter().enumerate() {
                    let idx = g.mul(g.mul(g.inv(sigma), gamma), tau);
                    if let Some(b) = f.comps.get(&idx) {
                        m.set_block(r * dy, c * dx, b);
                    }
                }
            }
            comps.insert(gamma, m);
        }
        Ok(OrbitMor::new(src, tgt, comps))
    }

    /// Unit of `(S[Γ^0], T[Γ^0])` at `X` (a morphism of `sub`): inclusion into the identity block.
    pub fn sub_unit(&self, sub: &OrbitCategory, reps: &[usize], x: &Module) -> Result<OrbitMor> {
        let t = self.sub_restriction_t_obj(sub, reps, x)?.module;
        let f = x.field();
        let mut m = Mat::zeros(f, t.dim(), x.dim());
        m.set_block(0, 0, &Mat::identity(f, x.dim()));
        Ok(OrbitMor::new(x.clone(), t, BTreeMap::from([(0, m)])))
    }

    /// Counit of `(S[Γ^0], T[Γ^0])` at `Y`: component at `σ` is the projection onto block `σ`.
    pub fn sub_counit(&self, sub: &OrbitCategory, reps: &[usize], y: &Module) -> Result<OrbitMor> {
        let t = self.sub_restriction_t_obj(sub, reps, y)?.module;
        let f = y.field();
        let d = y.dim();
        let mut comps = BTreeMap::new();
        for (b, &s) in reps.iter().enumerate() {
            let mut p = Mat::zeros(f, d, t.dim());
            p.set_block(0, b * d, &Mat::identity(f, d));
            comps.insert(s, p);
        }
        Ok(OrbitMor::new(t, y.clone(), comps))
    }

    /// Some `s` with `f ∘ s = id`, found by a linear solve over `Hom(Y, X)`.
    pub fn right_inverse(&self, f: &OrbitMor) -> Result<Option<OrbitMor>> {
        let hom = self.hom(&f.target, &f.source)?;
        let basis = hom.basis();
        let id = self.identity(&f.target);
        self.solve_combination(&basis, |b| self.compose(b, f), &id)
            .map(|c| c.map(|c| hom.combination(&c)))
    }

    /// Some `r` with `r ∘ f = id`.
    pub fn left_inverse(&self, f: &OrbitMor) -> Result<Option<OrbitMor>> {
        let hom = self.hom(&f.target, &f.source)?;
        let basis = hom.basis();
        let id = self.identity(&f.source);
        self.solve_combination(&basis, |b| self.compose(f, b), &id)
            .map(|c| c.map(|c| hom.combination(&c)))
    }

    fn solve_combination(
        &self,
        basis: &[OrbitMor],
        apply: impl Fn(&OrbitMor) -> Result<OrbitMor>,
        rhs: &OrbitMor,
    ) -> Result<Option<Vec<Scalar>>> {
        let f = rhs.source.field();
        let target = self.flatten(rhs);
        let cols = basis
            .iter()
            .map(|b| apply(b).map(|m| self.flatten(&m)))
            .collect::<Result<Vec<_>>>()?;
        if cols.is_empty() {
            return Ok(target.iter().all(|c| c.is_zero()).then(Vec::new));
        }
        let sys = Mat::from_cols(f, target.len(), &cols);
        Ok(sys.solve(&Mat::column(f, &target))?.map(|x| x.col(0)))
    }

    /// Permutation matrix taking `T_{Γ₀}(T[Γ^0] X)` (blocks `(h, σ)`, `h ∈ Γ₀`, `σ` in `reps`)
    /// onto `T_Γ X` (blocks indexed by `Γ`), matching block `(h, σ)` with `h σ`.
    pub fn factorization_permutation(&self, sub: &OrbitCategory, reps: &[usize], dim: usize) -> Result<Mat> {
        self.check_reps(sub, reps)?;
        let g = self.group();
        let f = self.action.algebra().field();
        let n = self.elements.len();
        let mut p = Mat::zeros(f, n * dim, n * dim);
        for (hi, &h) in sub.elements.iter().enumerate() {
            for (si, &s) in reps.iter().enumerate() {
                let src = hi * reps.len() + si;
                let dst = self.block_index(g.mul(h, s));
                p.set_block(dst * dim, src * dim, &Mat::identity(f, dim));
            }
        }
        Ok(p)
    }

    /// Flattened components in subgroup order (each row-major), for linear algebra on hom spaces.
    pub fn flatten(&self, f: &OrbitMor) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.elements.len() * f.source.dim() * f.target.dim());
        for &g in &self.elements {
            v.extend_from_slice(f.component(g).data());
        }
        v
    }

    pub fn unflatten(&self, x: &Module, y: &Module, v: &[Scalar]) -> OrbitMor {
        let (dx, dy) = (x.dim(), y.dim());
        let size = dx * dy;
        let comps = self
            .elements
            .iter()
            .enumerate()
            .map(|(b, &g)| {
                (
                    g,
                    Mat::from_vec(x.field(), dy, dx, v[b * size..(b + 1) * size].to_vec()).unwrap(),
                )
            })
            .collect();
        OrbitMor::new(x.clone(), y.clone(), comps)
    }
}
