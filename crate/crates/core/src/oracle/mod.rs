//! Independent checks: induction through the skew group algebra, the split
//! counit criterion, and twisted group rings of finite field towers.

use std::sync::Arc;

use crate::algebra::{skew_group_algebra, Algebra};
use crate::clifford::CliffordReport;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::mat::Mat;
use crate::orbit::GroupAction;
use crate::rep::{decompose, hom_space, Module};

pub mod galois;

pub use galois::{
    galois_build, galois_monad_group_check, galois_rank_check, natural_module, normal_basis, GaloisAlgebras,
    GaloisScenario, MonadGroupReport, RankReport,
};

/// `A ⋊ Γ` together with the inclusion of `A` and the elements `1 ⊗ g`.
#[derive(Clone, Debug)]
pub struct SkewContext {
    pub action: Arc<GroupAction>,
    pub skew: Arc<Algebra>,
    /// `dim(A ⋊ Γ) x dim A`
    pub embedding: Mat,
    pub group_elements: Vec<Vec<Scalar>>,
}

impl SkewContext {
    pub fn new(action: Arc<GroupAction>) -> Result<SkewContext> {
        let skew = Arc::new(skew_group_algebra(&action)?);
        let a = action.algebra();
        let f = a.field();
        let d = a.dim();
        let n = action.group().order();
        let mut embedding = Mat::zeros(f, d * n, d);
        embedding.set_block(0, 0, &Mat::identity(f, d));
        let group_elements = (0..n)
            .map(|g| {
                let mut v = vec![f.zero(); d * n];
                v[g * d..(g + 1) * d].copy_from_slice(a.unit());
                v
            })
            .collect();
        let ctx = SkewContext {
            action,
            skew,
            embedding,
            group_elements,
        };
        ctx.check()?;
        Ok(ctx)
    }

    /// Multiplicativity of the embedding and `(1⊗g)(a⊗1)(1⊗g)⁻¹ = σ_g(a)⊗1`.
    pub fn check(&self) -> Result<()> {
        let a = self.action.algebra();
        let g = self.action.group();
        let embed = |x: &[Scalar]| self.embedding.mul_vec(x);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (x, y) = (a.basis_vector(i), a.basis_vector(j));
                if self.skew.mul(&embed(&x), &embed(&y)) != embed(&a.mul(&x, &y)) {
                    return Err(Error::Certificate(format!(
                        "embedding not multiplicative on ({i}, {j})"
                    )));
                }
            }
        }
        for x in g.elements() {
            let u = &self.group_elements[x];
            let u_inv = &self.group_elements[g.inv(x)];
            for i in 0..a.dim() {
                let b = a.basis_vector(i);
                let conj = self.skew.mul(&self.skew.mul(u, &embed(&b)), u_inv);
                if conj != embed(&self.action.aut(x).apply(&b)) {
                    return Err(Error::Certificate(format!(
                        "conjugation by element {x} disagrees with the action"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn restrict(&self, x: &Module) -> Result<Module> {
        x.restrict(self.action.algebra().clone(), &self.embedding)
    }
}

/// `(A ⋊ Γ) ⊗_A M` on the basis `(1 ⊗ g) ⊗ m_i` at index `g * dim M + i`.
pub fn induce_skew(ctx: &SkewContext, m: &Module) -> Result<Module> {
    let a = ctx.action.algebra();
    if **m.algebra() != **a {
        return Err(Error::AlgebraMismatch);
    }
    let g = ctx.action.group();
    let f = a.field();
    let (d, n, k) = (a.dim(), g.order(), m.dim());
    let twists: Vec<Module> = (0..n).map(|x| ctx.action.twist(m, x)).collect();
    let mut action = Vec::with_capacity(d * n);
    for h in 0..n {
        for i in 0..d {
            // (b_i ⊗ h)(1 ⊗ g) ⊗ m = (1 ⊗ hg) ⊗ σ_{hg}^{-1}(b_i) m
            let mut big = Mat::zeros(f, n * k, n * k);
            for x in 0..n {
                let hx = g.mul(h, x);
                big.set_block(hx * k, x * k, &twists[hx].action()[i]);
            }
            action.push(big);
        }
    }
    Module::new(ctx.skew.clone(), action)
}

/// Outcome of comparing the orbit-category pipeline with the skew algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    /// Set when the comparison does not apply.
    pub skipped: Option<String>,
    pub skew_signature: Vec<(usize, usize)>,
    pub orbit_signature: Vec<(usize, usize)>,
    pub agree: bool,
}

pub fn oracle_compare(report: &CliffordReport, ctx: &SkewContext, m: &Module) -> Result<OracleComparison> {
    let p = ctx.skew.field().characteristic();
    let order = ctx.action.group().order() as u64;
    let orbit_signature = report.signature();
    if order.is_multiple_of(p) {
        return Ok(OracleComparison {
            skipped: Some("counit not split".into()),
            skew_signature: Vec::new(),
            orbit_signature,
            agree: false,
        });
    }
    let skew_signature = decompose(&induce_skew(ctx, m)?)?.signature();
    Ok(OracleComparison {
        skipped: None,
        agree: skew_signature == orbit_signature,
        skew_signature,
        orbit_signature,
    })
}

/// The counit `Ind Res X -> X`, `(1 ⊗ g) ⊗ x -> (1 ⊗ g) x`.
pub fn counit_matrix(ctx: &SkewContext, x: &Module) -> Result<(Module, Mat)> {
    let ind = induce_skew(ctx, &ctx.restrict(x)?)?;
    let f = x.field();
    let k = x.dim();
    let n = ctx.group_elements.len();
    let mut eps = Mat::zeros(f, k, n * k);
    for (g, u) in ctx.group_elements.iter().enumerate() {
        eps.set_block(0, g * k, &x.act(u));
    }
    if !ind.is_intertwiner(x, &eps) {
        return Err(Error::Certificate("counit is not a module map".into()));
    }
    Ok((ind, eps))
}

/// Whether the counit at `X` has a module section, decided by a linear solve.
pub fn counit_split_test(ctx: &SkewContext, x: &Module) -> Result<bool> {
    if x.dim() == 0 {
        return Ok(true);
    }
    let (ind, eps) = counit_matrix(ctx, x)?;
    let hom = hom_space(x, &ind)?;
    let f = x.field();
    let id = Mat::identity(f, x.dim());
    if hom.basis.is_empty() {
        return Ok(false);
    }
    let cols: Vec<Vec<Scalar>> = hom.basis.iter().map(|b| (&eps * b).into_data()).collect();
    let sys = Mat::from_cols(f, x.dim() * x.dim(), &cols);
    let Some(c) = sys.solve(&Mat::column(f, id.data()))? else {
        return Ok(false);
    };
    let mut s = Mat::zeros(f, ind.dim(), x.dim());
    for (b, coef) in hom.basis.iter().zip(c.col(0)) {
        s.add_scaled(coef, b);
    }
    if !(&eps * &s).is_identity() {
        return Err(Error::Certificate("counit section does not split".into()));
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
