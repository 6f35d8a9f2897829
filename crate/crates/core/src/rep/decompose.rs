//! Krull–Schmidt decomposition through primitive idempotents of `End(M)`.

use crate::algebra::{combine, primitive_orthogonal_idempotents};
use crate::error::{Error, Result};
use crate::mat::{Mat, Subspace};
use crate::rep::{end_algebra, hom_space, Module};

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    /// `dim M x dim S`
    pub inclusion: Mat,
    /// `dim S x dim M`
    pub projection: Mat,
    /// The idempotent endomorphism `inclusion * projection` of `M`.
    pub idempotent: Mat,
    /// Dimension of the (local) endomorphism algebra of the summand.
    pub end_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Summand indices grouped by isomorphism class, in order of first appearance.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// One representative per isomorphism class with its multiplicity.
    pub fn multiplicities(&self) -> Vec<(&Module, usize)> {
        self.classes
            .iter()
            .map(|c| (&self.summands[c[0]].module, c.len()))
            .collect()
    }

    /// Sorted `(dimension, multiplicity)` pairs.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.multiplicities().into_iter().map(|(m, k)| (m.dim(), k)).collect();
        v.sort();
        v
    }

    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1
    }
}

/// Indecomposable summands of `M`; every inclusion/projection identity and the
/// locality of each summand's endomorphism algebra are certified.
pub fn decompose(m: &Module) -> Result<Decomposition> {
    let f = m.field();
    if m.dim() == 0 {
        return Ok(Decomposition {
            summands: Vec::new(),
            classes: Vec::new(),
        });
    }
    let (end, basis) = end_algebra(m)?;
    let ids = primitive_orthogonal_idempotents(&end)?;
    let mut summands = Vec::with_capacity(ids.len());
    let mut total = Mat::zeros(f, m.dim(), m.dim());
    for e in &ids.elements {
        let p = combine(f, &basis, e);
        let cols: Vec<Vec<_>> = (0..m.dim()).map(|j| p.col(j)).collect();
        let image = Subspace::span(f, m.dim(), &cols);
        let incl = Mat::from_cols(f, m.dim(), image.basis());
        let proj = incl
            .solve(&p)?
            .ok_or_else(|| Error::Certificate("idempotent image has no retraction".into()))?;
        if !(&proj * &incl).is_identity() || &incl * &proj != p {
            return Err(Error::Certificate(
                "summand inclusion and projection do not split".into(),
            ));
        }
        let action = m.action().iter().map(|a| &(&proj * a) * &incl).collect();
        let module = Module::from_parts(m.algebra().clone(), image.dim(), action);
        let (corner, _) = end.corner(e)?;
        total = &total + &p;
        summands.push(Summand {
            module,
            inclusion: incl,
            projection: proj,
            idempotent: p,
            end_dim: corner.dim(),
        });
    }
    if !total.is_identity() {
        return Err(Error::Certificate(
            "summand idempotents do not sum to the identity".into(),
        ));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let mut placed = false;
        for c in classes.iter_mut() {
            if indecomposable_iso(&summands[c[0]].module, &s.module)?.is_some() {
                c.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Decomposition { summands, classes })
}

/// For indecomposable `M`, `N`: an invertible basis element of `Hom(M, N)`, if any.
/// Non-isomorphisms form a proper subspace, so a basis cannot avoid isomorphisms.
fn indecomposable_iso(m: &Module, n: &Module) -> Result<Option<Mat>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let hom = hom_space(m, n)?;
    Ok(hom.basis.into_iter().find(|b| b.is_invertible()))
}

/// An isomorphism `M -> N` if one exists.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<Option<Mat>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Mat::zeros(m.field(), 0, 0)));
    }
    if let Some(iso) = indecomposable_iso(m, n)? {
        return Ok(Some(iso));
    }
    let dm = decompose(m)?;
    if dm.is_indecomposable() {
        return Ok(None);
    }
    let dn = decompose(n)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    // greedy matching of summands
    let mut used = vec![false; dn.summands.len()];
    let mut iso = Mat::zeros(m.field(), n.dim(), m.dim());
    for s in &dm.summands {
        let mut found = false;
        for (k, t) in dn.summands.iter().enumerate() {
            if used[k] {
                continue;
            }
            if let Some(phi) = indecomposable_iso(&s.module, &t.module)? {
                used[k] = true;
                iso = &iso + &(&(&t.inclusion * &phi) * &s.projection);
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    if !iso.is_invertible() || !m.is_intertwiner(n, &iso) {
        return Err(Error::Certificate("assembled isomorphism is not invertible".into()));
    }
    Ok(Some(iso))
}
