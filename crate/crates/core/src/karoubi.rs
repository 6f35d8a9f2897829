//! Idempotent completion of an orbit category.
//!
//! Objects are pairs `(X, e)` with `e` an idempotent orbit endomorphism of `X`;
//! morphisms `(X, e) -> (Y, f)` are the compressions `f ∘ α ∘ e`.

use crate::algebra::{is_local, primitive_orthogonal_idempotents, radical, Algebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::mat::{Mat, Subspace};
use crate::orbit::{OrbitCategory, OrbitMor};
use crate::rep::Module;

#[derive(Clone, Debug, PartialEq)]
pub struct KarObject {
    pub object: Module,
    pub idempotent: OrbitMor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KarMor {
    pub source: KarObject,
    pub target: KarObject,
    pub mor: OrbitMor,
}

impl KarObject {
    /// Checks `e ∘ e = e` exactly.
    pub fn new(cat: &OrbitCategory, object: Module, idempotent: OrbitMor) -> Result<KarObject> {
        if idempotent.source != object || idempotent.target != object {
            return Err(Error::ObjectMismatch(
                "idempotent is not an endomorphism of the object".into(),
            ));
        }
        cat.check_mor(&idempotent)?;
        if cat.compose(&idempotent, &idempotent)? != idempotent {
            return Err(Error::Precondition("morphism is not idempotent".into()));
        }
        Ok(KarObject { object, idempotent })
    }

    /// The image of `X` under the embedding `X -> (X, id)`.
    pub fn whole(cat: &OrbitCategory, object: &Module) -> KarObject {
        KarObject {
            object: object.clone(),
            idempotent: cat.identity(object),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.idempotent.is_zero()
    }
}

/// `f ∘ α ∘ e`
pub fn compress(cat: &OrbitCategory, a: &KarObject, b: &KarObject, alpha: &OrbitMor) -> Result<OrbitMor> {
    let left = cat.compose(&a.idempotent, alpha)?;
    cat.compose(&left, &b.idempotent)
}

/// Echelon basis of `f ∘ H[Γ₀](X, Y) ∘ e`.
pub fn kar_hom(cat: &OrbitCategory, a: &KarObject, b: &KarObject) -> Result<Vec<KarMor>> {
    let f = a.object.field();
    let hom = cat.hom(&a.object, &b.object)?;
    let len = cat.elements().len() * a.object.dim() * b.object.dim();
    let mut vecs = Vec::with_capacity(hom.dim());
    for alpha in hom.basis() {
        vecs.push(cat.flatten(&compress(cat, a, b, &alpha)?));
    }
    let space = Subspace::span(f, len, &vecs);
    Ok(space
        .basis()
        .iter()
        .map(|v| KarMor {
            source: a.clone(),
            target: b.clone(),
            mor: cat.unflatten(&a.object, &b.object, v),
        })
        .collect())
}

/// `e ∘ End(X) ∘ e` as an algebra, with the orbit endomorphisms of its basis.
pub fn kar_end_algebra(cat: &OrbitCategory, a: &KarObject) -> Result<(Algebra, Vec<OrbitMor>)> {
    let f = a.object.field();
    let basis: Vec<OrbitMor> = kar_hom(cat, a, a)?.into_iter().map(|m| m.mor).collect();
    let len = cat.elements().len() * a.object.dim() * a.object.dim();
    let flat: Vec<Vec<Scalar>> = basis.iter().map(|b| cat.flatten(b)).collect();
    let space = Subspace::span(f, len, &flat);
    let d = basis.len();
    let mut consts = Vec::with_capacity(d * d * d);
    // b_i b_j means b_i ∘ b_j
    for bi in &basis {
        for bj in &basis {
            let prod = cat.compose(bj, bi)?;
            consts.extend(
                space
                    .coords(&cat.flatten(&prod))
                    .ok_or_else(|| Error::Certificate("corner is not closed under composition".into()))?,
            );
        }
    }
    let unit = if d == 0 {
        Vec::new()
    } else {
        space
            .coords(&cat.flatten(&a.idempotent))
            .ok_or_else(|| Error::Certificate("idempotent is not in its corner".into()))?
    };
    Ok((Algebra::new(f, d, consts, unit)?, basis))
}

fn combine_mors(a: &KarObject, basis: &[OrbitMor], coeffs: &[Scalar]) -> OrbitMor {
    let mut out = OrbitMor::zero(a.object.clone(), a.object.clone());
    for (b, &c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&b.scale(c));
        }
    }
    out
}

/// A primitive summand with the certificate data of its corner algebra.
#[derive(Clone, Debug)]
pub struct KarSummand {
    pub object: KarObject,
    pub corner_dim: usize,
    pub radical_dim: usize,
    pub local: bool,
}

/// Splits `(X, e)` into primitive summands `(X, e_i)` with `Σ e_i = e` and
/// `e_i e_j = δ_ij e_i`, each with a local corner.
pub fn kar_decompose(cat: &OrbitCategory, a: &KarObject) -> Result<Vec<KarSummand>> {
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let (end, basis) = kar_end_algebra(cat, a)?;
    let ids = primitive_orthogonal_idempotents(&end)?;
    let mors: Vec<OrbitMor> = ids.elements.iter().map(|e| combine_mors(a, &basis, e)).collect();
    let mut total = OrbitMor::zero(a.object.clone(), a.object.clone());
    for (i, ei) in mors.iter().enumerate() {
        total = total.add(ei);
        for (j, ej) in mors.iter().enumerate() {
            let prod = cat.compose(ej, ei)?;
            let ok = if i == j { prod == *ei } else { prod.is_zero() };
            if !ok {
                return Err(Error::Certificate(format!(
                    "summand idempotents {i} and {j} are not orthogonal"
                )));
            }
        }
    }
    if total != a.idempotent {
        return Err(Error::Certificate("summand idempotents do not sum to e".into()));
    }
    let mut out = Vec::with_capacity(mors.len());
    for e in mors {
        let obj = KarObject {
            object: a.object.clone(),
            idempotent: e,
        };
        let (corner, _) = kar_end_algebra(cat, &obj)?;
        let local = is_local(&corner)?;
        if !local {
            return Err(Error::Certificate("primitive summand has a non-local corner".into()));
        }
        out.push(KarSummand {
            corner_dim: corner.dim(),
            radical_dim: radical(&corner)?.dim(),
            local,
            object: obj,
        });
    }
    Ok(out)
}

/// Whether `(X, e)` is indecomposable, certified by a local corner algebra.
pub fn kar_is_local(cat: &OrbitCategory, a: &KarObject) -> Result<(bool, usize, usize)> {
    let (corner, _) = kar_end_algebra(cat, a)?;
    let local = is_local(&corner)?;
    let rad = if corner.dim() == 0 { 0 } else { radical(&corner)?.dim() };
    Ok((local, corner.dim(), rad))
}

/// For `α` in the compressed hom space, some compressed `β` with `β ∘ α = e`, if any.
fn left_inverse_in(cat: &OrbitCategory, a: &KarObject, b: &KarObject, alpha: &OrbitMor) -> Result<Option<OrbitMor>> {
    let f = a.object.field();
    let back: Vec<OrbitMor> = kar_hom(cat, b, a)?.into_iter().map(|m| m.mor).collect();
    let target = cat.flatten(&a.idempotent);
    if back.is_empty() {
        return Ok(None);
    }
    let cols = back
        .iter()
        .map(|beta| cat.compose(alpha, beta).map(|m| cat.flatten(&m)))
        .collect::<Result<Vec<_>>>()?;
    let sys = Mat::from_cols(f, target.len(), &cols);
    let Some(x) = sys.solve(&Mat::column(f, &target))? else {
        return Ok(None);
    };
    let mut beta = OrbitMor::zero(b.object.clone(), a.object.clone());
    for (m, c) in back.iter().zip(x.col(0)) {
        if !c.is_zero() {
            beta = beta.add(&m.scale(c));
        }
    }
    Ok(Some(beta))
}

fn primitive_iso(cat: &OrbitCategory, a: &KarObject, b: &KarObject) -> Result<Option<(OrbitMor, OrbitMor)>> {
    for alpha in kar_hom(cat, a, b)? {
        if let Some(beta) = left_inverse_in(cat, a, b, &alpha.mor)? {
            if cat.compose(&beta, &alpha.mor)? == b.idempotent {
                return Ok(Some((alpha.mor, beta)));
            }
        }
    }
    Ok(None)
}

/// An isomorphism `(α, β)` with `β ∘ α = e` and `α ∘ β = f`, if one exists.
pub fn kar_is_isomorphic(cat: &OrbitCategory, a: &KarObject, b: &KarObject) -> Result<Option<(KarMor, KarMor)>> {
    let wrap = |alpha: OrbitMor, beta: OrbitMor| {
        (
            KarMor {
                source: a.clone(),
                target: b.clone(),
                mor: alpha,
            },
            KarMor {
                source: b.clone(),
                target: a.clone(),
                mor: beta,
            },
        )
    };
    if a == b {
        return Ok(Some(wrap(a.idempotent.clone(), a.idempotent.clone())));
    }
    if a.is_zero() || b.is_zero() {
        return Ok((a.is_zero() && b.is_zero()).then(|| {
            wrap(
                OrbitMor::zero(a.object.clone(), b.object.clone()),
                OrbitMor::zero(b.object.clone(), a.object.clone()),
            )
        }));
    }
    if let Some((alpha, beta)) = primitive_iso(cat, a, b)? {
        return Ok(Some(wrap(alpha, beta)));
    }
    let da = kar_decompose(cat, a)?;
    if da.len() == 1 {
        return Ok(None);
    }
    let db = kar_decompose(cat, b)?;
    if da.len() != db.len() {
        return Ok(None);
    }
    let mut used = vec![false; db.len()];
    let mut alpha = OrbitMor::zero(a.object.clone(), b.object.clone());
    let mut beta = OrbitMor::zero(b.object.clone(), a.object.clone());
    for s in &da {
        let mut found = false;
        for (k, t) in db.iter().enumerate() {
            if used[k] {
                continue;
            }
            if let Some((x, y)) = primitive_iso(cat, &s.object, &t.object)? {
                used[k] = true;
                alpha = alpha.add(&x);
                beta = beta.add(&y);
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    if cat.compose(&alpha, &beta)? != a.idempotent || cat.compose(&beta, &alpha)? != b.idempotent {
        return Err(Error::Certificate("assembled isomorphism does not invert".into()));
    }
    Ok(Some(wrap(alpha, beta)))
}

/// `Ŝ[Γ^0](X, e) = (X, e)` viewed over the larger group.
pub fn lift_sub_inclusion_s(full: &OrbitCategory, sub: &OrbitCategory, a: &KarObject) -> Result<KarObject> {
    Ok(KarObject {
        object: a.object.clone(),
        idempotent: full.sub_inclusion_s(sub, &a.idempotent)?,
    })
}

/// `T̂[Γ^0](X, e) = (T[Γ^0] X, T[Γ^0] e)`.
pub fn lift_sub_restriction_t(
    full: &OrbitCategory,
    sub: &OrbitCategory,
    reps: &[usize],
    a: &KarObject,
) -> Result<KarObject> {
    let e = full.sub_restriction_t(sub, reps, &a.idempotent)?;
    Ok(KarObject {
        object: e.source.clone(),
        idempotent: e,
    })
}

/// `Ê_g(X, e) = (twist(X, g), Ê_g e)`.
pub fn lift_aut(cat: &OrbitCategory, g: usize, a: &KarObject) -> Result<KarObject> {
    Ok(KarObject {
        object: cat.twist(&a.object, g),
        idempotent: cat.lifted_aut(g, &a.idempotent)?,
    })
}

/// Lifts a morphism through any of the functors above: they act on the underlying morphism.
pub fn lift_mor(source: KarObject, target: KarObject, mor: OrbitMor) -> KarMor {
    KarMor { source, target, mor }
}

/// `T̂(X, e)` realized in the base category as the image of the block matrix `T(e)`.
pub struct TImage {
    pub module: Module,
    /// `dim TX x dim image`
    pub inclusion: Mat,
    /// `dim image x dim TX`
    pub projection: Mat,
}

pub fn functor_t_image(cat: &OrbitCategory, a: &KarObject) -> Result<TImage> {
    let tx = cat.functor_t_obj(&a.object)?;
    let te = cat.functor_t_mor(&a.idempotent);
    let cols: Vec<Vec<Scalar>> = (0..te.cols()).map(|j| te.col(j)).collect();
    let (module, inclusion) = tx.submodule(&cols)?;
    let projection = inclusion
        .solve(&te)?
        .ok_or_else(|| Error::Certificate("image of T(e) has no retraction".into()))?;
    if !(&projection * &inclusion).is_identity() || &inclusion * &projection != te {
        return Err(Error::Certificate("T(e) does not split through its image".into()));
    }
    Ok(TImage {
        module,
        inclusion,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rep::decompose;

    fn mat2() -> (OrbitCategory, KarObject) {
        let act = corpus::mat2_swap(5).unwrap();
        let s = corpus::column_module(act.algebra());
        let cat = OrbitCategory::new(act);
        let whole = KarObject::whole(&cat, &s);
        (cat, whole)
    }

    #[test]
    fn identity_compression_is_orbit_hom() {
        let (cat, whole) = mat2();
        let h = kar_hom(&cat, &whole, &whole).unwrap();
        assert_eq!(h.len(), cat.hom(&whole.object, &whole.object).unwrap().dim());
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn mat2_swap_splits_into_two() {
        let (cat, whole) = mat2();
        let parts = kar_decompose(&cat, &whole).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.corner_dim, 1);
            assert!(p.local);
        }
        assert!(kar_is_isomorphic(&cat, &parts[0].object, &parts[1].object)
            .unwrap()
            .is_none());
        let (a, b) = kar_is_isomorphic(&cat, &parts[0].object, &parts[0].object)
            .unwrap()
            .unwrap();
        assert_eq!(a.mor, parts[0].object.idempotent);
        assert_eq!(b.mor, parts[0].object.idempotent);
        // complementary corners only meet in zero after compression
        let e = &parts[0].object;
        let comp = KarObject {
            object: e.object.clone(),
            idempotent: whole.idempotent.sub(&e.idempotent),
        };
        assert_eq!(comp, parts[1].object);
        for m in kar_hom(&cat, e, &comp).unwrap() {
            let back = compress(&cat, &comp, e, &m.mor).unwrap();
            assert!(back.is_zero());
        }
    }

    #[test]
    fn trivial_group_matches_decompose() {
        let act = corpus::cyclic_inversion(7, 3).unwrap();
        let a = act.algebra().clone();
        let reg = Module::regular(a.clone());
        let cat = OrbitCategory::new(std::sync::Arc::new(crate::orbit::GroupAction::trivial(a)));
        let parts = kar_decompose(&cat, &KarObject::whole(&cat, &reg)).unwrap();
        assert_eq!(parts.len(), decompose(&reg).unwrap().summands.len());
    }

    #[test]
    fn f7c3_trivial_splits_in_two() {
        let act = corpus::cyclic_inversion(7, 3).unwrap();
        let triv = corpus::character(act.algebra(), 1).unwrap();
        let cat = OrbitCategory::new(act);
        let parts = kar_decompose(&cat, &KarObject::whole(&cat, &triv)).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            let img = functor_t_image(&cat, &p.object).unwrap();
            assert_eq!(img.module.dim(), 1);
        }
    }

    #[test]
    fn lifted_twist_is_isomorphic() {
        let (cat, whole) = mat2();
        for p in kar_decompose(&cat, &whole).unwrap() {
            let moved = lift_aut(&cat, 1, &p.object).unwrap();
            KarObject::new(&cat, moved.object.clone(), moved.idempotent.clone()).unwrap();
            let (a, b) = kar_is_isomorphic(&cat, &p.object, &moved).unwrap().unwrap();
            assert_eq!(cat.compose(&a.mor, &b.mor).unwrap(), p.object.idempotent);
            // strict action on the completion
            let twice = lift_aut(&cat, 1, &moved).unwrap();
            assert_eq!(twice, p.object);
        }
    }

    #[test]
    fn decomposable_objects_match_by_summands() {
        let (cat, whole) = mat2();
        let moved = lift_aut(&cat, 1, &whole).unwrap();
        let (a, b) = kar_is_isomorphic(&cat, &whole, &moved).unwrap().unwrap();
        assert_eq!(cat.compose(&a.mor, &b.mor).unwrap(), whole.idempotent);
        assert_eq!(cat.compose(&b.mor, &a.mor).unwrap(), moved.idempotent);
    }

    #[test]
    fn rejects_non_idempotent() {
        let (cat, whole) = mat2();
        let two = whole.idempotent.scale(whole.object.field().from_int(2));
        assert!(KarObject::new(&cat, whole.object.clone(), two).is_err());
    }

    #[test]
    fn t_image_is_submodule() {
        let (cat, whole) = mat2();
        let tx = cat.functor_t_obj(&whole.object).unwrap();
        let mut total = 0;
        for p in kar_decompose(&cat, &whole).unwrap() {
            let img = functor_t_image(&cat, &p.object).unwrap();
            assert!(img.module.is_intertwiner(&tx, &img.inclusion));
            assert!(tx.is_intertwiner(&img.module, &img.projection));
            total += img.module.dim();
        }
        assert_eq!(total, tx.dim());
    }

    #[test]
    fn lifted_intermediate_adjunction() {
        let act = corpus::mat2_klein(5).unwrap();
        let s = corpus::column_module(act.algebra());
        let full = OrbitCategory::new(act.clone());
        let sub = OrbitCategory::with_subgroup(act, &[0, 1]).unwrap();
        let reps = full.coset_reps(&sub).unwrap();
        for p in kar_decompose(&sub, &KarObject::whole(&sub, &s)).unwrap() {
            let up = lift_sub_inclusion_s(&full, &sub, &p.object).unwrap();
            KarObject::new(&full, up.object.clone(), up.idempotent.clone()).unwrap();
            let down = lift_sub_restriction_t(&full, &sub, &reps, &up).unwrap();
            KarObject::new(&sub, down.object.clone(), down.idempotent.clone()).unwrap();
            // ε̂ ∘ Ŝ(η̂) = id on the completed object, with the unit and counit of the base
            let unit = full.sub_unit(&sub, &reps, &s).unwrap();
            let counit = full.sub_counit(&sub, &reps, &s).unwrap();
            let eta = sub.compose(&p.object.idempotent, &unit).unwrap();
            let eta = sub.compose(&eta, &down.idempotent).unwrap();
            let s_down = full.sub_inclusion_s(&sub, &down.idempotent).unwrap();
            let eps = full.compose(&s_down, &counit).unwrap();
            let eps = full.compose(&eps, &up.idempotent).unwrap();
            let s_eta = full.sub_inclusion_s(&sub, &eta).unwrap();
            let composed = full.compose(&s_eta, &eps).unwrap();
            assert_eq!(composed, up.idempotent);
        }
    }
}
