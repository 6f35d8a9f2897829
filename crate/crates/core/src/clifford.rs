//! Inertia groups and the Clifford decomposition of induced objects in the
//! orbit category.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::karoubi::{
    functor_t_image, kar_decompose, kar_end_algebra, kar_is_isomorphic, kar_is_local, lift_aut, lift_sub_inclusion_s,
    KarObject,
};
use crate::mat::Mat;
use crate::orbit::{GroupAction, OrbitCategory};
use crate::rep::{decompose, end_algebra, is_isomorphic, is_simple, Module};

/// `Γ_M = {g : twist(M, g) ≅ M}` with a witness `twist(M, g) -> M` per element.
#[derive(Clone, Debug)]
pub struct InertiaData {
    pub module: Module,
    pub subgroup: Vec<usize>,
    /// Indexed by group element; `None` outside the inertia group.
    pub witnesses: Vec<Option<Mat>>,
}

impl InertiaData {
    pub fn is_trivial(&self) -> bool {
        self.subgroup.len() == 1
    }
}

fn require_indecomposable(m: &Module) -> Result<()> {
    if m.dim() == 0 || !decompose(m)?.is_indecomposable() {
        return Err(Error::DecomposeFirst);
    }
    Ok(())
}

pub fn inertia(action: &GroupAction, m: &Module) -> Result<InertiaData> {
    if !Arc::ptr_eq(m.algebra(), action.algebra()) && **m.algebra() != **action.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    require_indecomposable(m)?;
    let g = action.group();
    let mut subgroup = Vec::new();
    let mut witnesses = Vec::with_capacity(g.order());
    for x in g.elements() {
        let t = action.twist(m, x);
        let w = is_isomorphic(&t, m)?;
        if let Some(iso) = &w {
            if !t.is_intertwiner(m, iso) || !iso.is_invertible() {
                return Err(Error::Certificate(format!(
                    "inertia witness for element {x} is not an isomorphism"
                )));
            }
            subgroup.push(x);
        }
        witnesses.push(w);
    }
    if !g.is_subgroup(&subgroup) {
        return Err(Error::Certificate(format!(
            "inertia set {subgroup:?} is not a subgroup"
        )));
    }
    Ok(InertiaData {
        module: m.clone(),
        subgroup,
        witnesses,
    })
}

/// A primitive summand `M_j` of `(M, id)` in the completion over `Γ_M`.
#[derive(Clone, Debug)]
pub struct StageOne {
    pub object: KarObject,
    pub corner_dim: usize,
    pub radical_dim: usize,
    pub local: bool,
    /// Copies of `M` in the materialized `T̂[Γ_M](M_j)`.
    pub n: usize,
    pub image_dim: usize,
}

/// `Ŝ[Γ_M^0](M_j)` in the completion over the whole group.
#[derive(Clone, Debug)]
pub struct StageTwo {
    pub object: KarObject,
    pub corner_dim: usize,
    pub radical_dim: usize,
    pub local: bool,
    /// Dimension of the image of `T_Γ(e_j)`.
    pub image_dim: usize,
    /// Index of the isomorphism class among the stage-two objects.
    pub class: usize,
}

#[derive(Clone, Debug)]
pub struct CliffordReport {
    pub group_order: usize,
    pub module_dim: usize,
    pub inertia: Vec<usize>,
    pub stage_one: Vec<StageOne>,
    pub stage_two: Vec<StageTwo>,
    pub sum_n: usize,
    /// `(g, j)` pairs for which `Ê_g(M_j) ≇ M_j` was confirmed.
    pub non_iso_checks: Vec<(usize, usize)>,
    /// Elements outside `Γ_M` that do not normalize it, where the check does not apply.
    pub skipped_elements: Vec<usize>,
}

impl CliffordReport {
    pub fn all_local(&self) -> bool {
        self.stage_one.iter().all(|s| s.local) && self.stage_two.iter().all(|s| s.local)
    }

    /// Sorted `(image dimension, multiplicity)` pairs of the stage-two classes.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let classes = self.stage_two.iter().map(|s| s.class).max().map_or(0, |c| c + 1);
        let mut v: Vec<(usize, usize)> = (0..classes)
            .map(|c| {
                let members: Vec<&StageTwo> = self.stage_two.iter().filter(|s| s.class == c).collect();
                (members[0].image_dim, members.len())
            })
            .collect();
        v.sort();
        v
    }
}

pub fn clifford_run(action: &Arc<GroupAction>, m: &Module) -> Result<CliffordReport> {
    let data = inertia(action, m)?;
    let g = action.group();
    let full = OrbitCategory::new(action.clone());
    let sub = OrbitCategory::with_subgroup(action.clone(), &data.subgroup)?;

    let mut stage_one = Vec::new();
    for s in kar_decompose(&sub, &KarObject::whole(&sub, m))? {
        let img = functor_t_image(&sub, &s.object)?;
        let parts = decompose(&img.module)?;
        for p in &parts.summands {
            if is_isomorphic(&p.module, m)?.is_none() {
                return Err(Error::Violation(format!(
                    "T̂ image of a summand contains a non-copy of M of dimension {}",
                    p.module.dim()
                )));
            }
        }
        stage_one.push(StageOne {
            object: s.object,
            corner_dim: s.corner_dim,
            radical_dim: s.radical_dim,
            local: s.local,
            n: parts.summands.len(),
            image_dim: img.module.dim(),
        });
    }
    let sum_n = stage_one.iter().map(|s| s.n).sum();
    if sum_n != data.subgroup.len() {
        return Err(Error::Violation(format!(
            "sum of n_j is {sum_n}, inertia group has order {}",
            data.subgroup.len()
        )));
    }

    let mut stage_two: Vec<StageTwo> = Vec::new();
    for s in &stage_one {
        let up = lift_sub_inclusion_s(&full, &sub, &s.object)?;
        let (local, corner_dim, radical_dim) = kar_is_local(&full, &up)?;
        if !local {
            let witness = kar_decompose(&full, &up)?;
            return Err(Error::Violation(format!(
                "stage-two image splits into {} summands (corner dim {corner_dim})",
                witness.len()
            )));
        }
        let image_dim = functor_t_image(&full, &up)?.module.dim();
        let mut class = None;
        for prev in &stage_two {
            if prev.image_dim == image_dim && kar_is_isomorphic(&full, &prev.object, &up)?.is_some() {
                class = Some(prev.class);
                break;
            }
        }
        let next = stage_two.iter().map(|t| t.class + 1).max().unwrap_or(0);
        stage_two.push(StageTwo {
            object: up,
            corner_dim,
            radical_dim,
            local,
            image_dim,
            class: class.unwrap_or(next),
        });
    }

    let mut non_iso_checks = Vec::new();
    let mut skipped_elements = Vec::new();
    for x in g.elements().filter(|x| !data.subgroup.contains(x)) {
        if !g.normalizes(x, &data.subgroup) {
            skipped_elements.push(x);
            continue;
        }
        for (j, s) in stage_one.iter().enumerate() {
            let moved = lift_aut(&sub, x, &s.object)?;
            if kar_is_isomorphic(&sub, &s.object, &moved)?.is_some() {
                return Err(Error::Violation(format!(
                    "summand {j} is isomorphic to its twist by {x} outside the inertia group"
                )));
            }
            non_iso_checks.push((x, j));
        }
    }

    Ok(CliffordReport {
        group_order: g.order(),
        module_dim: m.dim(),
        inertia: data.subgroup,
        stage_one,
        stage_two,
        sum_n,
        non_iso_checks,
        skipped_elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEnd {
    pub end_dim: usize,
    pub radical_dim: usize,
}

/// For `W` with trivial inertia, `S(W)` stays indecomposable.
pub fn trivial_inertia_check(action: &Arc<GroupAction>, w: &Module) -> Result<LocalEnd> {
    let data = inertia(action, w)?;
    if !data.is_trivial() {
        return Err(Error::InertiaNotTrivial(data.subgroup));
    }
    let cat = OrbitCategory::new(action.clone());
    let whole = KarObject::whole(&cat, w);
    let (local, end_dim, radical_dim) = kar_is_local(&cat, &whole)?;
    if !local {
        let parts = kar_decompose(&cat, &whole)?;
        return Err(Error::Violation(format!(
            "orbit End is not local; idempotent witness {:?}",
            cat.flatten(&parts[0].object.idempotent)
        )));
    }
    Ok(LocalEnd { end_dim, radical_dim })
}

/// For simple `M` with no nontrivial twist isomorphic to `M`, the orbit End of `M` is a skew field.
pub fn skewfield_check(action: &Arc<GroupAction>, m: &Module) -> Result<LocalEnd> {
    if !is_simple(m)? {
        return Err(Error::Precondition("module is not simple".into()));
    }
    let data = inertia(action, m)?;
    if !data.is_trivial() {
        return Err(Error::Hypothesis(format!(
            "twists by {:?} are isomorphic to the module",
            &data.subgroup[1..]
        )));
    }
    let cat = OrbitCategory::new(action.clone());
    let whole = KarObject::whole(&cat, m);
    let (corner, _) = kar_end_algebra(&cat, &whole)?;
    let (plain, _) = end_algebra(m)?;
    let (local, end_dim, radical_dim) = kar_is_local(&cat, &whole)?;
    if corner.dim() != plain.dim() || !local || radical_dim != 0 {
        return Err(Error::Violation(format!(
            "orbit End has dimension {end_dim} (plain {}), local {local}, radical {radical_dim}",
            plain.dim()
        )));
    }
    Ok(LocalEnd { end_dim, radical_dim })
}
