//! Randomized invariants over the small corpus, through the public API.

use std::sync::Arc;

use orbit_clifford::clifford::{clifford_run, inertia};
use orbit_clifford::karoubi::{kar_decompose, KarObject};
use orbit_clifford::oracle::{induce_skew, SkewContext};
use orbit_clifford::orbit::{GroupAction, OrbitCategory, OrbitMor};
use orbit_clifford::rep::{direct_sum, hom_space, is_isomorphic, projective_indecomposables, simple_modules, Module};
use orbit_clifford::{corpus, Field, Mat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn action(i: usize) -> Arc<GroupAction> {
    match i {
        0 => corpus::cyclic_inversion(7, 3),
        1 => corpus::cyclic_inversion(3, 3),
        2 => corpus::mat2_swap(5),
        3 => corpus::kronecker_swap(3),
        4 => corpus::cyclic_power_action(5, 5, 4, 2),
        _ => corpus::frobenius_action(2, 2, 2),
    }
    .unwrap()
}

const ACTIONS: usize = 6;

/// Simples and projective indecomposables of the acted-on algebra.
fn modules(act: &GroupAction) -> Vec<Module> {
    let a = act.algebra();
    let mut out = simple_modules(a).unwrap();
    out.extend(projective_indecomposables(a).unwrap());
    out
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = Mat::from_fn(f, n, n, |_, _| f.from_int(rng.gen_range(0..f.order()) as i64));
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_mor(cat: &OrbitCategory, x: &Module, y: &Module, rng: &mut ChaCha8Rng) -> OrbitMor {
    let hom = cat.hom(x, y).unwrap();
    let f = x.field();
    let coeffs: Vec<_> = (0..hom.dim())
        .map(|_| f.from_int(rng.gen_range(0..f.order()) as i64))
        .collect();
    hom.combination(&coeffs)
}

fn pick<'a>(ms: &'a [Module], rng: &mut ChaCha8Rng) -> &'a Module {
    &ms[rng.gen_range(0..ms.len())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inertia_is_isomorphism_invariant(i in 0..ACTIONS, seed in any::<u64>()) {
        let act = action(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = modules(&act);
        let m = pick(&ms, &mut rng);
        let p = random_invertible(m.field(), m.dim(), &mut rng);
        let n = m.base_change(&p).unwrap();
        prop_assert_eq!(inertia(&act, m).unwrap().subgroup, inertia(&act, &n).unwrap().subgroup);
        let (r, s) = (clifford_run(&act, m).unwrap(), clifford_run(&act, &n).unwrap());
        prop_assert_eq!(r.signature(), s.signature());
    }

    #[test]
    fn multiplicities_sum_to_the_inertia_order(i in 0..ACTIONS, seed in any::<u64>()) {
        let act = action(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = modules(&act);
        let m = pick(&ms, &mut rng);
        let r = clifford_run(&act, m).unwrap();
        prop_assert_eq!(r.sum_n, r.inertia.len());
        prop_assert!(r.all_local());
        prop_assert!(r.stage_one.iter().all(|s| s.local));
    }

    #[test]
    fn orbit_composition_is_associative_and_s_t_are_functors(i in 0..ACTIONS, seed in any::<u64>()) {
        let act = action(i);
        let cat = OrbitCategory::new(act.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = modules(&act);
        let (x, y, z, w) = (pick(&ms, &mut rng), pick(&ms, &mut rng), pick(&ms, &mut rng), pick(&ms, &mut rng));
        let (f, g, h) = (random_mor(&cat, x, y, &mut rng), random_mor(&cat, y, z, &mut rng), random_mor(&cat, z, w, &mut rng));
        let left = cat.compose(&cat.compose(&f, &g).unwrap(), &h).unwrap();
        let right = cat.compose(&f, &cat.compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(cat.flatten(&left), cat.flatten(&right));

        let tgf = cat.functor_t_mor(&cat.compose(&f, &g).unwrap());
        prop_assert_eq!(tgf, cat.functor_t_mor(&g).checked_mul(&cat.functor_t_mor(&f)).unwrap());

        let field = x.field();
        let coeffs = |n: usize, rng: &mut ChaCha8Rng| -> Vec<_> {
            (0..n).map(|_| field.from_int(rng.gen_range(0..field.order()) as i64)).collect()
        };
        let comb = |basis: &[Mat], c: &[_]| {
            let mut m = Mat::zeros(field, basis.first().map_or(0, |b| b.rows()), basis.first().map_or(0, |b| b.cols()));
            for (b, &k) in basis.iter().zip(c) {
                m.add_scaled(k, b);
            }
            m
        };
        let hxy = hom_space(x, y).unwrap();
        let hyz = hom_space(y, z).unwrap();
        if hxy.dim() > 0 && hyz.dim() > 0 {
            let a = comb(&hxy.basis, &coeffs(hxy.dim(), &mut rng));
            let b = comb(&hyz.basis, &coeffs(hyz.dim(), &mut rng));
            let sba = cat.functor_s(x, z, &b.checked_mul(&a).unwrap());
            let composed = cat.compose(&cat.functor_s(x, y, &a), &cat.functor_s(y, z, &b)).unwrap();
            prop_assert_eq!(cat.flatten(&sba), cat.flatten(&composed));
        }
    }

    #[test]
    fn induced_modules_restrict_to_all_twists(i in 0..ACTIONS, seed in any::<u64>()) {
        let act = action(i);
        let ctx = SkewContext::new(act.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = modules(&act);
        let m = pick(&ms, &mut rng);
        let res = ctx.restrict(&induce_skew(&ctx, m).unwrap()).unwrap();
        let twists: Vec<Module> = (0..act.group().order()).map(|g| act.twist(m, g)).collect();
        let sum = direct_sum(act.algebra(), &twists).unwrap();
        prop_assert!(is_isomorphic(&res, &sum.module).unwrap().is_some());
    }

    #[test]
    fn karoubi_decomposition_is_additive(i in 0..ACTIONS, seed in any::<u64>()) {
        let act = action(i);
        let cat = OrbitCategory::new(act.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = modules(&act);
        let (x, y) = (pick(&ms, &mut rng), pick(&ms, &mut rng));
        let count = |m: &Module| kar_decompose(&cat, &KarObject::whole(&cat, m)).unwrap().len();
        let sum = direct_sum(act.algebra(), &[x.clone(), y.clone()]).unwrap();
        let parts = kar_decompose(&cat, &KarObject::whole(&cat, &sum.module)).unwrap();
        prop_assert_eq!(parts.len(), count(x) + count(y));
        prop_assert!(parts.iter().all(|s| s.local));
    }
}
