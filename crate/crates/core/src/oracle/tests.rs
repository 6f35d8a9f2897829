use std::sync::Arc;

use super::*;
use crate::algebra::{group_algebra, radical};
use crate::clifford::clifford_run;
use crate::corpus;
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::orbit::OrbitCategory;
use crate::rep::{direct_sum, is_isomorphic, is_simple, simple_modules};

#[test]
fn skew_context_checks() {
    for act in [
        corpus::cyclic_inversion(7, 3).unwrap(),
        corpus::mat2_klein(5).unwrap(),
        corpus::kronecker_swap(3).unwrap(),
    ] {
        let ctx = SkewContext::new(act.clone()).unwrap();
        assert_eq!(ctx.skew.dim(), act.algebra().dim() * act.group().order());
    }
}

#[test]
fn induction_examples() {
    let act = corpus::cyclic_inversion(7, 3).unwrap();
    let ctx = SkewContext::new(act.clone()).unwrap();
    let chi = corpus::character(act.algebra(), 2).unwrap();
    let ind = induce_skew(&ctx, &chi).unwrap();
    assert_eq!(ind.dim(), 2);
    assert!(is_simple(&ind).unwrap());
    // Mackey: the restriction is exactly T(χ), which is χ ⊕ χ²
    let res = ctx.restrict(&ind).unwrap();
    let cat = OrbitCategory::new(act.clone());
    assert_eq!(res, cat.functor_t_obj(&chi).unwrap());
    let chi2 = corpus::character(act.algebra(), 4).unwrap();
    let sum = direct_sum(act.algebra(), &[chi.clone(), chi2]).unwrap().module;
    assert!(is_isomorphic(&res, &sum).unwrap().is_some());

    let triv = Arc::new(GroupAction::trivial(act.algebra().clone()));
    let ctx1 = SkewContext::new(triv).unwrap();
    let same = induce_skew(&ctx1, &chi).unwrap();
    assert_eq!(same.action(), chi.action());
}

#[test]
fn skew_algebra_is_group_algebra_of_s3() {
    // the skew algebra of inversion on F7C3 has two 1-dim and one 2-dim simple
    let act = corpus::cyclic_inversion(7, 3).unwrap();
    let ctx = SkewContext::new(act).unwrap();
    let mut dims: Vec<usize> = simple_modules(&ctx.skew).unwrap().iter().map(|m| m.dim()).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2]);
}

#[test]
fn oracle_agrees_on_corpus() {
    let act = corpus::cyclic_inversion(7, 3).unwrap();
    let ctx = SkewContext::new(act.clone()).unwrap();
    for (w, sig) in [(2, vec![(2, 1)]), (1, vec![(1, 1), (1, 1)])] {
        let m = corpus::character(act.algebra(), w).unwrap();
        let r = clifford_run(&act, &m).unwrap();
        let cmp = oracle_compare(&r, &ctx, &m).unwrap();
        assert!(cmp.agree, "{cmp:?}");
        assert_eq!(cmp.skew_signature, sig);
    }
    let act = corpus::cyclic_inversion(3, 3).unwrap();
    let ctx = SkewContext::new(act.clone()).unwrap();
    for k in 1..=3 {
        let m = corpus::uniserial(act.algebra(), k).unwrap();
        let r = clifford_run(&act, &m).unwrap();
        let cmp = oracle_compare(&r, &ctx, &m).unwrap();
        assert!(cmp.skipped.is_none());
        assert!(cmp.agree, "{cmp:?}");
    }
}

#[test]
fn oracle_skips_modular_index() {
    let act = corpus::cyclic_inversion(2, 3).unwrap();
    let ctx = SkewContext::new(act.clone()).unwrap();
    let m = Module::regular(act.algebra().clone());
    let m = decompose(&m).unwrap().summands[0].module.clone();
    let r = clifford_run(&act, &m).unwrap();
    let cmp = oracle_compare(&r, &ctx, &m).unwrap();
    assert_eq!(cmp.skipped.as_deref(), Some("counit not split"));
}

#[test]
fn counit_split_examples() {
    let act = corpus::cyclic_inversion(7, 3).unwrap();
    let ctx = SkewContext::new(act.clone()).unwrap();
    for x in simple_modules(&ctx.skew).unwrap() {
        assert!(counit_split_test(&ctx, &x).unwrap());
    }
    assert!(counit_split_test(&ctx, &Module::regular(ctx.skew.clone())).unwrap());

    let f2 = Field::prime(2).unwrap();
    let a = Arc::new(group_algebra(&f2, &FiniteGroup::trivial()));
    let c2 = GroupAction::new(
        a.clone(),
        FiniteGroup::cyclic(2),
        vec![crate::algebra::AlgebraAut::identity(&a); 2],
    )
    .unwrap();
    let ctx = SkewContext::new(Arc::new(c2)).unwrap();
    let triv = Module::new(ctx.skew.clone(), vec![Mat::identity(&f2, 1); 2]).unwrap();
    assert!(!counit_split_test(&ctx, &triv).unwrap());

    let t = Arc::new(GroupAction::trivial(act.algebra().clone()));
    let ctx = SkewContext::new(t).unwrap();
    let x = Module::regular(ctx.skew.clone());
    assert!(counit_split_test(&ctx, &x).unwrap());
}

fn q3_scenario() -> GaloisScenario {
    GaloisScenario {
        q: 3,
        deg_l: 2,
        deg_m: 4,
        group: FiniteGroup::cyclic(4),
        phi: vec![0, 1, 2, 3],
        h: vec![0, 2],
    }
}

#[test]
fn galois_build_examples() {
    let alg = galois_build(&q3_scenario()).unwrap();
    assert_eq!((alg.big.dim(), alg.small.dim()), (16, 4));

    let degenerate = GaloisScenario {
        q: 3,
        deg_l: 1,
        deg_m: 2,
        group: FiniteGroup::cyclic(2),
        phi: vec![0, 1],
        h: vec![0],
    };
    assert_eq!(galois_build(&degenerate).unwrap().small.dim(), 1);

    let sc = GaloisScenario {
        q: 5,
        deg_l: 1,
        deg_m: 2,
        group: FiniteGroup::cyclic(2),
        phi: vec![0, 1],
        h: vec![0, 1],
    };
    let alg = galois_build(&sc).unwrap();
    assert_eq!(radical(&alg.big).unwrap().dim(), 0);
    let nat = natural_module(&sc, &alg).unwrap();
    assert_eq!(nat.dim(), 2);
    assert!(is_simple(&nat).unwrap());
}

#[test]
fn galois_hypotheses_are_named() {
    let mut sc = q3_scenario();
    sc.deg_l = 3;
    assert!(matches!(galois_build(&sc), Err(Error::Hypothesis(m)) if m.contains("intermediate")));
    let mut sc = q3_scenario();
    sc.phi = vec![0, 1, 1, 3];
    assert!(matches!(galois_build(&sc), Err(Error::Hypothesis(m)) if m.contains("homomorphism")));
    let mut sc = q3_scenario();
    sc.h = vec![0, 1];
    assert!(matches!(galois_build(&sc), Err(Error::Hypothesis(m)) if m.contains("normal")));
}

#[test]
fn galois_rank_examples() {
    let r = galois_rank_check(&q3_scenario()).unwrap();
    assert_eq!(r.expected_rank, 4);
    assert!(r.free);
    let same = GaloisScenario {
        q: 2,
        deg_l: 3,
        deg_m: 3,
        group: FiniteGroup::cyclic(3),
        phi: vec![0, 1, 2],
        h: vec![0, 1, 2],
    };
    let r = galois_rank_check(&same).unwrap();
    assert_eq!(r.expected_rank, 1);
    assert!(r.free);
    let sc = GaloisScenario {
        q: 5,
        deg_l: 1,
        deg_m: 2,
        group: FiniteGroup::cyclic(2),
        phi: vec![0, 1],
        h: vec![0, 1],
    };
    let r = galois_rank_check(&sc).unwrap();
    assert_eq!(r.expected_rank, 2);
    assert!(r.free);
}

#[test]
fn galois_monad_group_examples() {
    let r = galois_monad_group_check(&q3_scenario()).unwrap();
    assert_eq!(r.order, 4);
    assert_eq!(r.labelling, Some(1));
    // Klein four: every element squares to the identity
    assert!((0..4).all(|x| r.table[x][x] == 0));
    assert_eq!(r.functor_samples, 3 * 16);

    let trivial = GaloisScenario {
        q: 5,
        deg_l: 1,
        deg_m: 1,
        group: FiniteGroup::trivial(),
        phi: vec![0],
        h: vec![0],
    };
    let r = galois_monad_group_check(&trivial).unwrap();
    assert_eq!(r.table, vec![vec![0]]);

    let wild = GaloisScenario {
        q: 3,
        deg_l: 1,
        deg_m: 3,
        group: FiniteGroup::cyclic(3),
        phi: vec![0, 1, 2],
        h: vec![0, 1, 2],
    };
    assert!(matches!(galois_monad_group_check(&wild), Err(Error::Precondition(_))));
}

#[test]
fn normal_basis_f81() {
    let theta = normal_basis(3, 4).unwrap();
    let big = Field::new(3, 4).unwrap();
    let fq = Field::prime(3).unwrap();
    let conj: Vec<Vec<crate::field::Scalar>> = (0..4u32)
        .map(|i| {
            big.to_coeffs(big.pow(theta, 3u64.pow(i)))
                .into_iter()
                .map(|c| fq.from_int(c as i64))
                .collect()
        })
        .collect();
    assert_eq!(crate::mat::Subspace::span(&fq, 4, &conj).dim(), 4);
    // every earlier element fails
    assert!(big.elements().take_while(|&z| z != theta).all(|z| {
        let v: Vec<Vec<crate::field::Scalar>> = (0..4u32)
            .map(|i| {
                big.to_coeffs(big.pow(z, 3u64.pow(i)))
                    .into_iter()
                    .map(|c| fq.from_int(c as i64))
                    .collect()
            })
            .collect();
        crate::mat::Subspace::span(&fq, 4, &v).dim() < 4
    }));
}

#[test]
fn monad_group_follows_roots_of_unity() {
    // F4 < F64 with G = C6, H = C3: the eigenlines are permuted by Frobenius on
    // the cube roots of unity, so the composition law is non-abelian
    let sc = GaloisScenario {
        q: 2,
        deg_l: 2,
        deg_m: 6,
        group: FiniteGroup::cyclic(6),
        phi: (0..6).collect(),
        h: vec![0, 2, 4],
    };
    let r = galois_monad_group_check(&sc).unwrap();
    assert_eq!(r.order, 6);
    assert_eq!(r.functor_samples, 4 * 36);
    assert!((0..6).any(|x| (0..6).any(|y| r.table[x][y] != r.table[y][x])));
    assert_eq!(r.labelling, None);
    assert_eq!(r.mismatch, Some((1, 2)));
}
