//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use orbit_clifford::algebra::{group_algebra, matrix_algebra, path_algebra, primitive_orthogonal_idempotents, Quiver};
use orbit_clifford::clifford::{clifford_run, inertia, trivial_inertia_check};
use orbit_clifford::karoubi::{kar_decompose, kar_end_algebra, kar_is_isomorphic, KarObject};
use orbit_clifford::oracle::{
    counit_split_test, galois_monad_group_check, galois_rank_check, induce_skew, oracle_compare, GaloisScenario,
    SkewContext,
};
use orbit_clifford::orbit::{GroupAction, OrbitCategory, OrbitMor};
use orbit_clifford::rep::{decompose, direct_sum, hom_space, is_isomorphic, simple_modules, Module};
use orbit_clifford::{corpus, Field, FiniteGroup, Mat, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

const RANDOM_SEED: u64 = 0x00ac_ce97;

fn criterion_1() -> Check {
    let act = ok(corpus::mat2_swap(5))?;
    let s = corpus::column_module(act.algebra());
    let cat = OrbitCategory::new(act);
    let end_dim = ok(cat.hom(&s, &s))?.dim();
    ensure!(end_dim == 2, "orbit End has dimension {end_dim}");
    let whole = KarObject::whole(&cat, &s);
    let (end, _) = ok(kar_end_algebra(&cat, &whole))?;
    let ids = ok(primitive_orthogonal_idempotents(&end))?;
    ensure!(
        ids.len() == 2 && ids.orthogonal && ids.complete && ids.primitive,
        "idempotents {ids:?}"
    );
    let parts = ok(kar_decompose(&cat, &whole))?;
    ensure!(parts.len() == 2, "{} summands", parts.len());
    ensure!(
        parts.iter().all(|p| p.local && p.corner_dim == 1),
        "summand corners not local of dimension 1"
    );
    ensure!(
        ok(kar_is_isomorphic(&cat, &parts[0].object, &parts[1].object))?.is_none(),
        "the two summands are isomorphic"
    );
    Ok("End dim 2, 2 primitive non-isomorphic summands".into())
}

fn criterion_2() -> Check {
    let act = ok(corpus::kronecker_swap(5))?;
    for v in 0..2 {
        let m = ok(corpus::kronecker_simple(act.algebra(), v))?;
        ensure!(
            ok(is_isomorphic(&act.twist(&m, 1), &m))?.is_some(),
            "simple {v} is moved by the swap"
        );
        let r = ok(clifford_run(&act, &m))?;
        ensure!(r.inertia == vec![0, 1], "inertia of simple {v} is {:?}", r.inertia);
        ensure!(r.sum_n == 2, "sum n_j = {}", r.sum_n);
        ensure!(r.all_local(), "a stage-two certificate is not local");
    }
    Ok("both simples have inertia C2, all certificates local".into())
}

fn criterion_3() -> Check {
    let act = ok(corpus::cyclic_inversion(7, 3))?;
    let ctx = ok(SkewContext::new(act.clone()))?;
    let chi = ok(corpus::character(act.algebra(), 2))?;
    ensure!(ok(inertia(&act, &chi))?.is_trivial(), "χ has nontrivial inertia");
    let local = ok(trivial_inertia_check(&act, &chi))?;
    ensure!(local.end_dim == 1, "orbit End of χ has dimension {}", local.end_dim);

    let triv = ok(corpus::character(act.algebra(), 1))?;
    let r = ok(clifford_run(&act, &triv))?;
    ensure!(
        r.inertia == vec![0, 1],
        "inertia of the trivial module is {:?}",
        r.inertia
    );
    let ns: Vec<usize> = r.stage_one.iter().map(|s| s.n).collect();
    ensure!(ns == vec![1, 1] && r.sum_n == 2, "n_j = {ns:?}");

    for w in [1, 2, 4] {
        let m = ok(corpus::character(act.algebra(), w))?;
        let r = ok(clifford_run(&act, &m))?;
        let cmp = ok(oracle_compare(&r, &ctx, &m))?;
        ensure!(
            cmp.skipped.is_none() && cmp.agree,
            "oracle disagrees for g -> {w}: {cmp:?}"
        );
    }
    Ok("χ trivial inertia, trivial module n = [1, 1], oracle agrees".into())
}

fn criterion_4() -> Check {
    let act = ok(corpus::cyclic_inversion(3, 3))?;
    let ctx = ok(SkewContext::new(act.clone()))?;
    let mut dims = Vec::new();
    for k in 1..=3 {
        let m = ok(corpus::uniserial(act.algebra(), k))?;
        let r = ok(clifford_run(&act, &m))?;
        ensure!(
            r.sum_n == r.inertia.len(),
            "sum n_j {} vs |Γ_M| {}",
            r.sum_n,
            r.inertia.len()
        );
        ensure!(r.all_local(), "non-local certificate for dimension {k}");
        let cmp = ok(oracle_compare(&r, &ctx, &m))?;
        ensure!(
            cmp.skipped.is_none() && cmp.agree,
            "oracle disagrees for dimension {k}: {cmp:?}"
        );
        dims.push(m.dim());
    }
    Ok(format!("indecomposables of dimensions {dims:?} pass"))
}

fn random_mor(
    cat: &OrbitCategory,
    x: &Module,
    y: &Module,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<OrbitMor, String> {
    let hom = ok(cat.hom(x, y))?;
    let q = x.field().order();
    let coeffs: Vec<Scalar> = (0..hom.dim())
        .map(|_| x.field().from_int(rng.gen_range(0..q) as i64))
        .collect();
    Ok(hom.combination(&coeffs))
}

/// (category, objects) over C2, C3, C4 and C2 x C2 on five algebras.
fn law_corpus() -> std::result::Result<Vec<(OrbitCategory, Vec<Module>)>, String> {
    let mut out = Vec::new();
    let act = ok(corpus::cyclic_inversion(7, 3))?;
    let a = act.algebra().clone();
    out.push((
        OrbitCategory::new(act),
        vec![
            ok(corpus::character(&a, 1))?,
            ok(corpus::character(&a, 2))?,
            Module::regular(a),
        ],
    ));
    for act in [ok(corpus::mat2_swap(5))?, ok(corpus::mat2_klein(5))?] {
        let s = corpus::column_module(act.algebra());
        let reg = Module::regular(act.algebra().clone());
        out.push((OrbitCategory::new(act), vec![s, reg]));
    }
    let c4 = ok(corpus::cyclic_power_action(5, 5, 2, 4))?;
    let a = c4.algebra().clone();
    out.push((
        OrbitCategory::new(c4),
        vec![
            ok(corpus::uniserial(&a, 1))?,
            ok(corpus::uniserial(&a, 2))?,
            ok(corpus::uniserial(&a, 4))?,
        ],
    ));
    let c3 = ok(corpus::cyclic_power_action(2, 7, 2, 3))?;
    let a = c3.algebra().clone();
    out.push((OrbitCategory::new(c3), vec![Module::regular(a)]));
    let kr = ok(corpus::kronecker_swap(5))?;
    let a = kr.algebra().clone();
    let f = a.field().clone();
    let band = ok(corpus::kronecker_rep(
        &a,
        1,
        1,
        &Mat::identity(&f, 1),
        &Mat::from_ints(&f, 1, 1, &[2]),
    ))?;
    out.push((
        OrbitCategory::new(kr),
        vec![
            ok(corpus::kronecker_simple(&a, 0))?,
            ok(corpus::kronecker_simple(&a, 1))?,
            band,
        ],
    ));
    Ok(out)
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut samples = 0usize;
    let mut algebras = 0usize;
    let mut orders = Vec::new();
    for (cat, objs) in law_corpus()? {
        algebras += 1;
        orders.push(cat.group().order());
        for x in &objs {
            let tx = ok(cat.functor_t_obj(x))?;
            let eta = cat.unit(x);
            let eps = ok(cat.counit(x))?;
            let s_eta = cat.functor_s(x, &tx, &eta);
            ensure!(ok(cat.compose(&s_eta, &eps))? == cat.identity(x), "(εS)(Sη) ≠ id");
            ensure!(
                (&cat.functor_t_mor(&eps) * &cat.unit(&tx)).is_identity(),
                "(Tε)(ηT) ≠ id"
            );
            let sec = ok(cat.right_inverse(&eps))?.ok_or("counit has no section")?;
            ensure!(ok(cat.compose(&sec, &eps))? == cat.identity(x), "counit section fails");
            for g in cat.elements().to_vec() {
                // v: X -> Ê_g X and u back
                let (u, v) = cat.twist_iso(g, x);
                ensure!(ok(cat.compose(&v, &u))? == cat.identity(x), "Ê_g X ≅ X fails on X");
                ensure!(
                    ok(cat.compose(&u, &v))? == cat.identity(&cat.twist(x, g)),
                    "Ê_g X ≅ X fails on Ê_g X"
                );
            }
            for y in &objs {
                for _ in 0..3 {
                    let f = random_mor(&cat, x, y, &mut rng)?;
                    let big = cat.kleisli_psi(&f);
                    ensure!(cat.kleisli_phi(x, y, &big) == f, "φ(ψ(f)) ≠ f");
                    let ty = ok(cat.functor_t_obj(y))?;
                    let hb = ok(hom_space(x, &ty))?;
                    if !hb.basis.is_empty() {
                        let b = &hb.basis[rng.gen_range(0..hb.dim())];
                        // B: X -> TY gives the component family of an orbit morphism and back through η
                        let back = &cat.kleisli_psi(&cat.kleisli_phi(x, y, b)) * &cat.unit(x);
                        ensure!(back == *b, "ψ(φ(B)) η ≠ B");
                    }
                    for g in cat.elements().to_vec() {
                        // Ê_g is naturally isomorphic to the identity through the twist isomorphisms
                        let (ux, _) = cat.twist_iso(g, x);
                        let (_, vy) = cat.twist_iso(g, y);
                        let conj = ok(cat.compose(&ok(cat.compose(&ux, &f))?, &vy))?;
                        ensure!(ok(cat.lifted_aut(g, &f))? == conj, "Ê_g(f) is not conjugate to f");
                    }
                    samples += 1;
                }
            }
        }
    }
    orders.sort();
    orders.dedup();
    ensure!(samples >= 50, "only {samples} samples");
    ensure!(algebras >= 4, "only {algebras} algebras");
    ensure!(orders == vec![2, 3, 4], "group orders {orders:?}");
    Ok(format!("{samples} samples over {algebras} actions"))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED ^ 6);
    let mut subgroups = 0;
    let mut coherence = 0;
    let actions = [ok(corpus::cyclic_power_action(5, 5, 2, 4))?, ok(corpus::mat2_klein(5))?];
    for act in actions {
        let full = OrbitCategory::new(act.clone());
        let objs = if act.algebra().dim() == 5 {
            vec![
                ok(corpus::uniserial(act.algebra(), 2))?,
                ok(corpus::uniserial(act.algebra(), 3))?,
            ]
        } else {
            vec![
                corpus::column_module(act.algebra()),
                Module::regular(act.algebra().clone()),
            ]
        };
        for sub_elems in full.group().subgroups() {
            subgroups += 1;
            let sub = ok(OrbitCategory::with_subgroup(act.clone(), &sub_elems))?;
            let reps = ok(full.coset_reps(&sub))?;
            for x in &objs {
                for y in &objs {
                    for b in ok(hom_space(x, y))?.basis.iter().take(3) {
                        let through = ok(full.sub_inclusion_s(&sub, &sub.functor_s(x, y, b)))?;
                        ensure!(
                            full.functor_s(x, y, b) == through,
                            "S_Γ ≠ S[Γ^0] S[Γ₀] on {sub_elems:?}"
                        );
                    }
                    let f = random_mor(&full, x, y, &mut rng)?;
                    let t0 = sub.functor_t_mor(&ok(full.sub_restriction_t(&sub, &reps, &f))?);
                    let px = ok(full.factorization_permutation(&sub, &reps, x.dim()))?;
                    let py = ok(full.factorization_permutation(&sub, &reps, y.dim()))?;
                    ensure!(
                        &py * &t0 == &full.functor_t_mor(&f) * &px,
                        "T_Γ ≠ T[Γ₀] T[Γ^0] on {sub_elems:?}"
                    );
                }
            }
        }
        let g = full.group().clone();
        for x in &objs {
            for a in g.elements() {
                let nu = full.adjuster_nu(a, x);
                for h in g.elements() {
                    let lhs = full.adjuster_nu(g.mul(h, a), x);
                    let rhs = ok(full.compose(&nu, &full.adjuster_nu(h, &full.twist(x, a))))?;
                    ensure!(lhs == rhs, "adjuster coherence fails at ({h}, {a})");
                    coherence += 1;
                }
            }
        }
    }
    Ok(format!("{subgroups} subgroups, {coherence} adjuster identities"))
}

fn criterion_7() -> Check {
    let sc = GaloisScenario {
        q: 3,
        deg_l: 2,
        deg_m: 4,
        group: FiniteGroup::cyclic(4),
        phi: vec![0, 1, 2, 3],
        h: vec![0, 2],
    };
    let rank = ok(galois_rank_check(&sc))?;
    ensure!(
        rank.expected_rank == 4 && rank.free,
        "restriction is not free of rank 4: {rank:?}"
    );
    let mg = ok(galois_monad_group_check(&sc))?;
    ensure!(mg.order == 4, "monad group has order {}", mg.order);
    ensure!(
        mg.labelling.is_some(),
        "composition table differs from Δ ⋊ G/H at {:?}",
        mg.mismatch
    );
    let klein = (0..4).all(|x| mg.table[x][x] == 0) && (0..4).all(|x| (0..4).all(|y| mg.table[x][y] == mg.table[y][x]));
    ensure!(klein, "monad group is not C2 x C2");
    Ok(format!(
        "free of rank 4, C2 x C2 table, {} functor samples",
        mg.functor_samples
    ))
}

fn criterion_8() -> Check {
    let mut split = 0;
    let contexts = [
        ok(corpus::cyclic_inversion(7, 3))?,
        ok(corpus::cyclic_inversion(3, 3))?,
        ok(corpus::mat2_swap(5))?,
        ok(corpus::kronecker_swap(5))?,
    ];
    for act in contexts {
        let ctx = ok(SkewContext::new(act.clone()))?;
        let mut xs = ok(simple_modules(&ctx.skew))?;
        for m in ok(simple_modules(act.algebra()))? {
            xs.push(ok(induce_skew(&ctx, &m))?);
        }
        for x in &xs {
            ensure!(
                ok(counit_split_test(&ctx, x))?,
                "counit does not split on a module of dimension {}",
                x.dim()
            );
            split += 1;
        }
    }
    let f2 = Field::prime(2).map_err(|e| e.to_string())?;
    let a = Arc::new(group_algebra(&f2, &FiniteGroup::trivial()));
    let auts = vec![orbit_clifford::algebra::AlgebraAut::identity(&a); 2];
    let c2 = ok(GroupAction::new(a, FiniteGroup::cyclic(2), auts))?;
    let ctx = ok(SkewContext::new(Arc::new(c2)))?;
    let triv = ok(Module::new(ctx.skew.clone(), vec![Mat::identity(&f2, 1); 2]))?;
    ensure!(
        !ok(counit_split_test(&ctx, &triv))?,
        "counit splits on the p = 2 witness"
    );
    Ok(format!("{split} split samples, p = 2 witness does not split"))
}

// brute-force Krull-Schmidt oracle

const EXHAUSTIVE_LIMIT: u64 = 20_000;

fn lin_comb(f: &Field, basis: &[Mat], c: &[Scalar], n: usize) -> Mat {
    let mut out = Mat::zeros(f, n, n);
    for (b, &x) in basis.iter().zip(c) {
        out.add_scaled(x, b);
    }
    out
}

/// Splits `m` along a non-primary endomorphism if one of the candidates is.
fn fitting_split(m: &Module, basis: &[Mat]) -> std::result::Result<Option<(Module, Module)>, String> {
    let f = m.field();
    let n = m.dim();
    let mut candidates: Vec<Mat> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let mut s = basis[i].clone();
            s.add_scaled(f.one(), &basis[j]);
            candidates.push(s);
        }
    }
    let shifts: Vec<Mat> = candidates
        .iter()
        .flat_map(|c| {
            f.elements().skip(1).map(move |a| {
                let mut s = c.clone();
                s.add_scaled(a, &Mat::identity(f, n));
                s
            })
        })
        .collect();
    candidates.extend(shifts);
    for phi in &candidates {
        let mp = ok(phi.min_poly())?;
        let factors = ok(mp.factor())?;
        if factors.len() < 2 {
            continue;
        }
        let (p, e) = &factors[0];
        let head = p.pow(*e);
        let rest = mp.divrem(&head).0;
        let k1 = head.eval_mat(phi).null_space();
        let k2 = rest.eval_mat(phi).null_space();
        let (a, _) = ok(m.submodule(&k1))?;
        let (b, _) = ok(m.submodule(&k2))?;
        if a.dim() + b.dim() != n || a.dim() == 0 || b.dim() == 0 {
            return Err("Fitting split does not add up".into());
        }
        return Ok(Some((a, b)));
    }
    Ok(None)
}

/// An idempotent other than 0 and 1 found by enumerating End, if End is small.
fn exhaustive_idempotent(m: &Module, basis: &[Mat]) -> Option<Option<Mat>> {
    let f = m.field();
    let q = f.order();
    let k = basis.len() as u32;
    if q.checked_pow(k).is_none_or(|t| t > EXHAUSTIVE_LIMIT) {
        return None;
    }
    let total = q.pow(k);
    for idx in 0..total {
        let mut r = idx;
        let c: Vec<Scalar> = (0..k)
            .map(|_| {
                let d = r % q;
                r /= q;
                f.from_int(d as i64)
            })
            .collect();
        let e = lin_comb(f, basis, &c, m.dim());
        if !e.is_zero() && !e.is_identity() && &e * &e == e {
            return Some(Some(e));
        }
    }
    Some(None)
}

#[derive(Default)]
struct BruteStats {
    exhaustive_leaves: usize,
    heuristic_leaves: usize,
}

fn brute_force_count(m: &Module, stats: &mut BruteStats) -> std::result::Result<usize, String> {
    if m.dim() == 0 {
        return Ok(0);
    }
    let basis = ok(hom_space(m, m))?.basis;
    if let Some((a, b)) = fitting_split(m, &basis)? {
        return Ok(brute_force_count(&a, stats)? + brute_force_count(&b, stats)?);
    }
    match exhaustive_idempotent(m, &basis) {
        Some(Some(e)) => {
            let id = Mat::identity(m.field(), m.dim());
            let mut c = id.clone();
            c.add_scaled(m.field().from_int(-1), &e);
            let (a, _) = ok(m.submodule(&cols(&e)))?;
            let (b, _) = ok(m.submodule(&cols(&c)))?;
            Ok(brute_force_count(&a, stats)? + brute_force_count(&b, stats)?)
        }
        Some(None) => {
            stats.exhaustive_leaves += 1;
            Ok(1)
        }
        None => {
            stats.heuristic_leaves += 1;
            Ok(1)
        }
    }
}

fn cols(m: &Mat) -> Vec<Vec<Scalar>> {
    (0..m.cols())
        .map(|j| m.col(j))
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect()
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = Mat::from_fn(f, n, n, |_, _| f.from_int(rng.gen_range(0..f.order()) as i64));
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_vec(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| f.from_int(rng.gen_range(0..f.order()) as i64)).collect()
}

/// A random piece: a cyclic submodule or quotient of the regular module, or a
/// random Kronecker representation.
fn random_piece(
    a: &Arc<orbit_clifford::algebra::Algebra>,
    kronecker: bool,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<Module, String> {
    let f = a.field();
    if kronecker {
        let (d0, d1) = (rng.gen_range(0..3), rng.gen_range(1..3));
        let ma = Mat::from_fn(f, d0, d1, |_, _| f.from_int(rng.gen_range(0..f.order()) as i64));
        let mb = Mat::from_fn(f, d0, d1, |_, _| f.from_int(rng.gen_range(0..f.order()) as i64));
        return ok(corpus::kronecker_rep(a, d0, d1, &ma, &mb));
    }
    let reg = Module::regular(a.clone());
    let v = random_vec(f, reg.dim(), rng);
    let span = reg.spin(&v);
    if span.dim() == 0 || span.dim() == reg.dim() || rng.gen_bool(0.5) {
        if span.dim() == 0 {
            return Ok(reg);
        }
        return Ok(ok(reg.submodule(span.basis()))?.0);
    }
    Ok(ok(reg.quotient(span.basis()))?.0)
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED ^ 9);
    let s3 = ok(FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]))?;
    let f = |p| Field::prime(p).unwrap();
    let algebras: Vec<(Arc<orbit_clifford::algebra::Algebra>, bool)> = vec![
        (Arc::new(group_algebra(&f(7), &FiniteGroup::cyclic(3))), false),
        (Arc::new(group_algebra(&f(3), &FiniteGroup::cyclic(3))), false),
        (Arc::new(group_algebra(&f(2), &s3)), false),
        (Arc::new(group_algebra(&f(5), &FiniteGroup::cyclic(5))), false),
        (Arc::new(ok(matrix_algebra(&f(5), 2))?), false),
        (Arc::new(ok(path_algebra(&f(5), &Quiver::kronecker(), &[]))?), true),
    ];
    let mut modules = Vec::new();
    let mut stats = BruteStats::default();
    while modules.len() < 100 {
        let (a, kr) = &algebras[modules.len() % algebras.len()];
        let mut parts = vec![random_piece(a, *kr, &mut rng)?];
        if rng.gen_bool(0.5) {
            parts.push(random_piece(a, *kr, &mut rng)?);
        }
        let sum = ok(direct_sum(a, &parts))?.module;
        if sum.dim() == 0 || sum.dim() > 12 {
            continue;
        }
        let p = random_invertible(a.field(), sum.dim(), &mut rng);
        modules.push(ok(sum.base_change(&p))?);
    }
    for (i, m) in modules.iter().enumerate() {
        let d = ok(decompose(m))?;
        let n = m.dim();
        let fld = m.field();
        let mut total = Mat::zeros(fld, n, n);
        for (j, s) in d.summands.iter().enumerate() {
            let end = ok(orbit_clifford::rep::end_algebra(&s.module))?.0;
            ensure!(
                ok(orbit_clifford::algebra::is_local(&end))?,
                "module {i}: summand {j} has non-local End"
            );
            ensure!((&s.projection * &s.inclusion).is_identity(), "module {i}: p_j i_j ≠ 1");
            for (k, t) in d.summands.iter().enumerate() {
                if k != j {
                    ensure!((&t.projection * &s.inclusion).is_zero(), "module {i}: p_k i_j ≠ 0");
                }
            }
            total.add_scaled(fld.one(), &(&s.inclusion * &s.projection));
        }
        ensure!(total.is_identity(), "module {i}: Σ i_j p_j ≠ 1");
        let brute = brute_force_count(m, &mut stats)?;
        ensure!(
            brute == d.summands.len(),
            "module {i}: brute force {brute}, decompose {}",
            d.summands.len()
        );
    }
    let mut unions = 0;
    // module i was built over algebras[i % len], so i and i + len share an algebra
    for (m, n) in modules.iter().zip(modules.iter().skip(algebras.len())) {
        if !m.same_algebra(n) || m.dim() + n.dim() > 12 {
            continue;
        }
        let sum = ok(direct_sum(m.algebra(), &[m.clone(), n.clone()]))?.module;
        let whole = ok(decompose(&sum))?;
        let mut pool: Vec<Module> = ok(decompose(m))?.summands.into_iter().map(|s| s.module).collect();
        pool.extend(ok(decompose(n))?.summands.into_iter().map(|s| s.module));
        ensure!(
            pool.len() == whole.summands.len(),
            "summand counts differ for a direct sum"
        );
        for s in &whole.summands {
            let mut hit = None;
            for (k, p) in pool.iter().enumerate() {
                if ok(is_isomorphic(&s.module, p))?.is_some() {
                    hit = Some(k);
                    break;
                }
            }
            let k = hit.ok_or("a summand of M ⊕ N matches nothing in the union")?;
            pool.swap_remove(k);
        }
        unions += 1;
    }
    ensure!(unions >= 20, "only {unions} direct-sum unions fit in dimension 12");
    Ok(format!(
        "{} modules, {unions} direct-sum unions, brute-force leaves {} exhaustive / {} by Fitting only",
        modules.len(),
        stats.exhaustive_leaves,
        stats.heuristic_leaves
    ))
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "Mat2(F5) swap: End K x K splits",
            budget: Duration::from_secs(1),
            run: criterion_1,
        },
        Criterion {
            id: 2,
            name: "Kronecker arrow swap",
            budget: Duration::from_secs(1),
            run: criterion_2,
        },
        Criterion {
            id: 3,
            name: "F7C3 inversion and F7S3 oracle",
            budget: Duration::from_secs(2),
            run: criterion_3,
        },
        Criterion {
            id: 4,
            name: "F3C3 inversion, coprime index",
            budget: Duration::from_secs(2),
            run: criterion_4,
        },
        Criterion {
            id: 5,
            name: "adjunction law suite",
            budget: Duration::from_secs(10),
            run: criterion_5,
        },
        Criterion {
            id: 6,
            name: "subgroup factorization",
            budget: Duration::from_secs(5),
            run: criterion_6,
        },
        Criterion {
            id: 7,
            name: "Galois tower F3 < F9 < F81",
            budget: Duration::from_secs(2),
            run: criterion_7,
        },
        Criterion {
            id: 8,
            name: "split counit criterion",
            budget: Duration::from_secs(1),
            run: criterion_8,
        },
        Criterion {
            id: 9,
            name: "Krull-Schmidt engine soundness",
            budget: Duration::from_secs(30),
            run: criterion_9,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}]: {} ({} ms, budget {} ms) {}",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            c.budget.as_millis(),
            detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
