//! Task execution. Each task produces a list of facts; facts marked as checks
//! must hold, and the scenario's `expect` map pins further values.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use orbit_clifford::clifford::{clifford_run, skewfield_check, trivial_inertia_check, CliffordReport};
use orbit_clifford::oracle::{
    counit_split_test, galois_build, galois_monad_group_check, galois_rank_check, oracle_compare, GaloisScenario,
    SkewContext,
};
use orbit_clifford::orbit::{GroupAction, OrbitCategory, OrbitMor};
use orbit_clifford::rep::{decompose, hom_space, Module};
use serde::Serialize;
use serde_json::{json, Value};

use crate::scenario::{Built, TaskKind};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Fact {
    pub key: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    /// The value must be `true` unless the scenario expects otherwise.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub check: bool,
}

fn fact(key: impl Into<String>, value: impl Into<Value>, cert: impl Into<String>) -> Fact {
    Fact {
        key: key.into(),
        value: value.into(),
        certificate: Some(cert.into()),
        check: false,
    }
}

fn plain(key: impl Into<String>, value: impl Into<Value>) -> Fact {
    Fact {
        key: key.into(),
        value: value.into(),
        certificate: None,
        check: false,
    }
}

fn check(key: impl Into<String>, ok: bool, cert: impl Into<String>) -> Fact {
    Fact {
        check: true,
        ..fact(key, ok, cert)
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskResult {
    pub task: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub status: Status,
    pub facts: Vec<Fact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

type Outcome = std::result::Result<Vec<Fact>, String>;

fn err(e: orbit_clifford::Error) -> String {
    e.to_string()
}

/// Compares the outcome with the checks and the expectations.
fn judge(outcome: Outcome, expect: &BTreeMap<String, Value>) -> (Status, Vec<Fact>, Option<String>, Vec<String>) {
    let mut failures = Vec::new();
    let wanted_error = expect.get("error");
    let (facts, error) = match outcome {
        Err(msg) => {
            match wanted_error {
                Some(Value::String(s)) if msg.contains(s.as_str()) => {}
                Some(w) => failures.push(format!("error {msg:?} does not match the expected {w}")),
                None => failures.push(format!("error: {msg}")),
            }
            (Vec::new(), Some(msg))
        }
        Ok(facts) => {
            if let Some(w) = wanted_error {
                failures.push(format!("expected an error matching {w}, but the task succeeded"));
            }
            for (k, v) in expect.iter().filter(|(k, _)| *k != "error") {
                match facts.iter().find(|f| f.key == *k) {
                    None => failures.push(format!("expected fact {k:?} is missing")),
                    Some(f) if f.value != *v => failures.push(format!("{k}: expected {v}, got {}", f.value)),
                    Some(_) => {}
                }
            }
            for f in facts.iter().filter(|f| f.check && !expect.contains_key(&f.key)) {
                if f.value != Value::Bool(true) {
                    failures.push(format!("check failed: {}", f.key));
                }
            }
            (facts, None)
        }
    };
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    (status, facts, error, failures)
}

/// Runs every task in order; failures are collected, never short-circuited.
pub fn run_all(built: &Built, timing: bool) -> Vec<TaskResult> {
    let mut out = Vec::new();
    for (i, spec) in built.scenario.tasks.iter().enumerate() {
        let selected: Vec<&(String, Module)> = built
            .modules
            .iter()
            .filter(|(n, _)| spec.modules.as_ref().is_none_or(|names| names.contains(n)))
            .collect();
        let mut push = |target: Option<String>, started: Instant, outcome: Outcome| {
            let (status, facts, error, failures) = judge(outcome, &spec.expect);
            out.push(TaskResult {
                task: spec.kind.name().to_string(),
                target,
                status,
                facts,
                error,
                failures,
                millis: timing.then(|| started.elapsed().as_millis() as u64),
            });
        };
        let action = built.action.as_ref();
        match &spec.kind {
            TaskKind::Laws => {
                let t = Instant::now();
                let names: Vec<&str> = selected.iter().map(|(n, _)| n.as_str()).collect();
                let mods: Vec<Module> = selected.iter().map(|(_, m)| m.clone()).collect();
                push(Some(names.join(", ")), t, laws(action.expect("validated"), &mods));
            }
            TaskKind::Galois { rank, monad, .. } => {
                let t = Instant::now();
                let sc = built.galois[i].as_ref().expect("validated");
                let target = format!(
                    "q = {}, [M:K] = {}, [L:K] = {}, H = {:?}",
                    sc.q, sc.deg_m, sc.deg_l, sc.h
                );
                push(Some(target), t, galois(sc, *rank, *monad));
            }
            kind => {
                for (name, m) in selected {
                    let t = Instant::now();
                    let act = action.expect("validated");
                    let outcome = match kind {
                        TaskKind::Clifford => clifford(act, m),
                        TaskKind::OracleCompare { .. } => {
                            let (ctx, _) = built.oracle[i].as_ref().expect("validated");
                            oracle(act, ctx, m)
                        }
                        TaskKind::TrivialInertia => trivial_inertia_check(act, m)
                            .map(|r| {
                                vec![
                                    fact("orbit End dimension", r.end_dim, "dimension of the orbit hom space"),
                                    check(
                                        "local",
                                        true,
                                        format!("radical dim {} of corner dim {}", r.radical_dim, r.end_dim),
                                    ),
                                ]
                            })
                            .map_err(err),
                        TaskKind::Skewfield => skewfield_check(act, m)
                            .map(|r| {
                                vec![
                                    fact("orbit End dimension", r.end_dim, "equals the dimension of End(M)"),
                                    check(
                                        "skew field",
                                        true,
                                        format!("radical dim {} of corner dim {}", r.radical_dim, r.end_dim),
                                    ),
                                ]
                            })
                            .map_err(err),
                        TaskKind::Laws | TaskKind::Galois { .. } => unreachable!(),
                    };
                    push(Some(name.clone()), t, outcome);
                }
                if let Some((ctx, xs)) = built.oracle[i].as_ref().filter(|(_, xs)| !xs.is_empty()) {
                    let t = Instant::now();
                    push(Some("counit modules".into()), t, counit(ctx, xs));
                }
            }
        }
    }
    out
}

type Pieces = (Vec<Fact>, Vec<(String, Module)>);

/// Indecomposable pieces of `m`, with the key prefix used for their facts.
fn pieces(m: &Module) -> std::result::Result<Pieces, String> {
    let d = decompose(m).map_err(err)?;
    if d.summands.len() == 1 {
        return Ok((Vec::new(), vec![(String::new(), m.clone())]));
    }
    let head = vec![fact(
        "input summands",
        d.summands.len(),
        "the input is split by decompose and each summand is run separately",
    )];
    let parts = d
        .summands
        .into_iter()
        .enumerate()
        .map(|(k, s)| (format!("[{k}] "), s.module))
        .collect();
    Ok((head, parts))
}

fn clifford_facts(p: &str, act: &Arc<GroupAction>, m: &Module, r: &CliffordReport) -> Outcome {
    let cat = OrbitCategory::new(act.clone());
    let end = cat.hom(m, m).map_err(err)?.dim();
    let order = r.inertia.len();
    let mut f = vec![
        fact(
            format!("{p}module dimension"),
            r.module_dim,
            "indecomposable by decompose",
        ),
        fact(
            format!("{p}inertia"),
            json!(r.inertia),
            "witness isomorphisms twist(M, g) -> M checked",
        ),
        fact(
            format!("{p}inertia order"),
            order,
            "closure of the inertia subgroup checked",
        ),
        fact(
            format!("{p}orbit End dimension"),
            end,
            "dimension of the orbit hom space",
        ),
        fact(
            format!("{p}stage-1 summands"),
            r.stage_one.len(),
            "primitive orthogonal idempotents over the inertia subgroup",
        ),
        fact(
            format!("{p}n_j"),
            json!(r.stage_one.iter().map(|s| s.n).collect::<Vec<_>>()),
            "copies of M in each materialized image",
        ),
        check(
            format!("{p}sum n_j matches inertia order"),
            r.sum_n == order,
            format!("sum n_j = {}, |inertia| = {order}", r.sum_n),
        ),
        fact(
            format!("{p}summands"),
            r.stage_two.len(),
            "orthogonal idempotents summing to the identity",
        ),
    ];
    for (j, s) in r.stage_two.iter().enumerate() {
        f.push(check(
            format!("{p}summand {j} local"),
            s.local,
            format!("radical dim {} of corner dim {}", s.radical_dim, s.corner_dim),
        ));
        f.push(fact(
            format!("{p}summand {j} image dimension"),
            s.image_dim,
            "rank of the lifted idempotent",
        ));
    }
    f.push(fact(
        format!("{p}signature"),
        json!(r.signature()),
        "(image dimension, multiplicity) by orbit isomorphism class",
    ));
    f.push(fact(
        format!("{p}twists checked non-isomorphic"),
        r.non_iso_checks.len(),
        "summands compared with their twists outside the inertia subgroup",
    ));
    Ok(f)
}

fn clifford(act: &Arc<GroupAction>, m: &Module) -> Outcome {
    let (mut facts, parts) = pieces(m)?;
    for (p, piece) in &parts {
        let r = clifford_run(act, piece).map_err(err)?;
        facts.extend(clifford_facts(p, act, piece, &r)?);
    }
    Ok(facts)
}

fn oracle(act: &Arc<GroupAction>, ctx: &SkewContext, m: &Module) -> Outcome {
    let (mut facts, parts) = pieces(m)?;
    for (p, piece) in &parts {
        let r = clifford_run(act, piece).map_err(err)?;
        let c = oracle_compare(&r, ctx, piece).map_err(err)?;
        facts.push(fact(
            format!("{p}orbit signature"),
            json!(c.orbit_signature),
            "lifted summands of the orbit decomposition",
        ));
        match c.skipped {
            Some(why) => facts.push(plain(format!("{p}skipped"), why)),
            None => {
                facts.push(fact(
                    format!("{p}skew signature"),
                    json!(c.skew_signature),
                    "decomposition of the induced module over the skew group algebra",
                ));
                facts.push(check(
                    format!("{p}signatures agree"),
                    c.agree,
                    "multisets of (dimension, multiplicity) compared",
                ));
            }
        }
    }
    Ok(facts)
}

fn counit(ctx: &SkewContext, xs: &[Module]) -> Outcome {
    let act = &ctx.action;
    let invertible = !(act.group().order() as u64).is_multiple_of(act.algebra().field().characteristic());
    let mut facts = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let split = counit_split_test(ctx, x).map_err(err)?;
        let f = fact(
            format!("counit split at X{i}"),
            split,
            "linear solve for a section of Ind Res X -> X",
        );
        // a split counit is forced only when the group order is invertible
        facts.push(Fact { check: invertible, ..f });
    }
    Ok(facts)
}

fn laws(act: &Arc<GroupAction>, objs: &[Module]) -> Outcome {
    let cat = OrbitCategory::new(act.clone());
    let e = |r: orbit_clifford::Result<OrbitMor>| r.map_err(err);
    let mut triangle = true;
    let mut section = true;
    let mut twist = true;
    let mut bijection = true;
    let mut natural = true;
    let mut samples = 0usize;
    for x in objs {
        let tx = cat.functor_t_obj(x).map_err(err)?;
        let eta = cat.unit(x);
        let eps = e(cat.counit(x))?;
        let s_eta = cat.functor_s(x, &tx, &eta);
        triangle &= e(cat.compose(&s_eta, &eps))? == cat.identity(x);
        triangle &= (&cat.functor_t_mor(&eps) * &cat.unit(&tx)).is_identity();
        section &= match cat.right_inverse(&eps).map_err(err)? {
            Some(s) => e(cat.compose(&s, &eps))? == cat.identity(x),
            None => false,
        };
        for &g in cat.elements() {
            let (u, v) = cat.twist_iso(g, x);
            twist &= e(cat.compose(&v, &u))? == cat.identity(x);
            twist &= e(cat.compose(&u, &v))? == cat.identity(&cat.twist(x, g));
        }
        for y in objs {
            let hom = cat.hom(x, y).map_err(err)?;
            let mut fs = hom.basis();
            if fs.len() > 1 {
                // one morphism spread over several components
                fs.push(fs.iter().skip(1).fold(fs[0].clone(), |a, b| a.add(b)));
            }
            for f in &fs {
                bijection &= cat.kleisli_phi(x, y, &cat.kleisli_psi(f)) == *f;
                for &g in cat.elements() {
                    let (ux, _) = cat.twist_iso(g, x);
                    let (_, vy) = cat.twist_iso(g, y);
                    let conj = e(cat.compose(&e(cat.compose(&ux, f))?, &vy))?;
                    natural &= e(cat.lifted_aut(g, f))? == conj;
                }
                samples += 1;
            }
            let ty = cat.functor_t_obj(y).map_err(err)?;
            for b in &hom_space(x, &ty).map_err(err)?.basis {
                bijection &= &cat.kleisli_psi(&cat.kleisli_phi(x, y, b)) * &cat.unit(x) == *b;
                samples += 1;
            }
        }
    }
    Ok(vec![
        plain("objects", objs.len()),
        fact(
            "morphism samples",
            samples,
            "every hom-space basis element and one mixed sum",
        ),
        check(
            "triangle identities",
            triangle,
            "(eps S)(S eta) = id and (T eps)(eta T) = id on every object",
        ),
        check(
            "kleisli bijection",
            bijection,
            "phi psi = id and psi phi = id on every sample",
        ),
        check(
            "counit split",
            section,
            "a right inverse of the counit found by linear solve",
        ),
        check(
            "twist isomorphisms",
            twist,
            "twist(X, g) and X mutually inverse in the orbit category",
        ),
        check(
            "twist naturality",
            natural,
            "lifted automorphism conjugate to f through the twist isomorphisms",
        ),
    ])
}

fn galois(sc: &GaloisScenario, rank: bool, monad: bool) -> Outcome {
    let alg = galois_build(sc).map_err(err)?;
    let mut f = vec![
        fact(
            "big algebra dimension",
            alg.big.dim(),
            "structure constants of M x| G over F_q",
        ),
        fact(
            "small algebra dimension",
            alg.small.dim(),
            "embedding checked multiplicative",
        ),
        plain("delta order", sc.delta_order()),
    ];
    if rank {
        let r = galois_rank_check(sc).map_err(err)?;
        f.push(fact("expected rank", r.expected_rank, "|Delta| |G:H|"));
        f.push(check(
            "free",
            r.free,
            format!(
                "restriction of dimension {} matched with the free module by decomposition",
                r.restricted_dim
            ),
        ));
    }
    if monad {
        let r = galois_monad_group_check(sc).map_err(err)?;
        f.push(fact(
            "monad group order",
            r.order,
            "bimodule summands of M x| G over L x| H",
        ));
        f.push(fact(
            "functor samples",
            r.functor_samples,
            "E_x E_y V isomorphic to E_xy V on the sampled modules",
        ));
        f.push(check(
            "table matches semidirect product",
            r.labelling.is_some(),
            "composition table compared with Delta x| G/H under a relabelling",
        ));
        if let Some((a, b)) = r.mismatch {
            f.push(plain("first mismatch", json!([a, b])));
        }
    }
    Ok(f)
}
