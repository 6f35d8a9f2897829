//! Scenario documents: parsing, validation and construction of the objects
//! the tasks run on.

use std::collections::BTreeMap;
use std::sync::Arc;

use orbit_clifford::algebra::{
    field_extension_algebra, frobenius_aut, group_algebra, matrix_algebra, path_algebra, path_algebra_aut,
    skew_group_algebra, twisted_group_ring, Algebra, AlgebraAut, Quiver,
};
use orbit_clifford::oracle::{GaloisScenario, SkewContext};
use orbit_clifford::orbit::GroupAction;
use orbit_clifford::rep::{projective_indecomposables, quiver_module, simple_modules, Module};
use orbit_clifford::{Field, FiniteGroup, Mat, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleEntry>,
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub degree: usize,
}

fn one() -> usize {
    1
}

fn two() -> usize {
    2
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Table(Vec<Vec<usize>>),
    Permutations(Vec<Vec<usize>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    GroupAlgebra {
        group: GroupSpec,
    },
    MatrixAlgebra {
        n: usize,
    },
    PathAlgebra {
        vertices: usize,
        arrows: Vec<(usize, usize)>,
        #[serde(default)]
        relations: Vec<Vec<usize>>,
    },
    SkewGroupAlgebra {
        base: Box<AlgebraSpec>,
        action: Box<ActionSpec>,
    },
    TwistedGroupRing {
        degree: usize,
        group: GroupSpec,
        phi: Vec<usize>,
    },
    FieldExtension {
        degree: usize,
    },
}

/// A field entry: an integer, or the coefficients of a polynomial in the
/// field generator (low degree first).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coeffs(Vec<u64>),
}

pub type MatrixSpec = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    Trivial,
    /// `C_2` acting on the group algebra of an abelian group by inversion.
    Inversion,
    /// `perms[g][x]` is the image of the group element `x` under `g`.
    GroupAutomorphisms {
        group: GroupSpec,
        perms: Vec<Vec<usize>>,
    },
    /// `g` acts on `Mat_n` by conjugation with `matrices[g]`.
    Conjugation {
        group: GroupSpec,
        matrices: Vec<MatrixSpec>,
    },
    /// Cyclic group generated by a quiver automorphism.
    ArrowSwap {
        #[serde(default)]
        vertex_perm: Option<Vec<usize>>,
        arrow_perm: Vec<usize>,
        #[serde(default)]
        scalars: Option<Vec<Entry>>,
        #[serde(default = "two")]
        order: usize,
    },
    /// `C_order` generated by the `power`-th Frobenius power.
    Frobenius {
        order: usize,
        #[serde(default = "one")]
        power: usize,
    },
    /// Automorphism matrices in the algebra basis, one per group element.
    Explicit {
        group: GroupSpec,
        automorphisms: Vec<MatrixSpec>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub name: String,
    #[serde(flatten)]
    pub spec: ModuleSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    Simple {
        index: usize,
    },
    RegularSummand {
        index: usize,
    },
    Regular,
    /// One action matrix per algebra basis element.
    Explicit {
        action: Vec<MatrixSpec>,
    },
    /// Vector space per vertex; arrow `a: s -> t` acts `V_t -> V_s`.
    QuiverRep {
        dims: Vec<usize>,
        arrows: Vec<MatrixSpec>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TaskSpec {
    #[serde(flatten)]
    pub kind: TaskKind,
    /// Module names the task applies to; all modules when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modules: Option<Vec<String>>,
    /// Expected fact values; the key `error` matches a substring of the error.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum TaskKind {
    Clifford,
    Laws,
    OracleCompare {
        /// Modules over the skew group algebra at which the counit is tested.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        counit_modules: Vec<ModuleSpec>,
    },
    TrivialInertia,
    Skewfield,
    Galois {
        q: u64,
        deg_l: usize,
        deg_m: usize,
        group: GroupSpec,
        phi: Vec<usize>,
        h: Vec<usize>,
        #[serde(default = "yes")]
        rank: bool,
        #[serde(default = "yes")]
        monad: bool,
    },
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Clifford => "clifford",
            TaskKind::Laws => "laws",
            TaskKind::OracleCompare { .. } => "oracle_compare",
            TaskKind::TrivialInertia => "trivial_inertia",
            TaskKind::Skewfield => "skewfield",
            TaskKind::Galois { .. } => "galois",
        }
    }

    fn needs_action(&self) -> bool {
        !matches!(self, TaskKind::Galois { .. })
    }
}

/// A parse or validation failure, reported with exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invalid {
    pub path: String,
    pub message: String,
}

impl Invalid {
    fn new(path: impl Into<String>, message: impl ToString) -> Invalid {
        Invalid {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

type Check<T> = std::result::Result<T, Invalid>;

/// What the algebra builder knows beyond the structure constants.
#[derive(Clone, Debug, Default)]
struct Shape {
    group: Option<FiniteGroup>,
    quiver: Option<(Quiver, Vec<Vec<usize>>)>,
    ext_degree: Option<usize>,
}

/// A validated scenario with every object built.
pub struct Built {
    pub scenario: Scenario,
    pub field: Field,
    pub action: Option<Arc<GroupAction>>,
    pub modules: Vec<(String, Module)>,
    /// Per oracle task: the skew context and the modules for the counit test.
    pub oracle: Vec<Option<(SkewContext, Vec<Module>)>>,
    pub galois: Vec<Option<GaloisScenario>>,
}

pub fn parse(text: &str) -> Check<Scenario> {
    let sc: Scenario = serde_json::from_str(text).map_err(|e| Invalid::new("$", e))?;
    if sc.schema_version != SCHEMA_VERSION {
        return Err(Invalid::new(
            "$.schema_version",
            format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                sc.schema_version
            ),
        ));
    }
    Ok(sc)
}

pub fn build(sc: Scenario) -> Check<Built> {
    let field = Field::new(sc.field.p, sc.field.degree).map_err(|e| Invalid::new("$.field", e))?;
    let mut algebra = None;
    if let Some(spec) = &sc.algebra {
        algebra = Some(build_algebra(&field, spec, "$.algebra")?);
    }
    let mut action = None;
    if let Some((alg, shape)) = &algebra {
        let spec = sc.action.clone().unwrap_or(ActionSpec::Trivial);
        action = Some(Arc::new(build_action(&field, alg, shape, &spec, "$.action")?));
    } else if sc.action.is_some() {
        return Err(Invalid::new("$.action", "an action needs an algebra"));
    }

    let mut modules = Vec::new();
    for (i, entry) in sc.modules.iter().enumerate() {
        let path = format!("$.modules[{i}]");
        let (alg, shape) = algebra
            .as_ref()
            .ok_or_else(|| Invalid::new(&path, "modules need an algebra"))?;
        if modules.iter().any(|(n, _): &(String, Module)| *n == entry.name) {
            return Err(Invalid::new(&path, format!("duplicate module name {:?}", entry.name)));
        }
        let m = build_module(&field, alg, shape, &entry.spec, &path)?;
        if m.dim() == 0 {
            return Err(Invalid::new(&path, "module is zero"));
        }
        modules.push((entry.name.clone(), m));
    }

    let mut oracle = Vec::new();
    let mut galois = Vec::new();
    for (i, t) in sc.tasks.iter().enumerate() {
        let path = format!("$.tasks[{i}]");
        if t.kind.needs_action() && action.is_none() {
            return Err(Invalid::new(&path, format!("task {} needs an algebra", t.kind.name())));
        }
        if let Some(names) = &t.modules {
            for n in names {
                if !modules.iter().any(|(m, _)| m == n) {
                    return Err(Invalid::new(format!("{path}.modules"), format!("unknown module {n:?}")));
                }
            }
        }
        oracle.push(match &t.kind {
            TaskKind::OracleCompare { counit_modules } => {
                let act = action.as_ref().expect("checked above");
                let ctx = SkewContext::new(act.clone()).map_err(|e| Invalid::new(&path, e))?;
                let mut xs = Vec::new();
                for (j, spec) in counit_modules.iter().enumerate() {
                    let p = format!("{path}.counit_modules[{j}]");
                    xs.push(build_module(&field, &ctx.skew, &Shape::default(), spec, &p)?);
                }
                Some((ctx, xs))
            }
            _ => None,
        });
        galois.push(match &t.kind {
            TaskKind::Galois {
                q,
                deg_l,
                deg_m,
                group,
                phi,
                h,
                ..
            } => {
                let g = build_group(group, &format!("{path}.group"))?;
                let gs = GaloisScenario {
                    q: *q,
                    deg_l: *deg_l,
                    deg_m: *deg_m,
                    group: g,
                    phi: phi.clone(),
                    h: h.clone(),
                };
                gs.check().map_err(|e| Invalid::new(&path, e))?;
                Some(gs)
            }
            _ => None,
        });
    }
    Ok(Built {
        scenario: sc,
        field,
        action,
        modules,
        oracle,
        galois,
    })
}

fn build_group(spec: &GroupSpec, path: &str) -> Check<FiniteGroup> {
    let g = match spec {
        GroupSpec::Trivial => FiniteGroup::trivial(),
        GroupSpec::Cyclic(n) if *n == 0 => return Err(Invalid::new(path, "cyclic group of order 0")),
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupSpec::Table(t) => FiniteGroup::from_table(t.clone()).map_err(|e| Invalid::new(path, e))?,
        GroupSpec::Permutations(gens) => FiniteGroup::from_permutations(gens).map_err(|e| Invalid::new(path, e))?,
        GroupSpec::Product(a, b) => FiniteGroup::direct_product(
            &build_group(a, &format!("{path}.product[0]"))?,
            &build_group(b, &format!("{path}.product[1]"))?,
        ),
    };
    Ok(g)
}

fn entry(field: &Field, e: &Entry, path: &str) -> Check<Scalar> {
    match e {
        Entry::Int(v) => Ok(field.from_int(*v)),
        Entry::Coeffs(c) => {
            let p = field.characteristic();
            if c.len() > field.degree() || c.iter().any(|&x| x >= p) {
                return Err(Invalid::new(
                    path,
                    format!("coefficients must be {} values below {p}", field.degree()),
                ));
            }
            Ok(field.from_coeffs(c))
        }
    }
}

fn matrix(field: &Field, spec: &MatrixSpec, shape: Option<(usize, usize)>, path: &str) -> Check<Mat> {
    let rows = spec.len();
    let cols = spec.first().map_or(0, |r| r.len());
    if spec.iter().any(|r| r.len() != cols) {
        return Err(Invalid::new(path, "rows of unequal length"));
    }
    let (rows, cols) = match shape {
        // an empty matrix carries no shape of its own
        Some(s) if rows * cols == 0 && s.0 * s.1 == 0 => s,
        Some(s) if s != (rows, cols) => {
            return Err(Invalid::new(
                path,
                format!("expected a {}x{} matrix, got {rows}x{cols}", s.0, s.1),
            ));
        }
        _ => (rows, cols),
    };
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in spec.iter().enumerate() {
        for (j, e) in r.iter().enumerate() {
            data.push(entry(field, e, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Mat::from_vec(field, rows, cols, data).map_err(|e| Invalid::new(path, e))
}

fn square_matrices(field: &Field, specs: &[MatrixSpec], n: usize, path: &str) -> Check<Vec<Mat>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| matrix(field, s, Some((n, n)), &format!("{path}[{i}]")))
        .collect()
}

fn build_algebra(field: &Field, spec: &AlgebraSpec, path: &str) -> Check<(Arc<Algebra>, Shape)> {
    let bad = |e| Invalid::new(path, e);
    let mut shape = Shape::default();
    let alg = match spec {
        AlgebraSpec::GroupAlgebra { group } => {
            let g = build_group(group, &format!("{path}.group"))?;
            let a = group_algebra(field, &g);
            shape.group = Some(g);
            a
        }
        AlgebraSpec::MatrixAlgebra { n } => matrix_algebra(field, *n).map_err(bad)?,
        AlgebraSpec::PathAlgebra {
            vertices,
            arrows,
            relations,
        } => {
            let q = Quiver::new(*vertices, arrows.clone());
            let a = path_algebra(field, &q, relations).map_err(bad)?;
            shape.quiver = Some((q, relations.clone()));
            a
        }
        AlgebraSpec::SkewGroupAlgebra { base, action } => {
            let (b, bshape) = build_algebra(field, base, &format!("{path}.base"))?;
            let act = build_action(field, &b, &bshape, action, &format!("{path}.action"))?;
            skew_group_algebra(&act).map_err(bad)?
        }
        AlgebraSpec::TwistedGroupRing { degree, group, phi } => {
            let g = build_group(group, &format!("{path}.group"))?;
            twisted_group_ring(field, *degree, &g, phi).map_err(bad)?
        }
        AlgebraSpec::FieldExtension { degree } => {
            shape.ext_degree = Some(*degree);
            field_extension_algebra(field, *degree).map_err(bad)?
        }
    };
    Ok((Arc::new(alg), shape))
}

fn build_action(field: &Field, alg: &Arc<Algebra>, shape: &Shape, spec: &ActionSpec, path: &str) -> Check<GroupAction> {
    let bad = |e| Invalid::new(path, e);
    match spec {
        ActionSpec::Trivial => Ok(GroupAction::trivial(alg.clone())),
        ActionSpec::Inversion => {
            let g = shape
                .group
                .as_ref()
                .ok_or_else(|| Invalid::new(path, "inversion needs a group algebra"))?;
            GroupAction::inversion(alg.clone(), g).map_err(bad)
        }
        ActionSpec::GroupAutomorphisms { group, perms } => {
            let n = shape
                .group
                .as_ref()
                .ok_or_else(|| Invalid::new(path, "group automorphisms need a group algebra"))?;
            let q = build_group(group, &format!("{path}.group"))?;
            if perms.iter().any(|p| p.len() != n.order()) {
                return Err(Invalid::new(
                    path,
                    format!("each permutation needs {} entries", n.order()),
                ));
            }
            GroupAction::from_group_automorphisms(alg.clone(), n, q, perms).map_err(bad)
        }
        ActionSpec::Conjugation { group, matrices } => {
            let q = build_group(group, &format!("{path}.group"))?;
            let n = (alg.dim() as f64).sqrt().round() as usize;
            let mats = square_matrices(field, matrices, n, &format!("{path}.matrices"))?;
            GroupAction::conjugation(alg.clone(), q, &mats).map_err(bad)
        }
        ActionSpec::ArrowSwap {
            vertex_perm,
            arrow_perm,
            scalars,
            order,
        } => {
            let (q, rels) = shape
                .quiver
                .as_ref()
                .ok_or_else(|| Invalid::new(path, "arrow-swap needs a path algebra"))?;
            let vp = vertex_perm.clone().unwrap_or_else(|| (0..q.vertices).collect());
            let cs = match scalars {
                Some(s) => s
                    .iter()
                    .enumerate()
                    .map(|(i, e)| entry(field, e, &format!("{path}.scalars[{i}]")))
                    .collect::<Check<Vec<_>>>()?,
                None => vec![field.one(); arrow_perm.len()],
            };
            if cs.len() != arrow_perm.len() {
                return Err(Invalid::new(path, "one scalar per arrow"));
            }
            let map: Vec<(usize, Scalar)> = arrow_perm.iter().copied().zip(cs).collect();
            let s = path_algebra_aut(alg, q, rels, &vp, &map).map_err(bad)?;
            GroupAction::cyclic(alg.clone(), *order, s).map_err(bad)
        }
        ActionSpec::Frobenius { order, power } => {
            let deg = shape
                .ext_degree
                .ok_or_else(|| Invalid::new(path, "frobenius needs a field_extension algebra"))?;
            let s = frobenius_aut(alg, field, deg, *power).map_err(bad)?;
            GroupAction::cyclic(alg.clone(), *order, s).map_err(bad)
        }
        ActionSpec::Explicit { group, automorphisms } => {
            let g = build_group(group, &format!("{path}.group"))?;
            let mats = square_matrices(field, automorphisms, alg.dim(), &format!("{path}.automorphisms"))?;
            let auts = mats
                .into_iter()
                .map(|m| AlgebraAut::new(alg, m))
                .collect::<orbit_clifford::Result<Vec<_>>>()
                .map_err(bad)?;
            GroupAction::new(alg.clone(), g, auts).map_err(bad)
        }
    }
}

fn build_module(field: &Field, alg: &Arc<Algebra>, shape: &Shape, spec: &ModuleSpec, path: &str) -> Check<Module> {
    let bad = |e| Invalid::new(path, e);
    match spec {
        ModuleSpec::Simple { index } => {
            let all = simple_modules(alg).map_err(bad)?;
            let n = all.len();
            all.into_iter()
                .nth(*index)
                .ok_or_else(|| Invalid::new(path, format!("simple index {index} out of range (there are {n})")))
        }
        ModuleSpec::RegularSummand { index } => {
            let all = projective_indecomposables(alg).map_err(bad)?;
            let n = all.len();
            all.into_iter()
                .nth(*index)
                .ok_or_else(|| Invalid::new(path, format!("summand index {index} out of range (there are {n})")))
        }
        ModuleSpec::Regular => Ok(Module::regular(alg.clone())),
        ModuleSpec::Explicit { action } => {
            let n = action.first().map_or(0, |m| m.len());
            let mats = square_matrices(field, action, n, &format!("{path}.action"))?;
            Module::new(alg.clone(), mats).map_err(bad)
        }
        ModuleSpec::QuiverRep { dims, arrows } => {
            let (q, rels) = shape
                .quiver
                .as_ref()
                .ok_or_else(|| Invalid::new(path, "quiver_rep needs a path algebra"))?;
            if dims.len() != q.vertices || arrows.len() != q.arrows.len() {
                return Err(Invalid::new(path, "one dimension per vertex and one matrix per arrow"));
            }
            let mats = arrows
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let (s, t) = q.arrows[i];
                    matrix(field, m, Some((dims[s], dims[t])), &format!("{path}.arrows[{i}]"))
                })
                .collect::<Check<Vec<_>>>()?;
            quiver_module(alg, q, rels, dims, &mats).map_err(bad)
        }
    }
}

/// The builders, actions, module kinds and tasks a scenario can name.
pub fn builders_text() -> String {
    let lines = [
        "algebra builders (\"builder\"):",
        "  group_algebra        group",
        "  matrix_algebra       n",
        "  path_algebra         vertices, arrows [[source, target], ...], relations [[arrow, ...], ...]",
        "  skew_group_algebra   base (algebra), action",
        "  twisted_group_ring   degree, group, phi (group element -> Frobenius power)",
        "  field_extension      degree",
        "groups: \"trivial\", {\"cyclic\": n}, {\"table\": [[...]]}, {\"permutations\": [[...]]}, {\"product\": [g, h]}",
        "actions (\"kind\"):",
        "  trivial",
        "  inversion            C2 on the group algebra of an abelian group",
        "  group_automorphisms  group, perms",
        "  conjugation          group, matrices",
        "  arrow_swap           arrow_perm, vertex_perm?, scalars?, order (default 2)",
        "  frobenius            order, power (default 1)",
        "  explicit             group, automorphisms (matrices in the algebra basis)",
        "modules (\"kind\"):",
        "  simple               index",
        "  regular_summand      index (projective indecomposable)",
        "  regular",
        "  explicit             action (one matrix per algebra basis element)",
        "  quiver_rep           dims, arrows (arrow s -> t acts V_t -> V_s)",
        "tasks (\"task\"):",
        "  clifford             inertia, orbit decomposition and lift of each module",
        "  laws                 adjunction, Kleisli and twist laws on the selected modules",
        "  oracle_compare       skew group algebra comparison; counit_modules for the split test",
        "  trivial_inertia      local orbit End for modules with trivial inertia",
        "  skewfield            orbit End of a simple module is a skew field",
        "  galois               q, deg_l, deg_m, group, phi, h, rank?, monad?",
    ];
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(extra: &str) -> String {
        format!(
            r#"{{"schema_version": 1, "field": {{"p": 7}},
                "algebra": {{"builder": "group_algebra", "group": {{"cyclic": 3}}}},
                "action": {{"kind": "inversion"}},
                {extra}
                "tasks": [{{"task": "clifford"}}]}}"#
        )
    }

    #[test]
    fn parses_and_builds() {
        let sc = parse(&scenario(
            r#""modules": [{"name": "chi", "kind": "explicit", "action": [[[1]], [[2]], [[4]]]}],"#,
        ))
        .unwrap();
        let b = build(sc).unwrap();
        assert_eq!(b.modules.len(), 1);
        assert_eq!(b.action.unwrap().group().order(), 2);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_version = scenario("").replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert_eq!(parse(&bad_version).unwrap_err().path, "$.schema_version");

        let not_module =
            scenario(r#""modules": [{"name": "x", "kind": "explicit", "action": [[[1]], [[2]], [[3]]]}],"#);
        let e = build(parse(&not_module).unwrap()).err().unwrap();
        assert_eq!(e.path, "$.modules[0]");

        let unknown = scenario(r#""modules": [{"name": "x", "kind": "regular"}],"#)
            .replace(r#"{"task": "clifford"}"#, r#"{"task": "clifford", "modules": ["y"]}"#);
        let e = build(parse(&unknown).unwrap()).err().unwrap();
        assert!(e.message.contains("unknown module"));

        let table = scenario("").replace(r#"{"cyclic": 3}"#, r#"{"table": [[0, 1, 2], [1, 1, 0], [2, 0, 1]]}"#);
        let e = build(parse(&table).unwrap()).err().unwrap();
        assert_eq!(e.path, "$.algebra.group");

        assert!(parse("{").is_err());
        assert!(parse(&scenario("").replace("\"tasks\"", "\"taks\"")).is_err());
    }

    #[test]
    fn field_entries() {
        let f = Field::new(3, 2).unwrap();
        let x = entry(&f, &Entry::Coeffs(vec![0, 1]), "$").unwrap();
        assert_eq!(x, f.generator_x());
        assert!(entry(&f, &Entry::Coeffs(vec![0, 3]), "$").is_err());
        assert_eq!(entry(&f, &Entry::Int(-1), "$").unwrap(), f.from_int(2));
    }

    #[test]
    fn quiver_rep_shapes() {
        let f = Field::prime(5).unwrap();
        let spec = AlgebraSpec::PathAlgebra {
            vertices: 2,
            arrows: vec![(0, 1), (0, 1)],
            relations: vec![],
        };
        let (a, shape) = build_algebra(&f, &spec, "$").unwrap();
        let s0 = ModuleSpec::QuiverRep {
            dims: vec![1, 0],
            arrows: vec![vec![], vec![]],
        };
        assert_eq!(build_module(&f, &a, &shape, &s0, "$").unwrap().dim(), 1);
        let wrong = ModuleSpec::QuiverRep {
            dims: vec![1, 1],
            arrows: vec![vec![vec![Entry::Int(1), Entry::Int(0)]], vec![vec![Entry::Int(1)]]],
        };
        assert!(build_module(&f, &a, &shape, &wrong, "$").is_err());
    }
}
