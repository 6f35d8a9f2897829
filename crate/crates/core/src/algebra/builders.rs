use crate::algebra::{unit_vec, Algebra, AlgebraAut};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::FiniteGroup;
use crate::mat::Mat;
use crate::orbit::GroupAction;

/// Cap on the number of basis paths accepted from a path algebra.
const MAX_PATH_BASIS: usize = 4096;

/// Greedy generating set of a group, in index order.
fn group_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generate(&[]);
    for x in g.elements() {
        if span.len() == g.order() {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = g.generate(&gens);
        }
    }
    gens
}

/// The group algebra `kG` with basis the group elements.
pub fn group_algebra(field: &Field, g: &FiniteGroup) -> Algebra {
    let n = g.order();
    let mut consts = vec![field.zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            consts[(a * n + b) * n + g.mul(a, b)] = field.one();
        }
    }
    let gens = group_generators(g).into_iter().map(|x| unit_vec(field, n, x)).collect();
    Algebra::from_parts(field, n, consts, unit_vec(field, n, 0))
        .with_labels((0..n).map(|i| format!("g{i}")).collect())
        .with_generators(gens)
}

/// Validates a Cayley table first.
pub fn group_algebra_from_table(field: &Field, table: Vec<Vec<usize>>) -> Result<Algebra> {
    Ok(group_algebra(field, &FiniteGroup::from_table(table)?))
}

/// `Mat_n(k)` on matrix units, `e_{ij}` at index `i * n + j`.
pub fn matrix_algebra(field: &Field, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be at least 1".into()));
    }
    let d = n * n;
    let mut consts = vec![field.zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // e_ij e_jl = e_il
                consts[((i * n + j) * d + (j * n + l)) * d + i * n + l] = field.one();
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    Ok(Algebra::from_parts(field, d, consts, unit)
        .with_labels((0..d).map(|k| format!("e{}{}", k / n + 1, k % n + 1)).collect()))
}

/// `k^n` with componentwise product.
pub fn product_algebra(field: &Field, n: usize) -> Algebra {
    let mut consts = vec![field.zero(); n * n * n];
    for i in 0..n {
        consts[(i * n + i) * n + i] = field.one();
    }
    Algebra::from_parts(field, n, consts, vec![field.one(); n])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// (source, target)
    pub arrows: Vec<(usize, usize)>,
    pub names: Vec<String>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Quiver {
        let names = (0..arrows.len())
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("a{i}")
                }
            })
            .collect();
        Quiver {
            vertices,
            arrows,
            names,
        }
    }

    /// Two vertices with two parallel arrows `a, b: 0 -> 1`.
    pub fn kronecker() -> Quiver {
        Quiver::new(2, vec![(0, 1), (0, 1)])
    }

    fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(Error::InvalidAlgebra("quiver without vertices".into()));
        }
        if self.names.len() != self.arrows.len() {
            return Err(Error::InvalidAlgebra("one name per arrow".into()));
        }
        if self
            .arrows
            .iter()
            .any(|&(s, t)| s >= self.vertices || t >= self.vertices)
        {
            return Err(Error::InvalidAlgebra("arrow endpoint out of range".into()));
        }
        Ok(())
    }

    fn is_path(&self, p: &[usize]) -> bool {
        p.iter().all(|&a| a < self.arrows.len()) && p.windows(2).all(|w| self.arrows[w[0]].1 == self.arrows[w[1]].0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum PathElem {
    Trivial(usize),
    Path(Vec<usize>),
}

fn contains_relation(p: &[usize], relations: &[Vec<usize>]) -> bool {
    relations
        .iter()
        .any(|r| r.len() <= p.len() && p.windows(r.len()).any(|w| w == r.as_slice()))
}

pub(crate) fn path_basis(q: &Quiver, relations: &[Vec<usize>]) -> Result<Vec<PathElem>> {
    q.validate()?;
    for r in relations {
        if r.is_empty() || !q.is_path(r) {
            return Err(Error::InvalidAlgebra(format!("relation {r:?} is not a path")));
        }
    }
    let a = q.arrows.len();
    let r = relations.iter().map(|r| r.len()).max().unwrap_or(1).max(1);
    // automaton states: a vertex plus the last r-1 arrows
    let mut bound = q.vertices;
    let mut pw = 1usize;
    for _ in 1..r {
        pw = pw.saturating_mul(a);
        bound = bound.saturating_add(pw);
    }
    let mut basis: Vec<PathElem> = (0..q.vertices).map(PathElem::Trivial).collect();
    let mut level: Vec<Vec<usize>> = (0..a)
        .map(|x| vec![x])
        .filter(|p| !contains_relation(p, relations))
        .collect();
    let mut len = 1;
    while !level.is_empty() {
        if len > bound {
            return Err(Error::InfinitePathBasis(format!(
                "an allowed path of length {len} exists, so some cycle survives the relations"
            )));
        }
        basis.extend(level.iter().cloned().map(PathElem::Path));
        if basis.len() > MAX_PATH_BASIS {
            return Err(Error::InfinitePathBasis(format!("more than {MAX_PATH_BASIS} paths")));
        }
        let mut next = Vec::new();
        for p in &level {
            let end = q.arrows[*p.last().unwrap()].1;
            for x in 0..a {
                if q.arrows[x].0 == end {
                    let mut np = p.clone();
                    np.push(x);
                    if !contains_relation(&np, relations) {
                        next.push(np);
                    }
                }
            }
        }
        level = next;
        len += 1;
    }
    Ok(basis)
}

fn path_label(q: &Quiver, p: &PathElem) -> String {
    match p {
        PathElem::Trivial(v) => format!("e{v}"),
        PathElem::Path(arrows) => arrows.iter().map(|&x| q.names[x].clone()).collect::<Vec<_>>().join("*"),
    }
}

fn path_source_target(q: &Quiver, p: &PathElem) -> (usize, usize) {
    match p {
        PathElem::Trivial(v) => (*v, *v),
        PathElem::Path(arrows) => (q.arrows[arrows[0]].0, q.arrows[*arrows.last().unwrap()].1),
    }
}

/// Path algebra modulo monomial relations. Basis: trivial paths, then
/// paths by length and lexicographically by arrow index. The product `p q`
/// is the concatenation "first p, then q" when `p` ends where `q` starts.
pub fn path_algebra(field: &Field, q: &Quiver, relations: &[Vec<usize>]) -> Result<Algebra> {
    let basis = path_basis(q, relations)?;
    let d = basis.len();
    let index = |p: &PathElem| basis.iter().position(|b| b == p);
    let mut consts = vec![field.zero(); d * d * d];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let (_, tx) = path_source_target(q, x);
            let (sy, _) = path_source_target(q, y);
            if tx != sy {
                continue;
            }
            let prod = match (x, y) {
                (PathElem::Trivial(_), _) => Some(y.clone()),
                (_, PathElem::Trivial(_)) => Some(x.clone()),
                (PathElem::Path(a), PathElem::Path(b)) => {
                    let mut c = a.clone();
                    c.extend(b);
                    (!contains_relation(&c, relations)).then_some(PathElem::Path(c))
                }
            };
            if let Some(k) = prod.and_then(|p| index(&p)) {
                consts[(i * d + j) * d + k] = field.one();
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    for v in 0..q.vertices {
        unit[v] = field.one();
    }
    let gens = (0..d)
        .filter(|&i| {
            matches!(&basis[i], PathElem::Trivial(_)) || matches!(&basis[i], PathElem::Path(p) if p.len() == 1)
        })
        .map(|i| unit_vec(field, d, i))
        .collect();
    Ok(Algebra::from_parts(field, d, consts, unit)
        .with_labels(basis.iter().map(|p| path_label(q, p)).collect())
        .with_generators(gens))
}

/// Automorphism of a path algebra induced by a vertex permutation and arrow
/// images `arrow -> scalar * arrow'`.
pub fn path_algebra_aut(
    algebra: &Algebra,
    q: &Quiver,
    relations: &[Vec<usize>],
    vertex_perm: &[usize],
    arrow_map: &[(usize, Scalar)],
) -> Result<AlgebraAut> {
    let f = algebra.field();
    let basis = path_basis(q, relations)?;
    if basis.len() != algebra.dim() {
        return Err(Error::AlgebraMismatch);
    }
    if vertex_perm.len() != q.vertices || arrow_map.len() != q.arrows.len() {
        return Err(Error::InvalidAutomorphism("map sizes do not match the quiver".into()));
    }
    for (x, &(y, c)) in arrow_map.iter().enumerate() {
        let (s, t) = q.arrows[x];
        if y >= q.arrows.len() || c.is_zero() || q.arrows[y] != (vertex_perm[s], vertex_perm[t]) {
            return Err(Error::InvalidAutomorphism(format!(
                "arrow {x} is not sent to a parallel arrow"
            )));
        }
    }
    let d = basis.len();
    let mut m = Mat::zeros(f, d, d);
    for (i, p) in basis.iter().enumerate() {
        let (image, coeff) = match p {
            PathElem::Trivial(v) => (PathElem::Trivial(vertex_perm[*v]), f.one()),
            PathElem::Path(arrows) => {
                let mut c = f.one();
                let mut img = Vec::with_capacity(arrows.len());
                for &x in arrows {
                    img.push(arrow_map[x].0);
                    c = f.mul(c, arrow_map[x].1);
                }
                (PathElem::Path(img), c)
            }
        };
        let j = basis
            .iter()
            .position(|b| *b == image)
            .ok_or_else(|| Error::InvalidAutomorphism("relations are not preserved".into()))?;
        m.set(j, i, coeff);
    }
    AlgebraAut::new(algebra, m)
}

/// The skew group algebra `A ⋊ Γ`, basis element `b_i ⊗ g` at index `g * dim A + i`,
/// with `(x ⊗ g)(y ⊗ h) = x σ_g(y) ⊗ gh`.
pub fn skew_group_algebra(action: &GroupAction) -> Result<Algebra> {
    action.check()?;
    let a = action.algebra();
    let g = action.group();
    let f = a.field();
    let d = a.dim();
    let n = g.order();
    let dd = d * n;
    let mut consts = vec![f.zero(); dd * dd * dd];
    for gi in 0..n {
        let sigma = action.aut(gi).matrix();
        for hi in 0..n {
            let gh = g.mul(gi, hi);
            for j in 0..d {
                let sy = sigma.col(j);
                for i in 0..d {
                    let prod = a.mul(&a.basis_vector(i), &sy);
                    let base = ((gi * d + i) * dd + (hi * d + j)) * dd + gh * d;
                    consts[base..base + d].copy_from_slice(&prod);
                }
            }
        }
    }
    let mut unit = vec![f.zero(); dd];
    unit[..d].copy_from_slice(a.unit());
    let mut gens: Vec<Vec<Scalar>> = a
        .generators()
        .iter()
        .map(|x| {
            let mut v = vec![f.zero(); dd];
            v[..d].copy_from_slice(x);
            v
        })
        .collect();
    for x in group_generators(g) {
        let mut v = vec![f.zero(); dd];
        v[x * d..(x + 1) * d].copy_from_slice(a.unit());
        gens.push(v);
    }
    let labels = (0..dd).map(|k| format!("{}*g{}", a.labels()[k % d], k / d)).collect();
    Ok(Algebra::from_parts(f, dd, consts, unit)
        .with_labels(labels)
        .with_generators(gens))
}

fn require_prime(q: &Field) -> Result<()> {
    if !q.is_prime_field() {
        return Err(Error::InvalidField(
            "Galois constructions need a prime base field".into(),
        ));
    }
    Ok(())
}

/// `F_{q^deg}` as an `F_q`-algebra on the power basis `1, x, ..., x^{deg-1}`.
pub fn field_extension_algebra(fq: &Field, deg: usize) -> Result<Algebra> {
    require_prime(fq)?;
    let big = Field::new(fq.characteristic(), deg)?;
    let powers: Vec<Scalar> = (0..deg).map(|a| big.pow(big.generator_x(), a as u64)).collect();
    let mut consts = Vec::with_capacity(deg * deg * deg);
    for &x in &powers {
        for &y in &powers {
            consts.extend(big.to_coeffs(big.mul(x, y)).into_iter().map(|c| fq.from_int(c as i64)));
        }
    }
    let gens = if deg > 1 { vec![unit_vec(fq, deg, 1)] } else { vec![] };
    Ok(Algebra::from_parts(fq, deg, consts, unit_vec(fq, deg, 0))
        .with_labels((0..deg).map(|a| format!("x^{a}")).collect())
        .with_generators(gens))
}

/// The `k`-th power of Frobenius `z -> z^q` on [`field_extension_algebra`].
pub fn frobenius_aut(algebra: &Algebra, fq: &Field, deg: usize, k: usize) -> Result<AlgebraAut> {
    require_prime(fq)?;
    let big = Field::new(fq.characteristic(), deg)?;
    let q = fq.order();
    let cols: Vec<Vec<Scalar>> = (0..deg)
        .map(|a| {
            let mut z = big.pow(big.generator_x(), a as u64);
            for _ in 0..k % deg {
                z = big.pow(z, q);
            }
            big.to_coeffs(z).into_iter().map(|c| fq.from_int(c as i64)).collect()
        })
        .collect();
    AlgebraAut::new(algebra, Mat::from_cols(fq, deg, &cols))
}

/// The twisted group ring `F_{q^deg} ⋊ G` over `F_q` where `g` acts by
/// `Frob^{phi[g]}`; basis `x^a ⊗ g` at index `g * deg + a`.
pub fn twisted_group_ring(fq: &Field, deg: usize, g: &FiniteGroup, phi: &[usize]) -> Result<Algebra> {
    let m = field_extension_algebra(fq, deg)?;
    if phi.len() != g.order() {
        return Err(Error::NotHomomorphism(
            "one Frobenius exponent per group element".into(),
        ));
    }
    for a in g.elements() {
        for b in g.elements() {
            if phi[g.mul(a, b)] % deg != (phi[a] + phi[b]) % deg {
                return Err(Error::NotHomomorphism(format!("phi fails on pair ({a}, {b})")));
            }
        }
    }
    let auts = phi
        .iter()
        .map(|&k| frobenius_aut(&m, fq, deg, k))
        .collect::<Result<Vec<_>>>()?;
    let action = GroupAction::new(std::sync::Arc::new(m), g.clone(), auts)?;
    skew_group_algebra(&action)
}
