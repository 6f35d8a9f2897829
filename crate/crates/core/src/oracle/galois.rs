//! Twisted group rings `M ⋊ G` over a tower `F_q ≤ L ≤ M` of finite fields.
//!
//! Galois groups are Frobenius exponents: `Γ = Z/deg M`, and `Δ = Gal(M:L)` is
//! the subgroup of multiples of `deg L`.

use std::sync::Arc;

use crate::algebra::{field_extension_algebra, frobenius_aut, twisted_group_ring, Algebra, AlgebraAut};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::FiniteGroup;
use crate::mat::{Mat, Subspace};
use crate::rep::{direct_sum, is_isomorphic, simple_modules, Module};

#[derive(Clone, Debug)]
pub struct GaloisScenario {
    pub q: u64,
    pub deg_l: usize,
    pub deg_m: usize,
    pub group: FiniteGroup,
    /// `φ(g)` as a Frobenius exponent modulo `deg_m`.
    pub phi: Vec<usize>,
    /// Sorted elements of the normal subgroup `H`.
    pub h: Vec<usize>,
}

impl GaloisScenario {
    pub fn delta_order(&self) -> usize {
        self.deg_m / self.deg_l
    }

    /// Checks each hypothesis of the tower, naming the first that fails.
    pub fn check(&self) -> Result<()> {
        Field::prime(self.q)?;
        if self.deg_l == 0 || self.deg_m == 0 || !self.deg_m.is_multiple_of(self.deg_l) {
            return Err(Error::Hypothesis(format!(
                "L of degree {} is not an intermediate field of M of degree {}",
                self.deg_l, self.deg_m
            )));
        }
        let g = &self.group;
        if self.phi.len() != g.order() {
            return Err(Error::Hypothesis("φ must give one exponent per element of G".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.phi[g.mul(a, b)] % self.deg_m != (self.phi[a] + self.phi[b]) % self.deg_m {
                    return Err(Error::Hypothesis(format!(
                        "φ: G -> Γ is not a homomorphism on ({a}, {b})"
                    )));
                }
            }
        }
        if !g.is_subgroup(&self.h) || !g.elements().all(|x| g.normalizes(x, &self.h)) {
            return Err(Error::Hypothesis(format!(
                "H = {:?} is not a normal subgroup of G",
                self.h
            )));
        }
        // [φ(H), Δ] = 1 needs no check: Γ is cyclic, generated by Frobenius
        Ok(())
    }

    fn sub_group(&self) -> Result<FiniteGroup> {
        let pos = |x: usize| self.h.iter().position(|&y| y == x).unwrap();
        let table = self
            .h
            .iter()
            .map(|&a| self.h.iter().map(|&b| pos(self.group.mul(a, b))).collect())
            .collect();
        FiniteGroup::from_table(table)
    }
}

#[derive(Clone, Debug)]
pub struct GaloisAlgebras {
    /// `M ⋊ G`, basis `x^a ⊗ g` at `g * deg_m + a`.
    pub big: Arc<Algebra>,
    /// `L ⋊ H`, basis `y^a ⊗ h_i` at `i * deg_l + a`.
    pub small: Arc<Algebra>,
    /// `dim big x dim small`
    pub embedding: Mat,
    /// The image of the power-basis generator of `L` inside `M`.
    pub l_generator: Scalar,
}

/// Least element (in packed order) of `big` that is a root of the defining polynomial of `small`.
fn embed_generator(small: &Field, big: &Field) -> Result<Scalar> {
    let coeffs: Vec<Scalar> = small.modulus().iter().map(|&c| big.from_int(c as i64)).collect();
    big.elements()
        .find(|&z| {
            let mut acc = big.zero();
            for &c in coeffs.iter().rev() {
                acc = big.add(big.mul(acc, z), c);
            }
            acc.is_zero()
        })
        .ok_or_else(|| Error::Hypothesis("L does not embed in M".into()))
}

fn coords(fq: &Field, big: &Field, z: Scalar) -> Vec<Scalar> {
    big.to_coeffs(z).into_iter().map(|c| fq.from_int(c as i64)).collect()
}

fn from_coords(big: &Field, v: &[Scalar]) -> Scalar {
    big.from_coeffs(&v.iter().map(|s| s.raw() as u64).collect::<Vec<_>>())
}

pub fn galois_build(sc: &GaloisScenario) -> Result<GaloisAlgebras> {
    sc.check()?;
    let fq = Field::prime(sc.q)?;
    let big = Arc::new(twisted_group_ring(&fq, sc.deg_m, &sc.group, &sc.phi)?);
    let hg = sc.sub_group()?;
    let phi_h: Vec<usize> = sc.h.iter().map(|&x| sc.phi[x] % sc.deg_l).collect();
    let small = Arc::new(twisted_group_ring(&fq, sc.deg_l, &hg, &phi_h)?);
    let fm = Field::new(sc.q, sc.deg_m)?;
    let fl = Field::new(sc.q, sc.deg_l)?;
    let r = embed_generator(&fl, &fm)?;
    let mut embedding = Mat::zeros(&fq, big.dim(), small.dim());
    for (i, &x) in sc.h.iter().enumerate() {
        for a in 0..sc.deg_l {
            let c = coords(&fq, &fm, fm.pow(r, a as u64));
            for (k, v) in c.into_iter().enumerate() {
                embedding.set(x * sc.deg_m + k, i * sc.deg_l + a, v);
            }
        }
    }
    if embedding.mul_vec(small.unit()) != big.unit() {
        return Err(Error::Certificate("embedding does not preserve the unit".into()));
    }
    for i in 0..small.dim() {
        for j in 0..small.dim() {
            let (x, y) = (small.basis_vector(i), small.basis_vector(j));
            let lhs = big.mul(&embedding.mul_vec(&x), &embedding.mul_vec(&y));
            if lhs != embedding.mul_vec(&small.mul(&x, &y)) {
                return Err(Error::Certificate(format!(
                    "embedding not multiplicative on ({i}, {j})"
                )));
            }
        }
    }
    Ok(GaloisAlgebras {
        big,
        small,
        embedding,
        l_generator: r,
    })
}

/// `M` as an `M ⋊ G`-module: `(m ⊗ g) x = m φ(g)(x)`.
pub fn natural_module(sc: &GaloisScenario, alg: &GaloisAlgebras) -> Result<Module> {
    let fq = Field::prime(sc.q)?;
    let m = field_extension_algebra(&fq, sc.deg_m)?;
    let mut action = Vec::with_capacity(alg.big.dim());
    for g in sc.group.elements() {
        let frob = frobenius_aut(&m, &fq, sc.deg_m, sc.phi[g])?;
        for a in 0..sc.deg_m {
            action.push(&m.left_matrix(&m.basis_vector(a)) * frob.matrix());
        }
    }
    Module::new(alg.big.clone(), action)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub expected_rank: usize,
    pub restricted_dim: usize,
    pub free: bool,
}

/// Restricts the regular `M ⋊ G`-module to `L ⋊ H` and compares it with the free
/// module of rank `|Δ| |G : H|`.
pub fn galois_rank_check(sc: &GaloisScenario) -> Result<RankReport> {
    let alg = galois_build(sc)?;
    let expected_rank = sc.delta_order() * (sc.group.order() / sc.h.len());
    let res = Module::regular(alg.big.clone()).restrict(alg.small.clone(), &alg.embedding)?;
    let reg = Module::regular(alg.small.clone());
    let free = direct_sum(&alg.small, &vec![reg; expected_rank])?.module;
    Ok(RankReport {
        expected_rank,
        restricted_dim: res.dim(),
        free: is_isomorphic(&res, &free)?.is_some(),
    })
}

/// Least `θ` in packed order whose conjugates `θ^{q^i}` form an `F_q`-basis of `F_{q^deg}`.
pub fn normal_basis(q: u64, deg: usize) -> Result<Scalar> {
    let fq = Field::prime(q)?;
    let big = Field::new(q, deg)?;
    big.elements()
        .find(|&t| {
            let mut z = t;
            let mut vecs = Vec::with_capacity(deg);
            for _ in 0..deg {
                vecs.push(coords(&fq, &big, z));
                z = big.pow(z, q);
            }
            Subspace::span(&fq, deg, &vecs).dim() == deg
        })
        .ok_or_else(|| Error::Certificate("no normal basis element".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadGroupReport {
    /// Elements `(line, coset)` at index `line * cosets + coset`.
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub expected: Vec<Vec<usize>>,
    /// Unit `u` with line `j` labelled by `δ^{u j}`, when the tables match.
    pub labelling: Option<usize>,
    /// First pair whose product differs from `Δ ⋊ G/H` under the identity labelling.
    pub mismatch: Option<(usize, usize)>,
    /// Composites checked on simple and regular `L ⋊ H`-modules.
    pub functor_samples: usize,
}

fn mul_matrix(fq: &Field, big: &Field, z: Scalar) -> Mat {
    let n = big.degree();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|a| coords(fq, big, big.mul(z, big.pow(big.generator_x(), a as u64))))
        .collect();
    Mat::from_cols(fq, n, &cols)
}

/// Splits `M ⋊ G` into the `L ⋊ H`-bimodules `ℓ_j ⊗ H g`, where the `ℓ_j` are the
/// eigenlines of `Frob^{deg_l}`, and compares their composition law with `Δ ⋊ G/H`.
pub fn galois_monad_group_check(sc: &GaloisScenario) -> Result<MonadGroupReport> {
    let alg = galois_build(sc)?;
    let fq = Field::prime(sc.q)?;
    let fm = Field::new(sc.q, sc.deg_m)?;
    let fl = Field::new(sc.q, sc.deg_l)?;
    let n = sc.delta_order();
    let l_order = fl.order() - 1;
    if (n as u64).is_multiple_of(sc.q) || l_order % n as u64 != 0 {
        return Err(Error::Precondition(format!(
            "M is not a Kummer extension of L (|Δ| = {n}); the bimodule summands are not lines"
        )));
    }
    // a primitive n-th root of unity in L, transported into M
    let embed_l = |z: Scalar| {
        let mut acc = fm.zero();
        for (a, c) in fl.to_coeffs(z).into_iter().enumerate() {
            acc = fm.add(acc, fm.mul(fm.from_int(c as i64), fm.pow(alg.l_generator, a as u64)));
        }
        acc
    };
    let zeta = fl
        .elements()
        .skip(1)
        .find(|&z| (1..=n as u64).find(|&k| fl.pow(z, k) == fl.one()) == Some(n as u64))
        .map(embed_l)
        .ok_or_else(|| Error::Certificate("no primitive root of unity".into()))?;
    let m_alg = field_extension_algebra(&fq, sc.deg_m)?;
    let delta = frobenius_aut(&m_alg, &fq, sc.deg_m, sc.deg_l)?;
    let mut eta = Vec::with_capacity(n);
    let mut eigen = Vec::with_capacity(n);
    for j in 0..n {
        let mut a = delta.matrix().clone();
        a.add_scaled(fq.from_int(-1), &mul_matrix(&fq, &fm, fm.pow(zeta, j as u64)));
        let ker = a.null_space();
        if ker.len() != sc.deg_l {
            return Err(Error::Violation(format!(
                "eigenline {j} has dimension {} over the base",
                ker.len()
            )));
        }
        eta.push(from_coords(&fm, &ker[0]));
        eigen.push(Subspace::span(&fq, sc.deg_m, &ker));
    }
    let line_of = |z: Scalar| -> Option<usize> {
        if z.is_zero() {
            return None;
        }
        let c = coords(&fq, &fm, z);
        eigen.iter().position(|s| s.contains(&c))
    };
    let frob = |z: Scalar, k: usize| (0..k % sc.deg_m).fold(z, |acc, _| fm.pow(acc, sc.q));
    for &x in &sc.h {
        for (j, &e) in eta.iter().enumerate() {
            if line_of(frob(e, sc.phi[x])) != Some(j) {
                return Err(Error::Precondition(format!(
                    "eigenline {j} is not stable under H element {x}"
                )));
            }
        }
    }

    let g = &sc.group;
    let reps = g.right_coset_reps(&sc.h)?;
    let c = reps.len();
    let coset_of = |x: usize| reps.iter().position(|&r| sc.h.contains(&g.mul(x, g.inv(r)))).unwrap();
    let order = n * c;
    let mut table = vec![vec![0; order]; order];
    for i in 0..n {
        for a in 0..c {
            for j in 0..n {
                for b in 0..c {
                    let z = fm.mul(eta[i], frob(eta[j], sc.phi[reps[a]]));
                    let k = line_of(z)
                        .ok_or_else(|| Error::Violation(format!("product of lines {i} and {j} is not a line")))?;
                    table[i * c + a][j * c + b] = k * c + coset_of(g.mul(reps[a], reps[b]));
                }
            }
        }
    }
    // Δ ⋊ G/H on exponents: δ_k = Frob^{k deg_l}, acted on by conjugation through φ
    let conj = |x: usize, d: usize| {
        let p = sc.phi[x] % sc.deg_m;
        ((p + d * sc.deg_l + sc.deg_m - p) % sc.deg_m) / sc.deg_l
    };
    let mut expected = vec![vec![0; order]; order];
    for d1 in 0..n {
        for a in 0..c {
            for d2 in 0..n {
                for b in 0..c {
                    let d3 = (d1 + conj(reps[a], d2)) % n;
                    expected[d1 * c + a][d2 * c + b] = d3 * c + coset_of(g.mul(reps[a], reps[b]));
                }
            }
        }
    }
    let labelling = (1..=n.max(1)).filter(|u| gcd(*u, n.max(1)) == 1).find(|&u| {
        let relabel = |x: usize| ((x / c) * u % n) * c + x % c;
        (0..order).all(|x| (0..order).all(|y| relabel(table[x][y]) == expected[relabel(x)][relabel(y)]))
    });

    let mismatch = match labelling {
        Some(_) => None,
        None => (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .find(|&(x, y)| table[x][y] != expected[x][y]),
    };
    let functor_samples = check_functors(sc, &alg, &eta, &reps, &table)?;
    Ok(MonadGroupReport {
        order,
        table,
        expected,
        labelling,
        mismatch,
        functor_samples,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Each summand `B = ℓ_j ⊗ H g` is free of rank one as a right `L ⋊ H`-module on
/// `b = η_j ⊗ g`, so `B ⊗ V` is `V` twisted by the automorphism `τ` with
/// `r b = b τ(r)`. Checks `E_x E_y V ≅ E_{xy} V` on simple and regular modules.
fn check_functors(
    sc: &GaloisScenario,
    alg: &GaloisAlgebras,
    eta: &[Scalar],
    reps: &[usize],
    table: &[Vec<usize>],
) -> Result<usize> {
    let fq = Field::prime(sc.q)?;
    let fm = Field::new(sc.q, sc.deg_m)?;
    let (big, small) = (&alg.big, &alg.small);
    let mut taus = Vec::with_capacity(table.len());
    for (j, &e) in eta.iter().enumerate() {
        for &r in reps {
            let mut b = vec![fq.zero(); big.dim()];
            for (k, v) in coords(&fq, &fm, e).into_iter().enumerate() {
                b[r * sc.deg_m + k] = v;
            }
            let right = &big.left_matrix(&b) * &alg.embedding;
            let mut cols = Vec::with_capacity(small.dim());
            for i in 0..small.dim() {
                let lhs = big.mul(&alg.embedding.col(i), &b);
                let x = right
                    .solve(&Mat::column(&fq, &lhs))?
                    .ok_or_else(|| Error::Violation(format!("summand ({j}, {r}) is not free on its generator")))?;
                cols.push(x.col(0));
            }
            let tau = AlgebraAut::new(small, Mat::from_cols(&fq, small.dim(), &cols))
                .map_err(|e| Error::Violation(format!("summand ({j}, {r}) does not give an equivalence: {e}")))?;
            taus.push(tau);
        }
    }
    // B ⊗ V acts through τ, which is the twist by τ⁻¹
    let apply = |v: &Module, x: usize| v.twist(&taus[x].inverse());
    let mut samples = simple_modules(small)?;
    samples.push(Module::regular(small.clone()));
    let mut count = 0;
    for v in &samples {
        for x in 0..table.len() {
            for y in 0..table.len() {
                let lhs = apply(&apply(v, y), x);
                let rhs = apply(v, table[x][y]);
                if is_isomorphic(&lhs, &rhs)?.is_none() {
                    return Err(Error::Violation(format!(
                        "E_{x} E_{y} and E_{} differ on a module of dimension {}",
                        table[x][y],
                        v.dim()
                    )));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}
