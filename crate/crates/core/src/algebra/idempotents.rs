//! Primitive idempotents: central splitting of `A/J`, splitting of the simple
//! blocks, and lifting through the radical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{radical, Algebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::mat::{Mat, Subspace};
use crate::poly::Poly;

/// Random candidates tried when no basis element has a reducible minimal polynomial.
const RANDOM_SPLIT_ATTEMPTS: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    pub elements: Vec<Vec<Scalar>>,
    pub orthogonal: bool,
    pub complete: bool,
    pub primitive: bool,
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Lifts `e_bar` (idempotent modulo the nilpotent ideal `j`) to an idempotent
/// `e` with `e - e_bar ∈ j`, by iterating `e -> 3e^2 - 2e^3`.
pub fn lift_idempotent(a: &Algebra, j: &Subspace, e_bar: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = a.field();
    let err = a.sub(&a.mul(e_bar, e_bar), e_bar);
    if !j.contains(&err) {
        return Err(Error::Precondition("element is not idempotent modulo the ideal".into()));
    }
    let three = f.from_int(3);
    let two = f.from_int(2);
    let mut e = e_bar.to_vec();
    // the defect e^2 - e lies in J^(2^k) after k steps
    for _ in 0..=usize::BITS {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = a.sub(&a.scale(three, &e2), &a.scale(two, &e3));
    }
    Err(Error::Precondition("ideal is not nilpotent".into()))
}

/// Fixed points of `z -> z^q` on a commutative algebra (an `F_q`-linear map there).
fn frobenius_fixed(z: &Algebra) -> Subspace {
    let f = z.field();
    let q = f.order();
    let d = z.dim();
    let cols: Vec<Vec<Scalar>> = (0..d).map(|i| z.pow(&z.basis_vector(i), q)).collect();
    let m = &Mat::from_cols(f, d, &cols) - &Mat::identity(f, d);
    Subspace::span(f, d, &m.null_space())
}

/// Whether `a / rad(a)` is a division algebra (a finite field).
pub fn is_local(a: &Algebra) -> Result<bool> {
    if a.dim() == 0 {
        return Ok(false);
    }
    let j = radical(a)?;
    let (q, _, _) = a.quotient(&j);
    Ok(q.is_commutative() && frobenius_fixed(&q).dim() == 1)
}

/// Primitive idempotents of a commutative semisimple algebra whose Frobenius is trivial
/// (a product of copies of the ground field).
fn split_idempotents(s: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let f = s.field();
    let target = s.dim();
    let mut ids = vec![s.unit().to_vec()];
    for i in 0..s.dim() {
        if ids.len() == target {
            break;
        }
        let x = s.basis_vector(i);
        let mp = s.min_poly(&x);
        let roots: Vec<Scalar> = mp
            .factor()?
            .into_iter()
            .map(|(g, m)| {
                if g.degree() != Some(1) || m != 1 {
                    Err(Error::Certificate(
                        "split algebra element has a non-split minimal polynomial".into(),
                    ))
                } else {
                    Ok(f.neg(g.coeff(0)))
                }
            })
            .collect::<Result<_>>()?;
        let lagrange: Vec<Vec<Scalar>> = roots
            .iter()
            .map(|&lam| {
                let mut p = Poly::one(f);
                for &mu in roots.iter().filter(|&&mu| mu != lam) {
                    let inv = f.inv(f.sub(lam, mu)).unwrap();
                    p = p.mul(&Poly::linear(f, mu).scale(inv));
                }
                s.eval_poly(&p, &x)
            })
            .collect();
        let mut next = Vec::new();
        for e in &ids {
            for l in &lagrange {
                let prod = s.mul(e, l);
                if prod.iter().any(|c| !c.is_zero()) {
                    next.push(prod);
                }
            }
        }
        ids = next;
    }
    if ids.len() != target {
        return Err(Error::Certificate(
            "central splitting did not separate all blocks".into(),
        ));
    }
    Ok(ids)
}

/// Central primitive idempotents of a semisimple algebra.
fn central_idempotents(q: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let center = q.center();
    let (z, zemb) = q.subalgebra(&center, q.unit())?;
    let fixed = frobenius_fixed(&z);
    if fixed.dim() == 1 {
        return Ok(vec![q.unit().to_vec()]);
    }
    let (s, semb) = z.subalgebra(&fixed, z.unit())?;
    let ids = split_idempotents(&s)?;
    Ok(ids.iter().map(|e| zemb.mul_vec(&semb.mul_vec(e))).collect())
}

fn search_rng(a: &Algebra) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(crate::search_seed() ^ (a.dim() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// An element with reducible minimal polynomial, and a proper factor of it.
fn find_splitting_element(b: &Algebra) -> Result<(Vec<Scalar>, Poly)> {
    let f = b.field();
    let try_elem = |x: &[Scalar]| -> Result<Option<Poly>> {
        let fs = b.min_poly(x).factor()?;
        if fs.len() >= 2 {
            Ok(Some(fs[0].0.pow(fs[0].1)))
        } else {
            Ok(None)
        }
    };
    for i in 0..b.dim() {
        let x = b.basis_vector(i);
        if let Some(p) = try_elem(&x)? {
            return Ok((x, p));
        }
    }
    let mut rng = search_rng(b);
    let q = f.order();
    for _ in 0..RANDOM_SPLIT_ATTEMPTS {
        let x: Vec<Scalar> = (0..b.dim()).map(|_| Scalar(rng.gen_range(0..q) as u32)).collect();
        if let Some(p) = try_elem(&x)? {
            return Ok((x, p));
        }
    }
    Err(Error::Certificate(
        "no splitting element found in a non-commutative simple algebra".into(),
    ))
}

/// Primitive orthogonal idempotents of a simple algebra, summing to its unit.
fn split_simple(b: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    if b.dim() == 0 {
        return Ok(Vec::new());
    }
    if b.is_commutative() {
        return Ok(vec![b.unit().to_vec()]);
    }
    let f = b.field();
    let (x, p) = find_splitting_element(b)?;
    let y = b.eval_poly(&p, &x);
    // left ideal L = B y; any right identity of L inside L is an idempotent generating it
    let lvecs: Vec<Vec<Scalar>> = (0..b.dim()).map(|i| b.mul(&b.basis_vector(i), &y)).collect();
    let l = Subspace::span(f, b.dim(), &lvecs);
    let basis = l.basis();
    let k = basis.len();
    let d = b.dim();
    let mut sys = Mat::zeros(f, k * d, k);
    let mut rhs = Mat::zeros(f, k * d, 1);
    for (r, lr) in basis.iter().enumerate() {
        for (s, ls) in basis.iter().enumerate() {
            let prod = b.mul(lr, ls);
            for t in 0..d {
                sys.set(r * d + t, s, prod[t]);
            }
        }
        for t in 0..d {
            rhs.set(r * d + t, 0, lr[t]);
        }
    }
    let alpha = sys
        .solve(&rhs)?
        .ok_or_else(|| Error::Certificate("left ideal has no right identity".into()))?;
    let mut e = b.zero();
    for (s, ls) in basis.iter().enumerate() {
        crate::mat::axpy(f, &mut e, alpha.get(s, 0), ls);
    }
    if !b.is_idempotent(&e) || e == b.unit() || e.iter().all(|c| c.is_zero()) {
        return Err(Error::Certificate("splitting produced a trivial idempotent".into()));
    }
    let one_minus = b.sub(b.unit(), &e);
    let mut out = Vec::new();
    for piece in [e, one_minus] {
        let (c, emb) = b.corner(&piece)?;
        for sub in split_simple(&c)? {
            out.push(emb.mul_vec(&sub));
        }
    }
    Ok(out)
}

/// A complete set of primitive orthogonal idempotents, certified: they sum to
/// one, are pairwise orthogonal, and every corner `e A e` is local.
pub fn primitive_orthogonal_idempotents(a: &Algebra) -> Result<IdempotentSet> {
    if a.dim() == 0 {
        return Ok(IdempotentSet {
            elements: Vec::new(),
            orthogonal: true,
            complete: true,
            primitive: true,
        });
    }
    let j = radical(a)?;
    let (q, _, section) = a.quotient(&j);
    let mut prim_q = Vec::new();
    for c in central_idempotents(&q)? {
        let (block, emb) = q.corner(&c)?;
        for e in split_simple(&block)? {
            prim_q.push(emb.mul_vec(&e));
        }
    }
    let mut out = Vec::with_capacity(prim_q.len());
    let mut rest = a.unit().to_vec();
    for (i, eb) in prim_q.iter().enumerate() {
        if i + 1 == prim_q.len() {
            out.push(rest.clone());
            break;
        }
        let x = a.mul(&a.mul(&rest, &section.mul_vec(eb)), &rest);
        let e = lift_idempotent(a, &j, &x)?;
        rest = a.sub(&rest, &e);
        out.push(e);
    }
    certify(a, &out)?;
    Ok(IdempotentSet {
        elements: out,
        orthogonal: true,
        complete: true,
        primitive: true,
    })
}

fn certify(a: &Algebra, ids: &[Vec<Scalar>]) -> Result<()> {
    let mut sum = a.zero();
    for (i, e) in ids.iter().enumerate() {
        sum = a.add(&sum, e);
        for (k, g) in ids.iter().enumerate() {
            let prod = a.mul(e, g);
            let ok = if i == k {
                prod == *e
            } else {
                prod.iter().all(|c| c.is_zero())
            };
            if !ok {
                return Err(Error::Certificate(format!(
                    "idempotents {i} and {k} fail e_i e_k = δ e_i"
                )));
            }
        }
        let (c, _) = a.corner(e)?;
        if !is_local(&c)? {
            return Err(Error::Certificate(format!("corner of idempotent {i} is not local")));
        }
    }
    if sum != a.unit() {
        return Err(Error::Certificate("idempotents do not sum to one".into()));
    }
    Ok(())
}
