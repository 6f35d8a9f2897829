//! Dense univariate polynomials over a [`Field`] and their factorization.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::Mat;

/// Exhaustive root scanning is used for Berlekamp splitting up to this field order.
const EXHAUSTIVE_SPLIT_ORDER: u64 = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    /// Coefficients, low degree first; no trailing zeros.
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.format(*c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            match i {
                0 => write!(f, "{cs}")?,
                1 if *c == self.field.one() => write!(f, "t")?,
                1 => write!(f, "{cs}t")?,
                _ if *c == self.field.one() => write!(f, "t^{i}")?,
                _ => write!(f, "{cs}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: &Field, c: Scalar, deg: usize) -> Poly {
        let mut v = vec![field.zero(); deg + 1];
        v[deg] = c;
        Poly::new(field, v)
    }

    /// `t - a`
    pub fn linear(field: &Field, a: Scalar) -> Poly {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(Scalar::ZERO)
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            None => self.clone(),
            Some(l) => self.scale(l),
        }
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.mul_add(v[i + j], a, b);
            }
        }
        Poly::new(f, v)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one(&self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(d.leading()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for i in 0..=dd {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, d.coeffs[i]));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut r = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(&self.field, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Canonical order on monic factors: by degree, then coefficients from low degree up.
    fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
        a.coeffs
            .len()
            .cmp(&b.coeffs.len())
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by
    /// degree and then coefficients (low degree first). The leading coefficient
    /// of `self` is the omitted unit.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for g in sqf.berlekamp_split() {
                out.push((g, mult));
            }
        }
        out.sort_by(|a, b| Poly::canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
        // merge identical factors that arose from different squarefree layers
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (g, m) in out {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(merged)
    }

    /// Monic squarefree factors `g_i` with `self = prod g_i^{m_i}`; `self` must be monic.
    fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let mut result = Vec::new();
        if self.degree() == Some(0) {
            return result;
        }
        let mut c = self.gcd(&self.derivative());
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if !fac.is_one() {
                result.push((fac.monic(), i));
            }
            w = y;
            c = c.divrem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power
            let deg = c.degree().unwrap();
            let root: Vec<Scalar> = (0..=deg / p).map(|k| f.pth_root(c.coeff(k * p))).collect();
            let root = Poly::new(f, root).monic();
            for (g, m) in root.squarefree_decomposition() {
                result.push((g, m * p));
            }
        }
        result
    }

    /// Irreducible factors of a monic squarefree polynomial.
    fn berlekamp_split(&self) -> Vec<Poly> {
        let f = &self.field;
        let n = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(1) => return vec![self.clone()],
            Some(n) => n,
        };
        let q = f.order();
        // column i of b holds (t^{iq} mod self) - t^i
        let xq = Poly::x(f).pow_mod(q, self);
        let mut b = Mat::zeros(f, n, n);
        let mut cur = Poly::one(f);
        for i in 0..n {
            for j in 0..n {
                b.set(j, i, cur.coeff(j));
            }
            let d = f.sub(b.get(i, i), f.one());
            b.set(i, i, d);
            cur = cur.mul_mod(&xq, self);
        }
        let kernel: Vec<Poly> = b
            .kernel()
            .into_iter()
            .map(|v| Poly::new(f, (0..n).map(|j| v.get(j, 0)).collect()))
            .collect();
        let r = kernel.len();
        if r == 1 {
            return vec![self.clone()];
        }
        let mut factors = vec![self.clone()];
        if q <= EXHAUSTIVE_SPLIT_ORDER {
            for v in kernel.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
                let mut next = Vec::new();
                for h in factors {
                    if h.degree() == Some(1) {
                        next.push(h);
                        continue;
                    }
                    let mut pieces = Vec::new();
                    for s in f.elements() {
                        let g = h.gcd(&v.sub(&Poly::constant(f, s)));
                        if g.degree().unwrap_or(0) > 0 {
                            pieces.push(g);
                        }
                    }
                    next.extend(pieces);
                }
                factors = next;
                if factors.len() == r {
                    break;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ n as u64);
            while factors.len() < r {
                let mut w = Poly::zero(f);
                for v in &kernel {
                    let c = Scalar(rng.gen_range(0..q as u32));
                    w = w.add(&v.scale(c));
                }
                let mut next = Vec::new();
                for h in factors {
                    if h.degree() == Some(1) {
                        next.push(h);
                        continue;
                    }
                    let probe = if q % 2 == 1 {
                        w.pow_mod((q - 1) / 2, &h).sub(&Poly::one(f))
                    } else {
                        // absolute trace map t + t^2 + ... + t^{2^{k-1}}
                        let k = 64 - (q - 1).leading_zeros() as usize;
                        let mut acc = Poly::zero(f);
                        let mut cur = w.rem(&h);
                        for _ in 0..k {
                            acc = acc.add(&cur);
                            cur = cur.mul_mod(&cur, &h);
                        }
                        acc
                    };
                    let g = h.gcd(&probe);
                    let dg = g.degree().unwrap_or(0);
                    if dg > 0 && Some(dg) != h.degree() {
                        let other = h.divrem(&g).0.monic();
                        next.push(g);
                        next.push(other);
                    } else {
                        next.push(h);
                    }
                }
                factors = next;
            }
        }
        factors.into_iter().map(|g| g.monic()).collect()
    }

    /// True iff irreducible of positive degree.
    pub fn is_irreducible(&self) -> bool {
        match self.factor() {
            Ok(fs) => fs.len() == 1 && fs[0].1 == 1 && self.degree().unwrap_or(0) > 0,
            Err(_) => false,
        }
    }
}
