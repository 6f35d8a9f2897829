//! Finite fields `F_p` and `F_{p^n}`.
//!
//! Elements are [`Scalar`] handles whose meaning depends on the owning
//! [`Field`]. For `n = 1` a scalar is its residue mod `p`. For `n > 1` a scalar
//! packs the residue coefficients `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`
//! (modulo the field's defining polynomial) as the base-`p` integer
//! `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest extension-field order for which log/exp tables are built.
const MAX_EXTENSION_ORDER: u64 = 1 << 20;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Scalar(pub(crate) u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);

    /// Raw packed representation.
    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct ExtTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldData {
    p: u64,
    degree: usize,
    order: u64,
    /// Monic defining polynomial, low degree first, length `degree + 1`.
    modulus: Vec<u64>,
    tables: Option<ExtTables>,
}

/// A finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.degree == other.0.degree && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.degree)
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Small dense polynomial helpers over F_p used only to pick the defining polynomial.
fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = mod_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv_lead % p;
        for i in 0..=dm {
            let idx = k - dm + i;
            r[idx] = (r[idx] + p - c * m[i] % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x.len() == 1
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn is_irreducible_small(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    // gcd(f, x^{p^k} - x) = 1 for k <= n/2
    let mut xp = vec![0, 1];
    for _ in 1..=n / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() || !poly_gcd_is_one(f, &diff, p) {
            return false;
        }
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// `F_{p^n}` realized modulo the lexicographically least monic irreducible
    /// polynomial of degree `n` (coefficients compared from `x^{n-1}` down to `x^0`).
    pub fn new(p: u64, n: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if n == 1 {
            if p >= (1 << 31) {
                return Err(Error::InvalidField(format!("prime {p} too large")));
            }
            return Ok(Field(Arc::new(FieldData {
                p,
                degree: 1,
                order: p,
                modulus: vec![0, 1],
                tables: None,
            })));
        }
        let order = p
            .checked_pow(n as u32)
            .filter(|&q| q <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{n} exceeds supported order")))?;
        let modulus = Self::least_irreducible(p, n);
        let mut data = FieldData {
            p,
            degree: n,
            order,
            modulus,
            tables: None,
        };
        data.tables = Some(Self::build_tables(&data));
        Ok(Field(Arc::new(data)))
    }

    fn least_irreducible(p: u64, n: usize) -> Vec<u64> {
        let count = p.pow(n as u32);
        for k in 0..count {
            // digit i of k (base p, most significant first) is the coefficient of x^{n-1-i}
            let mut f = vec![0u64; n + 1];
            f[n] = 1;
            let mut rest = k;
            for i in 0..n {
                f[i] = rest % p;
                rest /= p;
            }
            if f[0] == 0 {
                continue;
            }
            if is_irreducible_small(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build_tables(data: &FieldData) -> ExtTables {
        let q = data.order;
        let n = data.degree;
        let p = data.p;
        let encode = |v: &[u64]| -> u32 {
            let mut r = 0u64;
            for i in (0..n).rev() {
                r = r * p + v.get(i).copied().unwrap_or(0);
            }
            r as u32
        };
        let decode = |mut e: u64| -> Vec<u64> {
            let mut v = vec![0u64; n];
            for c in v.iter_mut() {
                *c = e % p;
                e /= p;
            }
            v
        };
        for cand in 2..q {
            let g = decode(cand);
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut cur = vec![1u64];
            let mut ok = true;
            for i in 0..q - 1 {
                let code = encode(&cur);
                if i > 0 && code == 1 {
                    ok = false;
                    break;
                }
                exp.push(code);
                cur = poly_mulmod(&cur, &g, &data.modulus, p);
            }
            if !ok {
                continue;
            }
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return ExtTables { exp, log };
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements `p^n`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    /// Monic defining polynomial coefficients, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Scalar {
        Scalar(0)
    }

    #[inline]
    pub fn one(&self) -> Scalar {
        Scalar(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// The class of `x` (a generator of the field over `F_p` when `n > 1`).
    pub fn generator_x(&self) -> Scalar {
        if self.0.degree == 1 {
            self.one()
        } else {
            Scalar(self.0.p as u32)
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Scalar {
        let p = self.0.p;
        let mut r = 0u64;
        for i in (0..self.0.degree).rev() {
            r = r * p + coeffs.get(i).copied().unwrap_or(0) % p;
        }
        Scalar(r as u32)
    }

    /// Residue coefficients over `F_p`, low degree first, length `n`.
    pub fn to_coeffs(&self, a: Scalar) -> Vec<u64> {
        let p = self.0.p;
        let mut e = a.0 as u64;
        let mut v = vec![0u64; self.0.degree];
        for c in v.iter_mut() {
            *c = e % p;
            e /= p;
        }
        v
    }

    /// All elements in packed order (0 first, then 1, ...).
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.0.order as u32).map(Scalar)
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let p = self.0.p;
        if self.0.degree == 1 {
            let s = a.0 as u64 + b.0 as u64;
            Scalar(if s >= p { s - p } else { s } as u32)
        } else {
            let (mut x, mut y) = (a.0 as u64, b.0 as u64);
            let mut r = 0u64;
            let mut w = 1u64;
            for _ in 0..self.0.degree {
                r += ((x % p + y % p) % p) * w;
                x /= p;
                y /= p;
                w *= p;
            }
            Scalar(r as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let p = self.0.p;
        if self.0.degree == 1 {
            Scalar(if a.0 == 0 { 0 } else { (p - a.0 as u64) as u32 })
        } else {
            let mut x = a.0 as u64;
            let mut r = 0u64;
            let mut w = 1u64;
            for _ in 0..self.0.degree {
                r += ((p - x % p) % p) * w;
                x /= p;
                w *= p;
            }
            Scalar(r as u32)
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.0.degree == 1 {
            let p = self.0.p as u32;
            Scalar(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 })
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar(0);
        }
        match &self.0.tables {
            None => Scalar((a.0 as u64 * b.0 as u64 % self.0.p) as u32),
            Some(t) => {
                let m = self.0.order - 1;
                let l = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % m;
                Scalar(t.exp[l as usize])
            }
        }
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(&self, a: Scalar, b: Scalar, c: Scalar) -> Scalar {
        self.add(a, self.mul(b, c))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a.0 == 0 {
            return None;
        }
        match &self.0.tables {
            None => {
                let p = self.0.p as i64;
                let (mut r0, mut r1) = (p, a.0 as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                Some(Scalar(t0.rem_euclid(p) as u32))
            }
            Some(t) => {
                let m = self.0.order - 1;
                let l = (m - t.log[a.0 as usize] as u64) % m;
                Some(Scalar(t.exp[l as usize]))
            }
        }
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.0.p)
    }

    /// `p`-th root, the inverse of [`Field::frobenius`].
    pub fn pth_root(&self, a: Scalar) -> Scalar {
        // a^(p^(n-1))
        let mut r = a;
        for _ in 1..self.0.degree {
            r = self.frobenius(r);
        }
        r
    }

    pub fn format(&self, a: Scalar) -> String {
        if self.0.degree == 1 {
            return a.0.to_string();
        }
        let c = self.to_coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match i {
                0 => v.to_string(),
                1 if v == 1 => "x".to_string(),
                1 => format!("{v}x"),
                _ if v == 1 => format!("x^{i}"),
                _ => format!("{v}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
