//! Jacobson radical in characteristic p via lifted traces of p-power matrix powers.
//!
//! Over `F_p`, with `A` acting faithfully on a space of dimension `N`, let
//! `g_i(a) = (Tr(ã^{p^i}) mod p^{i+1}) / p^i` where `ã` is any integer lift of
//! the matrix of `a`. Starting from `I_{-1} = A`, the chain
//! `I_i = {a ∈ I_{i-1} : g_i(a b) = 0 for all b}` ends at the radical for
//! `i = floor(log_p N)`. An `F_{p^n}`-algebra is handled by restricting scalars.

use crate::algebra::{combine, Algebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::{Mat, Subspace};

/// The Jacobson radical, certified: it is an ideal, it is nilpotent, and the
/// quotient has zero radical.
pub fn radical(a: &Algebra) -> Result<Subspace> {
    let j = radical_uncertified(a);
    certify(a, &j)?;
    Ok(j)
}

fn certify(a: &Algebra, j: &Subspace) -> Result<()> {
    let d = a.dim();
    for v in j.basis() {
        for i in 0..d {
            let b = a.basis_vector(i);
            if !j.contains(&a.mul(v, &b)) || !j.contains(&a.mul(&b, v)) {
                return Err(Error::Certificate(format!(
                    "radical is not closed under multiplication by basis element {i}"
                )));
            }
        }
    }
    let mut power = j.clone();
    let mut steps = 0;
    while power.dim() > 0 {
        steps += 1;
        if steps > d {
            return Err(Error::Certificate("radical is not nilpotent".into()));
        }
        power = a.product_space(&power, j);
    }
    if j.dim() > 0 {
        let (q, _, _) = a.quotient(j);
        if radical_uncertified(&q).dim() != 0 {
            return Err(Error::Certificate("quotient by the radical is not semisimple".into()));
        }
    }
    Ok(())
}

/// Matrix of multiplication by `c` on `F_{p^n}` over `F_p` (power basis), as integers.
fn scalar_block(field: &Field, c: Scalar) -> Vec<Vec<u64>> {
    let n = field.degree();
    let x = field.generator_x();
    let mut cols = Vec::with_capacity(n);
    let mut basis = field.one();
    for _ in 0..n {
        cols.push(field.to_coeffs(field.mul(c, basis)));
        basis = field.mul(basis, x);
    }
    // rows[r][t] = coefficient r of c * x^t
    (0..n).map(|r| (0..n).map(|t| cols[t][r]).collect()).collect()
}

/// Integer lift of an `F_q` matrix realized over `F_p`, size `(m n) x (m n)`.
fn lift_matrix(field: &Field, m: &Mat) -> Vec<Vec<u64>> {
    let n = field.degree();
    let size = m.rows() * n;
    let mut out = vec![vec![0u64; size]; size];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.get(i, j);
            if c.is_zero() {
                continue;
            }
            let blk = scalar_block(field, c);
            for r in 0..n {
                for t in 0..n {
                    out[i * n + r][j * n + t] = blk[r][t];
                }
            }
        }
    }
    out
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], modulus: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        let mut acc = vec![0u128; n];
        for (k, &aik) in a[i].iter().enumerate() {
            if aik == 0 {
                continue;
            }
            for (j, &bkj) in b[k].iter().enumerate() {
                acc[j] += aik as u128 * bkj as u128;
            }
            if k % 64 == 63 {
                for x in acc.iter_mut() {
                    *x %= modulus as u128;
                }
            }
        }
        for j in 0..n {
            out[i][j] = (acc[j] % modulus as u128) as u64;
        }
    }
    out
}

/// `(Tr(ã^{p^i}) mod p^{i+1}) / p^i`
fn g_value(lifted: Vec<Vec<u64>>, p: u64, i: u32) -> u64 {
    let modulus = p.pow(i + 1);
    let mut m: Vec<Vec<u64>> = lifted
        .into_iter()
        .map(|r| r.into_iter().map(|x| x % modulus).collect())
        .collect();
    let mut e = p.pow(i);
    let n = m.len();
    let mut acc: Option<Vec<Vec<u64>>> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => mat_mul_mod(&a, &m, modulus),
            });
        }
        e >>= 1;
        if e > 0 {
            m = mat_mul_mod(&m, &m, modulus);
        }
    }
    let acc = acc.unwrap();
    let tr = (0..n).fold(0u64, |s, k| (s + acc[k][k]) % modulus);
    (tr / p.pow(i)) % p
}

/// The radical without the certificate.
pub(crate) fn radical_uncertified(a: &Algebra) -> Subspace {
    let f = a.field();
    let d = a.dim();
    if d == 0 {
        return Subspace::zero(f, 0);
    }
    let p = f.characteristic();
    let n = f.degree();
    let rep: Vec<Mat> = match a.faithful_rep() {
        Some(r) => r.to_vec(),
        None => (0..d).map(|i| a.left_matrix(&a.basis_vector(i))).collect(),
    };
    let big_n = rep[0].rows() * n;
    let fp = Field::prime(p).expect("characteristic is prime");
    let x = f.generator_x();
    // F_p-basis of A: x^t b_i at index i * n + t
    let fp_basis: Vec<Vec<Scalar>> = (0..d)
        .flat_map(|i| (0..n).map(move |t| (i, t)))
        .map(|(i, t)| {
            let mut v = a.zero();
            v[i] = f.pow(x, t as u64);
            v
        })
        .collect();
    let mut current: Vec<Vec<Scalar>> = fp_basis.clone();
    let mut l = 0u32;
    while (p as u128).pow(l + 1) <= big_n as u128 {
        l += 1;
    }
    for i in 0..=l {
        if current.is_empty() {
            break;
        }
        let r = current.len();
        let nb = fp_basis.len();
        // vals[m][s] = g_i(a_s b_m)
        let mut vals = Mat::zeros(&fp, nb, r);
        for (s, a_s) in current.iter().enumerate() {
            for (mi, b) in fp_basis.iter().enumerate() {
                let prod = a.mul(a_s, b);
                if prod.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let m = combine(f, &rep, &prod);
                let g = g_value(lift_matrix(f, &m), p, i);
                vals.set(mi, s, fp.from_int(g as i64));
            }
        }
        let combos = vals.null_space();
        current = combos
            .iter()
            .map(|c| {
                let mut v = a.zero();
                for (s, &cs) in c.iter().enumerate() {
                    if !cs.is_zero() {
                        // F_p scalars embed as themselves in the packed representation
                        let coef = Scalar(cs.raw());
                        crate::mat::axpy(f, &mut v, coef, &current[s]);
                    }
                }
                v
            })
            .collect();
    }
    Subspace::span(f, d, &current)
}
