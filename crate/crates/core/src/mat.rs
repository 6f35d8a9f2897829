//! Dense matrices over a [`Field`], row reduction and friends.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&c| self.field.format(c)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `y += a * x`
pub fn axpy(field: &Field, y: &mut [Scalar], a: Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = field.mul_add(*yi, a, xi);
    }
}

pub fn scale_vec(field: &Field, a: Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|&v| field.mul(a, v)).collect()
}

pub fn add_vec(field: &Field, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(&a, &b)| field.add(a, b)).collect()
}

pub fn sub_vec(field: &Field, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect()
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_ints(field: &Field, rows: usize, cols: usize, v: &[i64]) -> Mat {
        assert_eq!(v.len(), rows * cols, "entry count");
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: v.iter().map(|&x| field.from_int(x)).collect(),
        }
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Scalar>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        Mat::from_rows(field, rows, cols).transpose()
    }

    pub fn column(field: &Field, v: &[Scalar]) -> Mat {
        Mat {
            field: field.clone(),
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { self.field.one() } else { self.field.zero() })
            })
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: Scalar) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(&self.field, c, &self.data),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Scalar, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&self.field, &mut self.data, c, &other.data);
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                axpy(f, orow, a, &other.data[k * other.cols..(k + 1) * other.cols]);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Mat {
        let mut r = Mat::identity(&self.field, self.rows);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(field: &Field, blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = &self.field;
        Mat::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        })
    }

    /// Reduces the leading `col_limit` columns to reduced row echelon form in
    /// place (row operations act on full rows); returns pivot columns.
    pub fn rref_in_place(&mut self, col_limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..col_limit.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).unwrap();
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let prow = &prow[c..];
            for chunk in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let a = chunk[c];
                if !a.is_zero() {
                    axpy(&f, &mut chunk[c..], f.neg(a), prow);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place(m.cols);
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space as vectors, one per free column in increasing order.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Null space basis as column matrices.
    pub fn kernel(&self) -> Vec<Mat> {
        self.null_space()
            .into_iter()
            .map(|v| Mat::column(&self.field, &v))
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if b.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} system with {}-row right side",
                self.rows, self.cols, b.rows
            )));
        }
        let f = &self.field;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..self.rows {
            if (self.cols..aug.cols).any(|j| !aug.get(i, j).is_zero()) {
                return Ok(None);
            }
        }
        let mut x = Mat::zeros(f, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, aug.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Mat::identity(&self.field, n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Monic minimal polynomial.
    pub fn min_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut ech = TrackedEchelon::new(f, n * n);
        let mut power = Mat::identity(f, n);
        for k in 0..=n {
            if let Some(rel) = ech.insert(power.data.clone()) {
                // power = sum rel[i] * M^i
                let mut coeffs: Vec<Scalar> = rel.iter().map(|&c| f.neg(c)).collect();
                coeffs.push(f.one());
                return Ok(Poly::new(f, coeffs));
            }
            debug_assert_eq!(ech.len(), k + 1);
            power = &power * self;
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: add_vec(&self.field, &self.data, &rhs.data),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: sub_vec(&self.field, &self.data, &rhs.data),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| self.field.neg(a)).collect(),
        }
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("shape mismatch in mul")
    }
}

/// A subspace of `F^n` held as reduced echelon rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let (r, pivots) = Mat::from_rows(field, ambient, vectors).rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The echelon basis.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in the echelon basis if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut r = v.to_vec();
        for (ci, row) in c.iter().zip(&self.rows) {
            axpy(&self.field, &mut r, self.field.neg(*ci), row);
        }
        r.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(&self.field, self.ambient, &v)
    }

    /// Complement spanned by standard basis vectors at the non-pivot positions.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

/// Incremental echelon form that remembers how each stored row was built from
/// inserted vectors; reports the first linear relation found.
pub struct TrackedEchelon {
    field: Field,
    /// (pivot, reduced vector, combination of inserted vectors)
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    count: usize,
    len: usize,
}

impl TrackedEchelon {
    pub fn new(field: &Field, len: usize) -> TrackedEchelon {
        TrackedEchelon {
            field: field.clone(),
            rows: Vec::new(),
            count: 0,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Inserts the next vector `v_k`. If it is dependent on earlier inserted
    /// vectors, returns `c` with `v_k = sum_i c_i v_i` and does not store it.
    pub fn insert(&mut self, v: Vec<Scalar>) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.len);
        let f = self.field.clone();
        let k = self.count;
        self.count += 1;
        let mut v = v;
        let mut combo = vec![f.zero(); k + 1];
        combo[k] = f.one();
        for (p, row, rc) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                let nc = f.neg(c);
                axpy(&f, &mut v, nc, row);
                axpy(&f, &mut combo[..rc.len()], nc, rc);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // 0 = v_k + sum combo_i v_i
                Some(combo[..k].iter().map(|&c| f.neg(c)).collect())
            }
            Some(p) => {
                let inv = f.inv(v[p]).unwrap();
                let v = scale_vec(&f, inv, &v);
                let combo = scale_vec(&f, inv, &combo);
                self.rows.push((p, v, combo));
                None
            }
        }
    }
}
