//! Dense exact matrices and Gaussian elimination.
//!
//! Entries are row-major. Every matrix remembers its [`FieldSpec`] so that
//! constants can be produced without a type-level modulus.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{Field, FieldSpec, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    field: FieldSpec,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>, field: FieldSpec) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data, field })
    }

    pub fn zeros(rows: usize, cols: usize, field: &FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(field); rows * cols],
            field: *field,
        }
    }

    pub fn identity(n: usize, field: &FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m[(i, i)] = T::one(field);
        }
        m
    }

    /// Builds from row vectors; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize, field: &FieldSpec) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!("row of length {} in width {cols}", r.len())));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
            field: *field,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: &FieldSpec,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, field: *field }
    }

    /// Diagonal matrix from integer entries.
    pub fn diag_ints(entries: &[i64], field: &FieldSpec) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, field, |i, j| {
            if i == j {
                T::from_int(entries[i], field)
            } else {
                T::zero(field)
            }
        })
    }

    pub fn from_ints(rows: &[&[i64]], field: &FieldSpec) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| T::from_int(v, field)).collect())
            .collect();
        Self::from_rows(rows, cols, field)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            field: self.field,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.field, |i, j| self[(j, i)].clone())
    }

    /// Entrywise base involution.
    pub fn conj(&self) -> Self {
        let f = self.field;
        self.map(|x| x.conj(&f))
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    fn same_shape(&self, rhs: &Self, op: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs, "sum")?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs, "difference")?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(self.rows, rhs.cols, &f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], T::zero(&f));
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
            field: self.field,
        }
    }

    /// Side-by-side concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, &self.field, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    /// Stacks `rhs` below `self`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "vstack of widths {} and {}",
                self.cols, rhs.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
            field: self.field,
        })
    }

    /// Columns `start..end`.
    pub fn col_range(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, &self.field, |i, j| {
            self[(i, start + j)].clone()
        })
    }

    /// The listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), &self.field, |i, j| self[(i, cols[j])].clone())
    }

    /// Places the columns of `self` at `offset..offset + cols` of a wider zero matrix.
    pub fn embed_cols(&self, width: usize, offset: usize) -> Self {
        let z = T::zero(&self.field);
        Self::from_fn(self.rows, width, &self.field, |i, j| {
            if j >= offset && j < offset + self.cols {
                self[(i, j - offset)].clone()
            } else {
                z.clone()
            }
        })
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
            field: self.field,
        }
    }

    /// `[[a, b], [c, d]]` from four blocks.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    /// Block `(bi, bj)` of a matrix cut into `k x k` blocks.
    pub fn block(&self, bi: usize, bj: usize, k: usize) -> Self {
        Self::from_fn(k, k, &self.field, |i, j| self[(bi * k + i, bj * k + j)].clone())
    }

    /// Inverse by Gauss-Jordan with pivots restricted to unit entries.
    ///
    /// Over a field this is ordinary inversion. Over a local ring (dual
    /// numbers) a square matrix is invertible iff its reduction modulo the
    /// nilradical is, and such a matrix always has a unit in each pivot
    /// column, so the same loop decides invertibility.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let f = self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(n, &f);
        for c in 0..n {
            let p = (c..n).find(|&r| a[(r, c)].is_unit()).ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let s = a[(c, c)].try_inverse().ok_or(Error::Singular)?;
            a.scale_row(c, &s);
            inv.scale_row(c, &s);
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let m = a[(r, c)].clone();
                    a.axpy_row(r, c, &m);
                    inv.axpy_row(r, c, &m);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.invert().is_ok()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, i: usize, s: &T) {
        for c in 0..self.cols {
            let v = self[(i, c)].clone();
            self[(i, c)] = s.clone() * v;
        }
    }

    /// `row_r -= m * row_src`
    fn axpy_row(&mut self, r: usize, src: usize, m: &T) {
        for c in 0..self.cols {
            let s = self[(src, c)].clone();
            if !s.is_zero() {
                let v = self[(r, c)].clone();
                self[(r, c)] = v - m.clone() * s;
            }
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn rref_pivots(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let s = a[(r, c)].try_inverse().expect("nonzero field element");
            a.scale_row(r, &s);
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let m = a[(i, c)].clone();
                    a.axpy_row(i, r, &m);
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.data.truncate(r * a.cols);
        a.rows = r;
        (a, pivots)
    }

    /// `rref`: the canonical basis of the row space and its rank.
    pub fn rref(&self) -> (Self, usize) {
        let (m, p) = self.rref_pivots();
        (m, p.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_pivots().1.len()
    }

    /// RREF basis of `{v : self · v = 0}`, one row per basis vector.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref_pivots();
        let f = self.field;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![T::zero(&f); n];
            v[free] = T::one(&f);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            rows.push(v);
        }
        let k = Matrix::from_rows(rows, n, &f).expect("rows have width n");
        k.rref().0
    }

    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one(&f);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(T::zero(&f));
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            let inv = pivot.try_inverse().expect("nonzero field element");
            for r in c + 1..n {
                if !a[(r, c)].is_zero() {
                    let m = a[(r, c)].clone() * inv.clone();
                    a.axpy_row(r, c, &m);
                }
            }
            det = det * pivot;
        }
        Ok(det)
    }

    /// Parses `"1,0;0,1"`: rows split on `;`, entries on `,`. The empty
    /// string is the 0x0 matrix.
    pub fn parse(text: &str, field: &FieldSpec) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Self::zeros(0, 0, field));
        }
        let mut rows = Vec::new();
        for row in t.split(';') {
            let entries = row
                .split(',')
                .map(|e| T::parse(e, field))
                .collect::<Result<Vec<T>>>()?;
            rows.push(entries);
        }
        let cols = rows[0].len();
        Self::from_rows(rows, cols, field)
    }

    /// Lexicographic comparison of entries for equal shapes.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| self.data.cmp(&other.data))
    }

    /// All matrices of the given shape over a finite field, in lexicographic order.
    pub fn enumerate(rows: usize, cols: usize, field: &FieldSpec) -> Result<Vec<Self>> {
        let elems = T::elements(field).ok_or_else(|| Error::InfiniteField(field.to_string()))?;
        let len = rows * cols;
        let q = elems.len();
        let total = q
            .checked_pow(len as u32)
            .filter(|&t| t <= 1 << 22)
            .ok_or_else(|| Error::Precondition(format!("{q}^{len} matrices is too many to list")))?;
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; len];
        for _ in 0..total {
            let data = idx.iter().map(|&k| elems[k].clone()).collect();
            out.push(Matrix { rows, cols, data, field: *field });
            for k in (0..len).rev() {
                idx[k] += 1;
                if idx[k] < q {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(out)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the checked_* methods report it.

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_add(rhs).unwrap()
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_sub(rhs).unwrap()
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).unwrap()
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{DualScalar, Fp, Rational};

    const Q: FieldSpec = FieldSpec::RATIONAL;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_ints(rows, &Q).unwrap()
    }

    fn fp(p: u64, rows: &[&[i64]]) -> Matrix<Fp> {
        Matrix::from_ints(rows, &FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(q(&[&[2, 4], &[1, 2]]).rref(), (q(&[&[1, 2]]), 1));
        let id = Matrix::<Rational>::identity(3, &Q);
        assert_eq!(id.rref(), (id.clone(), 3));
        assert_eq!(fp(3, &[&[1, 1], &[1, 2]]).rref(), (fp(3, &[&[1, 0], &[0, 1]]), 2));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(fp(2, &[&[1, 1]]).kernel_basis(), fp(2, &[&[1, 1]]));
        assert_eq!(q(&[&[1, 2], &[3, 4]]).kernel_basis().rows(), 0);
        let m = q(&[&[1, 2, 3]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        assert!((&m * &k.transpose()).is_zero());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(q(&[&[1, 1], &[0, 1]]).invert().unwrap(), q(&[&[1, -1], &[0, 1]]));
        assert_eq!(q(&[&[0, 1], &[-1, 0]]).invert().unwrap(), q(&[&[0, -1], &[1, 0]]));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).invert(), Err(Error::Singular));
    }

    #[test]
    fn determinant() {
        assert_eq!(q(&[&[1, 2], &[3, 4]]).det().unwrap(), Rational::new(-2, 1));
        assert_eq!(fp(3, &[&[1, 1], &[1, 2]]).det().unwrap().value(), 1);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f5 = FieldSpec::prime(5).unwrap();
        let m = Matrix::<Fp>::parse("1,0;-1,7", &f5).unwrap();
        assert_eq!(m.to_string(), "1,0;4,2");
        assert!(Matrix::<Fp>::parse("1,0;1", &f5).is_err());
        assert_eq!(Matrix::<Fp>::parse("", &f5).unwrap().rows(), 0);
    }

    #[test]
    fn dual_matrix_inverts_by_base_part() {
        let f = FieldSpec::prime(5).unwrap();
        let d = |a, b| DualScalar::new(Fp::new(a, 5), Fp::new(b, 5));
        let m = Matrix::from_rows(vec![vec![d(1, 2), d(0, 1)], vec![d(0, 3), d(2, 0)]], 2, &f)
            .unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2, &f));
        // nilpotent diagonal: singular modulo ε
        let n = Matrix::from_rows(vec![vec![d(0, 1), d(0, 0)], vec![d(0, 0), d(1, 0)]], 2, &f)
            .unwrap();
        assert_eq!(n.invert(), Err(Error::Singular));
    }

    #[test]
    fn enumerate_counts() {
        let f3 = FieldSpec::prime(3).unwrap();
        let all = Matrix::<Fp>::enumerate(2, 2, &f3).unwrap();
        assert_eq!(all.len(), 81);
        assert_eq!(all.iter().filter(|m| m.is_invertible()).count(), 48);
    }
}
