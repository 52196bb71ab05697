//! Dense row-major matrices over an exact field.

use std::fmt;

use rand::Rng;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from row-major elements.
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from integer rows, reduced into the field.
    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {cols}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j])))
    }

    pub fn random<R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    /// Entry at 0-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, &other.data[k * other.cols + j]);
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| self.field.sub(a, b))
    }

    fn zip(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|x| self.field.mul(c, x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn rank(&self) -> usize {
        self.field.rank(self.rows, self.cols, &self.data)
    }

    /// The `nr × nc` submatrix whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Result<Self> {
        if r0 + nr > self.rows || c0 + nc > self.cols {
            return Err(Error::OutOfRange(format!(
                "window {nr}x{nc} at ({r0},{c0}) in a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(&self.field, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone()))
    }

    /// The bottom `i` rows and leftmost `j` columns.
    pub fn southwest(&self, i: usize, j: usize) -> Result<Self> {
        if i > self.rows || j > self.cols {
            return Err(Error::OutOfRange(format!(
                "southwest window {i}x{j} of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        self.submatrix(self.rows - i, i, 0, j)
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) -> Result<()> {
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(Error::OutOfRange(format!(
                "block {}x{} at ({r0},{c0}) in a {}x{} matrix",
                block.rows, block.cols, self.rows, self.cols
            )));
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
        Ok(())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self)?;
        out.set_block(0, self.cols, other)?;
        Ok(out)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self)?;
        out.set_block(self.rows, 0, other)?;
        Ok(out)
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self).expect("fits");
        out.set_block(self.rows, self.cols, other).expect("fits");
        out
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for c in 0..n {
            let p = (c..n).find(|&r| !f.is_zero(a.get(r, c)))?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let s = f.inv(a.get(c, c))?;
            a.scale_row(c, &s);
            inv.scale_row(c, &s);
            for r in 0..n {
                if r == c || f.is_zero(a.get(r, c)) {
                    continue;
                }
                let m = a.get(r, c).clone();
                a.axpy_row(r, c, &m);
                inv.axpy_row(r, c, &m);
            }
        }
        Some(inv)
    }

    /// Solves `self · x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} system with {} right-hand entries",
                self.rows,
                self.cols,
                rhs.len()
            )));
        }
        let inv = self
            .inverse()
            .ok_or_else(|| Error::Singular(format!("{}x{} system matrix", self.rows, self.cols)))?;
        let b = Matrix::from_vec(&self.field, rhs.len(), 1, rhs.to_vec())?;
        Ok(inv.mul(&b)?.data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: &F::Elem) {
        for k in 0..self.cols {
            let idx = r * self.cols + k;
            self.data[idx] = self.field.mul(s, &self.data[idx]);
        }
    }

    /// row[dst] -= m * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, m: &F::Elem) {
        for k in 0..self.cols {
            let t = self.field.mul(m, &self.data[src * self.cols + k]);
            let idx = dst * self.cols + k;
            self.data[idx] = self.field.sub(&self.data[idx], &t);
        }
    }

    /// Ranks of every southwest window restricted to the leftmost `cols`
    /// columns: entry `i` is the rank of the bottom `i` rows, `i = 0..=rows`.
    /// Rows are fed bottom-up into an incremental echelon basis.
    pub fn southwest_rank_profile(&self, cols: usize) -> Vec<usize> {
        assert!(cols <= self.cols, "column count {cols} exceeds {}", self.cols);
        let mut basis = Echelon::new(&self.field, cols);
        let mut out = Vec::with_capacity(self.rows + 1);
        out.push(0);
        for r in (0..self.rows).rev() {
            basis.insert(&self.row(r)[..cols]);
            out.push(basis.rank());
        }
        out
    }
}

/// An incrementally built reduced row echelon basis.
struct Echelon<'a, F: Field> {
    field: &'a F,
    width: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<'a, F: Field> Echelon<'a, F> {
    fn new(field: &'a F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[F::Elem]) -> bool {
        if self.rows.len() == self.width {
            return false;
        }
        let f = self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let m = v[*p].clone();
            for k in 0..self.width {
                if !f.is_zero(&row[k]) {
                    let t = f.mul(&m, &row[k]);
                    v[k] = f.sub(&v[k], &t);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let s = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(&s, x);
        }
        self.rows.push((p, v));
        true
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank of `[[Y, I_r], [XY, X]]` for `X: r1×r`, `Y: r×r2`. Always `r`: the
/// lower block row is `X` times the upper one.
pub fn stacked_rank_property<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<usize> {
    if x.cols() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "X is {}x{} but Y is {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let r = x.cols();
    let top = y.hstack(&Matrix::identity(x.field(), r))?;
    let bottom = x.mul(y)?.hstack(x)?;
    Ok(top.vstack(&bottom)?.rank())
}
