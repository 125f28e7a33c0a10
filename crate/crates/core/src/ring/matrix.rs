//! Dense matrices over a [`Ring`].

use super::{Elem, Ring};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} {}", self.rows, self.cols, self.to_text())
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { ring: ring.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let v = rows.iter().map(|r| r.iter().map(|x| ring.from_int(*x)).collect()).collect();
        Matrix::from_rows(ring, v).expect("rectangular")
    }

    /// Builds an `rows x cols` matrix from a column-major list of columns.
    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} * vector of length {}", self.rows, self.cols, v.len())));
        }
        let r = &self.ring;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !r.is_zero(a) && !r.is_zero(b) {
                        acc = r.add(&acc, &r.mul(a, b));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!("{:?} + {:?}", self.shape(), other.shape())));
        }
        let r = &self.ring;
        Ok(Matrix {
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| r.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map_entries(|r, x| r.neg(x))
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        self.map_entries(|r, x| r.mul(c, x))
    }

    fn map_entries(&self, f: impl Fn(&Ring, &Elem) -> Elem) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f(&self.ring, x)).collect(),
        }
    }

    /// Entry-wise image in another ring.
    pub fn map_to(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix { ring: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product with the row-major basis convention.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        let r = &self.ring;
        let (p, q) = other.shape();
        Ok(Matrix::from_fn(r, self.rows * p, self.cols * q, |i, j| {
            let a = self.get(i / p, j / q);
            if r.is_zero(a) {
                return r.zero();
            }
            r.mul(a, other.get(i % p, j % q))
        }))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat row counts".into()));
        }
        let mut m = Matrix::zeros(&self.ring, self.rows, self.cols + other.cols);
        m.put(0, 0, self);
        m.put(0, self.cols, other);
        Ok(m)
    }

    pub fn vcat(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vcat column counts".into()));
        }
        let mut m = Matrix::zeros(&self.ring, self.rows + other.rows, self.cols);
        m.put(0, 0, self);
        m.put(self.rows, 0, other);
        Ok(m)
    }

    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        let mut m = Matrix::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        m.put(0, 0, self);
        m.put(self.rows, self.cols, other);
        Ok(m)
    }

    /// Assembles a block matrix; `blocks[i][j]` must have `row_sizes[i]` rows
    /// and `col_sizes[j]` columns, `None` meaning zero.
    pub fn from_blocks(
        ring: &Ring,
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<Matrix>>],
    ) -> Result<Matrix> {
        let rtot: usize = row_sizes.iter().sum();
        let ctot: usize = col_sizes.iter().sum();
        let mut m = Matrix::zeros(ring, rtot, ctot);
        let mut r0 = 0;
        for (i, rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (j, cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks.get(i).and_then(|row| row.get(j)).and_then(|b| b.as_ref()) {
                    if b.shape() != (*rs, *cs) {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({i},{j}) is {:?}, expected {:?}",
                            b.shape(),
                            (rs, cs)
                        )));
                    }
                    m.put(r0, c0, b);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Ok(m)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        (0..self.rows * self.cols)
            .find(|&k| !self.ring.is_zero(&self.data[k]))
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Inverse over a local ring (or field) by elimination on unit pivots.
    pub fn inverse_local(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let r = &self.ring;
        if !r.is_local() {
            return Err(Error::NotLocal);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(r, n);
        for c in 0..n {
            let mut piv = None;
            for i in c..n {
                if r.is_unit(a.get(i, c))? {
                    piv = Some(i);
                    break;
                }
            }
            let p = match piv {
                Some(p) => p,
                None => return Ok(None),
            };
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let u = r.inverse(a.get(c, c))?.unwrap();
            a.scale_row(c, &u);
            inv.scale_row(c, &u);
            for i in 0..n {
                if i != c && !r.is_zero(a.get(i, c)) {
                    let f = r.neg(a.get(i, c));
                    a.add_row_multiple(i, c, &f);
                    inv.add_row_multiple(i, c, &f);
                }
            }
        }
        Ok(Some(inv))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    /// row_i += f * row_k
    pub fn add_row_multiple(&mut self, i: usize, k: usize, f: &Elem) {
        if self.ring.is_zero(f) {
            return;
        }
        for j in 0..self.cols {
            let b = self.get(k, j);
            if self.ring.is_zero(b) {
                continue;
            }
            let v = self.ring.add(self.get(i, j), &self.ring.mul(f, b));
            self.set(i, j, v);
        }
    }

    /// col_j += f * col_k
    pub fn add_col_multiple(&mut self, j: usize, k: usize, f: &Elem) {
        if self.ring.is_zero(f) {
            return;
        }
        for i in 0..self.rows {
            let b = self.get(i, k);
            if self.ring.is_zero(b) {
                continue;
            }
            let v = self.ring.add(self.get(i, j), &self.ring.mul(f, b));
            self.set(i, j, v);
        }
    }

    /// Text form `[a, b; c, d]`; zero-size matrices print as `[]`.
    pub fn to_text(&self) -> String {
        if self.rows == 0 || self.cols == 0 {
            return "[]".to_string();
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.ring.format(x)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }

    /// Parses the text form produced by [`Matrix::to_text`] with a known shape.
    pub fn parse(ring: &Ring, text: &str, rows: usize, cols: usize) -> Result<Matrix> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::SyntaxError { pos: 0, msg: "matrix must be enclosed in [ ]".into() })?;
        if inner.trim().is_empty() {
            if rows == 0 || cols == 0 {
                return Ok(Matrix::zeros(ring, rows, cols));
            }
            return Err(Error::DimensionMismatch(format!("empty matrix for shape {rows}x{cols}")));
        }
        let mut data = Vec::new();
        let row_texts: Vec<&str> = inner.split(';').collect();
        if row_texts.len() != rows {
            return Err(Error::DimensionMismatch(format!("expected {rows} rows, found {}", row_texts.len())));
        }
        for rt in row_texts {
            let ents = super::split_top_level(rt);
            if ents.len() != cols {
                return Err(Error::DimensionMismatch(format!("expected {cols} columns, found {}", ents.len())));
            }
            for e in ents {
                data.push(ring.parse(&e)?);
            }
        }
        Ok(Matrix { ring: ring.clone(), rows, cols, data })
    }
}
