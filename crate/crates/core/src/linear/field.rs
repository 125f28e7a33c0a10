//! Gaussian elimination over a field, shared by F_p and Q.

use crate::ring::{Elem, Ring};

pub trait FieldOps {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub struct Fp(pub u64);

impl FieldOps for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        crate::ring::inv_mod(*a, self.0).expect("nonzero in prime field")
    }
}

/// Field operations through a [`Ring`] handle (used for Q).
pub struct RingField<'a>(pub &'a Ring);

impl FieldOps for RingField<'_> {
    type E = Elem;
    fn zero(&self) -> Elem {
        self.0.zero()
    }
    fn one(&self) -> Elem {
        self.0.one()
    }
    fn is_zero(&self, a: &Elem) -> bool {
        self.0.is_zero(a)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.add(a, b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.0.neg(a)
    }
    fn inv(&self, a: &Elem) -> Elem {
        self.0.inverse(a).unwrap().expect("nonzero in field")
    }
}

/// Row-reduces in place to reduced echelon form; returns pivot columns.
pub fn rref<F: FieldOps>(f: &F, m: &mut [Vec<F::E>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.neg(&row[c]);
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(y) {
                    *x = f.add(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(f: &F, m: &[Vec<F::E>], ncols: usize) -> usize {
    let mut work = m.to_vec();
    rref(f, &mut work, ncols).len()
}

/// Basis of the right null space of an `nrows x ncols` matrix.
pub fn nullspace<F: FieldOps>(f: &F, m: &[Vec<F::E>], ncols: usize) -> Vec<Vec<F::E>> {
    let mut work = m.to_vec();
    let pivots = rref(f, &mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&work[r][fc]);
            }
            v
        })
        .collect()
}

/// A solution of `m x = b`, if one exists.
pub fn solve<F: FieldOps>(f: &F, m: &[Vec<F::E>], ncols: usize, b: &[F::E]) -> Option<Vec<F::E>> {
    let mut aug: Vec<Vec<F::E>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Incremental basis for span membership tests.
pub struct SpanBuilder<F: FieldOps> {
    f: F,
    ncols: usize,
    rows: Vec<Vec<F::E>>,
    pivots: Vec<usize>,
}

impl<F: FieldOps> SpanBuilder<F> {
    pub fn new(f: F, ncols: usize) -> Self {
        SpanBuilder { f, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    fn reduce(&self, v: &[F::E]) -> Vec<F::E> {
        let f = &self.f;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[pc]) {
                let factor = f.neg(&v[pc]);
                for (x, y) in v.iter_mut().zip(row) {
                    if !f.is_zero(y) {
                        *x = f.add(x, &f.mul(&factor, y));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::E]) -> bool {
        self.reduce(v).iter().all(|x| self.f.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[F::E]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = (0..self.ncols).find(|&c| !self.f.is_zero(&r[c])) else {
            return false;
        };
        let inv = self.f.inv(&r[pc]);
        for x in r.iter_mut() {
            *x = self.f.mul(x, &inv);
        }
        // keep earlier rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            if !self.f.is_zero(&row[pc]) {
                let factor = self.f.neg(&row[pc]);
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = self.f.add(x, &self.f.mul(&factor, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}
