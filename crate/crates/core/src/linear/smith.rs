//! Smith normal form over a Euclidean domain (Z or F_p[x]) with transforms.

use crate::ring::{Elem, Matrix, Ring};

/// `u * a * v = d` with `d` diagonal and `d_ii | d_(i+1)(i+1)`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }
    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
        self.v_inv.swap_rows(j, k);
    }
    /// row_i += f row_k
    fn add_row(&mut self, r: &Ring, i: usize, k: usize, f: &Elem) {
        self.a.add_row_multiple(i, k, f);
        self.u.add_row_multiple(i, k, f);
        self.u_inv.add_col_multiple(k, i, &r.neg(f));
    }
    /// col_j += f col_k
    fn add_col(&mut self, r: &Ring, j: usize, k: usize, f: &Elem) {
        self.a.add_col_multiple(j, k, f);
        self.v.add_col_multiple(j, k, f);
        self.v_inv.add_row_multiple(k, j, &r.neg(f));
    }
    fn scale_row(&mut self, r: &Ring, i: usize, unit: &Elem) {
        let inv = r.inverse(unit).unwrap().expect("unit");
        self.a.scale_row(i, unit);
        self.u.scale_row(i, unit);
        for k in 0..self.u_inv.rows() {
            let x = r.mul(self.u_inv.get(k, i), &inv);
            self.u_inv.set(k, i, x);
        }
    }
}

pub fn smith(a: &Matrix) -> Smith {
    let r = a.ring().clone();
    let (m, n) = a.shape();
    let mut w = Work {
        a: a.clone(),
        u: Matrix::identity(&r, m),
        u_inv: Matrix::identity(&r, m),
        v: Matrix::identity(&r, n),
        v_inv: Matrix::identity(&r, n),
    };
    let mut t = 0;
    'outer: while t < m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = w.a.get(i, j);
                    if r.is_zero(x) {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| r.euclid_size(x) < r.euclid_size(w.a.get(bi, bj))) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let piv = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if r.is_zero(w.a.get(i, t)) {
                    continue;
                }
                let (q, rem) = r.div_rem(w.a.get(i, t), &piv);
                w.add_row(&r, i, t, &r.neg(&q));
                if !r.is_zero(&rem) {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if r.is_zero(w.a.get(t, j)) {
                    continue;
                }
                let (q, rem) = r.div_rem(w.a.get(t, j), &piv);
                w.add_col(&r, j, t, &r.neg(&q));
                if !r.is_zero(&rem) {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let mut bad = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    let (_, rem) = r.div_rem(w.a.get(i, j), &piv);
                    if !r.is_zero(&rem) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => w.add_row(&r, t, i, &r.one()),
                None => break,
            }
        }
        let unit = r.normalizing_unit(w.a.get(t, t));
        if !r.is_one(&unit) {
            w.scale_row(&r, t, &unit);
        }
        t += 1;
    }
    Smith { rank: t, d: w.a, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

/// Solves `a x = b` over a Euclidean domain.
pub fn solve(a: &Matrix, b: &[Elem]) -> Option<Vec<Elem>> {
    let r = a.ring().clone();
    let s = smith(a);
    let ub = s.u.mul_vec(b).expect("shape");
    let mut y = vec![r.zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, rem) = r.div_rem(ubi, s.d.get(i, i));
            if !r.is_zero(&rem) {
                return None;
            }
            y[i] = q;
        } else if !r.is_zero(ubi) {
            return None;
        }
    }
    Some(s.v.mul_vec(&y).expect("shape"))
}

/// Columns generating the kernel (a basis, since the ring is a PID).
pub fn kernel(a: &Matrix) -> Matrix {
    let s = smith(a);
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_columns(&idx)
}

/// Basis of the column span of `a`.
pub fn span_basis(a: &Matrix) -> Matrix {
    let r = a.ring().clone();
    let s = smith(a);
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let c: Vec<Elem> = s.u_inv.column(i).iter().map(|x| r.mul(x, s.d.get(i, i))).collect();
        cols.push(c);
    }
    Matrix::from_columns(&r, a.rows(), &cols)
}

/// Structure of span(big)/span(small), assuming span(small) ⊆ span(big):
/// free rank and nonunit invariant factors.
pub fn subquotient(big: &Matrix, small: &Matrix) -> (usize, Vec<Elem>) {
    let r = big.ring().clone();
    let basis = span_basis(big);
    let k = basis.cols();
    let mut coords = Vec::with_capacity(small.cols());
    for j in 0..small.cols() {
        let c = solve(&basis, &small.column(j)).expect("small span lies inside big span");
        coords.push(c);
    }
    let cm = Matrix::from_columns(&r, k, &coords);
    let s = smith(&cm);
    let torsion = s.diagonal().into_iter().filter(|d| !r.is_unit(d).unwrap_or(false)).collect();
    (k - s.rank, torsion)
}
