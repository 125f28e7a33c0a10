//! Finite-dimensional F_p-algebras viewed as F_p-vector spaces.
//!
//! An element of `R = F_p[x]/I` has coordinates in the standard-monomial
//! basis; an `R`-matrix expands to an `F_p`-matrix with `dim x dim` blocks
//! given by multiplication operators.

use super::field::{self, FieldOps, Fp};
use crate::error::Result;
use crate::ring::{Backend, Elem, Matrix, Poly, Ring};

/// Coordinate handle for a ring with an [`Backend::FpAlgebra`] backend.
pub struct Algebra {
    pub ring: Ring,
    pub p: u64,
    pub dim: usize,
    /// `table[k][j]` = coordinates of `basis_k * basis_j`.
    table: Vec<Vec<Vec<u64>>>,
}

impl Algebra {
    pub fn new(ring: &Ring) -> Option<Algebra> {
        let Ok(Backend::FpAlgebra { p, dim }) = ring.backend() else {
            return None;
        };
        let mut alg = Algebra { ring: ring.clone(), p, dim, table: Vec::new() };
        let basis: Vec<Elem> = (0..dim).map(|k| alg.basis_elem(k)).collect();
        alg.table = basis
            .iter()
            .map(|a| basis.iter().map(|b| alg.coords(&ring.mul(a, b))).collect())
            .collect();
        Some(alg)
    }

    pub fn field(&self) -> Fp {
        Fp(self.p)
    }

    pub fn basis_elem(&self, k: usize) -> Elem {
        match self.ring.standard_basis() {
            None => Elem::Mod(1),
            Some(b) => Elem::Poly(Poly { terms: vec![(b[k].clone(), Elem::Mod(1))] }),
        }
    }

    pub fn coords(&self, a: &Elem) -> Vec<u64> {
        match a {
            Elem::Mod(x) => vec![*x],
            Elem::Poly(p) => {
                let q = self.ring.quotient().unwrap();
                let mut v = vec![0; self.dim];
                for (m, c) in &p.terms {
                    let Elem::Mod(c) = c else { unreachable!() };
                    v[q.basis_index[m]] = *c;
                }
                v
            }
            _ => unreachable!("not an F_p-algebra element"),
        }
    }

    pub fn from_coords(&self, v: &[u64]) -> Elem {
        match self.ring.standard_basis() {
            None => Elem::Mod(v[0]),
            Some(b) => {
                let mut terms: Vec<_> =
                    v.iter().zip(b).filter(|(c, _)| **c != 0).map(|(c, m)| (m.clone(), Elem::Mod(*c))).collect();
                let q = self.ring.quotient().unwrap();
                terms.sort_by(|x, y| q.order.cmp(&y.0, &x.0));
                Elem::Poly(Poly { terms })
            }
        }
    }

    /// Matrix of multiplication by `a`; column j is `a * basis_j`.
    pub fn rho(&self, a: &Elem) -> Vec<Vec<u64>> {
        let f = self.field();
        let c = self.coords(a);
        let mut out = vec![vec![0u64; self.dim]; self.dim];
        for (k, ck) in c.iter().enumerate() {
            if *ck == 0 {
                continue;
            }
            for j in 0..self.dim {
                for (i, t) in self.table[k][j].iter().enumerate() {
                    if *t != 0 {
                        out[i][j] = f.add(&out[i][j], &f.mul(ck, t));
                    }
                }
            }
        }
        out
    }

    /// Expands an `R`-matrix into an `F_p`-matrix.
    pub fn expand(&self, m: &Matrix) -> Vec<Vec<u64>> {
        let d = self.dim;
        let mut out = vec![vec![0u64; m.cols() * d]; m.rows() * d];
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.get(i, j);
                if self.ring.is_zero(e) {
                    continue;
                }
                let r = self.rho(e);
                for a in 0..d {
                    for b in 0..d {
                        out[i * d + a][j * d + b] = r[a][b];
                    }
                }
            }
        }
        out
    }

    pub fn vec_coords(&self, v: &[Elem]) -> Vec<u64> {
        v.iter().flat_map(|e| self.coords(e)).collect()
    }

    pub fn vec_from_coords(&self, v: &[u64]) -> Vec<Elem> {
        v.chunks(self.dim).map(|c| self.from_coords(c)).collect()
    }

    /// F_p-coordinates of the R-span of the columns: all `basis_k * column`.
    pub fn span_vectors(&self, m: &Matrix) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(m.cols() * self.dim);
        for j in 0..m.cols() {
            let col = m.column(j);
            for k in 0..self.dim {
                let b = self.basis_elem(k);
                let scaled: Vec<Elem> = col.iter().map(|x| self.ring.mul(&b, x)).collect();
                out.push(self.vec_coords(&scaled));
            }
        }
        out
    }

    /// F_p-dimension of the R-submodule generated by the columns.
    pub fn span_dim(&self, m: &Matrix) -> usize {
        let vs = self.span_vectors(m);
        field::rank(&self.field(), &vs, m.rows() * self.dim)
    }
}

pub(crate) fn algebra_inverse(ring: &Ring, a: &Elem) -> Result<Option<Elem>> {
    let alg = Algebra::new(ring).expect("finite algebra");
    let m = alg.rho(a);
    let one = alg.coords(&ring.one());
    Ok(field::solve(&alg.field(), &m, alg.dim, &one).map(|x| alg.from_coords(&x)))
}
