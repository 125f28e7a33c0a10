//! Kernels, solving and homology over every ring with `linear_solve`.
//!
//! Dispatch by [`Backend`]: reduced echelon form over Q, Smith form over Z
//! and F_p[x], Howell form over Z/n, and expansion to F_p-linear algebra for
//! finite-dimensional algebras (prime fields included).

pub mod expand;
pub mod field;
pub mod howell;
pub mod smith;

use crate::error::{Error, Result};
use crate::ring::{Backend, Elem, Matrix, Ring};
use expand::Algebra;
use field::{FieldOps, Fp, RingField, SpanBuilder};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use std::fmt;

/// Isomorphism type of a subquotient, as far as the backend determines it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    /// Vector space of the given dimension.
    Vector { dim: usize },
    /// Module over a PID: free rank plus nonunit invariant factors.
    Euclid { free_rank: usize, torsion: Vec<Elem> },
    /// Finite abelian group with invariant factors `d_1 | d_2 | ...`.
    Abelian { factors: Vec<BigUint> },
    /// Module over a finite F_p-algebra of the given F_p-dimension.
    Algebra { dim: usize },
}

/// `span(generators) / span(relations)` inside a free module.
#[derive(Debug, Clone)]
pub struct HomologyModule {
    pub ring: Ring,
    pub generators: Matrix,
    pub relations: Matrix,
    pub structure: Structure,
    pub cardinality: Option<BigUint>,
    pub is_zero: bool,
}

impl HomologyModule {
    /// Short description such as `Z/2`, `Z^2 + Z/3`, `GF(5)^2` or `0`.
    pub fn describe(&self) -> String {
        if self.is_zero {
            return "0".into();
        }
        let base = match self.ring.backend() {
            Ok(Backend::FpAlgebra { p, dim: 1 }) => format!("GF({p})"),
            _ => self.ring.to_string(),
        };
        let pow = |b: &str, k: usize| if k == 1 { b.to_string() } else { format!("{b}^{k}") };
        match &self.structure {
            Structure::Vector { dim } => pow(&base, *dim),
            Structure::Euclid { free_rank, torsion } => {
                let mut parts = Vec::new();
                if *free_rank > 0 {
                    parts.push(pow(&base, *free_rank));
                }
                for t in torsion {
                    let s = self.ring.format(t);
                    if self.ring.variables().is_empty() {
                        parts.push(format!("{base}/{s}"));
                    } else {
                        parts.push(format!("{base}/({s})"));
                    }
                }
                parts.join(" + ")
            }
            Structure::Abelian { factors } => factors.iter().map(|f| format!("Z/{f}")).collect::<Vec<_>>().join(" + "),
            Structure::Algebra { dim } => format!("length-{dim} module over GF({}) (order {})", self.ring.characteristic(), self.cardinality.clone().unwrap_or_default()),
        }
    }

    /// Dimension over the residue/coefficient field when meaningful.
    pub fn dimension(&self) -> Option<usize> {
        match &self.structure {
            Structure::Vector { dim } | Structure::Algebra { dim } => Some(*dim),
            _ => None,
        }
    }
}

impl fmt::Display for HomologyModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Result of [`normal_form`].
#[derive(Debug, Clone)]
pub enum NormalForm {
    /// Reduced echelon form `t * a = e` over a field.
    Echelon { form: Matrix, transform: Matrix, pivots: Vec<usize> },
    Smith(smith::Smith),
    /// Howell rows with `transform * [a; 0] = form`.
    Howell { form: Matrix, transform: Matrix },
}

fn require_solve(r: &Ring) -> Result<Backend> {
    if !r.capabilities().linear_solve {
        return Err(Error::CapabilityMissing(format!("linear_solve over {r}")));
    }
    r.backend()
}

fn to_u64(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| if let Elem::Mod(v) = x { *v } else { unreachable!() }).collect())
        .collect()
}

fn to_rows(m: &Matrix) -> Vec<Vec<Elem>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn lift_to_z(m: &Matrix, n: u64) -> Matrix {
    let z = Ring::integers();
    let mut out = m.map_to(&z, |x| match x {
        Elem::Mod(v) => Elem::Int(BigInt::from(*v)),
        _ => unreachable!(),
    });
    let nn = Matrix::identity(&z, m.rows()).scale(&Elem::Int(BigInt::from(n)));
    out = out.hcat(&nn).expect("shape");
    out
}

/// Columns generating `{x : a x = 0}`.
pub fn kernel_basis(a: &Matrix) -> Result<Matrix> {
    let r = a.ring().clone();
    let k = a.cols();
    match require_solve(&r)? {
        Backend::Rational => {
            let ns = field::nullspace(&RingField(&r), &to_rows(a), k);
            Ok(Matrix::from_columns(&r, k, &ns))
        }
        Backend::Euclid => Ok(smith::kernel(a)),
        Backend::Howell(n) => {
            let gens = howell::kernel(n, &to_u64(a), a.rows(), k);
            let cols: Vec<Vec<Elem>> = gens.into_iter().map(|g| g.into_iter().map(Elem::Mod).collect()).collect();
            let m = Matrix::from_columns(&r, k, &cols);
            if r.is_local() {
                minimal_generators(&m)
            } else {
                Ok(m)
            }
        }
        Backend::FpAlgebra { .. } => {
            let alg = Algebra::new(&r).unwrap();
            let ns = field::nullspace(&alg.field(), &alg.expand(a), k * alg.dim);
            let cols: Vec<Vec<Elem>> = ns.iter().map(|v| alg.vec_from_coords(v)).collect();
            let m = Matrix::from_columns(&r, k, &cols);
            if alg.dim == 1 {
                Ok(m)
            } else if r.is_local() {
                minimal_generators(&m)
            } else {
                irredundant_generators(&alg, &m)
            }
        }
    }
}

fn irredundant_generators(alg: &Algebra, m: &Matrix) -> Result<Matrix> {
    let mut span = SpanBuilder::new(alg.field(), m.rows() * alg.dim);
    let mut keep = Vec::new();
    for j in 0..m.cols() {
        let col = m.column(j);
        if span.contains(&alg.vec_coords(&col)) {
            continue;
        }
        let one = Matrix::from_columns(&alg.ring, m.rows(), std::slice::from_ref(&col));
        for v in alg.span_vectors(&one) {
            span.insert(&v);
        }
        keep.push(col);
    }
    Ok(Matrix::from_columns(&alg.ring, m.rows(), &keep))
}

/// A solution of `a x = b`, if any.
pub fn solve(a: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let r = a.ring().clone();
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows vs right side of length {}", a.rows(), b.len())));
    }
    let k = a.cols();
    match require_solve(&r)? {
        Backend::Rational => Ok(field::solve(&RingField(&r), &to_rows(a), k, b)),
        Backend::Euclid => Ok(smith::solve(a, b)),
        Backend::Howell(n) => {
            let bv: Vec<u64> = b.iter().map(|x| if let Elem::Mod(v) = x { *v } else { unreachable!() }).collect();
            Ok(howell::solve(n, &to_u64(a), a.rows(), k, &bv).map(|x| x.into_iter().map(Elem::Mod).collect()))
        }
        Backend::FpAlgebra { .. } => {
            let alg = Algebra::new(&r).unwrap();
            let rhs = alg.vec_coords(b);
            Ok(field::solve(&alg.field(), &alg.expand(a), k * alg.dim, &rhs).map(|x| alg.vec_from_coords(&x)))
        }
    }
}

/// Solves `a X = B` column by column.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve(a, &b.column(j))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_columns(a.ring(), a.cols(), &cols)))
}

/// Whether `v` lies in the column span of `gens`.
pub fn in_span(gens: &Matrix, v: &[Elem]) -> Result<bool> {
    if gens.cols() == 0 {
        return Ok(v.iter().all(|x| gens.ring().is_zero(x)));
    }
    Ok(solve(gens, v)?.is_some())
}

/// Whether every column of `small` lies in the column span of `big`.
pub fn span_contains(big: &Matrix, small: &Matrix) -> Result<bool> {
    for j in 0..small.cols() {
        if !in_span(big, &small.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cardinality of the column span, over finite rings.
pub fn span_cardinality(gens: &Matrix) -> Result<Option<BigUint>> {
    let r = gens.ring().clone();
    match require_solve(&r)? {
        Backend::Howell(n) => {
            let rows = to_u64(&gens.transpose());
            Ok(Some(howell::span_size(n, &rows, gens.rows())))
        }
        Backend::FpAlgebra { p, .. } => {
            let alg = Algebra::new(&r).unwrap();
            Ok(Some(BigUint::from(p).pow(alg.span_dim(gens) as u32)))
        }
        _ => Ok(None),
    }
}

/// `span(big) / span(small)`, assuming `span(small) ⊆ span(big)`.
pub fn subquotient(big: &Matrix, small: &Matrix) -> Result<HomologyModule> {
    let r = big.ring().clone();
    if big.rows() != small.rows() {
        return Err(Error::DimensionMismatch("subquotient ambient ranks differ".into()));
    }
    let (structure, cardinality) = match require_solve(&r)? {
        Backend::Rational => {
            let f = RingField(&r);
            let a = field::rank(&f, &to_rows(&big.transpose()), big.rows());
            let b = field::rank(&f, &to_rows(&small.transpose()), small.rows());
            (Structure::Vector { dim: a - b }, None)
        }
        Backend::Euclid => {
            let (free_rank, torsion) = smith::subquotient(big, small);
            let card = if free_rank == 0 && matches!(r.kind(), crate::ring::Kind::Integers) {
                let mut acc = BigUint::one();
                for t in &torsion {
                    if let Elem::Int(x) = t {
                        acc *= x.magnitude();
                    }
                }
                Some(acc)
            } else if free_rank == 0 {
                let p = r.characteristic();
                let deg: u32 = torsion.iter().map(|t| r.euclid_size(t).try_into().unwrap_or(0u32)).sum();
                Some(BigUint::from(p).pow(deg))
            } else {
                None
            };
            (Structure::Euclid { free_rank, torsion }, card)
        }
        Backend::Howell(n) => {
            let a = span_cardinality(big)?.unwrap();
            let b = span_cardinality(small)?.unwrap();
            let card = &a / &b;
            let factors = if card.is_one() {
                Vec::new()
            } else {
                let (_, tors) = smith::subquotient(&lift_to_z(big, n), &lift_to_z(small, n));
                tors.into_iter().map(|t| if let Elem::Int(x) = t { x.magnitude().clone() } else { unreachable!() }).collect()
            };
            (Structure::Abelian { factors }, Some(card))
        }
        Backend::FpAlgebra { p, dim } => {
            let alg = Algebra::new(&r).unwrap();
            let d = alg.span_dim(big) - alg.span_dim(small);
            let s = if dim == 1 { Structure::Vector { dim: d } } else { Structure::Algebra { dim: d } };
            (s, Some(BigUint::from(p).pow(d as u32)))
        }
    };
    let is_zero = match &structure {
        Structure::Vector { dim } | Structure::Algebra { dim } => *dim == 0,
        Structure::Euclid { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
        Structure::Abelian { .. } => cardinality.as_ref().map(|c| c.is_one()).unwrap_or(false),
    };
    Ok(HomologyModule { ring: r, generators: big.clone(), relations: small.clone(), structure, cardinality, is_zero })
}

/// `ker(d_out) / im(d_in)` for composable `d_out ∘ d_in = 0`.
pub fn homology_module(d_in: &Matrix, d_out: &Matrix) -> Result<HomologyModule> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let cycles = kernel_basis(d_out)?;
    subquotient(&cycles, d_in)
}

/// Generators of `{x : d x ∈ span(rel)}`.
pub fn preimage_of_span(d: &Matrix, rel: &Matrix) -> Result<Matrix> {
    if rel.cols() == 0 {
        return kernel_basis(d);
    }
    let k = d.cols();
    let ker = kernel_basis(&d.hcat(rel)?)?;
    Ok(ker.submatrix(0..k, 0..ker.cols()))
}

/// A minimal generating set of the column span over a local ring.
pub fn minimal_generators(gens: &Matrix) -> Result<Matrix> {
    let r = gens.ring().clone();
    if !r.is_local() {
        return Err(Error::NotLocal);
    }
    let rows = gens.rows();
    match require_solve(&r)? {
        Backend::Rational => {
            let mut span = SpanBuilder::new(RingField(&r), rows);
            let keep: Vec<Vec<Elem>> = gens.columns().into_iter().filter(|c| span.insert(c)).collect();
            Ok(Matrix::from_columns(&r, rows, &keep))
        }
        Backend::FpAlgebra { .. } => {
            let alg = Algebra::new(&r).unwrap();
            let mut span = SpanBuilder::new(alg.field(), rows * alg.dim);
            let maxgens = r.max_ideal_generators()?;
            for c in gens.columns() {
                for x in &maxgens {
                    let v: Vec<Elem> = c.iter().map(|e| r.mul(x, e)).collect();
                    for k in 0..alg.dim {
                        let b = alg.basis_elem(k);
                        let w: Vec<Elem> = v.iter().map(|e| r.mul(&b, e)).collect();
                        span.insert(&alg.vec_coords(&w));
                    }
                }
            }
            let keep: Vec<Vec<Elem>> =
                gens.columns().into_iter().filter(|c| span.insert(&alg.vec_coords(c))).collect();
            Ok(Matrix::from_columns(&r, rows, &keep))
        }
        Backend::Howell(_) => {
            let maxgens = r.max_ideal_generators()?;
            let mut basis: Vec<Vec<Elem>> = Vec::new();
            for c in gens.columns() {
                for x in &maxgens {
                    basis.push(c.iter().map(|e| r.mul(x, e)).collect());
                }
            }
            let mut keep = Vec::new();
            for c in gens.columns() {
                let m = Matrix::from_columns(&r, rows, &basis);
                if c.iter().all(|x| r.is_zero(x)) || (m.cols() > 0 && in_span(&m, &c)?) {
                    continue;
                }
                basis.push(c.clone());
                keep.push(c);
            }
            Ok(Matrix::from_columns(&r, rows, &keep))
        }
        Backend::Euclid => Err(Error::NotLocal),
    }
}

/// Reduced echelon, Smith or Howell form depending on the ring.
pub fn normal_form(a: &Matrix) -> Result<NormalForm> {
    let r = a.ring().clone();
    match require_solve(&r)? {
        Backend::Euclid => Ok(NormalForm::Smith(smith::smith(a))),
        Backend::Howell(n) => {
            let rows = to_u64(a);
            let h = howell::howell(n, &rows, a.cols(), true);
            let form_rows: Vec<Vec<Elem>> = h.rows.iter().map(|x| x.iter().map(|v| Elem::Mod(*v)).collect()).collect();
            let form = if form_rows.is_empty() {
                Matrix::zeros(&r, 0, a.cols())
            } else {
                Matrix::from_rows(&r, form_rows)?
            };
            let t = h.transform.unwrap();
            let trows: Vec<Vec<Elem>> = t.iter().map(|x| x.iter().map(|v| Elem::Mod(*v)).collect()).collect();
            let transform = if trows.is_empty() {
                Matrix::zeros(&r, 0, a.rows())
            } else {
                Matrix::from_rows(&r, trows)?
            };
            Ok(NormalForm::Howell { form, transform })
        }
        Backend::Rational => Ok(echelon(&RingField(&r), a, |x| x.clone(), |x| x)),
        Backend::FpAlgebra { p, dim: 1 } => Ok(echelon(
            &Fp(p),
            a,
            |x| if let Elem::Mod(v) = x { *v } else { unreachable!() },
            Elem::Mod,
        )),
        Backend::FpAlgebra { .. } => {
            Err(Error::CapabilityMissing("normal forms over non-field finite algebras".into()))
        }
    }
}

fn echelon<F: FieldOps>(f: &F, a: &Matrix, to: impl Fn(&Elem) -> F::E, from: impl Fn(F::E) -> Elem) -> NormalForm {
    let (m, k) = a.shape();
    let mut rows: Vec<Vec<F::E>> = (0..m)
        .map(|i| {
            let mut row: Vec<F::E> = a.row(i).iter().map(&to).collect();
            row.extend((0..m).map(|j| if i == j { f.one() } else { f.zero() }));
            row
        })
        .collect();
    let pivots = field::rref(f, &mut rows, k);
    let r = a.ring();
    let form = Matrix::from_fn(r, m, k, |i, j| from(rows[i][j].clone()));
    let transform = Matrix::from_fn(r, m, m, |i, j| from(rows[i][k + j].clone()));
    NormalForm::Echelon { form, transform, pivots }
}

/// Rank of the column span over a field-like backend, F_p-dimension for
/// finite algebras, or free rank over a PID.
pub fn span_rank(gens: &Matrix) -> Result<usize> {
    let r = gens.ring().clone();
    match require_solve(&r)? {
        Backend::Rational => Ok(field::rank(&RingField(&r), &to_rows(&gens.transpose()), gens.rows())),
        Backend::FpAlgebra { .. } => Ok(Algebra::new(&r).unwrap().span_dim(gens)),
        Backend::Euclid => Ok(smith::smith(gens).rank),
        Backend::Howell(_) => Err(Error::CapabilityMissing("rank over Z/n".into())),
    }
}

#[cfg(test)]
mod tests;
