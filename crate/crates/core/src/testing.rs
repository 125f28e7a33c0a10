//! Random instance generators shared by unit tests, property tests and the
//! acceptance suite.

use crate::complex::ChainComplex;
use crate::ring::{Elem, Matrix, Ring};
use rand::Rng;

/// One ring of each supported kind with `linear_solve`.
pub fn solver_rings() -> Vec<Ring> {
    vec![
        Ring::integers(),
        Ring::rationals(),
        Ring::integers_mod(4).unwrap(),
        Ring::integers_mod(12).unwrap(),
        Ring::prime_field(5).unwrap(),
        Ring::poly_quotient(&Ring::prime_field(2).unwrap(), &["x"], &["x^2"]).unwrap(),
        Ring::poly_quotient(&Ring::prime_field(2).unwrap(), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap(),
        Ring::poly_quotient(&Ring::prime_field(3).unwrap(), &["x"], &["x^3"]).unwrap(),
        Ring::poly_quotient(&Ring::prime_field(3).unwrap(), &["t"], &[]).unwrap(),
    ]
}

pub fn f2_x2() -> Ring {
    Ring::poly_quotient(&Ring::prime_field(2).unwrap(), &["x"], &["x^2"]).unwrap()
}

pub fn f2_xy() -> Ring {
    Ring::poly_quotient(&Ring::prime_field(2).unwrap(), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap()
}

pub fn f3_x3() -> Ring {
    Ring::poly_quotient(&Ring::prime_field(3).unwrap(), &["x"], &["x^3"]).unwrap()
}

/// A random element with small coefficients.
pub fn random_elem<R: Rng>(ring: &Ring, rng: &mut R) -> Elem {
    match ring.standard_basis() {
        Some(basis) => {
            let p = ring.characteristic() as i64;
            let mut acc = ring.zero();
            for m in basis {
                let c = rng.gen_range(0..p);
                if c == 0 {
                    continue;
                }
                let mut t = ring.from_int(c);
                for (i, e) in m.iter().enumerate() {
                    t = ring.mul(&t, &ring.pow(&ring.var_at(i), *e));
                }
                acc = ring.add(&acc, &t);
            }
            acc
        }
        None if !ring.variables().is_empty() => {
            let mut acc = ring.zero();
            let nv = ring.variables().len();
            for _ in 0..rng.gen_range(0..4) {
                let mut t = ring.from_int(rng.gen_range(-3..=3));
                for i in 0..nv {
                    t = ring.mul(&t, &ring.pow(&ring.var_at(i), rng.gen_range(0..3)));
                }
                acc = ring.add(&acc, &t);
            }
            acc
        }
        None => {
            if ring == &Ring::rationals() {
                let n = rng.gen_range(-6..=6);
                let d = rng.gen_range(1..=4);
                ring.mul(&ring.from_int(n), &ring.inverse(&ring.from_int(d)).unwrap().unwrap())
            } else {
                ring.from_int(rng.gen_range(-20..=20))
            }
        }
    }
}

/// A random element of the maximal ideal of a local ring.
pub fn random_in_max_ideal<R: Rng>(ring: &Ring, rng: &mut R) -> Elem {
    let gens = ring.max_ideal_generators().expect("local ring");
    let mut acc = ring.zero();
    for g in gens {
        let c = random_elem(ring, rng);
        acc = ring.add(&acc, &ring.mul(&c, &g));
    }
    acc
}

/// A random nonzero element of the maximal ideal, when the ideal is nonzero.
pub fn random_nonzero_in_max_ideal<R: Rng>(ring: &Ring, rng: &mut R) -> Elem {
    for _ in 0..64 {
        let a = random_in_max_ideal(ring, rng);
        if !ring.is_zero(&a) {
            return a;
        }
    }
    ring.max_ideal_generators().unwrap().into_iter().next().unwrap_or_else(|| ring.zero())
}

pub fn random_matrix<R: Rng>(ring: &Ring, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| random_elem(ring, rng))
}

pub fn random_max_ideal_matrix<R: Rng>(ring: &Ring, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| random_in_max_ideal(ring, rng))
}

/// A random invertible matrix over a local ring: `L * U * P` with unit
/// diagonals.
pub fn random_invertible<R: Rng>(ring: &Ring, n: usize, rng: &mut R) -> Matrix {
    let units: Vec<Elem> = (0..n)
        .map(|_| loop {
            let u = random_elem(ring, rng);
            if ring.is_unit(&u).unwrap_or(false) {
                break u;
            }
        })
        .collect();
    let l = Matrix::from_fn(ring, n, n, |i, j| {
        if i == j {
            ring.one()
        } else if i > j {
            random_elem(ring, rng)
        } else {
            ring.zero()
        }
    });
    let u = Matrix::from_fn(ring, n, n, |i, j| {
        if i == j {
            units[i].clone()
        } else if i < j {
            random_elem(ring, rng)
        } else {
            ring.zero()
        }
    });
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = Matrix::from_fn(ring, n, n, |i, j| if perm[i] == j { ring.one() } else { ring.zero() });
    l.mul(&u).unwrap().mul(&p).unwrap()
}

/// A random complex on degrees `lo..lo+len` with ranks at most `max_rank`;
/// each `d_{n+1}` factors through `ker d_n`.
pub fn random_complex<R: Rng>(ring: &Ring, lo: i64, len: usize, max_rank: usize, rng: &mut R) -> ChainComplex {
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for k in 1..len {
        let d = if k == 1 {
            random_matrix(ring, ranks[0], ranks[1], rng)
        } else {
            let ker = crate::linear::kernel_basis(&diffs[k - 2]).expect("linear_solve ring");
            let mix = random_matrix(ring, ker.cols(), ranks[k], rng);
            ker.mul(&mix).unwrap()
        };
        diffs.push(d);
    }
    ChainComplex::new(ring, lo, ranks, diffs).expect("square-zero by construction")
}

/// A random minimal complex over a local ring: entries in the maximal ideal.
pub fn random_minimal_complex<R: Rng>(ring: &Ring, lo: i64, len: usize, max_rank: usize, rng: &mut R) -> ChainComplex {
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for k in 1..len {
        let d = if k == 1 {
            random_max_ideal_matrix(ring, ranks[0], ranks[1], rng)
        } else {
            let ker = crate::linear::kernel_basis(&diffs[k - 2]).expect("linear_solve ring");
            let mix = random_matrix(ring, ker.cols(), ranks[k], rng);
            let cand = ker.mul(&mix).unwrap();
            let m = Matrix::from_fn(ring, cand.rows(), cand.cols(), |i, j| {
                let x = cand.get(i, j);
                if ring.in_max_ideal(x).unwrap() { x.clone() } else { ring.zero() }
            });
            if diffs[k - 2].mul(&m).unwrap().is_zero() { m } else { Matrix::zeros(ring, ranks[k - 1], ranks[k]) }
        };
        diffs.push(d);
    }
    ChainComplex::new(ring, lo, ranks, diffs).expect("square-zero by construction")
}

/// A random chain map `M -> N`: a random combination of degree-0 cycles of
/// `Hom(M, N)`.
pub fn random_chain_map<R: Rng>(m: &ChainComplex, n: &ChainComplex, rng: &mut R) -> crate::complex::ChainMap {
    use crate::complex::{hom_complex, hom_vector_components, ChainMap};
    let (h, layout) = hom_complex(m, n).unwrap();
    let cycles = crate::linear::kernel_basis(&h.diff(0)).unwrap();
    if cycles.cols() == 0 {
        return ChainMap::zero(m, n);
    }
    let mix = random_matrix(m.ring(), cycles.cols(), 1, rng);
    let v = cycles.mul(&mix).unwrap().column(0);
    ChainMap::new(m, n, hom_vector_components(m, n, &layout, 0, &v)).unwrap()
}

/// Random max-ideal matrix with no zero row and no zero column.
pub fn random_full_max_ideal_matrix<R: Rng>(ring: &Ring, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(ring, rows, cols, |_, _| random_nonzero_in_max_ideal(ring, rng));
        let m = Matrix::from_fn(ring, rows, cols, |i, j| if rng.gen_bool(0.7) { m.get(i, j).clone() } else { ring.zero() });
        let rows_ok = (0..rows).all(|i| m.row(i).iter().any(|x| !ring.is_zero(x)));
        let cols_ok = (0..cols).all(|j| m.column(j).iter().any(|x| !ring.is_zero(x)));
        if rows_ok && cols_ok {
            return m;
        }
    }
}

/// Minimal complex on `0..=m` with all ranks in `1..=max_rank` and no zero
/// rows or columns in any differential, over a ring whose maximal ideal
/// squares to zero.
pub fn random_nondegenerate_minimal<R: Rng>(ring: &Ring, m: usize, max_rank: usize, rng: &mut R) -> ChainComplex {
    let ranks: Vec<usize> = (0..=m).map(|_| rng.gen_range(1..=max_rank)).collect();
    let diffs = (1..=m).map(|n| random_full_max_ideal_matrix(ring, ranks[n - 1], ranks[n], rng)).collect();
    ChainComplex::new(ring, 0, ranks, diffs).expect("maximal ideal squares to zero")
}
