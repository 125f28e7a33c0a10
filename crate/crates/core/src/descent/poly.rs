//! Multilinear polynomials in the unknowns `X_n_i_j`, `Y_n_i_j`, `Z_n_i_j`
//! with coefficients in a ring.

use crate::error::{Error, Result};
use crate::ring::{parse::parse_raw, Elem, Matrix, Ring, RingHom};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    Z,
}

/// An unknown with 1-based row and column indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub n: i64,
    pub i: usize,
    pub j: usize,
}

impl Var {
    pub fn new(family: Family, n: i64, i: usize, j: usize) -> Var {
        Var { family, n, i, j }
    }

    pub fn parse(s: &str) -> Option<Var> {
        let parts: Vec<&str> = s.split('_').collect();
        if parts.len() != 4 {
            return None;
        }
        let family = match parts[0] {
            "X" => Family::X,
            "Y" => Family::Y,
            "Z" => Family::Z,
            _ => return None,
        };
        if !parts[1..].iter().all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit())) {
            return None;
        }
        Some(Var { family, n: parts[1].parse().ok()?, i: parts[2].parse().ok()?, j: parts[3].parse().ok()? })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::X => 'X',
            Family::Y => 'Y',
            Family::Z => 'Z',
        };
        write!(f, "{c}_{}_{}_{}", self.n, self.i, self.j)
    }
}

/// Sparse polynomial: sorted monomials in the unknowns to coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SymPoly {
    terms: BTreeMap<Vec<Var>, Elem>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn constant(r: &Ring, c: Elem) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(r, Vec::new(), c);
        p
    }

    pub fn var(r: &Ring, v: Var) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(r, vec![v], r.one());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Var>, Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, r: &Ring, mut mono: Vec<Var>, c: Elem) {
        if r.is_zero(&c) {
            return;
        }
        mono.sort_unstable();
        match self.terms.get_mut(&mono) {
            Some(x) => {
                *x = r.add(x, &c);
                if r.is_zero(x) {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add_assign(&mut self, r: &Ring, o: &SymPoly) {
        for (m, c) in &o.terms {
            self.add_term(r, m.clone(), c.clone());
        }
    }

    pub fn neg(&self, r: &Ring) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), r.neg(c))).collect() }
    }

    pub fn scale(&self, r: &Ring, c: &Elem) -> SymPoly {
        let mut p = SymPoly::zero();
        for (m, x) in &self.terms {
            p.add_term(r, m.clone(), r.mul(x, c));
        }
        p
    }

    pub fn mul(&self, r: &Ring, o: &SymPoly) -> SymPoly {
        let mut p = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mono: Vec<Var> = ma.iter().chain(mb).copied().collect();
                p.add_term(r, mono, r.mul(ca, cb));
            }
        }
        p
    }

    /// Value under `values`, with coefficients sent through `hom`.
    pub fn eval(&self, hom: &RingHom, values: &BTreeMap<Var, Elem>) -> Result<Elem> {
        let t = hom.target();
        let mut acc = t.zero();
        for (m, c) in &self.terms {
            let mut term = hom.apply(c);
            for v in m {
                let x = values.get(v).ok_or_else(|| Error::IncompleteAssignment(v.to_string()))?;
                term = t.mul(&term, x);
                if t.is_zero(&term) {
                    break;
                }
            }
            acc = t.add(&acc, &term);
        }
        Ok(acc)
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.terms.keys().flatten()
    }

    /// Canonical text: terms in monomial order joined by ` + `, with
    /// composite coefficients parenthesized.
    pub fn format(&self, r: &Ring) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c {
                Elem::Int(_) | Elem::Rat(_) if r.format(c).starts_with('-') => (true, r.neg(c)),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = r.format(&mag);
            let cs = if cs.contains([' ', '+', '-', '/']) && !m.is_empty() { format!("({cs})") } else { cs };
            let ms: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            if m.is_empty() {
                out.push_str(&cs);
            } else if r.is_one(&mag) {
                out.push_str(&ms.join("*"));
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&ms.join("*"));
            }
        }
        out
    }

    /// Parses the element grammar extended with unknown tokens.
    pub fn parse(r: &Ring, s: &str) -> Result<SymPoly> {
        let ring_vars = r.variables();
        let nv = ring_vars.len();
        let table = std::cell::RefCell::new(Vec::<Var>::new());
        let resolve = |name: &str| -> Option<usize> {
            if let Some(i) = ring_vars.iter().position(|v| v == name) {
                return Some(i);
            }
            let v = Var::parse(name)?;
            let mut t = table.borrow_mut();
            let idx = t.iter().position(|x| *x == v).unwrap_or_else(|| {
                t.push(v);
                t.len() - 1
            });
            Some(nv + idx)
        };
        let raw = parse_raw(s, &resolve)?;
        let table = table.into_inner();
        let mut p = SymPoly::zero();
        for (mono, c) in raw {
            let mut ring_part = Vec::new();
            let mut vars = Vec::new();
            for (idx, e) in mono {
                if idx < nv {
                    ring_part.push((idx, e));
                } else {
                    if e > 1 {
                        return Err(Error::Invalid(format!("unknown {} appears squared", table[idx - nv])));
                    }
                    vars.push(table[idx - nv]);
                }
            }
            let mut single = crate::ring::parse::RawPoly::new();
            single.insert(ring_part, c);
            p.add_term(r, vars, r.from_raw(&single)?);
        }
        Ok(p)
    }
}

/// Dense matrix of polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SymPoly>,
}

impl SymMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SymMatrix {
        SymMatrix { rows, cols, data: vec![SymPoly::zero(); rows * cols] }
    }

    pub fn from_matrix(m: &Matrix) -> SymMatrix {
        let r = m.ring();
        let mut s = SymMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                s.data[i * m.cols() + j] = SymPoly::constant(r, m.get(i, j).clone());
            }
        }
        s
    }

    pub fn identity(r: &Ring, n: usize) -> SymMatrix {
        SymMatrix::from_matrix(&Matrix::identity(r, n))
    }

    /// Matrix of unknowns `family_n_i_j`.
    pub fn unknowns(r: &Ring, family: Family, n: i64, rows: usize, cols: usize) -> SymMatrix {
        let mut s = SymMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                s.data[i * cols + j] = SymPoly::var(r, Var::new(family, n, i + 1, j + 1));
            }
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SymPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SymPoly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn put(&mut self, r0: usize, c0: usize, b: &SymMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn mul(&self, r: &Ring, o: &SymMatrix) -> SymMatrix {
        assert_eq!(self.cols, o.rows, "symbolic product shapes");
        let mut out = SymMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let t = a.mul(r, b);
                        out.data[i * o.cols + j].add_assign(r, &t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, r: &Ring, o: &SymMatrix) -> SymMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "symbolic sum shapes");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&o.data) {
            x.add_assign(r, y);
        }
        out
    }

    pub fn neg(&self, r: &Ring) -> SymMatrix {
        SymMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|p| p.neg(r)).collect() }
    }

    pub fn sub(&self, r: &Ring, o: &SymMatrix) -> SymMatrix {
        self.add(r, &o.neg(r))
    }
}
