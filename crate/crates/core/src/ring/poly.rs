//! Sparse multivariate polynomials over a coefficient field.
//!
//! Terms are kept sorted by decreasing monomial order, so the leading term is
//! always `terms[0]`.

use super::{Elem, Ring};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;

pub type Mono = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    Lex,
    Grlex,
    #[default]
    Degrevlex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grlex => deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)),
            MonomialOrder::Degrevlex => deg(a).cmp(&deg(b)).then_with(|| {
                for k in (0..a.len()).rev() {
                    if a[k] != b[k] {
                        return b[k].cmp(&a[k]);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
            MonomialOrder::Degrevlex => "degrevlex",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "grlex" => Some(MonomialOrder::Grlex),
            "degrevlex" => Some(MonomialOrder::Degrevlex),
            _ => None,
        }
    }
}

pub fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// A polynomial; the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub terms: Vec<(Mono, Elem)>,
}

/// Arithmetic context: coefficient field, number of variables, order.
#[derive(Clone, Copy)]
pub struct PolyCtx<'a> {
    pub field: &'a Ring,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Elem {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| deg(m)).max().unwrap_or(0)
    }
}

impl<'a> PolyCtx<'a> {
    pub fn one_mono(&self) -> Mono {
        vec![0; self.nvars]
    }

    pub fn constant(&self, c: Elem) -> Poly {
        if self.field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(self.one_mono(), c)] }
        }
    }

    pub fn monomial(&self, m: Mono, c: Elem) -> Poly {
        if self.field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = self.one_mono();
        m[i] = 1;
        Poly { terms: vec![(m, self.field.one())] }
    }

    /// Builds a polynomial from unsorted terms, merging duplicates.
    pub fn from_terms(&self, terms: Vec<(Mono, Elem)>) -> Poly {
        let mut acc: HashMap<Mono, Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = self.field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut v: Vec<(Mono, Elem)> = acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        v.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly { terms: v }
    }

    pub fn add(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < p.terms.len() && j < q.terms.len() {
            match self.order.cmp(&p.terms[i].0, &q.terms[j].0) {
                Ordering::Greater => {
                    out.push(p.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(q.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(&p.terms[i].1, &q.terms[j].1);
                    if !self.field.is_zero(&c) {
                        out.push((p.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&p.terms[i..]);
        out.extend_from_slice(&q.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self, p: &Poly) -> Poly {
        Poly {
            terms: p.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, p: &Poly, q: &Poly) -> Poly {
        self.add(p, &self.neg(q))
    }

    pub fn scale(&self, p: &Poly, c: &Elem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: p.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect(),
        }
    }

    /// `c * m * p`; monomial multiplication preserves the order.
    pub fn mul_term(&self, p: &Poly, m: &[u32], c: &Elem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: p
                .terms
                .iter()
                .map(|(pm, a)| (mono_mul(pm, m), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        if p.is_zero() || q.is_zero() {
            return Poly::zero();
        }
        let mut terms = Vec::with_capacity(p.terms.len() * q.terms.len());
        for (a, x) in &p.terms {
            for (b, y) in &q.terms {
                terms.push((mono_mul(a, b), self.field.mul(x, y)));
            }
        }
        self.from_terms(terms)
    }

    pub fn monic(&self, p: &Poly) -> Poly {
        if p.is_zero() {
            return Poly::zero();
        }
        let inv = self.field.inverse(p.lc()).ok().flatten().expect("field coefficient invertible");
        self.scale(p, &inv)
    }

    /// Full reduction of `f` modulo `gs`; the result has no term divisible
    /// by any leading monomial of `gs`.
    pub fn reduce(&self, f: &Poly, gs: &[Poly]) -> Poly {
        let mut rem: Vec<(Mono, Elem)> = Vec::new();
        let mut p = f.clone();
        while !p.is_zero() {
            let (lm, lc) = (p.lm().clone(), p.lc().clone());
            let hit = gs.iter().find(|g| !g.is_zero() && divides(g.lm(), &lm));
            match hit {
                Some(g) => {
                    let q = mono_div(&lm, g.lm());
                    let ginv = self.field.inverse(g.lc()).ok().flatten().expect("field");
                    let c = self.field.mul(&lc, &ginv);
                    let t = self.mul_term(g, &q, &c);
                    p = self.sub(&p, &t);
                }
                None => {
                    rem.push((lm, lc));
                    p.terms.remove(0);
                }
            }
        }
        Poly { terms: rem }
    }

    pub fn pow(&self, p: &Poly, mut e: u32, gs: &[Poly]) -> Poly {
        let mut base = p.clone();
        let mut acc = self.constant(self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(&self.mul(&acc, &base), gs);
            }
            e >>= 1;
            if e > 0 {
                base = self.reduce(&self.mul(&base, &base), gs);
            }
        }
        acc
    }
}
