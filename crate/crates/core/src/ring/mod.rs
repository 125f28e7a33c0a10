//! Exact commutative rings and their elements.
//!
//! A [`Ring`] is a cheap-to-clone handle describing one of the supported
//! rings. Elements are plain [`Elem`] values that are always stored in
//! canonical form, so structural equality is ring equality.

pub mod groebner;
pub mod hom;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use hom::RingHom;
pub use matrix::Matrix;
pub use poly::{MonomialOrder, Mono, Poly, PolyCtx};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// An element of some ring. Which variant is valid depends on the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(Poly),
}

/// What a ring can certify about itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capabilities {
    pub exact_equality: bool,
    pub linear_solve: bool,
    pub local: bool,
    /// Smallest k with m^k = 0 on generators, when local.
    pub nilpotency_bound: Option<u32>,
    pub finite: bool,
}

/// Which linear-algebra engine handles matrices over a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Rational,
    Euclid,
    Howell(u64),
    /// Finite-dimensional algebra over F_p, handled by expansion.
    FpAlgebra { p: u64, dim: usize },
}

#[derive(Debug)]
pub(crate) struct Quotient {
    pub field: Ring,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub gb: Vec<Poly>,
    pub basis: Option<Vec<Mono>>,
    pub basis_index: HashMap<Mono, usize>,
    pub nilpotency: Option<Vec<u32>>,
}

#[derive(Debug)]
pub(crate) enum Kind {
    Integers,
    Rationals,
    ModN(u64),
    PrimeField(u64),
    Quotient(Quotient),
}

#[derive(Debug)]
pub(crate) struct RingInner {
    pub kind: Kind,
    pub caps: Capabilities,
}

#[derive(Clone)]
pub struct Ring(pub(crate) Arc<RingInner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Integers, Kind::Integers) | (Kind::Rationals, Kind::Rationals) => true,
            (Kind::ModN(a), Kind::ModN(b)) => a == b,
            (Kind::PrimeField(a), Kind::PrimeField(b)) => a == b,
            (Kind::Quotient(a), Kind::Quotient(b)) => {
                a.field == b.field && a.vars == b.vars && a.order == b.order && a.gb == b.gb
            }
            _ => false,
        }
    }
}
impl Eq for Ring {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `n = p^k`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let (mut m, mut k) = (n, 0u32);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (g, x) = {
        let e = BigInt::from(a).extended_gcd(&BigInt::from(n));
        (e.gcd, e.x)
    };
    if !g.is_one() {
        return None;
    }
    let nn = BigInt::from(n);
    Some(x.mod_floor(&nn).to_u64().unwrap())
}

fn simple(kind: Kind, caps: Capabilities) -> Ring {
    Ring(Arc::new(RingInner { kind, caps }))
}

impl Ring {
    pub fn integers() -> Ring {
        simple(
            Kind::Integers,
            Capabilities { exact_equality: true, linear_solve: true, local: false, nilpotency_bound: None, finite: false },
        )
    }

    pub fn rationals() -> Ring {
        simple(
            Kind::Rationals,
            Capabilities { exact_equality: true, linear_solve: true, local: true, nilpotency_bound: Some(1), finite: false },
        )
    }

    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::BadModulus(n));
        }
        let pp = prime_power(n);
        Ok(simple(
            Kind::ModN(n),
            Capabilities {
                exact_equality: true,
                linear_solve: true,
                local: pp.is_some(),
                nilpotency_bound: pp.map(|(_, k)| k),
                finite: true,
            },
        ))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Invalid("prime fields are limited to p < 2^31".into()));
        }
        Ok(simple(
            Kind::PrimeField(p),
            Capabilities { exact_equality: true, linear_solve: true, local: true, nilpotency_bound: Some(1), finite: true },
        ))
    }

    /// `field[vars] / (ideal)` with the default degrevlex order.
    pub fn poly_quotient(field: &Ring, vars: &[&str], ideal: &[&str]) -> Result<Ring> {
        Self::poly_quotient_with(field, vars, ideal, MonomialOrder::Degrevlex, groebner::DEFAULT_SPAIR_BUDGET)
    }

    pub fn poly_quotient_with(
        field: &Ring,
        vars: &[&str],
        ideal: &[&str],
        order: MonomialOrder,
        budget: usize,
    ) -> Result<Ring> {
        if !matches!(field.0.kind, Kind::Rationals | Kind::PrimeField(_)) {
            return Err(Error::Invalid("coefficient ring must be Q or a prime field".into()));
        }
        if vars.is_empty() {
            return Err(Error::EmptyVariableList);
        }
        let vars: Vec<String> = vars.iter().map(|s| s.trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = !v.is_empty()
                && v.chars().next().map(|c| c.is_ascii_alphabetic()).unwrap_or(false)
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || is_system_token(v) {
                return Err(Error::Invalid(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        let ctx = PolyCtx { field, nvars: vars.len(), order };
        let mut gens = Vec::new();
        for g in ideal {
            let raw = parse::parse_raw(g, &|name| vars.iter().position(|v| v == name))?;
            gens.push(raw_to_poly(&ctx, &raw)?);
        }
        let gb = groebner::reduced_basis(&ctx, &gens, budget)?;
        if gb.iter().any(|g| poly::deg(g.lm()) == 0) {
            return Err(Error::Invalid("ideal is the unit ideal".into()));
        }
        Ok(Self::build_quotient(field.clone(), vars, order, gb))
    }

    fn build_quotient(field: Ring, vars: Vec<String>, order: MonomialOrder, gb: Vec<Poly>) -> Ring {
        let n = vars.len();
        let ctx = PolyCtx { field: &field, nvars: n, order };
        // finite dimension: each variable has a pure power among leading monomials
        let mut caps_exp = vec![None; n];
        for g in &gb {
            let lm = g.lm();
            let nz: Vec<usize> = (0..n).filter(|&i| lm[i] > 0).collect();
            if nz.len() == 1 {
                let i = nz[0];
                caps_exp[i] = Some(caps_exp[i].map_or(lm[i], |e: u32| e.min(lm[i])));
            }
        }
        let basis = if caps_exp.iter().all(|c| c.is_some()) {
            let bounds: Vec<u32> = caps_exp.iter().map(|c| c.unwrap()).collect();
            let mut out = Vec::new();
            let mut cur = vec![0u32; n];
            enumerate_standard(&gb, &bounds, 0, &mut cur, &mut out);
            out.sort_by(|a, b| order.cmp(a, b));
            Some(out)
        } else {
            None
        };
        let basis_index = basis
            .as_ref()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .unwrap_or_default();
        // nilpotency witnesses
        let limit = basis.as_ref().map(|b| b.len() as u32 + 1).unwrap_or(64);
        let mut nil = Vec::with_capacity(n);
        for i in 0..n {
            let x = ctx.var(i);
            let mut p = x.clone();
            let mut k = 1;
            while !p.is_zero() && k <= limit {
                p = ctx.reduce(&ctx.mul(&p, &x), &gb);
                k += 1;
            }
            if p.is_zero() {
                nil.push(k);
            } else {
                break;
            }
        }
        let nilpotency = (nil.len() == n).then_some(nil);
        let fp = matches!(field.0.kind, Kind::PrimeField(_));
        let univariate_poly = n == 1 && gb.is_empty();
        let caps = Capabilities {
            exact_equality: true,
            linear_solve: fp && (basis.is_some() || univariate_poly),
            local: nilpotency.is_some(),
            nilpotency_bound: nilpotency.as_ref().map(|v| v.iter().copied().max().unwrap_or(1)),
            finite: fp && basis.is_some(),
        };
        simple(
            Kind::Quotient(Quotient { field, vars, order, gb, basis, basis_index, nilpotency }),
            caps,
        )
    }

    pub fn capabilities(&self) -> &Capabilities {
        &self.0.caps
    }

    pub fn is_local(&self) -> bool {
        self.0.caps.local
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub(crate) fn quotient(&self) -> Option<&Quotient> {
        match &self.0.kind {
            Kind::Quotient(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.0.kind, Kind::Rationals | Kind::PrimeField(_))
    }

    /// Characteristic of the ring: 0 for Z, Q and polynomial rings over Q.
    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            Kind::Integers | Kind::Rationals => 0,
            Kind::ModN(n) | Kind::PrimeField(n) => *n,
            Kind::Quotient(q) => q.field.characteristic(),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        self.quotient().map(|q| q.vars.clone()).unwrap_or_default()
    }

    pub fn coefficient_field(&self) -> Option<&Ring> {
        self.quotient().map(|q| &q.field)
    }

    /// Standard-monomial basis of a finite-dimensional quotient.
    pub fn standard_basis(&self) -> Option<&[Mono]> {
        self.quotient().and_then(|q| q.basis.as_deref())
    }

    pub fn nilpotency_witnesses(&self) -> Option<&[u32]> {
        self.quotient().and_then(|q| q.nilpotency.as_deref())
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        self.quotient().map(|q| q.gb.as_slice()).unwrap_or(&[])
    }

    pub fn backend(&self) -> Result<Backend> {
        match &self.0.kind {
            Kind::Integers => Ok(Backend::Euclid),
            Kind::Rationals => Ok(Backend::Rational),
            Kind::ModN(n) => Ok(Backend::Howell(*n)),
            Kind::PrimeField(p) => Ok(Backend::FpAlgebra { p: *p, dim: 1 }),
            Kind::Quotient(q) => match (&q.field.0.kind, &q.basis) {
                (Kind::PrimeField(p), Some(b)) => Ok(Backend::FpAlgebra { p: *p, dim: b.len() }),
                (Kind::PrimeField(_), None) if q.vars.len() == 1 && q.gb.is_empty() => Ok(Backend::Euclid),
                _ => Err(Error::CapabilityMissing(format!("linear_solve over {self}"))),
            },
        }
    }

    pub(crate) fn ctx(&self) -> PolyCtx<'_> {
        let q = self.quotient().expect("polynomial ring");
        PolyCtx { field: &q.field, nvars: q.vars.len(), order: q.order }
    }

    // ----- constructors -----

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            Kind::Integers => Elem::Int(BigInt::zero()),
            Kind::Rationals => Elem::Rat(BigRational::zero()),
            Kind::ModN(_) | Kind::PrimeField(_) => Elem::Mod(0),
            Kind::Quotient(_) => Elem::Poly(Poly::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Elem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match &self.0.kind {
            Kind::Integers => Elem::Int(v.clone()),
            Kind::Rationals => Elem::Rat(BigRational::from_integer(v.clone())),
            Kind::ModN(n) | Kind::PrimeField(n) => {
                Elem::Mod(v.mod_floor(&BigInt::from(*n)).to_u64().unwrap())
            }
            Kind::Quotient(q) => {
                let c = q.field.from_bigint(v);
                let ctx = self.ctx();
                Elem::Poly(ctx.reduce(&ctx.constant(c), &q.gb))
            }
        }
    }

    pub fn from_rational(&self, v: &BigRational) -> Result<Elem> {
        if v.is_integer() {
            return Ok(self.from_bigint(v.numer()));
        }
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        match self.inverse(&den)? {
            Some(inv) => Ok(self.mul(&num, &inv)),
            None => Err(Error::Invalid(format!("{v} is not an element of {self}"))),
        }
    }

    /// Variable by name, for polynomial quotients.
    pub fn var(&self, name: &str) -> Result<Elem> {
        let q = self.quotient().ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let i = q.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let ctx = self.ctx();
        Ok(Elem::Poly(ctx.reduce(&ctx.var(i), &q.gb)))
    }

    pub fn var_at(&self, i: usize) -> Elem {
        let q = self.quotient().expect("polynomial ring");
        let ctx = self.ctx();
        Elem::Poly(ctx.reduce(&ctx.var(i), &q.gb))
    }

    /// Canonical form of a raw polynomial in this ring's variables.
    pub fn from_poly(&self, p: &Poly) -> Elem {
        let q = self.quotient().expect("polynomial ring");
        Elem::Poly(self.ctx().reduce(p, &q.gb))
    }

    // ----- arithmetic -----

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::ModN(n) | Kind::PrimeField(n), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (Kind::Quotient(_), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(self.ctx().add(x, y)),
            _ => panic!("element does not belong to {self}: {a:?} / {b:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::Integers, Elem::Int(x)) => Elem::Int(-x),
            (Kind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Kind::ModN(n) | Kind::PrimeField(n), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { n - x }),
            (Kind::Quotient(_), Elem::Poly(x)) => Elem::Poly(self.ctx().neg(x)),
            _ => panic!("element does not belong to {self}: {a:?}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Kind::ModN(n) | Kind::PrimeField(n), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(mulmod(*x, *y, *n)),
            (Kind::Quotient(q), Elem::Poly(x), Elem::Poly(y)) => {
                if x.is_zero() || y.is_zero() {
                    return Elem::Poly(Poly::zero());
                }
                let ctx = self.ctx();
                Elem::Poly(ctx.reduce(&ctx.mul(x, y), &q.gb))
            }
            _ => panic!("element does not belong to {self}: {a:?} / {b:?}"),
        }
    }

    pub fn pow(&self, a: &Elem, e: u32) -> Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.is_zero(),
            Elem::Rat(x) => x.is_zero(),
            Elem::Mod(x) => *x == 0,
            Elem::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// Whether `a` is a valid canonical element of this ring.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.0.kind, a) {
            (Kind::Integers, Elem::Int(_)) | (Kind::Rationals, Elem::Rat(_)) => true,
            (Kind::ModN(n) | Kind::PrimeField(n), Elem::Mod(x)) => x < n,
            (Kind::Quotient(q), Elem::Poly(p)) => {
                p.terms.iter().all(|(m, c)| m.len() == q.vars.len() && q.field.contains(c) && !q.field.is_zero(c))
                    && self.ctx().reduce(p, &q.gb) == *p
            }
            _ => false,
        }
    }

    /// Decides whether `a` is a unit.
    pub fn is_unit(&self, a: &Elem) -> Result<bool> {
        Ok(self.inverse(a)?.is_some())
    }

    /// Inverse of `a` if it is a unit, `None` otherwise.
    pub fn inverse(&self, a: &Elem) -> Result<Option<Elem>> {
        match (&self.0.kind, a) {
            (Kind::Integers, Elem::Int(x)) => Ok((x.abs().is_one()).then(|| Elem::Int(x.clone()))),
            (Kind::Rationals, Elem::Rat(x)) => Ok((!x.is_zero()).then(|| Elem::Rat(x.recip()))),
            (Kind::ModN(n) | Kind::PrimeField(n), Elem::Mod(x)) => Ok(inv_mod(*x, *n).map(Elem::Mod)),
            (Kind::Quotient(q), Elem::Poly(p)) => {
                if p.is_zero() {
                    return Ok(None);
                }
                let ctx = self.ctx();
                let zero_mono = ctx.one_mono();
                let constant = p.terms.iter().find(|(m, _)| *m == zero_mono).map(|(_, c)| c.clone());
                if q.gb.is_empty() {
                    return Ok(match (p.terms.len(), constant) {
                        (1, Some(c)) => Some(Elem::Poly(ctx.constant(q.field.inverse(&c)?.unwrap()))),
                        _ => None,
                    });
                }
                if q.nilpotency.is_some() {
                    let c = match constant {
                        Some(c) => c,
                        None => return Ok(None),
                    };
                    let cinv = q.field.inverse(&c)?.unwrap();
                    // a = c(1 - n) with n nilpotent, a^{-1} = c^{-1} sum n^k
                    let scaled = ctx.scale(p, &cinv);
                    let n = ctx.sub(&ctx.constant(q.field.one()), &scaled);
                    let mut term = ctx.constant(q.field.one());
                    let mut sum = Poly::zero();
                    while !term.is_zero() {
                        sum = ctx.add(&sum, &term);
                        term = ctx.reduce(&ctx.mul(&term, &n), &q.gb);
                    }
                    return Ok(Some(Elem::Poly(ctx.scale(&sum, &cinv))));
                }
                if q.basis.is_some() {
                    return crate::linear::expand::algebra_inverse(self, a);
                }
                Err(Error::CapabilityMissing(format!("unit test in {self}")))
            }
            _ => panic!("element does not belong to {self}: {a:?}"),
        }
    }

    /// Whether `a` lies in the maximal ideal of a local ring.
    pub fn in_max_ideal(&self, a: &Elem) -> Result<bool> {
        if !self.is_local() {
            return Err(Error::NotLocal);
        }
        Ok(!self.is_unit(a)?)
    }

    /// Generators of the maximal ideal of a local ring.
    pub fn max_ideal_generators(&self) -> Result<Vec<Elem>> {
        if !self.is_local() {
            return Err(Error::NotLocal);
        }
        Ok(match &self.0.kind {
            Kind::ModN(n) => {
                let (p, k) = prime_power(*n).unwrap();
                if k == 1 {
                    vec![]
                } else {
                    vec![Elem::Mod(p)]
                }
            }
            Kind::Quotient(q) => (0..q.vars.len()).map(|i| self.var_at(i)).filter(|x| !self.is_zero(x)).collect(),
            _ => vec![],
        })
    }

    // ----- Euclidean helpers for Z and F_p[x] -----

    /// Size used to pick pivots: |a| for Z, degree for F_p[x].
    pub fn euclid_size(&self, a: &Elem) -> BigInt {
        match a {
            Elem::Int(x) => x.abs(),
            Elem::Poly(p) => BigInt::from(p.total_degree()),
            _ => BigInt::zero(),
        }
    }

    /// Division with remainder in a Euclidean domain.
    pub fn div_rem(&self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        match (&self.0.kind, a, b) {
            (Kind::Integers, Elem::Int(x), Elem::Int(y)) => {
                let (q, r) = x.div_mod_floor(y);
                // remainder with |r| <= |y|/2 keeps entries small
                let (q, r) = if (&r + &r).abs() > y.abs() {
                    (q + 1, r - y)
                } else {
                    (q, r)
                };
                (Elem::Int(q), Elem::Int(r))
            }
            (Kind::Rationals, _, _) | (Kind::PrimeField(_), _, _) => {
                let inv = self.inverse(b).unwrap().expect("nonzero divisor");
                (self.mul(a, &inv), self.zero())
            }
            (Kind::Quotient(q), Elem::Poly(x), Elem::Poly(y)) => {
                let ctx = self.ctx();
                let mut rem = x.clone();
                let mut quo = Poly::zero();
                let ylc_inv = q.field.inverse(y.lc()).unwrap().unwrap();
                while !rem.is_zero() && poly::divides(y.lm(), rem.lm()) {
                    let m = poly::mono_div(rem.lm(), y.lm());
                    let c = q.field.mul(rem.lc(), &ylc_inv);
                    quo = ctx.add(&quo, &ctx.monomial(m.clone(), c.clone()));
                    rem = ctx.sub(&rem, &ctx.mul_term(y, &m, &c));
                }
                (Elem::Poly(quo), Elem::Poly(rem))
            }
            _ => panic!("div_rem unsupported over {self}"),
        }
    }

    /// Unit `u` such that `u*a` is the normalized associate (positive, monic).
    pub fn normalizing_unit(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) if x.is_negative() => self.from_int(-1),
            Elem::Poly(p) if !p.is_zero() => {
                let q = self.quotient().unwrap();
                let inv = q.field.inverse(p.lc()).unwrap().unwrap();
                Elem::Poly(self.ctx().constant(inv))
            }
            Elem::Rat(x) if !x.is_zero() => Elem::Rat(x.recip()),
            Elem::Mod(x) if *x != 0 && self.is_field() => self.inverse(a).unwrap().unwrap(),
            _ => self.one(),
        }
    }

    // ----- text -----

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let vars = self.variables();
        let raw = parse::parse_raw(s, &|name| vars.iter().position(|v| v == name))?;
        self.from_raw(&raw)
    }

    pub(crate) fn from_raw(&self, raw: &parse::RawPoly) -> Result<Elem> {
        match &self.0.kind {
            Kind::Quotient(q) => {
                let p = raw_to_poly(&self.ctx(), raw)?;
                Ok(Elem::Poly(self.ctx().reduce(&p, &q.gb)))
            }
            _ => {
                let mut acc = self.zero();
                for (m, c) in raw {
                    if !m.is_empty() {
                        return Err(Error::UnknownVariable(format!("x{}", m[0].0)));
                    }
                    acc = self.add(&acc, &self.from_rational(c)?);
                }
                Ok(acc)
            }
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Rat(x) => x.to_string(),
            Elem::Mod(x) => x.to_string(),
            Elem::Poly(p) => {
                let q = self.quotient().expect("polynomial ring");
                format_poly(&q.field, &q.vars, p)
            }
        }
    }
}

pub(crate) fn is_system_token(v: &str) -> bool {
    let parts: Vec<&str> = v.split('_').collect();
    parts.len() == 4
        && matches!(parts[0], "X" | "Y" | "Z")
        && parts[1..].iter().all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()))
}

fn raw_to_poly(ctx: &PolyCtx, raw: &parse::RawPoly) -> Result<Poly> {
    let mut terms = Vec::new();
    for (m, c) in raw {
        let mut mono = ctx.one_mono();
        for (v, e) in m {
            mono[*v] += e;
        }
        terms.push((mono, ctx.field.from_rational(c)?));
    }
    Ok(ctx.from_terms(terms))
}

fn enumerate_standard(gb: &[Poly], bounds: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if gb.iter().any(|g| poly::divides(g.lm(), cur)) {
        return;
    }
    if i == bounds.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..bounds[i] {
        cur[i] = e;
        enumerate_standard(gb, bounds, i + 1, cur, out);
    }
    cur[i] = 0;
}

fn format_mono(vars: &[String], m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, e) in vars.iter().zip(m) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

/// Signed text of one term; `leading` controls whether `+` is omitted.
pub(crate) fn format_term(field: &Ring, vars: &[String], m: &[u32], c: &Elem) -> (bool, String) {
    let (neg, mag) = match c {
        Elem::Rat(r) if r.is_negative() => (true, Elem::Rat(-r)),
        _ => (false, c.clone()),
    };
    let ms = format_mono(vars, m);
    let body = if ms.is_empty() {
        field.format(&mag)
    } else if field.is_one(&mag) {
        ms
    } else {
        format!("{}*{}", field.format(&mag), ms)
    };
    (neg, body)
}

pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn format_poly(field: &Ring, vars: &[String], p: &Poly) -> String {
    join_terms(p.terms.iter().map(|(m, c)| format_term(field, vars, m, c)))
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Integers => write!(f, "Z"),
            Kind::Rationals => write!(f, "Q"),
            Kind::ModN(n) => write!(f, "Z/{n}"),
            Kind::PrimeField(p) => write!(f, "GF({p})"),
            Kind::Quotient(q) => {
                write!(f, "{}[{}]", q.field, q.vars.join(","))?;
                if !q.gb.is_empty() {
                    let gens: Vec<String> = q.gb.iter().map(|g| format_poly(&q.field, &q.vars, g)).collect();
                    write!(f, "/({})", gens.join(", "))?;
                }
                if q.order != MonomialOrder::Degrevlex {
                    write!(f, " order {}", q.order.name())?;
                }
                Ok(())
            }
        }
    }
}

/// Parses a ring description such as `Z`, `Q`, `Z/4`, `GF(5)` or
/// `GF(2)[x,y]/(x^2, x*y, y^2)`, optionally followed by `order lex`.
pub fn parse_ring(s: &str) -> Result<Ring> {
    let s = s.trim();
    let (body, order) = match s.rfind(" order ") {
        Some(i) => {
            let name = s[i + 7..].trim();
            let o = MonomialOrder::from_name(name).ok_or_else(|| Error::Invalid(format!("unknown order `{name}`")))?;
            (s[..i].trim(), o)
        }
        None => (s, MonomialOrder::Degrevlex),
    };
    if let Some(open) = body.find('[') {
        let field = parse_ring(&body[..open])?;
        let close = body.find(']').ok_or_else(|| Error::SyntaxError { pos: open, msg: "missing `]`".into() })?;
        let vars: Vec<&str> = body[open + 1..close].split(',').map(|v| v.trim()).filter(|v| !v.is_empty()).collect();
        let rest = body[close + 1..].trim();
        let gens: Vec<String> = if rest.is_empty() {
            Vec::new()
        } else {
            let inner = rest
                .strip_prefix('/')
                .map(|r| r.trim())
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::SyntaxError { pos: close + 1, msg: "expected `/(generators)`".into() })?;
            split_top_level(inner)
        };
        let gref: Vec<&str> = gens.iter().map(|g| g.as_str()).filter(|g| !g.trim().is_empty()).collect();
        return Ring::poly_quotient_with(&field, &vars, &gref, order, groebner::DEFAULT_SPAIR_BUDGET);
    }
    match body {
        "Z" => Ok(Ring::integers()),
        "Q" => Ok(Ring::rationals()),
        _ => {
            if let Some(n) = body.strip_prefix("Z/") {
                let n: u64 = n.trim().parse().map_err(|_| Error::SyntaxError { pos: 2, msg: "bad modulus".into() })?;
                Ring::integers_mod(n)
            } else if let Some(p) = body.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
                let p: u64 = p.trim().parse().map_err(|_| Error::SyntaxError { pos: 3, msg: "bad prime".into() })?;
                Ring::prime_field(p)
            } else {
                Err(Error::SyntaxError { pos: 0, msg: format!("unknown ring `{body}`") })
            }
        }
    }
}

/// Splits on commas that are not nested inside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c)
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c)
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur).trim().to_string()),
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests;
