//! The Koszul complex `K(a)` as an explicit DG algebra.
//!
//! Basis elements are subsets of `{1..e}` ordered by size, then
//! lexicographically; basis index 0 is the unit. `d(e_S) = Σ_j (-1)^{j-1}
//! a_{s_j} e_{S \ s_j}` and `e_S e_T = sign · e_{S ∪ T}` where the sign is
//! `(-1)` to the number of pairs `s > t` with `s ∈ S`, `t ∈ T`.

mod report;

pub use report::{AxiomCheck, AxiomReport};

use crate::complex::{tensor, Bounds, ChainComplex};
use crate::error::{Error, Result};
use crate::ring::{Backend, Elem, Kind, Matrix, Ring, RingHom};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct KoszulAlgebra {
    ring: Ring,
    a: Vec<Elem>,
    basis: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    /// `offsets[n]` is the first basis index of degree `n`.
    offsets: Vec<usize>,
    /// `diffs[n] = d_n` for `n = 0..=e`.
    diffs: Vec<Matrix>,
    /// `mult[h][n] = t^h_n : K_n -> K_{n+|h|}` for `n = 0..=e-|h|`.
    mult: Vec<Vec<Matrix>>,
    complex: ChainComplex,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets_of_size(e: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, e: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..e {
            cur.push(i);
            go(i + 1, e, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, e, k, &mut Vec::new(), &mut out);
    out
}

fn basis_layout(e: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut basis = Vec::new();
    let mut offsets = Vec::new();
    for n in 0..=e {
        offsets.push(basis.len());
        basis.extend(subsets_of_size(e, n));
    }
    offsets.push(basis.len());
    (basis, offsets)
}

/// Sign and support of `e_S e_T`, or `None` when `S ∩ T ≠ ∅`.
fn shuffle(s: &[usize], t: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut inversions = 0usize;
    for x in s {
        for y in t {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
    u.sort_unstable();
    Some((inversions % 2 == 1, u))
}

fn signed(ring: &Ring, neg: bool, x: Elem) -> Elem {
    if neg {
        ring.neg(&x)
    } else {
        x
    }
}

impl KoszulAlgebra {
    /// Koszul algebra on `a`; every DG axiom is verified before returning.
    pub fn new(ring: &Ring, a: &[Elem]) -> Result<KoszulAlgebra> {
        if a.iter().any(|x| !ring.contains(x)) {
            return Err(Error::MixedRings);
        }
        let e = a.len();
        let (basis, offsets) = basis_layout(e);
        let index: BTreeMap<Vec<usize>, usize> = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let pos = |s: &Vec<usize>| index[s] - offsets[s.len()];

        let mut diffs = vec![Matrix::zeros(ring, 0, 1)];
        for n in 1..=e {
            let mut d = Matrix::zeros(ring, binomial(e, n - 1), binomial(e, n));
            for s in &basis[offsets[n]..offsets[n + 1]] {
                for (j, &x) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(j);
                    d.set(pos(&rest), pos(s), signed(ring, j % 2 == 1, a[x].clone()));
                }
            }
            diffs.push(d);
        }

        let mut mult = Vec::with_capacity(basis.len());
        for h in &basis {
            let mut per = Vec::new();
            for n in 0..=e - h.len() {
                let mut t = Matrix::zeros(ring, binomial(e, n + h.len()), binomial(e, n));
                for s in &basis[offsets[n]..offsets[n + 1]] {
                    if let Some((neg, u)) = shuffle(h, s) {
                        t.set(pos(&u), pos(s), signed(ring, neg, ring.one()));
                    }
                }
                per.push(t);
            }
            mult.push(per);
        }
        let k = Self::from_matrices(ring, a, diffs, mult)?;
        let report = k.verify();
        if let Some(c) = report.first_failure() {
            return Err(Error::VerificationFailed(format!("Koszul algebra: {c}")));
        }
        Ok(k)
    }

    /// Algebra from explicit differential and multiplication matrices, with
    /// shapes checked but no axioms; see [`KoszulAlgebra::verify`].
    pub fn from_matrices(ring: &Ring, a: &[Elem], diffs: Vec<Matrix>, mult: Vec<Vec<Matrix>>) -> Result<KoszulAlgebra> {
        let e = a.len();
        let (basis, offsets) = basis_layout(e);
        if diffs.len() != e + 1 || mult.len() != basis.len() {
            return Err(Error::ShapeMismatch(format!("expected {} differentials and {} products", e + 1, basis.len())));
        }
        for (n, d) in diffs.iter().enumerate() {
            let rows = if n == 0 { 0 } else { binomial(e, n - 1) };
            if d.shape() != (rows, binomial(e, n)) || d.ring() != ring {
                return Err(Error::ShapeMismatch(format!("d_{n} has shape {:?}", d.shape())));
            }
        }
        for (h, per) in mult.iter().enumerate() {
            let k = basis[h].len();
            if per.len() != e - k + 1 {
                return Err(Error::ShapeMismatch(format!("product {h} has {} degrees", per.len())));
            }
            for (n, t) in per.iter().enumerate() {
                if t.shape() != (binomial(e, n + k), binomial(e, n)) || t.ring() != ring {
                    return Err(Error::ShapeMismatch(format!("t^{h}_{n} has shape {:?}", t.shape())));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let ranks = (0..=e).map(|n| binomial(e, n)).collect();
        let complex = ChainComplex::assemble(ring, 0, ranks, diffs[1..].to_vec());
        Ok(KoszulAlgebra { ring: ring.clone(), a: a.to_vec(), basis, index, offsets, diffs, mult, complex })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn sequence(&self) -> &[Elem] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Number of basis elements, `2^e`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Subset (0-based) labelling basis element `h`.
    pub fn subset(&self, h: usize) -> &[usize] {
        &self.basis[h]
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.index.get(subset).copied()
    }

    pub fn degree(&self, h: usize) -> usize {
        self.basis[h].len()
    }

    /// Position of `h` inside the basis of its degree.
    pub fn position(&self, h: usize) -> usize {
        h - self.offsets[self.degree(h)]
    }

    /// Basis indices in degree `n`.
    pub fn degree_range(&self, n: usize) -> std::ops::Range<usize> {
        if n > self.len() {
            return 0..0;
        }
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < 0 || n as usize > self.len() {
            0
        } else {
            binomial(self.len(), n as usize)
        }
    }

    /// `d_n`, zero-shaped outside `1..=e`.
    pub fn diff(&self, n: i64) -> Matrix {
        if n >= 1 && n as usize <= self.len() {
            self.diffs[n as usize].clone()
        } else {
            Matrix::zeros(&self.ring, self.rank(n - 1), self.rank(n))
        }
    }

    /// `t^h_n`, left multiplication by basis element `h` on `K_n`.
    pub fn mult(&self, h: usize, n: i64) -> Matrix {
        let k = self.degree(h) as i64;
        match self.mult[h].get(n.max(0) as usize) {
            Some(t) if n >= 0 => t.clone(),
            _ => Matrix::zeros(&self.ring, self.rank(n + k), self.rank(n)),
        }
    }

    pub(crate) fn mult_ref(&self, h: usize, n: usize) -> Option<&Matrix> {
        self.mult[h].get(n)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn label(&self, h: usize) -> String {
        if self.basis[h].is_empty() {
            "1".into()
        } else {
            let parts: Vec<String> = self.basis[h].iter().map(|i| (i + 1).to_string()).collect();
            format!("e{{{}}}", parts.join(","))
        }
    }

    /// Coordinates of basis element `h` in `K_{|h|}`.
    pub fn unit_vector(&self, h: usize) -> Vec<Elem> {
        let mut v = vec![self.ring.zero(); self.rank(self.degree(h) as i64)];
        v[self.position(h)] = self.ring.one();
        v
    }

    /// Product of `u ∈ K_p` and `v ∈ K_q` via the stored matrices.
    pub fn product(&self, p: usize, u: &[Elem], q: usize, v: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        let mut acc = vec![r.zero(); self.rank((p + q) as i64)];
        for (i, c) in u.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            let Some(t) = self.mult_ref(self.offsets[p] + i, q) else { continue };
            for (k, x) in t.mul_vec(v).expect("shapes").iter().enumerate() {
                acc[k] = r.add(&acc[k], &r.mul(c, x));
            }
        }
        acc
    }

    /// `d(ε_h)` as coordinates in `K_{|h|-1}`.
    pub fn diff_of_basis(&self, h: usize) -> Vec<Elem> {
        let n = self.degree(h);
        if n == 0 {
            return Vec::new();
        }
        self.diffs[n].column(self.position(h))
    }

    /// Checks d² = 0, unitality, associativity, graded commutativity, odd
    /// squares and Leibniz on all basis elements.
    pub fn verify(&self) -> AxiomReport {
        let r = &self.ring;
        let n = self.dim();
        let mut report = AxiomReport::default();
        let zero = |v: &[Elem]| v.iter().all(|x| r.is_zero(x));

        let mut c = AxiomCheck::new("square-zero");
        for k in 2..=self.len() {
            if !self.diffs[k - 1].mul(&self.diffs[k]).unwrap().is_zero() {
                c.fail(format!("d_{}d_{} != 0", k - 1, k));
                break;
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("unitality");
        for h in 0..n {
            let p = self.degree(h);
            let left = self.product(0, &self.unit_vector(0), p, &self.unit_vector(h));
            let right = self.product(p, &self.unit_vector(h), 0, &self.unit_vector(0));
            if left != self.unit_vector(h) || right != self.unit_vector(h) {
                c.fail(format!("1 * {0} or {0} * 1", self.label(h)));
                break;
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("associativity");
        'outer: for f in 0..n {
            for g in 0..n {
                let (pf, pg) = (self.degree(f), self.degree(g));
                if pf + pg > self.len() {
                    continue;
                }
                let fg = self.product(pf, &self.unit_vector(f), pg, &self.unit_vector(g));
                for h in 0..n {
                    let ph = self.degree(h);
                    if pf + pg + ph > self.len() {
                        continue;
                    }
                    let gh = self.product(pg, &self.unit_vector(g), ph, &self.unit_vector(h));
                    let lhs = self.product(pf + pg, &fg, ph, &self.unit_vector(h));
                    let rhs = self.product(pf, &self.unit_vector(f), pg + ph, &gh);
                    if lhs != rhs {
                        c.fail(format!("({} {}) {}", self.label(f), self.label(g), self.label(h)));
                        break 'outer;
                    }
                }
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("graded-commutativity");
        'outer: for g in 0..n {
            for h in 0..n {
                let (pg, ph) = (self.degree(g), self.degree(h));
                if pg + ph > self.len() {
                    continue;
                }
                let gh = self.product(pg, &self.unit_vector(g), ph, &self.unit_vector(h));
                let hg = self.product(ph, &self.unit_vector(h), pg, &self.unit_vector(g));
                let hg: Vec<Elem> = hg.into_iter().map(|x| signed(r, pg * ph % 2 == 1, x)).collect();
                if gh != hg {
                    c.fail(format!("{} {}", self.label(g), self.label(h)));
                    break 'outer;
                }
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("odd-squares");
        for h in 0..n {
            let p = self.degree(h);
            if p % 2 == 1 && 2 * p <= self.len() {
                let sq = self.product(p, &self.unit_vector(h), p, &self.unit_vector(h));
                if !zero(&sq) {
                    c.fail(format!("{}^2", self.label(h)));
                    break;
                }
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("leibniz");
        'outer: for g in 0..n {
            for h in 0..n {
                let (pg, ph) = (self.degree(g), self.degree(h));
                if pg + ph > self.len() || pg + ph == 0 {
                    continue;
                }
                let gh = self.product(pg, &self.unit_vector(g), ph, &self.unit_vector(h));
                let lhs = self.diffs[pg + ph].mul_vec(&gh).unwrap();
                let mut rhs = vec![r.zero(); lhs.len()];
                if pg > 0 {
                    let t = self.product(pg - 1, &self.diff_of_basis(g), ph, &self.unit_vector(h));
                    rhs = rhs.iter().zip(&t).map(|(x, y)| r.add(x, y)).collect();
                }
                if ph > 0 {
                    let t = self.product(pg, &self.unit_vector(g), ph - 1, &self.diff_of_basis(h));
                    rhs = rhs.iter().zip(&t).map(|(x, y)| r.add(x, &signed(r, pg % 2 == 1, y.clone()))).collect();
                }
                if lhs != rhs {
                    c.fail(format!("d({} {})", self.label(g), self.label(h)));
                    break 'outer;
                }
            }
        }
        report.push(c);
        report
    }

    /// The Koszul algebra on `f(a)` over the target ring.
    pub fn base_change(&self, f: &RingHom) -> Result<KoszulAlgebra> {
        if f.source() != &self.ring {
            return Err(Error::NotAHomomorphism(format!("map from {} applied over {}", f.source(), self.ring)));
        }
        let a: Vec<Elem> = self.a.iter().map(|x| f.apply(x)).collect();
        let diffs = self.diffs.iter().map(|d| f.apply_matrix(d)).collect();
        let mult = self.mult.iter().map(|per| per.iter().map(|t| f.apply_matrix(t)).collect()).collect();
        Self::from_matrices(f.target(), &a, diffs, mult)
    }

    /// Homology bounds of `K ⊗ M`; `sup` is 0 exactly when `a` is
    /// `M`-regular, for a module `M` in degree 0.
    pub fn depth_probe(&self, m: &ChainComplex) -> Result<Bounds> {
        if !self.ring.capabilities().linear_solve {
            return Err(Error::CapabilityMissing(format!("linear_solve over {}", self.ring)));
        }
        tensor(&self.complex, m)?.0.bounds()
    }

    /// Whether `R/(a)` is known to be complete: `Some(true)` when it is
    /// finite, `None` when undecided.
    pub fn is_cocomplete(&self) -> Option<bool> {
        let r = &self.ring;
        if self.a.iter().any(|x| r.is_unit(x).unwrap_or(false)) {
            return Some(true);
        }
        match r.kind() {
            Kind::ModN(_) | Kind::PrimeField(_) => return Some(true),
            Kind::Quotient(_) if r.standard_basis().is_some() => return Some(true),
            _ => {}
        }
        if matches!(r.backend(), Ok(Backend::Euclid)) && !r.is_field() {
            let mut g = r.zero();
            for x in &self.a {
                g = euclid_gcd(r, &g, x);
            }
            if !r.is_zero(&g) {
                return Some(true);
            }
        }
        None
    }
}

fn euclid_gcd(r: &Ring, a: &Elem, b: &Elem) -> Elem {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !r.is_zero(&y) {
        let (_, rem) = r.div_rem(&x, &y);
        x = y;
        y = rem;
    }
    x
}
