use crate::complex::{augment_by_resolution, ChainComplex};
use crate::error::{Error, Result};
use crate::linear::{self, HomologyModule};
use crate::ring::{parse_ring, Elem, Matrix, Ring, RingHom};
use std::collections::BTreeMap;

/// The module `R^g / im(rel)` for a `g x k` relation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub rel: Matrix,
}

impl Presentation {
    pub fn new(rel: Matrix) -> Presentation {
        Presentation { rel }
    }

    pub fn free(ring: &Ring, rank: usize) -> Presentation {
        Presentation { rel: Matrix::zeros(ring, rank, 0) }
    }

    /// `R / (x_1, ..., x_k)`.
    pub fn cyclic(ring: &Ring, ideal: &[Elem]) -> Presentation {
        Presentation { rel: Matrix::from_rows(ring, vec![ideal.to_vec()]).unwrap_or_else(|_| Matrix::zeros(ring, 1, 0)) }
    }

    /// The residue field of a local ring.
    pub fn residue_field(ring: &Ring) -> Result<Presentation> {
        Ok(Self::cyclic(ring, &ring.max_ideal_generators()?))
    }

    pub fn ring(&self) -> &Ring {
        self.rel.ring()
    }

    pub fn generators(&self) -> usize {
        self.rel.rows()
    }

    pub fn module(&self) -> Result<HomologyModule> {
        linear::subquotient(&Matrix::identity(self.ring(), self.generators()), &self.rel)
    }

    pub fn base_change(&self, f: &RingHom) -> Result<Presentation> {
        if f.source() != self.ring() {
            return Err(Error::NotAHomomorphism("source ring differs from the module's ring".into()));
        }
        Ok(Presentation { rel: f.apply_matrix(&self.rel) })
    }

    /// Drops generators killed by unit relations. Returns the smaller
    /// presentation and the images of its generators in the original
    /// generators.
    pub fn minimize(&self) -> Result<(Presentation, Matrix)> {
        let r = self.ring().clone();
        let mut rel = self.rel.clone();
        let mut eps = Matrix::identity(&r, self.generators());
        while let Some((i, j, inv)) = unit_entry(&rel)? {
            rel = eliminate(&rel, i, j, &inv);
            eps = drop_col(&eps, i);
        }
        Ok((Presentation { rel }, eps))
    }

    /// `ring ...`, then `presentation g k`, then the relation matrix.
    pub fn to_text(&self) -> String {
        format!("ring {}\npresentation {} {}\n{}\n", self.ring(), self.rel.rows(), self.rel.cols(), self.rel.to_text())
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines.next().ok_or_else(|| Error::Invalid("empty presentation file".into()))?;
        let ring = parse_ring(first.strip_prefix("ring").ok_or_else(|| Error::Invalid("expected `ring`".into()))?.trim())?;
        let head = lines.next().ok_or_else(|| Error::Invalid("missing `presentation g k`".into()))?;
        let dims: Vec<usize> = head
            .strip_prefix("presentation")
            .ok_or_else(|| Error::Invalid("expected `presentation g k`".into()))?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Invalid(format!("bad size `{x}`"))))
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Invalid("expected `presentation g k`".into()));
        }
        let body: Vec<&str> = lines.collect();
        let rel = Matrix::parse(&ring, &body.join(" "), dims[0], dims[1])?;
        Ok(Presentation { rel })
    }
}

fn unit_entry(m: &Matrix) -> Result<Option<(usize, usize, Elem)>> {
    let r = m.ring();
    if !r.is_local() {
        return Ok(None);
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some(inv) = r.inverse(m.get(i, j))? {
                return Ok(Some((i, j, inv)));
            }
        }
    }
    Ok(None)
}

fn keep(n: usize, skip: usize) -> Vec<usize> {
    (0..n).filter(|&k| k != skip).collect()
}

fn drop_col(m: &Matrix, j: usize) -> Matrix {
    m.select_columns(&keep(m.cols(), j))
}

fn drop_row(m: &Matrix, i: usize) -> Matrix {
    drop_col(&m.transpose(), i).transpose()
}

/// `d[¬i,¬j] - d[¬i,j] u^{-1} d[i,¬j]` for a unit `u = d[i][j]`.
fn eliminate(d: &Matrix, i: usize, j: usize, inv: &Elem) -> Matrix {
    let r = d.ring();
    let rows = keep(d.rows(), i);
    let cols = keep(d.cols(), j);
    Matrix::from_fn(r, rows.len(), cols.len(), |a, b| {
        let (ra, cb) = (rows[a], cols[b]);
        let t = r.mul(&r.mul(d.get(ra, j), inv), d.get(i, cb));
        r.sub(d.get(ra, cb), &t)
    })
}

/// Cancels unit entries of a free complex over a local ring; the result is
/// homotopy equivalent and minimal.
pub fn minimize_complex(c: &ChainComplex) -> Result<ChainComplex> {
    let r = c.ring().clone();
    if !r.is_local() {
        return Ok(c.clone());
    }
    let Some(lo) = c.lo() else { return Ok(c.clone()) };
    let hi = c.hi().unwrap();
    let mut ranks: Vec<usize> = (lo..=hi).map(|n| c.rank(n)).collect();
    let mut diffs: BTreeMap<i64, Matrix> = (lo + 1..=hi).map(|n| (n, c.diff(n))).collect();
    loop {
        let mut found = None;
        for (&n, d) in &diffs {
            if let Some(hit) = unit_entry(d)? {
                found = Some((n, hit));
                break;
            }
        }
        let Some((n, (i, j, inv))) = found else { break };
        let nd = eliminate(&diffs[&n], i, j, &inv);
        diffs.insert(n, nd);
        if let Some(up) = diffs.get(&(n + 1)) {
            let up = drop_row(up, j);
            diffs.insert(n + 1, up);
        }
        if let Some(down) = diffs.get(&(n - 1)) {
            let down = drop_col(down, i);
            diffs.insert(n - 1, down);
        }
        ranks[(n - lo) as usize] -= 1;
        ranks[(n - 1 - lo) as usize] -= 1;
    }
    Ok(ChainComplex::assemble(&r, lo, ranks, diffs.into_values().collect()))
}

/// A free resolution `P -> M` computed to a fixed length, with the
/// augmentation `P_0 -> M` in terms of the presentation's generators.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub complex: ChainComplex,
    pub augmentation: Matrix,
    /// The resolution ends at `complex.hi()`: no further syzygies.
    pub complete: bool,
    pub length: usize,
}

/// Resolution through degree `length`; minimal over local rings.
/// `budget` caps the rank of any single free module.
pub fn resolve(m: &Presentation, length: usize, budget: usize) -> Result<Resolution> {
    let r = m.ring().clone();
    let (p, eps) = m.minimize()?;
    if p.generators() == 0 {
        return Ok(Resolution { complex: ChainComplex::zero(&r), augmentation: eps, complete: true, length });
    }
    let base = ChainComplex::two_term(&p.rel, 0);
    let aug = augment_by_resolution(&base, 1, length)?;
    let full = minimize_complex(&aug.complex)?;
    if let Some(n) = full.degrees().find(|&n| full.rank(n) > budget) {
        return Err(Error::BudgetExceeded(format!("rank {} in resolution degree {n} exceeds {budget}", full.rank(n))));
    }
    let complete = aug.complete && full.hi().unwrap_or(0) <= length as i64;
    let complex = full.truncate_above(length as i64);
    let g0 = complex.rank(0);
    let augmentation = if g0 == eps.cols() { eps } else { Matrix::zeros(&r, m.generators(), g0) };
    Ok(Resolution { complex, augmentation, complete, length })
}

/// Complex whose degree-`n` term is `R^{g_n} / im(rel_n)`; each `d_n` is a
/// lift to the free covers.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentedComplex {
    ring: Ring,
    gens: BTreeMap<i64, usize>,
    rels: BTreeMap<i64, Matrix>,
    diffs: BTreeMap<i64, Matrix>,
}

/// Block positions `(index, offset, size)` of summands in each degree.
pub type Blocks = BTreeMap<i64, Vec<(i64, usize, usize)>>;

impl PresentedComplex {
    pub fn free(c: &ChainComplex) -> PresentedComplex {
        let r = c.ring();
        let gens: BTreeMap<i64, usize> = c.degrees().map(|n| (n, c.rank(n))).collect();
        let rels = gens.iter().map(|(&n, &g)| (n, Matrix::zeros(r, g, 0))).collect();
        let diffs = c.degrees().map(|n| (n, c.diff(n))).collect();
        PresentedComplex { ring: r.clone(), gens, rels, diffs }
    }

    pub fn module(m: &Presentation, degree: i64) -> PresentedComplex {
        let r = m.ring();
        PresentedComplex {
            ring: r.clone(),
            gens: BTreeMap::from([(degree, m.generators())]),
            rels: BTreeMap::from([(degree, m.rel.clone())]),
            diffs: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self, n: i64) -> usize {
        self.gens.get(&n).copied().unwrap_or(0)
    }

    pub fn rel(&self, n: i64) -> Matrix {
        self.rels.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(&self.ring, self.gens(n), 0))
    }

    pub fn diff(&self, n: i64) -> Matrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(&self.ring, self.gens(n - 1), self.gens(n)))
    }

    /// Degrees with a nonzero free cover.
    pub fn degrees(&self) -> std::ops::Range<i64> {
        let mut it = self.gens.iter().filter(|(_, g)| **g > 0).map(|(n, _)| *n);
        match it.next() {
            None => 0..0,
            Some(lo) => lo..it.last().unwrap_or(lo) + 1,
        }
    }

    /// Cycles `{x : d_n x ∈ im rel_{n-1}}` and boundaries `im d_{n+1} + im rel_n`.
    pub fn cycles_boundaries(&self, n: i64) -> Result<(Matrix, Matrix)> {
        let z = linear::preimage_of_span(&self.diff(n), &self.rel(n - 1))?;
        let b = self.diff(n + 1).hcat(&self.rel(n))?;
        Ok((z, b))
    }

    pub fn homology(&self, n: i64) -> Result<HomologyModule> {
        let (z, b) = self.cycles_boundaries(n)?;
        linear::subquotient(&z, &b)
    }

    /// `d_{n-1} d_n ≡ 0` and `d_n(rel_n) ⊆ rel_{n-1}` in every degree.
    pub fn verify(&self) -> Result<()> {
        for n in self.degrees().start..=self.degrees().end {
            let dd = self.diff(n - 1).mul(&self.diff(n))?;
            if !linear::span_contains(&self.rel(n - 2), &dd)? {
                return Err(Error::NotAComplex(n));
            }
            let dr = self.diff(n).mul(&self.rel(n))?;
            if !linear::span_contains(&self.rel(n - 1), &dr)? {
                return Err(Error::Invalid(format!("d_{n} does not preserve relations")));
            }
        }
        Ok(())
    }

    /// `Hom(P, Q)_n = ⊕_i Hom(P_i, Q_{i+n})` with row-major blocks and
    /// `d f = d_Q f - (-1)^n f d_P`, for a free complex `P`.
    pub fn hom_from_free(p: &ChainComplex, q: &PresentedComplex) -> Result<(PresentedComplex, Blocks)> {
        if p.ring() != q.ring() {
            return Err(Error::MixedRings);
        }
        let r = p.ring().clone();
        let (pd, qd) = (p.degrees(), q.degrees());
        let mut out = PresentedComplex { ring: r.clone(), gens: BTreeMap::new(), rels: BTreeMap::new(), diffs: BTreeMap::new() };
        let mut blocks = Blocks::new();
        if pd.is_empty() || qd.is_empty() {
            return Ok((out, blocks));
        }
        let (lo, hi) = (qd.start - (pd.end - 1), (qd.end - 1) - pd.start);
        for n in lo..=hi {
            let mut off = 0;
            let mut v = Vec::new();
            let mut rel_blocks = Vec::new();
            for i in pd.clone() {
                let (s, g) = (p.rank(i), q.gens(i + n));
                v.push((i, off, s * g));
                off += s * g;
                rel_blocks.push(q.rel(i + n).kron(&Matrix::identity(&r, s))?);
            }
            out.gens.insert(n, off);
            out.rels.insert(n, block_diag_all(&r, &rel_blocks)?);
            blocks.insert(n, v);
        }
        for n in lo + 1..=hi {
            let mut d = Matrix::zeros(&r, out.gens(n - 1), out.gens(n));
            for &(i, c0, cs) in &blocks[&n] {
                if cs == 0 {
                    continue;
                }
                let (s, g) = (p.rank(i), q.gens(i + n));
                let (r0, rs) = find(&blocks[&(n - 1)], i);
                if rs > 0 {
                    d.put(r0, c0, &q.diff(i + n).kron(&Matrix::identity(&r, s))?);
                }
                let (r1, rs1) = find(&blocks[&(n - 1)], i + 1);
                if rs1 > 0 {
                    let mut b = Matrix::identity(&r, g).kron(&p.diff(i + 1).transpose())?;
                    if n % 2 == 0 {
                        b = b.neg();
                    }
                    d.put(r1, c0, &b);
                }
            }
            out.diffs.insert(n, d);
        }
        Ok((out, blocks))
    }

    /// `(K ⊗ Q)_n = ⊕_q K_{n-q} ⊗ Q_q` with the sign rule of free tensor
    /// products, for a free complex `K`.
    pub fn tensor_free(k: &ChainComplex, q: &PresentedComplex) -> Result<(PresentedComplex, Blocks)> {
        if k.ring() != q.ring() {
            return Err(Error::MixedRings);
        }
        let r = k.ring().clone();
        let (kd, qd) = (k.degrees(), q.degrees());
        let mut out = PresentedComplex { ring: r.clone(), gens: BTreeMap::new(), rels: BTreeMap::new(), diffs: BTreeMap::new() };
        let mut blocks = Blocks::new();
        if kd.is_empty() || qd.is_empty() {
            return Ok((out, blocks));
        }
        let (lo, hi) = (kd.start + qd.start, kd.end - 1 + qd.end - 1);
        for n in lo..=hi {
            let mut off = 0;
            let mut v = Vec::new();
            let mut rel_blocks = Vec::new();
            for q_deg in qd.clone() {
                let (a, g) = (k.rank(n - q_deg), q.gens(q_deg));
                v.push((q_deg, off, a * g));
                off += a * g;
                rel_blocks.push(Matrix::identity(&r, a).kron(&q.rel(q_deg))?);
            }
            out.gens.insert(n, off);
            out.rels.insert(n, block_diag_all(&r, &rel_blocks)?);
            blocks.insert(n, v);
        }
        for n in lo + 1..=hi {
            let mut d = Matrix::zeros(&r, out.gens(n - 1), out.gens(n));
            for &(q_deg, c0, cs) in &blocks[&n] {
                if cs == 0 {
                    continue;
                }
                let (a, g) = (k.rank(n - q_deg), q.gens(q_deg));
                let (r0, rs) = find(&blocks[&(n - 1)], q_deg);
                if rs > 0 {
                    d.put(r0, c0, &k.diff(n - q_deg).kron(&Matrix::identity(&r, g))?);
                }
                let (r1, rs1) = find(&blocks[&(n - 1)], q_deg - 1);
                if rs1 > 0 {
                    let mut b = Matrix::identity(&r, a).kron(&q.diff(q_deg))?;
                    if (n - q_deg) % 2 != 0 {
                        b = b.neg();
                    }
                    d.put(r1, c0, &b);
                }
            }
            out.diffs.insert(n, d);
        }
        Ok((out, blocks))
    }
}

fn find(blocks: &[(i64, usize, usize)], index: i64) -> (usize, usize) {
    blocks.iter().find(|b| b.0 == index).map_or((0, 0), |b| (b.1, b.2))
}

fn block_diag_all(r: &Ring, blocks: &[Matrix]) -> Result<Matrix> {
    let mut acc = Matrix::zeros(r, 0, 0);
    for b in blocks {
        acc = acc.block_diag(b)?;
    }
    Ok(acc)
}

/// Whether `f_n` induces an injection and a surjection `H_n(S) -> H_n(T)`.
pub fn homology_iso_at(f: &Matrix, src: &PresentedComplex, tgt: &PresentedComplex, n: i64) -> Result<(bool, bool)> {
    let (zs, bs) = src.cycles_boundaries(n)?;
    let (zt, bt) = tgt.cycles_boundaries(n)?;
    let image = f.mul(&zs)?;
    let surjective = linear::span_contains(&image.hcat(&bt)?, &zt)?;
    let coeffs = linear::preimage_of_span(&image, &bt)?;
    let injective = linear::span_contains(&bs, &zs.mul(&coeffs)?)?;
    Ok((injective, surjective))
}
