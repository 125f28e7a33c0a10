use super::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::ring::{Elem, Matrix};
use std::collections::BTreeMap;

/// Block structure of a tensor or Hom complex: for each degree `n`, the
/// summands `(index, offset, size)` in basis order.
///
/// For `M ⊗ N` the index is the degree `p` of the `N` factor in
/// `M_{n-p} ⊗ N_p`; for `Hom(M, N)` it is the degree `i` of the source in
/// `Hom(M_i, N_{i+n})`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Layout {
    pub blocks: BTreeMap<i64, Vec<(i64, usize, usize)>>,
}

impl Layout {
    pub fn block(&self, n: i64, index: i64) -> Option<(usize, usize)> {
        self.blocks.get(&n)?.iter().find(|b| b.0 == index).map(|b| (b.1, b.2))
    }

    pub fn rank(&self, n: i64) -> usize {
        self.blocks.get(&n).map_or(0, |v| v.iter().map(|b| b.2).sum())
    }
}

/// `(M ⊗ N)_n = ⊕_p M_{n-p} ⊗ N_p` with `p` ascending, row-major Kronecker
/// bases and `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`.
pub fn tensor(m: &ChainComplex, n: &ChainComplex) -> Result<(ChainComplex, Layout)> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    let r = m.ring();
    if m.is_zero() || n.is_zero() {
        return Ok((ChainComplex::zero(r), Layout::default()));
    }
    let (mlo, mhi) = (m.lo().unwrap(), m.hi().unwrap());
    let (nlo, nhi) = (n.lo().unwrap(), n.hi().unwrap());
    let mut layout = Layout::default();
    for deg in mlo + nlo..=mhi + nhi {
        let mut off = 0;
        let mut v = Vec::new();
        for p in nlo..=nhi {
            let size = m.rank(deg - p) * n.rank(p);
            v.push((p, off, size));
            off += size;
        }
        layout.blocks.insert(deg, v);
    }
    let lo = mlo + nlo;
    let hi = mhi + nhi;
    let ranks: Vec<usize> = (lo..=hi).map(|d| layout.rank(d)).collect();
    let mut diffs = Vec::new();
    for deg in lo + 1..=hi {
        let mut d = Matrix::zeros(r, layout.rank(deg - 1), layout.rank(deg));
        for p in nlo..=nhi {
            let (c0, cs) = layout.block(deg, p).unwrap();
            if cs == 0 {
                continue;
            }
            let (mi, ni) = (m.rank(deg - p), n.rank(p));
            if let Some((r0, _)) = layout.block(deg - 1, p) {
                let b = m.diff(deg - p).kron(&Matrix::identity(r, ni))?;
                if b.rows() > 0 {
                    d.put(r0, c0, &b);
                }
            }
            if let Some((r0, _)) = layout.block(deg - 1, p - 1) {
                let mut b = Matrix::identity(r, mi).kron(&n.diff(p))?;
                if (deg - p) % 2 != 0 {
                    b = b.neg();
                }
                if b.rows() > 0 {
                    d.put(r0, c0, &b);
                }
            }
        }
        diffs.push(d);
    }
    Ok((ChainComplex::assemble(r, lo, ranks, diffs), layout_trimmed(layout, lo, hi)))
}

fn layout_trimmed(mut l: Layout, lo: i64, hi: i64) -> Layout {
    l.blocks.retain(|n, _| *n >= lo && *n <= hi);
    l
}

/// `Hom(M, N)_n = ⊕_i Hom(M_i, N_{i+n})` with `i` ascending, each block a
/// row-major vectorized matrix, and `d f = d_N f - (-1)^n f d_M`.
pub fn hom_complex(m: &ChainComplex, n: &ChainComplex) -> Result<(ChainComplex, Layout)> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    let r = m.ring();
    if m.is_zero() || n.is_zero() {
        return Ok((ChainComplex::zero(r), Layout::default()));
    }
    let (mlo, mhi) = (m.lo().unwrap(), m.hi().unwrap());
    let (nlo, nhi) = (n.lo().unwrap(), n.hi().unwrap());
    let (lo, hi) = (nlo - mhi, nhi - mlo);
    let mut layout = Layout::default();
    for deg in lo..=hi {
        let mut off = 0;
        let mut v = Vec::new();
        for i in mlo..=mhi {
            let size = n.rank(i + deg) * m.rank(i);
            v.push((i, off, size));
            off += size;
        }
        layout.blocks.insert(deg, v);
    }
    let ranks: Vec<usize> = (lo..=hi).map(|d| layout.rank(d)).collect();
    let mut diffs = Vec::new();
    for deg in lo + 1..=hi {
        let mut d = Matrix::zeros(r, layout.rank(deg - 1), layout.rank(deg));
        for i in mlo..=mhi {
            let (c0, cs) = layout.block(deg, i).unwrap();
            if cs == 0 {
                continue;
            }
            let (mi, nj) = (m.rank(i), n.rank(i + deg));
            let (r0, rs) = layout.block(deg - 1, i).unwrap();
            if rs > 0 {
                d.put(r0, c0, &n.diff(i + deg).kron(&Matrix::identity(r, mi))?);
            }
            if let Some((r0, rs)) = layout.block(deg - 1, i + 1) {
                if rs > 0 {
                    let mut b = Matrix::identity(r, nj).kron(&m.diff(i + 1).transpose())?;
                    if deg % 2 == 0 {
                        b = b.neg();
                    }
                    d.put(r0, c0, &b);
                }
            }
        }
        diffs.push(d);
    }
    Ok((ChainComplex::assemble(r, lo, ranks, diffs), layout_trimmed(layout, lo, hi)))
}

/// Vector in `Hom(M, N)_0` representing the components of a chain map.
pub fn map_to_hom_vector(phi: &ChainMap, layout: &Layout) -> Vec<Elem> {
    let r = phi.source().ring();
    let len = layout.rank(0);
    let mut v = vec![r.zero(); len];
    if let Some(blocks) = layout.blocks.get(&0) {
        for &(i, off, size) in blocks {
            if size == 0 {
                continue;
            }
            let c = phi.comp(i);
            for a in 0..c.rows() {
                for b in 0..c.cols() {
                    v[off + a * c.cols() + b] = c.get(a, b).clone();
                }
            }
        }
    }
    v
}

/// Components `f_i : M_i -> N_{i+n}` of a vector in `Hom(M, N)_n`.
pub fn hom_vector_components(
    m: &ChainComplex,
    n: &ChainComplex,
    layout: &Layout,
    deg: i64,
    v: &[Elem],
) -> BTreeMap<i64, Matrix> {
    let r = m.ring();
    let mut out = BTreeMap::new();
    if let Some(blocks) = layout.blocks.get(&deg) {
        for &(i, off, size) in blocks {
            if size == 0 {
                continue;
            }
            let (rows, cols) = (n.rank(i + deg), m.rank(i));
            out.insert(i, Matrix::from_fn(r, rows, cols, |a, b| v[off + a * cols + b].clone()));
        }
    }
    out
}

/// `Cone(φ)_n = T_n ⊕ S_{n-1}` with `D_n = [[d^T_n, φ_{n-1}], [0, -d^S_{n-1}]]`.
pub fn cone(phi: &ChainMap) -> Result<ChainComplex> {
    let (s, t) = (phi.source(), phi.target());
    let r = s.ring();
    let lo = t.degrees().start.min(s.degrees().start + 1);
    let hi = (t.degrees().end - 1).max(s.degrees().end);
    if s.is_zero() && t.is_zero() {
        return Ok(ChainComplex::zero(r));
    }
    let ranks: Vec<usize> = (lo..=hi).map(|n| t.rank(n) + s.rank(n - 1)).collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let d = Matrix::from_blocks(
            r,
            &[t.rank(n - 1), s.rank(n - 2)],
            &[t.rank(n), s.rank(n - 1)],
            &[vec![Some(t.diff(n)), Some(phi.comp(n - 1))], vec![None, Some(s.diff(n - 1).neg())]],
        )?;
        diffs.push(d);
    }
    Ok(ChainComplex::assemble(r, lo, ranks, diffs))
}
