//! Bounded complexes of finite-rank free modules, homologically graded.
//!
//! A complex stores ranks on a contiguous degree range and the matrices
//! `d_n : M_n -> M_{n-1}` of shape `rank(n-1) x rank(n)`.

mod maps;
mod ops;
mod resolve;

pub use maps::{ChainMap, Homotopy};
pub use ops::{cone, hom_complex, hom_vector_components, map_to_hom_vector, tensor, Layout};
pub use resolve::{augment_by_resolution, Augmented};

use crate::error::{Error, Result};
use crate::linear::{self, HomologyModule};
use crate::ring::{Matrix, Ring, RingHom};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k}`; `diffs[0]` has zero rows.
    diffs: Vec<Matrix>,
}

/// Extreme degrees of nonzero homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounds {
    Acyclic,
    Range { inf: i64, sup: i64 },
}

impl Bounds {
    pub fn inf(&self) -> Option<i64> {
        match self {
            Bounds::Acyclic => None,
            Bounds::Range { inf, .. } => Some(*inf),
        }
    }

    pub fn sup(&self) -> Option<i64> {
        match self {
            Bounds::Acyclic => None,
            Bounds::Range { sup, .. } => Some(*sup),
        }
    }
}

impl ChainComplex {
    /// Validated constructor: `diffs[k]` is `d_{lo+k+1}`.
    pub fn new(ring: &Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::MixedRings);
            }
            let n = lo + k as i64 + 1;
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        let c = Self::assemble(ring, lo, ranks, diffs);
        c.verify()?;
        Ok(c)
    }

    /// Builds from sparse degree maps; missing differentials are zero.
    pub fn from_parts(ring: &Ring, ranks: &BTreeMap<i64, usize>, diffs: &BTreeMap<i64, Matrix>) -> Result<ChainComplex> {
        let Some((&lo, _)) = ranks.iter().next() else {
            if let Some((n, d)) = diffs.iter().find(|(_, d)| d.rows() + d.cols() > 0) {
                return Err(Error::DimensionMismatch(format!("d_{n} is {}x{} in a zero complex", d.rows(), d.cols())));
            }
            return Ok(Self::zero(ring));
        };
        let hi = *ranks.keys().next_back().unwrap();
        let lo = lo.min(diffs.keys().next().map_or(lo, |n| n - 1));
        let hi = hi.max(diffs.keys().next_back().copied().unwrap_or(hi));
        let rk: Vec<usize> = (lo..=hi).map(|n| ranks.get(&n).copied().unwrap_or(0)).collect();
        let mut ds = Vec::new();
        for n in lo + 1..=hi {
            let (r, c) = (rk[(n - 1 - lo) as usize], rk[(n - lo) as usize]);
            ds.push(diffs.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(ring, r, c)));
        }
        Self::new(ring, lo, rk, ds)
    }

    pub fn zero(ring: &Ring) -> ChainComplex {
        ChainComplex { ring: ring.clone(), lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// Free module of the given rank in a single degree.
    pub fn concentrated(ring: &Ring, rank: usize, degree: i64) -> ChainComplex {
        Self::assemble(ring, degree, vec![rank], Vec::new())
    }

    /// Two-term complex `0 -> R^c --d--> R^r -> 0` with the target in `degree`.
    pub fn two_term(d: &Matrix, degree: i64) -> ChainComplex {
        Self::assemble(d.ring(), degree, vec![d.rows(), d.cols()], vec![d.clone()])
    }

    /// Constructor for complexes that are complexes by construction; the
    /// result is trimmed but `d^2 = 0` is not re-checked.
    pub(crate) fn assemble(ring: &Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> ChainComplex {
        let mut full = Vec::with_capacity(ranks.len());
        if !ranks.is_empty() {
            full.push(Matrix::zeros(ring, 0, ranks[0]));
            full.extend(diffs);
        }
        let mut c = ChainComplex { ring: ring.clone(), lo, ranks, diffs: full };
        c.trim();
        c
    }

    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        let lead = self.ranks.iter().take_while(|r| **r == 0).count();
        if lead > 0 {
            self.ranks.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as i64;
            if let Some(d) = self.diffs.first_mut() {
                *d = Matrix::zeros(&self.ring, 0, self.ranks[0]);
            }
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
    }

    /// Re-checks `d_n d_{n+1} = 0` everywhere.
    pub fn verify(&self) -> Result<()> {
        for n in self.lo + 1..self.hi_or_lo() {
            let p = self.diff(n).mul(&self.diff(n + 1))?;
            if !p.is_zero() {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree with nonzero rank.
    pub fn lo(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest degree with nonzero rank.
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.ranks.len() as i64 - 1)
    }

    fn hi_or_lo(&self) -> i64 {
        self.hi().unwrap_or(self.lo)
    }

    /// Degrees with possibly nonzero rank, in increasing order.
    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.lo + self.ranks.len() as i64
    }

    pub fn rank(&self, n: i64) -> usize {
        let k = n - self.lo;
        if k < 0 {
            return 0;
        }
        self.ranks.get(k as usize).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_n`, zero-shaped outside the support.
    pub fn diff(&self, n: i64) -> Matrix {
        let k = n - self.lo;
        if k >= 0 {
            if let Some(d) = self.diffs.get(k as usize) {
                return d.clone();
            }
        }
        Matrix::zeros(&self.ring, self.rank(n - 1), self.rank(n))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `(Σ^m M)_n = M_{n-m}` with differential `(-1)^m d_{n-m}`.
    pub fn shift(&self, m: i64) -> ChainComplex {
        let diffs = self.diffs[1.min(self.diffs.len())..]
            .iter()
            .map(|d| if m % 2 == 0 { d.clone() } else { d.neg() })
            .collect();
        Self::assemble(&self.ring, self.lo + m, self.ranks.clone(), diffs)
    }

    /// Hard truncation keeping degrees `n >= m`; `d_m` becomes zero.
    pub fn truncate_below(&self, m: i64) -> ChainComplex {
        self.keep(m, i64::MAX)
    }

    /// Hard truncation keeping degrees `n <= m`; `d_{m+1}` becomes zero.
    pub fn truncate_above(&self, m: i64) -> ChainComplex {
        self.keep(i64::MIN, m)
    }

    fn keep(&self, a: i64, b: i64) -> ChainComplex {
        let (lo, hi) = (self.lo.max(a), self.hi_or_lo().min(b));
        if self.is_zero() || lo > hi {
            return Self::zero(&self.ring);
        }
        let ranks = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.diff(n)).collect();
        Self::assemble(&self.ring, lo, ranks, diffs)
    }

    /// Degreewise direct sum `M ⊕ N` with `M` first.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi_or_lo().max(other.hi_or_lo());
        let ranks = (lo..=hi).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.diff(n).block_diag(&other.diff(n)).expect("shapes")).collect();
        Ok(Self::assemble(&self.ring, lo, ranks, diffs))
    }

    /// Entries of every differential mapped through `f`.
    pub fn base_change(&self, f: &RingHom) -> Result<ChainComplex> {
        if f.source() != &self.ring {
            return Err(Error::MixedRings);
        }
        let diffs = self.diffs[1.min(self.diffs.len())..].iter().map(|d| f.apply_matrix(d)).collect();
        let c = Self::assemble(f.target(), self.lo, self.ranks.clone(), diffs);
        Ok(c)
    }

    /// `H_n` as a subquotient of the free module in degree `n`.
    pub fn homology(&self, n: i64) -> Result<HomologyModule> {
        let out = self.diff(n);
        let inn = self.diff(n + 1);
        linear::homology_module(&inn, &out)
    }

    /// `(sup, inf)` of homology, computed degree by degree.
    pub fn bounds(&self) -> Result<Bounds> {
        self.bounds_in(self.degrees())
    }

    /// Bounds of homology restricted to the given degrees.
    pub fn bounds_in(&self, range: std::ops::Range<i64>) -> Result<Bounds> {
        let mut nz = Vec::new();
        for n in range {
            if self.rank(n) > 0 && !self.homology(n)?.is_zero {
                nz.push(n);
            }
        }
        Ok(match (nz.first(), nz.last()) {
            (Some(&inf), Some(&sup)) => Bounds::Range { inf, sup },
            _ => Bounds::Acyclic,
        })
    }

    /// Whether every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> Result<bool> {
        Ok(self.first_unit_entry()?.is_none())
    }

    /// First differential entry that is a unit, as `(degree, row, col)`.
    pub fn first_unit_entry(&self) -> Result<Option<(i64, usize, usize)>> {
        if !self.ring.is_local() {
            return Err(Error::NotLocal);
        }
        for n in self.degrees() {
            let d = self.diff(n);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if !self.ring.in_max_ideal(d.get(i, j))? {
                        return Ok(Some((n, i, j)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Identity chain map.
    pub fn identity(&self) -> ChainMap {
        let comps = self.degrees().map(|n| (n, Matrix::identity(&self.ring, self.rank(n)))).collect();
        ChainMap::new_unchecked(self, self, comps)
    }

    /// Degree layout as `(degree, rank)` pairs.
    pub fn rank_pairs(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|n| (n, self.rank(n))).collect()
    }
}

#[cfg(test)]
mod tests;
