use super::ChainComplex;
use crate::error::{Error, Result};
use crate::ring::Matrix;
use std::collections::BTreeMap;

/// Degree-0 map of complexes; missing components are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Validated constructor: checks shapes and `d φ = φ d`.
    pub fn new(source: &ChainComplex, target: &ChainComplex, comps: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        if source.ring() != target.ring() {
            return Err(Error::MixedRings);
        }
        for (n, m) in &comps {
            if m.shape() != (target.rank(*n), source.rank(*n)) {
                return Err(Error::DimensionMismatch(format!(
                    "component {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(*n),
                    source.rank(*n)
                )));
            }
        }
        let f = Self::new_unchecked(source, target, comps);
        if let Some(n) = f.first_failure()? {
            return Err(Error::Invalid(format!("not a chain map at degree {n}")));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &ChainComplex, target: &ChainComplex, comps: BTreeMap<i64, Matrix>) -> ChainMap {
        let comps = comps.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect();
        ChainMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        Self::new_unchecked(source, target, BTreeMap::new())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `φ_n`, zero-shaped where not stored.
    pub fn comp(&self, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.ring(), self.target.rank(n), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    fn degrees(&self) -> std::ops::Range<i64> {
        let (a, b) = (self.source.degrees(), self.target.degrees());
        let lo = a.start.min(b.start);
        let hi = a.end.max(b.end);
        lo..hi + 1
    }

    /// First degree where `d^T_n φ_n ≠ φ_{n-1} d^S_n`.
    pub fn first_failure(&self) -> Result<Option<i64>> {
        for n in self.degrees() {
            let lhs = self.target.diff(n).mul(&self.comp(n))?;
            let rhs = self.comp(n - 1).mul(&self.source.diff(n))?;
            if lhs != rhs {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    pub fn is_chain_map(&self) -> Result<bool> {
        Ok(self.first_failure()?.is_none())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composed maps do not share a complex".into()));
        }
        let mut comps = BTreeMap::new();
        for n in first.source.degrees() {
            comps.insert(n, self.comp(n).mul(&first.comp(n))?);
        }
        Ok(Self::new_unchecked(&first.source, &self.target, comps))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("maps with different ends".into()));
        }
        let mut comps = BTreeMap::new();
        for n in self.degrees() {
            comps.insert(n, self.comp(n).add(&other.comp(n))?);
        }
        Ok(Self::new_unchecked(&self.source, &self.target, comps))
    }

    pub fn neg(&self) -> ChainMap {
        let comps = self.comps.iter().map(|(n, m)| (*n, m.neg())).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    /// Computational mode: the cone is exact (linear_solve rings only).
    pub fn is_quasi_iso(&self) -> Result<bool> {
        Ok(super::cone(self)?.bounds()? == super::Bounds::Acyclic)
    }
}

/// Degree +1 maps `σ_n : C_n -> D_{n+1}`; missing components are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Homotopy {
    comps: BTreeMap<i64, Matrix>,
}

impl Homotopy {
    pub fn new(comps: BTreeMap<i64, Matrix>) -> Homotopy {
        Homotopy { comps }
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    pub fn comp(&self, n: i64, source: &ChainComplex, target: &ChainComplex) -> Result<Matrix> {
        match self.comps.get(&n) {
            Some(m) if m.shape() == (target.rank(n + 1), source.rank(n)) => Ok(m.clone()),
            Some(m) => Err(Error::DimensionMismatch(format!(
                "homotopy component {n} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                target.rank(n + 1),
                source.rank(n)
            ))),
            None => Ok(Matrix::zeros(source.ring(), target.rank(n + 1), source.rank(n))),
        }
    }

    /// First degree where `σ_{n-1} d_n + d_{n+1} σ_n ≠ 1`.
    pub fn contraction_failure(&self, c: &ChainComplex) -> Result<Option<i64>> {
        for n in c.degrees() {
            let a = self.comp(n - 1, c, c)?.mul(&c.diff(n))?;
            let b = c.diff(n + 1).mul(&self.comp(n, c, c)?)?;
            if a.add(&b)? != Matrix::identity(c.ring(), c.rank(n)) {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    pub fn is_contraction(&self, c: &ChainComplex) -> Result<bool> {
        Ok(self.contraction_failure(c)?.is_none())
    }

    /// Whether `φ_n = d_{n+1} σ_n + σ_{n-1} d_n` in every degree.
    pub fn is_null_homotopy(&self, phi: &ChainMap) -> Result<bool> {
        let (s, t) = (phi.source(), phi.target());
        for n in phi.degrees() {
            let a = t.diff(n + 1).mul(&self.comp(n, s, t)?)?;
            let b = self.comp(n - 1, s, t)?.mul(&s.diff(n))?;
            if a.add(&b)? != phi.comp(n) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
