//! DG modules over a Koszul algebra, stored as a complex together with one
//! action matrix per basis element and degree.

use crate::complex::{tensor, ChainComplex, ChainMap, Layout};
use crate::error::{Error, Result};
use crate::koszul::{AxiomCheck, AxiomReport, KoszulAlgebra};
use crate::ring::{Elem, Matrix, RingHom};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct DGModule {
    algebra: KoszulAlgebra,
    underlying: ChainComplex,
    /// `action[h][n] = A^h_n : U_n -> U_{n+|h|}`; missing entries are zero.
    action: Vec<BTreeMap<i64, Matrix>>,
}

impl DGModule {
    /// Module from explicit action matrices; shapes are checked, axioms are
    /// not (see [`DGModule::verify`]).
    pub fn new(algebra: &KoszulAlgebra, underlying: &ChainComplex, action: Vec<BTreeMap<i64, Matrix>>) -> Result<DGModule> {
        if algebra.ring() != underlying.ring() {
            return Err(Error::MixedRings);
        }
        if action.len() != algebra.dim() {
            return Err(Error::ShapeMismatch(format!("{} action families for {} basis elements", action.len(), algebra.dim())));
        }
        for (h, per) in action.iter().enumerate() {
            let k = algebra.degree(h) as i64;
            for (n, m) in per {
                if m.shape() != (underlying.rank(n + k), underlying.rank(*n)) {
                    return Err(Error::ShapeMismatch(format!(
                        "action of {} in degree {n} is {}x{}",
                        algebra.label(h),
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        let action = action
            .into_iter()
            .map(|per| per.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect())
            .collect();
        Ok(DGModule { algebra: algebra.clone(), underlying: underlying.clone(), action })
    }

    /// `K ⊗ M` with `ε_h` acting on `K_{n-p} ⊗ M_p` by `t^h_{n-p} ⊗ 1`.
    pub fn extend(k: &KoszulAlgebra, m: &ChainComplex) -> Result<DGModule> {
        Ok(Self::extend_with_layout(k, m)?.0)
    }

    pub fn extend_with_layout(k: &KoszulAlgebra, m: &ChainComplex) -> Result<(DGModule, Layout)> {
        if k.ring() != m.ring() {
            return Err(Error::MixedRings);
        }
        let (u, layout) = tensor(k.complex(), m)?;
        let r = k.ring();
        let mut action = Vec::with_capacity(k.dim());
        for h in 0..k.dim() {
            let kh = k.degree(h) as i64;
            let mut per = BTreeMap::new();
            for n in u.degrees() {
                let mut a = Matrix::zeros(r, u.rank(n + kh), u.rank(n));
                for p in m.degrees() {
                    let (Some((c0, cs)), Some((r0, rs))) = (layout.block(n, p), layout.block(n + kh, p)) else { continue };
                    if cs == 0 || rs == 0 {
                        continue;
                    }
                    let block = k.mult(h, n - p).kron(&Matrix::identity(r, m.rank(p)))?;
                    a.put(r0, c0, &block);
                }
                per.insert(n, a);
            }
            action.push(per);
        }
        Ok((Self::new(k, &u, action)?, layout))
    }

    /// The algebra as a module over itself.
    pub fn regular(k: &KoszulAlgebra) -> DGModule {
        Self::extend(k, &ChainComplex::concentrated(k.ring(), 1, 0)).expect("same ring")
    }

    pub fn algebra(&self) -> &KoszulAlgebra {
        &self.algebra
    }

    pub fn underlying(&self) -> &ChainComplex {
        &self.underlying
    }

    /// `A^h_n`, zero-shaped when not stored.
    pub fn action(&self, h: usize, n: i64) -> Matrix {
        let k = self.algebra.degree(h) as i64;
        self.action[h]
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.algebra.ring(), self.underlying.rank(n + k), self.underlying.rank(n)))
    }

    /// Action of an algebra element `u ∈ K_p` on degree `n`.
    pub fn act(&self, p: usize, u: &[Elem], n: i64) -> Matrix {
        let r = self.algebra.ring();
        let mut acc = Matrix::zeros(r, self.underlying.rank(n + p as i64), self.underlying.rank(n));
        for (i, h) in self.algebra.degree_range(p).enumerate() {
            if !r.is_zero(&u[i]) {
                acc = acc.add(&self.action(h, n).scale(&u[i])).expect("shapes");
            }
        }
        acc
    }

    /// Changes the action of one basis element in one degree.
    pub fn with_action(&self, h: usize, n: i64, m: Matrix) -> Result<DGModule> {
        let mut action = self.action.clone();
        action[h].insert(n, m);
        Self::new(&self.algebra, &self.underlying, action)
    }

    /// Unitality, associativity against the algebra's structure constants,
    /// and Leibniz, in every degree.
    pub fn verify(&self) -> AxiomReport {
        let k = &self.algebra;
        let u = &self.underlying;
        let mut report = AxiomReport::default();
        let degrees: Vec<i64> = u.degrees().collect();

        let mut c = AxiomCheck::new("square-zero");
        if let Err(Error::NotAComplex(n)) = u.verify() {
            c.fail(format!("degree {n}"));
        }
        report.push(c);

        let mut c = AxiomCheck::new("unitality");
        for &n in &degrees {
            if self.action(0, n) != Matrix::identity(k.ring(), u.rank(n)) {
                c.fail(format!("degree {n}"));
                break;
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("associativity");
        'outer: for g in 0..k.dim() {
            for h in 0..k.dim() {
                let (pg, ph) = (k.degree(g), k.degree(h));
                let prod = k.product(pg, &k.unit_vector(g), ph, &k.unit_vector(h));
                for &n in &degrees {
                    let lhs = self.action(g, n + ph as i64).mul(&self.action(h, n)).expect("shapes");
                    if lhs != self.act(pg + ph, &prod, n) {
                        c.fail(format!("{} {} in degree {n}", k.label(g), k.label(h)));
                        break 'outer;
                    }
                }
            }
        }
        report.push(c);

        let mut c = AxiomCheck::new("leibniz");
        'outer: for h in 0..k.dim() {
            let ph = k.degree(h);
            for &n in &degrees {
                let a = u.diff(n + ph as i64).mul(&self.action(h, n)).expect("shapes");
                let mut b = self.action(h, n - 1).mul(&u.diff(n)).expect("shapes");
                if ph % 2 == 1 {
                    b = b.neg();
                }
                let lhs = a.sub(&b).expect("shapes");
                let rhs = if ph == 0 {
                    Matrix::zeros(k.ring(), lhs.rows(), lhs.cols())
                } else {
                    self.act(ph - 1, &k.diff_of_basis(h), n)
                };
                if lhs != rhs {
                    c.fail(format!("{} in degree {n}", k.label(h)));
                    break 'outer;
                }
            }
        }
        report.push(c);
        report
    }

    pub fn base_change(&self, f: &RingHom) -> Result<DGModule> {
        let k = self.algebra.base_change(f)?;
        let u = self.underlying.base_change(f)?;
        let action = self
            .action
            .iter()
            .map(|per| per.iter().map(|(n, m)| (*n, f.apply_matrix(m))).collect())
            .collect();
        Self::new(&k, &u, action)
    }
}

fn same_algebra(a: &DGModule, b: &DGModule) -> Result<()> {
    if a.algebra != b.algebra {
        return Err(Error::DimensionMismatch("DG modules over different algebras".into()));
    }
    Ok(())
}

/// First `(h, n)` where `φ A^h_n ≠ A^h_n φ`, if any.
pub fn first_nonlinear(phi: &ChainMap, source: &DGModule, target: &DGModule) -> Result<Option<(usize, i64)>> {
    same_algebra(source, target)?;
    if phi.source() != source.underlying() || phi.target() != target.underlying() {
        return Err(Error::DimensionMismatch("map does not connect the given modules".into()));
    }
    let k = &source.algebra;
    for h in 0..k.dim() {
        let kh = k.degree(h) as i64;
        for n in source.underlying.degrees() {
            let lhs = phi.comp(n + kh).mul(&source.action(h, n))?;
            let rhs = target.action(h, n).mul(&phi.comp(n))?;
            if lhs != rhs {
                return Ok(Some((h, n)));
            }
        }
    }
    Ok(None)
}

pub fn is_k_linear(phi: &ChainMap, source: &DGModule, target: &DGModule) -> Result<bool> {
    Ok(first_nonlinear(phi, source, target)?.is_none())
}

/// `K`-linear map `K ⊗ M -> N` determined by `ψ : M -> N`,
/// `ε_h ⊗ x ↦ ε_h ψ(x)`.
pub fn adjoint_forward(m: &ChainComplex, n: &DGModule, psi: &ChainMap) -> Result<ChainMap> {
    let k = n.algebra();
    if psi.source() != m || psi.target() != n.underlying() {
        return Err(Error::DimensionMismatch("ψ must map M to the underlying complex of N".into()));
    }
    let (src, layout) = DGModule::extend_with_layout(k, m)?;
    let su = src.underlying();
    let mut comps = BTreeMap::new();
    for deg in su.degrees() {
        let mut phi = Matrix::zeros(k.ring(), n.underlying().rank(deg), su.rank(deg));
        for p in m.degrees() {
            let Some((off, size)) = layout.block(deg, p) else { continue };
            if size == 0 {
                continue;
            }
            let sp = m.rank(p);
            for (kpos, h) in k.degree_range((deg - p) as usize).enumerate() {
                let block = n.action(h, p).mul(&psi.comp(p))?;
                phi.put(0, off + kpos * sp, &block);
            }
        }
        comps.insert(deg, phi);
    }
    Ok(ChainMap::new_unchecked(su, n.underlying(), comps))
}

/// Restriction of `Φ : K ⊗ M -> N` to `1 ⊗ M`.
pub fn adjoint_backward(m: &ChainComplex, n: &DGModule, phi: &ChainMap) -> Result<ChainMap> {
    let (src, layout) = DGModule::extend_with_layout(n.algebra(), m)?;
    if phi.source() != src.underlying() || phi.target() != n.underlying() {
        return Err(Error::DimensionMismatch("Φ must map K ⊗ M to N".into()));
    }
    let mut comps = BTreeMap::new();
    for p in m.degrees() {
        let Some((off, size)) = layout.block(p, p) else { continue };
        let c = phi.comp(p);
        comps.insert(p, c.submatrix(0..c.rows(), off..off + size));
    }
    Ok(ChainMap::new_unchecked(m, n.underlying(), comps))
}

/// `K ⊗ f`, componentwise `⊕_p 1 ⊗ f_p`.
pub fn extend_map(k: &KoszulAlgebra, f: &ChainMap) -> Result<ChainMap> {
    let (s, ls) = DGModule::extend_with_layout(k, f.source())?;
    let (t, lt) = DGModule::extend_with_layout(k, f.target())?;
    let (su, tu) = (s.underlying(), t.underlying());
    let mut comps = BTreeMap::new();
    let lo = su.degrees().start.min(tu.degrees().start);
    let hi = su.degrees().end.max(tu.degrees().end);
    for n in lo..hi {
        let mut c = Matrix::zeros(k.ring(), tu.rank(n), su.rank(n));
        let ps = f.source().degrees().start.min(f.target().degrees().start);
        let pe = f.source().degrees().end.max(f.target().degrees().end);
        for p in ps..pe {
            let (Some((c0, cs)), Some((r0, rs))) = (ls.block(n, p), lt.block(n, p)) else { continue };
            if cs == 0 || rs == 0 {
                continue;
            }
            c.put(r0, c0, &Matrix::identity(k.ring(), k.rank(n - p)).kron(&f.comp(p))?);
        }
        comps.insert(n, c);
    }
    Ok(ChainMap::new_unchecked(su, tu, comps))
}

/// Multiplication `K ⊗ K -> K` and the unit inclusion `K -> K ⊗ K`,
/// `x ↦ 1 ⊗ x`.
pub fn multiplication_map(k: &KoszulAlgebra) -> Result<(ChainMap, ChainMap)> {
    let reg = DGModule::regular(k);
    let mu = adjoint_forward(k.complex(), &reg, &ChainMap::new_unchecked(k.complex(), reg.underlying(), identity_comps(k)))?;
    let (src, layout) = DGModule::extend_with_layout(k, k.complex())?;
    let mut comps = BTreeMap::new();
    for p in k.complex().degrees() {
        let (off, size) = layout.block(p, p).expect("unit summand");
        let mut c = Matrix::zeros(k.ring(), src.underlying().rank(p), size);
        c.put(off, 0, &Matrix::identity(k.ring(), size));
        comps.insert(p, c);
    }
    let iota = ChainMap::new_unchecked(k.complex(), src.underlying(), comps);
    Ok((mu, iota))
}

fn identity_comps(k: &KoszulAlgebra) -> BTreeMap<i64, Matrix> {
    k.complex().degrees().map(|n| (n, Matrix::identity(k.ring(), k.rank(n)))).collect()
}

#[cfg(test)]
mod tests;
