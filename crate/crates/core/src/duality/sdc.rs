use super::presented::{homology_iso_at, resolve, Blocks, Presentation, PresentedComplex};
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;
use crate::linear;
use crate::ring::Matrix;
use std::fmt;

/// Default cap on the rank of a free module in any resolution and on the
/// number of generators of a Hom module in any degree.
pub const DEFAULT_BUDGET: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SdcOutcome {
    /// No obstruction in degrees `-window..=0` (and `1..=e` for DG checks).
    Semidualizing,
    NotSemidualizing { degree: i64, reason: String },
    Inconclusive { reason: String },
}

/// Behaviour of the homothety on homology in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeEvidence {
    pub degree: i64,
    pub injective: bool,
    pub surjective: bool,
    pub homology: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdcVerdict {
    pub outcome: SdcOutcome,
    pub window: usize,
    pub evidence: Vec<DegreeEvidence>,
}

impl SdcVerdict {
    pub fn is_semidualizing(&self) -> bool {
        self.outcome == SdcOutcome::Semidualizing
    }

    pub fn is_not_semidualizing(&self) -> bool {
        matches!(self.outcome, SdcOutcome::NotSemidualizing { .. })
    }

    pub fn witness_degree(&self) -> Option<i64> {
        match self.outcome {
            SdcOutcome::NotSemidualizing { degree, .. } => Some(degree),
            _ => None,
        }
    }
}

impl fmt::Display for SdcVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            SdcOutcome::Semidualizing => write!(f, "Semidualizing (window {})", self.window),
            SdcOutcome::NotSemidualizing { degree, reason } => {
                write!(f, "NotSemidualizing at degree {degree}: {reason} (window {})", self.window)
            }
            SdcOutcome::Inconclusive { reason } => write!(f, "Inconclusive: {reason} (window {})", self.window),
        }
    }
}

fn block(blocks: &Blocks, n: i64, index: i64) -> (usize, usize) {
    blocks.get(&n).and_then(|v| v.iter().find(|b| b.0 == index)).map_or((0, 0), |b| (b.1, b.2))
}

/// Homothety `K -> Hom_R(P, K ⊗ C)`, `x ↦ x ⊗ ε`, tested degree by degree
/// on homology for `n = 0, -1, ..., -window` and then `1..=e`. The witness
/// is the failing negative degree closest to zero if there is one.
fn homothety(k: &KoszulAlgebra, c: &Presentation, window: usize, budget: usize) -> Result<SdcVerdict> {
    if k.ring() != c.ring() {
        return Err(Error::MixedRings);
    }
    let r = k.ring();
    if !r.capabilities().linear_solve {
        // C = R needs no computation: RHom(R, R) = R.
        if c.generators() == 1 && c.rel.is_zero() {
            return Ok(SdcVerdict { outcome: SdcOutcome::Semidualizing, window, evidence: Vec::new() });
        }
        return Err(Error::CapabilityMissing(format!("linear_solve over {r}")));
    }
    let e = k.len();
    let res = match resolve(c, window + e + 1, budget) {
        Ok(res) => res,
        Err(Error::BudgetExceeded(msg)) => {
            return Ok(SdcVerdict { outcome: SdcOutcome::Inconclusive { reason: msg }, window, evidence: Vec::new() })
        }
        Err(err) => return Err(err),
    };
    let (kc, _) = PresentedComplex::tensor_free(k.complex(), &PresentedComplex::module(c, 0))?;
    let hom_size = |n: i64| res.complex.degrees().map(|j| res.complex.rank(j) * kc.gens(j + n)).sum::<usize>();
    if let Some(n) = (-(window as i64) - 1..=e as i64 + 1).find(|&n| hom_size(n) > budget) {
        let reason = format!("Hom module in degree {n} has {} generators, over the budget {budget}", hom_size(n));
        return Ok(SdcVerdict { outcome: SdcOutcome::Inconclusive { reason }, window, evidence: Vec::new() });
    }
    let (h, blocks) = PresentedComplex::hom_from_free(&res.complex, &kc)?;
    let src = PresentedComplex::free(k.complex());
    let (g, s0) = (c.generators(), res.complex.rank(0));
    let eps = &res.augmentation;

    let degrees: Vec<i64> = (0..=window as i64).map(|i| -i).chain(1..=e as i64).collect();
    let mut evidence = Vec::new();
    let mut outcome = SdcOutcome::Semidualizing;
    for n in degrees {
        let kn = k.rank(n);
        let mut chi = Matrix::zeros(r, h.gens(n), kn);
        let (off, size) = block(&blocks, n, 0);
        if size > 0 {
            for kpos in 0..kn {
                for ci in 0..g {
                    for b in 0..s0 {
                        chi.set(off + (kpos * g + ci) * s0 + b, kpos, eps.get(ci, b).clone());
                    }
                }
            }
        }
        let (injective, surjective) = homology_iso_at(&chi, &src, &h, n)?;
        let hm = h.homology(n)?;
        evidence.push(DegreeEvidence { degree: n, injective, surjective, homology: hm.describe() });
        let prefer = match &outcome {
            SdcOutcome::Semidualizing => true,
            SdcOutcome::NotSemidualizing { degree, .. } => *degree >= 0 && n < 0,
            SdcOutcome::Inconclusive { .. } => false,
        };
        if (!injective || !surjective) && prefer {
            let reason = if kn == 0 && e == 0 {
                format!("Ext^{}(C,C) = {} is nonzero", -n, hm.describe())
            } else if kn == 0 {
                format!("H_{n} of RHom(K⊗C, K⊗C) = {} but H_{n}(K) = 0", hm.describe())
            } else {
                let what = match (injective, surjective) {
                    (false, false) => "neither injective nor surjective",
                    (false, true) => "not injective",
                    _ => "not surjective",
                };
                format!("homothety on H_{n} is {what}; H_{n} = {}", hm.describe())
            };
            outcome = SdcOutcome::NotSemidualizing { degree: n, reason };
        }
    }
    Ok(SdcVerdict { outcome, window, evidence })
}

/// Whether `R -> RHom(C, C)` is a quasi-isomorphism in degrees
/// `-window..=0`.
pub fn homothety_check(c: &Presentation, window: usize) -> Result<SdcVerdict> {
    homothety_check_with_budget(c, window, DEFAULT_BUDGET)
}

pub fn homothety_check_with_budget(c: &Presentation, window: usize, budget: usize) -> Result<SdcVerdict> {
    homothety(&KoszulAlgebra::new(c.ring(), &[])?, c, window, budget)
}

/// The verdict for `C` over `R` and for `K ⊗ C` over `K`, the latter via
/// `RHom_K(K ⊗ C, K ⊗ C) ≃ RHom_R(C, K ⊗ C)`.
pub fn koszul_sdc_transfer(k: &KoszulAlgebra, c: &Presentation, window: usize) -> Result<(SdcVerdict, SdcVerdict)> {
    koszul_sdc_transfer_with_budget(k, c, window, DEFAULT_BUDGET)
}

pub fn koszul_sdc_transfer_with_budget(
    k: &KoszulAlgebra,
    c: &Presentation,
    window: usize,
    budget: usize,
) -> Result<(SdcVerdict, SdcVerdict)> {
    Ok((homothety_check_with_budget(c, window, budget)?, homothety(k, c, window, budget)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BidualityOutcome {
    Reflexive,
    NotReflexive { degree: i64, reason: String },
    /// `Ext^window(X, C)` is nonzero: `RHom(X, C)` is not bounded within
    /// the window.
    FailsBoundedness { degree: i64 },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidualityVerdict {
    pub outcome: BidualityOutcome,
    pub window: usize,
}

impl BidualityVerdict {
    pub fn is_reflexive(&self) -> bool {
        self.outcome == BidualityOutcome::Reflexive
    }
}

impl fmt::Display for BidualityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            BidualityOutcome::Reflexive => write!(f, "Reflexive (window {})", self.window),
            BidualityOutcome::NotReflexive { degree, reason } => {
                write!(f, "NotReflexive at degree {degree}: {reason} (window {})", self.window)
            }
            BidualityOutcome::FailsBoundedness { degree } => {
                write!(f, "FailsBoundedness: RHom(X,C) nonzero in degree {degree} (window {})", self.window)
            }
            BidualityOutcome::Inconclusive { reason } => write!(f, "Inconclusive: {reason} (window {})", self.window),
        }
    }
}

/// Biduality `X -> RHom(RHom(X, C), C)` when `RHom(X, C)` is a module:
/// checks `Ext^{1..window}(X, C) = 0`, `Ext^{1..window}(Hom(X, C), C) = 0`
/// and that evaluation `X -> Hom(Hom(X, C), C)` is bijective.
pub fn biduality_check(x: &Presentation, c: &Presentation, window: usize) -> Result<BidualityVerdict> {
    if x.ring() != c.ring() {
        return Err(Error::MixedRings);
    }
    let r = x.ring();
    if !r.capabilities().linear_solve {
        return Err(Error::CapabilityMissing(format!("linear_solve over {r}")));
    }
    let verdict = |outcome| Ok(BidualityVerdict { outcome, window });
    let cq = PresentedComplex::module(c, 0);
    let rx = resolve(x, window + 1, DEFAULT_BUDGET)?;
    let (hx, bx) = PresentedComplex::hom_from_free(&rx.complex, &cq)?;
    let nonzero: Vec<i64> =
        (1..=window as i64).filter_map(|i| hx.homology(-i).map(|h| (!h.is_zero).then_some(i)).transpose()).collect::<Result<_>>()?;
    if nonzero.contains(&(window as i64)) {
        return verdict(BidualityOutcome::FailsBoundedness { degree: -(window as i64) });
    }
    if let Some(i) = nonzero.first() {
        return verdict(BidualityOutcome::Inconclusive {
            reason: format!("Ext^{i}(X,C) is nonzero; only RHom(X,C) concentrated in degree 0 is handled"),
        });
    }

    let (z, b) = hx.cycles_boundaries(0)?;
    let y = Presentation::new(linear::preimage_of_span(&z, &b)?);
    let ry = resolve(&y, window + 1, DEFAULT_BUDGET)?;
    let (hy, by) = PresentedComplex::hom_from_free(&ry.complex, &cq)?;
    for i in 1..=window as i64 {
        let h = hy.homology(-i)?;
        if !h.is_zero {
            return verdict(BidualityOutcome::NotReflexive {
                degree: -i,
                reason: format!("Ext^{i}(Hom(X,C),C) = {} is nonzero", h.describe()),
            });
        }
    }

    // Evaluation on P_{X,0}: p ↦ (y_t ↦ φ_t(p)), read through ε_Y.
    let gc = c.generators();
    let (sx, sy) = (rx.complex.rank(0), ry.complex.rank(0));
    let (ox, _) = block(&bx, 0, 0);
    let (oy, _) = block(&by, 0, 0);
    let eps_y = &ry.augmentation;
    let mut delta = Matrix::zeros(r, hy.gens(0), sx);
    for q in 0..sx {
        for ci in 0..gc {
            for bb in 0..sy {
                let mut acc = r.zero();
                for t in 0..z.cols() {
                    let phi = z.get(ox + ci * sx + q, t);
                    acc = r.add(&acc, &r.mul(eps_y.get(t, bb), phi));
                }
                delta.set(oy + ci * sy + bb, q, acc);
            }
        }
    }
    let (inj, surj) = homology_iso_at(&delta, &PresentedComplex::free(&rx.complex), &hy, 0)?;
    if inj && surj {
        verdict(BidualityOutcome::Reflexive)
    } else {
        let what = if inj { "not surjective" } else { "not injective" };
        verdict(BidualityOutcome::NotReflexive { degree: 0, reason: format!("evaluation X -> Hom(Hom(X,C),C) is {what}") })
    }
}
