use crate::complex::{augment_by_resolution, tensor, ChainComplex};
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;

/// Result of [`truncate_extend`]: `M` agrees with `A` in degrees `<= m`,
/// `H_i(M) = 0` for `s+e < i < top` and `H_i(K ⊗ M) = 0` for
/// `s+2e < i <= kosz_top`.
#[derive(Debug, Clone)]
pub struct WindowCertificate {
    pub complex: ChainComplex,
    pub m: i64,
    pub s: i64,
    pub e: usize,
    pub top: i64,
    pub complete: bool,
    /// Degrees where `H(M)` was checked to vanish.
    pub module_window: (i64, i64),
    /// Degrees where `H(K ⊗ M)` was checked to vanish.
    pub koszul_window: (i64, i64),
}

/// Extends `A` (supported on `0..=m`) by a free resolution of `ker d_m`
/// and verifies the vanishing window that bounds `sup(K ⊗ M)` by `s + 2e`.
pub fn truncate_extend(k: &KoszulAlgebra, a: &ChainComplex, s: i64, budget: usize) -> Result<WindowCertificate> {
    if k.ring() != a.ring() {
        return Err(Error::MixedRings);
    }
    if !a.ring().capabilities().linear_solve {
        return Err(Error::CapabilityMissing(format!("linear_solve over {}", a.ring())));
    }
    let e = k.len();
    let m = a.hi().unwrap_or(0);
    if let Some(lo) = a.lo() {
        if lo < 0 {
            return Err(Error::Invalid(format!("complex has rank in negative degree {lo}")));
        }
    }
    if m < s + 2 * e as i64 + 1 {
        return Err(Error::Invalid(format!("m = {m} is below s + 2e + 1 = {}", s + 2 * e as i64 + 1)));
    }
    for i in s + e as i64 + 1..m {
        if !a.homology(i)?.is_zero {
            return Err(Error::WindowViolated(i));
        }
    }
    let aug = augment_by_resolution(a, m, budget.max(1))?;
    let mc = aug.complex;
    let kosz_top = if aug.complete { aug.top + e as i64 } else { aug.top - 1 };
    let (km, _) = tensor(k.complex(), &mc)?;
    for i in s + 2 * e as i64 + 1..=kosz_top {
        if !km.homology(i)?.is_zero {
            return Err(Error::WindowViolated(i));
        }
    }
    let module_top = if aug.complete { aug.top } else { aug.top - 1 };
    for i in m..=module_top {
        if !mc.homology(i)?.is_zero {
            return Err(Error::VerificationFailed(format!("resolution step left homology in degree {i}")));
        }
    }
    Ok(WindowCertificate {
        complex: mc,
        m,
        s,
        e,
        top: aug.top,
        complete: aug.complete,
        module_window: (s + e as i64 + 1, module_top),
        koszul_window: (s + 2 * e as i64 + 1, kosz_top),
    })
}
