use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linear;
use crate::ring::Matrix;

/// Output of [`augment_by_resolution`]. Homology vanishes in degrees
/// `m..top` (and in `top` too when `complete`).
#[derive(Debug, Clone)]
pub struct Augmented {
    pub complex: ChainComplex,
    pub m: i64,
    pub top: i64,
    pub complete: bool,
}

impl Augmented {
    /// Degrees above `m - 1` with certified zero homology.
    pub fn exact_window(&self) -> std::ops::RangeInclusive<i64> {
        if self.complete {
            self.m..=i64::MAX
        } else {
            self.m..=self.top - 1
        }
    }
}

fn drop_zero_columns(k: &Matrix) -> Matrix {
    let r = k.ring();
    let idx: Vec<usize> = (0..k.cols()).filter(|&j| k.column(j).iter().any(|x| !r.is_zero(x))).collect();
    k.select_columns(&idx)
}

/// Extends `A` (supported in degrees `<= m`) upward by a free resolution of
/// `ker d_m`, adding at most `depth` new degrees.
pub fn augment_by_resolution(a: &ChainComplex, m: i64, depth: usize) -> Result<Augmented> {
    if let Some(hi) = a.hi() {
        if hi > m {
            return Err(Error::Invalid(format!("complex has rank in degree {hi} above m = {m}")));
        }
    }
    if !a.ring().capabilities().linear_solve {
        return Err(Error::CapabilityMissing(format!("linear_solve over {}", a.ring())));
    }
    let r = a.ring().clone();
    let lo = a.lo().unwrap_or(m).min(m);
    let mut ranks: Vec<usize> = (lo..=m).map(|n| a.rank(n)).collect();
    let mut diffs: Vec<Matrix> = (lo + 1..=m).map(|n| a.diff(n)).collect();
    let mut last = a.diff(m);
    let mut top = m;
    let mut complete = false;
    for _ in 0..depth {
        let k = drop_zero_columns(&linear::kernel_basis(&last)?);
        if k.cols() == 0 {
            complete = true;
            break;
        }
        ranks.push(k.cols());
        diffs.push(k.clone());
        last = k;
        top += 1;
    }
    if !complete {
        complete = drop_zero_columns(&linear::kernel_basis(&last)?).cols() == 0;
    }
    let complex = ChainComplex::assemble(&r, lo, ranks, diffs);
    Ok(Augmented { complex, m, top, complete })
}
