//! Anchors of mixed lines that touch a characteristic curve tangentially.

use crate::error::{Error, Result};
use crate::roof::scalar::golden_section_min;

/// Anchor tolerance used by the roof scenarios.
pub const ANCHOR_TOL: f64 = 1e-7;

/// Minimizes `objective(anchor)` over `bracket` by golden-section search.
///
/// A minimizer that lands on either end of the bracket means the stationary
/// point is not interior, and is reported as [`Error::Bracket`].
pub fn stationary_mix_point<F>(objective: F, bracket: (f64, f64), tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (lo, hi) = bracket;
    let (x, _) = golden_section_min(objective, lo, hi, tol)?;
    let edge = 10.0 * tol;
    if x - lo.min(hi) < edge || hi.max(lo) - x < edge {
        return Err(Error::Bracket { lo, hi });
    }
    Ok(x)
}
