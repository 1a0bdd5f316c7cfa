//! The shared tolerance record.
//!
//! Every validation threshold in the crate reads from a [`Tolerances`] value.
//! Callers that need looser slack (for example the quintic-spectrum path of
//! three-party negativities) pass their own record to the `*_with` variants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Elementwise equality of matrices and amplitudes, Hermiticity.
    pub equality: f64,
    /// Unit norm of state vectors, unit trace, probability sums.
    pub norm: f64,
    /// Most negative eigenvalue accepted for a density matrix.
    pub psd: f64,
    /// Negative Wootters eigenvalues in `[-spectrum_clamp, 0)` are clamped to zero.
    pub spectrum_clamp: f64,
    /// Maximum deviation accepted when checking an ensemble against a target.
    pub decomposition: f64,
    /// Per-cell deviation allowed by the reproduced tables.
    pub table: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            equality: 1e-10,
            norm: 1e-12,
            psd: 1e-10,
            spectrum_clamp: 1e-9,
            decomposition: 1e-9,
            table: 1e-9,
        }
    }
}

impl Tolerances {
    /// Applies an override string on top of `self`.
    ///
    /// Accepts either a bare number, which replaces `equality`, or a comma
    /// separated list of `field=value` pairs.
    pub fn with_override(mut self, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(self);
        }
        if let Ok(v) = text.parse::<f64>() {
            self.equality = positive("equality", v)?;
            return Ok(self);
        }
        for item in text.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::InvalidState(format!("malformed tolerance entry `{item}`"))
            })?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidState(format!("malformed tolerance value `{value}`")))?;
            match key.trim() {
                "equality" => self.equality = positive("equality", v)?,
                "norm" => self.norm = positive("norm", v)?,
                "psd" => self.psd = positive("psd", v)?,
                "spectrum_clamp" => self.spectrum_clamp = positive("spectrum_clamp", v)?,
                "decomposition" => self.decomposition = positive("decomposition", v)?,
                "table" => self.table = positive("table", v)?,
                other => {
                    return Err(Error::InvalidState(format!(
                        "unknown tolerance field `{other}`"
                    )))
                }
            }
        }
        Ok(self)
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::OutOfDomain {
            name,
            value: v,
            domain: "(0, inf)",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_number_sets_equality() {
        let t = Tolerances::default().with_override("1e-8").unwrap();
        assert_eq!(t.equality, 1e-8);
        assert_eq!(t.norm, 1e-12);
    }

    #[test]
    fn keyed_entries() {
        let t = Tolerances::default()
            .with_override("norm=1e-9, table=1e-6")
            .unwrap();
        assert_eq!(t.norm, 1e-9);
        assert_eq!(t.table, 1e-6);
        assert!(Tolerances::default().with_override("bogus=1").is_err());
        assert!(Tolerances::default().with_override("norm=-1").is_err());
    }
}
