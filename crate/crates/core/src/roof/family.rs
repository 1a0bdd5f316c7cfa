//! One-parameter superposition families and their characteristic curves.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::re;
use crate::named::{self, superposition};
use crate::state::{DensityMatrix, PureState};

pub const DEFAULT_P_POINTS: usize = 2001;
pub const DEFAULT_PHI_POINTS: usize = 720;

/// `sqrt(p) psi1 - e^{i phi} sqrt(1-p) psi2` for orthonormal `psi1`, `psi2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Family {
    psi1: PureState,
    psi2: PureState,
}

impl Rank2Family {
    pub fn new(psi1: PureState, psi2: PureState) -> Result<Self> {
        if psi1.n_qubits() != psi2.n_qubits() {
            return Err(Error::Mismatch(psi1.n_qubits(), psi2.n_qubits()));
        }
        let overlap = psi1.inner(&psi2).norm();
        if overlap > 1e-10 {
            return Err(Error::InvalidState(format!(
                "family members are not orthogonal (overlap {overlap:e})"
            )));
        }
        Ok(Self { psi1, psi2 })
    }

    pub fn z3() -> Self {
        Self::new(named::ghz3(), named::w3()).expect("GHZ3 and W3 are orthonormal")
    }

    pub fn z4() -> Self {
        Self::new(named::ghz4(), named::w4()).expect("GHZ4 and W4 are orthonormal")
    }

    pub fn z_app() -> Self {
        Self::new(named::psi1_app(), named::psi2_app()).expect("appendix pair is orthonormal")
    }

    pub fn psi1(&self) -> &PureState {
        &self.psi1
    }

    pub fn psi2(&self) -> &PureState {
        &self.psi2
    }

    pub fn n_qubits(&self) -> usize {
        self.psi1.n_qubits()
    }

    pub fn state(&self, p: f64, phi: f64) -> Result<PureState> {
        superposition(&self.psi1, &self.psi2, p, phi)
    }

    /// `p |psi1><psi1| + (1-p) |psi2><psi2|`.
    pub fn mixture(&self, p: f64) -> Result<DensityMatrix> {
        named::check_probability(p)?;
        let m =
            self.psi1.projector().matrix() * re(p) + self.psi2.projector().matrix() * re(1.0 - p);
        DensityMatrix::new(m)
    }
}

/// `n` equally spaced points covering `[0, 1]` including both ends.
pub fn p_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::OutOfDomain {
            name: "p grid size",
            value: n as f64,
            domain: ">= 2",
        });
    }
    Ok((0..n).map(|i| i as f64 / (n - 1) as f64).collect())
}

/// `n` points `2 pi k / n`, so `phi = 0` is included and `2 pi` is not; for
/// even `n` the grid also contains `pi`.
pub fn phi_grid(n: usize) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::OutOfDomain {
            name: "phi grid size",
            value: n as f64,
            domain: ">= 1",
        });
    }
    Ok((0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicCurveSet {
    pub p_grid: Vec<f64>,
    pub phi_grid: Vec<f64>,
    /// `values[i][j]` is the measure at `(p_grid[i], phi_grid[j])`.
    pub values: Vec<Vec<f64>>,
    pub min_curve: Vec<f64>,
    /// The `phi` attaining each row minimum (first one on ties).
    pub argmin_phi: Vec<f64>,
}

impl CharacteristicCurveSet {
    /// Largest spread over `phi` of any row.
    pub fn max_phi_spread(&self) -> f64 {
        self.values
            .iter()
            .map(|row| {
                let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            })
            .fold(0.0, f64::max)
    }
}

fn check_increasing(grid: &[f64], name: &'static str) -> Result<()> {
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::OutOfDomain {
            name,
            value: grid.len() as f64,
            domain: "non-empty, strictly increasing",
        });
    }
    Ok(())
}

/// Evaluates `measure` on every generated state of the grid. Rows are
/// computed in parallel and collected in grid order.
pub fn characteristic_curves<F>(
    family: &Rank2Family,
    measure: F,
    p_grid: &[f64],
    phi_grid: &[f64],
) -> Result<CharacteristicCurveSet>
where
    F: Fn(&PureState) -> Result<f64> + Sync,
{
    check_increasing(p_grid, "p grid")?;
    check_increasing(phi_grid, "phi grid")?;
    let values: Vec<Vec<f64>> = p_grid
        .par_iter()
        .map(|&p| {
            phi_grid
                .iter()
                .map(|&phi| {
                    family
                        .state(p, phi)
                        .and_then(|s| measure(&s))
                        .map_err(|e| Error::AtGridPoint {
                            p,
                            phi,
                            source: Box::new(e),
                        })
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let mut min_curve = Vec::with_capacity(values.len());
    let mut argmin_phi = Vec::with_capacity(values.len());
    for row in &values {
        let (j, v) =
            row.iter().enumerate().fold(
                (0, f64::INFINITY),
                |best, (j, &v)| if v < best.1 { (j, v) } else { best },
            );
        min_curve.push(v);
        argmin_phi.push(phi_grid[j]);
    }
    Ok(CharacteristicCurveSet {
        p_grid: p_grid.to_vec(),
        phi_grid: phi_grid.to_vec(),
        values,
        min_curve,
        argmin_phi,
    })
}
