//! Checking that an ensemble reproduces a target density matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::max_abs_diff;
use crate::state::{ensemble_to_density, DensityMatrix, Ensemble};

/// Elementwise threshold for [`verify_decomposition`].
pub const DECOMPOSITION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub max_deviation: f64,
}

pub fn verify_decomposition(e: &Ensemble, target: &DensityMatrix) -> Result<Verification> {
    verify_decomposition_with(e, target, DECOMPOSITION_TOL)
}

pub fn verify_decomposition_with(
    e: &Ensemble,
    target: &DensityMatrix,
    tol: f64,
) -> Result<Verification> {
    if e.n_qubits() != target.n_qubits() {
        return Err(Error::Mismatch(target.n_qubits(), e.n_qubits()));
    }
    let dev = max_abs_diff(ensemble_to_density(e).matrix(), target.matrix());
    Ok(Verification {
        ok: dev < tol,
        max_deviation: dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{ghz3, ghz4, z4};

    #[test]
    fn spectral_ensemble_verifies() {
        let rho = z4(0.3, 0.2)
            .unwrap()
            .reduced(&crate::QubitSubset::new(&[0, 1, 2]).unwrap())
            .unwrap();
        let e = rho.spectral_ensemble(1e-12).unwrap();
        assert!(verify_decomposition(&e, &rho).unwrap().ok);
    }

    #[test]
    fn phase_pair_cancels_cross_terms() {
        let p = 0.9;
        let e = Ensemble::new(vec![
            (0.5, z4(p, 0.0).unwrap()),
            (0.5, z4(p, std::f64::consts::PI).unwrap()),
        ])
        .unwrap();
        let target = crate::roof::Rank2Family::z4().mixture(p).unwrap();
        let v = verify_decomposition(&e, &target).unwrap();
        assert!(v.ok, "{v:?}");
        let wrong = Ensemble::single(z4(p, 0.0).unwrap());
        assert!(!verify_decomposition(&wrong, &target).unwrap().ok);
    }

    #[test]
    fn size_mismatch() {
        let e = Ensemble::single(ghz3());
        assert!(verify_decomposition(&e, &ghz4().projector()).is_err());
    }
}
