//! Spectral form of the three-qubit marginal of `Z4(p, phi)`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::re;
use crate::multipartite::{
    reduced_coefficients, reduced_lambda, reduced_pure_state, residual_reduced_pure, Branch,
};
use crate::state::{DensityMatrix, PureState};

/// `rho_IJK = lambda |psi_+><psi_+| + (1 - lambda) |psi_-><psi_-|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedTripartite {
    pub p: f64,
    pub phi: f64,
    pub lambda: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    #[serde(skip)]
    pub psi_plus: Option<PureState>,
    #[serde(skip)]
    pub psi_minus: Option<PureState>,
}

impl ReducedTripartite {
    pub fn density(&self) -> Result<DensityMatrix> {
        let plus = self.psi_plus()?;
        let minus = self.psi_minus()?;
        let m = plus.projector().matrix() * re(self.lambda)
            + minus.projector().matrix() * re(1.0 - self.lambda);
        DensityMatrix::new(m)
    }

    pub fn psi_plus(&self) -> Result<PureState> {
        match &self.psi_plus {
            Some(s) => Ok(s.clone()),
            None => reduced_pure_state(self.p, self.phi, Branch::Plus),
        }
    }

    pub fn psi_minus(&self) -> Result<PureState> {
        match &self.psi_minus {
            Some(s) => Ok(s.clone()),
            None => reduced_pure_state(self.p, self.phi, Branch::Minus),
        }
    }

    /// `lambda tau(psi_+) + (1 - lambda) tau(psi_-)`.
    pub fn tangle_upper_bound(&self) -> Result<f64> {
        Ok(
            self.lambda * residual_reduced_pure(self.p, self.phi, Branch::Plus)?
                + (1.0 - self.lambda) * residual_reduced_pure(self.p, self.phi, Branch::Minus)?,
        )
    }
}

pub fn reduced_tripartite_spectral(p: f64, phi: f64) -> Result<ReducedTripartite> {
    let plus = reduced_coefficients(p, Branch::Plus)?;
    let minus = reduced_coefficients(p, Branch::Minus)?;
    Ok(ReducedTripartite {
        p,
        phi,
        lambda: reduced_lambda(p)?,
        n_plus: plus.norm,
        n_minus: minus.norm,
        mu_plus: plus.mu,
        mu_minus: minus.mu,
        nu_plus: plus.nu,
        nu_minus: minus.nu,
        psi_plus: Some(reduced_pure_state(p, phi, Branch::Plus)?),
        psi_minus: Some(reduced_pure_state(p, phi, Branch::Minus)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::named::{ghz4, z4};
    use crate::state::QubitSubset;
    use crate::Error;

    fn abc() -> QubitSubset {
        QubitSubset::new(&[0, 1, 2]).unwrap()
    }

    #[test]
    fn reconstruction() {
        for &(p, phi) in &[(1.0, 0.0), (0.5, 0.3), (0.05, 2.0), (0.9, 4.0), (1e-4, 1.0)] {
            let r = reduced_tripartite_spectral(p, phi).unwrap();
            assert!((0.5..=0.75).contains(&r.lambda));
            let want = z4(p, phi).unwrap().reduced(&abc()).unwrap();
            assert!(max_abs_diff(r.density().unwrap().matrix(), want.matrix()) < 1e-9);
        }
        let r = reduced_tripartite_spectral(1.0, 0.0).unwrap();
        let ghz = ghz4().reduced(&abc()).unwrap();
        assert!(max_abs_diff(r.density().unwrap().matrix(), ghz.matrix()) < 1e-12);
        assert!((r.lambda - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singular_near_zero() {
        assert!(matches!(
            reduced_tripartite_spectral(1e-8, 0.0),
            Err(Error::SingularFamily { .. })
        ));
    }
}
