//! Registry of the named states used throughout the crate.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{phase, re};
use crate::state::PureState;

fn ket(terms: &[(f64, &str)]) -> PureState {
    let t: Vec<_> = terms.iter().map(|&(c, b)| (re(c), b)).collect();
    PureState::from_terms(&t).expect("static state definition")
}

pub fn ghz3() -> PureState {
    ket(&[(1.0, "000"), (1.0, "111")])
}

pub fn w3() -> PureState {
    ket(&[(1.0, "001"), (1.0, "010"), (1.0, "100")])
}

pub fn ghz4() -> PureState {
    ket(&[(1.0, "0000"), (1.0, "1111")])
}

/// `(X X X X)|W~4>`, i.e. the single-excitation W state.
pub fn w4() -> PureState {
    ket(&[(1.0, "1000"), (1.0, "0100"), (1.0, "0010"), (1.0, "0001")])
}

/// The three-excitation W state.
pub fn wtilde4() -> PureState {
    ket(&[(1.0, "0111"), (1.0, "1011"), (1.0, "1101"), (1.0, "1110")])
}

pub fn phi2() -> PureState {
    ket(&[
        (2f64.sqrt(), "1111"),
        (1.0, "1000"),
        (1.0, "0100"),
        (1.0, "0010"),
        (1.0, "0001"),
    ])
}

pub fn phi3() -> PureState {
    ket(&[(1.0, "1111"), (1.0, "1100"), (1.0, "0010"), (1.0, "0001")])
}

/// GHZ3 on the first three qubits, fourth qubit in `|0>`.
pub fn g3() -> PureState {
    ket(&[(1.0, "0000"), (1.0, "1110")])
}

/// `(|000> + |111>)/sqrt 2`, first member of the g-pair mixture.
pub fn g1() -> PureState {
    ghz3()
}

/// `(|001> + |110>)/sqrt 2`, second member of the g-pair mixture.
pub fn g2() -> PureState {
    ket(&[(1.0, "001"), (1.0, "110")])
}

/// `(|000> + sqrt 2 |111>)/sqrt 3`, a member of the three-party marginal of Phi2.
pub fn ghz3_weighted() -> PureState {
    ket(&[(1.0, "000"), (2f64.sqrt(), "111")])
}

/// `(GHZ3 + W3)/sqrt 2`.
pub fn psi1_app() -> PureState {
    sum(&ghz3(), &w3(), FRAC_1_SQRT_2, FRAC_1_SQRT_2)
}

/// `(GHZ3 - W3)/sqrt 2`.
pub fn psi2_app() -> PureState {
    sum(&ghz3(), &w3(), FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
}

fn sum(a: &PureState, b: &PureState, ca: f64, cb: f64) -> PureState {
    let amps = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x * ca + y * cb)
        .collect();
    PureState::normalized(amps).expect("orthogonal superposition")
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "p",
            value: p,
            domain: "[0, 1]",
        })
    }
}

/// `sqrt(p) a - e^{i phi} sqrt(1-p) b` for orthonormal `a`, `b`.
pub fn superposition(a: &PureState, b: &PureState, p: f64, phi: f64) -> Result<PureState> {
    check_probability(p)?;
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::Mismatch(a.n_qubits(), b.n_qubits()));
    }
    let ca = re(p.sqrt());
    let cb = -phase(phi) * (1.0 - p).sqrt();
    let amps = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x * ca + y * cb)
        .collect();
    PureState::normalized(amps)
}

pub fn z3(p: f64, phi: f64) -> Result<PureState> {
    superposition(&ghz3(), &w3(), p, phi)
}

pub fn z4(p: f64, phi: f64) -> Result<PureState> {
    superposition(&ghz4(), &w4(), p, phi)
}

pub fn z_app(p: f64, phi: f64) -> Result<PureState> {
    superposition(&psi1_app(), &psi2_app(), p, phi)
}

/// Identifiers accepted by [`named_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateName {
    Ghz3,
    W3,
    Ghz4,
    W4,
    Wtilde4,
    Phi2,
    Phi3,
    G3,
    Z3,
    Z4,
    Psi1App,
    Psi2App,
    ZApp,
}

impl StateName {
    pub const ALL: [StateName; 13] = [
        StateName::Ghz3,
        StateName::W3,
        StateName::Ghz4,
        StateName::W4,
        StateName::Wtilde4,
        StateName::Phi2,
        StateName::Phi3,
        StateName::G3,
        StateName::Z3,
        StateName::Z4,
        StateName::Psi1App,
        StateName::Psi2App,
        StateName::ZApp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StateName::Ghz3 => "GHZ3",
            StateName::W3 => "W3",
            StateName::Ghz4 => "GHZ4",
            StateName::W4 => "W4",
            StateName::Wtilde4 => "Wtilde4",
            StateName::Phi2 => "Phi2",
            StateName::Phi3 => "Phi3",
            StateName::G3 => "g3",
            StateName::Z3 => "Z3",
            StateName::Z4 => "Z4",
            StateName::Psi1App => "psi1_app",
            StateName::Psi2App => "psi2_app",
            StateName::ZApp => "Z_app",
        }
    }

    /// Whether the state takes `(p, phi)`.
    pub fn is_family(self) -> bool {
        matches!(self, StateName::Z3 | StateName::Z4 | StateName::ZApp)
    }

    pub fn n_qubits(self) -> usize {
        match self {
            StateName::Ghz3
            | StateName::W3
            | StateName::Z3
            | StateName::Psi1App
            | StateName::Psi2App
            | StateName::ZApp => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for StateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        StateName::ALL
            .into_iter()
            .find(|n| n.as_str() == key)
            .or(match key {
                "Zapp" => Some(StateName::ZApp),
                "Phi1" => Some(StateName::Ghz4),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }
}

/// Looks a state up by name. Families need `(p, phi)`; fixed states ignore it.
pub fn named_state(name: &str, params: Option<(f64, f64)>) -> Result<PureState> {
    build(name.parse()?, params)
}

pub fn build(name: StateName, params: Option<(f64, f64)>) -> Result<PureState> {
    if name.is_family() {
        let (p, phi) = params
            .ok_or_else(|| Error::InvalidState(format!("{name} needs parameters (p, phi)")))?;
        return match name {
            StateName::Z3 => z3(p, phi),
            StateName::Z4 => z4(p, phi),
            _ => z_app(p, phi),
        };
    }
    Ok(match name {
        StateName::Ghz3 => ghz3(),
        StateName::W3 => w3(),
        StateName::Ghz4 => ghz4(),
        StateName::W4 => w4(),
        StateName::Wtilde4 => wtilde4(),
        StateName::Phi2 => phi2(),
        StateName::Phi3 => phi3(),
        StateName::G3 => g3(),
        StateName::Psi1App => psi1_app(),
        _ => psi2_app(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::state::{Ensemble, QubitSubset};
    use std::f64::consts::PI;

    #[test]
    fn ghz4_amplitudes() {
        let s = named_state("GHZ4", None).unwrap();
        assert!((s.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitude(15).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(s.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 2);
    }

    #[test]
    fn w4_is_flipped_wtilde() {
        let flipped: Vec<_> = (0..16).map(|i| wtilde4().amplitude(15 - i)).collect();
        assert!(PureState::new(flipped).unwrap().approx_eq(&w4(), 1e-15));
    }

    #[test]
    fn z4_endpoints() {
        for phi in [0.0, 1.0, PI] {
            assert!(z4(1.0, phi).unwrap().same_ray(&ghz4(), 1e-12));
        }
        let half = z4(0.5, 0.0).unwrap();
        let expect: Vec<_> = ghz4()
            .amplitudes()
            .iter()
            .zip(w4().amplitudes())
            .map(|(g, w)| (g - w) * FRAC_1_SQRT_2)
            .collect();
        assert!(half.approx_eq(&PureState::new(expect).unwrap(), 1e-15));
    }

    #[test]
    fn family_errors() {
        assert!(matches!(
            named_state("nope", None),
            Err(Error::UnknownState(_))
        ));
        assert!(matches!(
            named_state("Z4", Some((1.5, 0.0))),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(named_state("Z4", None).is_err());
        for n in StateName::ALL {
            let s = build(n, Some((0.3, 0.2))).unwrap();
            assert_eq!(s.n_qubits(), n.n_qubits());
            assert_eq!(n.as_str().parse::<StateName>().unwrap(), n);
        }
    }

    #[test]
    fn z4_single_qubit_marginal() {
        for &(p, phi) in &[(0.2, 0.0), (0.7, 1.3), (0.45, 4.0)] {
            let psi = z4(p, phi).unwrap();
            for q in 0..4 {
                let r = psi.reduced(&QubitSubset::single(q)).unwrap();
                let m = r.matrix();
                let off = -0.5 * (p * (1.0 - p) / 2.0).sqrt();
                assert!((m[(0, 0)].re - (3.0 - p) / 4.0).abs() < 1e-14);
                assert!((m[(1, 1)].re - (1.0 + p) / 4.0).abs() < 1e-14);
                assert!((m[(0, 1)] - phase(-phi) * off).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn phi2_three_party_marginal() {
        let expect = Ensemble::new(vec![(0.5, ghz3_weighted()), (0.5, w3())])
            .unwrap()
            .to_density();
        for keep in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            let r = phi2().reduced(&QubitSubset::new(&keep).unwrap()).unwrap();
            assert!(max_abs_diff(r.matrix(), expect.matrix()) < 1e-15);
        }
    }

    #[test]
    fn phase_pair_mixture_equals_rank2() {
        // cross terms cancel between phi = 0 and phi = pi
        for p in [0.1, 0.5, 0.83] {
            let e =
                Ensemble::new(vec![(0.5, z4(p, 0.0).unwrap()), (0.5, z4(p, PI).unwrap())]).unwrap();
            let rho4 = Ensemble::new(vec![(p, ghz4()), (1.0 - p, w4())]).unwrap();
            assert!(max_abs_diff(e.to_density().matrix(), rho4.to_density().matrix()) < 1e-15);
        }
    }
}
