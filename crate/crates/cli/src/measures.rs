use anyhow::bail;
use tangle_core::bipartite::{concurrence_mixed_with, concurrence_one_vs_rest, negativity};
use tangle_core::monogamy::{monogamy_measure, MeasureKind, PowerFactors};
use tangle_core::multipartite::{f_invariants, three_tangle_pure};
use tangle_core::{Error, PureState, QubitSubset, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Wootters concurrence of the qubit 0,1 marginal.
    ConcurrenceIj,
    /// Negativity of the qubit 0,1 marginal.
    NegativityIj,
    /// Concurrence of qubit 0 against the rest.
    ConcurrenceOneRest,
    Tau3,
    Monogamy(MeasureKind),
    F(usize),
}

impl Measure {
    pub const ALL: [Measure; 11] = [
        Measure::ConcurrenceIj,
        Measure::NegativityIj,
        Measure::ConcurrenceOneRest,
        Measure::Tau3,
        Measure::Monogamy(MeasureKind::T1),
        Measure::Monogamy(MeasureKind::T2),
        Measure::Monogamy(MeasureKind::N1),
        Measure::Monogamy(MeasureKind::N2),
        Measure::F(1),
        Measure::F(2),
        Measure::F(3),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::ConcurrenceIj => "concurrence_IJ",
            Measure::NegativityIj => "negativity_IJ",
            Measure::ConcurrenceOneRest => "concurrence_1R",
            Measure::Tau3 => "tau3",
            Measure::Monogamy(k) => k.as_str(),
            Measure::F(1) => "F1",
            Measure::F(2) => "F2",
            Measure::F(_) => "F3",
        }
    }

    pub fn parse(s: &str) -> anyhow::Result<Self> {
        let key = s.trim();
        match Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(key))
        {
            Some(m) => Ok(m),
            None => {
                let names: Vec<_> = Measure::ALL.iter().map(|m| m.name()).collect();
                bail!(
                    "unknown measure `{s}` (expected one of {})",
                    names.join(", ")
                )
            }
        }
    }

    pub fn applies_to(self, n_qubits: usize) -> bool {
        match self {
            Measure::Tau3 => n_qubits == 3,
            Measure::Monogamy(_) | Measure::F(_) => n_qubits == 4,
            _ => n_qubits >= 2,
        }
    }

    pub fn check(self, n_qubits: usize) -> anyhow::Result<()> {
        if !self.applies_to(n_qubits) {
            bail!(
                "measure {} does not apply to {n_qubits}-qubit states",
                self.name()
            );
        }
        Ok(())
    }

    pub fn eval(
        self,
        psi: &PureState,
        factors: &PowerFactors,
        tol: &Tolerances,
    ) -> tangle_core::Result<f64> {
        let pair = || psi.reduced(&QubitSubset::new(&[0, 1])?);
        match self {
            Measure::ConcurrenceIj => concurrence_mixed_with(&pair()?, tol),
            Measure::NegativityIj => negativity(&pair()?, &QubitSubset::single(0)),
            Measure::ConcurrenceOneRest => concurrence_one_vs_rest(psi, 0),
            Measure::Tau3 => Ok(three_tangle_pure(psi)?.0),
            Measure::Monogamy(k) => monogamy_measure(psi, k, factors, tol),
            Measure::F(i) => {
                let f = f_invariants(psi)?;
                Ok([f.f1, f.f2, f.f3][i - 1])
            }
        }
    }

    /// Like [`Measure::eval`] but maps unsupported cases to NaN.
    pub fn eval_or_nan(
        self,
        psi: &PureState,
        factors: &PowerFactors,
        tol: &Tolerances,
    ) -> tangle_core::Result<f64> {
        match self.eval(psi, factors, tol) {
            Err(Error::Unsupported(_)) => Ok(f64::NAN),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tangle_core::named::{ghz3, w4};

    #[test]
    fn names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(Measure::parse(m.name()).unwrap(), m);
        }
        assert!(Measure::parse("bogus").is_err());
    }

    #[test]
    fn applicability() {
        assert!(Measure::Tau3.check(4).is_err());
        assert!(Measure::F(2).check(3).is_err());
        let tol = Tolerances::default();
        let f = PowerFactors::default();
        assert!((Measure::Tau3.eval(&ghz3(), &f, &tol).unwrap() - 1.0).abs() < 1e-12);
        let c = Measure::ConcurrenceIj.eval(&w4(), &f, &tol).unwrap();
        assert!((c - 0.5).abs() < 1e-12);
    }
}
