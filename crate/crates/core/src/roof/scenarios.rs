//! Convex roofs of `t1`, `n1` and `n2` over the mixture
//! `p |GHZ4><GHZ4| + (1-p) |W4><W4|`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monogamy::{monogamy_measure, nu_star, MeasureKind, Power, PowerFactors};
use crate::named::{check_probability, ghz4, w4, z4};
use crate::roof::envelope::lower_convex_envelope;
use crate::roof::family::{characteristic_curves, Rank2Family};
use crate::roof::scalar::bisect;
use crate::roof::stationary::{stationary_mix_point, ANCHOR_TOL};
use crate::state::{Ensemble, PureState};
use crate::tolerance::Tolerances;

/// Width to which sign changes of the characteristic curve are located.
pub const SIGN_CHANGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RoofScenario {
    T1,
    N1(Power),
    N2(Power),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Nu {
    Star,
    Infinite,
}

impl RoofScenario {
    pub fn kind(&self) -> MeasureKind {
        match self {
            RoofScenario::T1 => MeasureKind::T1,
            RoofScenario::N1(_) => MeasureKind::N1,
            RoofScenario::N2(_) => MeasureKind::N2,
        }
    }

    pub fn factors(&self) -> PowerFactors {
        let mut f = PowerFactors::default();
        match *self {
            RoofScenario::T1 => {}
            RoofScenario::N1(nu) => f.nu1 = nu,
            RoofScenario::N2(nu) => f.nu2 = nu,
        }
        f
    }

    pub fn label(&self) -> String {
        match self.nu() {
            Ok(Some(Nu::Star)) => format!("{}(nu=star)", self.kind()),
            Ok(Some(Nu::Infinite)) => format!("{}(nu=inf)", self.kind()),
            _ => self.kind().to_string(),
        }
    }

    fn nu(&self) -> Result<Option<Nu>> {
        let (power, star) = match *self {
            RoofScenario::T1 => return Ok(None),
            RoofScenario::N1(p) => (p, nu_star().0),
            RoofScenario::N2(p) => (p, nu_star().1),
        };
        match power {
            Power::Infinite => Ok(Some(Nu::Infinite)),
            Power::Finite(x) if (x - star).abs() <= 1e-9 => Ok(Some(Nu::Star)),
            Power::Finite(x) => Err(Error::Unsupported(format!(
                "{} roof is available for nu = {star:.9} or infinity, not {x}",
                self.kind()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub description: String,
}

impl Segment {
    pub fn new(start: f64, end: f64, description: &str) -> Self {
        Self {
            start,
            end,
            description: description.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoofSample {
    pub p: f64,
    pub value: f64,
    pub min_curve: f64,
    pub envelope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MemberState {
    Ghz4,
    W4,
    Z4 { p: f64, phi: f64 },
}

impl MemberState {
    pub fn build(&self) -> Result<PureState> {
        match *self {
            MemberState::Ghz4 => Ok(ghz4()),
            MemberState::W4 => Ok(w4()),
            MemberState::Z4 { p, phi } => z4(p, phi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionMember {
    pub weight: f64,
    pub state: MemberState,
}

/// Roof value at one `p` with the decomposition attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoofPoint {
    pub p: f64,
    pub value: f64,
    pub segment: usize,
    pub members: Vec<DecompositionMember>,
}

impl RoofPoint {
    pub fn ensemble(&self) -> Result<Ensemble> {
        let members = self
            .members
            .iter()
            .map(|m| Ok((m.weight, m.state.build()?)))
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(members)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRoofResult {
    pub scenario: String,
    /// Set when the value is a conjectured envelope rather than a roof
    /// certified by explicit decompositions.
    pub conjectured: bool,
    pub breakpoints: Vec<f64>,
    pub segments: Vec<Segment>,
    pub samples: Vec<RoofSample>,
    pub point: Option<RoofPoint>,
}

impl ConvexRoofResult {
    /// Largest `envelope - value` over the samples (positive when the value
    /// dips below the envelope).
    pub fn max_envelope_excess(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.envelope - s.value)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest `value - min_curve` over the samples.
    pub fn max_curve_excess(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.value - s.min_curve)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Plan {
    Spectral,
    ZeroThenCurve {
        p0: f64,
    },
    TangentThenCurve {
        p1: f64,
        at_w: f64,
        at_p1: f64,
    },
    TangentCurveTangent {
        p1: f64,
        p2: f64,
        at_w: f64,
        at_p1: f64,
        at_p2: f64,
    },
}

/// Breakpoints and segment formulas of one scenario, computed once.
#[derive(Debug, Clone)]
pub struct RoofSolver {
    scenario: RoofScenario,
    plan: Plan,
}

fn w(weight: f64, state: MemberState) -> DecompositionMember {
    DecompositionMember { weight, state }
}

fn phase_pair(weight: f64, p: f64) -> [DecompositionMember; 2] {
    [
        w(weight / 2.0, MemberState::Z4 { p, phi: 0.0 }),
        w(weight / 2.0, MemberState::Z4 { p, phi: PI }),
    ]
}

const N1_INF_BRACKET: (f64, f64) = (0.6, 0.98);
const N2_INF_LOW_BRACKET: (f64, f64) = (0.55, 0.85);
const N2_INF_HIGH_BRACKET: (f64, f64) = (0.8, 0.99);
const N1_STAR_BRACKET: (f64, f64) = (0.5, 0.95);
const N2_STAR_BRACKET: (f64, f64) = (0.4, 0.9);

impl RoofSolver {
    pub fn new(scenario: RoofScenario) -> Result<Self> {
        let nu = scenario.nu()?;
        let mut solver = Self {
            scenario,
            plan: Plan::Spectral,
        };
        solver.plan = match (scenario.kind(), nu) {
            (MeasureKind::T1, _) => Plan::Spectral,
            (kind, Some(Nu::Star)) => {
                let bracket = if kind == MeasureKind::N1 {
                    N1_STAR_BRACKET
                } else {
                    N2_STAR_BRACKET
                };
                Plan::ZeroThenCurve {
                    p0: bisect(|p| solver.curve(p), bracket.0, bracket.1, SIGN_CHANGE_TOL)?,
                }
            }
            (MeasureKind::N1, Some(Nu::Infinite)) => {
                let at_w = solver.measure(&w4())?;
                let p1 = stationary_mix_point(
                    |q| Ok((solver.curve(q)? - at_w) / q),
                    N1_INF_BRACKET,
                    ANCHOR_TOL,
                )?;
                Plan::TangentThenCurve {
                    p1,
                    at_w,
                    at_p1: solver.curve(p1)?,
                }
            }
            (MeasureKind::N2, Some(Nu::Infinite)) => {
                let at_w = solver.measure(&w4())?;
                let p1 = stationary_mix_point(
                    |q| Ok((solver.curve(q)? - at_w) / q),
                    N2_INF_LOW_BRACKET,
                    ANCHOR_TOL,
                )?;
                let p2 = stationary_mix_point(
                    |q| Ok(-(1.0 - solver.curve(q)?) / (1.0 - q)),
                    N2_INF_HIGH_BRACKET,
                    ANCHOR_TOL,
                )?;
                Plan::TangentCurveTangent {
                    p1,
                    p2,
                    at_w,
                    at_p1: solver.curve(p1)?,
                    at_p2: solver.curve(p2)?,
                }
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "roof scenario {}",
                    scenario.label()
                )))
            }
        };
        Ok(solver)
    }

    pub fn scenario(&self) -> RoofScenario {
        self.scenario
    }

    fn measure(&self, psi: &PureState) -> Result<f64> {
        monogamy_measure(
            psi,
            self.scenario.kind(),
            &self.scenario.factors(),
            &Tolerances::default(),
        )
    }

    /// The measure on `Z4(p, 0)`; the family values do not depend on `phi`.
    pub fn curve(&self, p: f64) -> Result<f64> {
        self.measure(&z4(p, 0.0)?)
    }

    /// The pure-state function whose `phi`-minimum is enveloped: the measure
    /// itself, floored at zero for the `nu*` scenarios whose roof is zero on
    /// the negative stretch.
    pub fn characteristic(&self, psi: &PureState) -> Result<f64> {
        let v = self.measure(psi)?;
        Ok(match self.plan {
            Plan::ZeroThenCurve { .. } => v.max(0.0),
            _ => v,
        })
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match self.plan {
            Plan::Spectral => Vec::new(),
            Plan::ZeroThenCurve { p0 } => vec![p0],
            Plan::TangentThenCurve { p1, .. } => vec![p1],
            Plan::TangentCurveTangent { p1, p2, .. } => vec![p1, p2],
        }
    }

    pub fn segments(&self) -> Vec<Segment> {
        match self.plan {
            Plan::Spectral => vec![Segment::new(0.0, 1.0, "value = p, spectral decomposition")],
            Plan::ZeroThenCurve { p0 } => vec![
                Segment::new(
                    0.0,
                    p0,
                    "value = 0, W4 mixed with the Z4(p0, 0), Z4(p0, pi) pair",
                ),
                Segment::new(p0, 1.0, "characteristic curve, Z4(p, 0) and Z4(p, pi) pair"),
            ],
            Plan::TangentThenCurve { p1, .. } => vec![
                Segment::new(0.0, p1, "line from W4 to the curve at p1"),
                Segment::new(p1, 1.0, "characteristic curve, Z4(p, 0) and Z4(p, pi) pair"),
            ],
            Plan::TangentCurveTangent { p1, p2, .. } => vec![
                Segment::new(0.0, p1, "line from W4 to the curve at p1"),
                Segment::new(p1, p2, "characteristic curve, Z4(p, 0) and Z4(p, pi) pair"),
                Segment::new(p2, 1.0, "line from the curve at p2 to GHZ4"),
            ],
        }
    }

    pub fn point(&self, p: f64) -> Result<RoofPoint> {
        check_probability(p)?;
        let on_curve = |segment: usize| -> Result<RoofPoint> {
            Ok(RoofPoint {
                p,
                value: self.curve(p)?,
                segment,
                members: phase_pair(1.0, p).to_vec(),
            })
        };
        let mut point = match self.plan {
            Plan::Spectral => RoofPoint {
                p,
                value: p,
                segment: 0,
                members: vec![w(p, MemberState::Ghz4), w(1.0 - p, MemberState::W4)],
            },
            Plan::ZeroThenCurve { p0 } if p <= p0 => {
                let [a, b] = phase_pair(p / p0, p0);
                RoofPoint {
                    p,
                    value: 0.0,
                    segment: 0,
                    members: vec![a, b, w(1.0 - p / p0, MemberState::W4)],
                }
            }
            Plan::ZeroThenCurve { .. } => on_curve(1)?,
            Plan::TangentThenCurve { p1, at_w, at_p1 }
            | Plan::TangentCurveTangent {
                p1, at_w, at_p1, ..
            } if p <= p1 => {
                let [a, b] = phase_pair(p / p1, p1);
                RoofPoint {
                    p,
                    value: at_w * (p1 - p) / p1 + at_p1 * p / p1,
                    segment: 0,
                    members: vec![w((p1 - p) / p1, MemberState::W4), a, b],
                }
            }
            Plan::TangentThenCurve { .. } => on_curve(1)?,
            Plan::TangentCurveTangent { p2, at_p2, .. } if p >= p2 => {
                let [a, b] = phase_pair((1.0 - p) / (1.0 - p2), p2);
                RoofPoint {
                    p,
                    value: (p - p2) / (1.0 - p2) + (1.0 - p) / (1.0 - p2) * at_p2,
                    segment: 2,
                    members: vec![w((p - p2) / (1.0 - p2), MemberState::Ghz4), a, b],
                }
            }
            Plan::TangentCurveTangent { .. } => on_curve(1)?,
        };
        point.members.retain(|m| m.weight > 0.0);
        Ok(point)
    }

    /// Roof values on `p_grid` next to the `phi`-minimum of the
    /// characteristic values and its lower convex envelope.
    pub fn result(
        &self,
        p_grid: &[f64],
        phi_grid: &[f64],
        at: Option<f64>,
    ) -> Result<ConvexRoofResult> {
        let set = characteristic_curves(
            &Rank2Family::z4(),
            |s| self.characteristic(s),
            p_grid,
            phi_grid,
        )?;
        let env = lower_convex_envelope(&set.p_grid, &set.min_curve);
        let samples = set
            .p_grid
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                Ok(RoofSample {
                    p,
                    value: self.point(p)?.value,
                    min_curve: set.min_curve[i],
                    envelope: env.values[i],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConvexRoofResult {
            scenario: self.scenario.label(),
            conjectured: false,
            breakpoints: self.breakpoints(),
            segments: self.segments(),
            samples,
            point: at.map(|p| self.point(p)).transpose()?,
        })
    }
}

pub fn t1_roof_ghzw4(p: f64) -> Result<RoofPoint> {
    RoofSolver::new(RoofScenario::T1)?.point(p)
}

pub fn n1_roof_ghzw4(p: f64, nu1: Power) -> Result<RoofPoint> {
    RoofSolver::new(RoofScenario::N1(nu1))?.point(p)
}

pub fn n2_roof_ghzw4(p: f64, nu2: Power) -> Result<RoofPoint> {
    RoofSolver::new(RoofScenario::N2(nu2))?.point(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roof::verify::verify_decomposition;

    fn star1() -> Power {
        Power::Finite(nu_star().0)
    }

    fn star2() -> Power {
        Power::Finite(nu_star().1)
    }

    #[test]
    fn t1_points() {
        let pt = t1_roof_ghzw4(0.0).unwrap();
        assert_eq!(pt.value, 0.0);
        assert_eq!(pt.members.len(), 1);
        assert_eq!(pt.members[0].state, MemberState::W4);
        assert_eq!(t1_roof_ghzw4(0.5).unwrap().value, 0.5);
    }

    #[test]
    fn n1_star_breakpoint_and_points() {
        let s = RoofSolver::new(RoofScenario::N1(star1())).unwrap();
        let p0 = s.breakpoints()[0];
        assert!((p0 - 0.749596).abs() < 1e-4, "{p0}");
        assert_eq!(s.point(0.5).unwrap().value, 0.0);
        assert!(s.curve(p0 - 0.01).unwrap() < 0.0 && s.curve(p0 + 0.01).unwrap() > 0.0);
    }

    #[test]
    fn n1_inf_anchor() {
        let s = RoofSolver::new(RoofScenario::N1(Power::Infinite)).unwrap();
        assert!((s.breakpoints()[0] - 0.84).abs() < 0.01);
        assert!((s.point(1.0).unwrap().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn n2_points() {
        let s = RoofSolver::new(RoofScenario::N2(star2())).unwrap();
        assert!((s.breakpoints()[0] - 0.57731).abs() < 1e-4);
        assert_eq!(s.point(0.3).unwrap().value, 0.0);
        let s = RoofSolver::new(RoofScenario::N2(Power::Infinite)).unwrap();
        let b = s.breakpoints();
        assert!(
            (b[0] - 0.72).abs() < 0.01 && (b[1] - 0.92).abs() < 0.01,
            "{b:?}"
        );
        assert!((s.point(1.0).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unsupported_powers() {
        assert!(matches!(
            n1_roof_ghzw4(0.5, Power::Finite(2.0)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            n2_roof_ghzw4(0.5, Power::Finite(1.0)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn decompositions_verify() {
        let fam = Rank2Family::z4();
        for scenario in [
            RoofScenario::T1,
            RoofScenario::N1(star1()),
            RoofScenario::N1(Power::Infinite),
            RoofScenario::N2(star2()),
            RoofScenario::N2(Power::Infinite),
        ] {
            let s = RoofSolver::new(scenario).unwrap();
            for k in 0..=10 {
                let p = k as f64 / 10.0;
                let pt = s.point(p).unwrap();
                let e = pt.ensemble().unwrap();
                let v = verify_decomposition(&e, &fam.mixture(p).unwrap()).unwrap();
                assert!(v.ok, "{scenario:?} p={p}: {v:?}");
                let avg = e.average(|m| s.measure(m)).unwrap();
                assert!(
                    (avg - pt.value).abs() < 1e-9,
                    "{scenario:?} p={p}: {avg} vs {}",
                    pt.value
                );
            }
        }
    }
}
