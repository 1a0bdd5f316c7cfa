//! Monogamy leftovers of four-qubit pure states and the averaged measures
//! `t1`, `t2` (squared concurrences, the latter with three-tangle terms) and
//! `n1`, `n2` (negativities and squared negativities).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bipartite::{
    concurrence_mixed_with, negativity_of_transposed, squared_concurrence_one_vs_rest,
};
use crate::error::{Error, Result};
use crate::multipartite::mixed_three_tangle;
use crate::state::{Ensemble, PureState, QubitSubset};
use crate::tolerance::Tolerances;

/// How close to one a base must be to survive an infinite power.
pub const INFINITE_POWER_SLACK: f64 = 1e-12;

/// Exponent applied to the three-party terms; `Infinite` keeps only bases
/// equal to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Power {
    Finite(f64),
    Infinite,
}

impl Power {
    pub fn finite(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(Power::Finite(x))
        } else {
            Err(Error::OutOfDomain {
                name: "power",
                value: x,
                domain: "(0, inf]",
            })
        }
    }

    /// `[x]^nu` for `x` in `[0, 1]`.
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Power::Finite(nu) => x.powf(nu),
            Power::Infinite if x >= 1.0 - INFINITE_POWER_SLACK => 1.0,
            Power::Infinite => 0.0,
        }
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Power::Finite(x) => write!(f, "{x}"),
            Power::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Power {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Power::Infinite),
            other => {
                let x: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidState(format!("not a power: {s:?}")))?;
                if x.is_infinite() && x > 0.0 {
                    Ok(Power::Infinite)
                } else {
                    Power::finite(x)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFactors {
    pub mu3: f64,
    pub nu1: Power,
    pub nu2: Power,
}

impl Default for PowerFactors {
    fn default() -> Self {
        let (nu1, nu2) = nu_star();
        Self {
            mu3: 1.5,
            nu1: Power::Finite(nu1),
            nu2: Power::Finite(nu2),
        }
    }
}

/// The smallest powers for which `n1(W4)` and `n2(W4)` are non-negative.
pub fn nu_star() -> (f64, f64) {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let nu1 = ((3.0 - 3.0 * s2 + s3) / 6.0).ln() / (1.5 - s2).ln();
    let nu2 = ((s2 - 1.0) / 2.0).ln() / (s2 - 1.25).ln();
    (nu1, nu2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    T1,
    T2,
    N1,
    N2,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::T1,
        MeasureKind::T2,
        MeasureKind::N1,
        MeasureKind::N2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::T1 => "t1",
            MeasureKind::T2 => "t2",
            MeasureKind::N1 => "n1",
            MeasureKind::N2 => "n2",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidState(format!("unknown monogamy measure {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub partner: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleTerm {
    pub partners: [usize; 2],
    /// Base before clamping and exponentiation; may be slightly negative.
    pub raw: f64,
    pub contribution: f64,
}

/// Per-qubit leftover of one monogamy relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub kind: MeasureKind,
    pub focus: usize,
    pub one_vs_rest: f64,
    pub pairwise: Vec<PairTerm>,
    pub triple_terms: Vec<TripleTerm>,
    pub leftover: f64,
}

impl MonogamyReport {
    fn assemble(
        kind: MeasureKind,
        focus: usize,
        one_vs_rest: f64,
        pairwise: Vec<PairTerm>,
        triple_terms: Vec<TripleTerm>,
    ) -> Self {
        let leftover = one_vs_rest
            - pairwise.iter().map(|t| t.value).sum::<f64>()
            - triple_terms.iter().map(|t| t.contribution).sum::<f64>();
        Self {
            kind,
            focus,
            one_vs_rest,
            pairwise,
            triple_terms,
            leftover,
        }
    }
}

fn expect_four(psi: &PureState) -> Result<()> {
    if psi.n_qubits() == 4 {
        Ok(())
    } else {
        Err(Error::QubitCount {
            expected: 4,
            actual: psi.n_qubits(),
        })
    }
}

fn others(focus: usize) -> Vec<usize> {
    (0..4).filter(|&q| q != focus).collect()
}

fn pair_key(a: usize, b: usize) -> usize {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    i * 4 + j
}

fn squared_concurrences(psi: &PureState, tol: &Tolerances) -> Result<[f64; 16]> {
    let mut out = [0.0; 16];
    for i in 0..4 {
        for j in i + 1..4 {
            let c = concurrence_mixed_with(&psi.reduced(&QubitSubset::new(&[i, j])?)?, tol)?;
            out[pair_key(i, j)] = c * c;
        }
    }
    Ok(out)
}

/// `N_{I|rest}` of a pure state restricted to `keep`, with `focus` in `keep`.
fn negativity_on(psi: &PureState, keep: &[usize], focus: usize) -> Result<f64> {
    let rho = psi.reduced(&QubitSubset::new(keep)?)?;
    let local = keep.iter().filter(|&&q| q < focus).count();
    let pt = rho.partial_transpose(&QubitSubset::single(local))?;
    Ok(negativity_of_transposed(&pt))
}

/// The four per-qubit reports of `kind` for a four-qubit pure state.
pub fn monogamy_reports(
    psi: &PureState,
    kind: MeasureKind,
    factors: &PowerFactors,
    tol: &Tolerances,
) -> Result<Vec<MonogamyReport>> {
    expect_four(psi)?;
    match kind {
        MeasureKind::T1 | MeasureKind::T2 => concurrence_reports(psi, kind, factors, tol),
        MeasureKind::N1 | MeasureKind::N2 => negativity_reports(psi, kind, factors),
    }
}

fn concurrence_reports(
    psi: &PureState,
    kind: MeasureKind,
    factors: &PowerFactors,
    tol: &Tolerances,
) -> Result<Vec<MonogamyReport>> {
    let pairs = squared_concurrences(psi, tol)?;
    let mut tangles = [0.0; 4];
    if kind == MeasureKind::T2 {
        // the marginal on the complement of qubit `q`
        for (q, slot) in tangles.iter_mut().enumerate() {
            let keep = others(q);
            *slot = mixed_three_tangle(&psi.reduced(&QubitSubset::new(&keep)?)?, tol)?;
        }
    }
    let mut out = Vec::with_capacity(4);
    for focus in 0..4 {
        let rest = squared_concurrence_one_vs_rest(psi, focus)?;
        let os = others(focus);
        let pairwise = os
            .iter()
            .map(|&j| PairTerm {
                partner: j,
                value: pairs[pair_key(focus, j)],
            })
            .collect();
        let mut triples = Vec::new();
        if kind == MeasureKind::T2 {
            for (a, &j) in os.iter().enumerate() {
                for &k in &os[a + 1..] {
                    let missing = (0..4).find(|&q| q != focus && q != j && q != k).unwrap();
                    let raw = tangles[missing];
                    triples.push(TripleTerm {
                        partners: [j, k],
                        raw,
                        contribution: raw.max(0.0).powf(factors.mu3),
                    });
                }
            }
        }
        out.push(MonogamyReport::assemble(
            kind, focus, rest, pairwise, triples,
        ));
    }
    Ok(out)
}

fn negativity_reports(
    psi: &PureState,
    kind: MeasureKind,
    factors: &PowerFactors,
) -> Result<Vec<MonogamyReport>> {
    let (square, power) = match kind {
        MeasureKind::N1 => (false, factors.nu1),
        _ => (true, factors.nu2),
    };
    let f = |x: f64| if square { x * x } else { x };
    let mut pairs = [0.0; 16];
    for i in 0..4 {
        for j in i + 1..4 {
            pairs[pair_key(i, j)] = f(negativity_on(psi, &[i, j], i)?);
        }
    }
    let full = psi.projector();
    let mut out = Vec::with_capacity(4);
    for focus in 0..4 {
        let pt = full.partial_transpose(&QubitSubset::single(focus))?;
        let rest = f(negativity_of_transposed(&pt));
        let os = others(focus);
        let pairwise = os
            .iter()
            .map(|&j| PairTerm {
                partner: j,
                value: pairs[pair_key(focus, j)],
            })
            .collect();
        let mut triples = Vec::new();
        for (a, &j) in os.iter().enumerate() {
            for &k in &os[a + 1..] {
                let mut keep = [focus, j, k];
                keep.sort_unstable();
                let one_vs_two = f(negativity_on(psi, &keep, focus)?);
                let raw = one_vs_two - pairs[pair_key(focus, j)] - pairs[pair_key(focus, k)];
                triples.push(TripleTerm {
                    partners: [j, k],
                    raw,
                    contribution: power.apply(raw.max(0.0)),
                });
            }
        }
        out.push(MonogamyReport::assemble(
            kind, focus, rest, pairwise, triples,
        ));
    }
    Ok(out)
}

/// Average leftover of `kind` over the four qubits.
pub fn monogamy_measure(
    psi: &PureState,
    kind: MeasureKind,
    factors: &PowerFactors,
    tol: &Tolerances,
) -> Result<f64> {
    let reports = monogamy_reports(psi, kind, factors, tol)?;
    Ok(reports.iter().map(|r| r.leftover).sum::<f64>() / 4.0)
}

pub fn t1(psi: &PureState) -> Result<f64> {
    monogamy_measure(
        psi,
        MeasureKind::T1,
        &PowerFactors::default(),
        &Tolerances::default(),
    )
}

/// Only the `mu3` field of `factors` is used.
pub fn t2(psi: &PureState, factors: &PowerFactors) -> Result<f64> {
    monogamy_measure(psi, MeasureKind::T2, factors, &Tolerances::default())
}

pub fn n1(psi: &PureState, nu1: Power) -> Result<f64> {
    let factors = PowerFactors {
        nu1,
        ..PowerFactors::default()
    };
    monogamy_measure(psi, MeasureKind::N1, &factors, &Tolerances::default())
}

pub fn n2(psi: &PureState, nu2: Power) -> Result<f64> {
    let factors = PowerFactors {
        nu2,
        ..PowerFactors::default()
    };
    monogamy_measure(psi, MeasureKind::N2, &factors, &Tolerances::default())
}

/// Ensemble average of a pure-state measure: the value a decomposition
/// assigns to the mixed state it represents.
pub fn ensemble_measure(
    e: &Ensemble,
    kind: MeasureKind,
    factors: &PowerFactors,
    tol: &Tolerances,
) -> Result<f64> {
    e.average(|s| monogamy_measure(s, kind, factors, tol))
}

/// `C^2_{focus|rest} - sum_j C^2_{focus|j}` for an `n`-qubit pure state,
/// `2 <= n <= 6`.
pub fn check_monogamy_tofv(psi: &PureState, focus: usize) -> Result<f64> {
    let n = psi.n_qubits();
    if !(2..=6).contains(&n) {
        return Err(Error::OutOfDomain {
            name: "qubit count",
            value: n as f64,
            domain: "2..=6",
        });
    }
    let tol = Tolerances::default();
    let mut slack = squared_concurrence_one_vs_rest(psi, focus)?;
    for j in (0..n).filter(|&j| j != focus) {
        let c = concurrence_mixed_with(&psi.reduced(&QubitSubset::new(&[focus, j])?)?, &tol)?;
        slack -= c * c;
    }
    Ok(slack)
}
