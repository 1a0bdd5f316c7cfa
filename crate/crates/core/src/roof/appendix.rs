//! Three-tangle of the superpositions `sqrt(p) psi1 - e^{i phi} sqrt(1-p) psi2`
//! of `psi1 = (GHZ3 + W3)/sqrt 2` and `psi2 = (GHZ3 - W3)/sqrt 2`, its zeros, and
//! the conjectured zero segment of the roof over their mixture.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multipartite::three_tangle_pure;
use crate::named::{check_probability, psi1_app, psi2_app, z_app};
use crate::roof::envelope::{interpolate, lower_convex_envelope};
use crate::roof::family::{characteristic_curves, Rank2Family};
use crate::roof::scenarios::{ConvexRoofResult, RoofSample, Segment};
use crate::state::{DensityMatrix, Ensemble};

/// Intermediate values of the two closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AppendixTau3Params {
    /// `e^{i phi} sqrt((1-p)/p)`; absent at `p = 0`.
    pub z: Option<Complex64>,
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub phi0: f64,
    /// The factorized form in `z`; absent at `p = 0`.
    pub tau_factored: Option<f64>,
    /// The trigonometric form, finite on all of `[0, 1]`.
    pub tau_trig: f64,
}

fn cube_root_coefficient() -> f64 {
    (16.0 / (3.0 * 6f64.sqrt())).cbrt()
}

/// Nontrivial zero phase offset: the zeros at `p3` sit at `pi -+ phi0`.
pub fn phi0() -> f64 {
    let w = Complex64::from_polar(cube_root_coefficient(), PI / 3.0);
    let z = (Complex64::new(1.0, 0.0) - w) / (Complex64::new(1.0, 0.0) + w);
    (PI - z.arg().rem_euclid(2.0 * PI)).abs()
}

/// Returns the trigonometric-form value together with both forms.
pub fn appendix_tau3(p: f64, phi: f64) -> Result<(f64, AppendixTau3Params)> {
    check_probability(p)?;
    let q = p * (1.0 - p);
    let s6 = 6f64.sqrt();
    let a = 155.0 / 1728.0;
    let f0 = a * (1.0 + 6.0 * p - 6.0 * p * p)
        + (2.0 * p - 1.0) / (6.0 * s6) * (1.0 - 10.0 * p + 10.0 * p * p);
    let f1 = 101.0 / 288.0 * q.sqrt() * (1.0 + p - p * p);
    let f2 = 6.0 * q * (a + (2.0 * p - 1.0) / (6.0 * s6));
    let f3 = 101.0 / 864.0 * q.powf(1.5);
    let first = 1.0 - 2.0 * q.sqrt() * phi.cos();
    let second = f0 + f1 * phi.cos() + f2 * (2.0 * phi).cos() + f3 * (3.0 * phi).cos();
    let tau_trig = 2.0 * (first * second).max(0.0).sqrt();
    let (z, tau_factored) = if p > 0.0 {
        let z = Complex64::from_polar(((1.0 - p) / p).sqrt(), phi);
        let one = Complex64::new(1.0, 0.0);
        let cubic = (one - z).powi(3) / 8.0 + (one + z).powi(3) * (2.0 / (3.0 * s6));
        (
            Some(z),
            Some(4.0 * p * p * ((one - z) / 2.0).norm() * cubic.norm()),
        )
    } else {
        (None, None)
    };
    Ok((
        tau_trig,
        AppendixTau3Params {
            z,
            f0,
            f1,
            f2,
            f3,
            phi0: phi0(),
            tau_factored,
            tau_trig,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AppendixZero {
    pub p: f64,
    pub phi: f64,
}

fn zero_from_z(z: Complex64) -> AppendixZero {
    AppendixZero {
        p: 1.0 / (1.0 + z.norm_sqr()),
        phi: z.arg().rem_euclid(2.0 * PI),
    }
}

/// Zeros of the tangle in `(p, phi)`, sorted by `p` then `phi`.
///
/// The factorized form vanishes at `z = 1` and at the three roots of
/// `w^3 = -16 / (3 sqrt 6)` with `w = (1 - z)/(1 + z)`; each is mapped back
/// through `p = 1/(1 + |z|^2)`, `phi = arg z`.
pub fn appendix_zeros() -> Vec<AppendixZero> {
    let one = Complex64::new(1.0, 0.0);
    let c = cube_root_coefficient();
    let mut zeros = vec![zero_from_z(one)];
    for k in [-1.0, 1.0, 3.0] {
        let w = Complex64::from_polar(c, k * PI / 3.0);
        zeros.push(zero_from_z((one - w) / (one + w)));
    }
    zeros.sort_by(|a, b| a.p.total_cmp(&b.p).then(a.phi.total_cmp(&b.phi)));
    zeros
}

/// `p tau(psi1) + (1-p) tau(psi2) = p/2 + (8 sqrt 6 - 9)/36`.
pub fn appendix_upper_bound(p: f64) -> f64 {
    p / 2.0 + (8.0 * 6f64.sqrt() - 9.0) / 36.0
}

/// `p |psi1><psi1| + (1-p) |psi2><psi2|`.
pub fn appendix_mixture(p: f64) -> Result<DensityMatrix> {
    Rank2Family::z_app().mixture(p)
}

/// The equal mixture of the two zeros at `p3`; its cross terms do not cancel,
/// so it does not reproduce the mixture at `p3`.
pub fn appendix_zero_pair() -> Result<(Ensemble, DensityMatrix)> {
    let zs = appendix_zeros();
    let top = &zs[2..];
    let e = Ensemble::new(vec![
        (0.5, z_app(top[0].p, top[0].phi)?),
        (0.5, z_app(top[1].p, top[1].phi)?),
    ])?;
    Ok((e, appendix_mixture(top[0].p)?))
}

/// Lower convex envelope of the minimum over `phi` of the tangle. The
/// result is flagged as conjectured: the candidate zero decompositions do
/// not reproduce the mixture, so it is not a certified roof.
pub fn appendix_conjectured_roof(p_grid: &[f64], phi_grid: &[f64]) -> Result<ConvexRoofResult> {
    let fam = Rank2Family::z_app();
    let set = characteristic_curves(
        &fam,
        |s| three_tangle_pure(s).map(|t| t.0),
        p_grid,
        phi_grid,
    )?;
    let env = lower_convex_envelope(&set.p_grid, &set.min_curve);
    let zs = appendix_zeros();
    let (p1, p3) = (zs[0].p, zs[zs.len() - 1].p);
    let samples = set
        .p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| RoofSample {
            p,
            value: env.values[i],
            min_curve: set.min_curve[i],
            envelope: env.values[i],
        })
        .collect();
    Ok(ConvexRoofResult {
        scenario: "tau3-appendix".into(),
        conjectured: true,
        breakpoints: vec![p1, p3],
        segments: vec![
            Segment::new(0.0, p1, "lower convex envelope of the phi-minimum"),
            Segment::new(p1, p3, "conjectured zero: hull of the tangle zeros"),
            Segment::new(p3, 1.0, "lower convex envelope of the phi-minimum"),
        ],
        samples,
        point: None,
    })
}

/// Envelope value at `p` from a conjectured roof result.
pub fn envelope_at(result: &ConvexRoofResult, p: f64) -> f64 {
    let g: Vec<f64> = result.samples.iter().map(|s| s.p).collect();
    let v: Vec<f64> = result.samples.iter().map(|s| s.envelope).collect();
    interpolate(&g, &v, p)
}

/// Tangle of the two members; used as a cross-check of the upper bound.
pub fn appendix_member_tangles() -> Result<(f64, f64)> {
    Ok((
        three_tangle_pure(&psi1_app())?.0,
        three_tangle_pure(&psi2_app())?.0,
    ))
}
