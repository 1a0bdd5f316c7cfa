//! Two-party measures: concurrence (pure and Wootters mixed), entanglement
//! of formation, negativity, and the closed forms for the two-qubit
//! marginals of the `Z4(p, phi)` family.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, phase, re, CMatrix};
use crate::named::check_probability;
use crate::state::{check_proper_subset, DensityMatrix, PureState, QubitSubset};
use crate::tolerance::Tolerances;

fn expect_qubits(n: usize, expected: usize) -> Result<()> {
    if n == expected {
        Ok(())
    } else {
        Err(Error::QubitCount {
            expected,
            actual: n,
        })
    }
}

/// `2 |psi_00 psi_11 - psi_01 psi_10|`.
pub fn concurrence_pure(psi: &PureState) -> Result<f64> {
    expect_qubits(psi.n_qubits(), 2)?;
    let a = psi.amplitudes();
    Ok((2.0 * (a[0] * a[3] - a[1] * a[2]).norm()).min(1.0))
}

fn sigma_y_sigma_y() -> CMatrix {
    let z = re(0.0);
    CMatrix::from_row_slice(
        4,
        4,
        &[
            z,
            z,
            z,
            re(-1.0), //
            z,
            z,
            re(1.0),
            z, //
            z,
            re(1.0),
            z,
            z, //
            re(-1.0),
            z,
            z,
            z,
        ],
    )
}

/// Square roots of the eigenvalues of `rho (Y Y) rho* (Y Y)`, descending.
///
/// The product is not Hermitian; its eigenvalues are read from the complex
/// Schur form and only real parts are kept. Values within the rounding floor
/// of the product (`64 eps ||R||_F`) are flushed to zero before the square
/// root, negatives down to `-tol.spectrum_clamp` are clamped to zero, and
/// anything more negative is reported as an invalid state.
pub fn wootters_lambdas(rho: &DensityMatrix, tol: &Tolerances) -> Result<[f64; 4]> {
    expect_qubits(rho.n_qubits(), 2)?;
    let yy = sigma_y_sigma_y();
    let m = rho.matrix();
    let flipped = &yy * m.map(|z| z.conj()) * &yy;
    let product = m * flipped;
    let floor = 64.0 * f64::EPSILON * product.norm();
    let mut ev = [0.0; 4];
    for (slot, z) in ev.iter_mut().zip(linalg::eigenvalues(&product)) {
        let x = z.re;
        if x < -tol.spectrum_clamp {
            return Err(Error::InvalidState(format!(
                "Wootters spectrum has negative eigenvalue {x:e}"
            )));
        }
        *slot = if x <= floor { 0.0 } else { x.sqrt() };
    }
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Wootters concurrence `max(l1 - l2 - l3 - l4, 0)`.
pub fn concurrence_mixed(rho: &DensityMatrix) -> Result<f64> {
    concurrence_mixed_with(rho, &Tolerances::default())
}

pub fn concurrence_mixed_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    let l = wootters_lambdas(rho, tol)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

/// `h(x) = -x ln x - (1-x) ln(1-x)` with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64, base: LogBase) -> f64 {
    let term = |t: f64| if t <= 0.0 { 0.0 } else { -t * t.ln() };
    let h = term(x) + term(1.0 - x);
    match base {
        LogBase::Natural => h,
        LogBase::Two => h / std::f64::consts::LN_2,
    }
}

/// Entanglement of formation `h((1 + sqrt(1 - C^2)) / 2)`, natural logarithm.
pub fn eof_from_concurrence(concurrence: f64) -> Result<f64> {
    eof_from_concurrence_in(concurrence, LogBase::Natural)
}

pub fn eof_from_concurrence_in(concurrence: f64, base: LogBase) -> Result<f64> {
    if !(0.0..=1.0).contains(&concurrence) {
        return Err(Error::OutOfDomain {
            name: "concurrence",
            value: concurrence,
            domain: "[0, 1]",
        });
    }
    let x = 0.5 * (1.0 + (1.0 - concurrence * concurrence).sqrt());
    Ok(binary_entropy(x, base))
}

/// Trace norm of the partial transpose minus one, i.e. twice the summed
/// magnitude of its negative eigenvalues.
pub fn negativity(rho: &DensityMatrix, part_a: &QubitSubset) -> Result<f64> {
    check_proper_subset(part_a, rho.n_qubits())?;
    let pt = rho.partial_transpose(part_a)?;
    Ok(negativity_of_transposed(&pt))
}

pub(crate) fn negativity_of_transposed(pt: &CMatrix) -> f64 {
    let neg: f64 = linalg::hermitian_eigenvalues(pt)
        .into_iter()
        .filter(|&v| v < 0.0)
        .map(f64::abs)
        .sum();
    2.0 * neg
}

/// `2 sqrt(det rho_focus)`: concurrence between one qubit and the rest of a pure state.
pub fn concurrence_one_vs_rest(psi: &PureState, focus: usize) -> Result<f64> {
    Ok(squared_concurrence_one_vs_rest(psi, focus)?.sqrt())
}

/// `4 det rho_focus`.
pub fn squared_concurrence_one_vs_rest(psi: &PureState, focus: usize) -> Result<f64> {
    if psi.n_qubits() < 2 {
        return Err(Error::QubitCount {
            expected: 2,
            actual: psi.n_qubits(),
        });
    }
    let r = psi.reduced(&QubitSubset::single(focus))?;
    let m = r.matrix();
    let det = m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr();
    Ok((4.0 * det).clamp(0.0, 1.0))
}

/// The common two-qubit marginal of `|Z4(p, phi)>`, written out entrywise.
pub fn rho_ij_z4(p: f64, phi: f64) -> Result<DensityMatrix> {
    check_probability(p)?;
    let off = -(p * (1.0 - p) / 2.0).sqrt();
    let lo = off * phase(phi);
    let hi = off * phase(-phi);
    let q = re((1.0 - p) / 2.0);
    let z = re(0.0);
    let m = CMatrix::from_row_slice(
        4,
        4,
        &[
            re(1.0),
            hi,
            hi,
            z, //
            lo,
            q,
            q,
            z, //
            lo,
            q,
            q,
            z, //
            z,
            z,
            z,
            re(p),
        ],
    ) * re(0.5);
    Ok(DensityMatrix::from_matrix_unchecked(2, m))
}

/// Intermediate quantities of the concurrence closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceClosedForm {
    pub lambda: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    /// `sqrt(L) - sqrt(L+) - sqrt(L-)` before clamping at zero.
    pub raw: f64,
}

/// Square root with rounding-level negatives treated as zero.
fn sqrt_nonneg(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// Closed-form concurrence of the `Z4(p, phi)` two-qubit marginal; it does
/// not depend on `phi`. The value is clamped at zero and the raw difference
/// kept in the detail record.
pub fn closed_form_concurrence_z4(p: f64) -> Result<(f64, ConcurrenceClosedForm)> {
    check_probability(p)?;
    let (p2, p3, p4, p5, p6) = (p * p, p.powi(3), p.powi(4), p.powi(5), p.powi(6));
    let alpha = 1.0 - 9.0 * p + 39.0 * p2 - 90.0 * p3 + 115.5 * p4 - 81.0 * p5 + 23.5 * p6;
    let inner = 4.0 - 28.0 * p + 96.0 * p2 - 147.0 * p3 + 110.0 * p4 - 31.0 * p5;
    let beta = 1.5 * p2 * (1.0 - p) * sqrt_nonneg(3.0 * p * inner);
    // two-argument arctangent keeps theta continuous where alpha changes sign
    let theta = beta.atan2(alpha) / 3.0;
    let r = (alpha * alpha + beta * beta).powf(1.0 / 6.0);
    let base = 1.0 + p2;
    let lambda = (base + 2.0 * r * theta.cos()) / 12.0;
    let lambda_plus = (base - 2.0 * r * (PI / 3.0 + theta).cos()) / 12.0;
    let lambda_minus = (base - 2.0 * r * (PI / 3.0 - theta).cos()) / 12.0;
    let raw = sqrt_nonneg(lambda) - sqrt_nonneg(lambda_plus) - sqrt_nonneg(lambda_minus);
    Ok((
        raw.max(0.0),
        ConcurrenceClosedForm {
            lambda,
            lambda_plus,
            lambda_minus,
            alpha,
            beta,
            theta,
            raw,
        },
    ))
}

/// Intermediate quantities of the negativity closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativityClosedForm {
    pub lambda: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub r0: f64,
    pub theta0: f64,
    pub alpha0: f64,
    pub beta0: f64,
    pub raw: f64,
}

/// Closed-form negativity of the `Z4(p, phi)` two-qubit marginal.
pub fn closed_form_negativity_z4(p: f64) -> Result<(f64, NegativityClosedForm)> {
    check_probability(p)?;
    let (p2, p3, p4, p5, p6) = (p * p, p.powi(3), p.powi(4), p.powi(5), p.powi(6));
    let alpha0 = 17.0 + 147.0 * p - 153.0 * p2 - 428.0 * p3 + 729.0 * p4 - 447.0 * p5 + 127.0 * p6;
    let inner = 2.0 + 4.0 * p - 71.0 * p2 + 214.0 * p3 - 129.0 * p4;
    let beta0 = 3.0 * 3f64.sqrt() * (1.0 - p + 5.0 * p2 - 7.0 * p3 + 2.0 * p4) * sqrt_nonneg(inner);
    let r0 = (alpha0 * alpha0 + beta0 * beta0).powf(1.0 / 6.0);
    let theta0 = beta0.atan2(alpha0) / 3.0;
    let base = 7.0 + 2.0 * p - p2;
    let lambda = (base + 4.0 * r0 * theta0.cos()) / 48.0;
    let lambda_plus = (base - 4.0 * r0 * (PI / 3.0 + theta0).cos()) / 48.0;
    let lambda_minus = (base - 4.0 * r0 * (PI / 3.0 - theta0).cos()) / 48.0;
    let raw = sqrt_nonneg(lambda) + sqrt_nonneg(lambda_plus) + sqrt_nonneg(lambda_minus)
        - (3.0 + p) / 4.0;
    Ok((
        raw.max(0.0),
        NegativityClosedForm {
            lambda,
            lambda_plus,
            lambda_minus,
            r0,
            theta0,
            alpha0,
            beta0,
            raw,
        },
    ))
}

/// `tr[rho rho~]`, the sum of the Wootters eigenvalues.
pub fn spin_flip_overlap(rho: &DensityMatrix) -> Result<f64> {
    expect_qubits(rho.n_qubits(), 2)?;
    let yy = sigma_y_sigma_y();
    let m = rho.matrix();
    Ok((m * &yy * m.map(|z| z.conj()) * &yy).trace().re)
}
