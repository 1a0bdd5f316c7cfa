//! Three-tangle and residual entanglement, the special mixed families with
//! known residual values, a rank-two mixed-state three-tangle classifier, and
//! the four-qubit bilinear invariants `F1..F3` with their degree-2 monotones.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bipartite::{concurrence_mixed, squared_concurrence_one_vs_rest};
use crate::error::{Error, Result};
use crate::linalg::{self, c, phase, re, CMatrix};
use crate::named::{self, check_probability};
use crate::state::{DensityMatrix, PureState, QubitSubset};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeTangleCoefficients {
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

impl ThreeTangleCoefficients {
    /// Coefficients of eight raw (not necessarily normalized) amplitudes
    /// indexed `a[4i + 2j + k] = psi_ijk`.
    pub fn from_amplitudes(a: &[Complex64]) -> Result<Self> {
        if a.len() != 8 {
            return Err(Error::Mismatch(8, a.len()));
        }
        let s = |i: usize| a[i];
        let d1 = s(0b000).powi(2) * s(0b111).powi(2)
            + s(0b001).powi(2) * s(0b110).powi(2)
            + s(0b010).powi(2) * s(0b101).powi(2)
            + s(0b100).powi(2) * s(0b011).powi(2);
        let d2 = s(0b000) * s(0b111) * s(0b011) * s(0b100)
            + s(0b000) * s(0b111) * s(0b101) * s(0b010)
            + s(0b000) * s(0b111) * s(0b110) * s(0b001)
            + s(0b011) * s(0b100) * s(0b101) * s(0b010)
            + s(0b011) * s(0b100) * s(0b110) * s(0b001)
            + s(0b101) * s(0b010) * s(0b110) * s(0b001);
        let d3 =
            s(0b000) * s(0b110) * s(0b101) * s(0b011) + s(0b111) * s(0b001) * s(0b010) * s(0b100);
        Ok(Self { d1, d2, d3 })
    }

    /// `d1 - 2 d2 + 4 d3`, a quartic polynomial in the amplitudes.
    pub fn hyperdeterminant(&self) -> Complex64 {
        self.d1 - 2.0 * self.d2 + 4.0 * self.d3
    }

    pub fn tangle(&self) -> f64 {
        4.0 * self.hyperdeterminant().norm()
    }
}

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

/// `tau = 4 |d1 - 2 d2 + 4 d3|`.
pub fn three_tangle_pure(psi: &PureState) -> Result<(f64, ThreeTangleCoefficients)> {
    expect_qubits(psi.n_qubits(), 3)?;
    let coeffs = ThreeTangleCoefficients::from_amplitudes(psi.amplitudes())?;
    Ok((coeffs.tangle(), coeffs))
}

/// `C^2_{A|(BC)} - C^2_{A|B} - C^2_{A|C}` with `A` the first qubit.
pub fn three_tangle_via_concurrences(psi: &PureState) -> Result<f64> {
    expect_qubits(psi.n_qubits(), 3)?;
    let rest = squared_concurrence_one_vs_rest(psi, 0)?;
    let ab = concurrence_mixed(&psi.reduced(&QubitSubset::new(&[0, 1])?)?)?;
    let ac = concurrence_mixed(&psi.reduced(&QubitSubset::new(&[0, 2])?)?)?;
    Ok(rest - ab * ab - ac * ac)
}

/// Threshold `p0 = s^{2/3} / (1 + s^{2/3})`, `s = 4 c d f / (a^2 b)`, below
/// which the mixture `p |gGHZ><gGHZ| + (1-p) |gW><gW|` has zero residual.
pub fn ghzw_zero_threshold(a: f64, b: f64, c: f64, d: f64, f: f64) -> Result<f64> {
    if a * b == 0.0 {
        return Err(Error::DegenerateFamily(
            "gGHZ amplitudes a and b must both be nonzero",
        ));
    }
    let s = (4.0 * c * d * f / (a * a * b)).abs();
    let s23 = s.powf(2.0 / 3.0);
    Ok(s23 / (1.0 + s23))
}

/// Residual entanglement of `p |gGHZ><gGHZ| + (1-p) |gW><gW|` with
/// `|gGHZ> = a|000> + b|111>` and `|gW> = c|001> + d|010> + f|100>`.
///
/// Only the zero region `p <= p0` has a known value; above it the call
/// returns [`Error::Unsupported`].
pub fn residual_ghzw_mixture(a: f64, b: f64, c: f64, d: f64, f: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    let p0 = ghzw_zero_threshold(a, b, c, d, f)?;
    if p <= p0 {
        Ok(0.0)
    } else {
        Err(Error::Unsupported(format!(
            "residual of gGHZ/gW mixture above p0 = {p0:.6} (p = {p})"
        )))
    }
}

/// Residual of `p |g1><g1| + (1-p) |g2><g2|`: `(2p - 1)^2`.
pub fn residual_g1g2_mixture(p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok((2.0 * p - 1.0).powi(2))
}

const GHZ_BLOCK: [usize; 2] = [0b000, 0b111];
const W_BLOCK: [usize; 3] = [0b001, 0b010, 0b100];

/// Three-tangle of a three-qubit density matrix of rank at most two.
///
/// Handled cases: pure states; the g1/g2 family; block-diagonal gGHZ/gW
/// mixtures inside their zero region; and any rank-two state lying in the
/// convex hull of zero-tangle pure states of its range (the tangle restricted
/// to the range is a quartic in the two expansion coefficients, whose roots
/// are the zero-tangle states). Everything else is [`Error::Unsupported`].
pub fn mixed_three_tangle(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    expect_qubits(rho.n_qubits(), 3)?;
    let (vals, vecs) = linalg::hermitian_eigen(rho.matrix());
    let cutoff = tol.decomposition;
    let kept: Vec<usize> = (0..8).rev().filter(|&k| vals[k] > cutoff).collect();
    let column = |k: usize| -> Vec<Complex64> { vecs.column(k).iter().copied().collect() };
    match kept.len() {
        0 => Err(Error::InvalidState("zero density matrix".into())),
        1 => Ok(ThreeTangleCoefficients::from_amplitudes(&column(kept[0]))?.tangle()),
        2 => {
            if let Some(v) = g1g2_match(rho, tol)? {
                return Ok(v);
            }
            match ghzw_match(rho, tol) {
                Some(Ok(v)) => return Ok(v),
                Some(Err(Error::DegenerateFamily(_))) | Some(Err(Error::Unsupported(_))) | None => {
                }
                Some(Err(e)) => return Err(e),
            }
            let (l1, l2) = (vals[kept[0]], vals[kept[1]]);
            let total = l1 + l2;
            zero_hull(&column(kept[0]), &column(kept[1]), (l1 - l2) / total, tol)
        }
        r => Err(Error::Unsupported(format!(
            "mixed three-tangle of a rank-{r} state"
        ))),
    }
}

fn g1g2_match(rho: &DensityMatrix, tol: &Tolerances) -> Result<Option<f64>> {
    let g1 = named::g1();
    let g2 = named::g2();
    let m = rho.matrix();
    let weight = |v: &PureState| v.as_vector().dotc(&(m * v.as_vector())).re;
    let p = weight(&g1);
    if !(-tol.decomposition..=1.0 + tol.decomposition).contains(&p) {
        return Ok(None);
    }
    let p = p.clamp(0.0, 1.0);
    let model = g1.projector().matrix() * re(p) + g2.projector().matrix() * re(1.0 - p);
    if linalg::max_abs_diff(&model, m) < tol.decomposition {
        Ok(Some(residual_g1g2_mixture(p)?))
    } else {
        Ok(None)
    }
}

/// Returns `None` when `rho` is not block diagonal in the GHZ/W sectors with
/// each block of rank one.
fn ghzw_match(rho: &DensityMatrix, tol: &Tolerances) -> Option<Result<f64>> {
    let m = rho.matrix();
    let eps = tol.decomposition;
    let in_support = |i: usize| GHZ_BLOCK.contains(&i) || W_BLOCK.contains(&i);
    for i in 0..8 {
        for j in 0..8 {
            let same_block = (GHZ_BLOCK.contains(&i) && GHZ_BLOCK.contains(&j))
                || (W_BLOCK.contains(&i) && W_BLOCK.contains(&j));
            if (!in_support(i) || !in_support(j) || !same_block) && m[(i, j)].norm() > eps {
                return None;
            }
        }
    }
    let block_vector = |idx: &[usize]| -> Option<(f64, Vec<f64>)> {
        let weight: f64 = idx.iter().map(|&i| m[(i, i)].re).sum();
        if weight <= eps {
            return Some((0.0, vec![0.0; idx.len()]));
        }
        // rank one iff |rho_ij|^2 = rho_ii rho_jj across the block
        for &i in idx {
            for &j in idx {
                if (m[(i, j)].norm_sqr() - m[(i, i)].re * m[(j, j)].re).abs() > eps {
                    return None;
                }
            }
        }
        let amps = idx
            .iter()
            .map(|&i| (m[(i, i)].re.max(0.0) / weight).sqrt())
            .collect();
        Some((weight, amps))
    };
    let (p, ghz) = block_vector(&GHZ_BLOCK)?;
    let (_, w) = block_vector(&W_BLOCK)?;
    // local diagonal phases remove every relative phase, so magnitudes suffice
    Some(residual_ghzw_mixture(
        ghz[0],
        ghz[1],
        w[0],
        w[1],
        w[2],
        p.clamp(0.0, 1.0),
    ))
}

/// Coefficients `q_k` of `Q(x, y) = sum_k q_k x^{4-k} y^k`, the hyperdeterminant
/// of `x e1 + y e2`, recovered from five samples on the unit circle.
fn range_quartic(e1: &[Complex64], e2: &[Complex64]) -> Result<[Complex64; 5]> {
    let mut samples = [Complex64::new(0.0, 0.0); 5];
    for (j, s) in samples.iter_mut().enumerate() {
        let t = phase(2.0 * std::f64::consts::PI * j as f64 / 5.0);
        let v: Vec<Complex64> = e1.iter().zip(e2).map(|(a, b)| a + t * b).collect();
        *s = ThreeTangleCoefficients::from_amplitudes(&v)?.hyperdeterminant();
    }
    let mut q = [Complex64::new(0.0, 0.0); 5];
    for (k, qk) in q.iter_mut().enumerate() {
        for (j, s) in samples.iter().enumerate() {
            *qk += s * phase(-2.0 * std::f64::consts::PI * (j * k) as f64 / 5.0);
        }
        *qk /= 5.0;
    }
    Ok(q)
}

fn bloch(alpha: Complex64, beta: Complex64) -> [f64; 3] {
    let cross = alpha.conj() * beta;
    [
        2.0 * cross.re,
        2.0 * cross.im,
        alpha.norm_sqr() - beta.norm_sqr(),
    ]
}

fn zero_hull(e1: &[Complex64], e2: &[Complex64], z: f64, tol: &Tolerances) -> Result<f64> {
    let q = range_quartic(e1, e2)?;
    let scale = q.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale < tol.equality {
        return Ok(0.0);
    }
    let trimmed: Vec<Complex64> = q
        .iter()
        .map(|&x| {
            if x.norm() <= 1e-12 * scale {
                c(0.0, 0.0)
            } else {
                x
            }
        })
        .collect();
    let mut points = Vec::new();
    // a vanishing leading coefficient puts a root at e2 itself
    let degree = trimmed.iter().rposition(|x| x.norm() > 0.0).unwrap_or(0);
    if degree < 4 {
        points.push([0.0, 0.0, -1.0]);
    }
    for t in linalg::polynomial_roots(&trimmed) {
        let norm = (1.0 + t.norm_sqr()).sqrt();
        points.push(bloch(re(1.0 / norm), t / norm));
    }
    let target = [0.0, 0.0, z];
    if in_hull(&points, target, 1e-7) {
        Ok(0.0)
    } else {
        Err(Error::Unsupported(
            "rank-two state outside the hull of zero-tangle states in its range".into(),
        ))
    }
}

/// Whether `target` is a convex combination of some subset of `points`.
fn in_hull(points: &[[f64; 3]], target: [f64; 3], tol: f64) -> bool {
    let n = points.len();
    for mask in 1u32..(1 << n) {
        let subset: Vec<[f64; 3]> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| points[i])
            .collect();
        if subset.len() > 4 {
            continue;
        }
        let k = subset.len();
        // least squares for sum w_i r_i = target with sum w_i = 1
        let a = nalgebra::DMatrix::from_fn(4, k, |r, col| if r < 3 { subset[col][r] } else { 1.0 });
        let b = nalgebra::DVector::from_column_slice(&[target[0], target[1], target[2], 1.0]);
        let svd = a.clone().svd(true, true);
        let Ok(w) = svd.solve(&b, 1e-12) else {
            continue;
        };
        let residual = (&a * &w - &b).norm();
        if residual < tol && w.iter().all(|&x| x >= -tol) {
            return true;
        }
    }
    false
}

/// The Pauli operators and the degenerate metric used to contract bilinears.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliContext {
    pub sigma: [CMatrix; 4],
    pub metric: [f64; 4],
}

impl Default for PauliContext {
    fn default() -> Self {
        let z = re(0.0);
        let o = re(1.0);
        let i = c(0.0, 1.0);
        Self {
            sigma: [
                CMatrix::from_row_slice(2, 2, &[o, z, z, o]),
                CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
                CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
                CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
            ],
            metric: [-1.0, 1.0, 0.0, 1.0],
        }
    }
}

impl PauliContext {
    /// `psi^T (sigma_a (x) sigma_b (x) sigma_c (x) sigma_d) psi`, no conjugation.
    pub fn bilinear(&self, amps: &[Complex64], idx: [usize; 4]) -> Complex64 {
        let mut out = Complex64::new(0.0, 0.0);
        for (j, &aj) in amps.iter().enumerate() {
            let mut target = 0usize;
            let mut coeff = re(1.0);
            for (q, &mu) in idx.iter().enumerate() {
                let bit = (j >> (3 - q)) & 1;
                let s = &self.sigma[mu];
                let out_bit = if s[(0, bit)].norm() > 0.0 { 0 } else { 1 };
                coeff *= s[(out_bit, bit)];
                target |= out_bit << (3 - q);
            }
            out += amps[target] * coeff * aj;
        }
        out
    }

    fn table(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut t = vec![Complex64::new(0.0, 0.0); 256];
        for (k, slot) in t.iter_mut().enumerate() {
            let idx = [k >> 6, (k >> 4) & 3, (k >> 2) & 3, k & 3];
            if idx.iter().filter(|&&m| m != 2).count() <= 2 {
                *slot = self.bilinear(amps, idx);
            }
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FInvariants {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GMonotones {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

/// Polynomial degrees of `F1, F2, F3` in the amplitudes.
pub const F_DEGREES: [u32; 3] = [6, 8, 12];

pub fn f_invariants(psi: &PureState) -> Result<FInvariants> {
    expect_qubits(psi.n_qubits(), 4)?;
    f_invariants_raw(psi.amplitudes())
}

/// `F1..F3` of sixteen raw amplitudes. Without normalization this is the
/// form whose value is unchanged by determinant-one local operations.
pub fn f_invariants_raw(amps: &[Complex64]) -> Result<FInvariants> {
    if amps.len() != 16 {
        return Err(Error::Mismatch(16, amps.len()));
    }
    let ctx = PauliContext::default();
    let t = ctx.table(amps);
    let b = |a: usize, bb: usize, cc: usize, d: usize| t[(a << 6) | (bb << 4) | (cc << 2) | d];
    let g = ctx.metric;
    let live: Vec<usize> = (0..4).filter(|&m| g[m] != 0.0).collect();

    let mut f1 = Complex64::new(0.0, 0.0);
    for &m in &live {
        for &n in &live {
            for &l in &live {
                f1 += g[m] * g[n] * g[l] * b(m, n, 2, 2) * b(m, 2, l, 2) * b(2, n, l, 2);
            }
        }
    }
    let mut f2 = Complex64::new(0.0, 0.0);
    for &m in &live {
        for &n in &live {
            for &l in &live {
                for &k in &live {
                    f2 += g[m]
                        * g[n]
                        * g[l]
                        * g[k]
                        * b(m, n, 2, 2)
                        * b(m, 2, l, 2)
                        * b(2, n, 2, k)
                        * b(2, 2, l, k);
                }
            }
        }
    }
    let pair_sum = |pick: &dyn Fn(usize, usize) -> Complex64| {
        let mut s = Complex64::new(0.0, 0.0);
        for &m in &live {
            for &n in &live {
                s += g[m] * g[n] * pick(m, n).powi(2);
            }
        }
        s
    };
    let s_ab = pair_sum(&|m, n| b(m, n, 2, 2));
    let s_ac = pair_sum(&|m, n| b(m, 2, n, 2));
    let s_ad = pair_sum(&|m, n| b(m, 2, 2, n));
    let f3 = 0.5 * s_ab * s_ac * s_ad;
    Ok(FInvariants {
        f1: f1.norm(),
        f2: f2.norm(),
        f3: f3.norm(),
    })
}

/// `G_j = F_j^{2 / D_j}`.
pub fn g_monotones(psi: &PureState) -> Result<GMonotones> {
    let f = f_invariants(psi)?;
    let g = |x: f64, d: u32| x.powf(2.0 / d as f64);
    Ok(GMonotones {
        g1: g(f.f1, F_DEGREES[0]),
        g2: g(f.f2, F_DEGREES[1]),
        g3: g(f.f3, F_DEGREES[2]),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Smallest `p` at which the reduced eigenvectors are evaluated; the
/// normalization diverges as `p -> 0`.
pub const REDUCED_P_MIN: f64 = 1e-6;

/// Scalars defining one eigenvector `psi_pm` of the three-qubit marginal of
/// `Z4(p, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedCoefficients {
    pub norm: f64,
    pub mu: f64,
    pub nu: f64,
}

/// Weight `(2 + sqrt(1 - p^2)) / 4` of `psi_+` in the three-qubit marginal.
pub fn reduced_lambda(p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok((2.0 + (1.0 - p * p).sqrt()) / 4.0)
}

pub fn reduced_coefficients(p: f64, branch: Branch) -> Result<ReducedCoefficients> {
    check_probability(p)?;
    if p < REDUCED_P_MIN {
        return Err(Error::SingularFamily { p });
    }
    let s = (1.0 - p * p).sqrt();
    let sg = branch.sign();
    let norm = (((1.0 + p) * (3.0 - p) + sg * (3.0 + p) * s) / (2.0 * p * p)).sqrt();
    // cancellation-free form, finite at p = 1
    let mu = (2.0 * (1.0 - p).sqrt() + sg * (1.0 + p).sqrt()) / (2.0 * p).sqrt();
    let nu = ((3.0 + p) * (1.0 - p) + sg * (3.0 - p) * s) / (2.0 * p * (2.0 + sg * s));
    Ok(ReducedCoefficients { norm, mu, nu })
}

/// `(1/N)[mu |000> - e^{-i phi} |111> - nu e^{i phi} (|001> + |010> + |100>)]`.
pub fn reduced_pure_state(p: f64, phi: f64, branch: Branch) -> Result<PureState> {
    let k = reduced_coefficients(p, branch)?;
    let mut a = vec![Complex64::new(0.0, 0.0); 8];
    a[0b000] = re(k.mu);
    a[0b111] = -phase(-phi);
    for i in W_BLOCK {
        a[i] = -k.nu * phase(phi);
    }
    for x in &mut a {
        *x /= k.norm;
    }
    PureState::normalized(a)
}

/// `(4 / N^4) sqrt(mu^4 + 16 nu^6 + 8 mu^2 nu^3 cos 4 phi)`.
pub fn residual_reduced_pure(p: f64, phi: f64, branch: Branch) -> Result<f64> {
    let k = reduced_coefficients(p, branch)?;
    let (mu, nu) = (k.mu, k.nu);
    let radicand = mu.powi(4) + 16.0 * nu.powi(6) + 8.0 * mu * mu * nu.powi(3) * (4.0 * phi).cos();
    Ok(4.0 / k.norm.powi(4) * radicand.max(0.0).sqrt())
}

/// `lambda tau(psi_+) + (1 - lambda) tau(psi_-)`, an upper bound on the
/// three-tangle of the three-qubit marginal of `Z4(p, phi)`.
pub fn reduced_tangle_upper_bound(p: f64, phi: f64) -> Result<f64> {
    let l = reduced_lambda(p)?;
    Ok(l * residual_reduced_pure(p, phi, Branch::Plus)?
        + (1.0 - l) * residual_reduced_pure(p, phi, Branch::Minus)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn tangle_examples() {
        let (t, k) = three_tangle_pure(&ghz3()).unwrap();
        assert!(close(t, 1.0, 1e-14));
        assert!(close(k.d1.re, 0.25, 1e-15) && k.d2.norm() == 0.0 && k.d3.norm() == 0.0);
        assert!(three_tangle_pure(&w3()).unwrap().0 < 1e-15);
        let expected = (8.0 * 6f64.sqrt() + 9.0) / 36.0;
        assert!(close(
            three_tangle_pure(&psi1_app()).unwrap().0,
            expected,
            1e-12
        ));
        assert!(close(
            three_tangle_pure(&psi2_app()).unwrap().0,
            expected - 0.5,
            1e-12
        ));
        assert!(three_tangle_pure(&ghz4()).is_err());
    }

    #[test]
    fn tangle_matches_concurrence_difference() {
        for s in [
            ghz3(),
            w3(),
            psi1_app(),
            z3(0.4, 1.0).unwrap(),
            ghz3_weighted(),
        ] {
            let a = three_tangle_pure(&s).unwrap().0;
            let b = three_tangle_via_concurrences(&s).unwrap();
            assert!(close(a, b, 1e-10), "{a} vs {b}");
        }
    }

    #[test]
    fn ghzw_mixture_region() {
        let r = 1.0 / 3f64.sqrt();
        let b = (2.0f64 / 3.0).sqrt();
        assert!(close(
            ghzw_zero_threshold(r, b, r, r, r).unwrap(),
            2.0 / 3.0,
            1e-12
        ));
        assert_eq!(residual_ghzw_mixture(r, b, r, r, r, 0.5).unwrap(), 0.0);
        assert_eq!(residual_ghzw_mixture(r, b, r, r, r, 0.0).unwrap(), 0.0);
        assert!(matches!(
            residual_ghzw_mixture(r, b, r, r, r, 0.9),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            residual_ghzw_mixture(0.0, 1.0, r, r, r, 0.2),
            Err(Error::DegenerateFamily(_))
        ));
    }

    #[test]
    fn g1g2_values() {
        assert_eq!(residual_g1g2_mixture(0.5).unwrap(), 0.0);
        assert_eq!(residual_g1g2_mixture(1.0).unwrap(), 1.0);
        assert!(close(residual_g1g2_mixture(0.75).unwrap(), 0.25, 1e-15));
    }

    #[test]
    fn classifier_cases() {
        let tol = Tolerances::default();
        let mix = |p: f64, a: &PureState, b: &PureState| {
            DensityMatrix::new(
                a.projector().matrix() * re(p) + b.projector().matrix() * re(1.0 - p),
            )
            .unwrap()
        };
        assert!(close(
            mixed_three_tangle(&ghz3().projector(), &tol).unwrap(),
            1.0,
            1e-12
        ));
        assert!(close(
            mixed_three_tangle(&mix(0.75, &g1(), &g2()), &tol).unwrap(),
            0.25,
            1e-12
        ));
        let rho = mix(0.5, &ghz3_weighted(), &w3());
        assert_eq!(mixed_three_tangle(&rho, &tol).unwrap(), 0.0);
        // equal GHZ mixture: zero-tangle product states |000>, |111> span the range
        let rho = ghz4()
            .reduced(&QubitSubset::new(&[0, 1, 2]).unwrap())
            .unwrap();
        assert!(mixed_three_tangle(&rho, &tol).unwrap().abs() < 1e-12);
        let rho = w4()
            .reduced(&QubitSubset::new(&[1, 2, 3]).unwrap())
            .unwrap();
        assert!(mixed_three_tangle(&rho, &tol).unwrap().abs() < 1e-12);
        // GHZ-dominated mixture with W lies outside the zero region
        assert!(matches!(
            mixed_three_tangle(&mix(0.95, &ghz3(), &w3()), &tol),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn table_one_invariants() {
        let cases = [
            (ghz4(), [1.0, 1.0, 0.5]),
            (phi2(), [8.0 / 9.0, 0.0, 0.0]),
            (phi3(), [0.0, 0.0, 1.0]),
            (wtilde4(), [0.0, 0.0, 0.0]),
        ];
        for (s, want) in cases {
            let f = f_invariants(&s).unwrap();
            assert!(close(f.f1, want[0], 1e-12), "{f:?}");
            assert!(close(f.f2, want[1], 1e-12), "{f:?}");
            assert!(close(f.f3, want[2], 1e-12), "{f:?}");
        }
    }

    #[test]
    fn g_monotone_examples() {
        let g = g_monotones(&ghz4()).unwrap();
        assert!(close(g.g1, 1.0, 1e-12) && close(g.g2, 1.0, 1e-12));
        assert!(close(g.g3, 0.5f64.powf(1.0 / 6.0), 1e-12));
        let g = g_monotones(&phi3()).unwrap();
        assert!(g.g1 < 1e-6 && g.g2 < 1e-6 && close(g.g3, 1.0, 1e-12));
    }

    #[test]
    fn f_scale_with_degree() {
        let psi = z4(0.3, 0.7).unwrap();
        let base = f_invariants(&psi).unwrap();
        let k = c(0.8, 0.6) * 1.3;
        let scaled: Vec<Complex64> = psi.amplitudes().iter().map(|a| a * k).collect();
        let f = f_invariants_raw(&scaled).unwrap();
        let m = k.norm();
        assert!(close(f.f1, base.f1 * m.powi(6), 1e-10));
        assert!(close(f.f2, base.f2 * m.powi(8), 1e-10));
        assert!(close(f.f3, base.f3 * m.powi(12), 1e-10));
    }

    #[test]
    fn reduced_pure_closed_form_matches_tangle() {
        for &p in &[1e-3, 0.2, 0.5, 0.77, 1.0] {
            for &phi in &[0.0, 0.4, 2.0] {
                for br in [Branch::Plus, Branch::Minus] {
                    let k = reduced_coefficients(p, br).unwrap();
                    let n2 = k.mu * k.mu + 1.0 + 3.0 * k.nu * k.nu;
                    assert!(close(n2, k.norm * k.norm, 1e-9 * n2));
                    let direct = three_tangle_pure(&reduced_pure_state(p, phi, br).unwrap())
                        .unwrap()
                        .0;
                    let closed = residual_reduced_pure(p, phi, br).unwrap();
                    assert!(
                        close(direct, closed, 1e-9),
                        "{p} {phi} {br:?}: {direct} {closed}"
                    );
                }
            }
        }
        let a = residual_reduced_pure(0.5, 0.0, Branch::Plus).unwrap();
        let b =
            residual_reduced_pure(0.5, std::f64::consts::FRAC_PI_2 / 2.0, Branch::Plus).unwrap();
        assert!((a - b).abs() > 1e-3);
        assert!(matches!(
            residual_reduced_pure(0.0, 0.0, Branch::Plus),
            Err(Error::SingularFamily { .. })
        ));
    }
}
