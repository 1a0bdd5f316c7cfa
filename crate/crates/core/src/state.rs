//! State representation: pure states, density matrices, qubit subsets and
//! ensembles, together with the tensor algebra used by every measure.
//!
//! Basis convention: qubit 0 is the leftmost ket label and the most
//! significant bit of the basis index, so `|q0 q1 ... q_{n-1}>` has index
//! `sum_q q_k 2^{n-1-k}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::tolerance::Tolerances;

pub const MAX_QUBITS: usize = 12;

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidState(format!(
            "dimension {len} is not a power of two >= 2"
        )));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::InvalidState(format!(
            "{n} qubits exceeds the supported maximum of {MAX_QUBITS}"
        )));
    }
    Ok(n)
}

/// Bit mask of qubit `q` in an `n`-qubit basis index.
#[inline]
pub(crate) fn qubit_mask(q: usize, n: usize) -> usize {
    1 << (n - 1 - q)
}

/// A sorted, non-empty set of qubit labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitSubset {
    indices: Vec<usize>,
}

impl QubitSubset {
    /// Builds a subset from labels in any order. Duplicates and empty input
    /// are rejected; the range is checked against each state it is used with.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.is_empty() {
            return Err(Error::InvalidSubset {
                indices: sorted,
                n_qubits: 0,
                reason: "empty",
            });
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset {
                indices: indices.to_vec(),
                n_qubits: 0,
                reason: "duplicate label",
            });
        }
        Ok(Self { indices: sorted })
    }

    pub fn single(q: usize) -> Self {
        Self { indices: vec![q] }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.indices.binary_search(&q).is_ok()
    }

    /// The labels of `0..n_qubits` not in `self`, or `None` when that is empty.
    pub fn complement(&self, n_qubits: usize) -> Option<Self> {
        let rest: Vec<usize> = (0..n_qubits).filter(|q| !self.contains(*q)).collect();
        (!rest.is_empty()).then_some(Self { indices: rest })
    }

    pub(crate) fn check(&self, n_qubits: usize) -> Result<()> {
        if self.indices.iter().any(|&q| q >= n_qubits) {
            return Err(Error::InvalidSubset {
                indices: self.indices.clone(),
                n_qubits,
                reason: "label out of range",
            });
        }
        Ok(())
    }

    fn check_proper(&self, n_qubits: usize) -> Result<()> {
        self.check(n_qubits)?;
        if self.indices.len() == n_qubits {
            return Err(Error::InvalidSubset {
                indices: self.indices.clone(),
                n_qubits,
                reason: "subset must be proper",
            });
        }
        Ok(())
    }

    fn mask(&self, n_qubits: usize) -> usize {
        self.indices
            .iter()
            .fold(0, |m, &q| m | qubit_mask(q, n_qubits))
    }
}

/// Full basis indices contributed by the kept and traced parts of a split.
struct Split {
    kept: Vec<usize>,
    traced: Vec<usize>,
}

impl Split {
    fn new(keep: &QubitSubset, n: usize) -> Self {
        let traced_q: Vec<usize> = (0..n).filter(|q| !keep.contains(*q)).collect();
        Self {
            kept: scatter(keep.indices(), n),
            traced: scatter(&traced_q, n),
        }
    }
}

/// For each local index over `qubits` (first label most significant), the
/// corresponding bits in an `n`-qubit index.
fn scatter(qubits: &[usize], n: usize) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|local| {
            qubits.iter().enumerate().fold(0, |acc, (j, &q)| {
                if local & (1 << (k - 1 - j)) != 0 {
                    acc | qubit_mask(q, n)
                } else {
                    acc
                }
            })
        })
        .collect()
}

/// A normalized state vector over `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: CVector,
}

impl PureState {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::new_with(amplitudes, &Tolerances::default())
    }

    pub fn new_with(amplitudes: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tol.norm || !norm_sq.is_finite() {
            return Err(Error::InvalidState(format!(
                "squared norm {norm_sq} differs from 1"
            )));
        }
        Ok(Self {
            n_qubits,
            amplitudes: CVector::from_vec(amplitudes),
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        Ok(Self {
            n_qubits,
            amplitudes: CVector::from_vec(amplitudes) / linalg::re(norm),
        })
    }

    /// Normalized superposition of computational basis kets given as bit strings.
    pub fn from_terms(terms: &[(Complex64, &str)]) -> Result<Self> {
        let n = terms
            .first()
            .map(|(_, b)| b.len())
            .ok_or_else(|| Error::InvalidState("no terms".into()))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (coef, bits) in terms {
            amps[basis_index(bits, n)?] += coef;
        }
        Self::normalized(amps)
    }

    pub fn basis(bits: &str) -> Result<Self> {
        Self::from_terms(&[(linalg::re(1.0), bits)])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn as_vector(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        tensor_product(self, other)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|`, or 0 for mismatched sizes.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        if self.n_qubits != other.n_qubits {
            return 0.0;
        }
        self.inner(other).norm()
    }

    /// Equality up to a global phase.
    pub fn same_ray(&self, other: &PureState, tol: f64) -> bool {
        self.fidelity(other) > 1.0 - tol
    }

    /// Strict elementwise amplitude equality.
    pub fn approx_eq(&self, other: &PureState, tol: f64) -> bool {
        self.n_qubits == other.n_qubits
            && self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix {
            n_qubits: self.n_qubits,
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// Reduced density matrix on `keep`, computed from the amplitudes
    /// without forming the full projector.
    pub fn reduced(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        keep.check(self.n_qubits)?;
        let split = Split::new(keep, self.n_qubits);
        let d = split.kept.len();
        let mut m = CMatrix::zeros(d, d);
        for &t in &split.traced {
            for (a, &ka) in split.kept.iter().enumerate() {
                let x = self.amplitudes[ka | t];
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                for (b, &kb) in split.kept.iter().enumerate() {
                    m[(a, b)] += x * self.amplitudes[kb | t].conj();
                }
            }
        }
        Ok(DensityMatrix {
            n_qubits: keep.len(),
            matrix: m,
        })
    }

    /// Relabels qubits: qubit `k` of the result is qubit `perm[k]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&q| q >= n || std::mem::replace(&mut seen[q], true))
        {
            return Err(Error::InvalidState(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        let amps = (0..1usize << n)
            .map(|new_idx| {
                let old_idx = (0..n).fold(0, |acc, k| {
                    if new_idx & qubit_mask(k, n) != 0 {
                        acc | qubit_mask(perm[k], n)
                    } else {
                        acc
                    }
                });
                self.amplitudes[old_idx]
            })
            .collect();
        Ok(PureState {
            n_qubits: n,
            amplitudes: CVector::from_vec(amps),
        })
    }

    /// Applies one 2x2 operator per qubit without renormalizing, returning the
    /// raw amplitudes. Used for local-filtering (SLOCC) experiments.
    pub fn apply_local(&self, ops: &[CMatrix]) -> Result<Vec<Complex64>> {
        if ops.len() != self.n_qubits || ops.iter().any(|m| m.shape() != (2, 2)) {
            return Err(Error::InvalidState(
                "need one 2x2 operator per qubit".into(),
            ));
        }
        let full = ops[1..]
            .iter()
            .fold(ops[0].clone(), |acc, m| linalg::kron(&acc, m));
        Ok((full * &self.amplitudes).iter().copied().collect())
    }
}

/// Parses a ket label such as `"0110"` into its basis index.
pub fn basis_index(bits: &str, n: usize) -> Result<usize> {
    if bits.len() != n {
        return Err(Error::InvalidState(format!(
            "ket `{bits}` is not {n} qubits long"
        )));
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidState(format!("bad ket label `{bits}`"))),
    })
}

/// `a (x) b`, with the qubits of `a` first.
pub fn tensor_product(a: &PureState, b: &PureState) -> PureState {
    let db = b.amplitudes.len();
    let amps = CVector::from_fn(a.amplitudes.len() * db, |i, _| {
        a.amplitudes[i / db] * b.amplitudes[i % db]
    });
    PureState {
        n_qubits: a.n_qubits + b.n_qubits,
        amplitudes: amps,
    }
}

/// A Hermitian, positive semidefinite, unit-trace operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::default())
    }

    pub fn new_with(matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState("matrix is not square".into()));
        }
        let n_qubits = qubits_for_len(matrix.nrows())?;
        let herm_dev = linalg::max_abs_diff(&matrix, &matrix.adjoint());
        if herm_dev > tol.equality {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm_dev:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.norm || tr.im.abs() > tol.norm {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min_ev = linalg::hermitian_eigenvalues(&matrix)[0];
        if min_ev < -tol.psd {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_ev:e}"
            )));
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.projector()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Number of eigenvalues above `cutoff`.
    pub fn rank(&self, cutoff: f64) -> usize {
        self.eigenvalues().iter().filter(|&&v| v > cutoff).count()
    }

    pub fn partial_trace(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    pub fn partial_transpose(&self, subset: &QubitSubset) -> Result<CMatrix> {
        partial_transpose(self, subset)
    }

    /// The eigen-decomposition as an ensemble; eigenvalues at or below
    /// `cutoff` are dropped and the remaining weights renormalized.
    pub fn spectral_ensemble(&self, cutoff: f64) -> Result<Ensemble> {
        let (vals, vecs) = linalg::hermitian_eigen(&self.matrix);
        let mut members = Vec::new();
        for (k, &w) in vals.iter().enumerate().rev() {
            if w > cutoff {
                let col: Vec<Complex64> = vecs.column(k).iter().copied().collect();
                members.push((w, PureState::normalized(col)?));
            }
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        for m in &mut members {
            m.0 /= total;
        }
        Ensemble::new(members)
    }

    pub(crate) fn from_matrix_unchecked(n_qubits: usize, matrix: CMatrix) -> Self {
        Self { n_qubits, matrix }
    }
}

/// Reduced state on `keep`; the complement is traced out.
pub fn partial_trace(rho: &DensityMatrix, keep: &QubitSubset) -> Result<DensityMatrix> {
    keep.check(rho.n_qubits)?;
    let split = Split::new(keep, rho.n_qubits);
    let d = split.kept.len();
    let m = CMatrix::from_fn(d, d, |a, b| {
        split
            .traced
            .iter()
            .map(|&t| rho.matrix[(split.kept[a] | t, split.kept[b] | t)])
            .sum()
    });
    Ok(DensityMatrix {
        n_qubits: keep.len(),
        matrix: m,
    })
}

/// Partial transposition of `rho` on the qubits of `subset`. The result is
/// Hermitian with unit trace but need not be positive.
pub fn partial_transpose(rho: &DensityMatrix, subset: &QubitSubset) -> Result<CMatrix> {
    partial_transpose_matrix(&rho.matrix, rho.n_qubits, subset)
}

/// Partial transposition of an arbitrary `2^n x 2^n` matrix.
pub fn partial_transpose_matrix(
    m: &CMatrix,
    n_qubits: usize,
    subset: &QubitSubset,
) -> Result<CMatrix> {
    subset.check(n_qubits)?;
    let mask = subset.mask(n_qubits);
    let d = m.nrows();
    Ok(CMatrix::from_fn(d, d, |r, col| {
        let r2 = (r & !mask) | (col & mask);
        let c2 = (col & !mask) | (r & mask);
        m[(r2, c2)]
    }))
}

pub(crate) fn check_proper_subset(subset: &QubitSubset, n_qubits: usize) -> Result<()> {
    subset.check_proper(n_qubits)
}

/// A weighted list of pure states realizing a mixed state.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        Self::new_with(members, &Tolerances::default())
    }

    pub fn new_with(members: Vec<(f64, PureState)>, tol: &Tolerances) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidState("empty ensemble".into()))?;
        let n = first.1.n_qubits();
        if let Some((_, s)) = members.iter().find(|(_, s)| s.n_qubits() != n) {
            return Err(Error::Mismatch(n, s.n_qubits()));
        }
        if let Some((w, _)) = members.iter().find(|(w, _)| w.is_nan() || *w < 0.0) {
            return Err(Error::InvalidState(format!("invalid weight {w}")));
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > tol.norm {
            return Err(Error::InvalidState(format!("weights sum to {total}")));
        }
        Ok(Self { members })
    }

    pub fn single(psi: PureState) -> Self {
        Self {
            members: vec![(1.0, psi)],
        }
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn n_qubits(&self) -> usize {
        self.members[0].1.n_qubits()
    }

    pub fn to_density(&self) -> DensityMatrix {
        ensemble_to_density(self)
    }

    /// Weighted average of a pure-state measure over the members.
    pub fn average<F>(&self, mut measure: F) -> Result<f64>
    where
        F: FnMut(&PureState) -> Result<f64>,
    {
        self.members
            .iter()
            .filter(|(w, _)| *w > 0.0)
            .try_fold(0.0, |acc, (w, s)| Ok(acc + w * measure(s)?))
    }
}

/// `sum_i p_i |psi_i><psi_i|`.
pub fn ensemble_to_density(e: &Ensemble) -> DensityMatrix {
    let d = 1usize << e.n_qubits();
    let mut m = CMatrix::zeros(d, d);
    for (w, s) in &e.members {
        let v = s.as_vector();
        m += (v * v.adjoint()) * linalg::re(*w);
    }
    DensityMatrix {
        n_qubits: e.n_qubits(),
        matrix: m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, re};
    use crate::named;

    fn bell() -> PureState {
        PureState::from_terms(&[(re(1.0), "00"), (re(1.0), "11")]).unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let z = PureState::basis("0").unwrap();
        let zz = tensor_product(&z, &z);
        assert_eq!(zz.n_qubits(), 2);
        assert!(zz.approx_eq(&PureState::basis("00").unwrap(), 0.0));
    }

    #[test]
    fn plus_tensor_zero() {
        let plus = PureState::from_terms(&[(re(1.0), "0"), (re(1.0), "1")]).unwrap();
        let z = PureState::basis("0").unwrap();
        let expect = PureState::from_terms(&[(re(1.0), "00"), (re(1.0), "10")]).unwrap();
        assert!(tensor_product(&plus, &z).approx_eq(&expect, 1e-15));
    }

    #[test]
    fn ghz3_tensor_zero_is_g3() {
        let g = tensor_product(&named::ghz3(), &PureState::basis("0").unwrap());
        assert!(g.approx_eq(&named::g3(), 1e-15));
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let r = bell()
            .projector()
            .partial_trace(&QubitSubset::single(0))
            .unwrap();
        let half = CMatrix::identity(2, 2) * re(0.5);
        assert!(max_abs_diff(r.matrix(), &half) < 1e-15);
        let r2 = bell().reduced(&QubitSubset::single(1)).unwrap();
        assert!(max_abs_diff(r2.matrix(), &half) < 1e-15);
    }

    #[test]
    fn invalid_subsets_are_rejected() {
        assert!(QubitSubset::new(&[]).is_err());
        assert!(QubitSubset::new(&[1, 1]).is_err());
        let rho = bell().projector();
        assert!(matches!(
            rho.partial_trace(&QubitSubset::single(2)),
            Err(Error::InvalidSubset { .. })
        ));
        assert!(rho.partial_transpose(&QubitSubset::single(5)).is_err());
        assert_eq!(QubitSubset::new(&[2, 0]).unwrap().indices(), &[0, 2]);
    }

    #[test]
    fn bell_partial_transpose_has_negative_half() {
        let pt = bell()
            .projector()
            .partial_transpose(&QubitSubset::single(0))
            .unwrap();
        let ev = linalg::hermitian_eigenvalues(&pt);
        // direct 4x4 eigendecomposition: spectrum {-1/2, 1/2, 1/2, 1/2}
        assert!((ev[0] + 0.5).abs() < 1e-14);
        assert!(ev[1..].iter().all(|v| (v - 0.5).abs() < 1e-14));
    }

    #[test]
    fn product_state_stays_positive_under_transpose() {
        let a = PureState::from_terms(&[(re(1.0), "0"), (linalg::c(0.3, 0.4), "1")]).unwrap();
        let b = PureState::from_terms(&[(re(0.2), "0"), (re(1.0), "1")]).unwrap();
        let pt = tensor_product(&a, &b)
            .projector()
            .partial_transpose(&QubitSubset::single(0))
            .unwrap();
        assert!(linalg::hermitian_eigenvalues(&pt)[0] > -1e-15);
    }

    #[test]
    fn density_validation() {
        let bad = CMatrix::from_row_slice(2, 2, &[re(1.5), re(0.0), re(0.0), re(-0.5)]);
        assert!(DensityMatrix::new(bad).is_err());
        let nonherm = CMatrix::from_row_slice(2, 2, &[re(0.5), re(0.2), re(0.0), re(0.5)]);
        assert!(DensityMatrix::new(nonherm).is_err());
        assert!(DensityMatrix::new(bell().projector().matrix().clone()).is_ok());
    }

    #[test]
    fn ensemble_validation() {
        let a = PureState::basis("0").unwrap();
        let b = PureState::basis("00").unwrap();
        assert!(matches!(
            Ensemble::new(vec![(0.5, a.clone()), (0.5, b)]),
            Err(Error::Mismatch(1, 2))
        ));
        assert!(Ensemble::new(vec![(0.7, a.clone())]).is_err());
        assert!(Ensemble::new(vec![(-0.1, a.clone()), (1.1, a)]).is_err());
    }

    #[test]
    fn single_member_projector_is_pure() {
        let e = Ensemble::single(named::ghz4());
        assert!((ensemble_to_density(&e).purity() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn permutation_relabels() {
        let s = PureState::basis("100").unwrap();
        let p = s.permute_qubits(&[1, 2, 0]).unwrap();
        assert!(p.approx_eq(&PureState::basis("001").unwrap(), 0.0));
        assert!(s.permute_qubits(&[0, 0, 1]).is_err());
    }
}
