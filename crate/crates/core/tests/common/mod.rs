#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use tangle_core::linalg::CMatrix;
use tangle_core::PureState;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state from normalized complex Gaussian amplitudes.
pub fn random_pure(n_qubits: usize, rng: &mut ChaCha8Rng) -> PureState {
    let amps = (0..1usize << n_qubits).map(|_| gaussian(rng)).collect();
    PureState::normalized(amps).unwrap()
}

/// Random 2x2 complex matrix rescaled to determinant one.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> CMatrix {
    let m = CMatrix::from_fn(2, 2, |_, _| gaussian(rng));
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    m / det.sqrt()
}

pub const PERMUTATIONS_3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn permutations_4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
