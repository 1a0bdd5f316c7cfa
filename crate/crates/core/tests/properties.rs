mod common;

use common::*;
use proptest::prelude::*;
use tangle_core::bipartite::{concurrence_mixed, concurrence_pure, negativity};
use tangle_core::linalg::max_abs_diff;
use tangle_core::monogamy::{check_monogamy_tofv, n1, n2, Power};
use tangle_core::multipartite::{
    f_invariants, f_invariants_raw, three_tangle_pure, three_tangle_via_concurrences, F_DEGREES,
};
use tangle_core::named::{ghz4, w4, z4};
use tangle_core::roof::{appendix_tau3, reduced_tripartite_spectral};
use tangle_core::{PureState, QubitSubset};

#[test]
fn ckw_and_tofv_on_random_states() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let s = random_pure(3, &mut r);
        assert!(three_tangle_via_concurrences(&s).unwrap() >= -1e-10);
        for focus in 0..3 {
            assert!(check_monogamy_tofv(&s, focus).unwrap() >= -1e-10);
        }
    }
    for _ in 0..1000 {
        let s = random_pure(4, &mut r);
        assert!(check_monogamy_tofv(&s, 0).unwrap() >= -1e-10);
    }
}

#[test]
fn three_tangle_symmetries() {
    let mut r = rng(12);
    for _ in 0..500 {
        let s = random_pure(3, &mut r);
        let (t, _) = three_tangle_pure(&s).unwrap();
        assert!((-1e-12..=1.0 + 1e-10).contains(&t));
        for perm in PERMUTATIONS_3 {
            let u = three_tangle_pure(&s.permute_qubits(&perm).unwrap())
                .unwrap()
                .0;
            assert!((u - t).abs() < 1e-10);
        }
        assert!((three_tangle_via_concurrences(&s).unwrap() - t).abs() < 1e-9);
    }
}

#[test]
fn f_invariants_under_determinant_one_local_maps() {
    let mut r = rng(13);
    for _ in 0..100 {
        let s = random_pure(4, &mut r);
        let ops: Vec<_> = (0..4).map(|_| random_sl2(&mut r)).collect();
        let moved = s.apply_local(&ops).unwrap();
        let a = f_invariants(&s).unwrap();
        let b = f_invariants_raw(&moved).unwrap();
        for (x, y) in [(a.f1, b.f1), (a.f2, b.f2), (a.f3, b.f3)] {
            assert!(
                (x - y).abs() <= 1e-7 * x.abs().max(y.abs()).max(1e-6),
                "{x} vs {y}"
            );
        }
    }
}

#[test]
fn f_invariants_scale_by_degree() {
    let mut r = rng(14);
    let s = random_pure(4, &mut r);
    let base = f_invariants(&s).unwrap();
    let k = 1.7;
    let scaled: Vec<_> = s.amplitudes().iter().map(|a| a * k).collect();
    let f = f_invariants_raw(&scaled).unwrap();
    for (x, y, d) in [
        (base.f1, f.f1, F_DEGREES[0]),
        (base.f2, f.f2, F_DEGREES[1]),
        (base.f3, f.f3, F_DEGREES[2]),
    ] {
        assert!((x * k.powi(d as i32) - y).abs() < 1e-9 * y.max(1.0));
    }
}

#[test]
fn negativity_measures_invariant_under_relabeling() {
    for s in [ghz4(), w4()] {
        let base1 = n1(&s, Power::Infinite).unwrap();
        let base2 = n2(&s, Power::Finite(2.0)).unwrap();
        for perm in permutations_4() {
            let t = s.permute_qubits(&perm).unwrap();
            assert!((n1(&t, Power::Infinite).unwrap() - base1).abs() < 1e-10);
            assert!((n2(&t, Power::Finite(2.0)).unwrap() - base2).abs() < 1e-10);
        }
    }
}

#[test]
fn reduced_spectral_reconstruction() {
    let mut r = rng(15);
    use rand::Rng;
    let keep = QubitSubset::new(&[1, 2, 3]).unwrap();
    for _ in 0..50 {
        let p: f64 = r.gen_range(0.001..=1.0);
        let phi: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let rt = reduced_tripartite_spectral(p, phi).unwrap();
        let want = z4(p, phi).unwrap().reduced(&keep).unwrap();
        assert!(max_abs_diff(rt.density().unwrap().matrix(), want.matrix()) < 1e-9);
    }
}

fn bell_like(theta: f64, chi: f64) -> PureState {
    use tangle_core::linalg::{phase, re};
    PureState::new(vec![
        re(theta.cos()),
        re(0.0),
        re(0.0),
        phase(chi) * theta.sin(),
    ])
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pure_and_mixed_concurrence_agree(theta in 0.0f64..1.6, chi in 0.0f64..6.3) {
        let s = bell_like(theta, chi);
        let a = concurrence_pure(&s).unwrap();
        let b = concurrence_mixed(&s.projector()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert!((a - (2.0 * theta).sin().abs()).abs() < 1e-12);
    }

    #[test]
    fn pure_negativity_equals_concurrence(theta in 0.0f64..1.6, chi in 0.0f64..6.3) {
        // for two-qubit pure states N = C
        let s = bell_like(theta, chi);
        let n = negativity(&s.projector(), &QubitSubset::single(0)).unwrap();
        prop_assert!((n - concurrence_pure(&s).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn appendix_phase_symmetry(p in 0.0f64..=1.0, n in 0u32..3) {
        let phi0 = tangle_core::roof::appendix::phi0();
        let base = n as f64 * std::f64::consts::PI;
        let a = appendix_tau3(p, base + phi0).unwrap().0;
        let b = appendix_tau3(p, base - phi0).unwrap().0;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn z4_negativities_do_not_depend_on_phase(p in 0.0f64..=1.0, phi in 0.0f64..std::f64::consts::TAU) {
        let a = n1(&z4(p, phi).unwrap(), Power::Infinite).unwrap();
        let b = n1(&z4(p, 0.0).unwrap(), Power::Infinite).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}
