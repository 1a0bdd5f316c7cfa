use std::f64::consts::PI;

use tangle_core::monogamy::{monogamy_measure, nu_star, MeasureKind, Power, PowerFactors};
use tangle_core::multipartite::three_tangle_pure;
use tangle_core::named::{z3, z_app};
use tangle_core::roof::appendix::{appendix_conjectured_roof, appendix_upper_bound, envelope_at};
use tangle_core::roof::envelope::{convexity_violations, lower_convex_envelope};
use tangle_core::roof::family::{characteristic_curves, p_grid, phi_grid};
use tangle_core::roof::scalar::golden_section_min;
use tangle_core::roof::{appendix_zeros, Rank2Family, RoofScenario, RoofSolver};
use tangle_core::{PureState, Tolerances};

fn tau(p: f64, phi: f64) -> f64 {
    three_tangle_pure(&z_app(p, phi).unwrap()).unwrap().0
}

/// Coarse grid search followed by alternating golden-section refinement.
fn numeric_zero_near(p: f64, phi: f64) -> (f64, f64) {
    let (mut bp, mut bphi, mut best) = (p, phi, f64::INFINITY);
    for i in 0..=200 {
        for j in 0..=200 {
            let q = (p - 0.01 + 0.02 * i as f64 / 200.0).clamp(0.0, 1.0);
            let f = phi - 0.05 + 0.1 * j as f64 / 200.0;
            let v = tau(q, f);
            if v < best {
                (bp, bphi, best) = (q, f, v);
            }
        }
    }
    let mut width = 1e-4;
    for _ in 0..60 {
        bp = golden_section_min(
            |q| Ok(tau(q, bphi)),
            (bp - width).max(0.0),
            (bp + width).min(1.0),
            1e-13,
        )
        .unwrap()
        .0;
        bphi = golden_section_min(
            |f| Ok(tau(bp, f)),
            bphi - 5.0 * width,
            bphi + 5.0 * width,
            1e-13,
        )
        .unwrap()
        .0;
        width = (width * 0.7).max(1e-9);
    }
    (bp, bphi)
}

#[test]
fn appendix_zeros_match_numeric_search() {
    for z in appendix_zeros() {
        let (p, phi) = numeric_zero_near(z.p, z.phi);
        assert!((p - z.p).abs() < 1e-6, "{z:?} vs numeric ({p}, {phi})");
        assert!((phi - z.phi).abs() < 1e-5, "{z:?} vs numeric ({p}, {phi})");
        assert!(tau(p, phi) < 1e-6);
    }
}

#[test]
fn z3_zero_location() {
    let f = |p: f64| Ok(three_tangle_pure(&z3(p, 0.0)?)?.0);
    let (p0, v) = golden_section_min(f, 0.55, 0.7, 1e-10).unwrap();
    assert!((p0 - 0.627).abs() < 0.005);
    assert!(v < 1e-8);
    for phi in [2.0 * PI / 3.0, 4.0 * PI / 3.0] {
        assert!(three_tangle_pure(&z3(p0, phi).unwrap()).unwrap().0 < 1e-6);
    }
}

#[test]
fn appendix_tangle_zero_at_half() {
    let fam = Rank2Family::z_app();
    let measure = |s: &PureState| three_tangle_pure(s).map(|t| t.0);
    let set = characteristic_curves(&fam, measure, &[0.5], &[0.0]).unwrap();
    assert!(set.values[0][0] < 1e-12);
}

#[test]
fn appendix_envelope_conjecture() {
    let zeros = appendix_zeros();
    let mut grid = p_grid(401).unwrap();
    let mut phis = phi_grid(720).unwrap();
    for z in &zeros {
        grid.push(z.p);
        phis.push(z.phi.rem_euclid(2.0 * PI));
    }
    grid.sort_by(f64::total_cmp);
    phis.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    phis.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let res = appendix_conjectured_roof(&grid, &phis).unwrap();
    assert!(res.conjectured);
    let (p1, p3) = (zeros[0].p, zeros[zeros.len() - 1].p);
    for s in &res.samples {
        assert!(s.envelope <= appendix_upper_bound(s.p) + 1e-12);
        assert!(s.envelope <= s.min_curve + 1e-12);
        if s.p >= p1 && s.p <= p3 {
            assert!(s.envelope.abs() < 1e-6, "p = {}: {}", s.p, s.envelope);
        } else {
            assert!(s.envelope > 0.0, "p = {}: {}", s.p, s.envelope);
        }
    }
    assert!(envelope_at(&res, 0.5).abs() < 1e-6);
}

fn family_curve(kind: MeasureKind, factors: &PowerFactors, grid: &[f64]) -> Vec<f64> {
    let fam = Rank2Family::z4();
    let measure = |s: &PureState| monogamy_measure(s, kind, factors, &Tolerances::default());
    characteristic_curves(&fam, measure, grid, &[0.0])
        .unwrap()
        .min_curve
}

#[test]
fn non_convexity_witnesses() {
    let grid = p_grid(401).unwrap();
    let t1 = family_curve(MeasureKind::T1, &PowerFactors::default(), &grid);
    let bad = convexity_violations(&grid, &t1, 1e-12);
    assert!(bad.iter().any(|&i| grid[i] > 0.0 && grid[i] < 0.279 + 0.05));
    assert!(bad.iter().any(|&i| grid[i] > 0.936 - 0.05 && grid[i] < 1.0));

    let factors = PowerFactors {
        nu2: Power::Infinite,
        ..PowerFactors::default()
    };
    let n2 = family_curve(MeasureKind::N2, &factors, &grid);
    let bad = convexity_violations(&grid, &n2, 1e-12);
    assert!(bad.iter().any(|&i| grid[i] > 0.0 && grid[i] < 0.25 + 0.05));
    assert!(bad.iter().any(|&i| grid[i] > 0.95 - 0.05 && grid[i] < 1.0));
}

#[test]
fn negativity_curves_do_not_depend_on_phase() {
    let fam = Rank2Family::z4();
    let grid = p_grid(21).unwrap();
    let phis = phi_grid(12).unwrap();
    for kind in [MeasureKind::N1, MeasureKind::N2] {
        let measure = |s: &PureState| {
            monogamy_measure(s, kind, &PowerFactors::default(), &Tolerances::default())
        };
        let set = characteristic_curves(&fam, measure, &grid, &phis).unwrap();
        assert!(set.max_phi_spread() < 1e-9);
    }
}

#[test]
fn roof_values_are_sandwiched() {
    let grid = p_grid(2001).unwrap();
    let phis = [0.0, 1.3];
    let (s1, s2) = nu_star();
    for scenario in [
        RoofScenario::T1,
        RoofScenario::N1(Power::Finite(s1)),
        RoofScenario::N1(Power::Infinite),
        RoofScenario::N2(Power::Finite(s2)),
        RoofScenario::N2(Power::Infinite),
    ] {
        let solver = RoofSolver::new(scenario).unwrap();
        let res = solver.result(&grid, &phis, Some(0.5)).unwrap();
        assert!(!res.conjectured);
        assert!(
            res.max_envelope_excess() < 1e-6,
            "{}: {}",
            res.scenario,
            res.max_envelope_excess()
        );
        assert!(
            res.max_curve_excess() < 1e-9,
            "{}: {}",
            res.scenario,
            res.max_curve_excess()
        );
        let values: Vec<f64> = res.samples.iter().map(|s| s.value).collect();
        assert!(
            convexity_violations(&grid, &values, 1e-8).is_empty(),
            "{} not convex",
            res.scenario
        );
        let mins: Vec<f64> = res.samples.iter().map(|s| s.min_curve).collect();
        let env = lower_convex_envelope(&grid, &mins);
        for &i in &env.vertices {
            assert!((values[i] - env.values[i]).abs() < 1e-6);
        }
        assert_eq!(res.point.as_ref().unwrap().p, 0.5);
    }
}
