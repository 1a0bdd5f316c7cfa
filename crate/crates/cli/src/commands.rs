use anyhow::{anyhow, bail, Context as _};
use serde_json::{json, Value};
use tangle_core::monogamy::{ensemble_measure, Power, PowerFactors};
use tangle_core::named::{build, StateName};
use tangle_core::roof::appendix::{appendix_conjectured_roof, appendix_zero_pair};
use tangle_core::roof::family::{characteristic_curves, p_grid, phi_grid};
use tangle_core::roof::scenarios::MemberState;
use tangle_core::roof::verify::verify_decomposition_with;
use tangle_core::roof::{
    appendix_zeros, ConvexRoofResult, Rank2Family, RoofPoint, RoofScenario, RoofSolver,
};
use tangle_core::{PureState, Tolerances};

use crate::cli::{parse_power, parse_state, Common, Format, RoofKind, TableId};
use crate::format::{json as to_json, num, CsvTable};
use crate::measures::Measure;
use crate::tables;

pub const SCAN_GRID_P: u32 = 101;
pub const SCAN_GRID_PHI: u32 = 8;
pub const ROOF_GRID_P: u32 = 201;
pub const ROOF_GRID_PHI: u32 = 8;
pub const TAU3_GRID_P: u32 = 401;
pub const TAU3_GRID_PHI: u32 = 720;

/// Rendered output and the process status it should end with.
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }

    fn checked(text: String, pass: bool) -> Self {
        Self {
            text,
            status: if pass { 0 } else { 1 },
        }
    }
}

pub struct Context {
    pub tol: Tolerances,
    pub common: Common,
}

impl Context {
    fn factors(&self) -> anyhow::Result<PowerFactors> {
        let mut f = PowerFactors::default();
        if let Some(s) = &self.common.nu1 {
            f.nu1 = parse_power(s, 1)?;
        }
        if let Some(s) = &self.common.nu2 {
            f.nu2 = parse_power(s, 2)?;
        }
        if let Some(mu) = self.common.mu3 {
            f.mu3 = mu;
        }
        Ok(f)
    }

    fn params(&self, name: StateName) -> Option<(f64, f64)> {
        if name.is_family() {
            self.common.p.map(|p| (p, self.common.phi.unwrap_or(0.0)))
        } else {
            None
        }
    }

    fn state(&self, positional: Option<String>) -> anyhow::Result<(StateName, PureState)> {
        let name = positional
            .or_else(|| self.common.state.clone())
            .ok_or_else(|| anyhow!("no state given (use --state NAME)"))?;
        let name = parse_state(&name)?;
        let psi = build(name, self.params(name)).with_context(|| format!("building {name}"))?;
        Ok((name, psi))
    }

    fn grids(&self, default_p: u32, default_phi: u32) -> anyhow::Result<(Vec<f64>, Vec<f64>)> {
        let np = self.common.grid_p.unwrap_or(default_p);
        let nphi = self.common.grid_phi.unwrap_or(default_phi);
        Ok((p_grid(np as usize)?, phi_grid(nphi as usize)?))
    }
}

fn power_label(p: Power) -> String {
    match p {
        Power::Finite(x) => num(x),
        Power::Infinite => "inf".into(),
    }
}

fn factor_meta(t: &mut CsvTable, f: &PowerFactors) {
    t.meta("nu1", power_label(f.nu1))
        .meta("nu2", power_label(f.nu2))
        .meta("mu3", num(f.mu3));
}

fn factor_json(f: &PowerFactors) -> Value {
    json!({"nu1": power_label(f.nu1), "nu2": power_label(f.nu2), "mu3": f.mu3})
}

pub fn state(ctx: &Context, name: Option<String>) -> anyhow::Result<Outcome> {
    let (name, psi) = ctx.state(name)?;
    let n = psi.n_qubits();
    let rows: Vec<(String, f64, f64)> = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("{i:0n$b}"), a.re, a.im))
        .collect();
    let text = match ctx.common.format {
        Format::Csv => {
            let mut t = CsvTable::new(&["basis", "re", "im"]);
            t.meta("state", name).meta("qubits", n);
            for (b, re, im) in rows {
                t.row(vec![b, num(re), num(im)]);
            }
            t.render()?
        }
        Format::Json => {
            let amps: Vec<_> = rows
                .into_iter()
                .map(|(b, re, im)| json!({"basis": b, "re": re, "im": im}))
                .collect();
            to_json(
                json!({"state": name.as_str(), "qubits": n, "params": ctx.params(name), "amplitudes": amps}),
            )?
        }
    };
    Ok(Outcome::ok(text))
}

pub fn measure(ctx: &Context, measure: Option<String>) -> anyhow::Result<Outcome> {
    let (name, psi) = ctx.state(None)?;
    let factors = ctx.factors()?;
    let wanted = match measure.or_else(|| ctx.common.measure.clone()) {
        Some(m) => {
            let m = Measure::parse(&m)?;
            m.check(psi.n_qubits())?;
            vec![m]
        }
        None => Measure::ALL
            .into_iter()
            .filter(|m| m.applies_to(psi.n_qubits()))
            .collect(),
    };
    let mut values = Vec::new();
    for m in wanted {
        let v = m.eval_or_nan(&psi, &factors, &ctx.tol)?;
        if v.is_nan() {
            eprintln!("note: {} is not computable for {name}", m.name());
        }
        values.push((m.name(), v));
    }
    let text = match ctx.common.format {
        Format::Csv => {
            let mut t = CsvTable::new(&["measure", "value"]);
            t.meta("state", name);
            if let Some((p, phi)) = ctx.params(name) {
                t.meta("p", num(p)).meta("phi", num(phi));
            }
            factor_meta(&mut t, &factors);
            for (m, v) in values {
                t.row(vec![m.to_string(), num(v)]);
            }
            t.render()?
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> = values
                .into_iter()
                .map(|(m, v)| (m.to_string(), json!(v)))
                .collect();
            to_json(json!({
                "state": name.as_str(),
                "params": ctx.params(name),
                "factors": factor_json(&factors),
                "values": map,
            }))?
        }
    };
    Ok(Outcome::ok(text))
}

pub fn table(ctx: &Context, which: TableId) -> anyhow::Result<Outcome> {
    let report = match which {
        TableId::One => tables::table_one(ctx.tol.table)?,
        TableId::Two => {
            let factors = ctx.factors()?;
            let label = |s: &Option<String>| s.clone().unwrap_or_else(|| "star".into());
            let powers = if ctx.common.nu1.is_some() || ctx.common.nu2.is_some() {
                vec![(
                    (label(&ctx.common.nu1), factors.nu1),
                    (label(&ctx.common.nu2), factors.nu2),
                )]
            } else {
                ["star", "2", "inf"]
                    .into_iter()
                    .map(|s| {
                        Ok((
                            (s.to_string(), parse_power(s, 1)?),
                            (s.to_string(), parse_power(s, 2)?),
                        ))
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?
            };
            tables::table_two(ctx.tol.table, &factors, &powers)?
        }
        TableId::Three => tables::table_three()?,
    };
    Ok(Outcome::checked(
        report.render(ctx.common.format)?,
        report.pass(),
    ))
}

fn family(name: &str) -> anyhow::Result<(StateName, Rank2Family)> {
    let name = parse_state(name)?;
    let fam = match name {
        StateName::Z3 => Rank2Family::z3(),
        StateName::Z4 => Rank2Family::z4(),
        StateName::ZApp => Rank2Family::z_app(),
        other => bail!("{other} is not a family (expected Z3, Z4 or Zapp)"),
    };
    Ok((name, fam))
}

pub fn scan(
    ctx: &Context,
    fam: Option<String>,
    measure: Option<String>,
) -> anyhow::Result<Outcome> {
    let fam = fam
        .or_else(|| ctx.common.state.clone())
        .ok_or_else(|| anyhow!("no family given (Z3, Z4 or Zapp)"))?;
    let (name, fam) = family(&fam)?;
    let m = measure
        .or_else(|| ctx.common.measure.clone())
        .ok_or_else(|| anyhow!("no measure given (use --measure NAME)"))?;
    let m = Measure::parse(&m)?;
    m.check(fam.n_qubits())?;
    let factors = ctx.factors()?;
    let (ps, phis) = ctx.grids(SCAN_GRID_P, SCAN_GRID_PHI)?;
    let set = characteristic_curves(&fam, |s| m.eval_or_nan(s, &factors, &ctx.tol), &ps, &phis)?;
    let unsupported = set.values.iter().flatten().filter(|v| v.is_nan()).count();
    let text = match ctx.common.format {
        Format::Csv => {
            let mut t = CsvTable::new(&["p", "phi", "value"]);
            t.meta("family", name)
                .meta("measure", m.name())
                .meta("grid_p", ps.len())
                .meta("grid_phi", phis.len());
            factor_meta(&mut t, &factors);
            t.meta("unsupported", unsupported);
            for (p, row) in ps.iter().zip(&set.values) {
                for (phi, v) in phis.iter().zip(row) {
                    t.row(vec![num(*p), num(*phi), num(*v)]);
                }
            }
            t.render()?
        }
        Format::Json => to_json(json!({
            "family": name.as_str(),
            "measure": m.name(),
            "factors": factor_json(&factors),
            "unsupported": unsupported,
            "p_grid": ps,
            "phi_grid": phis,
            "values": set.values,
            "min_curve": set.min_curve,
        }))?,
    };
    Ok(Outcome::ok(text))
}

fn scenario(ctx: &Context, kind: RoofKind, nu: &Option<String>) -> anyhow::Result<RoofScenario> {
    let pick = |flag: &Option<String>, which: u8| -> anyhow::Result<Power> {
        parse_power(nu.as_deref().or(flag.as_deref()).unwrap_or("star"), which)
    };
    Ok(match kind {
        RoofKind::T1 => RoofScenario::T1,
        RoofKind::N1 => RoofScenario::N1(pick(&ctx.common.nu1, 1)?),
        RoofKind::N2 => RoofScenario::N2(pick(&ctx.common.nu2, 2)?),
        RoofKind::Tau3 => bail!("the three-tangle envelope has no scenario power"),
    })
}

struct Check {
    max_deviation: f64,
    average: Option<f64>,
    ok: bool,
}

fn check_point(ctx: &Context, solver: &RoofSolver, point: &RoofPoint) -> anyhow::Result<Check> {
    let e = point.ensemble()?;
    let target = Rank2Family::z4().mixture(point.p)?;
    let v = verify_decomposition_with(&e, &target, ctx.tol.decomposition)?;
    let s = solver.scenario();
    let avg = ensemble_measure(&e, s.kind(), &s.factors(), &ctx.tol)?;
    Ok(Check {
        max_deviation: v.max_deviation,
        average: Some(avg),
        ok: v.ok && (avg - point.value).abs() <= ctx.tol.decomposition,
    })
}

fn check_json(c: &Check) -> Value {
    json!({"ok": c.ok, "max_deviation": c.max_deviation, "average": c.average})
}

fn member_label(state: &MemberState) -> String {
    match *state {
        MemberState::Ghz4 => "GHZ4".into(),
        MemberState::W4 => "W4".into(),
        MemberState::Z4 { p, phi } => format!("Z4(p={}, phi={})", num(p), num(phi)),
    }
}

pub fn roof(ctx: &Context, kind: RoofKind, nu: Option<String>) -> anyhow::Result<Outcome> {
    let (result, check) = if kind == RoofKind::Tau3 {
        let (ps, phis) = ctx.grids(TAU3_GRID_P, TAU3_GRID_PHI)?;
        (appendix_conjectured_roof(&ps, &phis)?, None)
    } else {
        let solver = RoofSolver::new(scenario(ctx, kind, &nu)?)?;
        let (ps, phis) = ctx.grids(ROOF_GRID_P, ROOF_GRID_PHI)?;
        let res = solver.result(&ps, &phis, ctx.common.p)?;
        let check = res
            .point
            .as_ref()
            .map(|pt| check_point(ctx, &solver, pt))
            .transpose()?;
        (res, check)
    };
    let text = match ctx.common.format {
        Format::Csv => roof_csv(&result, check.as_ref())?,
        Format::Json => {
            let mut v = serde_json::to_value(&result)?;
            v["verification"] = check.as_ref().map_or(Value::Null, check_json);
            to_json(v)?
        }
    };
    Ok(Outcome::ok(text))
}

fn roof_csv(res: &ConvexRoofResult, check: Option<&Check>) -> anyhow::Result<String> {
    let mut t = CsvTable::new(&["p", "value", "min_curve", "envelope"]);
    t.meta("scenario", &res.scenario)
        .meta("conjectured", res.conjectured);
    let bps: Vec<String> = res.breakpoints.iter().map(|&b| num(b)).collect();
    t.meta("breakpoints", bps.join(" "));
    for s in &res.segments {
        t.meta(
            "segment",
            format!("[{}, {}] {}", num(s.start), num(s.end), s.description),
        );
    }
    if let Some(pt) = &res.point {
        t.meta("point.p", num(pt.p))
            .meta("point.value", num(pt.value));
        for m in &pt.members {
            t.meta(
                "point.member",
                format!("{} {}", num(m.weight), member_label(&m.state)),
            );
        }
    }
    if let Some(c) = check {
        t.meta("verification.ok", c.ok)
            .meta("verification.max_deviation", num(c.max_deviation));
    }
    for s in &res.samples {
        t.row(vec![
            num(s.p),
            num(s.value),
            num(s.min_curve),
            num(s.envelope),
        ]);
    }
    t.render()
}

pub fn verify(ctx: &Context, kind: RoofKind, nu: Option<String>) -> anyhow::Result<Outcome> {
    let (label, p, value, members, check) = if kind == RoofKind::Tau3 {
        let (e, target) = appendix_zero_pair()?;
        let v = verify_decomposition_with(&e, &target, ctx.tol.decomposition)?;
        let members: Vec<(f64, String)> = appendix_zeros()[2..]
            .iter()
            .zip(e.members())
            .map(|(z, (w, _))| (*w, format!("Z_app(p={}, phi={})", num(z.p), num(z.phi))))
            .collect();
        let check = Check {
            max_deviation: v.max_deviation,
            average: None,
            ok: v.ok,
        };
        let p3 = appendix_zeros().last().map_or(f64::NAN, |z| z.p);
        (
            "tau3-appendix zero pair".to_string(),
            p3,
            0.0,
            members,
            check,
        )
    } else {
        let p = ctx.common.p.ok_or_else(|| anyhow!("verify needs --p"))?;
        let solver = RoofSolver::new(scenario(ctx, kind, &nu)?)?;
        let point = solver.point(p)?;
        let check = check_point(ctx, &solver, &point)?;
        let members = point
            .members
            .iter()
            .map(|m| (m.weight, member_label(&m.state)))
            .collect();
        (solver.scenario().label(), p, point.value, members, check)
    };
    let text = match ctx.common.format {
        Format::Csv => {
            let mut t = CsvTable::new(&["quantity", "value"]);
            t.meta("scenario", &label);
            for (w, m) in &members {
                t.meta("member", format!("{} {m}", num(*w)));
            }
            t.row(vec!["p".into(), num(p)]);
            t.row(vec!["value".into(), num(value)]);
            if let Some(a) = check.average {
                t.row(vec!["average".into(), num(a)]);
            }
            t.row(vec!["max_deviation".into(), num(check.max_deviation)]);
            t.row(vec!["ok".into(), check.ok.to_string()]);
            t.render()?
        }
        Format::Json => to_json(json!({
            "scenario": label,
            "p": p,
            "value": value,
            "members": members.iter().map(|(w, m)| json!({"weight": w, "state": m})).collect::<Vec<_>>(),
            "verification": check_json(&check),
        }))?,
    };
    Ok(Outcome::checked(text, check.ok))
}
