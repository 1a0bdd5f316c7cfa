use std::f64::consts::PI;

use serde_json::json;
use tangle_core::monogamy::{n1, n2, t1, t2, Power, PowerFactors};
use tangle_core::multipartite::{f_invariants, three_tangle_pure};
use tangle_core::named::{ghz4, phi2, phi3, w4, wtilde4, z_app};
use tangle_core::roof::appendix::phi0;
use tangle_core::roof::appendix_zeros;

use crate::cli::{Format, TableId};
use crate::format::{json as to_json, num, CsvTable};

/// The reference zeros are printed to five or six digits.
pub const PRINTED_ZERO_TOL: f64 = 1e-4;

pub struct Cell {
    pub row: String,
    pub column: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl Cell {
    fn new(
        row: &str,
        column: impl Into<String>,
        value: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            row: row.to_string(),
            column: column.into(),
            value,
            expected,
            tolerance,
        }
    }

    pub fn deviation(&self) -> f64 {
        (self.value - self.expected).abs()
    }

    pub fn pass(&self) -> bool {
        self.deviation() <= self.tolerance
    }
}

pub struct TableReport {
    pub id: TableId,
    pub cells: Vec<Cell>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.cells.iter().all(Cell::pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.cells.iter().map(Cell::deviation).fold(0.0, f64::max)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        let name = match self.id {
            TableId::One => "I",
            TableId::Two => "II",
            TableId::Three => "III",
        };
        match format {
            Format::Csv => {
                let mut t = CsvTable::new(&[
                    "row",
                    "column",
                    "value",
                    "expected",
                    "deviation",
                    "tolerance",
                    "pass",
                ]);
                t.meta("table", name)
                    .meta("cells", self.cells.len())
                    .meta("max_deviation", num(self.max_deviation()))
                    .meta("pass", self.pass());
                for c in &self.cells {
                    t.row(vec![
                        c.row.clone(),
                        c.column.clone(),
                        num(c.value),
                        num(c.expected),
                        num(c.deviation()),
                        num(c.tolerance),
                        c.pass().to_string(),
                    ]);
                }
                t.render()
            }
            Format::Json => {
                let cells: Vec<_> = self
                    .cells
                    .iter()
                    .map(|c| {
                        json!({
                            "row": c.row,
                            "column": c.column,
                            "value": c.value,
                            "expected": c.expected,
                            "deviation": c.deviation(),
                            "tolerance": c.tolerance,
                            "pass": c.pass(),
                        })
                    })
                    .collect();
                to_json(json!({
                    "table": name,
                    "max_deviation": self.max_deviation(),
                    "pass": self.pass(),
                    "cells": cells,
                }))
            }
        }
    }
}

pub fn table_one(tol: f64) -> anyhow::Result<TableReport> {
    let rows = [
        ("GHZ4", ghz4(), [1.0, 1.0, 0.5]),
        ("Phi2", phi2(), [8.0 / 9.0, 0.0, 0.0]),
        ("Phi3", phi3(), [0.0, 0.0, 1.0]),
        ("Wtilde4", wtilde4(), [0.0, 0.0, 0.0]),
    ];
    let mut cells = Vec::new();
    for (name, psi, want) in rows {
        let f = f_invariants(&psi)?;
        for ((col, got), w) in [("F1", f.f1), ("F2", f.f2), ("F3", f.f3)]
            .into_iter()
            .zip(want)
        {
            cells.push(Cell::new(name, col, got, w, tol));
        }
    }
    Ok(TableReport {
        id: TableId::One,
        cells,
    })
}

fn pow(base: f64, nu: Power) -> f64 {
    match nu {
        Power::Finite(x) => base.powf(x),
        Power::Infinite => 0.0,
    }
}

/// A power and the label used for it in column names.
pub type PowerColumn = (String, Power);

/// Evaluates the table at each `(nu1, nu2)` pair of `powers`.
pub fn table_two(
    tol: f64,
    factors: &PowerFactors,
    powers: &[(PowerColumn, PowerColumn)],
) -> anyhow::Result<TableReport> {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let a1 = (3.0 + s3 - 3.0 * s2) / 2.0;
    let a2 = 1.5 * (s2 - 1.0);
    let states = [
        ("GHZ4", ghz4()),
        ("Phi2", phi2()),
        ("Phi3", phi3()),
        ("W4", w4()),
    ];
    let mut cells = Vec::new();
    for (name, psi) in &states {
        let want = if *name == "W4" { 0.0 } else { 1.0 };
        cells.push(Cell::new(name, "t1", t1(psi)?, want, tol));
        cells.push(Cell::new(name, "t2", t2(psi, factors)?, want, tol));
        for ((l1, nu1), (l2, nu2)) in powers {
            let (e1, e2) = match *name {
                "GHZ4" => (1.0, 1.0),
                "Phi2" => (
                    1.0 - 3.0 * pow(2.0 / 3.0, *nu1),
                    1.0 - 3.0 * pow(4.0 / 9.0, *nu2),
                ),
                "Phi3" => (-1.0, -1.0),
                _ => (
                    a1 - 3.0 * pow((3.0 - 2.0 * s2) / 2.0, *nu1),
                    a2 - 3.0 * pow((4.0 * s2 - 5.0) / 4.0, *nu2),
                ),
            };
            cells.push(Cell::new(
                name,
                format!("n1(nu1={l1})"),
                n1(psi, *nu1)?,
                e1,
                tol,
            ));
            cells.push(Cell::new(
                name,
                format!("n2(nu2={l2})"),
                n2(psi, *nu2)?,
                e2,
                tol,
            ));
        }
    }
    Ok(TableReport {
        id: TableId::Two,
        cells,
    })
}

pub fn table_three() -> anyhow::Result<TableReport> {
    let zeros = appendix_zeros();
    let expected = [
        ("p1", 0.0163588, PI),
        ("p2", 0.5, 0.0),
        ("p3", 0.74182, PI - 1.27672),
        ("p3", 0.74182, PI + 1.27672),
    ];
    anyhow::ensure!(zeros.len() == expected.len(), "found {} zeros", zeros.len());
    let mut cells = vec![Cell::new("phi0", "phi", phi0(), 1.27672, PRINTED_ZERO_TOL)];
    for (z, (label, p, phi)) in zeros.iter().zip(expected) {
        cells.push(Cell::new(label, "p", z.p, p, PRINTED_ZERO_TOL));
        cells.push(Cell::new(label, "phi", z.phi, phi, PRINTED_ZERO_TOL));
        let tau = three_tangle_pure(&z_app(z.p, z.phi)?)?.0;
        cells.push(Cell::new(label, "tau3", tau, 0.0, PRINTED_ZERO_TOL));
    }
    Ok(TableReport {
        id: TableId::Three,
        cells,
    })
}
