// Copyright 2026 The qpair Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV and JSON writers. Output is a pure function of the result: CSV numbers
//! carry 17 significant digits, JSON numbers use the shortest exact form.

use serde_json::{json, Map, Value as Json};

use crate::explore::{Evaluation, OptimizePreset, Row, RowKey, SweepResult, SCHEMA_VERSION};
use crate::params::SystemParams;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn opt(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Text(s) => json!(s),
            _ => Json::Null,
        }
    }
}

/// `d.dddddddddddddddde±x`; non-finite values become `nan`, `inf`, `-inf`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn json_rows(&self) -> Json {
        Json::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Json> =
                        self.header.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect();
                    Json::Object(obj)
                })
                .collect(),
        )
    }
}

pub const STEADY_HEADER: &[&str] = &[
    "gamma1", "pump1", "gamma2", "pump2", "Gamma1", "r1", "Gamma2", "r2", "Delta", "deph1", "deph2", "n1", "n2",
    "n1n2", "n12_re", "n12_im", "C", "SL", "delta", "g2", "R1", "R2", "Rpsi", "Rt1", "Rt2", "Rtpsi", "Rt",
];
pub const SAMPLE_HEADER: &[&str] =
    &["r1", "r2", "Gamma1", "Gamma2", "Delta", "deph1", "deph2", "n1", "n2", "C", "SL", "delta", "err"];
pub const GRID_HEADER: &[&str] = &["Gamma1", "Gamma2", "C", "SL", "delta", "err"];
pub const FAMILY_HEADER: &[&str] = &["alpha", "C", "SL", "delta", "Rt1", "Rt2", "Rtpsi", "Rt"];
pub const DEPHASING_HEADER: &[&str] = &["gamma_d", "Gamma", "C", "delta", "err"];
pub const MAXIMA_HEADER: &[&str] = &["gamma_d", "Gamma_Cmax", "Cmax", "Gamma_deltamax", "deltamax"];
pub const OPTIMIZE_HEADER: &[&str] = &["preset", "Gamma1", "Gamma2", "r1", "r2", "Delta", "C", "SL", "delta"];

fn err_cell(row: &Row) -> Cell {
    match &row.outcome {
        Ok(_) => Cell::Empty,
        Err(e) => Cell::Text(e.tag().to_string()),
    }
}

/// `C, S_L, δ` of a row, empty when it failed.
fn metrics(row: &Row) -> [Cell; 3] {
    match row.report() {
        Some(r) => [Cell::Num(r.concurrence), Cell::Num(r.linear_entropy), Cell::Num(r.delta)],
        None => [Cell::Empty, Cell::Empty, Cell::Empty],
    }
}

pub fn steady_table(p: &SystemParams, e: &Evaluation) -> Table {
    let (q1, q2) = (p.first(), p.second());
    let o = &e.observables;
    let r = &e.report;
    let w = &r.weights;
    let row = vec![
        Cell::Num(q1.decay),
        Cell::Num(q1.pump),
        Cell::Num(q2.decay),
        Cell::Num(q2.pump),
        Cell::Num(q1.broadening()),
        Cell::opt(q1.nature()),
        Cell::Num(q2.broadening()),
        Cell::opt(q2.nature()),
        Cell::Num(p.detuning),
        Cell::Num(q1.dephasing),
        Cell::Num(q2.dephasing),
        Cell::Num(o.n1),
        Cell::Num(o.n2),
        Cell::Num(o.n1n2),
        Cell::Num(o.n12.re),
        Cell::Num(o.n12.im),
        Cell::Num(r.concurrence),
        Cell::Num(r.linear_entropy),
        Cell::Num(r.delta),
        Cell::opt(r.g2_cross),
        Cell::Num(w.r1),
        Cell::Num(w.r2),
        Cell::Num(w.r_psi),
        Cell::Num(w.rt1),
        Cell::Num(w.rt2),
        Cell::Num(w.rt_psi),
        Cell::Num(w.rt),
    ];
    Table { header: STEADY_HEADER, rows: vec![row] }
}

pub fn steady_json(p: &SystemParams, e: &Evaluation) -> String {
    let table = steady_table(p, e);
    let cols = |names: &[&str]| -> Json {
        let obj: Map<String, Json> = names
            .iter()
            .map(|n| {
                let i = STEADY_HEADER.iter().position(|h| h == n).expect("steady column");
                (n.to_string(), table.rows[0][i].json())
            })
            .collect();
        Json::Object(obj)
    };
    let m = e.rho.matrix();
    let part = |f: fn(&num_complex::Complex64) -> f64| -> Json {
        Json::Array((0..4).map(|i| Json::Array((0..4).map(|j| json!(f(&m[(i, j)]))).collect())).collect())
    };
    let doc = json!({
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "schema_version": SCHEMA_VERSION,
            "seed": Json::Null,
            "spec": { "mode": "steady", "params": p },
        },
        "rows": [{
            "params": cols(&STEADY_HEADER[..11]),
            "rho_re": part(|z| z.re),
            "rho_im": part(|z| z.im),
            "observables": cols(&["n1", "n2", "n1n2", "n12_re", "n12_im"]),
            "metrics": cols(&STEADY_HEADER[16..]),
        }],
    });
    pretty(&doc)
}

fn params_cells(p: &SystemParams) -> Vec<Cell> {
    vec![
        Cell::opt(p.first().nature()),
        Cell::opt(p.second().nature()),
        Cell::Num(p.first().broadening()),
        Cell::Num(p.second().broadening()),
        Cell::Num(p.detuning),
        Cell::Num(p.first().dephasing),
        Cell::Num(p.second().dephasing),
    ]
}

pub fn sample_table(result: &SweepResult) -> Table {
    let rows = result
        .rows
        .iter()
        .map(|row| {
            let mut cells = params_cells(&row.params);
            match &row.outcome {
                Ok(e) => cells.extend([Cell::Num(e.observables.n1), Cell::Num(e.observables.n2)]),
                Err(_) => cells.extend([Cell::Empty, Cell::Empty]),
            }
            cells.extend(metrics(row));
            cells.push(err_cell(row));
            cells
        })
        .collect();
    Table { header: SAMPLE_HEADER, rows }
}

pub fn grid_table(result: &SweepResult) -> Table {
    let rows = result
        .rows
        .iter()
        .map(|row| {
            let RowKey::Grid { gamma1, gamma2 } = row.key else { unreachable!("grid rows carry grid keys") };
            let mut cells = vec![Cell::Num(gamma1), Cell::Num(gamma2)];
            cells.extend(metrics(row));
            cells.push(err_cell(row));
            cells
        })
        .collect();
    Table { header: GRID_HEADER, rows }
}

pub fn family_table(result: &SweepResult) -> Table {
    let rows = result
        .rows
        .iter()
        .map(|row| {
            let RowKey::Alpha(alpha) = row.key else { unreachable!("family rows carry alpha keys") };
            let mut cells = vec![Cell::Num(alpha)];
            cells.extend(metrics(row));
            match row.report() {
                Some(r) => {
                    let w = &r.weights;
                    cells.extend([Cell::Num(w.rt1), Cell::Num(w.rt2), Cell::Num(w.rt_psi), Cell::Num(w.rt)]);
                }
                None => cells.extend(std::iter::repeat_n(Cell::Empty, 4)),
            }
            cells
        })
        .collect();
    Table { header: FAMILY_HEADER, rows }
}

pub fn dephasing_table(result: &SweepResult) -> Table {
    let rows = result
        .rows
        .iter()
        .map(|row| {
            let RowKey::Dephasing { gamma_d, gamma } = row.key else { unreachable!("dephasing rows carry their key") };
            let [c, _, delta] = metrics(row);
            vec![Cell::Num(gamma_d), Cell::Num(gamma), c, delta, err_cell(row)]
        })
        .collect();
    Table { header: DEPHASING_HEADER, rows }
}

pub fn maxima_table(result: &SweepResult) -> Table {
    let rows = result
        .maxima
        .iter()
        .map(|m| {
            vec![
                Cell::Num(m.gamma_d),
                Cell::Num(m.gamma_at_c_max),
                Cell::Num(m.c_max),
                Cell::Num(m.gamma_at_delta_max),
                Cell::Num(m.delta_max),
            ]
        })
        .collect();
    Table { header: MAXIMA_HEADER, rows }
}

pub fn optimize_table(preset: OptimizePreset, result: &SweepResult) -> Table {
    let name = match preset {
        OptimizePreset::All => "all",
        OptimizePreset::Thermal => "thermal",
        OptimizePreset::Opposite => "opposite",
        OptimizePreset::ThermalUnequal => "thermal_unequal",
    };
    let rows = result
        .rows
        .iter()
        .map(|row| {
            let p = &row.params;
            let mut cells = vec![
                Cell::Text(name.to_string()),
                Cell::Num(p.first().broadening()),
                Cell::Num(p.second().broadening()),
                Cell::opt(p.first().nature()),
                Cell::opt(p.second().nature()),
                Cell::Num(p.detuning),
            ];
            cells.extend(metrics(row));
            cells
        })
        .collect();
    Table { header: OPTIMIZE_HEADER, rows }
}

/// `{meta, rows}` document for a sweep; dephasing sweeps add `maxima`.
pub fn sweep_json(result: &SweepResult, table: &Table) -> String {
    let mut doc = Map::new();
    doc.insert("meta".into(), serde_json::to_value(&result.meta).expect("metadata serializes"));
    doc.insert("rows".into(), table.json_rows());
    if !result.maxima.is_empty() {
        doc.insert("maxima".into(), maxima_table(result).json_rows());
    }
    pretty(&Json::Object(doc))
}

fn pretty(doc: &Json) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::evaluate;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_number(0.1), "1.0000000000000001e-1");
        assert_eq!(format_number(1.0), "1.0000000000000000e0");
        assert_eq!(format_number(f64::NAN), "nan");
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5e-7] {
            assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn steady_outputs() {
        let p = SystemParams::opposite(1.0, 0.0);
        let e = evaluate(&p).unwrap();
        let csv = steady_table(&p, &e).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap().split(',').count(), STEADY_HEADER.len());
        assert_eq!(lines.next().unwrap().split(',').count(), STEADY_HEADER.len());
        assert!(!csv.contains('\r'));

        let doc: Json = serde_json::from_str(&steady_json(&p, &e)).unwrap();
        let row = &doc["rows"][0];
        for key in ["params", "rho_re", "rho_im", "observables", "metrics"] {
            assert!(!row[key].is_null(), "{key}");
        }
        assert_eq!(row["rho_im"][1][2].as_f64().unwrap(), e.rho.coherence().im);
        assert_eq!(row["metrics"]["C"].as_f64().unwrap(), 0.0);
    }
}
