//! Output rendering: aligned tables for people, json and csv for
//! machines. Exact values appear as reduced fraction strings and float
//! values with 17 significant digits in every format, so json and csv
//! carry identical numeric text.

use gramlaw::harness::{CellOutcome, SweepSummary};
use gramlaw::{DiagonalLabel, FaceLabel, Scalar, VerificationReport};

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn align(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    emit(&mut out, &header_cells);
    for row in rows {
        emit(&mut out, row);
    }
    out
}

fn csv_lines(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = headers.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

const REPORT_COLUMNS: [&str; 14] = [
    "n",
    "ambient",
    "k",
    "faces",
    "diagonals",
    "face_sq_sum",
    "diag_sq_sum",
    "face_mean_sq",
    "diag_mean_sq",
    "ratio_sq",
    "expected",
    "residual",
    "mode",
    "passed",
];

fn report_row<S: Scalar>(r: &VerificationReport<S>, rel_tol: f64) -> Vec<String> {
    vec![
        r.intrinsic_dim.to_string(),
        r.ambient_dim.to_string(),
        r.k.to_string(),
        r.face_count.to_string(),
        r.diagonal_count.to_string(),
        r.face_sq_sum.render(),
        r.diag_sq_sum.render(),
        r.face_mean_sq.render(),
        r.diag_mean_sq.render(),
        r.ratio_sq.render(),
        r.expected.to_string(),
        r.residual.render(),
        r.mode.to_string(),
        r.passed(rel_tol).to_string(),
    ]
}

pub fn reports<S: Scalar>(reports: &[VerificationReport<S>], rel_tol: f64, format: Format) -> String {
    match format {
        Format::Table => {
            // the human view adds the observed ratio next to its square
            let headers = [
                "n", "k", "faces", "diagonals", "face_mean_sq", "diag_mean_sq", "ratio_sq",
                "ratio", "expected", "residual", "status",
            ];
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.intrinsic_dim.to_string(),
                        r.k.to_string(),
                        r.face_count.to_string(),
                        r.diagonal_count.to_string(),
                        r.face_mean_sq.render(),
                        r.diag_mean_sq.render(),
                        r.ratio_sq.render(),
                        format!("{:.12}", r.ratio_sq.approx_f64().sqrt()),
                        r.expected.to_string(),
                        r.residual.render(),
                        if r.passed(rel_tol) { "ok" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            align(&headers, &rows)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports.iter().map(|r| report_row(r, rel_tol)).collect();
            csv_lines(&REPORT_COLUMNS, &rows)
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.intrinsic_dim,
                        "ambient": r.ambient_dim,
                        "k": r.k,
                        "faces": r.face_count,
                        "diagonals": r.diagonal_count,
                        "face_sq_sum": r.face_sq_sum.render(),
                        "diag_sq_sum": r.diag_sq_sum.render(),
                        "face_mean_sq": r.face_mean_sq.render(),
                        "diag_mean_sq": r.diag_mean_sq.render(),
                        "ratio_sq": r.ratio_sq.render(),
                        "expected": r.expected,
                        "residual": r.residual.render(),
                        "mode": r.mode.to_string(),
                        "passed": r.passed(rel_tol),
                    })
                })
                .collect();
            let doc = serde_json::json!({ "reports": items });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("static shape"))
        }
    }
}

fn join_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub struct FaceListing<S> {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<(FaceLabel, Option<S>)>,
    pub count: u128,
}

impl<S: Scalar> FaceListing<S> {
    fn closed_form(&self) -> String {
        format!("2^{} * C({},{})", self.n - self.k, self.n, self.k)
    }

    fn count_line(&self) -> String {
        format!("count: {} = {}", self.count, self.closed_form())
    }

    pub fn render(&self, format: Format) -> String {
        assert_eq!(self.rows.len() as u128, self.count, "face census drifted");
        match format {
            Format::Table => {
                let mut headers = vec!["face"];
                if self.rows.iter().any(|(_, m)| m.is_some()) {
                    headers.push("measure_sq");
                }
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|(label, m)| {
                        let mut row = vec![label.to_string()];
                        if let Some(m) = m {
                            row.push(m.render());
                        }
                        row
                    })
                    .collect();
                let mut out = align(&headers, &rows);
                out.push_str(&self.count_line());
                out.push('\n');
                out
            }
            Format::Csv => {
                let with_measures = self.rows.iter().any(|(_, m)| m.is_some());
                let headers: Vec<&str> = if with_measures {
                    vec!["subset", "translation", "measure_sq"]
                } else {
                    vec!["subset", "translation"]
                };
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|(label, m)| {
                        let mut row = vec![
                            join_indices(label.subset.as_slice()),
                            label.translation_string(),
                        ];
                        if let Some(m) = m {
                            row.push(m.render());
                        }
                        row
                    })
                    .collect();
                let mut out = csv_lines(&headers, &rows);
                out.push_str(&format!("# {} = {}\n", self.count, self.closed_form()));
                out
            }
            Format::Json => {
                let items: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|(label, m)| {
                        let mut obj = serde_json::json!({
                            "subset": label.subset.as_slice(),
                            "translation": label.translation_string(),
                        });
                        if let Some(m) = m {
                            obj["measure_sq"] = serde_json::Value::String(m.render());
                        }
                        obj
                    })
                    .collect();
                let doc = serde_json::json!({
                    "kind": "faces",
                    "k": self.k,
                    "labels": items,
                    "count": self.count as u64,
                    "closed_form": self.closed_form(),
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("static shape"))
            }
        }
    }
}

pub struct DiagonalListing<S> {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<(DiagonalLabel, Option<S>)>,
    pub count: u128,
}

impl<S: Scalar> DiagonalListing<S> {
    fn closed_form(&self) -> String {
        format!("2^{} * C({},{})", self.n - self.k, self.n, self.n - self.k + 1)
    }

    fn count_line(&self) -> String {
        format!("count: {} = {}", self.count, self.closed_form())
    }

    pub fn render(&self, format: Format) -> String {
        assert_eq!(self.rows.len() as u128, self.count, "diagonal census drifted");
        match format {
            Format::Table => {
                let mut headers = vec!["diagonal"];
                if self.rows.iter().any(|(_, m)| m.is_some()) {
                    headers.push("measure_sq");
                }
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|(label, m)| {
                        let mut row = vec![label.to_string()];
                        if let Some(m) = m {
                            row.push(m.render());
                        }
                        row
                    })
                    .collect();
                let mut out = align(&headers, &rows);
                out.push_str(&self.count_line());
                out.push('\n');
                out
            }
            Format::Csv => {
                let with_measures = self.rows.iter().any(|(_, m)| m.is_some());
                let headers: Vec<&str> = if with_measures {
                    vec!["part1", "part2", "measure_sq"]
                } else {
                    vec!["part1", "part2"]
                };
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|(label, m)| {
                        let mut row = vec![
                            join_indices(label.part1().as_slice()),
                            join_indices(label.part2().as_slice()),
                        ];
                        if let Some(m) = m {
                            row.push(m.render());
                        }
                        row
                    })
                    .collect();
                let mut out = csv_lines(&headers, &rows);
                out.push_str(&format!("# {} = {}\n", self.count, self.closed_form()));
                out
            }
            Format::Json => {
                let items: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|(label, m)| {
                        let mut obj = serde_json::json!({
                            "part1": label.part1().as_slice(),
                            "part2": label.part2().as_slice(),
                        });
                        if let Some(m) = m {
                            obj["measure_sq"] = serde_json::Value::String(m.render());
                        }
                        obj
                    })
                    .collect();
                let doc = serde_json::json!({
                    "kind": "diagonals",
                    "k": self.k,
                    "labels": items,
                    "count": self.count as u64,
                    "closed_form": self.closed_form(),
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("static shape"))
            }
        }
    }
}

fn cell_expected(cell: &CellOutcome<impl Scalar>) -> usize {
    cell.n_generators - cell.k + 1
}

pub fn sweep_summary<S: Scalar>(summary: &SweepSummary<S>, format: Format) -> String {
    match format {
        Format::Table => {
            let headers = ["n", "k", "trials", "passes", "expected", "max_residual", "status"];
            let rows: Vec<Vec<String>> = summary
                .cells
                .iter()
                .map(|c| {
                    vec![
                        c.n_generators.to_string(),
                        c.k.to_string(),
                        c.trials.to_string(),
                        c.passes.to_string(),
                        cell_expected(c).to_string(),
                        c.max_residual.render(),
                        if c.failures.is_empty() { "ok" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            let mut out = align(&headers, &rows);
            out.push_str(&format!(
                "instances={} reports={} failures={} mode={} tol={:e}\n",
                summary.instances, summary.reports, summary.failures, summary.mode, summary.rel_tol
            ));
            out
        }
        Format::Csv => {
            let headers = ["n", "k", "trials", "passes", "expected", "max_residual"];
            let rows: Vec<Vec<String>> = summary
                .cells
                .iter()
                .map(|c| {
                    vec![
                        c.n_generators.to_string(),
                        c.k.to_string(),
                        c.trials.to_string(),
                        c.passes.to_string(),
                        cell_expected(c).to_string(),
                        c.max_residual.render(),
                    ]
                })
                .collect();
            csv_lines(&headers, &rows)
        }
        Format::Json => {
            let cells: Vec<serde_json::Value> = summary
                .cells
                .iter()
                .map(|c| {
                    let failures: Vec<serde_json::Value> = c
                        .failures
                        .iter()
                        .map(|f| {
                            serde_json::json!({
                                "seed": f.seed,
                                "n": f.n_generators,
                                "ambient": f.ambient_dim,
                                "k": f.k,
                                "residual": f.residual.render(),
                            })
                        })
                        .collect();
                    serde_json::json!({
                        "n": c.n_generators,
                        "k": c.k,
                        "trials": c.trials,
                        "passes": c.passes,
                        "expected": cell_expected(c),
                        "max_residual": c.max_residual.render(),
                        "failures": failures,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "cells": cells,
                "instances": summary.instances,
                "reports": summary.reports,
                "failures": summary.failures,
                "mode": summary.mode.to_string(),
                "rel_tol": summary.rel_tol,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("static shape"))
        }
    }
}
