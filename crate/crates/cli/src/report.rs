//! Report assembly: the stable JSON schema and the CSV residual tables.
//!
//! Top-level JSON keys: `version`, `config`, `symbolic`, `numeric`,
//! `verdict`. Symbolic records carry `id`, `paper_ref`, `status`,
//! `witness`, `ms`; numeric records carry `id`, `paper_ref`, `grids`
//! (rows of `N`, `h`, `residual`), `slope`, `status`. Reports are
//! deterministic for a fixed configuration except for the `ms` wall-time
//! fields.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use worldline_algebra::{IdentityRecord, Status};
use worldline_numlab::NumericResult;

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub config: ConfigEcho,
    pub symbolic: Vec<SymbolicRecord>,
    pub numeric: Vec<NumericRecord>,
    pub verdict: &'static str,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub dim: u8,
    pub mass: f64,
    pub grids: Vec<usize>,
    pub pmax: f64,
    pub tol: Option<f64>,
    pub strict: bool,
}

#[derive(Serialize)]
pub struct SymbolicRecord {
    pub id: &'static str,
    #[serde(rename = "paper_ref")]
    pub reference: &'static str,
    pub status: &'static str,
    pub witness: Option<String>,
    pub ms: u128,
}

#[derive(Serialize)]
pub struct NumericRecord {
    pub id: String,
    #[serde(rename = "paper_ref")]
    pub reference: &'static str,
    pub grids: Vec<GridRow>,
    pub slope: Option<f64>,
    pub status: &'static str,
}

#[derive(Serialize)]
pub struct GridRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
    pub residual: f64,
}

fn status_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

pub fn build(
    config: ConfigEcho,
    symbolic: &[IdentityRecord],
    numeric: &[NumericResult],
    verdict: bool,
) -> Report {
    Report {
        version: env!("CARGO_PKG_VERSION"),
        config,
        symbolic: symbolic
            .iter()
            .map(|r| SymbolicRecord {
                id: r.id,
                reference: r.reference,
                status: status_str(r.status == Status::Pass),
                witness: r.witness.clone(),
                ms: r.ms,
            })
            .collect(),
        numeric: numeric
            .iter()
            .map(|r| NumericRecord {
                id: r.id.clone(),
                reference: r.reference,
                grids: r
                    .samples
                    .iter()
                    .map(|s| GridRow {
                        n: s.n,
                        h: s.h,
                        residual: s.residual,
                    })
                    .collect(),
                slope: r.slope.as_ref().and_then(|s| s.value()),
                status: status_str(r.passed),
            })
            .collect(),
        verdict: status_str(verdict),
    }
}

pub fn write_json(report: &Report, path: &Path) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(io::Error::other)?;
    text.push('\n');
    fs::write(path, text)
}

/// One CSV row per (check, grid): `id,N,h,residual`.
pub fn write_csv(numeric: &[NumericResult], path: &Path) -> io::Result<()> {
    let mut out = String::from("id,N,h,residual\n");
    for r in numeric {
        for s in &r.samples {
            out.push_str(&format!("{},{},{},{}\n", r.id, s.n, s.h, s.residual));
        }
    }
    fs::write(path, out)
}
