//! Report serialization: the fixed campaign CSV schema, JSON mirrors of the
//! report structs, and the tabular forms of the one-shot subcommands.
//!
//! Emission is a pure function of the report value, so identical inputs
//! produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde_json::json;

use a1kit_core::{
    format_rational, to_f64, A1Report, RearrangedBoundReport, ReverseHolderReport, SharpBound,
    StepWeight,
};

use crate::campaign::{CampaignReport, TrialRecord};
use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(HarnessError::UnknownFormat(other.to_string())),
        }
    }
}

pub const CAMPAIGN_CSV_HEADER: &str = "campaign,trial,seed,c,p,metric,bound,margin,pass";

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_row(campaign: &str, r: &TrialRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        campaign,
        r.trial,
        r.seed,
        opt(r.c),
        opt(r.p),
        r.metric,
        r.bound,
        r.margin,
        r.pass
    )
}

/// The campaign CSV: one header line, one row per trial.
pub fn campaign_csv(report: &CampaignReport) -> String {
    let mut out = String::new();
    out.push_str(CAMPAIGN_CSV_HEADER);
    out.push('\n');
    for record in &report.records {
        let _ = writeln!(out, "{}", csv_row(&report.campaign, record));
    }
    out
}

/// JSON mirror of the whole report struct.
pub fn campaign_json(report: &CampaignReport) -> String {
    serde_json::to_string_pretty(report).expect("report fields are serializable")
}

pub fn render_campaign(report: &CampaignReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => campaign_csv(report),
        ReportFormat::Json => campaign_json(report),
    }
}

/// Writes rendered output to `path`, or to stdout when no path is given.
pub fn emit(rendered: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

pub fn a1_report(report: &A1Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let v = json!({
                "constant": format_rational(&report.constant),
                "constant_approx": to_f64(&report.constant),
                "witness": [
                    format_rational(report.witness.lo()),
                    format_rational(report.witness.hi()),
                ],
                "witness_cell": [report.witness_cell.0, report.witness_cell.1],
            });
            format!("{v:#}\n")
        }
        ReportFormat::Csv => format!(
            "constant,constant_approx,witness_lo,witness_hi,cell_i,cell_j\n{},{},{},{},{},{}\n",
            format_rational(&report.constant),
            to_f64(&report.constant),
            format_rational(report.witness.lo()),
            format_rational(report.witness.hi()),
            report.witness_cell.0,
            report.witness_cell.1,
        ),
    }
}

pub fn rearranged_bound_json(report: &RearrangedBoundReport) -> String {
    let v = json!({
        "original_constant": format_rational(&report.original_constant),
        "rearranged_constant": format_rational(&report.rearranged_constant),
        "anchored_constant": format_rational(&report.anchored_constant),
        "pass": report.pass,
    });
    format!("{v:#}\n")
}

/// A weight as the weight-file JSON, or a per-piece CSV table.
pub fn weight_report(w: &StepWeight, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut doc = a1kit_core::json::weight_to_json(w);
            doc.push('\n');
            doc
        }
        ReportFormat::Csv => {
            let mut out = String::from("piece,lo,hi,value\n");
            for (k, value) in w.values().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    k + 1,
                    format_rational(&w.breakpoints()[k]),
                    format_rational(&w.breakpoints()[k + 1]),
                    format_rational(value),
                );
            }
            out
        }
    }
}

pub fn sharp_report(bound: &SharpBound, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let v = json!({
                "c": bound.c,
                "p": bound.p,
                "p_crit": bound.p_crit,
                "constant": bound.constant,
            });
            format!("{v:#}\n")
        }
        ReportFormat::Csv => format!(
            "c,p,p_crit,constant\n{},{},{},{}\n",
            bound.c, bound.p, bound.p_crit, bound.constant
        ),
    }
}

pub fn omega_report(p: f64, y: f64, omega: f64, residual: f64, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let v = json!({ "p": p, "y": y, "omega": omega, "residual": residual });
            format!("{v:#}\n")
        }
        ReportFormat::Csv => {
            format!("p,y,omega,residual\n{p},{y},{omega},{residual}\n")
        }
    }
}

pub fn reverse_holder_json(report: &ReverseHolderReport) -> String {
    let v = json!({
        "c": report.c,
        "p": report.p,
        "worst_ratio": report.worst_ratio,
        "worst_interval": [
            format_rational(report.worst_interval.lo()),
            format_rational(report.worst_interval.hi()),
        ],
        "pass": report.pass,
    });
    format!("{v:#}\n")
}
