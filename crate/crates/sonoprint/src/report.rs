//! Evaluation reports: one JSON document embedding the resolved config,
//! plus CSV views of the scores, the confusion matrix and selection runs.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sonoprint_core::metrics::EvaluationReport;
use sonoprint_core::select::SelectionResult;
use sonoprint_core::FeatureId;

use crate::config::ExperimentConfig;
use crate::error::{AppError, AppResult};

pub const FORMAT: &str = "sonoprint-report";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: String,
    pub version: u32,
    pub config: ExperimentConfig,
    /// Present when the features were chosen by forward selection.
    pub selection: Option<SelectionResult>,
    pub evaluation: EvaluationReport,
}

impl ReportDocument {
    pub fn new(config: ExperimentConfig, selection: Option<SelectionResult>, evaluation: EvaluationReport) -> Self {
        Self {
            format: FORMAT.into(),
            version: VERSION,
            config,
            selection,
            evaluation,
        }
    }

    pub fn to_json(&self) -> AppResult<String> {
        serde_json::to_string_pretty(self).map_err(|e| AppError::data(format!("cannot serialize report: {e}")))
    }
}

pub fn load_report(path: &Path) -> AppResult<ReportDocument> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let doc: ReportDocument = serde_json::from_str(&text)
        .map_err(|e| AppError::data(format!("{}: not a report: {e}", path.display())))?;
    if doc.format != FORMAT || doc.version != VERSION {
        return Err(AppError::data(format!("{}: unsupported report version", path.display())));
    }
    Ok(doc)
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> AppResult<()> {
    fs::write(path, bytes).map_err(|e| AppError::io(path, e))
}

/// Per-class rows followed by a `macro` row.
pub fn scores_csv(report: &EvaluationReport) -> String {
    let mut out = String::from("label,precision,recall,f1\n");
    for c in &report.per_class {
        out += &format!("{},{:?},{:?},{:?}\n", c.label, c.precision, c.recall, c.f1);
    }
    out += &format!("macro,{:?},{:?},{:?}\n", report.avg_pr, report.avg_re, report.avg_f1);
    out
}

/// Rows are true labels, columns predictions.
pub fn confusion_csv(report: &EvaluationReport) -> String {
    let cm = &report.confusion;
    let mut out = format!("true\\predicted,{}\n", cm.labels.join(","));
    for (label, row) in cm.labels.iter().zip(&cm.counts) {
        let counts: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out += &format!("{label},{}\n", counts.join(","));
    }
    out
}

fn codes(ids: &[FeatureId]) -> String {
    let c: Vec<String> = ids.iter().map(|f| f.code().to_string()).collect();
    format!("[{}]", c.join(","))
}

/// One line per feature in code order with its extraction time and its
/// best score alone, then the selected subset and its score.
pub fn selection_csv(result: &SelectionResult, extract_ms: &[(FeatureId, f64)]) -> String {
    let mut rows: Vec<(FeatureId, f64)> = result.ranked_singletons.clone();
    rows.sort_by_key(|(f, _)| f.code());
    let mut out = String::from("code,feature,extract_ms,max_f1\n");
    for (f, score) in rows {
        let ms = extract_ms
            .iter()
            .find(|(g, _)| *g == f)
            .map(|(_, t)| format!("{t:.3}"))
            .unwrap_or_default();
        out += &format!("{},{},{ms},{score:?}\n", f.code(), f.name());
    }
    out += &format!("selected,\"{}\",,{:?}\n", codes(&result.chosen), result.final_score);
    out
}

/// Every subset the objective saw, in call order.
pub fn trace_csv(result: &SelectionResult) -> String {
    let mut out = String::from("call,subset,f1\n");
    for (i, (set, score)) in result.score_trace.iter().enumerate() {
        out += &format!("{},\"{}\",{score:?}\n", i + 1, codes(set));
    }
    out
}

/// Writes `report.json`, `scores.csv` and `confusion.csv` into `dir`.
pub fn write_report(doc: &ReportDocument, dir: &Path) -> AppResult<()> {
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    write_file(&dir.join("report.json"), doc.to_json()?.as_bytes())?;
    write_file(&dir.join("scores.csv"), scores_csv(&doc.evaluation).as_bytes())?;
    write_file(&dir.join("confusion.csv"), confusion_csv(&doc.evaluation).as_bytes())?;
    if let Some(sel) = &doc.selection {
        write_file(&dir.join("selection_trace.csv"), trace_csv(sel).as_bytes())?;
    }
    Ok(())
}

/// One point of a summary series: a config value and the scores there.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub x: f64,
    pub avg_pr: f64,
    pub avg_re: f64,
    pub avg_f1: f64,
}

/// Reads `axis` out of each report's config; points come back sorted by it.
pub fn series(docs: &[ReportDocument], axis: &str) -> AppResult<Vec<SeriesPoint>> {
    let mut points = Vec::with_capacity(docs.len());
    for doc in docs {
        let text = doc.config.to_text();
        let value = text
            .lines()
            .filter_map(|l| l.split_once(" = "))
            .find(|(k, _)| *k == axis)
            .map(|(_, v)| v.to_string())
            .ok_or_else(|| AppError::usage(format!("{axis:?} is not a config key")))?;
        let x = value
            .parse::<f64>()
            .map_err(|_| AppError::usage(format!("{axis} = {value} is not numeric")))?;
        points.push(SeriesPoint {
            x,
            avg_pr: doc.evaluation.avg_pr,
            avg_re: doc.evaluation.avg_re,
            avg_f1: doc.evaluation.avg_f1,
        });
    }
    points.sort_by(|a, b| a.x.total_cmp(&b.x));
    Ok(points)
}

pub fn series_csv<W: Write>(mut out: W, axis: &str, points: &[SeriesPoint]) -> std::io::Result<()> {
    writeln!(out, "{axis},avg_pr,avg_re,avg_f1")?;
    for p in points {
        writeln!(out, "{:?},{:?},{:?},{:?}", p.x, p.avg_pr, p.avg_re, p.avg_f1)?;
    }
    Ok(())
}
