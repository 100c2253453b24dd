use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::config::{ExperimentConfig, OutputFormat};
use super::run::HarnessError;
use super::{Record, SweepResult};

const WALL_TIME: &str = "wall_time_s";

pub fn csv_header(two_d: bool) -> &'static str {
    if two_d {
        "param,param2,error,error_restricted,wall_time_s"
    } else {
        "param,error,error_restricted,wall_time_s"
    }
}

/// Sidecar written next to a CSV output: same stem, `.json` extension.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub(crate) fn render_csv(records: &[Record]) -> String {
    let two_d = records.iter().any(|r| r.param2.is_some());
    let mut out = String::new();
    out.push_str(csv_header(two_d));
    out.push('\n');
    for r in records {
        write!(out, "{}", r.param).unwrap();
        if two_d {
            write!(out, ",{}", r.param2.map(|x| x.to_string()).unwrap_or_default()).unwrap();
        }
        writeln!(out, ",{:e},{},{}", r.error, opt(r.error_restricted), opt(r.wall_time_s)).unwrap();
    }
    out
}

/// Write the configured output: CSV plus JSON sidecar, or one JSON document.
pub fn write_outputs(result: &SweepResult, config: &ExperimentConfig) -> Result<Vec<PathBuf>, HarnessError> {
    let write = |path: &Path, text: &str| {
        let io = |source| HarnessError::Io { path: path.to_path_buf(), source };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io)?;
        }
        fs::write(path, text).map_err(io)
    };
    let json = serde_json::to_string_pretty(result).expect("result serializes") + "\n";
    let path = &config.output.path;
    match config.output.format {
        OutputFormat::Csv => {
            let sidecar = sidecar_path(path);
            write(path, &render_csv(&result.records))?;
            write(&sidecar, &json)?;
            Ok(vec![path.clone(), sidecar])
        }
        OutputFormat::Json => {
            write(path, &json)?;
            Ok(vec![path.clone()])
        }
    }
}

/// CSV rows without the header and without the advisory wall-time column.
pub fn csv_body(text: &str) -> String {
    let mut lines = text.lines();
    let Some(header) = lines.next() else { return String::new() };
    let skip = header.split(',').position(|h| h == WALL_TIME);
    let mut out = String::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, f)| f).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Field-by-field comparison of two CSV bodies (see [`csv_body`]) with a
/// relative tolerance on numeric fields. Empty fields must match exactly.
pub fn compare_csv_bodies(a: &str, b: &str, rel_tol: f64) -> Result<(), String> {
    let (la, lb): (Vec<&str>, Vec<&str>) = (a.lines().collect(), b.lines().collect());
    if la.len() != lb.len() {
        return Err(format!("row count differs: {} vs {}", la.len(), lb.len()));
    }
    for (row, (ra, rb)) in la.iter().zip(&lb).enumerate() {
        let (fa, fb): (Vec<&str>, Vec<&str>) = (ra.split(',').collect(), rb.split(',').collect());
        if fa.len() != fb.len() {
            return Err(format!("row {row}: field count differs"));
        }
        for (col, (x, y)) in fa.iter().zip(&fb).enumerate() {
            if x == y {
                continue;
            }
            let (Ok(xv), Ok(yv)) = (x.parse::<f64>(), y.parse::<f64>()) else {
                return Err(format!("row {row}, field {col}: `{x}` vs `{y}`"));
            };
            let scale = xv.abs().max(yv.abs());
            if (xv - yv).abs() > rel_tol * scale {
                return Err(format!("row {row}, field {col}: {xv:e} vs {yv:e} beyond relative {rel_tol:e}"));
            }
        }
    }
    Ok(())
}
