//! Experiment runner: configs, sweeps, rate fitting and output files.

mod config;
mod fit;
mod output;
mod run;

pub use config::{
    ConfigError, Experiment, ExperimentConfig, ModelSpec, OutputFormat, OutputSpec, Params, Sweep, ToleranceOverrides,
};
pub use fit::{fit_rate, FitError, RateFit, FIT_FLOOR, FIT_UPPER, MIN_FIT_POINTS};
pub use output::{compare_csv_bodies, csv_body, csv_header, sidecar_path, write_outputs};
pub use run::{execute, run_experiment, HarnessError, RunOptions};

use serde::Serialize;

/// One sweep point. Optional quantities are written as empty CSV fields.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub param: f64,
    /// Second coordinate for 2-D sweeps (`K` on a `tau x K` grid).
    pub param2: Option<f64>,
    pub error: f64,
    /// Restricted (Zeno, optical) or phase-stripped (kick, continuous) error.
    pub error_restricted: Option<f64>,
    /// `|<0|U|0>|^2` where the experiment defines it.
    pub survival: Option<f64>,
    pub wall_time_s: Option<f64>,
}

impl Record {
    pub fn new(param: f64) -> Self {
        Record { param, param2: None, error: 0.0, error_restricted: None, survival: None, wall_time_s: None }
    }
}

pub mod fit_column {
    use serde::Serialize;

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
    #[serde(rename_all = "snake_case")]
    pub enum FitColumn {
        Error,
        ErrorRestricted,
    }

    pub const ERROR: FitColumn = FitColumn::Error;
    pub const RESTRICTED: FitColumn = FitColumn::ErrorRestricted;
}

/// Echo of everything needed to reproduce a run.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub config: serde_json::Value,
    pub library_version: &'static str,
    pub seed: u64,
    pub tolerance_profile: String,
    pub tolerances: crate::Tolerances,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitOrderSummary {
    pub discrepancy: f64,
    pub continuous_distance: f64,
    pub pulsed_distance: f64,
    pub continuous_path: Vec<crate::limit_equivalence::GridPoint>,
    pub pulsed_path: Vec<crate::limit_equivalence::GridPoint>,
    pub non_monotone: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub records: Vec<Record>,
    pub fit_on: Option<fit_column::FitColumn>,
    pub fit: Option<RateFit>,
    /// Why `fit` is absent.
    pub fit_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_order: Option<LimitOrderSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl SweepResult {
    /// Sort records by parameter and fit the chosen column.
    pub fn fitted(mut records: Vec<Record>, column: fit_column::FitColumn) -> Self {
        sort_records(&mut records);
        let points: Vec<(f64, f64)> = records
            .iter()
            .filter_map(|r| {
                let e = match column {
                    fit_column::FitColumn::Error => Some(r.error),
                    fit_column::FitColumn::ErrorRestricted => r.error_restricted,
                };
                e.map(|e| (r.param, e))
            })
            .collect();
        let (fit, fit_note) = match fit_rate(&points) {
            Ok(f) => (Some(f), None),
            Err(e) => (None, Some(e.to_string())),
        };
        SweepResult { records, fit_on: Some(column), fit, fit_note, limit_order: None, provenance: None }
    }

    /// Records without a rate fit (2-D sweeps).
    pub fn unfitted(mut records: Vec<Record>, note: &str) -> Self {
        sort_records(&mut records);
        SweepResult {
            records,
            fit_on: None,
            fit: None,
            fit_note: Some(note.to_string()),
            limit_order: None,
            provenance: None,
        }
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

fn sort_records(records: &mut [Record]) {
    records
        .sort_by(|a, b| a.param.total_cmp(&b.param).then(a.param2.unwrap_or(0.0).total_cmp(&b.param2.unwrap_or(0.0))));
}
