use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::continuous_coupling::coupled_evolution_with;
use crate::error::Error;
use crate::limit_equivalence::limit_order_experiment_with;
use crate::linalg::{op_norm, C64};
use crate::operators::{model_library, ModelSystem};
use crate::product_formulas::{
    floquet_by_squaring, floquet_iterate, kicked_product_with, optical_potential_product, survival_probability,
    trotter_product, zeno_product, ScaleKind,
};
use crate::tolerances::Tolerances;

use super::config::{ConfigError, Experiment, ExperimentConfig, Sweep};
use super::fit_column::{ERROR, RESTRICTED};
use super::output::write_outputs;
use super::{LimitOrderSummary, Provenance, Record, SweepResult};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl HarnessError {
    /// 1 for validation problems, 2 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Worker threads for sweep points; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// `default` or `strict`.
    pub tolerance_profile: String,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: None, tolerance_profile: "default".to_string() }
    }
}

fn missing(what: &str, model: &ModelSystem, exp: Experiment) -> ConfigError {
    ConfigError::new(
        "model.name",
        format!("model `{}` has no {what}, required by experiment `{}`", model.name, exp.name()),
    )
}

fn timed<T>(f: impl FnOnce() -> crate::Result<T>) -> crate::Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64()))
}

fn ground_state(dim: usize) -> Vec<C64> {
    let mut psi = vec![C64::new(0.0, 0.0); dim];
    psi[0] = C64::new(1.0, 0.0);
    psi
}

/// Validate and compute, without writing any file.
pub fn execute(config: &ExperimentConfig, opts: &RunOptions) -> Result<SweepResult, HarnessError> {
    let config = config.normalized()?;
    let exp = config.validate()?;
    let base = Tolerances::profile(&opts.tolerance_profile).ok_or_else(|| {
        ConfigError::new(
            "ZENOLAB_TOLERANCE_PROFILE",
            format!("unknown profile `{}` (expected default or strict)", opts.tolerance_profile),
        )
    })?;
    let tol = config.tolerances.apply(base);
    let model = model_library(&config.model.name, config.model.dim, config.model.seed).map_err(|e| match e {
        Error::UnknownModel(_) => ConfigError::new("model.name", e.to_string()),
        Error::InvalidParameter { .. } => ConfigError::new("model.dim", e.to_string()),
        other => ConfigError::new("model", other.to_string()),
    })?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| ConfigError::new("workers", e.to_string()))?;
    let mut result = pool.install(|| compute(exp, &config, &model, &tol))?;
    result.provenance = Some(Provenance {
        config: serde_json::to_value(&config).expect("config serializes"),
        library_version: crate::VERSION,
        seed: config.model.seed,
        tolerance_profile: opts.tolerance_profile.clone(),
        tolerances: tol,
    });
    Ok(result)
}

/// Validate, compute and write the configured output files.
pub fn run_experiment(config: &ExperimentConfig, opts: &RunOptions) -> Result<SweepResult, HarnessError> {
    let result = execute(config, opts)?;
    write_outputs(&result, &config.normalized()?)?;
    Ok(result)
}

fn n_values(config: &ExperimentConfig) -> &[u64] {
    match &config.sweep {
        Sweep::N { values } => values,
        _ => unreachable!("validated sweep kind"),
    }
}

fn compute(
    exp: Experiment,
    config: &ExperimentConfig,
    model: &ModelSystem,
    tol: &Tolerances,
) -> Result<SweepResult, HarnessError> {
    let t = config.t;
    let h = &model.h;
    let psi = ground_state(model.dim);
    let result = match exp {
        Experiment::Trotter => {
            let (a, b) = model.split.as_ref().ok_or_else(|| missing("T/V split", model, exp))?;
            let kind = match config.params.scale.as_deref() {
                Some("plain") => ScaleKind::Plain,
                _ => ScaleKind::Feynman,
            };
            let records = n_values(config)
                .par_iter()
                .map(|&n| {
                    let (r, wall) = timed(|| trotter_product(a, b, t, n, kind))?;
                    Ok(Record { error: r.error, wall_time_s: Some(wall), ..Record::new(n as f64) })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            SweepResult::fitted(records, ERROR)
        }
        Experiment::Zeno | Experiment::Optical => {
            let p = model.projector.as_ref().ok_or_else(|| missing("projector", model, exp))?;
            let q = p.complement();
            let gamma = config.params.gamma.unwrap_or(0.0);
            let records = n_values(config)
                .par_iter()
                .map(|&n| {
                    let (r, wall) = timed(|| match exp {
                        Experiment::Zeno => zeno_product(h, p, t, n),
                        _ => optical_potential_product(h, &q, gamma, t, n),
                    })?;
                    Ok(Record {
                        error: r.error,
                        error_restricted: r.restricted_error,
                        survival: Some(survival_probability(&r.propagator, &psi)),
                        wall_time_s: Some(wall),
                        ..Record::new(n as f64)
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            SweepResult::fitted(records, RESTRICTED)
        }
        Experiment::Kick => {
            let kick = model.kick.as_ref().ok_or_else(|| missing("kick", model, exp))?;
            let records = n_values(config)
                .par_iter()
                .map(|&n| {
                    let (r, wall) = timed(|| kicked_product_with(h, &kick.unitary, t, n, tol))?;
                    Ok(Record {
                        error: r.error,
                        error_restricted: r.phase_stripped_error,
                        wall_time_s: Some(wall),
                        ..Record::new(n as f64)
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            SweepResult::fitted(records, RESTRICTED)
        }
        Experiment::Floquet => {
            let (t_op, v_op) = model.split.as_ref().ok_or_else(|| missing("T/V split", model, exp))?;
            let tau = config.params.tau.expect("validated");
            let tau0 = config.params.tau0.expect("validated");
            let records = n_values(config)
                .par_iter()
                .map(|&n| {
                    let ((r, squared), wall) = timed(|| {
                        let r = floquet_iterate(t_op, v_op, tau, tau0, n)?;
                        let sq = floquet_by_squaring(t_op, v_op, tau, tau0, n)?;
                        Ok((r, sq))
                    })?;
                    let mismatch = op_norm(&(r.propagator.matrix() - squared.matrix()))?;
                    let drift = r.unitarity_drift.last().map(|d| d.1).unwrap_or(0.0);
                    Ok(Record {
                        error: drift,
                        error_restricted: Some(mismatch),
                        wall_time_s: Some(wall),
                        ..Record::new(n as f64)
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            SweepResult::unfitted(records, "unitarity drift and squaring mismatch are stability checks, not rates")
        }
        Experiment::Continuous => {
            let hc = model.auxiliary.as_ref().ok_or_else(|| missing("coupling operator", model, exp))?;
            let Sweep::K { values } = &config.sweep else { unreachable!("validated sweep kind") };
            let records = values
                .par_iter()
                .map(|&k| {
                    let (r, wall) = timed(|| coupled_evolution_with(h, hc, k, t, tol))?;
                    Ok(Record {
                        error: r.raw_error,
                        error_restricted: Some(r.phase_stripped_error),
                        survival: Some(survival_probability(r.propagator.matrix(), &psi)),
                        wall_time_s: Some(wall),
                        ..Record::new(k)
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            SweepResult::fitted(records, RESTRICTED)
        }
        Experiment::Equivalence => {
            let hc = model.auxiliary.as_ref().ok_or_else(|| missing("coupling operator", model, exp))?;
            let Sweep::TauK { tau, k } = &config.sweep else { unreachable!("validated sweep kind") };
            let tau0 = config.params.tau0.expect("validated");
            let report = limit_order_experiment_with(h, hc, tau0, t, tau, k, tol)?;
            let records = report
                .surface
                .iter()
                .map(|p| Record { param2: p.k, error: p.distance, ..Record::new(p.tau) })
                .collect();
            let mut r = SweepResult::unfitted(records, "two-parameter surface; no single rate is fitted");
            r.limit_order = Some(LimitOrderSummary {
                discrepancy: report.discrepancy,
                continuous_distance: report.continuous_distance,
                pulsed_distance: report.pulsed_distance,
                continuous_path: report.continuous_path,
                pulsed_path: report.pulsed_path,
                non_monotone: report.non_monotone,
            });
            r
        }
    };
    Ok(result)
}
