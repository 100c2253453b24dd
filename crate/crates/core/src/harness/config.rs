use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::operators::MODELS;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// Dotted path of the offending field, e.g. `model.name`.
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Trotter,
    Zeno,
    Optical,
    Kick,
    Floquet,
    Continuous,
    Equivalence,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Trotter,
        Experiment::Zeno,
        Experiment::Optical,
        Experiment::Kick,
        Experiment::Floquet,
        Experiment::Continuous,
        Experiment::Equivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Trotter => "trotter",
            Experiment::Zeno => "zeno",
            Experiment::Optical => "optical",
            Experiment::Kick => "kick",
            Experiment::Floquet => "floquet",
            Experiment::Continuous => "continuous",
            Experiment::Equivalence => "equivalence",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s)
    }

    fn sweep_kind(self) -> &'static str {
        match self {
            Experiment::Continuous => "k",
            Experiment::Equivalence => "tau_k",
            _ => "n",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Sweep {
    /// Step or kick counts, strictly increasing.
    N { values: Vec<u64> },
    /// Coupling constants, strictly increasing.
    K { values: Vec<f64> },
    /// Dwell grid (strictly decreasing) crossed with a coupling grid
    /// (strictly increasing).
    TauK { tau: Vec<f64>, k: Vec<f64> },
}

impl Sweep {
    fn kind(&self) -> &'static str {
        match self {
            Sweep::N { .. } => "n",
            Sweep::K { .. } => "k",
            Sweep::TauK { .. } => "tau_k",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Absorption strength (optical).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Kick period (floquet).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Kick strength (floquet) or pulse area (equivalence).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau0: Option<f64>,
    /// `feynman` or `plain` (trotter).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermiticity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitarity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotency: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projector_trace: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobi_off_diagonal: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobi_max_sweeps: Option<usize>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            hermiticity: self.hermiticity.unwrap_or(base.hermiticity),
            unitarity: self.unitarity.unwrap_or(base.unitarity),
            idempotency: self.idempotency.unwrap_or(base.idempotency),
            projector_trace: self.projector_trace.unwrap_or(base.projector_trace),
            cluster: self.cluster.unwrap_or(base.cluster),
            jacobi_off_diagonal: self.jacobi_off_diagonal.unwrap_or(base.jacobi_off_diagonal),
            jacobi_max_sweeps: self.jacobi_max_sweeps.unwrap_or(base.jacobi_max_sweeps),
        }
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let reals = [
            ("hermiticity", self.hermiticity),
            ("unitarity", self.unitarity),
            ("idempotency", self.idempotency),
            ("projector_trace", self.projector_trace),
            ("cluster", self.cluster),
            ("jacobi_off_diagonal", self.jacobi_off_diagonal),
        ];
        for (name, v) in reals {
            if let Some(v) = v {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(ConfigError::new(format!("tolerances.{name}"), format!("must be positive, got {v}")));
                }
            }
        }
        if self.jacobi_max_sweeps == Some(0) {
            return Err(ConfigError::new("tolerances.jacobi_max_sweeps", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: OutputFormat,
}

/// Experiment configuration as read from JSON. `experiment` is kept as text
/// so that unknown names are reported against their field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub experiment: String,
    pub model: ModelSpec,
    #[serde(default = "default_time")]
    pub t: f64,
    pub sweep: Sweep,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    pub output: OutputSpec,
}

fn default_time() -> f64 {
    1.0
}

fn strictly(values: &[f64], increasing: bool) -> bool {
    values.windows(2).all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] })
}

fn positive_grid(field: &str, values: &[f64], increasing: bool) -> Result<(), ConfigError> {
    if values.is_empty() {
        return Err(ConfigError::new(field, "grid must not be empty"));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(ConfigError::new(field, format!("grid values must be positive and finite, got {v}")));
    }
    if !strictly(values, increasing) {
        let dir = if increasing { "increasing" } else { "decreasing" };
        return Err(ConfigError::new(field, format!("grid must be strictly {dir}")));
    }
    Ok(())
}

fn require_positive(field: &str, v: Option<f64>) -> Result<f64, ConfigError> {
    match v {
        None => Err(ConfigError::new(field, "required for this experiment")),
        Some(v) if !(v > 0.0) || !v.is_finite() => Err(ConfigError::new(field, format!("must be positive, got {v}"))),
        Some(v) => Ok(v),
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new("config", e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Structural validation independent of the model contents.
    pub fn validate(&self) -> Result<Experiment, ConfigError> {
        let exp = Experiment::parse(&self.experiment).ok_or_else(|| {
            let known: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
            ConfigError::new(
                "experiment",
                format!("unknown experiment `{}` (expected one of {})", self.experiment, known.join(", ")),
            )
        })?;
        let info = MODELS.iter().find(|m| m.name == self.model.name).ok_or_else(|| {
            let known: Vec<&str> = MODELS.iter().map(|m| m.name).collect();
            ConfigError::new(
                "model.name",
                format!("unknown model `{}` (expected one of {})", self.model.name, known.join(", ")),
            )
        })?;
        match info.fixed_dim {
            Some(d) if d != self.model.dim => {
                return Err(ConfigError::new("model.dim", format!("model `{}` requires dim {d}", info.name)))
            }
            None if self.model.dim < 2 => {
                return Err(ConfigError::new("model.dim", format!("model `{}` requires dim >= 2", info.name)))
            }
            _ => {}
        }
        if !self.t.is_finite() {
            return Err(ConfigError::new("t", "must be finite"));
        }
        if self.sweep.kind() != exp.sweep_kind() {
            return Err(ConfigError::new(
                "sweep.kind",
                format!(
                    "experiment `{}` needs a `{}` sweep, got `{}`",
                    exp.name(),
                    exp.sweep_kind(),
                    self.sweep.kind()
                ),
            ));
        }
        match &self.sweep {
            Sweep::N { values } => {
                if values.is_empty() {
                    return Err(ConfigError::new("sweep.values", "grid must not be empty"));
                }
                if values.contains(&0) {
                    return Err(ConfigError::new("sweep.values", "step counts must be at least 1"));
                }
                if values.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(ConfigError::new("sweep.values", "grid must be strictly increasing"));
                }
            }
            Sweep::K { values } => positive_grid("sweep.values", values, true)?,
            Sweep::TauK { tau, k } => {
                positive_grid("sweep.tau", tau, false)?;
                positive_grid("sweep.k", k, true)?;
            }
        }
        match exp {
            Experiment::Trotter => match self.params.scale.as_deref() {
                None | Some("feynman") | Some("plain") => {}
                Some(other) => {
                    return Err(ConfigError::new(
                        "params.scale",
                        format!("expected `feynman` or `plain`, got `{other}`"),
                    ))
                }
            },
            Experiment::Optical => {
                require_positive("params.gamma", self.params.gamma)?;
            }
            Experiment::Floquet => {
                require_positive("params.tau", self.params.tau)?;
                match self.params.tau0 {
                    Some(v) if v >= 0.0 && v.is_finite() => {}
                    Some(v) => return Err(ConfigError::new("params.tau0", format!("must be non-negative, got {v}"))),
                    None => return Err(ConfigError::new("params.tau0", "required for this experiment")),
                }
            }
            Experiment::Equivalence => {
                require_positive("params.tau0", self.params.tau0)?;
                if !(self.t > 0.0) {
                    return Err(ConfigError::new("t", "total time must be positive"));
                }
            }
            _ => {}
        }
        self.tolerances.validate()?;
        if self.output.format == OutputFormat::Csv && super::sidecar_path(&self.output.path) == self.output.path {
            return Err(ConfigError::new(
                "output.path",
                "a CSV output path must not end in .json (the sidecar takes that name)",
            ));
        }
        Ok(exp)
    }

    /// Validated config with defaults made explicit.
    pub fn normalized(&self) -> Result<Self, ConfigError> {
        let exp = self.validate()?;
        let mut c = self.clone();
        if exp == Experiment::Trotter && c.params.scale.is_none() {
            c.params.scale = Some("feynman".to_string());
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{
                "experiment": "trotter",
                "model": {"name": "qubit-sx-pz", "dim": 2},
                "sweep": {"kind": "n", "values": [8, 16, 32]},
                "output": {"path": "out.csv", "format": "csv"}
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn defaults_and_normalization() {
        let c = base();
        assert_eq!(c.t, 1.0);
        assert_eq!(c.model.seed, 0);
        let n = c.normalized().unwrap();
        assert_eq!(n.params.scale.as_deref(), Some("feynman"));
        let again = ExperimentConfig::from_json(&n.to_json_pretty()).unwrap();
        assert_eq!(again, n);
    }

    #[test]
    fn offending_fields_are_named() {
        let mut c = base();
        c.model.name = "nope".into();
        assert_eq!(c.validate().unwrap_err().field, "model.name");

        let mut c = base();
        c.experiment = "warp".into();
        assert_eq!(c.validate().unwrap_err().field, "experiment");

        let mut c = base();
        c.sweep = Sweep::N { values: vec![] };
        assert_eq!(c.validate().unwrap_err().field, "sweep.values");

        let mut c = base();
        c.sweep = Sweep::N { values: vec![8, 8] };
        assert_eq!(c.validate().unwrap_err().field, "sweep.values");

        let mut c = base();
        c.sweep = Sweep::K { values: vec![1.0] };
        assert_eq!(c.validate().unwrap_err().field, "sweep.kind");

        let mut c = base();
        c.experiment = "optical".into();
        assert_eq!(c.validate().unwrap_err().field, "params.gamma");

        let mut c = base();
        c.model.dim = 3;
        assert_eq!(c.validate().unwrap_err().field, "model.dim");

        let mut c = base();
        c.output.path = "out.json".into();
        assert_eq!(c.validate().unwrap_err().field, "output.path");

        let mut c = base();
        c.tolerances.cluster = Some(-1.0);
        assert_eq!(c.validate().unwrap_err().field, "tolerances.cluster");
    }

    #[test]
    fn tau_grid_must_decrease() {
        let mut c = base();
        c.experiment = "equivalence".into();
        c.params.tau0 = Some(1.0);
        c.sweep = Sweep::TauK { tau: vec![0.1, 0.2], k: vec![1.0, 2.0] };
        assert_eq!(c.validate().unwrap_err().field, "sweep.tau");
        c.sweep = Sweep::TauK { tau: vec![0.2, 0.1], k: vec![1.0, 2.0] };
        assert!(c.validate().is_ok());
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = ExperimentConfig::from_json(
            r#"{"experiment": "zeno", "model": {"name": "qubit-sx-pz", "dim": 2}, "sweep": {"kind": "n", "values": [1]},
                "output": {"path": "o.csv", "format": "csv"}, "bogus": 1}"#,
        )
        .unwrap_err();
        assert!(err.message.contains("bogus"));
    }

    #[test]
    fn overrides_apply_on_top_of_profile() {
        let o = ToleranceOverrides { cluster: Some(1e-6), ..Default::default() };
        let t = o.apply(Tolerances::strict());
        assert_eq!(t.cluster, 1e-6);
        assert_eq!(t.hermiticity, Tolerances::strict().hermiticity);
    }
}
