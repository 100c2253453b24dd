//! Interpolating pulse protocol `H(tau, K)` and the order-of-limits study.
//!
//! One period is a dwell of length `tau` under `H` followed by a square pulse
//! of width `tau0/K` under `H + K H_c`. `tau -> 0` gives continuous coupling,
//! `K -> infinity` gives kicks `e^{-i tau0 H_c}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{evolution, op_norm, ComplexMatrix, HermitianOperator, UnitaryOperator};
use crate::operators::{spectral_projections, zeno_hamiltonian};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone)]
pub struct InterpolatingProtocol {
    pub h: HermitianOperator,
    pub hc: HermitianOperator,
    /// Dwell between pulses.
    pub tau: f64,
    /// Pulse area parameter.
    pub tau0: f64,
    /// Pulse height.
    pub k: f64,
    pub n_periods: u64,
}

impl InterpolatingProtocol {
    pub fn validate(&self) -> Result<()> {
        if self.h.dim() != self.hc.dim() {
            return Err(Error::DimensionMismatch { expected: self.h.dim(), found: self.hc.dim() });
        }
        if !(self.tau >= 0.0) || !self.tau.is_finite() {
            return Err(Error::invalid("tau", format!("dwell must be non-negative, got {}", self.tau)));
        }
        if !(self.tau0 > 0.0) || !self.tau0.is_finite() {
            return Err(Error::invalid("tau0", format!("pulse area must be positive, got {}", self.tau0)));
        }
        if !(self.k > 0.0) || !self.k.is_finite() {
            return Err(Error::invalid("k", format!("pulse height must be positive, got {}", self.k)));
        }
        if self.n_periods == 0 {
            return Err(Error::invalid("n_periods", "need at least one period"));
        }
        Ok(())
    }

    pub fn pulse_width(&self) -> f64 {
        self.tau0 / self.k
    }

    pub fn period(&self) -> f64 {
        self.tau + self.pulse_width()
    }

    pub fn total_time(&self) -> f64 {
        self.n_periods as f64 * self.period()
    }

    /// `e^{-i(tau0/K)(H + K H_c)} e^{-i tau H}`
    pub fn period_factor(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        let pulse = evolution(&self.h.add_scaled(self.k, &self.hc)?, self.pulse_width())?;
        let dwell = evolution(&self.h, self.tau)?;
        Ok(pulse.matrix() * dwell.matrix())
    }
}

/// `[e^{-i(tau0/K)(H + K H_c)} e^{-i tau H}]^{n_periods}`
pub fn interpolating_propagator(p: &InterpolatingProtocol) -> Result<UnitaryOperator> {
    let factor = p.period_factor()?;
    Ok(UnitaryOperator::from_trusted(factor.pow_sequential(p.n_periods)))
}

/// One evaluated parameter point. `k = None` is the kicked (`K = infinity`)
/// endpoint.
#[derive(Debug, Clone, Serialize)]
pub struct GridPoint {
    pub tau: f64,
    pub k: Option<f64>,
    pub n_periods: u64,
    pub t_realized: f64,
    /// `|U e^{+i n tau0 H_c} - e^{-i t_realized H_Z}|`
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct LimitOrderReport {
    /// Stripped propagator at `tau = 0` and the largest `K`.
    pub continuous_first: ComplexMatrix,
    /// Stripped kicked propagator (`K = infinity`) at the smallest `tau`.
    pub pulsed_first: ComplexMatrix,
    /// `e^{-i t_total H_Z}`
    pub zeno_reference: ComplexMatrix,
    pub discrepancy: f64,
    pub continuous_distance: f64,
    pub pulsed_distance: f64,
    /// `tau = 0` path along the K grid.
    pub continuous_path: Vec<GridPoint>,
    /// `K = infinity` path along the tau grid.
    pub pulsed_path: Vec<GridPoint>,
    /// Finite `(tau, K)` surface, tau-major in grid order.
    pub surface: Vec<GridPoint>,
    /// Surface points whose distance grows when either parameter is refined.
    pub non_monotone: Vec<(f64, f64)>,
    pub tau_grid: Vec<f64>,
    pub k_grid: Vec<f64>,
    pub tau0: f64,
    pub t_total: f64,
}

struct Setup<'a> {
    h: &'a HermitianOperator,
    hc: &'a HermitianOperator,
    hz: HermitianOperator,
    tau0: f64,
    t_total: f64,
}

impl Setup<'_> {
    fn periods(&self, period: f64) -> Result<u64> {
        let n = (self.t_total / period).round();
        if n < 1.0 {
            return Err(Error::invalid(
                "t_total",
                format!("{} is shorter than half a period ({period})", self.t_total),
            ));
        }
        Ok(n as u64)
    }

    fn stripped(&self, u: &ComplexMatrix, n: u64) -> Result<ComplexMatrix> {
        let unwind = evolution(self.hc, -(n as f64) * self.tau0)?;
        Ok(u * unwind.matrix())
    }

    fn point(&self, tau: f64, k: Option<f64>) -> Result<(GridPoint, ComplexMatrix)> {
        let (u, n, t_realized) = match k {
            Some(k) => {
                let mut p = InterpolatingProtocol {
                    h: self.h.clone(),
                    hc: self.hc.clone(),
                    tau,
                    tau0: self.tau0,
                    k,
                    n_periods: 1,
                };
                p.validate()?;
                p.n_periods = self.periods(p.period())?;
                (interpolating_propagator(&p)?.into_matrix(), p.n_periods, p.total_time())
            }
            None => {
                let n = self.periods(tau)?;
                let kick = evolution(self.hc, self.tau0)?;
                let factor = kick.matrix() * evolution(self.h, tau)?.matrix();
                (factor.pow_sequential(n), n, n as f64 * tau)
            }
        };
        let stripped = self.stripped(&u, n)?;
        let reference = evolution(&self.hz, t_realized)?;
        let distance = op_norm(&(&stripped - reference.matrix()))?;
        Ok((GridPoint { tau, k, n_periods: n, t_realized, distance }, stripped))
    }
}

fn check_grid(name: &'static str, grid: &[f64], increasing: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(name, "grid must not be empty"));
    }
    if grid.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return Err(Error::invalid(name, "grid values must be positive and finite"));
    }
    let ordered = grid.windows(2).all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
    if !ordered {
        let dir = if increasing { "increasing" } else { "decreasing" };
        return Err(Error::invalid(name, format!("grid must be strictly {dir}")));
    }
    Ok(())
}

/// Approximate both iterated limits and the finite-parameter surface.
///
/// The inner limits are taken exactly (`tau = 0` is continuous coupling,
/// `K = infinity` is the kicked product); the outer limits are approximated
/// by the extreme grid values. Each point uses `round(t_total / period)`
/// whole periods and is compared against `e^{-i t_realized H_Z}`.
pub fn limit_order_experiment(
    h: &HermitianOperator,
    hc: &HermitianOperator,
    tau0: f64,
    t_total: f64,
    tau_grid: &[f64],
    k_grid: &[f64],
) -> Result<LimitOrderReport> {
    limit_order_experiment_with(h, hc, tau0, t_total, tau_grid, k_grid, &Tolerances::default())
}

pub fn limit_order_experiment_with(
    h: &HermitianOperator,
    hc: &HermitianOperator,
    tau0: f64,
    t_total: f64,
    tau_grid: &[f64],
    k_grid: &[f64],
    tol: &Tolerances,
) -> Result<LimitOrderReport> {
    if h.dim() != hc.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: hc.dim() });
    }
    check_grid("tau_grid", tau_grid, false)?;
    check_grid("k_grid", k_grid, true)?;
    if !(tau0 > 0.0) || !tau0.is_finite() {
        return Err(Error::invalid("tau0", format!("pulse area must be positive, got {tau0}")));
    }
    if !(t_total > 0.0) || !t_total.is_finite() {
        return Err(Error::invalid("t_total", format!("must be positive, got {t_total}")));
    }
    let decomp = spectral_projections(hc, tol.cluster)?;
    let hz = zeno_hamiltonian(h, &decomp)?;
    let setup = Setup { h, hc, hz, tau0, t_total };

    let continuous: Vec<(GridPoint, ComplexMatrix)> =
        k_grid.par_iter().map(|&k| setup.point(0.0, Some(k))).collect::<Result<_>>()?;
    let pulsed: Vec<(GridPoint, ComplexMatrix)> =
        tau_grid.par_iter().map(|&tau| setup.point(tau, None)).collect::<Result<_>>()?;
    let pairs: Vec<(f64, f64)> = tau_grid.iter().flat_map(|&tau| k_grid.iter().map(move |&k| (tau, k))).collect();
    let surface: Vec<GridPoint> =
        pairs.par_iter().map(|&(tau, k)| setup.point(tau, Some(k)).map(|p| p.0)).collect::<Result<_>>()?;

    let nk = k_grid.len();
    let mut non_monotone = Vec::new();
    for (i, &tau) in tau_grid.iter().enumerate() {
        for (j, &k) in k_grid.iter().enumerate() {
            let here = surface[i * nk + j].distance;
            let finer_tau = i + 1 < tau_grid.len() && surface[(i + 1) * nk + j].distance > here;
            let finer_k = j + 1 < nk && surface[i * nk + j + 1].distance > here;
            if finer_tau || finer_k {
                non_monotone.push((tau, k));
            }
        }
    }

    let (cont_point, continuous_first) = continuous.last().cloned().expect("k grid is non-empty");
    let (pulse_point, pulsed_first) = pulsed.last().cloned().expect("tau grid is non-empty");
    let discrepancy = op_norm(&(&continuous_first - &pulsed_first))?;
    Ok(LimitOrderReport {
        continuous_first,
        pulsed_first,
        zeno_reference: evolution(&setup.hz, t_total)?.into_matrix(),
        discrepancy,
        continuous_distance: cont_point.distance,
        pulsed_distance: pulse_point.distance,
        continuous_path: continuous.into_iter().map(|p| p.0).collect(),
        pulsed_path: pulsed.into_iter().map(|p| p.0).collect(),
        surface,
        non_monotone,
        tau_grid: tau_grid.to_vec(),
        k_grid: k_grid.to_vec(),
        tau0,
        t_total,
    })
}
