//! Discrete product evolutions and their `N -> infinity` limit objects.
//!
//! Every product is written as `(F_left F_right)^N`; the right factor acts
//! first on states. Powers are accumulated by sequential multiplication.

use crate::error::{Error, Result};
use crate::linalg::{
    evolution, expm_hermitian, op_norm, ComplexMatrix, HermitianOperator, Projector, UnitaryOperator, C64,
};
use crate::operators::{spectral_projections_unitary, zeno_hamiltonian, zeno_hamiltonian_single};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone)]
pub struct ProductResult {
    pub propagator: ComplexMatrix,
    pub limit_object: ComplexMatrix,
    /// `|propagator - limit_object|` in operator norm.
    pub error: f64,
    /// Difference compressed to the range of `P` (Zeno and optical products).
    pub restricted_error: Option<f64>,
    /// `|U_N U_kick^{-N} - exp(-i t H_Z)|` (kicked products).
    pub phase_stripped_error: Option<f64>,
    pub n_steps: u64,
    pub t: f64,
}

impl ProductResult {
    fn new(propagator: ComplexMatrix, limit_object: ComplexMatrix, n_steps: u64, t: f64) -> Result<Self> {
        let error = op_norm(&(&propagator - &limit_object))?;
        Ok(ProductResult {
            propagator,
            limit_object,
            error,
            restricted_error: None,
            phase_stripped_error: None,
            n_steps,
            t,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    /// `(e^{-i(t/N)A} e^{-i(t/N)B})^N -> e^{-it(A+B)}`
    Feynman,
    /// `(e^{A/N} e^{B/N})^N -> e^{A+B}` with anti-Hermitian exponents
    /// `-i A`, `-i B`; the time argument is ignored.
    Plain,
}

fn check_steps(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n", "number of steps must be at least 1"));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::invalid("t", "time must be finite"));
    }
    Ok(())
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// `|<psi|U|psi>|^2`
pub fn survival_probability(u: &ComplexMatrix, psi: &[C64]) -> f64 {
    let upsi = u.matvec(psi);
    let amp: C64 = psi.iter().zip(&upsi).map(|(a, b)| a.conj() * b).sum();
    amp.norm_sqr()
}

pub fn trotter_product(
    a: &HermitianOperator,
    b: &HermitianOperator,
    t: f64,
    n: u64,
    kind: ScaleKind,
) -> Result<ProductResult> {
    check_dims(a.dim(), b.dim())?;
    check_steps(n)?;
    check_time(t)?;
    let t = match kind {
        ScaleKind::Feynman => t,
        ScaleKind::Plain => 1.0,
    };
    let dt = t / n as f64;
    let factor = evolution(a, dt)?.matrix() * evolution(b, dt)?.matrix();
    let propagator = factor.pow_sequential(n);
    let limit = evolution(&a.add(b)?, t)?.into_matrix();
    ProductResult::new(propagator, limit, n, t)
}

fn zeno_limit(h: &HermitianOperator, p: &Projector, t: f64) -> Result<ComplexMatrix> {
    let hz = zeno_hamiltonian_single(h, p)?;
    Ok(evolution(&hz, t)?.matrix() * p.matrix())
}

fn with_restricted(mut r: ProductResult, p: &Projector) -> Result<ProductResult> {
    r.restricted_error = Some(op_norm(&p.compress(&(&r.propagator - &r.limit_object)))?);
    Ok(r)
}

/// `(e^{-i(t/N)H} P)^N -> e^{-it PHP} P`
pub fn zeno_product(h: &HermitianOperator, p: &Projector, t: f64, n: u64) -> Result<ProductResult> {
    check_dims(h.dim(), p.dim())?;
    check_steps(n)?;
    check_time(t)?;
    let factor = evolution(h, t / n as f64)?.matrix() * p.matrix();
    let propagator = factor.pow_sequential(n);
    let limit = zeno_limit(h, p, t)?;
    with_restricted(ProductResult::new(propagator, limit, n, t)?, p)
}

/// `(e^{-i(t/N)H} e^{-gamma Q})^N`, sharing the Zeno limit with `P = I - Q`.
pub fn optical_potential_product(
    h: &HermitianOperator,
    q: &Projector,
    gamma: f64,
    t: f64,
    n: u64,
) -> Result<ProductResult> {
    check_dims(h.dim(), q.dim())?;
    check_steps(n)?;
    check_time(t)?;
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::invalid("gamma", format!("absorption strength must be positive, got {gamma}")));
    }
    let absorber = expm_hermitian(&q.as_hermitian(), C64::new(-gamma, 0.0))?;
    let factor = evolution(h, t / n as f64)?.matrix() * &absorber;
    let propagator = factor.pow_sequential(n);
    let p = q.complement();
    let limit = zeno_limit(h, &p, t)?;
    with_restricted(ProductResult::new(propagator, limit, n, t)?, &p)
}

/// `(e^{-i(t/N)H} U_kick)^N ~ e^{-it H_Z} U_kick^N`.
pub fn kicked_product(h: &HermitianOperator, u_kick: &UnitaryOperator, t: f64, n: u64) -> Result<ProductResult> {
    kicked_product_with(h, u_kick, t, n, &Tolerances::default())
}

pub fn kicked_product_with(
    h: &HermitianOperator,
    u_kick: &UnitaryOperator,
    t: f64,
    n: u64,
    tol: &Tolerances,
) -> Result<ProductResult> {
    check_dims(h.dim(), u_kick.dim())?;
    check_steps(n)?;
    check_time(t)?;
    let deviation = u_kick.unitarity_defect();
    if deviation > tol.unitarity {
        return Err(Error::NotUnitary { deviation, limit: tol.unitarity });
    }
    let decomp = spectral_projections_unitary(u_kick, tol.cluster)?;
    let hz = zeno_hamiltonian(h, &decomp)?;
    let zeno = evolution(&hz, t)?.into_matrix();

    let factor = evolution(h, t / n as f64)?.matrix() * u_kick.matrix();
    let propagator = factor.pow_sequential(n);
    let kick_power = decomp.unitary_power(n as i64);
    let kick_inverse = decomp.unitary_power(-(n as i64));
    let limit = &zeno * &kick_power;
    let mut r = ProductResult::new(propagator, limit, n, t)?;
    r.phase_stripped_error = Some(op_norm(&(&(&r.propagator * &kick_inverse) - &zeno))?);
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct FloquetResult {
    pub propagator: UnitaryOperator,
    /// Single-period factor `e^{-i tau T} e^{-i tau0 V}`.
    pub factor: UnitaryOperator,
    /// `(kick count, |U^H U - I|_F)` at powers of two and at the final count.
    pub unitarity_drift: Vec<(u64, f64)>,
}

fn check_floquet(tau: f64, tau0: f64, n_kicks: u64) -> Result<()> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::invalid("tau", format!("kick period must be positive, got {tau}")));
    }
    if !(tau0 >= 0.0) || !tau0.is_finite() {
        return Err(Error::invalid("tau0", format!("kick strength must be non-negative, got {tau0}")));
    }
    check_steps(n_kicks)
}

fn floquet_factor(t_op: &HermitianOperator, v_op: &HermitianOperator, tau: f64, tau0: f64) -> Result<ComplexMatrix> {
    check_dims(t_op.dim(), v_op.dim())?;
    Ok(evolution(t_op, tau)?.matrix() * evolution(v_op, tau0)?.matrix())
}

/// `(e^{-i tau T} e^{-i tau0 V})^n` at fixed `tau`, a large-time iteration.
pub fn floquet_iterate(
    t_op: &HermitianOperator,
    v_op: &HermitianOperator,
    tau: f64,
    tau0: f64,
    n_kicks: u64,
) -> Result<FloquetResult> {
    check_floquet(tau, tau0, n_kicks)?;
    let factor = floquet_factor(t_op, v_op, tau, tau0)?;
    let mut acc = ComplexMatrix::identity(factor.dim());
    let mut drift = Vec::new();
    let mut checkpoint = 1u64;
    for k in 1..=n_kicks {
        acc = &factor * &acc;
        if k == checkpoint || k == n_kicks {
            drift.push((k, acc.unitarity_defect()));
            if k == checkpoint {
                checkpoint = checkpoint.saturating_mul(2);
            }
        }
    }
    Ok(FloquetResult {
        propagator: UnitaryOperator::from_trusted(acc),
        factor: UnitaryOperator::from_trusted(factor),
        unitarity_drift: drift,
    })
}

/// Same propagator as [`floquet_iterate`], by binary exponentiation.
pub fn floquet_by_squaring(
    t_op: &HermitianOperator,
    v_op: &HermitianOperator,
    tau: f64,
    tau0: f64,
    n_kicks: u64,
) -> Result<UnitaryOperator> {
    check_floquet(tau, tau0, n_kicks)?;
    let factor = floquet_factor(t_op, v_op, tau, tau0)?;
    Ok(UnitaryOperator::from_trusted(factor.pow_squaring(n_kicks)))
}
