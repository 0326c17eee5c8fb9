//! Kahan's discretization of a quadratic field `ṗ = f(p)`.
//!
//! One step solves the linearly implicit relation
//!
//! ```text
//! (p' − p)/h = Q̄(p, p') + ½B(p + p') + c
//! ```
//!
//! whose unique solution is `p' = p + h(I − (h/2)J_f(p))⁻¹ f(p)`. The map is
//! birational and its inverse is the same step with `h` negated.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Point2, Vec2};
use crate::systems::SystemSpec;
use crate::vectorfield::QuadraticField2;

pub const DEFAULT_DET_TOL: f64 = 1e-12;

/// Step size and the singularity threshold for the 2×2 solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepConfig {
    h: f64,
    det_tol: f64,
}

impl StepConfig {
    pub fn new(h: f64) -> Result<Self> {
        Self::with_det_tol(h, DEFAULT_DET_TOL)
    }

    pub fn with_det_tol(h: f64, det_tol: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "step size must be finite, got {h}"
            )));
        }
        if !(det_tol > 0.0) || !det_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "det_tol must be positive and finite, got {det_tol}"
            )));
        }
        Ok(Self { h, det_tol })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn det_tol(&self) -> f64 {
        self.det_tol
    }

    /// The same configuration with `h` negated.
    pub fn reversed(&self) -> Self {
        Self {
            h: -self.h,
            det_tol: self.det_tol,
        }
    }
}

/// `I + s·J`.
fn shifted_identity(s: f64, j: Mat2) -> Mat2 {
    Mat2::IDENTITY + j.scale(s)
}

/// One forward Kahan step.
pub fn step(field: &QuadraticField2, cfg: &StepConfig, p: Point2) -> Result<Point2> {
    p.finite()?;
    let h = cfg.h;
    if h == 0.0 {
        return Ok(p);
    }
    let lhs = shifted_identity(-0.5 * h, field.jacobian(p)?);
    let rhs = field.eval(p)?;
    let det = lhs.det();
    let delta = lhs
        .solve(rhs, cfg.det_tol)
        .ok_or(Error::SingularStep { det })?;
    (p + delta.scale(h)).checked()
}

/// The inverse of [`step`]: the step with `h` negated.
pub fn inverse_step(field: &QuadraticField2, cfg: &StepConfig, p: Point2) -> Result<Point2> {
    step(field, &cfg.reversed(), p)
}

/// Residual of the defining implicit relation at a pair `(p, p')`.
pub fn implicit_residual(field: &QuadraticField2, h: f64, p: Point2, next: Point2) -> Result<Vec2> {
    let polar = field.polarize(p, next)?;
    let lin = field.lin().mul_vec(p + next).scale(0.5);
    ((next - p).scale(1.0 / h) - polar - lin - field.constant()).checked()
}

/// Jacobian of the Kahan map at `p`:
/// `DΦ(p) = (I − (h/2)J_f(p))⁻¹ (I + (h/2)J_f(p'))`.
///
/// Follows from differentiating the implicit relation: the `p'`-derivative of
/// `Q̄(p, p')` is `½(J_f(p) − B)` and the `p`-derivative is `½(J_f(p') − B)`.
pub fn step_jacobian(field: &QuadraticField2, cfg: &StepConfig, p: Point2) -> Result<Mat2> {
    let (lhs, rhs) = jacobian_factors(field, cfg, p)?;
    let rhs_det = rhs.det();
    if !(rhs_det.abs() >= cfg.det_tol) {
        return Err(Error::SingularJacobian { det: rhs_det });
    }
    let det = lhs.det();
    let inv = lhs
        .inverse(cfg.det_tol)
        .ok_or(Error::SingularStep { det })?;
    Ok(inv * rhs)
}

/// `det DΦ(p) = det(I + (h/2)J_f(p')) / det(I − (h/2)J_f(p))`.
pub fn step_jacobian_det(field: &QuadraticField2, cfg: &StepConfig, p: Point2) -> Result<f64> {
    let (lhs, rhs) = jacobian_factors(field, cfg, p)?;
    let det = lhs.det();
    if !(det.abs() > cfg.det_tol) {
        return Err(Error::SingularStep { det });
    }
    let ratio = rhs.det() / det;
    if ratio.is_finite() {
        Ok(ratio)
    } else {
        Err(Error::EvaluationOverflow)
    }
}

/// `(I − (h/2)J_f(p), I + (h/2)J_f(p'))`.
fn jacobian_factors(field: &QuadraticField2, cfg: &StepConfig, p: Point2) -> Result<(Mat2, Mat2)> {
    let next = step(field, cfg, p)?;
    let half = 0.5 * cfg.h;
    Ok((
        shifted_identity(-half, field.jacobian(p)?),
        shifted_identity(half, field.jacobian(next)?),
    ))
}

/// Why an orbit stopped before the requested number of steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TerminationReason {
    SingularStep { det: f64 },
    Overflow,
}

impl fmt::Display for TerminationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminationReason::SingularStep { det } => write!(f, "singular step (det = {det:e})"),
            TerminationReason::Overflow => f.write_str("evaluation overflow"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Termination {
    /// Index of the last record; the step from it failed.
    pub step: usize,
    pub reason: TerminationReason,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub n: usize,
    pub t: f64,
    pub point: Point2,
    /// `H`, present when the orbit was generated with a system.
    pub hamiltonian: Option<f64>,
    /// `H̃`, present when the orbit was generated with a system and `H̃` has no pole here.
    pub modified: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub h: f64,
    pub records: Vec<TrajectoryRecord>,
    pub termination: Option<Termination>,
}

impl Trajectory {
    pub fn terminated_early(&self) -> bool {
        self.termination.is_some()
    }

    pub fn last_point(&self) -> Point2 {
        self.records.last().map(|r| r.point).unwrap_or_default()
    }

    pub fn points(&self) -> impl Iterator<Item = Point2> + '_ {
        self.records.iter().map(|r| r.point)
    }
}

/// Iterates [`step`] `n_steps` times from `p0`. Step failures end the orbit early
/// with the reason recorded; only a non-finite `p0` is an error.
pub fn orbit(
    field: &QuadraticField2,
    cfg: &StepConfig,
    p0: Point2,
    n_steps: usize,
) -> Result<Trajectory> {
    run_orbit(field, None, cfg, p0, n_steps)
}

/// Like [`orbit`], with the `H` and `H̃` columns filled from `sys`.
pub fn orbit_system(
    sys: &SystemSpec,
    cfg: &StepConfig,
    p0: Point2,
    n_steps: usize,
) -> Result<Trajectory> {
    run_orbit(sys.field(), Some(sys), cfg, p0, n_steps)
}

fn run_orbit(
    field: &QuadraticField2,
    sys: Option<&SystemSpec>,
    cfg: &StepConfig,
    p0: Point2,
    n_steps: usize,
) -> Result<Trajectory> {
    p0.finite()?;
    let record = |n: usize, point: Point2| TrajectoryRecord {
        n,
        t: n as f64 * cfg.h,
        point,
        hamiltonian: sys.and_then(|s| s.hamiltonian(point).ok()),
        modified: sys.and_then(|s| s.modified_hamiltonian(cfg.h, point).ok()),
    };
    let mut records = Vec::with_capacity(n_steps + 1);
    records.push(record(0, p0));
    let mut termination = None;
    let mut p = p0;
    for n in 1..=n_steps {
        match step(field, cfg, p) {
            Ok(next) => {
                p = next;
                records.push(record(n, p));
            }
            Err(e) => {
                let reason = match e {
                    Error::SingularStep { det } => TerminationReason::SingularStep { det },
                    _ => TerminationReason::Overflow,
                };
                termination = Some(Termination {
                    step: n - 1,
                    reason,
                });
                break;
            }
        }
    }
    Ok(Trajectory {
        h: cfg.h,
        records,
        termination,
    })
}

const REFERENCE_MAX_HALVINGS: u32 = 20;
const REFERENCE_INITIAL_STEPS: usize = 8;

fn rk4_integrate(field: &QuadraticField2, p0: Point2, t: f64, n: usize) -> Result<Point2> {
    let dt = t / n as f64;
    let mut p = p0;
    for _ in 0..n {
        let k1 = field.eval(p)?;
        let k2 = field.eval(p + k1.scale(0.5 * dt))?;
        let k3 = field.eval(p + k2.scale(0.5 * dt))?;
        let k4 = field.eval(p + k3.scale(dt))?;
        p = (p + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(dt / 6.0)).checked()?;
    }
    Ok(p)
}

/// High-accuracy approximation of the exact flow at time `t`, used as an oracle.
///
/// Classical RK4 with the step count doubled until two successive answers differ
/// by less than `tol`; returns the finer one.
pub fn reference_flow(field: &QuadraticField2, p0: Point2, t: f64, tol: f64) -> Result<Point2> {
    p0.finite()?;
    if !(tol > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(
            "reference flow needs tol > 0 and finite t".into(),
        ));
    }
    if t == 0.0 {
        return Ok(p0);
    }
    let mut n = REFERENCE_INITIAL_STEPS;
    let mut coarse = rk4_integrate(field, p0, t, n)?;
    for _ in 0..REFERENCE_MAX_HALVINGS {
        n *= 2;
        let fine = rk4_integrate(field, p0, t, n)?;
        if (fine - coarse).norm() < tol {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::NoConvergence {
        tol,
        halvings: REFERENCE_MAX_HALVINGS,
    })
}
