use std::io::Write;
use std::path::{Path, PathBuf};

use kahan_core::verify::{self, REFERENCE_TOL};
use kahan_core::{
    kahan, Error as CoreError, Family, Point2, SampleSpec, StepConfig, Suite, Trajectory,
};

use crate::config::{Format, RunConfig};
use crate::format::{self, TrajectoryTable, Window};
use crate::CliError;

/// Coarsest step of the default order study (`h`, `h/2`, `h/4`).
pub const DEFAULT_ORDER_H: f64 = 1.0 / 64.0;
pub const DEFAULT_ORDER_HORIZON: f64 = 0.5;
pub const DEFAULT_VERIFY_H: f64 = 0.05;
const DRIFT_SCAN_LEVELS: usize = 4;

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("cannot write {}: {e}", path.display()))
}

/// Writes `content` to `path`, or to `stdout` when no path is given.
fn emit(path: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| io_error(p, e)),
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn core_usage(e: CoreError) -> CliError {
    CliError::usage(e.to_string())
}

fn step_config(cfg: &RunConfig, h: f64) -> Result<StepConfig, CliError> {
    match cfg.det_tol {
        Some(tol) => StepConfig::with_det_tol(h, tol),
        None => StepConfig::new(h),
    }
    .map_err(core_usage)
}

fn warn_degenerate(sys: &kahan_core::SystemSpec) {
    for w in sys.warnings() {
        eprintln!("warning: {w}");
    }
}

pub fn cmd_simulate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let h = cfg.require_h("simulate")?;
    let sys = cfg.system()?;
    warn_degenerate(&sys);
    let traj = kahan::orbit_system(&sys, &step_config(cfg, h)?, cfg.start, cfg.steps)
        .map_err(core_usage)?;
    let content = match cfg.format {
        Format::Csv => TrajectoryTable::from_trajectory(&traj).to_csv(),
        Format::JsonLines => format::trajectory_jsonl(&traj),
        Format::Svg => return Err(CliError::usage("simulate: --format must be csv or jsonl")),
    };
    emit(cfg.out.as_deref(), &content, stdout)?;
    if let Some(t) = &traj.termination {
        eprintln!(
            "note: orbit terminated early after step {}: {}",
            t.step, t.reason
        );
    }
    Ok(0)
}

fn sample_spec(cfg: &RunConfig) -> Result<SampleSpec, CliError> {
    let mut spec = SampleSpec::new(cfg.region_or_default(), cfg.samples, cfg.seed)
        .map_err(core_usage)?
        .with_exclusion_radius(cfg.exclusion);
    if let Some(tol) = cfg.det_tol {
        spec = spec.with_det_tol(tol);
    }
    if let Some(tol) = cfg.pole_tol {
        spec = spec.with_pole_tol(tol);
    }
    Ok(spec)
}

/// Maps core errors raised while running a suite: bad inputs are usage errors,
/// everything else means the suite could not certify the claim.
fn suite_error(e: CoreError) -> CliError {
    match e {
        CoreError::InvalidArgument(_)
        | CoreError::DegenerateParams(_)
        | CoreError::NonFinitePoint { .. } => CliError::usage(e.to_string()),
        other => CliError::SuiteFailed(other.to_string()),
    }
}

pub fn cmd_verify(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let suite = cfg.suite()?;
    let sys = cfg.system()?;
    warn_degenerate(&sys);
    let report = match suite {
        Suite::Conservation => {
            let h = cfg.h.unwrap_or(DEFAULT_VERIFY_H);
            verify::conservation_report(&sys, h, &sample_spec(cfg)?)
        }
        Suite::Measure => {
            let h = cfg.h.unwrap_or(DEFAULT_VERIFY_H);
            verify::measure_report(&sys, h, &sample_spec(cfg)?)
        }
        Suite::Reversibility => {
            let h = cfg.h.unwrap_or(DEFAULT_VERIFY_H);
            verify::reversibility_report(sys.field(), h, &sample_spec(cfg)?)
        }
        Suite::Order => {
            let h = cfg.h.unwrap_or(DEFAULT_ORDER_H);
            let horizon = cfg.horizon.unwrap_or(DEFAULT_ORDER_HORIZON);
            verify::order_report(&sys, cfg.start, horizon, &[h, h / 2.0, h / 4.0])
        }
        Suite::DriftScan => {
            let h = cfg.h.unwrap_or(DEFAULT_VERIFY_H);
            let hs: Vec<f64> = (0..DRIFT_SCAN_LEVELS)
                .map(|k| h / f64::powi(2.0, k as i32))
                .collect();
            verify::h_drift_scan(&sys, cfg.start, cfg.steps, &hs)
        }
    }
    .map_err(suite_error)?;

    write!(stdout, "{report}").map_err(|e| CliError::Io(e.to_string()))?;
    if suite == Suite::Order {
        let exact = kahan::reference_flow(
            sys.field(),
            cfg.start,
            cfg.horizon.unwrap_or(DEFAULT_ORDER_HORIZON),
            REFERENCE_TOL,
        )
        .map_err(suite_error)?;
        writeln!(
            stdout,
            "reference endpoint: ({}, {})",
            format::fmt_num(exact.x),
            format::fmt_num(exact.y)
        )
        .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let path = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}-report.txt", suite.as_str())));
    std::fs::write(&path, format::report_key_values(&report)).map_err(|e| io_error(&path, e))?;
    Ok(if report.passed { 0 } else { 1 })
}

/// Orbit seeds evenly spaced along `segment` (both ends included).
pub fn phase_seeds(segment: [f64; 4], count: usize) -> Vec<Point2> {
    let [xs, ys, xe, ye] = segment;
    (0..count)
        .map(|i| {
            let s = if count > 1 {
                i as f64 / (count - 1) as f64
            } else {
                0.0
            };
            Point2::new(xs + s * (xe - xs), ys + s * (ye - ys))
        })
        .collect()
}

pub fn cmd_phase(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let h = cfg.require_h("phase")?;
    if cfg.orbits == 0 {
        return Err(CliError::usage("phase: --orbits must be at least 1"));
    }
    let sys = cfg.system()?;
    warn_degenerate(&sys);
    let step = step_config(cfg, h)?;
    let segment = cfg.segment.unwrap_or([
        0.5 * cfg.start.x,
        0.5 * cfg.start.y,
        cfg.start.x,
        cfg.start.y,
    ]);
    let orbits: Vec<Trajectory> = phase_seeds(segment, cfg.orbits)
        .into_iter()
        .map(|seed| kahan::orbit_system(&sys, &step, seed, cfg.steps))
        .collect::<Result<_, _>>()
        .map_err(core_usage)?;

    let content = match cfg.format {
        Format::Csv => format::phase_csv(&orbits),
        Format::JsonLines => format::phase_jsonl(&orbits),
        Format::Svg => {
            let window = cfg
                .region
                .map(|r| Window {
                    x_min: r.x_min,
                    x_max: r.x_max,
                    y_min: r.y_min,
                    y_max: r.y_max,
                })
                .unwrap_or(Window {
                    x_min: -3.0,
                    x_max: 3.0,
                    y_min: -3.0,
                    y_max: 3.0,
                });
            let params: Vec<String> = match cfg.params {
                kahan_core::FamilyParams::Quartic(p) => {
                    p.as_array().map(format::fmt_num_short).to_vec()
                }
                kahan_core::FamilyParams::Sextic(p) => {
                    p.as_array().map(format::fmt_num_short).to_vec()
                }
            };
            let title = format!(
                "Kahan orbits, {} ({}), h = {}",
                cfg.family(),
                params.join(", "),
                format::fmt_num_short(h)
            );
            format::phase_svg(&orbits, window, &title)
        }
    };
    emit(cfg.out.as_deref(), &content, stdout)?;
    Ok(0)
}

pub fn cmd_constants(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let h = match (cfg.family(), cfg.h) {
        (_, Some(h)) => h,
        (Family::Quartic, None) => 0.0,
        (Family::Sextic, None) => {
            return Err(CliError::usage(
                "constants: --h is required for the sextic family",
            ))
        }
    };
    let sys = cfg.system()?;
    let mut text = String::new();
    for (label, value) in sys.invariant_constants(h).labeled() {
        text.push_str(&format!("{label}={}\n", format::fmt_num_short(value)));
    }
    emit(None, &text, stdout)?;
    Ok(0)
}
