//! File formats: trajectory CSV and JSON lines, key=value reports, SVG phase portraits.
//!
//! Numbers are written with Rust's `Debug` for `f64`, which yields the shortest
//! decimal string that parses back to the same value (switching to exponent
//! notation for very small and very large magnitudes). Parsing a trajectory CSV
//! and writing it again therefore reproduces the input byte for byte.

use std::fmt::Write as _;

use kahan_core::{Point2, Trajectory, VerificationReport};
use serde_json::json;

use crate::CliError;

pub const CSV_HEADER: &str = "n,t,x,y,H,Htilde";
pub const PHASE_CSV_HEADER: &str = "orbit,n,t,x,y,H,Htilde";

/// Shortest round-trip decimal.
pub fn fmt_num(v: f64) -> String {
    format!("{v:?}")
}

/// Value rounded to 15 significant digits, then printed shortest; for human-facing output.
pub fn fmt_num_short(v: f64) -> String {
    let rounded: f64 = format!("{v:.14e}").parse().unwrap_or(v);
    format!("{rounded}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn parse_opt(field: &str, line: usize) -> Result<Option<f64>, CliError> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| CliError::usage(format!("line {line}: bad number '{field}'")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub n: usize,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub hamiltonian: Option<f64>,
    pub modified: Option<f64>,
}

/// In-memory form of a trajectory CSV: data rows followed by `#` comment lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryTable {
    pub rows: Vec<TrajectoryRow>,
    pub comments: Vec<String>,
}

impl TrajectoryTable {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        let rows = traj
            .records
            .iter()
            .map(|r| TrajectoryRow {
                n: r.n,
                t: r.t,
                x: r.point.x,
                y: r.point.y,
                hamiltonian: r.hamiltonian,
                modified: r.modified,
            })
            .collect();
        let comments = traj
            .termination
            .iter()
            .map(|t| format!("terminated early after step {}: {}", t.step, t.reason))
            .collect();
        Self { rows, comments }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.n,
                fmt_num(r.t),
                fmt_num(r.x),
                fmt_num(r.y),
                fmt_opt(r.hamiltonian),
                fmt_opt(r.modified)
            );
        }
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header == CSV_HEADER => {}
            _ => return Err(CliError::usage(format!("expected header '{CSV_HEADER}'"))),
        }
        let mut table = TrajectoryTable::default();
        for (i, line) in lines {
            let lineno = i + 1;
            if let Some(comment) = line.strip_prefix('#') {
                table
                    .comments
                    .push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(CliError::usage(format!("line {lineno}: expected 6 fields")));
            }
            let req = |k: usize| {
                parse_opt(fields[k], lineno)?
                    .ok_or_else(|| CliError::usage(format!("line {lineno}: missing value")))
            };
            table.rows.push(TrajectoryRow {
                n: fields[0]
                    .parse()
                    .map_err(|_| CliError::usage(format!("line {lineno}: bad step index")))?,
                t: req(1)?,
                x: req(2)?,
                y: req(3)?,
                hamiltonian: parse_opt(fields[4], lineno)?,
                modified: parse_opt(fields[5], lineno)?,
            });
        }
        Ok(table)
    }
}

pub fn trajectory_jsonl(traj: &Trajectory) -> String {
    let mut out = String::new();
    for r in &traj.records {
        let line = json!({
            "n": r.n,
            "t": r.t,
            "x": r.point.x,
            "y": r.point.y,
            "H": r.hamiltonian,
            "Htilde": r.modified,
        });
        let _ = writeln!(out, "{line}");
    }
    if let Some(t) = &traj.termination {
        let line =
            json!({ "terminated_early": { "step": t.step, "reason": t.reason.to_string() } });
        let _ = writeln!(out, "{line}");
    }
    out
}

/// All orbits in one CSV, keyed by an orbit id column.
pub fn phase_csv(orbits: &[Trajectory]) -> String {
    let mut out = String::new();
    out.push_str(PHASE_CSV_HEADER);
    out.push('\n');
    for (id, traj) in orbits.iter().enumerate() {
        for r in &traj.records {
            let _ = writeln!(
                out,
                "{id},{},{},{},{},{},{}",
                r.n,
                fmt_num(r.t),
                fmt_num(r.point.x),
                fmt_num(r.point.y),
                fmt_opt(r.hamiltonian),
                fmt_opt(r.modified)
            );
        }
    }
    for (id, traj) in orbits.iter().enumerate() {
        if let Some(t) = &traj.termination {
            let _ = writeln!(
                out,
                "# orbit {id} terminated early after step {}: {}",
                t.step, t.reason
            );
        }
    }
    out
}

pub fn phase_jsonl(orbits: &[Trajectory]) -> String {
    let mut out = String::new();
    for (id, traj) in orbits.iter().enumerate() {
        for r in &traj.records {
            let line = json!({
                "orbit": id,
                "n": r.n,
                "t": r.t,
                "x": r.point.x,
                "y": r.point.y,
                "H": r.hamiltonian,
                "Htilde": r.modified,
            });
            let _ = writeln!(out, "{line}");
        }
    }
    out
}

/// Machine-readable report: one `key=value` per line.
pub fn report_key_values(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "suite={}", report.suite);
    let _ = writeln!(out, "samples_attempted={}", report.samples_attempted);
    let _ = writeln!(out, "samples_used={}", report.samples_used);
    let _ = writeln!(out, "max_violation={}", fmt_num(report.max_violation));
    let _ = writeln!(out, "mean_violation={}", fmt_num(report.mean_violation));
    let _ = writeln!(out, "threshold={}", fmt_num(report.threshold));
    let _ = writeln!(out, "passed={}", report.passed);
    if let Some(k) = report.fitted_exponent {
        let key = match report.suite {
            kahan_core::Suite::Order => "fitted_order",
            _ => "fitted_exponent",
        };
        let _ = writeln!(out, "{key}={}", fmt_num(k));
    }
    out
}

/// Plot window in model coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

const SVG_SIZE: f64 = 640.0;
const SVG_MARGIN: f64 = 48.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Static SVG overlaying one polyline per non-empty orbit, clipped to `window`.
pub fn phase_svg(orbits: &[Trajectory], window: Window, title: &str) -> String {
    let plot = SVG_SIZE - 2.0 * SVG_MARGIN;
    let sx = plot / (window.x_max - window.x_min);
    let sy = plot / (window.y_max - window.y_min);
    let to_px = |p: Point2| {
        (
            SVG_MARGIN + (p.x - window.x_min) * sx,
            SVG_MARGIN + (window.y_max - p.y) * sy,
        )
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SVG_SIZE
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot"><rect x="{m}" y="{m}" width="{p}" height="{p}"/></clipPath></defs>"#,
        m = SVG_MARGIN,
        p = plot
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        SVG_SIZE / 2.0,
        SVG_MARGIN / 2.0,
        escape_xml(title)
    );

    // axes through the origin when visible, otherwise along the frame
    let axis_y = if window.y_min <= 0.0 && 0.0 <= window.y_max {
        0.0
    } else {
        window.y_min
    };
    let axis_x = if window.x_min <= 0.0 && 0.0 <= window.x_max {
        0.0
    } else {
        window.x_min
    };
    let (x0, ya) = to_px(Point2::new(window.x_min, axis_y));
    let (x1, _) = to_px(Point2::new(window.x_max, axis_y));
    let (xa, y0) = to_px(Point2::new(axis_x, window.y_max));
    let (_, y1) = to_px(Point2::new(axis_x, window.y_min));
    let _ = writeln!(
        out,
        r#"<line x1="{x0}" y1="{ya}" x2="{x1}" y2="{ya}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{xa}" y1="{y0}" x2="{xa}" y2="{y1}" stroke="black" stroke-width="1"/>"#
    );
    let label = |out: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{text}</text>"#
        );
    };
    label(&mut out, x1, ya - 6.0, "end", "x".into());
    label(&mut out, xa + 6.0, y0 + 12.0, "start", "y".into());
    let bottom = SVG_SIZE - SVG_MARGIN + 16.0;
    label(
        &mut out,
        SVG_MARGIN,
        bottom,
        "start",
        fmt_num_short(window.x_min),
    );
    label(
        &mut out,
        SVG_SIZE - SVG_MARGIN,
        bottom,
        "end",
        fmt_num_short(window.x_max),
    );
    label(
        &mut out,
        SVG_MARGIN - 4.0,
        SVG_SIZE - SVG_MARGIN,
        "end",
        fmt_num_short(window.y_min),
    );
    label(
        &mut out,
        SVG_MARGIN - 4.0,
        SVG_MARGIN + 4.0,
        "end",
        fmt_num_short(window.y_max),
    );

    let _ = writeln!(
        out,
        r#"<g clip-path="url(#plot)" fill="none" stroke-width="1.2">"#
    );
    for (id, traj) in orbits.iter().enumerate() {
        if traj.records.is_empty() {
            continue;
        }
        let points: Vec<String> = traj
            .points()
            .map(|p| {
                let (x, y) = to_px(p);
                format!("{:.3},{:.3}", x, y)
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline data-orbit="{id}" stroke="{}" points="{}"/>"#,
            PALETTE[id % PALETTE.len()],
            points.join(" ")
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
