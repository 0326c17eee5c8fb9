#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl From<Output> for Run {
    fn from(out: Output) -> Self {
        Run {
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
            stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        }
    }
}

/// Runs the `kahan` binary inside `dir`.
pub fn kahan(dir: &Path, args: &[&str]) -> Run {
    Command::new(env!("CARGO_BIN_EXE_kahan"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("failed to spawn kahan")
        .into()
}

pub const QUARTIC: [&str; 4] = ["--family", "quartic", "--params", "1,0,1,0,1"];
pub const SEXTIC: [&str; 4] = ["--family", "sextic", "--params", "1,0,0,1,1,1"];

pub fn with<'a>(base: &[&'a str], rest: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(rest).copied().collect()
}

/// Data rows of a CSV file (header and comment lines removed).
pub fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

/// Parses a key=value report file.
pub fn key_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_owned(), v.to_owned()))
        .collect()
}

pub const REPORT_KEYS: [&str; 7] = [
    "suite",
    "samples_attempted",
    "samples_used",
    "max_violation",
    "mean_violation",
    "threshold",
    "passed",
];

/// Checks that `text` carries every required report key exactly once, in order, with typed values.
pub fn report_schema_ok(text: &str) -> Result<(), String> {
    let kv = key_values(text);
    if text.lines().count() != kv.len() {
        return Err("line without '='".into());
    }
    let keys: Vec<&str> = kv.iter().map(|(k, _)| k.as_str()).collect();
    if keys.len() < REPORT_KEYS.len() || keys[..REPORT_KEYS.len()] != REPORT_KEYS {
        return Err(format!("unexpected keys {keys:?}"));
    }
    for (k, v) in &kv {
        let ok = match k.as_str() {
            "suite" => !v.is_empty(),
            "samples_attempted" | "samples_used" => v.parse::<usize>().is_ok(),
            "passed" => v == "true" || v == "false",
            _ => v.parse::<f64>().is_ok(),
        };
        if !ok {
            return Err(format!("bad value {k}={v}"));
        }
    }
    Ok(())
}

pub fn value<'a>(kv: &'a [(String, String)], key: &str) -> Option<&'a str> {
    kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}
