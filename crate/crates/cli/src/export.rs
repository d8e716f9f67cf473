use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use qudit_core::{Complex, Matrix};
use serde::Serialize;

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing")?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Row-major `i,j,value` with 1-based indices.
pub fn write_csv(path: &Path, m: &Matrix, part: impl Fn(Complex) -> f64) -> Result<()> {
    let mut text = String::from("i,j,value\n");
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            writeln!(text, "{},{},{}", i + 1, j + 1, part(m[(i, j)])).expect("writing to String");
        }
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
