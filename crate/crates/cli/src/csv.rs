//! CSV emission and parsing.
//!
//! Each evaluated time becomes one block: `#` comment lines, a `theta,P` (or `phi,P`)
//! header and one row per grid point, values written with 15 significant digits.
//! Blocks are separated by a blank line.

use std::fmt::Write as _;
use std::io::{self, Write};

use qnd_phase::{Error, Result};

use crate::scenario::SeriesResult;

/// Format with 15 significant digits (negative zero is written as zero).
pub fn fmt_value(x: f64) -> String {
    let x = x + 0.0;
    format!("{x:.14e}")
}

pub fn render_block(r: &SeriesResult) -> String {
    let pd = &r.distribution;
    let meta = pd.metadata();
    let mut out = String::new();
    let _ = writeln!(out, "# series: {}", r.label);
    let _ = writeln!(out, "# system: {}", meta.system);
    let _ = writeln!(out, "# state: {}", meta.state);
    let _ = writeln!(out, "# bath: {}", meta.bath);
    let _ = writeln!(out, "# grid: {}", pd.len());
    let _ = writeln!(out, "# t: {}", fmt_value(r.t));
    let _ = writeln!(out, "# eta: {}", fmt_value(r.kernels.eta));
    let _ = writeln!(out, "# gamma: {}", fmt_value(r.kernels.gamma));
    let _ = writeln!(out, "# trunc_error: {}", fmt_value(r.trunc_error));
    let _ = writeln!(out, "{},P", pd.axis().as_str());
    for (x, p) in pd.grid().iter().zip(pd.values()) {
        let _ = writeln!(out, "{},{}", fmt_value(*x), fmt_value(*p));
    }
    out
}

pub fn render(results: &[SeriesResult]) -> String {
    results.iter().map(render_block).collect::<Vec<_>>().join("\n")
}

pub fn write_csv<W: Write>(results: &[SeriesResult], mut w: W) -> io::Result<()> {
    w.write_all(render(results).as_bytes())?;
    w.flush()
}

/// A parsed CSV block.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvBlock {
    /// Comment lines without the leading `# `.
    pub comments: Vec<String>,
    pub axis: String,
    pub rows: Vec<(f64, f64)>,
}

impl CsvBlock {
    /// Value of a `key: value` comment line.
    pub fn comment(&self, key: &str) -> Option<&str> {
        self.comments
            .iter()
            .find_map(|c| c.strip_prefix(key).and_then(|rest| rest.strip_prefix(": ")))
    }
}

pub fn parse(text: &str) -> Result<Vec<CsvBlock>> {
    let mut blocks = Vec::new();
    let mut current: Option<CsvBlock> = None;
    let mut comments = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let bad = |msg: &str| Error::Config(format!("csv line {}: {msg}", lineno + 1));
        if line.trim().is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            comments.push(c.trim_start().to_string());
            continue;
        }
        if current.is_none() {
            let (axis, p) = line.split_once(',').ok_or_else(|| bad("expected a header row"))?;
            if p != "P" || !(axis == "theta" || axis == "phi") {
                return Err(bad("header must be theta,P or phi,P"));
            }
            current = Some(CsvBlock {
                comments: std::mem::take(&mut comments),
                axis: axis.to_string(),
                rows: Vec::new(),
            });
            continue;
        }
        let (a, b) = line.split_once(',').ok_or_else(|| bad("expected two columns"))?;
        let x: f64 = a.parse().map_err(|_| bad("unparsable angle"))?;
        let y: f64 = b.parse().map_err(|_| bad("unparsable value"))?;
        if let Some(block) = current.as_mut() {
            block.rows.push((x, y));
        }
    }
    if let Some(b) = current.take() {
        blocks.push(b);
    }
    Ok(blocks)
}
