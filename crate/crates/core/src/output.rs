//! File formats: degree and histogram CSVs, JSON documents, the run manifest
//! and a small self-contained SVG histogram.
//!
//! Floats are written with Rust's shortest round-trip formatting, so identical
//! runs produce byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{DegreeSummary, Histogram};
use crate::error::Result;
use crate::model::ModelParams;
use crate::sampler::ChainOutput;

/// Parameters as recorded in manifests: the canonical β-pair plus the derived
/// spin parameters for readability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub n: usize,
    pub beta1: f64,
    pub beta2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl From<&ModelParams> for ParamsRecord {
    fn from(p: &ModelParams) -> Self {
        Self { n: p.n(), beta1: p.beta1(), beta2: p.beta2(), theta1: p.theta1(), theta2: p.theta2() }
    }
}

/// Everything needed to rerun a command. Wall time is written to `timing.txt`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    pub outputs: Vec<String>,
    pub summary: serde_json::Value,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: serde_json::Value::Null,
            seed: None,
            config: serde_json::Value::Null,
            outputs: Vec::new(),
            summary: serde_json::Value::Null,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// One row per recorded sweep: `sweep,v0,v1,…` with scaled degrees.
pub fn write_degrees_csv(path: &Path, out: &ChainOutput) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let n = out.final_state.n();
    let mut header = vec!["sweep".to_string()];
    header.extend((0..n).map(|i| format!("v{i}")));
    w.write_record(&header)?;
    for (sweep, s) in out.recorded_sweeps.iter().zip(&out.samples) {
        let mut row = vec![sweep.to_string()];
        row.extend(s.scaled_degrees.iter().map(|x| x.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// `bin_left,bin_right,count` per bin.
pub fn write_histogram_csv(path: &Path, h: &Histogram) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["bin_left", "bin_right", "count"])?;
    for (k, c) in h.counts.iter().enumerate() {
        let (l, r) = h.bin_edges(k);
        w.write_record([l.to_string(), r.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `t,tanh` pairs of the mean-field curve.
pub fn write_curve_csv(path: &Path, curve: &[(f64, f64)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["t", "tanh"])?;
    for (t, y) in curve {
        w.write_record([t.to_string(), y.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_rows_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Histogram of a degree summary as a standalone SVG bar chart.
pub fn write_histogram_svg(path: &Path, s: &DegreeSummary, title: &str) -> Result<()> {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 40.0;
    let h = &s.histogram;
    let peak = h.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let bar_w = (W - 2.0 * PAD) / h.bins() as f64;
    let mut w = create(path)?;
    writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#)?;
    writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(w, r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#, W / 2.0, xml_escape(title))?;
    for (k, &c) in h.counts.iter().enumerate() {
        let bh = (H - 2.0 * PAD) * c as f64 / peak;
        let x = PAD + k as f64 * bar_w;
        writeln!(
            w,
            r##"<rect x="{x:.2}" y="{:.2}" width="{:.2}" height="{bh:.2}" fill="#4477aa" stroke="white" stroke-width="0.5"/>"##,
            H - PAD - bh,
            bar_w
        )?;
    }
    writeln!(w, r#"<line x1="{PAD}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#, H - PAD, W - PAD)?;
    for tick in 0..=4 {
        let v = tick as f64 / 4.0;
        let x = PAD + v * (W - 2.0 * PAD);
        writeln!(w, r#"<text x="{x:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{v}</text>"#, H - PAD + 16.0)?;
    }
    writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">mean {:.4}  min {:.4}  max {:.4}</text>"#,
        W - PAD,
        PAD,
        s.mean,
        s.min,
        s.max
    )?;
    writeln!(w, "</svg>")?;
    w.flush()?;
    Ok(())
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
