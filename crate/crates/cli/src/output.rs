//! CSV, manifest and SVG writers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use ladderwave::SystemParams;
use serde::Serialize;

use crate::error::CliError;

/// Emitter parameters as given at the command line, plus the resolved set.
#[derive(Debug, Clone, Serialize)]
pub struct ParamRecord {
    pub omega1: f64,
    pub gamma2_over_omega1: f64,
    pub ratio: f64,
    pub alpha_r: f64,
    pub resolved: SystemParams,
}

/// Everything needed to reproduce one output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub params: Vec<ParamRecord>,
    /// Grid, time and oracle settings in order of declaration.
    pub settings: Vec<(String, String)>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            tool: "ladderwave",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            params: Vec::new(),
            settings: Vec::new(),
            outputs: Vec::new(),
            wall_clock_seconds: None,
        }
    }

    pub fn param(mut self, record: ParamRecord) -> Self {
        self.params.push(record);
        self
    }

    pub fn setting(mut self, key: &str, value: impl ToString) -> Self {
        self.settings.push((key.to_string(), value.to_string()));
        self
    }

    /// `#`-prefixed lines; free of timing so that equal manifests give equal
    /// files.
    fn header(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} {}", self.tool, self.version);
        let _ = writeln!(out, "# command: {}", self.command);
        for p in &self.params {
            let r = &p.resolved;
            let _ = writeln!(
                out,
                "# params: omega1={} gamma2_over_omega1={} ratio={} alpha_r={} \
                 (omega2={} delta_omega={} gamma1={} gamma2={} v_g={})",
                p.omega1,
                p.gamma2_over_omega1,
                p.ratio,
                p.alpha_r,
                r.omega2(),
                r.delta_omega(),
                r.gamma1(),
                r.gamma2(),
                r.v_g()
            );
        }
        for (k, v) in &self.settings {
            let _ = writeln!(out, "# {k}: {v}");
        }
        for o in &self.outputs {
            let _ = writeln!(out, "# output: {o}");
        }
        out
    }
}

/// Column-major numeric table.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn to_csv(&self, manifest: &RunManifest) -> String {
        let mut out = manifest.header();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// How to render a table as SVG.
#[derive(Debug, Clone)]
pub enum Plot {
    /// Columns `ys` against column `x`.
    Lines { x: usize, ys: Vec<usize> },
    /// Row-major map of column `z` on the grid spanned by columns `x` and `y`.
    Heatmap { x: usize, y: usize, z: usize, nx: usize, ny: usize },
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes the primary output, its sibling manifest and the optional SVG.
pub fn emit(
    out: Option<&Path>,
    mut manifest: RunManifest,
    body: Body,
    svg: Option<Plot>,
    elapsed: Duration,
) -> Result<(), CliError> {
    let Some(path) = out else {
        if svg.is_some() {
            return Err(CliError::Validation("--svg requires --out".into()));
        }
        let text = match &body {
            Body::Csv(table) => table.to_csv(&manifest),
            Body::Json(json) => format!("{json}\n"),
        };
        print!("{text}");
        return Ok(());
    };
    let manifest_path = sibling(path, "manifest.json");
    manifest.outputs.push(path.display().to_string());
    manifest.outputs.push(manifest_path.display().to_string());
    let svg_path = svg.as_ref().map(|_| sibling(path, "svg"));
    if let Some(p) = &svg_path {
        manifest.outputs.push(p.display().to_string());
    }
    match &body {
        Body::Csv(table) => {
            write(path, &table.to_csv(&manifest))?;
            if let (Some(plot), Some(p)) = (svg, &svg_path) {
                write(p, &render(table, &plot, &manifest.command))?;
            }
        }
        Body::Json(json) => {
            if svg.is_some() {
                return Err(CliError::Validation("--svg is not available for JSON output".into()));
            }
            write(path, &format!("{json}\n"))?;
        }
    }
    manifest.wall_clock_seconds = Some(elapsed.as_secs_f64());
    let json = serde_json::to_string_pretty(&manifest).expect("manifest is plain data");
    write(&manifest_path, &format!("{json}\n"))
}

pub enum Body {
    Csv(Table),
    Json(String),
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#7f7f7f"];

fn range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

/// Blue to yellow ramp for `u` in `[0, 1]`.
fn ramp(u: f64) -> String {
    let u = u.clamp(0.0, 1.0);
    let r = (255.0 * u) as u8;
    let g = (40.0 + 200.0 * u) as u8;
    let b = (140.0 * (1.0 - u)) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn render(table: &Table, plot: &Plot, title: &str) -> String {
    let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{}">{title}</text>"#, MARGIN / 2.0);
    let xk = match plot {
        Plot::Lines { x, .. } | Plot::Heatmap { x, .. } => *x,
    };
    let (x0, x1) = range(&table.column(xk));
    let sx = |v: f64| MARGIN + (v - x0) / (x1 - x0) * pw;
    match plot {
        Plot::Lines { ys, .. } => {
            let all: Vec<f64> = ys.iter().flat_map(|&k| table.column(k)).collect();
            let (y0, y1) = range(&all);
            let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * ph;
            for (n, &k) in ys.iter().enumerate() {
                let points: Vec<String> = table
                    .rows
                    .iter()
                    .map(|r| format!("{:.2},{:.2}", sx(r[xk]), sy(r[k])))
                    .collect();
                let color = COLORS[n % COLORS.len()];
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    points.join(" ")
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
                    WIDTH - MARGIN + 4.0,
                    MARGIN + 14.0 * n as f64,
                    table.columns[k]
                );
            }
            axis_labels(&mut s, (x0, x1), (y0, y1), &table.columns[xk], "");
        }
        Plot::Heatmap { y, z, nx, ny, .. } => {
            let (y0, y1) = range(&table.column(*y));
            let (_, zmax) = range(&table.column(*z));
            let stride_x = nx.div_ceil(200).max(1);
            let stride_y = ny.div_ceil(200).max(1);
            let cw = pw / (*nx as f64 / stride_x as f64).ceil();
            let ch = ph / (*ny as f64 / stride_y as f64).ceil();
            for i in (0..*nx).step_by(stride_x) {
                for j in (0..*ny).step_by(stride_y) {
                    let r = &table.rows[i * ny + j];
                    let px = sx(r[xk]) - 0.5 * cw;
                    let py = HEIGHT - MARGIN - (r[*y] - y0) / (y1 - y0) * ph - 0.5 * ch;
                    let u = if zmax > 0.0 { r[*z] / zmax } else { 0.0 };
                    let _ = writeln!(
                        s,
                        r#"<rect x="{px:.2}" y="{py:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                        cw + 0.3,
                        ch + 0.3,
                        ramp(u)
                    );
                }
            }
            axis_labels(&mut s, (x0, x1), (y0, y1), &table.columns[xk], &table.columns[*y]);
        }
    }
    s.push_str("</svg>\n");
    s
}

fn axis_labels(s: &mut String, x: (f64, f64), y: (f64, f64), xname: &str, yname: &str) {
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    let _ = writeln!(s, r#"<text x="{left}" y="{}">{:.4}</text>"#, bottom + 16.0, x.0);
    let _ = writeln!(s, r#"<text x="{right}" y="{}" text-anchor="end">{:.4}</text>"#, bottom + 16.0, x.1);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{xname}</text>"#, 0.5 * WIDTH, bottom + 32.0);
    let _ = writeln!(s, r#"<text x="{}" y="{bottom}" text-anchor="end">{:.4}</text>"#, left - 4.0, y.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{:.4}</text>"#, left - 4.0, top + 10.0, y.1);
    if !yname.is_empty() {
        let _ = writeln!(s, r#"<text x="{}" y="{}">{yname}</text>"#, 4.0, 0.5 * HEIGHT);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest() -> RunManifest {
        RunManifest::new("test").setting("n", 2)
    }

    #[test]
    fn csv_has_header_and_full_precision() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![0.1, 1.0 / 3.0]);
        let csv = t.to_csv(&manifest());
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# ladderwave"));
        assert!(lines.contains(&"# n: 2"));
        assert_eq!(lines[lines.len() - 2], "a,b");
        assert_eq!(lines[lines.len() - 1], "1.0000000000000001e-1,3.3333333333333331e-1");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(sibling(Path::new("d/probs.csv"), "svg"), PathBuf::from("d/probs.svg"));
        assert_eq!(
            sibling(Path::new("report.json"), "manifest.json"),
            PathBuf::from("report.manifest.json")
        );
    }

    #[test]
    fn svg_renders_both_kinds() {
        let mut t = Table::new(&["x", "y", "z"]);
        for i in 0..3 {
            for j in 0..3 {
                t.push(vec![i as f64, j as f64, (i * j) as f64]);
            }
        }
        let lines = render(&t, &Plot::Lines { x: 0, ys: vec![2] }, "t");
        assert!(lines.contains("<polyline") && lines.ends_with("</svg>\n"));
        let map = render(&t, &Plot::Heatmap { x: 0, y: 1, z: 2, nx: 3, ny: 3 }, "t");
        assert_eq!(map.matches("<rect x=").count(), 9 + 1);
    }
}
