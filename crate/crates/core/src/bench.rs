//! Corpus-level evaluation: synthesize bright/dimmed inputs by gamma
//! distortion, enhance them with every method, score against the pristine
//! original and aggregate into report tables.
//!
//! Output layout under the bench directory:
//!
//! ```text
//! manifest.csv                          original_path,distorted_path,gamma
//! distorted/<stem>__g<gamma>.<ext>
//! <method>/<distortion>/<stem>.<ext>    enhanced outputs
//! ```
//!
//! Rows and reports never contain timings except the timing table, so the
//! metric tables are byte-identical across runs and thread counts.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agc::{agcwd, enhance_auto, he, imadj, BrightnessClass};
use crate::color::enhance_image;
use crate::error::{Error, Result};
use crate::imageio::{is_supported_extension, read_image, write_image, ImageFormat};
use crate::metrics::MetricReport;
use crate::raster::{gamma_distort, Image};
use crate::sum::order_free_mean;
use crate::EnhanceConfig;

pub const DEFAULT_GAMMAS: [f64; 2] = [0.3, 2.0];
pub const MANIFEST_FILE: &str = "manifest.csv";

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Method {
    He,
    Agcwd,
    Imadj,
    Proposed,
    /// Pass-through control; its rows score the distorted input itself.
    Identity,
}

impl Method {
    pub const DEFAULT: [Method; 4] = [Method::He, Method::Agcwd, Method::Imadj, Method::Proposed];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::He => "he",
            Method::Agcwd => "agcwd",
            Method::Imadj => "imadj",
            Method::Proposed => "proposed",
            Method::Identity => "none",
        }
    }

    fn title(self) -> &'static str {
        match self {
            Method::He => "HE",
            Method::Agcwd => "AGCWD",
            Method::Imadj => "IMADJ",
            Method::Proposed => "PROPOSED",
            Method::Identity => "NONE",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "he" => Ok(Method::He),
            "agcwd" => Ok(Method::Agcwd),
            "imadj" => Ok(Method::Imadj),
            "proposed" | "prop" => Ok(Method::Proposed),
            "none" | "identity" => Ok(Method::Identity),
            other => Err(Error::param(format!("unknown method '{other}'"))),
        }
    }
}

/// A distortion setting, identified by its gamma.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Distortion {
    pub gamma: f64,
}

impl Distortion {
    pub fn kind(self) -> &'static str {
        if self.gamma < 1.0 {
            "bright"
        } else if self.gamma > 1.0 {
            "dimmed"
        } else {
            "none"
        }
    }

    /// E.g. `bright-g0.3`, `dimmed-g2`.
    pub fn label(self) -> String {
        format!("{}-g{}", self.kind(), self.gamma)
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct BenchConfig {
    pub enhance: EnhanceConfig,
    pub agcwd_alpha: f64,
    pub imadj_low: f64,
    pub imadj_high: f64,
    /// Timed repetitions per image; the median is kept.
    pub repetitions: usize,
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            enhance: EnhanceConfig::default(),
            agcwd_alpha: 0.75,
            imadj_low: 0.01,
            imadj_high: 0.01,
            repetitions: 5,
            jobs: 1,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub original_path: PathBuf,
    pub distorted_path: PathBuf,
    pub gamma: f64,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    /// Inputs that could not be decoded, with the reason.
    pub skipped: Vec<(PathBuf, String)>,
}

impl Manifest {
    /// Distorted paths under the manifest's folder are stored relative to it, so output trees are relocatable.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let base = path.parent().unwrap_or(Path::new(""));
        let mut w = csv::Writer::from_path(path)?;
        for e in &self.entries {
            let distorted = e.distorted_path.strip_prefix(base).unwrap_or(&e.distorted_path);
            w.serialize(ManifestEntry {
                original_path: e.original_path.clone(),
                distorted_path: distorted.to_path_buf(),
                gamma: e.gamma,
            })?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Relative distorted paths are resolved against the manifest's folder.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or(Path::new(""));
        let mut r = csv::Reader::from_path(path)?;
        let mut entries: Vec<ManifestEntry> = r.deserialize().collect::<std::result::Result<_, _>>()?;
        for e in &mut entries {
            if e.distorted_path.is_relative() {
                e.distorted_path = base.join(&e.distorted_path);
            }
        }
        Ok(Self {
            entries,
            skipped: Vec::new(),
        })
    }
}

/// Supported image files directly inside `dir`, sorted by path.
pub fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && is_supported_extension(&path) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into())
}

/// Writes one gamma-distorted copy of every readable image per gamma
/// (V channel for color) and the manifest linking them.
pub fn simulate_corpus(input_dir: &Path, output_dir: &Path, gammas: &[f64]) -> Result<Manifest> {
    if gammas.is_empty() {
        return Err(Error::param("at least one gamma is required"));
    }
    for &g in gammas {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::param(format!("gamma must be positive, got {g}")));
        }
    }
    let sources = list_images(input_dir)?;
    let dist_dir = output_dir.join("distorted");
    fs::create_dir_all(&dist_dir).map_err(|e| Error::io(&dist_dir, e))?;

    let mut manifest = Manifest::default();
    for src in sources {
        let img = match read_image(&src) {
            Ok(img) => img,
            Err(e) => {
                manifest.skipped.push((src, e.to_string()));
                continue;
            }
        };
        let format = ImageFormat::for_path(&src, &img);
        for &gamma in gammas {
            let distorted = enhance_image(&img, |v| gamma_distort(v, gamma))?;
            let name = format!("{}__g{}.{}", stem(&src), gamma, format.extension());
            let dst = dist_dir.join(name);
            write_image(&distorted, &dst, format)?;
            manifest.entries.push(ManifestEntry {
                original_path: src.clone(),
                distorted_path: dst,
                gamma,
            });
        }
    }
    if manifest.entries.is_empty() {
        return Err(Error::EmptyCorpus(input_dir.to_path_buf()));
    }
    manifest.write_csv(&output_dir.join(MANIFEST_FILE))?;
    Ok(manifest)
}

/// One (image, distortion, method) evaluation.
#[derive(Clone, PartialEq, Debug)]
pub struct BenchRow {
    pub image_id: String,
    pub method: Method,
    pub distortion: Distortion,
    /// Class chosen by the proposed method's dispatcher.
    pub class: Option<BrightnessClass>,
    /// Metrics of the distorted input against the original.
    pub input: Option<MetricReport>,
    /// Metrics of the enhanced output against the original.
    pub metrics: Option<MetricReport>,
    pub error: Option<String>,
}

/// Enhances `img` with `method`, returning the class when the dispatcher ran.
pub fn apply_method(method: Method, img: &Image, cfg: &BenchConfig) -> Result<(Image, Option<BrightnessClass>)> {
    let mut class = None;
    let out = enhance_image(img, |v| match method {
        Method::He => Ok(he(v)),
        Method::Agcwd => agcwd(v, cfg.agcwd_alpha),
        Method::Imadj => imadj(v, cfg.imadj_low, cfg.imadj_high),
        Method::Proposed => {
            let (out, c) = enhance_auto(v, &cfg.enhance)?;
            class = Some(c.class);
            Ok(out)
        }
        Method::Identity => Ok(v.clone()),
    })?;
    Ok((out, class))
}

/// Median wall-clock milliseconds over `reps` runs of the enhancement alone.
fn timed(method: Method, img: &Image, cfg: &BenchConfig) -> Result<(Image, Option<BrightnessClass>, f64)> {
    let reps = cfg.repetitions.max(1);
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let result = apply_method(method, img, cfg)?;
        times.push(start.elapsed().as_secs_f64() * 1e3);
        last = Some(result);
    }
    times.sort_by(f64::total_cmp);
    let (out, class) = last.expect("at least one repetition");
    Ok((out, class, times[reps / 2]))
}

fn run_entry(entry: &ManifestEntry, methods: &[Method], cfg: &BenchConfig, out_dir: Option<&Path>) -> Vec<BenchRow> {
    let image_id = stem(&entry.original_path);
    let distortion = Distortion { gamma: entry.gamma };
    let row = |method, class, input, metrics, error| BenchRow {
        image_id: image_id.clone(),
        method,
        distortion,
        class,
        input,
        metrics,
        error,
    };

    let loaded = read_image(&entry.original_path).and_then(|orig| {
        let dist = read_image(&entry.distorted_path)?;
        let reference = orig.intensity();
        let input = MetricReport::compute(&dist.intensity(), &reference)?;
        Ok((dist, reference, input))
    });
    let (distorted, reference, input) = match loaded {
        Ok(v) => v,
        Err(e) => {
            let msg = e.to_string();
            return methods.iter().map(|&m| row(m, None, None, None, Some(msg.clone()))).collect();
        }
    };

    methods
        .iter()
        .map(|&method| {
            let result = timed(method, &distorted, cfg).and_then(|(out, class, ms)| {
                let mut metrics = MetricReport::compute(&out.intensity(), &reference)?;
                metrics.elapsed_ms = Some(ms);
                if let Some(root) = out_dir {
                    let dir = root.join(method.as_str()).join(distortion.label());
                    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
                    let format = ImageFormat::for_path(&entry.distorted_path, &out);
                    write_image(&out, dir.join(format!("{image_id}.{}", format.extension())), format)?;
                }
                Ok((class, metrics))
            });
            match result {
                Ok((class, metrics)) => row(method, class, Some(input), Some(metrics), None),
                Err(e) => row(method, None, Some(input), None, Some(e.to_string())),
            }
        })
        .collect()
}

/// Enhances every manifest entry with every method. Failures become error
/// rows. Row order follows the manifest, then `methods`, for any `jobs`.
pub fn run_bench(
    manifest: &Manifest,
    methods: &[Method],
    cfg: &BenchConfig,
    out_dir: Option<&Path>,
) -> Result<Vec<BenchRow>> {
    cfg.enhance.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::param(format!("thread pool: {e}")))?;
    let nested: Vec<Vec<BenchRow>> = pool.install(|| {
        manifest
            .entries
            .par_iter()
            .map(|e| run_entry(e, methods, cfg, out_dir))
            .collect()
    });
    Ok(nested.into_iter().flatten().collect())
}

/// Means of the six quality numbers over a group.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct MetricMeans {
    pub emeg: f64,
    pub gmsd: f64,
    pub pc: f64,
    pub ps: f64,
    pub pi: f64,
    pub p: f64,
}

impl MetricMeans {
    fn of(reports: &[MetricReport]) -> Option<Self> {
        let mean = |f: fn(&MetricReport) -> f64| order_free_mean(&reports.iter().map(f).collect::<Vec<_>>());
        Some(Self {
            emeg: mean(|r| r.emeg)?,
            gmsd: mean(|r| r.gmsd)?,
            pc: mean(|r| r.pcqi_pc)?,
            ps: mean(|r| r.pcqi_ps)?,
            pi: mean(|r| r.pcqi_pi)?,
            p: mean(|r| r.pcqi_p)?,
        })
    }

    fn values(&self) -> [f64; 6] {
        [self.emeg, self.gmsd, self.pc, self.ps, self.pi, self.p]
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct GroupSummary {
    pub distortion: Distortion,
    /// `None` is the distorted-input row.
    pub method: Option<Method>,
    pub images: usize,
    pub means: MetricMeans,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TimingSummary {
    pub method: Method,
    pub images: usize,
    pub mean_ms: f64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct BenchSummary {
    /// Sorted by gamma, then input row first, then method order.
    pub groups: Vec<GroupSummary>,
    pub timing: Vec<TimingSummary>,
    pub errors: usize,
}

impl BenchSummary {
    pub fn group(&self, gamma: f64, method: Option<Method>) -> Option<&GroupSummary> {
        self.groups
            .iter()
            .find(|g| g.distortion.gamma == gamma && g.method == method)
    }
}

/// Total order on gammas for map keys.
fn gamma_key(g: f64) -> i64 {
    let bits = g.to_bits() as i64;
    bits ^ (((bits >> 63) as u64) >> 1) as i64
}

/// Arithmetic means per (distortion, method); independent of row order.
pub fn summarize(rows: &[BenchRow]) -> Result<BenchSummary> {
    if rows.is_empty() {
        return Err(Error::param("cannot summarize an empty set of rows"));
    }
    let mut by_group: BTreeMap<(i64, Option<Method>), (Distortion, Vec<MetricReport>)> = BTreeMap::new();
    // Input metrics are shared by all methods of an image; keep one per image.
    let mut inputs: BTreeMap<(i64, &str), (Distortion, MetricReport)> = BTreeMap::new();
    let mut timing: BTreeMap<Method, Vec<f64>> = BTreeMap::new();
    let mut errors = 0;

    for r in rows {
        let key = gamma_key(r.distortion.gamma);
        if let Some(input) = r.input {
            inputs.entry((key, r.image_id.as_str())).or_insert((r.distortion, input));
        }
        match r.metrics {
            Some(m) if r.error.is_none() => {
                by_group.entry((key, Some(r.method))).or_insert_with(|| (r.distortion, Vec::new())).1.push(m);
                if let Some(ms) = m.elapsed_ms {
                    timing.entry(r.method).or_default().push(ms);
                }
            }
            _ => errors += 1,
        }
    }
    for ((key, _), (d, m)) in inputs {
        by_group.entry((key, None)).or_insert_with(|| (d, Vec::new())).1.push(m);
    }

    let groups = by_group
        .into_iter()
        .filter_map(|((_, method), (distortion, reports))| {
            Some(GroupSummary {
                distortion,
                method,
                images: reports.len(),
                means: MetricMeans::of(&reports)?,
            })
        })
        .collect();
    let timing = timing
        .into_iter()
        .map(|(method, ms)| TimingSummary {
            method,
            images: ms.len(),
            mean_ms: order_free_mean(&ms).unwrap_or(0.0),
        })
        .collect();
    Ok(BenchSummary { groups, timing, errors })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::param(format!("unknown report format '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ReportOptions {
    /// Multiply by 1000 and round to integers.
    pub paper_scale: bool,
    /// Append the per-method timing table.
    pub timing: bool,
}

fn fmt_value(v: f64, paper_scale: bool) -> String {
    if paper_scale {
        format!("{}", (v * 1000.0).round() as i64)
    } else {
        format!("{v:.6}")
    }
}

const METRIC_HEADERS: [&str; 6] = ["E", "G", "P_c", "P_s", "P_i", "P"];

/// Renders one metric table per distortion, and optionally a timing table.
pub fn emit_report(summary: &BenchSummary, format: ReportFormat, opts: ReportOptions) -> String {
    let mut out = String::new();
    let row_name = |m: Option<Method>| m.map_or("INPUT", Method::title);
    match format {
        ReportFormat::Csv => {
            out.push_str("distortion,method,images,");
            out.push_str(&METRIC_HEADERS.join(","));
            out.push('\n');
            for g in &summary.groups {
                let vals: Vec<String> = g.means.values().iter().map(|&v| fmt_value(v, opts.paper_scale)).collect();
                let _ = writeln!(out, "{},{},{},{}", g.distortion.label(), row_name(g.method), g.images, vals.join(","));
            }
            if opts.timing {
                out.push_str("\nmethod,images,mean_ms\n");
                for t in &summary.timing {
                    let _ = writeln!(out, "{},{},{:.3}", t.method.title(), t.images, t.mean_ms);
                }
            }
        }
        ReportFormat::Markdown => {
            let scale_note = if opts.paper_scale { " (x10^-3)" } else { "" };
            let mut current: Option<String> = None;
            for g in &summary.groups {
                let label = g.distortion.label();
                if current.as_deref() != Some(label.as_str()) {
                    if current.is_some() {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "## {label}{scale_note}\n");
                    let _ = writeln!(out, "| Method | Images | {} |", METRIC_HEADERS.join(" | "));
                    let _ = writeln!(out, "|---|---:|{}", "---:|".repeat(METRIC_HEADERS.len()));
                    current = Some(label);
                }
                let vals: Vec<String> = g.means.values().iter().map(|&v| fmt_value(v, opts.paper_scale)).collect();
                let _ = writeln!(out, "| {} | {} | {} |", row_name(g.method), g.images, vals.join(" | "));
            }
            if opts.timing {
                if current.is_some() {
                    out.push('\n');
                }
                out.push_str("## timing (ms per image)\n\n| Method | Images | Mean ms |\n|---|---:|---:|\n");
                for t in &summary.timing {
                    let _ = writeln!(out, "| {} | {} | {:.3} |", t.method.title(), t.images, t.mean_ms);
                }
            }
        }
    }
    out
}

/// Per-row CSV without timings.
pub fn rows_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("image,distortion,method,class,E,G,P_c,P_s,P_i,P,error\n");
    for r in rows {
        let class = r.class.map_or("", BrightnessClass::as_str);
        let vals = match &r.metrics {
            Some(m) => [m.emeg, m.gmsd, m.pcqi_pc, m.pcqi_ps, m.pcqi_pi, m.pcqi_p]
                .iter()
                .map(|v| format!("{v:.6}"))
                .collect::<Vec<_>>()
                .join(","),
            None => ",,,,,".to_string(),
        };
        let err = r.error.as_deref().unwrap_or("").replace([',', '\n'], ";");
        let _ = writeln!(out, "{},{},{},{},{},{}", r.image_id, r.distortion.label(), r.method, class, vals, err);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(emeg: f64) -> MetricReport {
        MetricReport {
            emeg,
            gmsd: 0.1,
            pcqi_pc: 1.0,
            pcqi_ps: 0.9,
            pcqi_pi: 0.8,
            pcqi_p: 0.72,
            elapsed_ms: Some(1.0),
        }
    }

    fn row(id: &str, method: Method, gamma: f64, emeg: f64) -> BenchRow {
        BenchRow {
            image_id: id.into(),
            method,
            distortion: Distortion { gamma },
            class: None,
            input: Some(report(0.05)),
            metrics: Some(report(emeg)),
            error: None,
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::DEFAULT.into_iter().chain([Method::Identity]) {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("sece".parse::<Method>().is_err());
    }

    #[test]
    fn distortion_labels() {
        assert_eq!(Distortion { gamma: 0.3 }.label(), "bright-g0.3");
        assert_eq!(Distortion { gamma: 2.0 }.label(), "dimmed-g2");
        assert_eq!(Distortion { gamma: 1.0 }.kind(), "none");
    }

    #[test]
    fn single_row_summary() {
        let s = summarize(&[row("a", Method::He, 0.3, 0.4)]).unwrap();
        let g = s.group(0.3, Some(Method::He)).unwrap();
        assert_eq!(g.images, 1);
        assert_eq!(g.means.emeg, 0.4);
        assert_eq!(g.means.p, 0.72);
        assert_eq!(s.group(0.3, None).unwrap().means.emeg, 0.05);
    }

    #[test]
    fn two_row_mean() {
        let s = summarize(&[row("a", Method::He, 2.0, 0.1), row("b", Method::He, 2.0, 0.3)]).unwrap();
        assert!((s.group(2.0, Some(Method::He)).unwrap().means.emeg - 0.2).abs() < 1e-15);
    }

    #[test]
    fn order_independent() {
        let mut rows: Vec<BenchRow> = (0..40)
            .map(|i| {
                let m = Method::DEFAULT[i % 4];
                row(&format!("img{}", i / 4), m, if i % 3 == 0 { 0.3 } else { 2.0 }, 0.013 * i as f64 + 1e-7)
            })
            .collect();
        let a = summarize(&rows).unwrap();
        rows.reverse();
        rows.swap(3, 17);
        let b = summarize(&rows).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            emit_report(&a, ReportFormat::Csv, ReportOptions::default()),
            emit_report(&b, ReportFormat::Csv, ReportOptions::default())
        );
    }

    #[test]
    fn error_rows_are_counted_not_averaged() {
        let mut bad = row("b", Method::He, 0.3, 0.9);
        bad.metrics = None;
        bad.error = Some("boom".into());
        let s = summarize(&[row("a", Method::He, 0.3, 0.1), bad]).unwrap();
        assert_eq!(s.errors, 1);
        assert_eq!(s.group(0.3, Some(Method::He)).unwrap().means.emeg, 0.1);
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn report_formats_agree() {
        let rows = [
            row("a", Method::He, 0.3, 0.25),
            row("a", Method::Proposed, 0.3, 0.125),
            row("a", Method::He, 2.0, 0.5),
        ];
        let s = summarize(&rows).unwrap();
        let csv = emit_report(&s, ReportFormat::Csv, ReportOptions::default());
        let md = emit_report(&s, ReportFormat::Markdown, ReportOptions::default());
        assert!(csv.contains("bright-g0.3,PROPOSED,1,0.125000,0.100000,1.000000,0.900000,0.800000,0.720000"));
        assert!(md.contains("| PROPOSED | 1 | 0.125000 | 0.100000 | 1.000000 | 0.900000 | 0.800000 | 0.720000 |"));
        assert_eq!(md.matches("## ").count(), 2);

        let scaled = emit_report(&s, ReportFormat::Csv, ReportOptions { paper_scale: true, timing: false });
        assert!(scaled.contains("bright-g0.3,PROPOSED,1,125,100,1000,900,800,720"));
        assert!(!scaled.contains("mean_ms"));
        let timed = emit_report(&s, ReportFormat::Markdown, ReportOptions { paper_scale: false, timing: true });
        assert!(timed.contains("## timing"));
    }

    #[test]
    fn gamma_key_orders_like_floats() {
        let mut g = [2.0, 0.3, 1.0, 0.05, 10.0];
        let mut k = g.map(gamma_key);
        g.sort_by(f64::total_cmp);
        k.sort();
        assert_eq!(k, g.map(gamma_key));
    }
}
