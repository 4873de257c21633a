//! `agc`: enhance, distort, evaluate and benchmark brightness-distorted images.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agc_core::bench::{
    emit_report, rows_csv, run_bench, simulate_corpus, summarize, BenchConfig, Method, ReportFormat,
    ReportOptions,
};
use agc_core::metrics::MetricReport;
use agc_core::{
    agcwd, enhance_auto, enhance_bright, enhance_dimmed, enhance_image, gamma_distort, he, imadj,
    read_image, write_image, EnhanceConfig, Error, Image, ImageFormat,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_FORMAT: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "agc",
    version,
    about = "Adaptive gamma correction for bright and dimmed images",
    after_help = "Exit codes: 0 success, 2 bad arguments or incompatible inputs, 3 I/O failure, 4 unsupported or malformed image.\n\
                  `evaluate` prints one line: emeg,gmsd,pc,ps,pi,p (csv) or a JSON object with those keys."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enhance one image (color images are processed on the HSV V channel).
    Enhance(EnhanceCmd),
    /// Apply a power-law distortion round(255 * (v/255)^gamma).
    Distort(DistortCmd),
    /// Score an enhanced image against a reference.
    Evaluate(EvaluateCmd),
    /// Distort a corpus, run every method and write report tables.
    Bench(BenchCmd),
    /// Print the effective enhancement parameters.
    Config(ConfigCmd),
}

#[derive(Args, Debug, Clone, Copy, PartialEq)]
struct ParamArgs {
    /// Expected mean brightness of a well-exposed image (8-bit units).
    #[arg(long = "tt", default_value_t = 112.0)]
    target_brightness: f64,
    /// Classification threshold on |t|.
    #[arg(long = "tau-t", default_value_t = 0.3)]
    class_threshold: f64,
    /// Floor of the dimmed-path gamma curve.
    #[arg(long = "tau", default_value_t = 0.5)]
    truncation: f64,
    /// Weighting exponent for bright images.
    #[arg(long, default_value_t = 0.25)]
    alpha_bright: f64,
    /// Weighting exponent for dimmed images.
    #[arg(long, default_value_t = 0.75)]
    alpha_dimmed: f64,
    /// Weighting exponent of the AGCWD baseline.
    #[arg(long, default_value_t = 0.75)]
    alpha_agcwd: f64,
    /// Lower saturation fraction of the IMADJ baseline.
    #[arg(long, default_value_t = 0.01)]
    imadj_low: f64,
    /// Upper saturation fraction of the IMADJ baseline.
    #[arg(long, default_value_t = 0.01)]
    imadj_high: f64,
}

impl ParamArgs {
    fn enhance_config(&self) -> Result<EnhanceConfig, Error> {
        let cfg = EnhanceConfig {
            target_brightness: self.target_brightness,
            class_threshold: self.class_threshold,
            truncation: self.truncation,
            alpha_bright: self.alpha_bright,
            alpha_dimmed: self.alpha_dimmed,
        };
        cfg.validate()?;
        if !(self.alpha_agcwd > 0.0 && self.alpha_agcwd.is_finite()) {
            return Err(Error::Parameter(format!("--alpha-agcwd must be positive, got {}", self.alpha_agcwd)));
        }
        Ok(cfg)
    }

    fn bench_config(&self, jobs: usize, repetitions: usize) -> Result<BenchConfig, Error> {
        Ok(BenchConfig {
            enhance: self.enhance_config()?,
            agcwd_alpha: self.alpha_agcwd,
            imadj_low: self.imadj_low,
            imadj_high: self.imadj_high,
            repetitions,
            jobs,
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Auto,
    Bright,
    Dimmed,
    Agcwd,
    He,
    Imadj,
}

#[derive(Args, Debug)]
struct EnhanceCmd {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, visible_alias = "method", value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug)]
struct DistortCmd {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    gamma: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LineFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct EvaluateCmd {
    enhanced: PathBuf,
    reference: PathBuf,
    #[arg(long, value_enum, default_value_t = LineFormat::Csv)]
    format: LineFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Args, Debug)]
struct BenchCmd {
    /// Folder of PGM/PPM/PNG images.
    corpus: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = ["he".to_string(), "agcwd".into(), "imadj".into(), "proposed".into()])]
    methods: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 2.0])]
    gammas: Vec<f64>,
    #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
    format: TableFormat,
    /// Report values x1000 rounded to integers.
    #[arg(long)]
    paper_scale: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Timed repetitions per image (median kept).
    #[arg(long, default_value_t = 5)]
    repetitions: usize,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug)]
struct ConfigCmd {
    #[command(flatten)]
    params: ParamArgs,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } | Error::Csv(_) => EXIT_IO,
        Error::Malformed(_) | Error::UnsupportedBitDepth(_) | Error::UnsupportedFormat(_) => EXIT_FORMAT,
        _ => EXIT_USAGE,
    }
}

fn write_output(img: &Image, path: &Path) -> Result<(), Error> {
    write_image(img, path, ImageFormat::for_path(path, img))
}

fn cmd_enhance(cmd: &EnhanceCmd) -> Result<(), Error> {
    let cfg = cmd.params.enhance_config()?;
    let img = read_image(&cmd.input)?;
    let mut class = None;
    let out = enhance_image(&img, |v| match cmd.mode {
        Mode::Auto => {
            let (out, c) = enhance_auto(v, &cfg)?;
            class = Some(c);
            Ok(out)
        }
        Mode::Bright => enhance_bright(v, cfg.alpha_bright),
        Mode::Dimmed => enhance_dimmed(v, cfg.alpha_dimmed, cfg.truncation),
        Mode::Agcwd => agcwd(v, cmd.params.alpha_agcwd),
        Mode::He => Ok(he(v)),
        Mode::Imadj => imadj(v, cmd.params.imadj_low, cmd.params.imadj_high),
    })?;
    write_output(&out, &cmd.output)?;
    if let Some(c) = class {
        println!("{} t={:.4}", c.class, c.t);
    }
    Ok(())
}

fn cmd_distort(cmd: &DistortCmd) -> Result<(), Error> {
    if !(cmd.gamma > 0.0 && cmd.gamma.is_finite()) {
        return Err(Error::Parameter(format!("--gamma must be positive, got {}", cmd.gamma)));
    }
    let img = read_image(&cmd.input)?;
    let out = enhance_image(&img, |v| gamma_distort(v, cmd.gamma))?;
    write_output(&out, &cmd.output)
}

#[derive(serde::Serialize)]
struct EvaluateLine {
    emeg: f64,
    gmsd: f64,
    pc: f64,
    ps: f64,
    pi: f64,
    p: f64,
}

fn cmd_evaluate(cmd: &EvaluateCmd) -> Result<(), Error> {
    let test = read_image(&cmd.enhanced)?.intensity();
    let reference = read_image(&cmd.reference)?.intensity();
    let r = MetricReport::compute(&test, &reference)?;
    let line = EvaluateLine {
        emeg: r.emeg,
        gmsd: r.gmsd,
        pc: r.pcqi_pc,
        ps: r.pcqi_ps,
        pi: r.pcqi_pi,
        p: r.pcqi_p,
    };
    match cmd.format {
        LineFormat::Csv => println!("{},{},{},{},{},{}", line.emeg, line.gmsd, line.pc, line.ps, line.pi, line.p),
        LineFormat::Json => println!("{}", serde_json::to_string(&line).expect("plain struct serializes")),
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn cmd_bench(cmd: &BenchCmd) -> Result<(), Error> {
    let cfg = cmd.params.bench_config(cmd.jobs, cmd.repetitions)?;
    let methods = cmd
        .methods
        .iter()
        .map(|m| m.parse::<Method>())
        .collect::<Result<Vec<_>, _>>()?;
    if methods.is_empty() {
        return Err(Error::Parameter("--methods is empty".into()));
    }
    fs::create_dir_all(&cmd.output).map_err(|source| Error::Io {
        path: cmd.output.clone(),
        source,
    })?;

    let manifest = simulate_corpus(&cmd.corpus, &cmd.output, &cmd.gammas)?;
    for (path, why) in &manifest.skipped {
        eprintln!("warning: skipped {}: {why}", path.display());
    }
    let rows = run_bench(&manifest, &methods, &cfg, Some(&cmd.output))?;
    let summary = summarize(&rows)?;

    let (format, ext) = match cmd.format {
        TableFormat::Csv => (ReportFormat::Csv, "csv"),
        TableFormat::Markdown => (ReportFormat::Markdown, "md"),
    };
    let opts = ReportOptions {
        paper_scale: cmd.paper_scale,
        timing: false,
    };
    write_text(&cmd.output.join("rows.csv"), &rows_csv(&rows))?;
    let report = cmd.output.join(format!("report.{ext}"));
    write_text(&report, &emit_report(&summary, format, opts))?;
    let timing = cmd.output.join(format!("timing.{ext}"));
    let timing_only = ReportOptions { timing: true, ..opts };
    let mut timing_summary = summary.clone();
    timing_summary.groups.clear();
    write_text(&timing, &emit_report(&timing_summary, format, timing_only))?;

    eprintln!(
        "{} rows ({} errors, {} skipped inputs); report: {}; timing: {}",
        rows.len(),
        summary.errors,
        manifest.skipped.len(),
        report.display(),
        timing.display()
    );
    if summary.errors == rows.len() {
        return Err(Error::EmptyCorpus(cmd.corpus.clone()));
    }
    Ok(())
}

fn cmd_config(cmd: &ConfigCmd) -> Result<(), Error> {
    let cfg = cmd.params.enhance_config()?;
    let p = &cmd.params;
    println!("tt={}", cfg.target_brightness);
    println!("tau_t={}", cfg.class_threshold);
    println!("tau={}", cfg.truncation);
    println!("alpha_bright={}", cfg.alpha_bright);
    println!("alpha_dimmed={}", cfg.alpha_dimmed);
    println!("alpha_agcwd={}", p.alpha_agcwd);
    println!("imadj_low={}", p.imadj_low);
    println!("imadj_high={}", p.imadj_high);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match &cli.command {
        Command::Enhance(c) => cmd_enhance(c),
        Command::Distort(c) => cmd_distort(c),
        Command::Evaluate(c) => cmd_evaluate(c),
        Command::Bench(c) => cmd_bench(c),
        Command::Config(c) => cmd_config(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
