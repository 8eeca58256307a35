//! `pvpoisson`: list, evaluate and verify the catalog of Poisson-integral
//! identities.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use poisson_pv::catalog::{entries, lookup, residue_checks, EntrySpec, ParamSet, ResidueCheck};
use poisson_pv::kernel::HalfPlanePoint;
use poisson_pv::report::{fmt_num, render_entries, render_report, OutputFormat};
use poisson_pv::series::{pole_series, sech_series};
use poisson_pv::verify::{
    consistency_suite, harmonicity_report, verify_entry, GridSpec, Tolerances, VerificationReport,
};
use poisson_pv::{Error, QuadConfig};

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "pvpoisson", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the metadata of every catalog entry.
    List(ListArgs),
    /// Evaluate one entry at one point.
    Eval(EvalArgs),
    /// Compare quadrature against closed forms over a grid.
    Verify(VerifyArgs),
    /// Compare catalog residues with contour estimates.
    Residues(ResidueArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Markdown => OutputFormat::Markdown,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Quadrature,
    Closed,
    Series,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File of `key=value` lines supplying defaults for any flag.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Params {
    #[arg(long, allow_negative_numbers = true)]
    a: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Vec<f64>,
    #[arg(long)]
    x: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y: Vec<f64>,
}

impl Params {
    fn is_empty(&self) -> bool {
        [&self.a, &self.b, &self.alpha, &self.x, &self.y]
            .iter()
            .all(|v| v.is_empty())
    }

    fn single(name: &str, v: &[f64]) -> Result<Option<f64>, Error> {
        match v {
            [] => Ok(None),
            [x] => Ok(Some(*x)),
            _ => Err(Error::Config(format!("--{name} takes a single value here"))),
        }
    }

    fn param_set(&self) -> Result<ParamSet, Error> {
        let mut p = ParamSet::new();
        p.a = Self::single("a", &self.a)?;
        p.b = Self::single("b", &self.b)?;
        p.alpha = Self::single("alpha", &self.alpha)?;
        Ok(p)
    }

    fn grid(&self) -> GridSpec {
        let list = |v: &Vec<f64>| (!v.is_empty()).then(|| v.clone());
        GridSpec {
            a: list(&self.a),
            b: list(&self.b),
            alpha: list(&self.alpha),
            x: list(&self.x),
            y: list(&self.y),
        }
    }
}

#[derive(Args)]
struct Quad {
    /// Absolute tolerance of the integrators.
    #[arg(long)]
    quad_tol_abs: Option<f64>,
    /// Relative tolerance of the integrators.
    #[arg(long)]
    quad_tol_rel: Option<f64>,
    #[arg(long)]
    max_subdivisions: Option<usize>,
    /// Half-width of the directly integrated core.
    #[arg(long)]
    tail_t: Option<f64>,
    #[arg(long)]
    pv_pair_radius_fraction: Option<f64>,
    #[arg(long)]
    accel_depth: Option<usize>,
    #[arg(long)]
    tail_window: Option<f64>,
}

impl Quad {
    fn config(&self) -> Result<QuadConfig, Error> {
        let d = QuadConfig::default();
        let cfg = QuadConfig {
            tol_abs: self.quad_tol_abs.unwrap_or(d.tol_abs),
            tol_rel: self.quad_tol_rel.unwrap_or(d.tol_rel),
            max_subdivisions: self.max_subdivisions.unwrap_or(d.max_subdivisions),
            tail_t: self.tail_t.or(d.tail_t),
            pv_pair_radius_fraction: self
                .pv_pair_radius_fraction
                .unwrap_or(d.pv_pair_radius_fraction),
            accel_depth: self.accel_depth.unwrap_or(d.accel_depth),
            tail_window: self.tail_window.or(d.tail_window),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct ListArgs {
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EvalArgs {
    /// Entry key (`E6`) or full id.
    #[arg(long)]
    entry: String,
    #[command(flatten)]
    params: Params,
    #[arg(long, value_enum, default_value = "quadrature")]
    method: Method,
    #[command(flatten)]
    quad: Quad,
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Entry key, full id, or `all` for the catalog plus the consistency and
    /// harmonicity checks.
    #[arg(long)]
    entry: String,
    /// `default` or `key=v1,v2;key=v3`.
    #[arg(long, conflicts_with_all = ["a", "b", "alpha", "x", "y"])]
    grid: Option<String>,
    #[command(flatten)]
    params: Params,
    /// Absolute acceptance tolerance.
    #[arg(long)]
    tol_abs: Option<f64>,
    /// Relative acceptance tolerance.
    #[arg(long)]
    tol_rel: Option<f64>,
    #[command(flatten)]
    quad: Quad,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ResidueArgs {
    #[arg(long)]
    entry: String,
    #[command(flatten)]
    params: Params,
    /// Index range `lo..hi`, inclusive.
    #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
    k: String,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

/// Command failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

const LIST_KEYS: [&str; 5] = ["a", "b", "alpha", "x", "y"];

/// Expands `--config PATH` into flags. Keys also given on the command line
/// are taken from the command line only.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, Failure> {
    let mut path = None;
    for (i, arg) in args.iter().enumerate() {
        if arg == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| usage(format!("cannot read config file {path}: {e}")))?;
    let given = |key: &str| {
        let flag = format!("--{key}");
        args.iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let clauses: Vec<&str> = if line.starts_with("grid") {
            vec![line]
        } else {
            line.split(';')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .collect()
        };
        for clause in clauses {
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| usage(format!("{path}:{}: expected key=value", n + 1)))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            if given(&key) {
                continue;
            }
            if LIST_KEYS.contains(&key.as_str()) {
                for v in value.split(',') {
                    extra.push(format!("--{key}={}", v.trim()));
                }
            } else {
                extra.push(format!("--{key}={value}"));
            }
        }
    }
    let at = 2.min(args.len());
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

/// Writes `text` to `out` through a temporary file and a rename, or to
/// standard output.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| usage(format!("cannot write output: {e}")));
    };
    let file_name = path
        .file_name()
        .ok_or_else(|| usage(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| {
            let _ = fs::remove_file(&tmp);
            usage(format!("cannot write {}: {e}", path.display()))
        })
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn cmd_list(args: &ListArgs) -> Result<u8, Failure> {
    let metas: Vec<_> = entries().iter().map(EntrySpec::meta).collect();
    let text = render_entries(&metas, args.output.format.into())?;
    emit(&with_newline(text), args.output.out.as_deref())?;
    Ok(0)
}

fn cmd_eval(args: &EvalArgs) -> Result<u8, Failure> {
    let e = lookup(&args.entry)?;
    let p = args.params.param_set()?.restricted(e.params);
    let x = Params::single("x", &args.params.x)?.ok_or_else(|| usage("--x is required"))?;
    let y = Params::single("y", &args.params.y)?.unwrap_or(0.0);
    let cfg = args.quad.config()?;
    if args.method == Method::Series && e.is_pv() {
        e.check_params(&p)?;
    } else {
        e.check(&p, x, y)?;
    }

    let start = Instant::now();
    let (value, err, n_evals, status) = match args.method {
        Method::Closed => (e.closed_form(&p, x, y)?, 0.0, 0, "exact".to_string()),
        Method::Quadrature => {
            let r = e.numeric(&p, x, y, &cfg)?;
            (r.value, r.err_estimate, r.n_evals, r.status.to_string())
        }
        Method::Series => {
            let s = if e.key == "E23" {
                sech_series(p.a.unwrap_or(f64::NAN), x, cfg.tol_abs)?
            } else if e.is_pv() {
                let lat = e.pole_lattice(&p)?;
                pole_series(&lat, HalfPlanePoint::new(x, y)?, cfg.tol_abs)?
            } else {
                return Err(usage(format!(
                    "--method series applies to E23 and to principal-value entries, not {}",
                    e.id()
                )));
            };
            let status = if s.tail_bound <= cfg.tol_abs {
                "converged"
            } else {
                "tail_not_converged"
            };
            (s.value, s.tail_bound, s.terms_used, status.to_string())
        }
    };
    let wall = start.elapsed().as_secs_f64();

    let text = format!(
        "entry      {}\nparams     {p}\nx          {}\ny          {}\nmethod     {}\nvalue      {}\nerr        {}\nn_evals    {n_evals}\nwall_time  {}\nstatus     {status}\n",
        e.id(),
        fmt_num(x),
        fmt_num(y),
        method_name(args.method),
        fmt_num(value),
        fmt_num(err),
        fmt_num(wall),
    );
    emit(&text, None)?;
    let converged = matches!(status.as_str(), "converged" | "exact");
    Ok(if converged { 0 } else { EXIT_NUMERICAL })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Quadrature => "quadrature",
        Method::Closed => "closed",
        Method::Series => "series",
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let cfg = args.quad.config()?;
    let grid = match &args.grid {
        Some(g) => GridSpec::parse(g)?,
        None if args.params.is_empty() => GridSpec::default(),
        None => args.params.grid(),
    };
    for (name, v) in [("--tol-abs", args.tol_abs), ("--tol-rel", args.tol_rel)] {
        if matches!(v, Some(t) if t.is_nan() || t < 0.0) {
            return Err(usage(format!("{name} must be non-negative")));
        }
    }
    let tolerances = |e: &EntrySpec| {
        let d = Tolerances::for_entry(e);
        Tolerances {
            abs: args.tol_abs.unwrap_or(d.abs),
            rel: args.tol_rel.unwrap_or(d.rel),
        }
    };
    let run = |e: &EntrySpec| verify_entry(e, &grid.points_for(e), tolerances(e), &cfg);

    let report = if args.entry.eq_ignore_ascii_case("all") {
        let mut parts: Vec<VerificationReport> = entries().iter().map(run).collect();
        parts.push(consistency_suite(&cfg));
        parts.push(harmonicity_report());
        VerificationReport::merge(parts)
    } else {
        run(lookup(&args.entry)?)
    };

    let text = render_report(&report, args.output.format.into())?;
    emit(&with_newline(text), args.output.out.as_deref())?;
    if args.output.out.is_some() {
        let s = &report.summary;
        eprintln!(
            "pass {} fail {} skip {} numerical failures {}",
            s.n_pass, s.n_fail, s.n_skip, s.n_numerical_failures
        );
    }
    Ok(report.exit_code() as u8)
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || usage(format!("--k expects `lo..hi`, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn residue_table(e: &EntrySpec, rows: &[ResidueCheck], format: Format) -> Result<String, Failure> {
    const HEADER: [&str; 6] = [
        "k",
        "ordinate",
        "catalog_e",
        "numeric_re",
        "numeric_im",
        "abs_err",
    ];
    let cells = |r: &ResidueCheck| {
        [
            r.k.to_string(),
            fmt_num(r.ordinate),
            fmt_num(r.catalog),
            fmt_num(r.numeric_re),
            fmt_num(r.numeric_im),
            fmt_num(r.abs_err()),
        ]
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "entry_id": e.id(),
            "residues": rows,
        }))
        .map_err(|e| usage(e.to_string()))?,
        Format::Csv => {
            let mut s = HEADER.join(",");
            for r in rows {
                s.push('\n');
                s.push_str(&cells(r).join(","));
            }
            s
        }
        Format::Markdown => {
            let mut s = format!(
                "## {}\n\n| {} |\n|{}\n",
                e.id(),
                HEADER.join(" | "),
                "---|".repeat(HEADER.len())
            );
            for r in rows {
                s.push_str(&format!("| {} |\n", cells(r).join(" | ")));
            }
            s
        }
    })
}

fn cmd_residues(args: &ResidueArgs) -> Result<u8, Failure> {
    let e = lookup(&args.entry)?;
    let p = args.params.param_set()?.restricted(e.params);
    let (lo, hi) = parse_range(&args.k)?;
    let rows = residue_checks(e, &p, lo..=hi)?;
    let text = residue_table(e, &rows, args.format)?;
    emit(&with_newline(text), args.out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let cli = Cli::parse_from(argv);
    let result = match &cli.command {
        Command::List(a) => cmd_list(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Residues(a) => cmd_residues(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
