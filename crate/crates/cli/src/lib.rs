//! Command-line frontend: evaluation, identity audits, decomposition
//! reconciliation, figure data and report rendering.
//!
//! Exit codes: 0 success, 1 usage error, 2 when a check is not confirmed,
//! a requested accuracy is unmet, or a report cannot be written.

// `!(a <= b)` is used on purpose so that NaN takes the failing branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod figure;
pub mod parse;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mlf_core::audit::{build_report, AuditReport, Check, Expect, Verdict};
use mlf_core::decomposition::reconcile_decomposition;
use mlf_core::mittag_leffler::{eval_mlf, frac_trig, AlphaParam};
use mlf_core::special::{ComplexValue, EvalConfig, QuadratureConfig};

use crate::audit::{run_checks, unmet_accuracy, AuditFlags};
use crate::figure::Which;
use crate::parse::GridSpec;

/// Environment variable capping the worker threads of parallel sweeps.
pub const THREADS_ENV: &str = "MLF_AUDIT_THREADS";

#[derive(Debug)]
pub enum Failure {
    /// bad flags or arguments outside a domain; exit 1
    Usage(String),
    /// unconfirmed check, unmet accuracy or failed report output; exit 2
    Unmet(String),
}

impl From<mlf_core::Error> for Failure {
    fn from(e: mlf_core::Error) -> Self {
        match e {
            mlf_core::Error::Quadrature { .. } => Failure::Unmet(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mlf-audit", version, about = "Mittag-Leffler evaluation and fractional identity audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate E_α(z), or cos_α(x^α) and sin_α(x^α) with --x
    Eval(EvalArgs),
    /// Run one check family, or the default suite without a name
    Audit(AuditArgs),
    /// Write figure data as CSV, optionally with an SVG rendering
    Figure(FigureArgs),
    /// Compare every reading of the f + g decomposition with the series
    Decompose(DecomposeArgs),
    /// Render a saved JSON report as JSON or Markdown
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
struct EvalArgs {
    #[arg(long, value_parser = parse::parse_number, allow_hyphen_values = true)]
    alpha: f64,
    /// argument as re or re,im
    #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true, conflicts_with = "x", required_unless_present = "x")]
    z: Option<ComplexValue>,
    /// real x ≥ 0 for the fractional cosine and sine
    #[arg(long, value_parser = parse::parse_number, allow_hyphen_values = true)]
    x: Option<f64>,
    /// requested absolute accuracy
    #[arg(long, value_parser = parse::parse_number, allow_hyphen_values = true)]
    abs_tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(clap::Args, Debug)]
struct AuditArgs {
    /// check family; omit for the default suite
    check: Option<String>,
    #[command(flatten)]
    flags: AuditFlags,
    /// report file; the format follows --format or the extension
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    /// list the check families and exit
    #[arg(long)]
    list: bool,
}

#[derive(clap::Args, Debug)]
struct FigureArgs {
    #[arg(value_enum)]
    which: FigureName,
    #[arg(long, value_delimiter = ',', value_parser = parse::parse_number, allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    /// start:stop:step (fig3: the same axis for x and y, starting at 0)
    #[arg(long, value_parser = parse::parse_grid, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// λ for fig3 as re or re,im
    #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
    lambda: Option<ComplexValue>,
    /// CSV output, default <figure>.csv
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG output
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureName {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(clap::Args, Debug)]
struct DecomposeArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse::parse_number, allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    #[arg(long, value_parser = parse::parse_grid, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    #[arg(long, value_parser = parse::parse_number, allow_hyphen_values = true)]
    quad_tol: Option<f64>,
    /// largest acceptable residual of the best reading
    #[arg(long, value_parser = parse::parse_number, allow_hyphen_values = true, default_value = "1e-6")]
    tol: f64,
    /// per-point table
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(clap::Args, Debug)]
struct ReportArgs {
    /// JSON report written by `audit --out`
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "md")]
    format: ReportFormat,
    /// output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let outcome = pool.install(|| dispatch(cli.command));
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Unmet(msg)) => {
            eprintln!("{msg}");
            2
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(v) = std::env::var_os(THREADS_ENV) {
        let s = v.to_string_lossy();
        let n: usize = s
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{s}`"))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| e.to_string())
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Eval(a) => eval(a),
        Command::Audit(a) => audit_cmd(a),
        Command::Figure(a) => figure_cmd(a),
        Command::Decompose(a) => decompose(a),
        Command::Report(a) => report_cmd(a),
    }
}

fn eval(a: EvalArgs) -> Result<(), Failure> {
    let mut cfg = EvalConfig::default();
    if let Some(t) = a.abs_tol {
        cfg = cfg.with_abs_tol(t);
    }
    let alpha = AlphaParam::new(a.alpha)?;
    let (text, json, err, converged) = match (a.z, a.x) {
        (Some(z), _) => {
            let r = eval_mlf(alpha, z, &cfg)?;
            let text = if z.im == 0.0 && r.value.im == 0.0 {
                format!("E_{}({}) = {:?} ± {:e} ({} terms)", a.alpha, z.re, r.value.re, r.err_bound, r.terms_used)
            } else {
                format!(
                    "E_{}({}{:+}i) = {:?} {:+?}i ± {:e} ({} terms)",
                    a.alpha, z.re, z.im, r.value.re, r.value.im, r.err_bound, r.terms_used
                )
            };
            let json = serde_json::json!({
                "alpha": a.alpha, "z": [z.re, z.im],
                "value": [r.value.re, r.value.im],
                "err_bound": r.err_bound, "terms_used": r.terms_used, "converged": r.converged,
            });
            (text, json, r.err_bound, r.converged)
        }
        (None, Some(x)) => {
            let p = frac_trig(alpha, x, &cfg)?;
            let text = format!(
                "cos_{a}(x^{a}) = {:?}\nsin_{a}(x^{a}) = {:?}\nerror bound {:e} at x = {x}",
                p.cos_part,
                p.sin_part,
                p.err_bound,
                a = a.alpha
            );
            let json = serde_json::json!({
                "alpha": a.alpha, "x": x, "cos": p.cos_part, "sin": p.sin_part,
                "err_bound": p.err_bound, "converged": p.converged,
            });
            (text, json, p.err_bound, p.converged)
        }
        (None, None) => return Err(Failure::Usage("eval needs --z or --x".into())),
    };
    match a.format {
        TextFormat::Text => println!("{text}"),
        TextFormat::Json => println!("{json}"),
    }
    if !converged {
        return Err(Failure::Unmet("series did not converge within the term limit".into()));
    }
    // the default target only steers the series; an explicit one is a requirement
    if a.abs_tol.is_some() && !(err <= cfg.abs_tol) {
        return Err(Failure::Unmet(format!("error bound {err:e} exceeds abs_tol {:e}", cfg.abs_tol)));
    }
    Ok(())
}

fn summary_line(c: &Check) -> String {
    let op = match c.tolerance.expect {
        Expect::AtMost => "<=",
        Expect::AtLeast => ">=",
    };
    let mut key = String::new();
    for k in ["alpha", "x"] {
        if let Some(mlf_core::audit::ParamValue::Number(v)) = c.params.get(k) {
            let _ = write!(key, " {k}={v}");
        }
    }
    format!(
        "{:<17} {}{} sup={:e} err={:e} tol{op}{:e}",
        c.verdict.as_str(),
        c.name,
        key,
        c.residual.sup,
        c.err_bound,
        c.tolerance.value
    )
}

fn report_format(path: &Path, flag: Option<ReportFormat>) -> ReportFormat {
    flag.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("md") => ReportFormat::Md,
        _ => ReportFormat::Json,
    })
}

fn render(report: &AuditReport, f: ReportFormat) -> String {
    match f {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Md => report.to_markdown(),
    }
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn audit_cmd(a: AuditArgs) -> Result<(), Failure> {
    if a.list {
        for n in audit::family_names() {
            println!("{n}");
        }
        return Ok(());
    }
    let checks = run_checks(a.check.as_deref(), &a.flags)?;
    let report = build_report(checks, timestamp())?;
    for c in &report.checks {
        println!("{}", summary_line(c));
    }
    if let Some(path) = &a.out {
        std::fs::write(path, render(&report, report_format(path, a.format)))
            .map_err(|e| Failure::Unmet(format!("cannot write {}: {e}", path.display())))?;
    }
    let unconfirmed = report.checks.iter().filter(|c| c.verdict != Verdict::ConfirmsPaper).count();
    let unmet = unmet_accuracy(&report.checks, a.flags.abs_tol);
    if unconfirmed > 0 || !unmet.is_empty() {
        let mut lines = Vec::new();
        if unconfirmed > 0 {
            lines.push(format!("{unconfirmed} of {} checks not confirmed", report.checks.len()));
        }
        for c in unmet {
            lines.push(format!("{}: error bound {:e} exceeds abs_tol", c.name, c.err_bound));
        }
        let msg = lines.join("\n");
        return Err(Failure::Unmet(msg));
    }
    Ok(())
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn figure_cmd(a: FigureArgs) -> Result<(), Failure> {
    let which = match a.which {
        FigureName::Fig1 => Which::Fig1,
        FigureName::Fig2 => Which::Fig2,
        FigureName::Fig3 => Which::Fig3,
    };
    if a.lambda.is_some() && which != Which::Fig3 {
        return Err(Failure::Usage("--lambda applies to fig3 only".into()));
    }
    let alphas = a.alpha.unwrap_or_else(|| which.default_alphas());
    let grid = a.grid.unwrap_or_else(|| which.default_grid());
    let fig = match which {
        Which::Fig1 => figure::fig1(&alphas, grid)?,
        Which::Fig2 => figure::fig2(&alphas, grid)?,
        Which::Fig3 => figure::fig3(&alphas, a.lambda.unwrap_or(ComplexValue::new(1.0, 0.0)), grid)?,
    };
    let out = a.out.unwrap_or_else(|| PathBuf::from(format!("{}.csv", which.name())));
    write_output(&out, &fig.to_csv())?;
    println!("wrote {} ({} rows)", out.display(), fig.rows.len());
    if let Some(svg) = a.svg {
        write_output(&svg, &fig.svg)?;
        println!("wrote {}", svg.display());
    }
    Ok(())
}

fn decompose(a: DecomposeArgs) -> Result<(), Failure> {
    let alphas = a.alpha.unwrap_or_else(|| vec![0.75]);
    let g = a.grid.unwrap_or(GridSpec { start: 0.25, stop: 3.0, step: 0.05 });
    let grid = mlf_core::audit::GridAxis::new(g.start, g.stop, g.step)?.points();
    let mut q = QuadratureConfig::default();
    if let Some(t) = a.quad_tol {
        q.abs_tol = t;
        q.rel_tol = t;
    }
    let mut table = String::from("alpha,x,series,series_err,f,quad_err,g,residual,literal_residual\r\n");
    let mut all = Vec::new();
    let mut worst = 0.0f64;
    for &alpha in &alphas {
        let rec = reconcile_decomposition(AlphaParam::new(alpha)?, &grid, &q)?;
        println!("alpha = {alpha}");
        println!("  best reading     {}  sup residual {:e}", rec.best_variant, rec.best_residual);
        println!("  literal reading  sup residual {:e}", rec.literal_residual);
        let mut ranked = rec.variants.clone();
        ranked.sort_by(|x, y| x.sup_residual.total_cmp(&y.sup_residual));
        for v in &ranked {
            println!("    {:<72} {:e} at x = {}", v.variant.to_string(), v.sup_residual, v.argmax);
        }
        let b = rec.best_variant;
        let idx = mlf_core::decomposition::GVariantSpec::all()
            .iter()
            .position(|v| *v == b)
            .expect("best reading is enumerated");
        for r in &rec.records {
            let f = r.f_value(b.arg_power, b.kernel);
            let _ = write!(
                table,
                "{alpha:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}\r\n",
                r.x,
                r.series_value,
                r.series_err,
                f.value,
                f.quad_err,
                r.g_values[idx],
                r.residual(b),
                r.literal_residual
            );
        }
        worst = worst.max(rec.best_residual);
        all.push(rec);
    }
    if let Some(path) = &a.out {
        let text = match a.format {
            TableFormat::Csv => table,
            TableFormat::Json => {
                let mut s = serde_json::to_string_pretty(&all).expect("records serialize");
                s.push('\n');
                s
            }
        };
        write_output(path, &text)?;
    }
    if !(worst <= a.tol) {
        return Err(Failure::Unmet(format!("best reading residual {worst:e} exceeds {:e}", a.tol)));
    }
    Ok(())
}

fn report_cmd(a: ReportArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| Failure::Unmet(format!("cannot read {}: {e}", a.input.display())))?;
    let report = AuditReport::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let out = render(&report, a.format);
    match a.out {
        Some(path) => std::fs::write(&path, out)
            .map_err(|e| Failure::Unmet(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{out}"),
    }
    Ok(())
}
