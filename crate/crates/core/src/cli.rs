//! The `hardy` command-line front end.
//!
//! Every subcommand reads series or family files (see [`crate::io`]), runs
//! one library operation and writes either a series file or a CSV table
//! headed by `# hardy-csv v1 <command>`. Exit status: 0 on success, 1 on a
//! domain, parse or I/O error, 2 when a resource cap is hit, 64 on a usage
//! error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bohr::MultiIndex;
use crate::bounds::{abel_tail_bound, pointwise_bound, truncation_ratio, BoundReport};
use crate::error::{Error, Result};
use crate::io::{
    fmt_real, gen_random, parse_family, parse_series, write_dirichlet, write_monomial, CoefficientLaw,
    CsvTable, RandomSpec, RunConfig, SeriesFile,
};
use crate::montel::{dense_enumerate, dirichlet_montel, montel_extract, ExtractionReport, LimitCandidate, Probe};
use crate::polytorus::{
    bayart_mean_norm, evaluate_coords, extract_coefficients, hp_norm, ExtractionGrid, GridMethod,
};
use crate::series::{DirichletPolynomial, HpIndex, MonomialExpansion};

/// Exit status for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Hardy spaces of Dirichlet series on the polytorus")]
struct Cli {
    /// Run configuration (TOML). Without it the defaults apply with seed 0.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    TensorGrid,
    Qmc,
}

impl From<MethodArg> for GridMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => GridMethod::Auto,
            MethodArg::TensorGrid => GridMethod::TensorGrid,
            MethodArg::Qmc => GridMethod::Qmc,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LawArg {
    UnitDisc,
    UnitSquare,
    Gaussian,
}

impl From<LawArg> for CoefficientLaw {
    fn from(l: LawArg) -> Self {
        match l {
            LawArg::UnitDisc => CoefficientLaw::UnitDisc,
            LawArg::UnitSquare => CoefficientLaw::UnitSquare,
            LawArg::Gaussian => CoefficientLaw::Gaussian,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dirichlet file to monomial file.
    Lift {
        /// Input file, `-` for standard input.
        input: PathBuf,
    },
    /// Monomial file to Dirichlet file.
    Drop { input: PathBuf },
    /// H_p norm of a series.
    Norm {
        input: PathBuf,
        /// Exponent; defaults to the configured `p`.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Coefficients recovered from samples of the lifted function.
    Coeffs {
        input: PathBuf,
        /// Largest exponent per variable; defaults to the series' own.
        #[arg(long)]
        degree: Option<u32>,
        /// Samples per circle; defaults to degree + 1.
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Coefficients a_n n^{-eps}.
    Translate {
        input: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Terms with n <= x.
    Truncate {
        input: PathBuf,
        #[arg(long)]
        x: f64,
    },
    /// Pointwise, truncation and Abel tail bounds for one series.
    VerifyBounds {
        input: PathBuf,
        /// Truncation points.
        #[arg(long, value_delimiter = ',', default_values_t = [2.0, 4.0, 8.0, 16.0, 32.0, 64.0])]
        x: Vec<f64>,
        /// Translations for the tail bound.
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0])]
        eps: Vec<f64>,
        /// Tail cuts for the tail bound.
        #[arg(long, value_delimiter = ',', default_values_t = [5, 20])]
        l: Vec<u64>,
        /// Dense points for the pointwise bound.
        #[arg(long, default_value_t = 16)]
        points: usize,
    },
    /// Diagonal extraction and uniform Cauchy certificate on a family.
    MontelExtract {
        family: PathBuf,
        /// Write the per-stage CSV here instead of after the report.
        #[arg(long)]
        stages: Option<PathBuf>,
    },
    /// Translated-norm extraction on a Dirichlet family.
    DirichletMontel {
        family: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        stages: Option<PathBuf>,
    },
    /// Bayart's vertical-line mean of |D(it)|^p.
    BayartMean {
        input: PathBuf,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Seeded random Dirichlet polynomial.
    GenRandom {
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value = "unit-disc")]
        law: LawArg,
        #[arg(long)]
        seed: u64,
        /// Restrict indices to the first this-many primes.
        #[arg(long)]
        max_primes: Option<usize>,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "hardy: {e}");
            e.exit_code()
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn emit(output: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn read_series(path: &Path) -> Result<SeriesFile<f64>> {
    parse_series(&read_input(path)?)
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let out = cli.output.as_deref();
    let text = match &cli.command {
        Command::Lift { input } => match read_series(input)? {
            SeriesFile::Dirichlet(d) => write_monomial(&d.lift()?),
            SeriesFile::Monomial(_) => return Err(Error::domain("lift expects a dirichlet file")),
        },
        Command::Drop { input } => match read_series(input)? {
            SeriesFile::Monomial(f) => write_dirichlet(&f.to_dirichlet()?),
            SeriesFile::Dirichlet(_) => return Err(Error::domain("drop expects a monomial file")),
        },
        Command::Norm { input, p, method } => {
            let f = read_series(input)?.into_monomial()?;
            let mut q = cfg.quadrature.clone();
            if let Some(m) = method {
                q.method = (*m).into();
            }
            norm_table(&f, HpIndex::new(p.unwrap_or(cfg.p))?, &q)?
        }
        Command::Coeffs {
            input,
            degree,
            points,
            radius,
        } => coeffs_table(&read_series(input)?.into_monomial()?, *degree, *points, *radius)?,
        Command::Translate { input, eps } => write_dirichlet(&read_series(input)?.into_dirichlet()?.translate(*eps)?),
        Command::Truncate { input, x } => write_dirichlet(&read_series(input)?.into_dirichlet()?.truncate(*x)?),
        Command::VerifyBounds {
            input,
            x,
            eps,
            l,
            points,
        } => bounds_table(&read_series(input)?.into_dirichlet()?, &cfg, x, eps, l, *points)?,
        Command::MontelExtract { family, stages } => {
            let members: Vec<MonomialExpansion<f64>> = parse_family(&read_input(family)?)?
                .into_iter()
                .map(SeriesFile::into_monomial)
                .collect::<Result<_>>()?;
            let report = montel_extract(&members, &cfg.montel, &cfg.quadrature)?;
            report_text("montel-extract", &report, stages.as_deref())?
        }
        Command::DirichletMontel {
            family,
            eps,
            eta,
            stages,
        } => {
            let members: Vec<DirichletPolynomial<f64>> = parse_family(&read_input(family)?)?
                .into_iter()
                .map(SeriesFile::into_dirichlet)
                .collect::<Result<_>>()?;
            let mut dcfg = cfg.dirichlet.clone();
            if let Some(e) = eps {
                dcfg.eps = *e;
            }
            if let Some(e) = eta {
                dcfg.eta = *e;
            }
            let report = dirichlet_montel(&members, &dcfg)?;
            report_text("dirichlet-montel", &report, stages.as_deref())?
        }
        Command::BayartMean {
            input,
            p,
            horizon,
            samples,
        } => {
            let d = read_series(input)?.into_dirichlet()?;
            let p = HpIndex::new(p.unwrap_or(cfg.p))?;
            let horizon = horizon.unwrap_or(cfg.bayart.horizon);
            let samples = samples.unwrap_or(cfg.bayart.samples);
            let est = bayart_mean_norm(&d, p, horizon, samples)?;
            let mut t = CsvTable::new("bayart-mean", &["p", "horizon", "samples", "value", "error_proxy"]);
            t.push(vec![
                fmt_real(p.value()),
                fmt_real(horizon),
                samples.to_string(),
                fmt_real(est.value),
                fmt_real(est.error_proxy),
            ]);
            t.to_text()?
        }
        Command::GenRandom {
            terms,
            max_n,
            law,
            seed,
            max_primes,
        } => {
            let spec = RandomSpec {
                terms: *terms,
                max_n: *max_n,
                law: (*law).into(),
                max_primes: *max_primes,
            };
            write_dirichlet(&gen_random::<f64>(&spec, *seed)?)
        }
    };
    emit(out, stdout, &text)
}

fn norm_table(f: &MonomialExpansion<f64>, p: HpIndex<f64>, q: &crate::polytorus::QuadratureConfig) -> Result<String> {
    let est = hp_norm(f, p, q)?;
    let mut t = CsvTable::new("norm", &["p", "value", "method", "error_proxy", "points", "dims"]);
    t.push(vec![
        fmt_real(p.value()),
        fmt_real(est.value),
        est.method.as_str().to_string(),
        fmt_real(est.error_proxy),
        est.points.to_string(),
        est.dims.to_string(),
    ]);
    t.to_text()
}

fn positions(alpha: &MultiIndex) -> (String, String) {
    let join = |v: Vec<String>| if v.is_empty() { "-".to_string() } else { v.join(",") };
    (
        join(alpha.entries().iter().map(|e| e.0.to_string()).collect()),
        join(alpha.entries().iter().map(|e| e.1.to_string()).collect()),
    )
}

fn coeffs_table(f: &MonomialExpansion<f64>, degree: Option<u32>, points: Option<usize>, radius: f64) -> Result<String> {
    let dims = f.active_positions().last().copied().unwrap_or(0) as usize;
    let degree = degree.unwrap_or_else(|| f.max_degree());
    let grid = ExtractionGrid {
        points: points.unwrap_or(degree as usize + 1),
        radius,
    };
    let got = extract_coefficients(|z| evaluate_coords(f, z), dims, degree, grid)?;
    let mut t = CsvTable::new("coeffs", &["positions", "exponents", "re", "im", "abs_error"]);
    for (alpha, c) in got.iter() {
        let (pos, exp) = positions(alpha);
        let err = (c - f.coefficient(alpha)).norm();
        t.push(vec![pos, exp, fmt_real(c.re), fmt_real(c.im), fmt_real(err)]);
    }
    t.to_text()
}

fn bound_row(t: &mut CsvTable, bound: &str, parameter: String, r: &BoundReport<f64>) {
    t.push(vec![
        bound.to_string(),
        parameter,
        fmt_real(r.lhs),
        fmt_real(r.rhs),
        fmt_real(r.slack),
        r.holds.to_string(),
        r.verdict.as_str().to_string(),
    ]);
}

fn bounds_table(
    d: &DirichletPolynomial<f64>,
    cfg: &RunConfig,
    xs: &[f64],
    eps: &[f64],
    ls: &[u64],
    points: usize,
) -> Result<String> {
    let p = HpIndex::new(cfg.p)?;
    let f = d.lift()?;
    let dims = f.active_positions().last().copied().unwrap_or(0) as usize;
    let norm = hp_norm(&f, p, &cfg.quadrature)?;
    let mut t = CsvTable::new(
        "verify-bounds",
        &["bound", "parameter", "lhs", "rhs", "slack", "holds", "verdict"],
    );
    for (k, z) in dense_enumerate::<f64>(points, dims.max(1)).iter().enumerate() {
        let r = pointwise_bound(&f, p, z, &norm)?;
        bound_row(&mut t, "pointwise", format!("point={k}"), &r);
    }
    for &x in xs {
        let r = truncation_ratio(d, x, p, cfg.truncation_constant, &cfg.quadrature)?;
        bound_row(&mut t, "truncation", format!("x={}", fmt_real(x)), &r);
    }
    for &e in eps {
        for &l in ls {
            let r = abel_tail_bound(d, e, l, cfg.truncation_constant)?;
            bound_row(&mut t, "abel_tail", format!("eps={};l={l}", fmt_real(e)), &r);
        }
    }
    t.to_text()
}

fn stage_table(command: &str, report: &ExtractionReport<f64>) -> Result<String> {
    let mut t = CsvTable::new(
        command,
        &["stage", "probe", "tolerance", "diameter", "representative_re", "representative_im", "survivors"],
    );
    for s in &report.stages {
        let probe = match s.probe {
            Probe::DensePoint(j) => format!("point:{j}"),
            Probe::Coefficient(n) => format!("n:{n}"),
        };
        t.push(vec![
            s.stage.to_string(),
            probe,
            fmt_real(s.tolerance),
            fmt_real(s.diameter),
            fmt_real(s.representative.re),
            fmt_real(s.representative.im),
            s.survivors.to_string(),
        ]);
    }
    t.to_text()
}

/// `key: value` lines describing the report, followed by the stage CSV
/// unless it goes to its own file.
fn report_text(command: &str, report: &ExtractionReport<f64>, stages: Option<&Path>) -> Result<String> {
    let mut s = String::new();
    let indices: Vec<String> = report.selected_indices.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "# hardy-report v1 {command}");
    let _ = writeln!(s, "selected_indices: {}", indices.join(","));
    let _ = writeln!(s, "stages: {}", report.stages.len());
    let exhausted = report.exhausted_at.map_or("none".to_string(), |j| j.to_string());
    let _ = writeln!(s, "exhausted_at: {exhausted}");
    let _ = writeln!(s, "cauchy_modulus: {}", fmt_real(report.cauchy_modulus));
    let certified = report.certified.map_or("none".to_string(), |c| c.to_string());
    let _ = writeln!(s, "certified: {certified}");
    if let Some(c) = &report.dirichlet {
        let _ = writeln!(s, "eps: {}", fmt_real(c.eps));
        let _ = writeln!(s, "eta: {}", fmt_real(c.eta));
        let _ = writeln!(s, "norm_bound: {}", fmt_real(c.norm_bound));
        let _ = writeln!(s, "tail_cut: {}", c.tail_cut);
        let _ = writeln!(s, "tail_max: {}", fmt_real(c.tail_max));
        let _ = writeln!(s, "gap_threshold: {}", fmt_real(c.gap_threshold));
        let _ = writeln!(s, "translated_max: {}", fmt_real(c.translated_max));
        let _ = writeln!(s, "untranslated_max: {}", fmt_real(c.untranslated_max));
    }
    if let Some(b) = report.limit_norm_bound {
        let _ = writeln!(s, "limit_norm_bound: {}", fmt_real(b));
    }
    if let Some(r) = &report.limit_check {
        let _ = writeln!(s, "limit_norm: {}", fmt_real(r.lhs));
        let _ = writeln!(s, "limit_check: {}", r.verdict.as_str());
    }
    let limit = match &report.limit {
        Some(LimitCandidate::Monomial(f)) => write_monomial(f),
        Some(LimitCandidate::Dirichlet(d)) => write_dirichlet(d),
        None => String::new(),
    };
    for line in limit.lines() {
        let _ = writeln!(s, "limit: {line}");
    }
    let table = stage_table(command, report)?;
    match stages {
        Some(path) => std::fs::write(path, table).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => {
            s.push('\n');
            s.push_str(&table);
        }
    }
    Ok(s)
}
