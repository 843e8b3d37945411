//! `bestl1`: reports for Favard constants, best L¹ approximation
//! certificates, Steklov kernels, golden-formula series and the Lipschitz
//! polynomial construction.
//!
//! Exit codes: 0 when every check passes, 1 on a tolerance breach or a
//! pipeline failure, 2 on a usage error.

mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bestl1::bernoulli_series::{golden_formula_check, laurent_coeffs, residue_coeffs, AnalyticTail};
use bestl1::best_l1::{certify_with_grid, steklov_best, SteklovRegime, DEFAULT_GRID};
use bestl1::favard::{favard_exact, favard_series};
use bestl1::kernels::{KernelKind, KernelSpec, Quasi};
use bestl1::lipschitz_alg::{build_polynomial, factors, verify_bound, LipFunction};
use bestl1::Error;
use clap::{Parser, Subcommand, ValueEnum};

use report::{Report, ReportFormat};

const MAX_CERTIFY_N: usize = 256;
const MAX_LIPSCHITZ_N: usize = 1024;
const CONTOUR_SAMPLES: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "bestl1", version, about = "Best L1 approximation certificates and reports")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
    /// Pass/fail tolerance (each command has its own default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid size for quadrature and bound checks (default 4096).
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Favard constants K_0..K_rmax: exact π-rational values vs the series.
    Constants {
        /// Largest order, at most 64.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(0..=64))]
        r_max: u32,
    },
    /// Duality certificates for the best approximation error of a kernel.
    Certify {
        /// Kernel: B1..B12, K1 or K2.
        kernel: String,
        /// Degree parameter n, or an inclusive range `a..b`, within 2..256.
        n: String,
    },
    /// Best approximation of the Steklov kernel in its three regimes.
    Steklov {
        /// Order m ≥ 1.
        #[arg(long)]
        m: u32,
        /// Comma-separated step sizes h; fractions like 1/4 are accepted.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<String>,
        /// Degree parameter n ≥ 1.
        #[arg(long)]
        n: usize,
    },
    /// Golden-formula reconstruction of K1/K2 from R Bernoulli terms.
    Series {
        /// Which kernel.
        #[arg(value_enum, ignore_case = true, default_value_t = WhichArg::Both)]
        which: WhichArg,
        /// Number of Bernoulli terms R.
        #[arg(short = 'R', long = "terms", default_value_t = 40)]
        terms: usize,
    },
    /// The Lipschitz polynomial construction and its pointwise bound.
    Lipschitz {
        /// const, const(c), linear, abs, abs_shifted(a) or smooth_sin.
        function: String,
        /// Degree n, or an inclusive range `a..b`.
        n: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    K1,
    K2,
    Both,
}

/// Why a command did not produce a passing report.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Pipeline(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument { .. } | Error::OrderOutOfRange { .. } | Error::Pole { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Pipeline(other.to_string()),
        }
    }
}

type CmdResult = Result<Report, Failure>;

/// `a`, `a..b` or `a..=b` (both inclusive) within `[lo, hi]`.
fn parse_range(s: &str, lo: usize, hi: usize) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("invalid n range `{s}` (expected `n` or `a..b` within {lo}..{hi})"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a > b || a < lo || b > hi {
        return Err(bad());
    }
    Ok((a, b))
}

/// A decimal or a fraction `p/q`.
fn parse_real(s: &str) -> Result<f64, Failure> {
    let bad = || Failure::Usage(format!("invalid number `{s}`"));
    let v = match s.split_once('/') {
        Some((p, q)) => p.trim().parse::<f64>().map_err(|_| bad())? / q.trim().parse::<f64>().map_err(|_| bad())?,
        None => s.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn cmd_constants(r_max: u32, tol: f64) -> CmdResult {
    let mut rep = Report::new("constants", vec!["r", "K_r", "exact", "series", "abs_diff"]);
    rep.param("r_max", r_max);
    rep.param("tol", tol);
    for r in 0..=r_max as usize {
        let k = favard_exact(r)?;
        let series = favard_series(r, 1e-14)?;
        let diff = (k.value - series).abs();
        rep.passed &= diff <= tol;
        rep.push(vec![r.into(), k.value.into(), k.to_string().into(), series.into(), diff.into()]);
    }
    Ok(rep)
}

fn parse_kernel(s: &str) -> Result<KernelSpec, Failure> {
    let k: KernelSpec = s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    match k.kind() {
        KernelKind::Bernoulli(r) if r > 12 => Err(Failure::Usage(format!("kernel `{s}`: supported orders are B1..B12"))),
        _ => Ok(k),
    }
}

fn cmd_certify(kernel: &str, n: &str, tol: f64, grid: usize) -> CmdResult {
    let k = parse_kernel(kernel)?;
    let (lo, hi) = parse_range(n, 2, MAX_CERTIFY_N)?;
    let mut rep =
        Report::new("certify", vec!["kernel", "n", "lower", "upper", "gap", "closed_form", "abs_diff"]);
    rep.param("kernel", k.to_string());
    rep.param("n_min", lo);
    rep.param("n_max", hi);
    rep.param("tol", tol);
    rep.param("grid", grid);
    for n in lo..=hi {
        let cert = match certify_with_grid(&k, n, tol, grid) {
            Ok(c) => c,
            Err(Error::GapExceeded { certificate, .. }) => *certificate,
            Err(e) => return Err(e.into()),
        };
        rep.passed &= cert.gap() <= tol;
        let diff = cert.closed_form.map(|c| (cert.lower - c).abs());
        rep.push(vec![
            k.to_string().into(),
            n.into(),
            cert.lower.into(),
            cert.upper.into(),
            cert.gap().into(),
            cert.closed_form.into(),
            diff.into(),
        ]);
    }
    Ok(rep)
}

fn cmd_steklov(m: u32, hs: &[String], n: usize, tol: f64) -> CmdResult {
    let mut rep = Report::new(
        "steklov",
        vec!["m", "h", "n", "regime", "value", "lower", "upper", "gap", "certified"],
    );
    rep.param("m", m);
    rep.param("h", hs.join(","));
    rep.param("n", n);
    rep.param("tol", tol);
    let hs: Vec<f64> = hs.iter().map(|s| parse_real(s)).collect::<Result<_, _>>()?;
    for h in hs {
        let b = steklov_best(m, h, n, tol)?;
        rep.passed &= match b.regime {
            SteklovRegime::Bound => b.upper >= b.lower,
            _ => b.certified,
        };
        rep.push(vec![
            m.into(),
            h.into(),
            n.into(),
            b.regime.to_string().into(),
            b.value.into(),
            b.lower.into(),
            b.upper.into(),
            (b.upper - b.lower).into(),
            b.certified.into(),
        ]);
    }
    Ok(rep)
}

fn cmd_series(which: WhichArg, terms: usize, grid: usize, tol: f64) -> CmdResult {
    if terms < 1 {
        return Err(Failure::Usage("need R >= 1".into()));
    }
    let mut rep = Report::new(
        "series",
        vec!["kernel", "R", "grid", "max_error", "coef_error", "tail_bound", "contour_vs_residue"],
    );
    rep.param("which", format!("{which:?}"));
    rep.param("R", terms);
    rep.param("grid", grid);
    rep.param("tol", tol);
    let kernels: &[Quasi] = match which {
        WhichArg::K1 => &[Quasi::K1],
        WhichArg::K2 => &[Quasi::K2],
        WhichArg::Both => &[Quasi::K1, Quasi::K2],
    };
    for &q in kernels {
        let g = golden_formula_check(q, grid, terms)?;
        let tail = AnalyticTail::quasi(q);
        let contour = laurent_coeffs(&tail, terms, CONTOUR_SAMPLES)?;
        let residue = residue_coeffs(&tail, terms)?;
        let cdiff = contour.iter().zip(&residue).map(|(a, b)| (a.value - b).norm()).fold(0.0, f64::max);
        rep.passed &= g.max_error <= tol;
        rep.push(vec![
            format!("{q:?}").into(),
            terms.into(),
            grid.into(),
            g.max_error.into(),
            g.coef_error.into(),
            g.tail_bound.into(),
            cdiff.into(),
        ]);
    }
    Ok(rep)
}

fn cmd_lipschitz(function: &str, n: &str, grid: usize, tol: f64) -> CmdResult {
    let f = LipFunction::builtin(function).map_err(|e| Failure::Usage(e.to_string()))?;
    let (lo, hi) = parse_range(n, 2, MAX_LIPSCHITZ_N)?;
    let mut rep = Report::new(
        "lipschitz",
        vec!["function", "n", "degree", "max_slack", "max_ratio", "max_error", "T", "S"],
    );
    rep.param("function", f.name());
    rep.param("n_min", lo);
    rep.param("n_max", hi);
    rep.param("grid", grid);
    rep.param("tol", tol);
    for n in lo..=hi {
        let samples = (8 * n).max(1 << 14).next_power_of_two();
        let p = build_polynomial(&f, n, samples)?;
        let chk = verify_bound(&f, &p, n, grid)?;
        let (t, s) = factors(n)?;
        rep.passed &= chk.max_slack <= tol && p.degree() <= n;
        rep.push(vec![
            f.name().into(),
            n.into(),
            p.degree().into(),
            chk.max_slack.into(),
            chk.max_ratio.into(),
            chk.max_error.into(),
            t.into(),
            s.into(),
        ]);
    }
    Ok(rep)
}

fn run(cli: &Cli) -> CmdResult {
    if let Some(t) = cli.tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let grid = cli.grid.unwrap_or(DEFAULT_GRID);
    match &cli.command {
        Command::Constants { r_max } => cmd_constants(*r_max, cli.tol.unwrap_or(1e-10)),
        Command::Certify { kernel, n } => cmd_certify(kernel, n, cli.tol.unwrap_or(1e-6), grid),
        Command::Steklov { m, h, n } => cmd_steklov(*m, h, *n, cli.tol.unwrap_or(1e-6)),
        Command::Series { which, terms } => cmd_series(*which, *terms, grid, cli.tol.unwrap_or(1e-8)),
        Command::Lipschitz { function, n } => cmd_lipschitz(function, n, grid, cli.tol.unwrap_or(1e-9)),
    }
}

fn emit(report: &Report, cli: &Cli) -> io::Result<()> {
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(cli.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            report.write(cli.format, &mut w)?;
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors and 0 for --help/--version
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, &cli) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(1);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("{}: tolerance check failed", report.command);
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Pipeline(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
