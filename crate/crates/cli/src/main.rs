mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaborform::circlepoly::{DEFAULT_EXTREMA_TOL, DEFAULT_SPD_THRESHOLD};
use gaborform::frame::DEFAULT_M_MAX;
use gaborform::report::{
    analyze, frame_check, AnalysisReport, AnalyzeOptions, FrameCheckOptions, FrameCheckReport,
};
use gaborform::repro::{repro_paper, ReproReport};
use gaborform::toeplitz::{DEFAULT_FACTOR_TOL, DIM_CAP};
use gaborform::{
    fejer_riesz_factor, parse_polynomial, verify_block_bounds, AutocorrSequence, BlockBoundReport,
    Error, Factorization, SparsePolynomial,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use output::{list, num};

const SEED_ENV: &str = "GABORFORM_SEED";

const GRAMMAR: &str = "\
POLYNOMIALS

  Real sparse polynomials p(z) = a0 z^n0 + ... + ak z^nk are accepted in two forms.

  Expression:  1+z+z^3   -2 + z + z^3   2+3z^2+4z^3   0.5*z^2 - 1.5e-1
      Terms are joined by + or -. A term is a decimal coefficient, z^k, or both
      (an optional * may separate them); a bare z means z^1.
  Term list:   1:0,1:1,1:3   (coefficient:exponent pairs, comma separated)

  Exponents are non-negative integers; repeated exponents are summed. Complex
  coefficients are rejected. The polynomial is shifted so that its smallest
  exponent is 0, which leaves |p| on the unit circle unchanged.

BANDS

  `factor` takes autocorrelation values b0,b1,...,bN as a comma-separated list.

EXIT CODES

  0 success / positive definite, 1 check failed, 2 usage or input error,
  3 not positive definite (analyze) or not factorable (factor).

The seed defaults to 42; the GABORFORM_SEED environment variable overrides --seed.";

#[derive(Parser)]
#[command(name = "gaborform", version, about = "Step-function Gabor windows, Toeplitz quadratic forms and their spectra", after_long_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Numerical tolerance: extrema refinement, or the acceptance tolerance for `factor`.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds, positive definiteness, unit roots and block spectra of a polynomial.
    Analyze {
        /// Polynomial, e.g. "1+z+z^3" (see --help for the grammar).
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Threshold on min |p|² above which the form is positive definite.
        #[arg(long, default_value_t = DEFAULT_SPD_THRESHOLD)]
        threshold: f64,
        /// Block dimensions, inclusive range "a..b".
        #[arg(long, default_value = "2..5", value_parser = parse_dims)]
        dims: Dims,
        /// Also factor the autocorrelation band back into a polynomial.
        #[arg(long)]
        factor: bool,
    },
    /// Eigenvalues of principal Toeplitz blocks against the symbol range.
    Blocks {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Block dimensions, inclusive range "a..b".
        #[arg(long, default_value = "2..5", value_parser = parse_dims)]
        dims: Dims,
    },
    /// Empirical frame-bound ratios and direct-versus-exact frame sums.
    FrameCheck {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Random coefficient vectors to sample.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Support width of each sampled vector.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        support: u64,
        /// Modulations |m| ≤ mmax summed in the direct frame sum.
        #[arg(long, default_value_t = DEFAULT_M_MAX, value_parser = clap::value_parser!(u64).range(1..))]
        mmax: u64,
        /// Pieces per interval of length 2π in the random test functions.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
    },
    /// Recover a polynomial from its autocorrelation band "b0,b1,...,bN".
    Factor {
        #[arg(allow_hyphen_values = true)]
        band: String,
    },
    /// Check bounds and spectra of the three reference polynomials.
    ReproPaper,
}

#[derive(Clone, Copy, Debug)]
struct Dims {
    from: usize,
    to: usize,
}

fn parse_dims(text: &str) -> Result<Dims, String> {
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected a range like 2..5, got {text:?}"))
    };
    let (from, to) = (parse(a)?, parse(b)?);
    if from == 0 || from > to {
        return Err(format!("range must satisfy 1 ≤ a ≤ b, got {text:?}"));
    }
    if to > DIM_CAP {
        return Err(format!("dimension {to} exceeds the cap of {DIM_CAP}"));
    }
    Ok(Dims { from, to })
}

enum Failure {
    Input(String),
    Verdict(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "{SEED_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        _ => Ok(flag),
    }
}

fn tol(global: &Global, default: f64) -> Result<f64, Failure> {
    match global.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => Err(Error::InvalidTolerance(t).into()),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn polynomial(text: &str) -> Result<SparsePolynomial, Failure> {
    parse_polynomial(text).map_err(|e| Failure::Input(format!("{text:?}: {e}")))
}

fn emit<T: Serialize>(format: Format, value: &T, rows: impl FnOnce() -> Vec<(String, String)>) {
    match format {
        Format::Json => println!("{}", output::json(value)),
        Format::Table => print!("{}", output::table(&rows())),
        Format::Csv => print!("{}", output::csv(&rows())),
    }
}

fn row(key: impl Into<String>, value: impl Into<String>) -> (String, String) {
    (key.into(), value.into())
}

fn analysis_rows(r: &AnalysisReport) -> Vec<(String, String)> {
    let mut rows = vec![
        row("polynomial", r.polynomial.text.clone()),
        row("shift", r.polynomial.shift.to_string()),
        row("autocorrelation", list(&r.autocorrelation, ", ")),
        row("c1", num(r.bounds.c1)),
        row("theta_min", num(r.bounds.theta_min)),
        row("c2", num(r.bounds.c2)),
        row("theta_max", num(r.bounds.theta_max)),
        row("threshold", num(r.threshold)),
        row("spd", r.spd.to_string()),
        row(
            "mother_frame_wavelet",
            r.frame.is_mother_frame_wavelet.to_string(),
        ),
    ];
    if r.unit_roots.is_empty() {
        rows.push(row("unit_roots", "none"));
    }
    for root in &r.unit_roots {
        rows.push(row(
            "unit_root",
            format!("angle {} residual {}", num(root.angle), num(root.residual)),
        ));
    }
    for b in &r.blocks {
        rows.push(row(
            format!("block_{}", b.dim),
            format!("{} ({})", list(&b.eigenvalues, " "), pass(b.within)),
        ));
    }
    if let Some(f) = &r.factorization {
        rows.extend(factor_rows(f));
    }
    rows
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn factor_rows(f: &Factorization) -> Vec<(String, String)> {
    let mut rows = vec![
        row("factor", output::poly(&f.polynomial)),
        row("factor_residual", num(f.residual)),
    ];
    if let Some(w) = &f.warning {
        rows.push(row("factor_warning", w.clone()));
    }
    rows
}

fn cmd_analyze(
    g: &Global,
    text: &str,
    threshold: f64,
    dims: Dims,
    factor: bool,
) -> Result<(), Failure> {
    let p = polynomial(text)?;
    let opts = AnalyzeOptions {
        extrema_tol: tol(g, DEFAULT_EXTREMA_TOL)?,
        threshold,
        dims: (dims.from..=dims.to).collect(),
        factor,
    };
    let report = analyze(&p, &opts)?;
    emit(g.format, &report, || analysis_rows(&report));
    if report.spd {
        Ok(())
    } else {
        Err(Failure::Verdict(3))
    }
}

fn cmd_blocks(g: &Global, text: &str, dims: Dims) -> Result<(), Failure> {
    let p = polynomial(text)?;
    let dims: Vec<usize> = (dims.from..=dims.to).collect();
    let reports = verify_block_bounds(&p, &dims)?;
    match g.format {
        Format::Json => println!("{}", output::json(&reports)),
        Format::Table => {
            for b in &reports {
                println!(
                    "d={:<4} {}  [{}]",
                    b.dim,
                    list(&b.eigenvalues, " "),
                    pass(b.within)
                );
            }
        }
        // one row per dimension: dim, its eigenvalues ascending, pass/fail
        Format::Csv => {
            for b in &reports {
                println!("{},{},{}", b.dim, list(&b.eigenvalues, ","), pass(b.within));
            }
        }
    }
    if reports.iter().all(|b: &BlockBoundReport| b.within) {
        Ok(())
    } else {
        Err(Failure::Verdict(1))
    }
}

fn frame_rows(r: &FrameCheckReport) -> Vec<(String, String)> {
    let mut rows = vec![
        row("polynomial", r.polynomial.text.clone()),
        row("lower_bound", num(r.lower_bound)),
        row("upper_bound", num(r.upper_bound)),
        row("epsilon", num(r.epsilon)),
        row("vectors", r.ratios.vectors.to_string()),
        row("min_ratio", num(r.ratios.min)),
        row("max_ratio", num(r.ratios.max)),
        row("ratios_within_bounds", r.ratios_within_bounds.to_string()),
        row("m_max", r.m_max.to_string()),
        row("resolution", r.resolution.to_string()),
    ];
    for (i, c) in r.comparisons.iter().enumerate() {
        rows.push(row(
            format!("sum_{i}"),
            format!(
                "lemma {} direct {} gap {}",
                num(c.lemma),
                num(c.direct),
                num(c.relative_gap)
            ),
        ));
    }
    rows.push(row("max_relative_gap", num(r.max_relative_gap)));
    rows
}

fn cmd_frame_check(
    g: &Global,
    text: &str,
    trials: u64,
    support: u64,
    m_max: u64,
    resolution: u32,
) -> Result<(), Failure> {
    let p = polynomial(text)?;
    let too_large = |what: &str| Failure::Input(format!("{what} is too large"));
    let opts = FrameCheckOptions {
        trials: usize::try_from(trials).map_err(|_| too_large("--trials"))?,
        support: usize::try_from(support).map_err(|_| too_large("--support"))?,
        m_max,
        resolution,
        ..FrameCheckOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed(g.seed)?);
    let report = frame_check(&p, &opts, &mut rng)?;
    emit(g.format, &report, || frame_rows(&report));
    if report.ratios_within_bounds {
        Ok(())
    } else {
        Err(Failure::Verdict(1))
    }
}

#[derive(Serialize)]
struct FactorOutput<'a> {
    factorable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorization: Option<&'a Factorization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_symbol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
}

fn cmd_factor(g: &Global, text: &str) -> Result<(), Failure> {
    let values = text
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("band entry {:?} is not a number", v.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let band = AutocorrSequence::from_band(values)?;
    match fejer_riesz_factor(&band, tol(g, DEFAULT_FACTOR_TOL)?) {
        Ok(f) => {
            let out = FactorOutput {
                factorable: true,
                polynomial: Some(output::poly(&f.polynomial)),
                factorization: Some(&f),
                min_symbol: None,
                theta: None,
            };
            emit(g.format, &out, || {
                let mut rows = vec![row("factorable", "true")];
                rows.extend(factor_rows(&f));
                rows
            });
            Ok(())
        }
        Err(Error::NotFactorable { min_symbol, theta }) => {
            let out = FactorOutput {
                factorable: false,
                polynomial: None,
                factorization: None,
                min_symbol: Some(min_symbol),
                theta: Some(theta),
            };
            emit(g.format, &out, || {
                vec![
                    row("factorable", "false"),
                    row("min_symbol", num(min_symbol)),
                    row("theta", num(theta)),
                ]
            });
            Err(Failure::Verdict(3))
        }
        Err(e) => Err(e.into()),
    }
}

fn repro_rows(r: &ReproReport) -> Vec<(String, String)> {
    let mut rows: Vec<_> = r
        .items
        .iter()
        .map(|i| {
            row(
                i.name.clone(),
                format!(
                    "{}  expected [{}] actual [{}] tol [{}] max delta {}",
                    pass(i.pass),
                    list(&i.expected, " "),
                    list(&i.actual, " "),
                    list(&i.tolerances, " "),
                    num(i.max_delta()),
                ),
            )
        })
        .collect();
    rows.extend(r.notes.iter().map(|n| row("note", n.clone())));
    rows
}

fn cmd_repro(g: &Global) -> Result<(), Failure> {
    let report = repro_paper()?;
    emit(g.format, &report, || repro_rows(&report));
    for item in report.items.iter().filter(|i| !i.pass) {
        eprintln!(
            "mismatch: {} (max delta {})",
            item.name,
            num(item.max_delta())
        );
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Verdict(1))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze {
            poly,
            threshold,
            dims,
            factor,
        } => cmd_analyze(g, poly, *threshold, *dims, *factor),
        Command::Blocks { poly, dims } => cmd_blocks(g, poly, *dims),
        Command::FrameCheck {
            poly,
            trials,
            support,
            mmax,
            resolution,
        } => cmd_frame_check(g, poly, *trials, *support, *mmax, *resolution),
        Command::Factor { band } => cmd_factor(g, band),
        Command::ReproPaper => cmd_repro(g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(code)) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
