//! `phicong`: q-expansions of φ^(p), U_p, φ-polynomial decompositions,
//! γ tables and the verification sweeps.
//!
//! Exit codes: 0 success, 1 a verification sweep found a failure, 2 usage
//! error (bad flags, unsupported prime, unreadable config, under-budget
//! precision).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;

use phicong::digits::{check_gamma_prime, f_iter, gamma};
use phicong::eta::phi_power;
use phicong::hecke::u_p_iter;
use phicong::phipoly::{decompose, decompose_budget, top_degree, DEFAULT_GUARD};
use phicong::verify::{self, LehnerForm, VerificationReport};
use phicong::{IntPhiCache, IntSeries};

const CACHE_ENV: &str = "PHICONG_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "phicong",
    version,
    about = "Congruences for level-p Hauptmoduln"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of (φ^(p))^m to `terms` coefficients
    Expand {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        terms: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// U_p^α (φ^(p))^m to `terms` coefficients
    Up {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long)]
        terms: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// U_p^α φ^m as a polynomial in φ, with the p-adic valuation of each coefficient
    Decompose {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u32,
        /// precision of φ^m; rejected if below the budget p^α(p^α m + guard + 1)
        #[arg(long)]
        prec: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// CSV of alpha, gamma_p(m, alpha), f^alpha(m)
    Gamma {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        alpha_max: u32,
    },
    /// Run a verification sweep
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[command(flatten)]
        range: RangeArgs,
        /// which reading of Lehner's bound `lehner` compares against
        #[arg(long, value_enum, default_value_t = Form::Printed)]
        form: Form,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exploratory runs
    Explore {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value_t = 1000)]
        prime_max: u64,
        #[arg(long, default_value_t = 26)]
        m_max: u64,
        #[arg(long)]
        guard: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Theorem1,
    Theorem2,
    Alpha1,
    Newton,
    LemmaPoly,
    Binarygamma,
    Lehner,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Printed,
    Regrouped,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    P13,
}

#[derive(clap::Args)]
struct RangeArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    alpha_max: Option<u32>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    guard: Option<u32>,
    /// JSON file with any of p, m_max, alpha_max, n_max, guard; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeConfig {
    p: Option<u32>,
    m_max: Option<u64>,
    alpha_max: Option<u32>,
    n_max: Option<u64>,
    guard: Option<u32>,
}

/// Anything that is not a verification failure ends in exit code 2.
#[derive(Debug)]
enum CliError {
    Usage(String),
}

impl From<phicong::Error> for CliError {
    fn from(e: phicong::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn cache() -> IntPhiCache {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => IntPhiCache::with_persist_dir(dir),
        _ => IntPhiCache::new(),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn emit_series(s: &IntSeries, format: Format) -> CliResult<()> {
    match format {
        Format::Json => emit(&format!("{}\n", s.to_json()), None),
        Format::Text => emit(&format!("{s}\n"), None),
    }
}

fn positive_terms(terms: i64) -> CliResult<i64> {
    if terms < 1 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    Ok(terms)
}

fn resolve_range(range: &RangeArgs) -> CliResult<RangeConfig> {
    let file = match &range.config {
        None => RangeConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
    };
    Ok(RangeConfig {
        p: range.p.or(file.p),
        m_max: range.m_max.or(file.m_max),
        alpha_max: range.alpha_max.or(file.alpha_max),
        n_max: range.n_max.or(file.n_max),
        guard: range.guard.or(file.guard),
    })
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn emit_reports(reports: &[VerificationReport], run: &RunArgs) -> CliResult<ExitCode> {
    let text = match run.format {
        Format::Json if reports.len() == 1 => format!("{}\n", reports[0].to_json()),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(reports).expect("reports serialize")
        ),
        Format::Text => reports.iter().map(|r| r.render_text()).collect(),
    };
    emit(&text, run.output.as_ref())?;
    Ok(if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_verify(claim: Claim, range: &RangeArgs, form: Form, run: &RunArgs) -> CliResult<ExitCode> {
    let cfg = resolve_range(range)?;
    let guard = cfg.guard.unwrap_or(DEFAULT_GUARD);
    let m_max = cfg.m_max.unwrap_or(10);
    let alpha_max = cfg.alpha_max.unwrap_or(2);
    let need_p = || {
        cfg.p
            .ok_or_else(|| CliError::Usage("--p is required for this claim".into()))
    };
    let cache = cache();
    let report = match claim {
        Claim::Theorem1 => {
            let (p, n_max) = (need_p()?, cfg.n_max.unwrap_or(500));
            run_in_pool(run.jobs, || {
                verify::verify_theorem1(p, m_max, alpha_max, n_max)
            })?
        }
        Claim::Theorem2 => {
            let p = need_p()?;
            run_in_pool(run.jobs, || {
                verify::verify_theorem2(p, m_max, alpha_max, guard, &cache)
            })?
        }
        Claim::Alpha1 => {
            let p = need_p()?;
            run_in_pool(run.jobs, || verify::verify_alpha1(p, m_max, guard, &cache))?
        }
        Claim::Newton => {
            let p = need_p()?;
            run_in_pool(run.jobs, || verify::verify_newton(p, m_max, guard, &cache))?
        }
        Claim::LemmaPoly => {
            let p = need_p()?;
            run_in_pool(run.jobs, || {
                verify::verify_lemma_poly(p, m_max, guard, &cache)
            })?
        }
        Claim::Binarygamma => {
            let p = need_p()?;
            run_in_pool(run.jobs, || verify::verify_binarygamma(p, m_max, alpha_max))?
        }
        Claim::Lehner => {
            if cfg.p.is_some_and(|p| p != 3) {
                return Err(CliError::Usage(
                    "the Lehner comparison is for p = 3 only".into(),
                ));
            }
            let form = match form {
                Form::Printed => LehnerForm::Printed,
                Form::Regrouped => LehnerForm::Regrouped,
            };
            run_in_pool(run.jobs, || {
                verify::compare_lehner(m_max, alpha_max, form, guard, &cache)
            })?
        }
    }?;
    emit_reports(&[report], run)
}

fn run_decompose(
    p: u32,
    m: u64,
    alpha: u32,
    guard: u32,
    prec: Option<i64>,
    format: Format,
) -> CliResult<ExitCode> {
    if m == 0 || alpha == 0 {
        return Err(CliError::Usage("--m and --alpha must be at least 1".into()));
    }
    let budget = decompose_budget(p, m, alpha, guard);
    let prec = match prec {
        Some(given) if given < budget => {
            return Err(CliError::Usage(format!(
                "--prec {given} is below the required budget {budget}"
            )));
        }
        Some(given) => given,
        None => budget,
    };
    let cache = cache();
    let phi_m = phi_power::<BigInt>(p, m as u32, prec)?;
    let poly = decompose(
        &u_p_iter(&phi_m, p, alpha),
        p,
        top_degree(p, m, alpha),
        guard,
        &cache,
    )?;
    let text = match format {
        Format::Json => {
            let vals: Vec<(u32, u32)> = poly.val_profile();
            let doc = serde_json::json!({
                "p": p,
                "m": m,
                "alpha": alpha,
                "guard": guard,
                "prec": prec,
                "poly": serde_json::to_value(&poly).expect("poly serializes"),
                "valuations": vals,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text => {
            let mut s =
                format!("U_{p}^{alpha} phi^{m} (p = {p}), degree  valuation  coefficient\n");
            for ((j, c), (_, v)) in poly.terms().zip(poly.val_profile()) {
                s.push_str(&format!("{j:>6}  {v:>9}  {c}\n"));
            }
            s
        }
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

fn run_gamma(p: u32, m: u64, alpha_max: u32) -> CliResult<ExitCode> {
    check_gamma_prime(p)?;
    let mut csv = String::from("alpha,gamma,f_alpha\n");
    for alpha in 0..=alpha_max {
        csv.push_str(&format!(
            "{alpha},{},{}\n",
            gamma(p, m, alpha)?,
            f_iter(p, m, alpha)
        ));
    }
    emit(&csv, None)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Expand {
            p,
            m,
            terms,
            format,
        } => {
            let s = phi_power::<BigInt>(p, m, positive_terms(terms)?)?;
            emit_series(&s, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Up {
            p,
            m,
            alpha,
            terms,
            format,
        } => {
            let terms = positive_terms(terms)?;
            // n < terms needs p^α n < p^α (terms − 1) + 1
            let pa = (p as i64)
                .checked_pow(alpha)
                .ok_or_else(|| CliError::Usage("--alpha too large".into()))?;
            let s = u_p_iter(&phi_power::<BigInt>(p, m, pa * (terms - 1) + 1)?, p, alpha);
            emit_series(&s.truncate(terms), format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            p,
            m,
            alpha,
            guard,
            prec,
            format,
        } => run_decompose(p, m, alpha, guard, prec, format),
        Command::Gamma { p, m, alpha_max } => run_gamma(p, m, alpha_max),
        Command::Verify {
            claim,
            range,
            form,
            run,
        } => run_verify(claim, &range, form, &run),
        Command::Explore {
            target: Target::P13,
            prime_max,
            m_max,
            guard,
            run,
        } => {
            let cache = cache();
            let guard = guard.unwrap_or(DEFAULT_GUARD);
            let reports =
                run_in_pool(run.jobs, || -> phicong::Result<Vec<VerificationReport>> {
                    Ok(vec![
                        verify::explore_p13_tau(prime_max)?,
                        verify::explore_p13_residues(m_max, guard, &cache)?,
                    ])
                })??;
            emit_reports(&reports, &run)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
