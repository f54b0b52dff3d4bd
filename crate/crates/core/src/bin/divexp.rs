use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use divexp::arith::{is_prime, multiplicative_order, ModulusContext};
use divexp::expsum::{root_of_unity, s_sum, t_exact, EvalOptions};
use divexp::harness::{
    geometric_grid, run_char_check, run_envelope_prime, run_envelope_t, run_mq_check, run_selberg_check, selftest,
    to_csv, to_json, CsvTable, HarnessOptions, DEFAULT_CEILING,
};
use divexp::mainterm::{
    a_bound, main_term, subgroup_envelope, tau_cong_tail, DEFAULT_PRIME_CUTOFF, DEFAULT_SERIES_CUTOFF,
};
use divexp::sieve::SieveConfig;
use divexp::{Error, Result};

#[derive(Parser)]
#[command(name = "divexp", version, about = "Exponential sums over the divisor function and their main terms")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Exit 1 when a verdict or self-test check fails.
    #[arg(long, global = true)]
    strict: bool,
    /// Sieve worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GridArgs {
    /// Geometric grid `lo:hi:factor`.
    #[arg(long, default_value = "10000:10000000:10")]
    grid: String,
    /// Largest ratio over the upper half of the grid still counted as bounded.
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: f64,
}

#[derive(Subcommand)]
enum Command {
    /// T_{a,m}(N) = sum_{n <= N} e_m(a tau(n)).
    Sum {
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        #[arg(short)]
        m: u64,
        #[arg(short = 'N')]
        n: u64,
        /// Allow gcd(a, m) > 1.
        #[arg(long)]
        override_gcd: bool,
        /// Include wall time (the output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// S_m(r) = sum_{n=1}^{t} e_m(r 2^n).
    SSum {
        #[arg(short)]
        m: u64,
        #[arg(short, allow_hyphen_values = true)]
        r: i64,
    },
    /// Main-term coefficient of T_{a,m}(N) with its certified error.
    MainTerm {
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        #[arg(short)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_SERIES_CUTOFF)]
        cutoff: u64,
    },
    /// T_{a,m}(N) against the main term, envelope t N (log N)^{-alpha_t}.
    Envelope {
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        #[arg(short)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_SERIES_CUTOFF)]
        cutoff: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// T_{a,p}(N) against the main term, envelope p N (log N)^{-(alpha_t + 1)}.
    EnvelopePrime {
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        #[arg(short)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_SERIES_CUTOFF)]
        cutoff: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Squarefree n <= x coprime to q with omega(n) = r (mod t).
    Mq {
        #[arg(short)]
        q: u64,
        #[arg(short, allow_hyphen_values = true)]
        r: i64,
        #[arg(short)]
        t: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Sums of z^omega(n) over squarefree n for z on the unit circle.
    Selberg {
        /// `re,im`; repeatable. Default: 1, -1, e(1/3), i.
        #[arg(long = "z", allow_hyphen_values = true)]
        z: Vec<String>,
        /// Euler-product prime cutoff.
        #[arg(long, default_value_t = DEFAULT_PRIME_CUTOFF)]
        cutoff: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Character sums of tau(n) modulo a prime, plus Gauss-sum magnitudes.
    Chars {
        #[arg(short)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME_CUTOFF)]
        cutoff: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// The saving A(t) for t = ord_2(p), or the non-certified general-modulus shape.
    Bounds {
        #[arg(short, required_unless_present = "m")]
        p: Option<u64>,
        /// General odd modulus (prints the envelope shape; needs -N, --delta, --epsilon).
        #[arg(short, conflicts_with = "p", requires_all = ["n", "delta", "epsilon"])]
        m: Option<u64>,
        #[arg(short = 'N')]
        n: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Sum of 1/q over powerful q <= X with d | tau(q), with a doubling check.
    Tails {
        #[arg(short)]
        d: u64,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// Run the full invariant suite.
    Selftest,
}

enum Outcome {
    Pass,
    Fail,
}

fn parse_grid(s: &str) -> Result<Vec<u64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Invalid(format!("grid must be lo:hi:factor, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |x: &str| -> Result<u64> {
        let v: f64 = x.trim().parse().map_err(|_| bad())?;
        if v < 1.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
            return Err(bad());
        }
        Ok(v as u64)
    };
    geometric_grid(num(parts[0])?, num(parts[1])?, num(parts[2])?)
}

fn parse_z(s: &str) -> Result<Complex64> {
    let bad = || Error::Invalid(format!("z must be re,im, got {s:?}"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

#[derive(Serialize)]
struct OrbitSum {
    m: u64,
    t: u64,
    r: i64,
    value: Complex64,
}

impl CsvTable for OrbitSum {
    fn header(&self) -> Vec<&'static str> {
        vec!["m", "t", "r", "value_re", "value_im"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.m.to_string(),
            self.t.to_string(),
            self.r.to_string(),
            format!("{:.16e}", self.value.re),
            format!("{:.16e}", self.value.im),
        ]]
    }
}

#[derive(Serialize)]
struct TailDoubling {
    at_cutoff: divexp::mainterm::TauCongTail,
    at_double: divexp::mainterm::TauCongTail,
    difference: f64,
    within_tail: bool,
}

impl CsvTable for TailDoubling {
    fn header(&self) -> Vec<&'static str> {
        self.at_cutoff.header()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = self.at_cutoff.rows();
        rows.extend(self.at_double.rows());
        rows
    }
}

fn emit<T: Serialize + CsvTable + ?Sized>(common: &Common, value: &T) -> Result<()> {
    let mut text = match common.format {
        Format::Json => to_json(value)?,
        Format::Csv => to_csv(value)?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_only<T: Serialize>(common: &Common, value: &T) -> Result<()> {
    if let Format::Csv = common.format {
        return Err(Error::Invalid("this report has no CSV form; use --format json".into()));
    }
    let text = to_json(value)? + "\n";
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let common = &cli.common;
    let threads = match common.threads {
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let sieve = SieveConfig::from_env()?.with_threads(threads)?;
    let harness = |ceiling: f64| HarnessOptions { sieve, ceiling };
    match cli.command {
        Command::Sum { a, m, n, override_gcd, timing } => {
            let mut res = t_exact(a, m, n, &EvalOptions { sieve, override_gcd })?;
            if !timing {
                res.elapsed_secs = None;
            }
            emit(common, &res)?;
            Ok(Outcome::Pass)
        }
        Command::SSum { m, r } => {
            let ctx = ModulusContext::new(m)?;
            emit(common, &OrbitSum { m, t: ctx.t, r, value: s_sum(&ctx, r) })?;
            Ok(Outcome::Pass)
        }
        Command::MainTerm { a, m, cutoff } => {
            emit(common, &main_term(a, &ModulusContext::new(m)?, cutoff)?)?;
            Ok(Outcome::Pass)
        }
        Command::Envelope { a, m, cutoff, grid } => {
            let rep = run_envelope_t(a, m, &parse_grid(&grid.grid)?, cutoff, &harness(grid.ceiling))?;
            emit(common, &rep)?;
            Ok(verdict(rep.verdict.bounded))
        }
        Command::EnvelopePrime { a, p, cutoff, grid } => {
            let rep = run_envelope_prime(a, p, &parse_grid(&grid.grid)?, cutoff, &harness(grid.ceiling))?;
            emit(common, &rep)?;
            Ok(verdict(rep.verdict.bounded))
        }
        Command::Mq { q, r, t, grid } => {
            let rep = run_mq_check(&parse_grid(&grid.grid)?, q, r, t, &harness(grid.ceiling))?;
            emit(common, &rep)?;
            Ok(verdict(rep.verdict.bounded))
        }
        Command::Selberg { z, cutoff, grid } => {
            let zs: Vec<Complex64> = if z.is_empty() {
                vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), root_of_unity(1, 3), Complex64::new(0.0, 1.0)]
            } else {
                z.iter().map(|s| parse_z(s)).collect::<Result<_>>()?
            };
            let reps = run_selberg_check(&zs, &parse_grid(&grid.grid)?, cutoff, &harness(grid.ceiling))?;
            emit(common, &reps[..])?;
            Ok(verdict(reps.iter().all(|r| r.verdict.bounded)))
        }
        Command::Chars { p, cutoff, grid } => {
            let rep = run_char_check(p, &parse_grid(&grid.grid)?, cutoff, &harness(grid.ceiling))?;
            emit(common, &rep)?;
            Ok(verdict(rep.all_bounded() && rep.gauss_ok()))
        }
        Command::Bounds { p, m, n, delta, epsilon } => {
            if let Some(p) = p {
                if p < 3 || !is_prime(p) {
                    return Err(Error::NotOddPrime(p));
                }
                let t = multiplicative_order(2, p)?;
                emit(common, &a_bound(p, t)?)?;
            } else if let (Some(m), Some(n), Some(delta), Some(epsilon)) = (m, n, delta, epsilon) {
                let ctx = ModulusContext::new(m)?;
                json_only(common, &subgroup_envelope(m, ctx.t, n, delta, epsilon)?)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Tails { d, cutoff } => {
            let at_cutoff = tau_cong_tail(d, cutoff)?;
            let at_double = tau_cong_tail(d, cutoff.checked_mul(2).ok_or(Error::Overflow("cutoff"))?)?;
            let difference = (at_cutoff.series.value - at_double.series.value).norm();
            let within_tail = difference <= at_cutoff.series.tail_bound;
            emit(common, &TailDoubling { at_cutoff, at_double, difference, within_tail })?;
            Ok(verdict(within_tail))
        }
        Command::Selftest => {
            let rep = selftest(&sieve);
            emit(common, &rep)?;
            Ok(verdict(rep.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strict = cli.common.strict;
    match run(cli) {
        Ok(Outcome::Fail) if strict => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("divexp: {e}");
            ExitCode::from(2)
        }
    }
}
