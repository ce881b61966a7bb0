//! `twoside` command-line front end.
//!
//! Exit codes: 0 ok, 1 I/O failure, 2 usage or invalid parameters,
//! 3 recovered key does not match, 4 solver failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::campaign::{to_csv, CampaignConfig, Grid};
use crate::digital_kex::{DigitalExchange, DigitalParams, DEFAULT_ENTRY_BOUND};
use crate::error::Error;
use crate::transcript::{attack_transcript, Transcript};
use crate::twisted_kex::{HMode, TwistedExchange, TwistedParams};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_SOLVER: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "twoside", version, about = "Two-sided multiplication key exchanges and their key-recovery attacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an honest exchange and write its transcript.
    Exchange(ExchangeArgs),
    /// Attack a transcript using only its public fields.
    Attack(AttackArgs),
    /// Run a seeded attack campaign and emit CSV.
    Bench(BenchArgs),
    /// Quick end-to-end check of both schemes.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Digital,
    Twisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HModeArg {
    Full,
    Uniform,
    ZeroDivisor,
}

impl From<HModeArg> for HMode {
    fn from(m: HModeArg) -> Self {
        match m {
            HModeArg::Full => HMode::Full,
            HModeArg::Uniform => HMode::Uniform,
            HModeArg::ZeroDivisor => HMode::ZeroDivisor,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExchangeArgs {
    #[arg(long, value_enum, default_value = "digital")]
    pub scheme: Scheme,
    /// Matrix dimension (digital).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Largest finite entry drawn for matrices and keys (digital).
    #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
    pub bound: u64,
    /// Allow ∞ entries in private circulants (digital).
    #[arg(long)]
    pub allow_inf: bool,
    /// Characteristic (twisted).
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Extension degree of K = F_{p^fext} (twisted).
    #[arg(long, default_value_t = 2)]
    pub fext: usize,
    /// Dihedral parameter, group of order 2m (twisted).
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub h_mode: HModeArg,
    /// Random when omitted; always echoed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Transcript path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include private keys and the shared key in the transcript.
    #[arg(long)]
    pub insecure_dump: bool,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    pub transcript: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "digital")]
    pub scheme: Scheme,
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 8])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
    pub bound: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [2u64])]
    pub p: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = [2usize])]
    pub fext: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [3usize])]
    pub m: Vec<usize>,
    /// Explicit twisted grid `p:fext:m,...`; replaces the product of --p/--fext/--m.
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<String>,
    #[arg(long, value_enum, default_value = "full")]
    pub h_mode: HModeArg,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave timing columns empty for byte-identical reruns.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSolution(_) => EXIT_SOLVER,
            Error::Parse(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{what}: {e}"),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(&path.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure("stdout", e)),
    }
}

fn summary(value: serde_json::Value, to_stderr: bool) {
    let line = value.to_string();
    if to_stderr {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
}

pub fn exchange(args: &ExchangeArgs) -> Result<u8, Failure> {
    let seed = args.seed.unwrap_or_else(rand::random);
    let transcript = match args.scheme {
        Scheme::Digital => {
            let mut rng_seeds = seed_stream(seed);
            let mut params = DigitalParams::generate(args.n, args.bound, rng_seeds())?;
            params.allow_infinity = args.allow_inf;
            let ex = DigitalExchange::run(params, rng_seeds(), rng_seeds())?;
            Transcript::digital(&ex, seed, args.insecure_dump)
        }
        Scheme::Twisted => {
            let mut rng_seeds = seed_stream(seed);
            let params = TwistedParams::generate(args.p, args.fext, args.m, rng_seeds(), args.h_mode.into())?;
            let ex = TwistedExchange::run(params, rng_seeds(), rng_seeds())?;
            Transcript::twisted(&ex, seed, args.insecure_dump)
        }
    };
    let mut text = transcript.to_json_pretty();
    text.push('\n');
    emit(&args.out, &text)?;
    summary(
        json!({
            "scheme": transcript.scheme(),
            "seed": seed,
            "keys_agree": transcript.keys_agree(),
            "out": args.out.as_ref().map(|p| p.display().to_string()),
        }),
        args.out.is_none(),
    );
    Ok(if transcript.keys_agree() { EXIT_OK } else { EXIT_MISMATCH })
}

/// Same derivation as `DigitalExchange::seeded` / `TwistedExchange::seeded`.
fn seed_stream(seed: u64) -> impl FnMut() -> u64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    move || rng.gen()
}

pub fn attack(args: &AttackArgs) -> Result<u8, Failure> {
    let text = fs::read_to_string(&args.transcript)
        .map_err(|e| io_failure(&args.transcript.display().to_string(), e))?;
    let transcript = Transcript::from_json(&text)?;
    let report = attack_transcript(&transcript)?;
    summary(serde_json::to_value(&report).expect("report serializes"), false);
    Ok(match report.attack_key_matches {
        Some(false) => EXIT_MISMATCH,
        _ => EXIT_OK,
    })
}

fn parse_triple(s: &str) -> Result<(u64, usize, usize), Failure> {
    let usage = || Failure {
        code: EXIT_USAGE,
        message: format!("grid entry {s:?} is not p:fext:m"),
    };
    let parts: Vec<&str> = s.trim().split(':').collect();
    let [p, n, m] = parts.as_slice() else {
        return Err(usage());
    };
    Ok((
        p.parse().map_err(|_| usage())?,
        n.parse().map_err(|_| usage())?,
        m.parse().map_err(|_| usage())?,
    ))
}

pub fn campaign_config(args: &BenchArgs, seed: u64) -> Result<CampaignConfig, Failure> {
    let grid = match args.scheme {
        Scheme::Digital => Grid::Digital {
            ns: args.n.clone(),
            entry_bound: args.bound,
        },
        Scheme::Twisted => {
            let triples = if args.grid.is_empty() {
                let mut t = Vec::new();
                for &p in &args.p {
                    for &n in &args.fext {
                        for &m in &args.m {
                            t.push((p, n, m));
                        }
                    }
                }
                t
            } else {
                args.grid.iter().map(|s| parse_triple(s)).collect::<Result<_, _>>()?
            };
            Grid::Twisted {
                triples,
                h_mode: args.h_mode.into(),
            }
        }
    };
    let cfg = CampaignConfig {
        grid,
        trials: args.trials,
        seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn bench(args: &BenchArgs) -> Result<u8, Failure> {
    let seed = args.seed.unwrap_or_else(rand::random);
    let cfg = campaign_config(args, seed)?;
    let rows = cfg.run()?;
    emit(&args.out, &to_csv(&rows, !args.omit_timing))?;
    let failures = rows.iter().filter(|r| !r.success).count();
    summary(
        json!({ "seed": seed, "trials": rows.len(), "failures": failures }),
        args.out.is_none(),
    );
    Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn selftest(args: &SelftestArgs) -> Result<u8, Failure> {
    let seed = args.seed.unwrap_or_else(rand::random);
    let grids = [
        Grid::Digital {
            ns: vec![2, 3, 4, 6, 8],
            entry_bound: DEFAULT_ENTRY_BOUND,
        },
        Grid::Twisted {
            triples: vec![(2, 2, 3), (3, 2, 4), (5, 1, 6), (2, 3, 5), (7, 1, 8)],
            h_mode: HMode::Full,
        },
    ];
    let mut total = 0;
    let mut failures = Vec::new();
    for grid in grids {
        let cfg = CampaignConfig {
            grid,
            trials: args.trials,
            seed,
        };
        for row in cfg.run()? {
            total += 1;
            if !row.success {
                failures.push(format!("{} {} trial {}", row.scheme, row.params, row.trial));
            }
        }
    }
    summary(json!({ "seed": seed, "trials": total, "failures": failures }), false);
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn run(cli: &Cli) -> u8 {
    let outcome = match &cli.command {
        Command::Exchange(a) => exchange(a),
        Command::Attack(a) => attack(a),
        Command::Bench(a) => bench(a),
        Command::Selftest(a) => selftest(a),
    };
    outcome.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        f.code
    })
}
