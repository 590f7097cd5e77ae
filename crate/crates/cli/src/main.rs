use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zcpn::context::{PrimePowerCtx, LEVEL_CASES};
use zcpn::embedding::DEFAULT_PRECISION;
use zcpn::fixtures::{reproduce, CaseId};
use zcpn::kernel::{AssemblyResult, Pipeline};
use zcpn::verify::verify_json;
use zcpn::Error;

mod render;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "zcpn", version, about = "Independent units of ZC_{p^n} for φ(p^n) ≤ 66")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct and certify the generators for one case.
    Generate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Generator of (Z/p^n)^*; for p = 2, of the subgroup generated by 3.
        #[arg(long)]
        t: Option<u64>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Recompute a worked example and diff it against the embedded values.
    Reproduce {
        #[arg(value_parser = parse_case)]
        case: CaseId,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-check a case file written by `generate --format json` or `--cases-dir`.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Assemble every in-scope case and print a summary.
    Sweep {
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Args, Debug)]
struct RunOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Mantissa bits of the first log-rank pass; the second uses twice as many.
    #[arg(long, default_value_t = DEFAULT_PRECISION as u64, value_parser = clap::value_parser!(u64).range(64..=4096))]
    precision: u64,
    /// Directory for persisted level tables and assembly results.
    #[arg(long, env = "ZCPN_CASES_DIR")]
    cases_dir: Option<PathBuf>,
}

impl RunOpts {
    fn pipeline(&self) -> Pipeline {
        let p = Pipeline::new().with_precision(self.precision as usize);
        match &self.cases_dir {
            Some(d) => p.with_cases_dir(d),
            None => p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrime(_)
            | Error::OutOfScope { .. }
            | Error::InvalidArgument(_)
            | Error::TrivialCase { .. }
            | Error::Io(_)
    )
}

fn fail(e: Error) -> ExitCode {
    eprintln!("zcpn: {e}");
    ExitCode::from(if usage_error(&e) { EXIT_USAGE } else { EXIT_FAILED })
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn generate(p: u64, n: u32, t: Option<u64>, opts: &RunOpts) -> ExitCode {
    let ctx = match PrimePowerCtx::make(p, n, t) {
        Ok(c) => c,
        Err(Error::TrivialCase { order }) => {
            match opts.format {
                Format::Text => println!("{}", render::trivial(order)),
                Format::Json => println!("{}", to_json(&render::TrivialCase::new(order))),
            }
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(e),
    };
    let res = match opts.pipeline().assemble(&ctx) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match opts.format {
        Format::Text => print!("{}", render::assembly(&res)),
        Format::Json => println!("{}", to_json(&res)),
    }
    status(res.all_passed())
}

fn sweep(opts: &RunOpts) -> ExitCode {
    // one thread per prime; levels of the same prime share a pipeline so each
    // case file has a single writer
    let mut primes: Vec<u64> = LEVEL_CASES.iter().map(|c| c.0).collect();
    primes.dedup();
    let rows: Vec<render::SweepRow> = std::thread::scope(|s| {
        let handles: Vec<_> = primes
            .iter()
            .map(|&p| {
                s.spawn(move || {
                    let mut pipe = opts.pipeline();
                    LEVEL_CASES
                        .iter()
                        .filter(|c| c.0 == p)
                        .map(|&(p, n)| {
                            let start = std::time::Instant::now();
                            let res: Result<AssemblyResult, Error> =
                                PrimePowerCtx::make(p, n, None).and_then(|ctx| pipe.assemble(&ctx));
                            render::SweepRow::new(p, n, res, start.elapsed())
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let rows: Vec<render::SweepRow> = LEVEL_CASES
        .iter()
        .filter_map(|&(p, n)| rows.iter().find(|r| (r.p, r.n) == (p, n)).cloned())
        .collect();
    match opts.format {
        Format::Text => print!("{}", render::sweep(&rows)),
        Format::Json => println!("{}", to_json(&rows)),
    }
    status(rows.iter().all(|r| r.ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Generate { p, n, t, opts } => generate(*p, *n, *t, opts),
        Command::Reproduce { case, format } => match reproduce(*case) {
            Ok(r) => {
                match format {
                    Format::Text => print!("{}", render::repro(&r)),
                    Format::Json => println!("{}", to_json(&r)),
                }
                status(r.passed())
            }
            Err(e) => fail(e),
        },
        Command::Verify { file, format } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => return fail(Error::Io(format!("{}: {e}", file.display()))),
            };
            match verify_json(&text) {
                Ok(r) => {
                    match format {
                        Format::Text => print!("{}", render::verify(&file.display().to_string(), &r)),
                        Format::Json => println!("{}", to_json(&r)),
                    }
                    status(r.passed())
                }
                Err(e) => fail(e),
            }
        }
        Command::Sweep { opts } => sweep(opts),
    }
}
