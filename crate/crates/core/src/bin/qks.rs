use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qks_core::workbench::{
    auslander_check, azumaya_scan, center_check, emit_report, fiber_report, freeness_scan, invariants_check,
    rank_check, series_check, CaseId, CaseParams, CaseSpec, Format, Localization, Report, ScanOptions,
};
use qks_core::Result;

#[derive(Parser)]
#[command(name = "qks", version, about = "Centers, fibers and invariants of skew group rings A#G")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CaseArgs {
    /// Catalog row: 0, i, ii, iii or iv.
    #[arg(long)]
    case: CaseId,
    /// Group parameter (order of C_n, or D_n).
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Order of q as a root of unity (case i).
    #[arg(long)]
    k: Option<u32>,
    /// Rational q that is not a root of unity (case i).
    #[arg(long)]
    q: Option<String>,
    /// none, torus, denominator or torus-plus-denominator; defaults per case.
    #[arg(long)]
    localization: Option<Localization>,
}

impl CaseArgs {
    fn spec(&self) -> Result<CaseSpec> {
        let k = match (self.case, self.k, &self.q) {
            (CaseId::I, None, None) => Some(2),
            (_, k, _) => k,
        };
        let mut params = CaseParams::new(self.case, self.n, k);
        if let Some(q) = &self.q {
            params = params.with_q(q);
        }
        if let Some(l) = self.localization {
            params = params.with_localization(l);
        }
        CaseSpec::new(self.case, params)
    }
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, default_value = "human")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Windowed center of A#G against the catalogued generators.
    Center {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 8)]
        degree: i32,
        #[command(flatten)]
        output: Output,
    },
    /// Invariant ring A^G against the character average.
    Invariants {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 8)]
        degree: i32,
        #[command(flatten)]
        output: Output,
    },
    /// Molien series against invariant counts and the closed form.
    Molien {
        #[command(flatten)]
        case: CaseArgs,
        /// Group order parameter of the represented group.
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Structure of the fiber at one point of Z(A#G).
    Fiber {
        #[command(flatten)]
        case: CaseArgs,
        /// Generator values, e.g. x=3,y=2; values may use z for the root of unity of the case conductor.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        output: Output,
    },
    /// Certifies fibers at seeded sample points.
    Scan {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also visit points fixed by a reflection.
        #[arg(long)]
        include_fixed: bool,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Stabilizers of sample points of Z(A) next to the fibers above them.
    Freeness {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Fiber dimensions of A and of A#G over matched points.
    Rank {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Graded dimensions of A#G against truncated End_{A^G}(A).
    Auslander {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 6)]
        guard: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn finish<R: Report>(report: R, output: &Output) -> Result<ExitCode> {
    emit_report(&report, output.format, output.out.as_deref())?;
    Ok(ExitCode::from(report.outcome().exit_code() as u8))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Center { case, degree, output } => finish(center_check(&case.spec()?, degree)?, &output),
        Command::Invariants { case, degree, output } => finish(invariants_check(&case.spec()?, degree)?, &output),
        Command::Molien {
            case,
            m,
            degree,
            output,
        } => finish(series_check(&case.spec()?, m, degree)?, &output),
        Command::Fiber { case, point, output } => {
            let spec = case.spec()?;
            let p = spec.parse_point(&point)?;
            finish(fiber_report(&spec, &p)?, &output)
        }
        Command::Scan {
            case,
            samples,
            seed,
            include_fixed,
            timings,
            output,
        } => {
            let mut opts = ScanOptions::new(samples, seed).with_timings(timings);
            if include_fixed {
                opts = opts.with_fixed();
            }
            finish(azumaya_scan(&case.spec()?, &opts)?, &output)
        }
        Command::Freeness {
            case,
            samples,
            seed,
            timings,
            output,
        } => {
            let opts = ScanOptions::new(samples, seed).with_timings(timings);
            finish(freeness_scan(&case.spec()?, &opts)?, &output)
        }
        Command::Rank {
            case,
            samples,
            seed,
            output,
        } => finish(rank_check(&case.spec()?, &ScanOptions::new(samples, seed))?, &output),
        Command::Auslander {
            case,
            degree,
            guard,
            output,
        } => finish(auslander_check(&case.spec()?, degree, guard)?, &output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(3);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
