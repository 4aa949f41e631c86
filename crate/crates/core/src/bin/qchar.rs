use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qchar::engine::{run_fm_with, FmOutcome, Limits, RunOptions};
use qchar::report::{Mode, RunReport, TableauxReport};
use qchar::tableaux::{match_character, parse_tableau_list, Shape};
use qchar::traceback::{run_fm_modified_with, DEFAULT_DEPTH_LIMIT};
use qchar::{AlgebraSpec, Family, QCharacter, YMonomial};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(
    name = "qchar",
    version,
    about = "q-characters via the Frenkel-Mukhin algorithm"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a q-character, or report where the algorithm fails.
    Run(RunArgs),
    /// Compute a q-character and compare it with a sum over tableaux.
    Tableaux(TableauxArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Algebra such as A2, C3 or D4.
    #[arg(long)]
    algebra: AlgebraSpec,
    /// Highest monomial, e.g. "Y[1,4] Y[2,1] Y[3,-2]".
    #[arg(long)]
    highest: YMonomial,
    #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = Limits::default().max_height,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_height: u64,
    #[arg(long, default_value_t = Limits::default().max_terms as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_terms: u64,
    #[arg(long, default_value_t = Limits::default().max_injections as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_injections: u64,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Include every nontrivial expansion in the output.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct TableauxArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Row lengths, e.g. 2,1.
    #[arg(long)]
    shape: Shape,
    /// File with one tableau per line; semistandard tableaux otherwise.
    #[arg(long)]
    candidates: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Modified,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl CommonArgs {
    fn options(&self) -> RunOptions {
        RunOptions::with_limits(Limits {
            max_height: self.max_height,
            max_terms: self.max_terms as usize,
            max_injections: self.max_injections as usize,
        })
    }

    fn emit(&self, report: &RunReport) {
        match self.format {
            Format::Text => emit_text(&report.to_text()),
            Format::Json => emit_text(&(report.to_json() + "\n")),
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit_text(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

/// Runs the requested algorithm. `Err` carries a report for a run that did
/// not produce a character.
fn compute(args: &CommonArgs, trace: bool) -> Result<(QCharacter, RunReport), Box<RunReport>> {
    let spec = &args.algebra;
    let m = &args.highest;
    match args.mode {
        ModeArg::Plain => match run_fm_with(spec, m, &args.options()) {
            Ok(FmOutcome::Completed {
                character,
                trace: t,
                ..
            }) => {
                let report =
                    RunReport::completed(spec, m, &character, None, trace.then_some(&t[..]));
                Ok((character, report))
            }
            Ok(FmOutcome::Failed(f)) => {
                Err(Box::new(RunReport::failed(spec, m, Mode::Plain, &f, trace)))
            }
            Err(e) => Err(Box::new(RunReport::engine_error(spec, m, Mode::Plain, &e))),
        },
        ModeArg::Modified => {
            match run_fm_modified_with(spec, m, &args.options(), DEFAULT_DEPTH_LIMIT) {
                Ok(run) => {
                    let report = RunReport::completed(
                        spec,
                        m,
                        &run.character,
                        Some(&run.injections),
                        trace.then_some(&run.trace[..]),
                    );
                    Ok((run.character, report))
                }
                Err(e) => Err(Box::new(RunReport::traceback_error(spec, m, &e, trace))),
            }
        }
    }
}

fn cmd_run(args: &RunArgs) -> u8 {
    let report = match compute(&args.common, args.trace) {
        Ok((_, report)) => report,
        Err(report) => *report,
    };
    args.common.emit(&report);
    report.exit_code() as u8
}

fn cmd_tableaux(args: &TableauxArgs) -> u8 {
    let family = args.common.algebra.family();
    if !matches!(family, Family::A | Family::C) {
        eprintln!("qchar: tableaux are only available for types A and C");
        return EXIT_USAGE;
    }
    let candidates = match &args.candidates {
        None => None,
        Some(path) => {
            let parsed = fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))
                .and_then(|text| parse_tableau_list(&text).map_err(|e| e.to_string()));
            match parsed {
                Ok(list) => Some(list),
                Err(e) => {
                    eprintln!("qchar: {e}");
                    return EXIT_USAGE;
                }
            }
        }
    };
    let qchar = match compute(&args.common, false) {
        Ok((qchar, _)) => qchar,
        Err(report) => {
            args.common.emit(&report);
            return report.exit_code() as u8;
        }
    };
    let rank = args.common.algebra.rank();
    let matched = match match_character(&qchar, family, rank, &args.shape, candidates.as_deref()) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("qchar: {e}");
            return EXIT_USAGE;
        }
    };
    let report = TableauxReport::new(&qchar, &matched);
    match args.common.format {
        Format::Text => emit_text(&report.to_text()),
        Format::Json => emit_text(&(report.to_json() + "\n")),
    }
    if report.matched {
        0
    } else {
        EXIT_MISMATCH
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    ExitCode::from(match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Tableaux(args) => cmd_tableaux(args),
    })
}
