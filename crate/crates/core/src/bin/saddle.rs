use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use saddles::dominance::DominanceMode;
use saddles::equilibrium::nash_equilibrium;
use saddles::generate::{GeneratorConfig, GeneratorKind};
use saddles::io::{emit_campaign, emit_result, parse_game, OutputFormat, ResultDocument, VerdictDoc};
use saddles::saddle::{enumerate_saddles_with, find_saddle, strict_saddle, EnumerationLimits};
use saddles::verify::{
    check_confrontation_uniqueness, check_nash_consistency, check_strict_uniqueness, check_theorem,
    run_trials_with_jobs, Check, TrialConfig,
};
use saddles::{Error, ZeroSumGame};

/// Weak and strict saddles of zero-sum matrix games.
///
/// Exit status: 0 on success, 1 when a checked property is violated,
/// 2 on input or usage errors.
#[derive(Parser)]
#[command(name = "saddle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all saddles under a dominance mode.
    Enumerate(AnalyzeArgs),
    /// Find one saddle without enumerating all of them.
    Find(AnalyzeArgs),
    /// The unique strict saddle.
    Strict(FileArgs),
    /// Exact value of the game.
    Value(FileArgs),
    /// One exact mixed equilibrium.
    Nash(FileArgs),
    /// Check interchangeability, equivalence, strict uniqueness and Nash consistency.
    Check(AnalyzeArgs),
    /// Run a seeded randomized campaign.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FileArgs {
    /// Game file, or `-` for stdin.
    file: String,
    /// Emit a JSON result document.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: FileArgs,
    #[arg(long, value_enum, default_value = "weak")]
    mode: Mode,
    /// Largest row or column count accepted for exhaustive enumeration.
    #[arg(long, default_value_t = 12)]
    limit: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Weak,
    Strict,
    WeakStrict,
}

impl From<Mode> for DominanceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Weak => DominanceMode::Weak,
            Mode::Strict => DominanceMode::Strict,
            Mode::WeakStrict => DominanceMode::WeakRequireStrict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Gen {
    Uniform,
    Distinct,
    Confrontation,
    Tournament,
}

impl From<Gen> for GeneratorKind {
    fn from(g: Gen) -> Self {
        match g {
            Gen::Uniform => GeneratorKind::UniformInt,
            Gen::Distinct => GeneratorKind::DistinctInt,
            Gen::Confrontation => GeneratorKind::Confrontation,
            Gen::Tournament => GeneratorKind::Tournament,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 5)]
    rows: usize,
    #[arg(long, default_value_t = 5)]
    cols: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    gen: Gen,
    #[arg(long, default_value_t = 3)]
    bound: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated: theorem1, strict-unique, confrontation-unique,
    /// distinct-unique, lemma1, nash-consistency. Defaults depend on --gen.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Worker threads; the report does not depend on this.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn format_of(json: bool) -> OutputFormat {
    if json {
        OutputFormat::Json
    } else {
        OutputFormat::Text
    }
}

fn read_game(path: &str) -> Result<ZeroSumGame, Error> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?
    };
    parse_game(&text)
}

fn limits(limit: usize) -> EnumerationLimits {
    EnumerationLimits { max_rows: limit, max_cols: limit }
}

/// Printed document and whether every verdict passed.
fn run(command: Command) -> Result<(String, bool), Error> {
    match command {
        Command::Enumerate(a) => {
            let game = read_game(&a.input.file)?;
            let set = enumerate_saddles_with(&game, a.mode.into(), limits(a.limit))?;
            let doc = ResultDocument::new("enumerate", &game).with_mode(set.mode).with_saddles(set.iter());
            Ok((emit_result(&doc, format_of(a.input.json)), true))
        }
        Command::Find(a) => {
            let game = read_game(&a.input.file)?;
            let mode = a.mode.into();
            let s = find_saddle(&game, mode)?;
            let doc = ResultDocument::new("find", &game).with_mode(mode).with_saddles([&s]);
            Ok((emit_result(&doc, format_of(a.input.json)), true))
        }
        Command::Strict(f) => {
            let game = read_game(&f.file)?;
            let s = strict_saddle(&game)?;
            let doc = ResultDocument::new("strict", &game)
                .with_mode(DominanceMode::Strict)
                .with_saddles([&s]);
            Ok((emit_result(&doc, format_of(f.json)), true))
        }
        Command::Value(f) => {
            let game = read_game(&f.file)?;
            let eq = nash_equilibrium(&game);
            let doc = ResultDocument::new("value", &game).with_value(&eq.value);
            Ok((emit_result(&doc, format_of(f.json)), true))
        }
        Command::Nash(f) => {
            let game = read_game(&f.file)?;
            let doc = ResultDocument::new("nash", &game).with_equilibrium(&nash_equilibrium(&game));
            Ok((emit_result(&doc, format_of(f.json)), true))
        }
        Command::Check(a) => {
            let game = read_game(&a.input.file)?;
            let mode: DominanceMode = a.mode.into();
            let lim = limits(a.limit);
            // enumeration guard for every check below
            enumerate_saddles_with(&game, mode, lim)?;
            let theorem = check_theorem(&game, mode)?;
            let nash = check_nash_consistency(&game)?;
            let mut doc = ResultDocument::new("check", &game)
                .with_mode(mode)
                .with_saddles(theorem.saddles.iter())
                .with_value(&nash.value)
                .with_verdict(VerdictDoc::from_theorem(&theorem))
                .with_verdict(VerdictDoc::simple("strict-unique", check_strict_uniqueness(&game)?))
                .with_verdict(VerdictDoc::from_nash(&nash));
            if game.is_confrontation() {
                doc = doc.with_verdict(VerdictDoc::simple(
                    "confrontation-unique",
                    check_confrontation_uniqueness(&game)?,
                ));
            }
            if mode == DominanceMode::WeakRequireStrict && !a.input.json {
                eprintln!("note: interchangeability and equivalence are not guaranteed under weak-strict dominance; violations are reported");
            }
            let passed = doc.all_passed();
            Ok((emit_result(&doc, format_of(a.input.json)), passed))
        }
        Command::Verify(v) => {
            let kind: GeneratorKind = v.gen.into();
            let checks = if v.checks.is_empty() {
                Check::defaults_for(kind)
            } else {
                v.checks.iter().map(|s| s.trim().parse()).collect::<Result<_, _>>()?
            };
            let config = TrialConfig::new(
                v.trials,
                GeneratorConfig::new(kind, v.rows, v.cols, v.bound, v.seed),
                checks,
                v.seed,
            );
            let report = run_trials_with_jobs(&config, v.jobs)?;
            Ok((emit_campaign(&report, format_of(v.json)), report.all_passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::PropertyViolation(_)) => {
            eprintln!("saddle: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("saddle: {e}");
            ExitCode::from(2)
        }
    }
}
