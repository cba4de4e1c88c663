mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use cbn_core::saturation::Strategy;
use cbn_core::trs::Approx;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Decides call-by-need classes of left-linear rewrite systems.
#[derive(Parser, Debug)]
#[command(name = "cbn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the system is in the class.
    Check(CheckArgs),
    /// List the redexes of a term and whether each is needed.
    Analyze(AnalyzeArgs),
    /// Print one of the constructed automata.
    DumpAutomaton(DumpArgs),
    /// Compare the automata against brute-force oracles.
    Selfcheck(SelfcheckArgs),
    /// Rewrite a term by contracting needed redexes.
    Normalize(NormalizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    /// Every reducible term has a needed redex.
    Nf,
    /// Every non-root-stable term has a root-needed redex.
    Rs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SaturateArg {
    Semi,
    Naive,
}

impl From<SaturateArg> for Strategy {
    fn from(s: SaturateArg) -> Strategy {
        match s {
            SaturateArg::Semi => Strategy::SemiNaive,
            SaturateArg::Naive => Strategy::Naive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Minimal,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    B,
    Nf,
    Redex,
    Rs,
    C,
    Cprime,
    D,
    Dprime,
}

/// Options shared by the commands that build automata.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// The rewrite system.
    pub file: PathBuf,
    /// Approximation: s, nv or g. For root-stability it sets both α and β.
    #[arg(long, default_value = "g", value_parser = parse_approx)]
    pub approx: Approx,
    /// Reachability approximation α for root-stability.
    #[arg(long = "approx-a", value_parser = parse_approx)]
    pub approx_a: Option<Approx>,
    /// Root-stability approximation β.
    #[arg(long = "approx-b", value_parser = parse_approx)]
    pub approx_b: Option<Approx>,
    #[arg(long, value_enum, default_value = "semi")]
    pub saturate: SaturateArg,
    #[arg(long)]
    pub json: bool,
}

impl Common {
    pub fn alpha(&self) -> Approx {
        self.approx_a.unwrap_or(self.approx)
    }

    pub fn beta(&self) -> Approx {
        self.approx_b.unwrap_or(self.approx)
    }
}

fn parse_approx(s: &str) -> Result<Approx, String> {
    s.parse::<Approx>().map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "nf")]
    pub class: Class,
    /// Print state and rule counts.
    #[arg(long)]
    pub stats: bool,
    /// Include wall time per phase (not reproducible).
    #[arg(long)]
    pub timings: bool,
    /// Pair-state generation; exhaustive is for testing.
    #[arg(long, value_enum, default_value = "minimal")]
    pub mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub term: String,
    /// Report root-neededness instead of neededness.
    #[arg(long)]
    pub root: bool,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub which: Which,
    /// For c and cprime: which pipeline to build.
    #[arg(long, value_enum, default_value = "nf")]
    pub class: Class,
    /// For d and dprime: explore up to the first final pair-state first.
    #[arg(long)]
    pub explore: bool,
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long)]
    pub json: bool,
    /// Corrupts the saturated automaton before checking it.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct NormalizeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub term: String,
    #[arg(long, default_value_t = 100)]
    pub fuel: usize,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::DumpAutomaton(a) => commands::dump(a),
        Command::Selfcheck(a) => commands::selfcheck(a),
        Command::Normalize(a) => commands::normalize(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
