use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flk_core::report::{emit_report, Format, Report};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "flk", version, about = "Lie algebras, enveloping algebras and formal group laws, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for the report.
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Dual,
    Bch,
    Both,
}

#[derive(clap::Args, Debug)]
pub struct OrderArg {
    /// Truncation order N of the group law.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=8))]
    order: u32,
}

#[derive(clap::Args, Debug)]
pub struct DegreeArg {
    /// Degree bound in the enveloping algebra.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=8))]
    degree: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an algebra (Jacobi), a pair, a group law or a group datum.
    Validate { input: PathBuf },
    /// Group law of an algebra by the dual construction, BCH, or both.
    Grouplaw {
        input: PathBuf,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
    },
    /// Primitive elements of the enveloping algebra up to a degree.
    Primitives {
        input: PathBuf,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Group law by log(exp X exp Y) only.
    Bch {
        input: PathBuf,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Semidirect product, anti-diagonal and quotient checks for a pair.
    PairCheck { input: PathBuf },
    /// Pair to group datum and back, compared exactly.
    Roundtrip {
        input: PathBuf,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Hopf axioms of the enveloping algebra up to a degree.
    HopfCheck {
        input: PathBuf,
        #[command(flatten)]
        degree: DegreeArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let result: Result<Report, commands::InputError> = match &cli.command {
        Command::Validate { input } => commands::validate(input),
        Command::Grouplaw { input, order, via } => commands::grouplaw(input, order.order as usize, *via),
        Command::Primitives { input, degree } => commands::primitives(input, degree.degree as usize),
        Command::Bch { input, order } => commands::grouplaw(input, order.order as usize, Via::Bch)
            .map(|mut r| {
                r.command = "bch".into();
                r
            }),
        Command::PairCheck { input } => commands::pair_check(input),
        Command::Roundtrip { input, order } => commands::roundtrip(input, order.order as usize),
        Command::HopfCheck { input, degree } => commands::hopf_check(input, degree.degree as usize),
    };
    match result {
        Ok(report) => {
            print!("{}", emit_report(&report, format));
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("flk: {e}");
            ExitCode::from(2)
        }
    }
}
