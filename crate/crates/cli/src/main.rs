use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rswan::{catalog::catalog, run, Overrides, Report, RunConfig};

#[derive(Parser)]
#[command(name = "rswan", version, about = "Swan conductors of Artin-Schreier-Witt characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a configuration file.
    Run {
        config: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        precision: Option<i64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the canned catalog for one prime.
    CheckAll {
        #[arg(long, value_parser = ["2", "3", "5"])]
        p: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
}

fn emit(report: &Report, out: Option<&str>) -> ExitCode {
    let text = report.to_json();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("rswan: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    for r in report.records() {
        eprintln!("{:>3} {:<17} {}", r.index, r.kind, r.status);
    }
    if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, overrides, out) = match cli.command {
        Command::Run {
            config,
            seed,
            precision,
            out,
        } => match RunConfig::load(&config) {
            Ok(cfg) => (cfg, Overrides { seed, precision }, out),
            Err(e) => {
                eprintln!("rswan: {e}");
                return ExitCode::from(2);
            }
        },
        Command::CheckAll { p, seed, out } => {
            let p: u32 = p.parse().expect("validated by clap");
            let cfg = catalog(p).expect("supported prime");
            (cfg, Overrides { seed, precision: None }, out)
        }
    };
    match run(&cfg, overrides) {
        Ok(report) => emit(&report, out.as_deref()),
        Err(e) => {
            eprintln!("rswan: {e}");
            ExitCode::from(2)
        }
    }
}
