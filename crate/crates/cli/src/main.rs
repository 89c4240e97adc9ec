use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hkforge::{run_text, CliError, RunOptions};
use hkforge_core::{verify_construction, verify_katzman_with_config, Config};

#[derive(Parser)]
#[command(
    name = "hkforge",
    version,
    about = "Characteristic-p ideal computations and sequence tables"
)]
struct Cli {
    /// Print sequences as JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Allow heavy runs (Katzman checks with e >= 2).
    #[arg(long, global = true)]
    slow: bool,
    /// Scaling exponent for sequences that do not set d=.
    #[arg(long, global = true, value_name = "INT")]
    d: Option<u32>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file ("-" reads standard input).
    Run { file: String },
    /// Parse a session and print it in normalized form.
    Fmt { file: String },
    /// Run a built-in verification and print its JSON report.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
}

#[derive(Subcommand)]
enum Verify {
    Construction {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
    },
    Katzman {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        e: u32,
    },
}

fn read_source(file: &str) -> io::Result<String> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn report(report: hkforge_core::Result<hkforge_core::ClaimReport>) -> ExitCode {
    match report {
        Ok(r) => {
            println!(
                "{}",
                serde_json::to_string(&r.to_json()).expect("report serializes")
            );
            if r.fully_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = RunOptions {
        json: cli.json,
        slow: cli.slow,
        d: cli.d,
    };
    match cli.command {
        Cmd::Run { file } => {
            let text = match read_source(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {file}: {e}");
                    return ExitCode::from(1);
                }
            };
            let stdout = io::stdout();
            let mut out = stdout.lock();
            match run_text(&text, &options, &mut out) {
                Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
                Err(e) => {
                    let _ = out.flush();
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Cmd::Fmt { file } => {
            let parsed = read_source(&file)
                .map_err(CliError::from)
                .and_then(|t| hkforge::parse_session(&t).map_err(CliError::from));
            match parsed {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Cmd::Verify { what } => match what {
            Verify::Construction { p, m } => report(verify_construction(p, m)),
            Verify::Katzman { p, e } => {
                if e >= 2 && !cli.slow {
                    eprintln!("error: katzman checks with e >= 2 are slow; pass --slow");
                    return ExitCode::from(1);
                }
                report(verify_katzman_with_config(p, e, &Config::from_env()))
            }
        },
    }
}
