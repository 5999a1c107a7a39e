use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gsw_cli::{run, EXIT_ERROR, EXIT_OK, EXIT_VIOLATION};
use gsw_core::fuzz::{self, Suite, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "gsw", version, about = "Free resolutions and regularity over weighted and toric rings")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file (`-` for stdin).
    Run {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Check theorem statements on random instances.
    Fuzz {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn read_input(file: &str) -> std::io::Result<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { file, json } => {
            let text = match read_input(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("gsw: {file}: {e}");
                    return code(EXIT_ERROR);
                }
            };
            match run(&text) {
                Ok(t) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&t.json()).expect("json"));
                    } else {
                        print!("{}", t.text());
                    }
                    code(if t.violation() { EXIT_VIOLATION } else { EXIT_OK })
                }
                Err(e) => {
                    eprintln!("gsw: {e}");
                    code(e.exit_code())
                }
            }
        }
        Cmd::Fuzz {
            suite,
            count,
            seed,
            json,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                match suite.parse() {
                    Ok(s) => vec![s],
                    Err(e) => {
                        eprintln!("gsw: {e}");
                        return code(EXIT_ERROR);
                    }
                }
            };
            let reports: Vec<_> = suites.into_iter().map(|s| fuzz::run(s, seed, count)).collect();
            if json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("json"));
            } else {
                for r in &reports {
                    for o in r.outcomes.iter().filter(|o| !o.passed) {
                        println!("[{}] #{} {}: {}", r.suite, o.index, o.instance, o.error.as_deref().unwrap_or(&o.detail));
                    }
                    println!("{}", r.summary());
                }
            }
            let violated = reports.iter().any(|r| r.violations().next().is_some());
            let errored = reports.iter().any(|r| r.errors().next().is_some());
            code(if violated {
                EXIT_VIOLATION
            } else if errored {
                EXIT_ERROR
            } else {
                EXIT_OK
            })
        }
    }
}
