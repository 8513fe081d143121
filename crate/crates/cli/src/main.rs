use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kancalc_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let kind = cli.command.kind();
    let mut out = std::io::stdout().lock();
    let code = match run(&cli) {
        Ok(report) => {
            if cli.json {
                let _ = writeln!(out, "{}", report.json());
            } else if let (true, Some(dot)) = (cli.dot, &report.dot) {
                let _ = write!(out, "{dot}");
            } else {
                let _ = write!(out, "{}", report.text());
            }
            report.exit_code()
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", e.json(&kind));
            }
            eprintln!("kancalc: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
