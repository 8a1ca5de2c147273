use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use qpart_cli::{run, Cli, WORKERS_ENV};

fn configure_workers() -> Result<(), String> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("{WORKERS_ENV}={raw:?} is not a worker count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_workers() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = if cli.json {
        report.to_json() + "\n"
    } else if cli.csv {
        match report.to_csv() {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        report.to_text()
    };
    print!("{out}");
    eprintln!("{} finished in {:.3}s", report.command, start.elapsed().as_secs_f64());
    ExitCode::from(report.exit_code() as u8)
}
