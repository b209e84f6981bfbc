use clap::Parser;
use lowzero::cli::{run, Cli, THREADS_ENV};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(n) = std::env::var(THREADS_ENV) {
        match n.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("usage error: {THREADS_ENV}=`{n}` is not a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
