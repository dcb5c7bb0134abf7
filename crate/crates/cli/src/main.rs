use std::process::ExitCode;

use clap::Parser;
use origami_cli::{execute, Args, JobConfig};

fn main() -> ExitCode {
    let args = Args::parse();
    let result = JobConfig::resolve(&args).and_then(|job| {
        let out = execute(&job)?;
        match &job.out {
            Some(path) => std::fs::write(path, &out.body)?,
            None => print!("{}", out.body),
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
