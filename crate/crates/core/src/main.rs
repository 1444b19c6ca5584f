use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use cendlab::cli::{resolve_field, run, COMMANDS};
use cendlab::io::JobSpec;
use cendlab::Error;

#[derive(Parser, Debug)]
#[command(name = "cendlab", version, about = "Exact checks on conformal endomorphism algebras")]
struct Args {
    /// One of: axioms, hopf, phi, wn, irreducible, ideal, simple, classify, weyl, operad.
    command: String,
    /// JSON job file.
    #[arg(long, short)]
    input: PathBuf,
    /// Print a text summary instead of JSON.
    #[arg(long)]
    summary: bool,
    /// Write the JSON report here (overrides the job's `output`).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn execute(args: &Args) -> Result<i32, Error> {
    if !COMMANDS.contains(&args.command.as_str()) {
        return Err(Error::InvalidInput(format!(
            "unknown command {:?}; expected one of {}",
            args.command,
            COMMANDS.join(", ")
        )));
    }
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", args.input.display())))?;
    let job = JobSpec::from_json(&text)?;
    let env = std::env::var("CENDLAB_FIELD").ok();
    let field = resolve_field(&job, env.as_deref())?;
    let report = run(&args.command, &job, field)?;
    let json = report.to_json();
    let out = args.output.clone().or_else(|| job.output.as_ref().map(PathBuf::from));
    if let Some(path) = &out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    }
    if args.summary {
        print!("{}", report.summary());
    } else if out.is_none() {
        println!("{json}");
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input() { 2 } else { 1 })
        }
    }
}
