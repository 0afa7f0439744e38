use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use binomeso::error::Error;
use binomeso::io::command::{run_command, Command, Flags};
use binomeso::io::parse::{parse_field, parse_problem};

/// Cellular, mesoprimary and primary decomposition of binomial ideals.
#[derive(Parser, Debug)]
#[command(name = "binomeso", version)]
struct Cli {
    /// check, cellular, meso, primary, witnesses, hull, toral-part,
    /// meso-toral-part, restrict, transfer-check or diagram
    #[arg(value_parser = str::parse::<Command>)]
    command: Command,
    /// Problem file.
    file: PathBuf,
    /// Witness degree bound (box size for `diagram`).
    #[arg(long)]
    bound: Option<i64>,
    /// Cellular variables, by name or 1-based index, comma-separated.
    #[arg(long)]
    sigma: Option<String>,
    /// Monomial whose coprincipal component `witnesses` should build.
    #[arg(long)]
    witness_monomial: Option<String>,
    /// Values of the σ-variables for `restrict`, comma-separated.
    #[arg(long)]
    nu: Option<String>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write DOT output here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Override the field of the problem file, e.g. `QQ(zeta_6)`.
    #[arg(long)]
    field: Option<String>,
    /// Primary components for `toral-part`.
    #[arg(long)]
    from_components: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<(), Error> {
    let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())));
    let field = cli.field.as_deref().map(parse_field).transpose().map_err(Error::Input)?;
    let problem = parse_problem(&read(&cli.file)?, field)?;
    let flags = Flags {
        bound: cli.bound,
        sigma: cli.sigma.clone(),
        witness_monomial: cli.witness_monomial.clone(),
        nu: cli.nu.clone(),
        components: cli.from_components.as_ref().map(read).transpose()?,
    };
    let out = run_command(cli.command, &problem, &flags)?;
    let write = |p: &PathBuf, s: &str| std::fs::write(p, s).map_err(|e| Error::Input(format!("{}: {e}", p.display())));
    match (&cli.dot, &out.dot) {
        (Some(path), Some(d)) => write(path, d)?,
        _ => print!("{}", out.text),
    }
    if let Some(path) = &cli.json {
        write(path, &(serde_json::to_string_pretty(&out.json).unwrap() + "\n"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
