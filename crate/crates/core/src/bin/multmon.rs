use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use multmon::report::{self, Command, Options, ResultDocument};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Multiplicity,
    Codim,
    Classify,
    Betti,
    Taylor,
    Diagram,
    Verify,
    Regularity,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Multiplicity => Command::Multiplicity,
            Cmd::Codim => Command::Codim,
            Cmd::Classify => Command::Classify,
            Cmd::Betti => Command::Betti,
            Cmd::Taylor => Command::Taylor,
            Cmd::Diagram => Command::Diagram,
            Cmd::Verify => Command::Verify,
            Cmd::Regularity => Command::Regularity,
        }
    }
}

/// Multiplicities and resolutions of monomial ideals.
///
/// Without --ideal or --file, ideals are read from standard input, one per
/// line.
#[derive(Parser, Debug)]
#[command(name = "multmon", version)]
#[command(group(ArgGroup::new("source").args(["ideal", "file", "random"])))]
#[command(group(ArgGroup::new("format").args(["json", "pretty"])))]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,

    /// Ideal text, e.g. "a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2".
    #[arg(long)]
    ideal: Option<String>,

    /// Batch file with one ideal per line.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Explicit variable order, comma separated.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    /// Also run the Taylor engine and the oracle and require agreement.
    #[arg(long)]
    check: bool,

    /// With `multiplicity`: use this method instead of the cheapest
    /// applicable one (codim1, complete_intersection, stem,
    /// quadratic_dominant, aci, structural, recurrence, ps, oracle).
    #[arg(long)]
    method: Option<String>,

    /// One JSON document per line (the default).
    #[arg(long)]
    json: bool,

    /// Human-readable output.
    #[arg(long)]
    pretty: bool,

    /// With `verify`: check seeded random ideals instead of input.
    #[arg(long)]
    random: bool,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 100)]
    cases: usize,
}

fn emit(docs: &[ResultDocument], pretty: bool) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for doc in docs {
        if pretty {
            writeln!(out, "{}", doc.render())?;
        } else {
            writeln!(out, "{}", doc.to_json())?;
        }
    }
    out.flush()
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("multmon: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command: Command = cli.command.into();
    let opts = Options {
        check: cli.check,
        method: cli.method.clone(),
    };
    let vars = cli.vars.as_deref();

    let docs = if cli.random {
        if command != Command::Verify {
            return usage_error("--random is only valid with `verify`");
        }
        let docs = report::verify_random(cli.seed, cli.cases);
        let failed = docs.iter().filter(|d| d.exit_code() != 0).count();
        eprintln!(
            "verified {} random ideals (seed {}): {} failed",
            docs.len(),
            cli.seed,
            failed
        );
        docs
    } else if let Some(text) = &cli.ideal {
        vec![report::run_text(command, text, vars, &opts)]
    } else {
        let text = match &cli.file {
            Some(path) => std::fs::read_to_string(path),
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map(|_| s)
            }
        };
        match text {
            Ok(t) => report::run_batch(command, &t, vars, &opts),
            Err(e) => return usage_error(format!("cannot read input: {e}")),
        }
    };

    if let Err(e) = emit(&docs, cli.pretty) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            return usage_error(e);
        }
    }
    ExitCode::from(report::batch_exit_code(&docs) as u8)
}
