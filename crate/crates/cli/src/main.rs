use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use foliation_cli::commands::{parse_backend, parse_point, COMMANDS};
use foliation_cli::{parse_document, run_command, CliError, Command, Format, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

/// Exact computations with polynomial foliations.
///
/// Document commands read a file argument, or standard input when the
/// argument is missing or `-`. `cohomology M D Q` and `figueira DEGX DEGF DIMX`
/// take integers instead.
#[derive(Debug, Parser)]
#[command(name = "foliate", version, allow_negative_numbers = true)]
struct Cli {
    /// One of the commands listed by `--list`.
    #[arg(required_unless_present = "list")]
    command: Option<String>,
    /// Input path, or integer arguments.
    args: Vec<String>,
    #[arg(long, value_name = "D")]
    degree_bound: Option<u32>,
    #[arg(long, value_name = "N")]
    max_order: Option<usize>,
    /// `exact` or `prime-field:<p>`.
    #[arg(long, value_name = "MODE", default_value = "exact")]
    mode: String,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Seed for the particular solution chosen by unfold-extend.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated rational coordinates, for kupka-test.
    #[arg(long)]
    point: Option<String>,
    /// Degree of the hypersurface, for cohomology.
    #[arg(long, value_name = "A")]
    hypersurface: Option<u32>,
    /// Print the command names and exit.
    #[arg(long)]
    list: bool,
}

fn read_input(path: Option<&str>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        None | Some("-") => io::stdin()
            .read_to_string(&mut text)
            .map(|_| ())
            .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?,
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{p}: {e}")))?,
    }
    Ok(text)
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let cmd: Command = cli.command.as_deref().unwrap_or_default().parse()?;
    let mut opts = Options {
        degree_bound: cli.degree_bound,
        max_order: cli.max_order,
        backend: parse_backend(&cli.mode)?,
        seed: cli.seed,
        point: cli.point.as_deref().map(parse_point).transpose()?,
        args: Vec::new(),
        hypersurface: cli.hypersurface,
    };
    if cli.hypersurface.is_some() && cmd != Command::Cohomology {
        return Err(CliError::Usage("--hypersurface only applies to cohomology".into()));
    }
    let doc = if cmd.takes_document() {
        if cli.args.len() > 1 {
            return Err(CliError::Usage(format!("{} takes at most one input path", cmd.name())));
        }
        Some(parse_document(&read_input(cli.args.first().map(String::as_str))?)?)
    } else {
        opts.args = cli
            .args
            .iter()
            .map(|a| a.parse().map_err(|_| CliError::Usage(format!("`{a}` is not an integer"))))
            .collect::<Result<_, _>>()?;
        None
    };
    let report = run_command(cmd, doc.as_ref(), &opts)?;
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    Ok((report.render(format), report.semantic_failure))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        for (name, _) in COMMANDS {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok((out, failed)) => {
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::from(u8::from(failed))
        }
        Err(e) => {
            eprintln!("foliate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
