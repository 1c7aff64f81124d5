mod args;
mod commands;
mod record;

use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use cadence::{Exec, Text};
use clap::Parser;

use args::{Cli, Command, Format, Input, Suite};
use record::{ErrorBody, ErrorRecord, Sink};

/// Operational failures. Verdicts never end up here.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Io(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Io(_) => ExitCode::from(1),
        }
    }
}

fn read_input(input: &Input, ascii_line: bool) -> Result<Text, Failure> {
    let mut bytes = match input.path.as_deref() {
        None => read_stdin()?,
        Some(p) if p == Path::new("-") => read_stdin()?,
        Some(p) => std::fs::read(p)
            .map_err(|e| Failure::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display()))))?,
    };
    if ascii_line && bytes.last() == Some(&b'\n') {
        bytes.pop();
    }
    Ok(Text::new(bytes))
}

fn read_stdin() -> io::Result<Vec<u8>> {
    let mut bytes = Vec::new();
    io::stdin().lock().read_to_end(&mut bytes)?;
    Ok(bytes)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Detect3 { .. } => "detect3",
        Command::Anchored { .. } => "anchored",
        Command::Gen { .. } => "gen",
        Command::Encode3sum { .. } => "encode3sum",
        Command::Bench { .. } => "bench",
    }
}

fn run<W: Write>(cli: &Cli, sink: &mut Sink<W>) -> Result<(), Failure> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match &cli.command {
        Command::Enumerate {
            input,
            k_min,
            symbol,
        } => {
            let text = read_input(input, cli.ascii_line)?;
            commands::enumerate(sink, &text, *k_min, *symbol)
        }
        Command::Detect3 {
            input,
            mode,
            count,
            symbol,
        } => {
            let text = read_input(input, cli.ascii_line)?;
            commands::detect3(sink, &text, *mode, *count, *symbol, exec)
        }
        Command::Anchored { input, mode } => {
            let text = read_input(input, cli.ascii_line)?;
            commands::anchored(sink, &text, *mode)
        }
        Command::Gen { len, alphabet } => commands::gen(sink, *len, *alphabet as usize, cli.seed),
        Command::Encode3sum { weights, text_only } => {
            commands::encode3sum(sink, weights, *text_only)
        }
        Command::Bench { suite } => match suite {
            Suite::Anchored { probe } => commands::bench_anchored(sink, probe, cli.seed, exec),
            Suite::Detect3 { probe, mode } => {
                commands::bench_detect3(sink, probe, *mode, cli.seed, exec)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut sink = Sink::new(BufWriter::new(stdout.lock()), cli.format);
    let outcome = run(&cli, &mut sink).and_then(|()| sink.flush().map_err(Failure::from));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(failure) => {
            let command = command_name(&cli.command);
            if cli.format == Format::Json {
                let _ = sink.emit(&ErrorRecord {
                    command,
                    error: ErrorBody {
                        kind: failure.kind(),
                        message: failure.message(),
                    },
                });
                let _ = sink.flush();
            }
            eprintln!("cadence {command}: {}", failure.message());
            failure.exit_code()
        }
    }
}
