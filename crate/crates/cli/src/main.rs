mod args;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Format, TreesCommand, UnavoidableCommand};
use report::{render, render_text, to_value, write_text_file, Outcome, EXIT_OK, EXIT_USAGE};

fn dispatch(cmd: &Command, seed: u64) -> (&'static str, serde_json::Value, Outcome) {
    use commands as c;
    match cmd {
        Command::Arrows(a) => ("arrows", to_value(a), c::arrows(a, seed)),
        Command::Minimal(a) => ("minimal", to_value(a), c::minimal(a, seed)),
        Command::BlowupRamsey(a) => ("blowup-ramsey", to_value(a), c::blowup_ramsey(a, seed)),
        Command::Girth(a) => ("girth", to_value(a), c::girth_cmd(a)),
        Command::Check3cc(a) => ("check-3cc", to_value(a), c::check_3cc(a)),
        Command::Recolour(a) => ("recolour", to_value(a), c::recolour(a)),
        Command::Verify(a) => ("verify", to_value(a), c::verify(a)),
        Command::Unavoidable(u) => match u {
            UnavoidableCommand::Enumerate(a) => ("unavoidable enumerate", to_value(a), c::enumerate(a)),
            UnavoidableCommand::Family(a) => ("unavoidable family", to_value(a), c::family(a)),
            UnavoidableCommand::Detect(a) => ("unavoidable detect", to_value(a), c::detect(a, seed)),
            UnavoidableCommand::Drc(a) => ("unavoidable drc", to_value(a), c::drc(a, seed)),
            UnavoidableCommand::Pipeline(a) => ("unavoidable pipeline", to_value(a), c::pipeline(a, seed)),
            UnavoidableCommand::Experiment(a) => ("unavoidable experiment", to_value(a), c::experiment(a, seed)),
        },
        Command::Trees(t) => match t {
            TreesCommand::Copies(a) => ("trees copies", to_value(a), c::copies(a)),
            TreesCommand::Coherent(a) => ("trees coherent", to_value(a), c::coherent(a)),
            TreesCommand::Lemma32(a) => ("trees lemma32", to_value(a), c::lemma32(a)),
            TreesCommand::Table(a) => ("trees table", to_value(a), c::table(a, seed)),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }

    let start = Instant::now();
    let (name, inputs, outcome) = dispatch(&cli.command, cli.seed);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;

    let text = match cli.format {
        Format::Json => render(name, inputs, cli.seed, &outcome, elapsed_ms),
        Format::Text => render_text(name, &outcome, elapsed_ms),
    };
    let written = match &cli.output {
        Some(path) => write_text_file(path, &text),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    };
    if let Err(f) = written {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    match outcome {
        Ok(_) => ExitCode::from(EXIT_OK),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
