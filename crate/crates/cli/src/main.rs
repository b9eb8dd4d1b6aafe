mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let p = commands::params(g)?;
    let (name, result) = match &cli.command {
        Command::Energies { state_type, n_max } => {
            ("energies", commands::energies(&p, *state_type, *n_max))
        }
        Command::Field { state, which } => {
            let w = commands::wavefunction(&p, state)?;
            (
                "field",
                commands::field(&p, &w, &commands::grid(g)?, *which),
            )
        }
        Command::Streamline {
            state,
            seeds,
            step,
            max_steps,
        } => {
            let w = commands::wavefunction(&p, state)?;
            let bounds = commands::grid(g)?;
            (
                "streamline",
                commands::streamlines(&p, &w, &bounds, seeds, *step, *max_steps),
            )
        }
        Command::Potentials { state } => {
            let w = commands::wavefunction(&p, state)?;
            (
                "potentials",
                commands::potentials(&p, &w, &commands::grid(g)?, g.tol),
            )
        }
        Command::Verify {
            n_max,
            inject_fault,
        } => (
            "verify",
            commands::verify(&p, *n_max, g.seed, *inject_fault),
        ),
    };
    let write = |doc: &output::Document| {
        doc.write(g.format, name, &p, g.out.as_deref())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
    };
    match result {
        Ok(doc) => write(&doc),
        Err(Failure::Physics(doc, msg)) => {
            write(&doc)?;
            Err(Failure::Physics(doc, msg))
        }
        Err(Failure::Verification(doc, msg)) => {
            write(&doc)?;
            Err(Failure::Verification(doc, msg))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Physics(_, msg) | Failure::Verification(_, msg) => eprintln!("{msg}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
