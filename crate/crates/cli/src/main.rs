mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Overrides, RunConfig};

#[derive(Parser)]
#[command(
    name = "elastocald",
    version,
    about = "Elastic Calderón operators: spectra, identities and scattering solves"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand, Clone, Copy)]
enum Verb {
    /// Closed-form constants, admissibility and a mu_tilde sweep
    Constants,
    /// Eigenvalues of NS on a closed curve
    Spectrum,
    /// Eigenvalues of the weighted open-arc composition
    ArcSpectrum,
    /// Residual of the closed-curve Calderón identity under refinement
    CalderonCheck,
    /// Straight-arc basis actions against their diagonal formulas
    DiagTest,
    /// Scattering solve with field and density output
    Solve,
    /// GMRES iterations with and without preconditioning
    Iters,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Constants => "constants",
            Verb::Spectrum => "spectrum",
            Verb::ArcSpectrum => "arc-spectrum",
            Verb::CalderonCheck => "calderon-check",
            Verb::DiagTest => "diag-test",
            Verb::Solve => "solve",
            Verb::Iters => "iters",
        }
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("ELASTOCALD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| format!("ELASTOCALD_THREADS: bad value '{v}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verb = cli.verb;
    let fail = |msg: String| {
        eprintln!(
            "{}",
            serde_json::json!({"command": verb.name(), "error": msg})
        );
        ExitCode::from(2)
    };
    if let Err(e) = init_threads() {
        return fail(e);
    }
    let cfg = match RunConfig::load(verb.name(), &cli.overrides) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let run = match verb {
        Verb::Constants => commands::constants,
        Verb::Spectrum => commands::spectrum,
        Verb::ArcSpectrum => commands::arc_spectrum,
        Verb::CalderonCheck => commands::calderon,
        Verb::DiagTest => commands::diag_test,
        Verb::Solve => commands::solve,
        Verb::Iters => commands::iters,
    };
    match run(&cfg) {
        Ok(out) => {
            for f in &out.files {
                eprintln!("wrote {}", f.display());
            }
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "{}",
                    serde_json::json!({"command": verb.name(), "pass": false, "failures": out.failures})
                );
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e.to_string()),
    }
}
