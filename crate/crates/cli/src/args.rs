use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

/// Exact generalized eigenstates of the 2D parabolic potential barrier and
/// the hydrodynamics of their probability currents.
///
/// States are given either as a single label `--type T --nx N --ny M` or as a
/// superposition of repeated `--term "c_re,c_im:type,nx,ny"` entries. Types:
/// 1 = (+,+) diverging, 2 = (+,-) corner y→x, 3 = (-,+) corner x→y,
/// 4 = (-,-) converging.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage error,
/// 3 physics-negative result (e.g. no potentials exist for the flow).
#[derive(Debug, Parser)]
#[command(name = "ppb", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub hbar: f64,

    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub mass: f64,

    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub gamma: f64,

    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub v0: f64,

    /// Output format; `PPB_DEFAULT_FORMAT` sets the default.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "PPB_DEFAULT_FORMAT",
        default_value = "csv"
    )]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Diagnostic tolerance in units of γ (potential premises and corner fit).
    #[arg(
        long,
        global = true,
        default_value_t = 1e-6,
        allow_negative_numbers = true
    )]
    pub tol: f64,

    /// RNG seed for `verify`.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Grid bounds `xmin,xmax,ymin,ymax`.
    #[arg(long, global = true, value_parser = parse_bounds, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
    pub bounds: [f64; 4],

    /// Grid resolution `NX,NY`.
    #[arg(long, global = true, value_parser = parse_res, default_value = "41,41")]
    pub res: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex energies, flow classes and degeneracies of one state type.
    Energies {
        #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=4))]
        state_type: u8,

        /// Include all (nx, ny) with nx + ny <= n-max.
        #[arg(long)]
        n_max: usize,
    },

    /// Sample a field on the grid.
    Field {
        #[command(flatten)]
        state: StateArgs,

        #[arg(long, value_enum)]
        which: Quantity,
    },

    /// Trace RK4 streamlines of the velocity field.
    Streamline {
        #[command(flatten)]
        state: StateArgs,

        /// Seed point `x,y`; repeatable.
        #[arg(long = "from", value_parser = parse_point, allow_hyphen_values = true)]
        seeds: Vec<(f64, f64)>,

        /// Arc length per step.
        #[arg(long, default_value_t = 1e-2, allow_negative_numbers = true)]
        step: f64,

        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
    },

    /// Extract the velocity potential and stream function on the grid region
    /// and fit W = A z^a.
    Potentials {
        #[command(flatten)]
        state: StateArgs,
    },

    /// Run the full verification suite.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,

        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Psi,
    Density,
    Current,
    Velocity,
    Divergence,
    Vorticity,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(
        long = "type",
        value_parser = clap::value_parser!(u8).range(1..=4),
        required_unless_present = "terms",
        conflicts_with = "terms"
    )]
    pub state_type: Option<u8>,

    #[arg(long, default_value_t = 0, conflicts_with = "terms")]
    pub nx: usize,

    #[arg(long, default_value_t = 0, conflicts_with = "terms")]
    pub ny: usize,

    /// Superposition term `c_re,c_im:type,nx,ny`; repeatable.
    #[arg(long = "term", value_parser = parse_term, allow_hyphen_values = true)]
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub state_type: u8,
    pub nx: usize,
    pub ny: usize,
}

fn floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!(
            "expected {n} comma-separated numbers, got {}",
            parts.len()
        ));
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

fn parse_bounds(s: &str) -> Result<[f64; 4], String> {
    let v = floats(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let v = floats(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_res(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|e| format!("{a:?}: {e}"))?,
            b.parse().map_err(|e| format!("{b:?}: {e}"))?,
        )),
        _ => Err("expected NX,NY".into()),
    }
}

fn parse_term(s: &str) -> Result<Term, String> {
    let (coeff, label) = s
        .split_once(':')
        .ok_or_else(|| "expected c_re,c_im:type,nx,ny".to_string())?;
    let c = floats(coeff, 2)?;
    let parts: Vec<&str> = label.split(',').map(str::trim).collect();
    let [t, nx, ny] = parts.as_slice() else {
        return Err("expected type,nx,ny after ':'".into());
    };
    let state_type: u8 = t.parse().map_err(|e| format!("type {t:?}: {e}"))?;
    if !(1..=4).contains(&state_type) {
        return Err(format!("type must be 1..=4, got {state_type}"));
    }
    Ok(Term {
        coeff: Complex64::new(c[0], c[1]),
        state_type,
        nx: nx.parse().map_err(|e| format!("nx {nx:?}: {e}"))?,
        ny: ny.parse().map_err(|e| format!("ny {ny:?}: {e}"))?,
    })
}
