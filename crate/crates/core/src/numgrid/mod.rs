//! Independent numerics: uniform grids, central differences and streamlines.
//!
//! Nothing here looks inside a wavefunction; everything works on plain
//! closures, which is what lets it serve as an oracle for the analytic paths.

mod fd;
mod grid;
mod streamline;

pub use fd::{
    default_step, fd_curl, fd_curl_richardson, fd_divergence, fd_divergence_richardson,
    fd_gradient, fd_gradient_richardson,
};
pub use grid::{sample_grid, GridCell, GridSpec, GridTable};
pub use streamline::{integrate_streamline, Streamline, Termination};
