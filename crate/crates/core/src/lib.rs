//! Exact generalized eigenstates of the two-dimensional parabolic potential
//! barrier `V = V0 - m γ² (x² + y²) / 2` and the hydrodynamics of their
//! probability currents.
//!
//! Every state is held as a complex polynomial times a quadratic phase
//! `exp(i (sx β² x² + sy β² y²) / 2)`, so derivatives, the Hamiltonian and the
//! angular-momentum operator all act in closed form. The [`numgrid`] module
//! carries the independent finite-difference and streamline machinery used to
//! cross-check the analytic paths.

pub mod eigenstates;
pub mod error;
pub mod hermite;
pub mod hydrodynamics;
pub mod numgrid;
pub mod verify;

pub use eigenstates::{
    ComplexEnergy, Degeneracy, FlowClass, PhysParams, StateLabel, Superposition, Wavefunction,
};
pub use error::{Error, Result};
pub use hermite::{Branch, ComplexPoly1D};

/// Two-component real vector (Cartesian unless stated otherwise).
pub type Vec2 = [f64; 2];
