//! The four types of separable barrier eigenstates, their complex energies,
//! flow classification, angular momentum and superpositions.

mod coords;
mod wavefunction;

pub use coords::{hyperbolic_frame, scale_factors, to_hyperbolic, to_polar};
pub use wavefunction::{ComplexPoly2D, Wavefunction};

use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};
use crate::hermite::{hermite_pm, Branch, ComplexPoly1D};
use crate::hydrodynamics::NodeFloor;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Physical constants of the barrier `V0 − m γ² r² / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    hbar: f64,
    mass: f64,
    gamma: f64,
    v0: f64,
    beta: f64,
}

impl PhysParams {
    pub fn new(hbar: f64, mass: f64, gamma: f64, v0: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("mass", mass), ("gamma", gamma)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and > 0, got {value}"
                )));
            }
        }
        if !v0.is_finite() {
            return Err(Error::InvalidParams(format!("v0 must be finite, got {v0}")));
        }
        let beta = (mass * gamma / hbar).sqrt();
        Ok(Self {
            hbar,
            mass,
            gamma,
            v0,
            beta,
        })
    }

    /// ħ = m = γ = 1, V0 = 0.
    pub fn natural() -> Self {
        Self::new(1.0, 1.0, 1.0, 0.0).expect("natural units are valid")
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    /// `β = √(mγ/ħ)`, inverse length.
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Default for PhysParams {
    fn default() -> Self {
        Self::natural()
    }
}

/// Branch pair plus quantum numbers. `(bx, by)` fixes the type:
/// `(+,+)` → 1, `(+,−)` → 2, `(−,+)` → 3, `(−,−)` → 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateLabel {
    pub bx: Branch,
    pub by: Branch,
    pub nx: usize,
    pub ny: usize,
}

impl StateLabel {
    pub fn new(bx: Branch, by: Branch, nx: usize, ny: usize) -> Self {
        Self { bx, by, nx, ny }
    }

    pub fn from_type(state_type: u8, nx: usize, ny: usize) -> Result<Self> {
        let (bx, by) = branches_of_type(state_type)?;
        Ok(Self { bx, by, nx, ny })
    }

    pub fn type_number(&self) -> u8 {
        match (self.bx, self.by) {
            (Branch::Plus, Branch::Plus) => 1,
            (Branch::Plus, Branch::Minus) => 2,
            (Branch::Minus, Branch::Plus) => 3,
            (Branch::Minus, Branch::Minus) => 4,
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.bx, self.by, self.nx, self.ny)
    }
}

pub fn branches_of_type(state_type: u8) -> Result<(Branch, Branch)> {
    match state_type {
        1 => Ok((Branch::Plus, Branch::Plus)),
        2 => Ok((Branch::Plus, Branch::Minus)),
        3 => Ok((Branch::Minus, Branch::Plus)),
        4 => Ok((Branch::Minus, Branch::Minus)),
        t => Err(Error::InvalidLabel(format!(
            "state type must be 1..=4, got {t}"
        ))),
    }
}

/// Complex energy eigenvalue. The real part is always `V0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEnergy(pub Complex64);

impl ComplexEnergy {
    pub fn value(&self) -> Complex64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowClass {
    Diverging,
    Converging,
    CornerYtoX,
    CornerXtoY,
    Stationary,
}

impl FlowClass {
    pub fn name(&self) -> &'static str {
        match self {
            FlowClass::Diverging => "diverging",
            FlowClass::Converging => "converging",
            FlowClass::CornerYtoX => "corner_y_to_x",
            FlowClass::CornerXtoY => "corner_x_to_y",
            FlowClass::Stationary => "stationary",
        }
    }
}

impl fmt::Display for FlowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::Finite(n) => write!(f, "{n}"),
            Degeneracy::Infinite => f.write_str("inf"),
        }
    }
}

/// `E±ₙ = V0/2 ∓ i(n + 1/2)ħγ` summed over both directions.
pub fn energy(label: StateLabel, p: &PhysParams) -> ComplexEnergy {
    let one_d = |b: Branch, n: usize| -b.sign() * (n as f64 + 0.5);
    let im = (one_d(label.bx, label.nx) + one_d(label.by, label.ny)) * (p.hbar() * p.gamma());
    ComplexEnergy(Complex64::new(p.v0(), im))
}

pub fn build_state(label: StateLabel, p: &PhysParams) -> Wavefunction {
    build_state_with(label, p, hermite_pm)
}

/// `H^{bx}_{nx}(βx) H^{by}_{ny}(βy)` times the phase, with the 1D polynomials
/// drawn from `basis`.
pub fn build_state_with<F>(label: StateLabel, p: &PhysParams, basis: F) -> Wavefunction
where
    F: Fn(usize, Branch) -> ComplexPoly1D,
{
    let px = basis(label.nx, label.bx);
    let py = basis(label.ny, label.by);
    Wavefunction::new(ComplexPoly2D::outer(&px, &py), label.bx, label.by, p.beta())
}

pub fn conjugate_state(label: StateLabel) -> StateLabel {
    StateLabel {
        bx: label.bx.conj(),
        by: label.by.conj(),
        ..label
    }
}

/// `exp(−iEt/ħ)`.
pub fn time_factor(label: StateLabel, p: &PhysParams, t: f64) -> Complex64 {
    (-I * energy(label, p).value() * t / p.hbar()).exp()
}

pub fn classify_flow(label: StateLabel) -> FlowClass {
    match (label.bx, label.by) {
        (Branch::Plus, Branch::Plus) => FlowClass::Diverging,
        (Branch::Minus, Branch::Minus) => FlowClass::Converging,
        _ if label.nx == label.ny => FlowClass::Stationary,
        (Branch::Plus, Branch::Minus) => FlowClass::CornerYtoX,
        (Branch::Minus, Branch::Plus) => FlowClass::CornerXtoY,
    }
}

/// Number of independent states sharing an energy. For types 1 and 4 the
/// level is `nx + ny`; corner types are infinitely degenerate at every level.
pub fn degeneracy(state_type: u8, level: i64) -> Result<Degeneracy> {
    match state_type {
        1 | 4 if level < 0 => Err(Error::NegativeLevel(level)),
        1 | 4 => Ok(Degeneracy::Finite(level as u64 + 1)),
        2 | 3 => Ok(Degeneracy::Infinite),
        t => Err(Error::InvalidLabel(format!(
            "state type must be 1..=4, got {t}"
        ))),
    }
}

/// Result of [`superpose`].
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    pub wavefunction: Wavefunction,
    /// Shared energy when every term has the same eigenvalue.
    pub energy: Option<ComplexEnergy>,
}

impl Superposition {
    pub fn is_energy_eigenstate(&self) -> bool {
        self.energy.is_some()
    }
}

pub fn superpose(terms: &[(Complex64, StateLabel)], p: &PhysParams) -> Result<Superposition> {
    let (first, rest) = terms
        .split_first()
        .ok_or_else(|| Error::InvalidLabel("empty superposition".into()))?;
    let mut w = build_state(first.1, p).scale(first.0);
    let mut shared = Some(energy(first.1, p));
    for &(c, label) in rest {
        w = w.add(&build_state(label, p).scale(c))?;
        if shared != Some(energy(label, p)) {
            shared = None;
        }
    }
    Ok(Superposition {
        wavefunction: w,
        energy: shared,
    })
}

/// `L̂ψ = −iħ (x ∂ψ/∂y − y ∂ψ/∂x)` at a point.
pub fn apply_lz(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Complex64 {
    -I * p.hbar() * (x * w.d_dy().eval(x, y) - y * w.d_dx().eval(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzEstimate {
    pub mean: Complex64,
    pub max_deviation: f64,
}

/// Mean of `L̂ψ/ψ` over the samples and the largest departure from it.
pub fn lz_eigencheck(
    w: &Wavefunction,
    p: &PhysParams,
    points: &[(f64, f64)],
) -> Result<LzEstimate> {
    if points.is_empty() {
        return Err(Error::EmptySamples);
    }
    let floor = NodeFloor::over_points(w, points);
    let dx = w.d_dx();
    let dy = w.d_dy();
    let ratios = points
        .iter()
        .map(|&(x, y)| {
            floor.check(w, x, y)?;
            let lz = -I * p.hbar() * (x * dy.eval(x, y) - y * dx.eval(x, y));
            Ok(lz / w.eval(x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let max_deviation = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max);
    Ok(LzEstimate {
        mean,
        max_deviation,
    })
}

/// `(Ĥ − V0)ψ` as a member of the family.
///
/// In the scaled coordinates of `w` the barrier part of the Hamiltonian is
/// `ħγ (−∇̃²/2 − (ξ² + η²)/2)`, using `ħ²β²/m = mγ²/β² = ħγ`, so `w` must
/// carry the `β` of `p`.
fn barrier_part(w: &Wavefunction, p: &PhysParams) -> Wavefunction {
    debug_assert!((w.beta() - p.beta()).abs() <= 1e-12 * p.beta());
    let half_hg = Complex64::new(-0.5 * p.hbar() * p.gamma(), 0.0);
    w.scaled_laplacian()
        .scale(half_hg)
        .add(&w.scaled_radius_sq().scale(half_hg))
        .expect("derivatives keep the phase")
}

/// `Ĥψ` at a point; `w` must be built with the `β` of `p`.
pub fn apply_hamiltonian(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Complex64 {
    barrier_part(w, p).eval(x, y) + p.v0() * w.eval(x, y)
}

/// `(Ĥ − E)ψ` at a point, assembled coefficient-wise before evaluation so that
/// exact eigenpairs cancel exactly rather than to rounding of each term.
pub fn schrodinger_residual(
    w: &Wavefunction,
    e: ComplexEnergy,
    p: &PhysParams,
    x: f64,
    y: f64,
) -> Complex64 {
    let shift = Complex64::new(p.v0(), 0.0) - e.value();
    barrier_part(w, p)
        .add(&w.scale(shift))
        .expect("same representation")
        .eval(x, y)
}
