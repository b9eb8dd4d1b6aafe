//! Probability current and Madelung velocity of barrier states.
//!
//! With `ψ = P e^{iS}` the current is `j = (ħ/m)(Im(P* ∇P) + |P|² ∇S)` and the
//! velocity `v = j/|ψ|² = (ħ/m)(Im(∇P/P) + ∇S)`. Its gradient
//! `∂ₖvₗ = (ħ/m)(Im(Pₖₗ/P − PₖPₗ/P²) + ∂ₖ∂ₗS)` gives divergence and vorticity
//! without any numerical differentiation.

mod potentials;

pub use potentials::{
    complex_velocity, extract_potentials, fit_corner_potential, CornerFit, CornerPotential,
    ExtractOptions, FitOptions, PotentialPair, PotentialSample, Region, UniformFlow,
};

use num_complex::Complex64;

use crate::eigenstates::{
    hyperbolic_frame, scale_factors, ComplexPoly2D, PhysParams, Wavefunction,
};
use crate::error::{Error, Result};
use crate::hermite::Branch;
use crate::Vec2;

/// Fraction of the reference density below which a point counts as nodal.
pub const NODE_FRACTION: f64 = 1e-8;

/// Decides where velocity-based quantities are undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeFloor {
    /// `|P|² ≤ 1e-8 · (Σ|cᵢⱼ||x|ⁱ|y|ʲ)²`: the polynomial has cancelled to
    /// rounding-noise level relative to its own terms. Used for single-point
    /// evaluation where no region is available.
    Local,
    /// `|ψ|² ≤ floor`.
    Absolute(f64),
}

impl NodeFloor {
    /// `1e-8 · max |ψ|²` over the points.
    pub fn over_points(w: &Wavefunction, points: &[(f64, f64)]) -> Self {
        let max = points
            .iter()
            .map(|&(x, y)| w.density(x, y))
            .fold(0.0, f64::max);
        NodeFloor::Absolute(NODE_FRACTION * max)
    }

    pub fn is_nodal(&self, w: &Wavefunction, x: f64, y: f64) -> bool {
        let density = w.density(x, y);
        match *self {
            NodeFloor::Local => {
                let b = w.beta();
                density <= NODE_FRACTION * w.poly().abs_eval(b * x, b * y).powi(2)
            }
            NodeFloor::Absolute(floor) => density <= floor,
        }
    }

    pub fn check(&self, w: &Wavefunction, x: f64, y: f64) -> Result<()> {
        if self.is_nodal(w, x, y) {
            Err(Error::NodalRegion { x, y })
        } else {
            Ok(())
        }
    }
}

/// A planar velocity field with analytically known divergence and vorticity.
pub trait VelocityField {
    fn velocity(&self, x: f64, y: f64) -> Result<Vec2>;
    fn divergence(&self, x: f64, y: f64) -> Result<f64>;
    fn vorticity(&self, x: f64, y: f64) -> Result<f64>;
}

/// Madelung flow of one wavefunction, with the partial-derivative polynomials
/// (in the scaled coordinates of the wavefunction) precomputed.
#[derive(Debug, Clone)]
pub struct StateFlow<'a> {
    w: &'a Wavefunction,
    hbar_over_m: f64,
    floor: NodeFloor,
    px: ComplexPoly2D,
    py: ComplexPoly2D,
    pxx: ComplexPoly2D,
    pxy: ComplexPoly2D,
    pyx: ComplexPoly2D,
    pyy: ComplexPoly2D,
}

struct Partials {
    p: Complex64,
    px: Complex64,
    py: Complex64,
}

impl<'a> StateFlow<'a> {
    pub fn new(w: &'a Wavefunction, params: &PhysParams) -> Self {
        let px = w.poly().d_dx();
        let py = w.poly().d_dy();
        Self {
            w,
            hbar_over_m: params.hbar() / params.mass(),
            floor: NodeFloor::Local,
            pxx: px.d_dx(),
            pxy: px.d_dy(),
            pyx: py.d_dx(),
            pyy: py.d_dy(),
            px,
            py,
        }
    }

    pub fn with_floor(mut self, floor: NodeFloor) -> Self {
        self.floor = floor;
        self
    }

    pub fn wavefunction(&self) -> &Wavefunction {
        self.w
    }

    pub fn floor(&self) -> NodeFloor {
        self.floor
    }

    fn partials(&self, x: f64, y: f64) -> Partials {
        let b = self.w.beta();
        let (xi, eta) = (b * x, b * y);
        Partials {
            p: self.w.poly().eval(xi, eta),
            px: b * self.px.eval(xi, eta),
            py: b * self.py.eval(xi, eta),
        }
    }

    /// Defined everywhere, nodes included.
    pub fn current(&self, x: f64, y: f64) -> Vec2 {
        let d = self.partials(x, y);
        let rho = d.p.norm_sqr();
        let gs = self.w.phase_gradient(x, y);
        [
            self.hbar_over_m * ((d.p.conj() * d.px).im + rho * gs[0]),
            self.hbar_over_m * ((d.p.conj() * d.py).im + rho * gs[1]),
        ]
    }

    pub fn velocity(&self, x: f64, y: f64) -> Result<Vec2> {
        self.floor.check(self.w, x, y)?;
        let d = self.partials(x, y);
        let gs = self.w.phase_gradient(x, y);
        Ok([
            self.hbar_over_m * ((d.px / d.p).im + gs[0]),
            self.hbar_over_m * ((d.py / d.p).im + gs[1]),
        ])
    }

    /// `[[∂ₓvₓ, ∂ₓv_y], [∂_y vₓ, ∂_y v_y]]`.
    pub fn velocity_gradient(&self, x: f64, y: f64) -> Result<[Vec2; 2]> {
        self.floor.check(self.w, x, y)?;
        let d = self.partials(x, y);
        let b = self.w.beta();
        let (xi, eta) = (b * x, b * y);
        let b2 = b * b;
        let (pxx, pxy, pyx, pyy) = (
            b2 * self.pxx.eval(xi, eta),
            b2 * self.pxy.eval(xi, eta),
            b2 * self.pyx.eval(xi, eta),
            b2 * self.pyy.eval(xi, eta),
        );
        let inv = 1.0 / d.p;
        let (lx, ly) = (d.px * inv, d.py * inv);
        let curv = self.w.phase_curvature();
        let k = self.hbar_over_m;
        let xx = k * ((pxx * inv - lx * lx).im + curv[0]);
        let yy = k * ((pyy * inv - ly * ly).im + curv[1]);
        // mixed partials taken in both orders
        let xy = k * (pxy * inv - lx * ly).im;
        let yx = k * (pyx * inv - ly * lx).im;
        Ok([[xx, xy], [yx, yy]])
    }
}

impl VelocityField for StateFlow<'_> {
    fn velocity(&self, x: f64, y: f64) -> Result<Vec2> {
        StateFlow::velocity(self, x, y)
    }

    fn divergence(&self, x: f64, y: f64) -> Result<f64> {
        let g = self.velocity_gradient(x, y)?;
        Ok(g[0][0] + g[1][1])
    }

    fn vorticity(&self, x: f64, y: f64) -> Result<f64> {
        let g = self.velocity_gradient(x, y)?;
        Ok(g[0][1] - g[1][0])
    }
}

/// `Re[ψ* (−iħ∇) ψ] / m`.
pub fn current(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Vec2 {
    StateFlow::new(w, p).current(x, y)
}

/// `j / |ψ|²`; `NodalRegion` where the wavefunction vanishes.
pub fn velocity(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Result<Vec2> {
    StateFlow::new(w, p).velocity(x, y)
}

pub fn divergence(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Result<f64> {
    StateFlow::new(w, p).divergence(x, y)
}

pub fn vorticity(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Result<f64> {
    StateFlow::new(w, p).vorticity(x, y)
}

/// Current projected onto `ê_u = ∇u/|∇u|` and `ê_v = ∇v/|∇v|`.
pub fn current_hyperbolic(w: &Wavefunction, p: &PhysParams, x: f64, y: f64) -> Result<(f64, f64)> {
    let (eu, ev) = hyperbolic_frame(x, y)?;
    let j = current(w, p, x, y);
    Ok((dot(j, eu), dot(j, ev)))
}

/// Closed-form hyperbolic components of the current of the stationary state
/// `(b, b̄, n, n)` for `n ≤ 2`, as functions of `(u, v)`.
pub fn stationary_current_closed_form(
    n: usize,
    branch: Branch,
    p: &PhysParams,
    u: f64,
    v: f64,
) -> Result<(f64, f64)> {
    let (hu, hv) = scale_factors(u, v)?;
    let s = branch.sign();
    let g = p.gamma();
    let b4 = p.beta().powi(4);
    match n {
        0 => Ok((s * g * hu / 2.0, 0.0)),
        1 => Ok((s * 2.0 * g * b4 * v * v * hu, 0.0)),
        2 => {
            let bv2 = b4 * v * v;
            let ju = s * 8.0 * g * ((bv2 + 5.0) * (bv2 + 1.0) + 4.0 * b4 * u * u) * hu;
            let jv = -s * 64.0 * g * b4 * u * v * hv;
            Ok((ju, jv))
        }
        n => Err(Error::UnsupportedOrder(n)),
    }
}

/// Everything the flow has to say at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowSample {
    pub x: f64,
    pub y: f64,
    pub current: Vec2,
    pub velocity: Vec2,
    pub divergence: f64,
    pub vorticity: f64,
    /// `(j_u, j_v)`; absent at the origin.
    pub current_uv: Option<(f64, f64)>,
}

pub fn flow_sample(flow: &StateFlow<'_>, x: f64, y: f64) -> Result<FlowSample> {
    let velocity = flow.velocity(x, y)?;
    let g = flow.velocity_gradient(x, y)?;
    let current = flow.current(x, y);
    let current_uv = hyperbolic_frame(x, y)
        .ok()
        .map(|(eu, ev)| (dot(current, eu), dot(current, ev)));
    Ok(FlowSample {
        x,
        y,
        current,
        velocity,
        divergence: g[0][0] + g[1][1],
        vorticity: g[0][1] - g[1][0],
        current_uv,
    })
}

fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}
