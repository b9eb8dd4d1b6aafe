//! Velocity potential `Φ` (`v = ∇Φ`), stream function `Ψ`
//! (`vₓ = ∂Ψ/∂y`, `v_y = −∂Ψ/∂x`) and the complex potential `W = Φ + iΨ`.
//!
//! Both scalars are rebuilt by line integration of the velocity along
//! axis-parallel paths from an anchor where they are pinned to zero. Every
//! sample is reached by two independent routes (x-leg first, y-leg first);
//! the routes must agree before the pair is handed out.

use std::cell::RefCell;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use super::VelocityField;
use crate::error::{Error, Result};
use crate::numgrid::GridSpec;
use crate::Vec2;

/// Simply connected rectangle (sampled on a grid) plus the anchor point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub grid: GridSpec,
    pub anchor: (f64, f64),
}

impl Region {
    /// Anchored at the lower-left corner.
    pub fn new(grid: GridSpec) -> Self {
        let anchor = (grid.x_range().0, grid.y_range().0);
        Self { grid, anchor }
    }

    pub fn with_anchor(grid: GridSpec, anchor: (f64, f64)) -> Result<Self> {
        if !grid.contains(anchor.0, anchor.1) {
            return Err(Error::InvalidGrid(format!(
                "anchor ({}, {}) lies outside the region",
                anchor.0, anchor.1
            )));
        }
        Ok(Self { grid, anchor })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractOptions {
    /// Largest |vorticity| (for Φ) and |divergence| (for Ψ) accepted on the region.
    pub premise_tol: f64,
    /// Largest disagreement between the two integration routes.
    pub path_tol: f64,
    /// Gauss-Legendre nodes per panel.
    pub quad_order: usize,
    /// Panels per region diameter.
    pub panels_per_diameter: usize,
}

impl ExtractOptions {
    /// Tolerances scaled by the flow's rate `γ`: `1e-6·γ` on the premises and
    /// `1e-6·γ·diameter²` on path agreement.
    pub fn for_rate(gamma: f64, region: &Region) -> Self {
        let d = region.grid.diameter();
        Self {
            premise_tol: 1e-6 * gamma,
            path_tol: 1e-6 * gamma * d * d,
            quad_order: 16,
            panels_per_diameter: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub psi: f64,
}

/// Extracted `Φ` and `Ψ`: the grid samples plus on-demand evaluation anywhere
/// in the region.
pub struct PotentialPair<'f, F: VelocityField> {
    field: &'f F,
    region: Region,
    quad: GaussLegendre,
    panel_len: f64,
    pub samples: Vec<PotentialSample>,
    /// Largest route disagreement seen over the samples.
    pub path_mismatch: f64,
    /// Largest |vorticity| and |divergence| seen over the samples.
    pub max_vorticity: f64,
    pub max_divergence: f64,
}

impl<'f, F: VelocityField> PotentialPair<'f, F> {
    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn anchor(&self) -> (f64, f64) {
        self.region.anchor
    }

    /// `(Φ, Ψ)` at a point via the x-leg-first route.
    pub fn eval(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        self.route(self.region.anchor, (x, y), true)
    }

    pub fn phi(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.eval(x, y)?.0)
    }

    pub fn psi(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.eval(x, y)?.1)
    }

    /// `W = Φ + iΨ`.
    pub fn complex_potential(&self, x: f64, y: f64) -> Result<Complex64> {
        let (phi, psi) = self.eval(x, y)?;
        Ok(Complex64::new(phi, psi))
    }

    fn route(&self, from: (f64, f64), to: (f64, f64), x_first: bool) -> Result<(f64, f64)> {
        let corner = if x_first {
            (to.0, from.1)
        } else {
            (from.0, to.1)
        };
        let a = self.segment(from, corner)?;
        let b = self.segment(corner, to)?;
        Ok((a.0 + b.0, a.1 + b.1))
    }

    /// `(∫ v·dl, ∫ (vₓ dy − v_y dx))` along a straight segment.
    fn segment(&self, from: (f64, f64), to: (f64, f64)) -> Result<(f64, f64)> {
        let (dx, dy) = (to.0 - from.0, to.1 - from.1);
        let len = dx.hypot(dy);
        if len == 0.0 {
            return Ok((0.0, 0.0));
        }
        let panels = (len / self.panel_len).ceil().max(1.0) as usize;
        let mut phi = 0.0;
        let mut psi = 0.0;
        let err = RefCell::new(None);
        let velocity = |t: f64| match self.field.velocity(from.0 + t * dx, from.1 + t * dy) {
            Ok(v) => v,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                [0.0, 0.0]
            }
        };
        for k in 0..panels {
            let t0 = k as f64 / panels as f64;
            let t1 = (k + 1) as f64 / panels as f64;
            phi += self.quad.integrate(t0, t1, |t| {
                let v = velocity(t);
                v[0] * dx + v[1] * dy
            });
            psi += self.quad.integrate(t0, t1, |t| {
                let v = velocity(t);
                v[0] * dy - v[1] * dx
            });
            if let Some(e) = err.borrow_mut().take() {
                return Err(e);
            }
        }
        Ok((phi, psi))
    }
}

/// Rebuilds `Φ` and `Ψ` over the region.
///
/// Fails with `NotIrrotational` or `NotSolenoidal` (carrying the largest
/// violation seen) when the corresponding premise does not hold on the
/// samples, and with `NodalRegion` if the region touches a node.
pub fn extract_potentials<'f, F: VelocityField>(
    field: &'f F,
    region: &Region,
    opts: &ExtractOptions,
) -> Result<PotentialPair<'f, F>> {
    let mut max_vorticity: f64 = 0.0;
    let mut max_divergence: f64 = 0.0;
    for (x, y) in region.grid.points() {
        field.velocity(x, y)?;
        max_vorticity = max_vorticity.max(field.vorticity(x, y)?.abs());
        max_divergence = max_divergence.max(field.divergence(x, y)?.abs());
    }
    if max_vorticity > opts.premise_tol {
        return Err(Error::NotIrrotational {
            violation: max_vorticity,
        });
    }
    if max_divergence > opts.premise_tol {
        return Err(Error::NotSolenoidal {
            violation: max_divergence,
        });
    }

    let order = opts.quad_order.try_into().map_err(|_| {
        Error::InvalidGrid(format!(
            "quadrature order must be >= 1, got {}",
            opts.quad_order
        ))
    })?;
    let quad = GaussLegendre::new(order);
    let mut pair = PotentialPair {
        field,
        region: *region,
        quad,
        panel_len: region.grid.diameter() / opts.panels_per_diameter.max(1) as f64,
        samples: Vec::with_capacity(region.grid.len()),
        path_mismatch: 0.0,
        max_vorticity,
        max_divergence,
    };

    let anchor = region.anchor;
    for (x, y) in region.grid.points() {
        let a = pair.route(anchor, (x, y), true)?;
        let b = pair.route(anchor, (x, y), false)?;
        let mismatch = (a.0 - b.0).abs().max((a.1 - b.1).abs());
        pair.path_mismatch = pair.path_mismatch.max(mismatch);
        pair.samples.push(PotentialSample {
            x,
            y,
            phi: a.0,
            psi: a.1,
        });
    }
    if pair.path_mismatch > opts.path_tol {
        return Err(Error::PathDependent {
            mismatch: pair.path_mismatch,
        });
    }
    Ok(pair)
}

/// `W(z) = A zᵃ`, the flow round the angle `π/a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerPotential {
    pub amplitude: Complex64,
    pub exponent: f64,
}

impl CornerPotential {
    pub fn new(amplitude: Complex64, exponent: f64) -> Self {
        Self {
            amplitude,
            exponent,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.amplitude * pow(z, self.exponent)
    }
}

fn pow(z: Complex64, a: f64) -> Complex64 {
    if a.fract() == 0.0 && a.abs() < i32::MAX as f64 {
        z.powi(a as i32)
    } else {
        z.powf(a)
    }
}

/// `dW/dz = A a z^{a−1}`, which equals `vₓ − i v_y`.
pub fn complex_velocity(cp: &CornerPotential, z: Complex64) -> Complex64 {
    cp.amplitude * cp.exponent * pow(z, cp.exponent - 1.0)
}

impl VelocityField for CornerPotential {
    fn velocity(&self, x: f64, y: f64) -> Result<Vec2> {
        let w = complex_velocity(self, Complex64::new(x, y));
        Ok([w.re, -w.im])
    }

    fn divergence(&self, _x: f64, _y: f64) -> Result<f64> {
        Ok(0.0)
    }

    fn vorticity(&self, _x: f64, _y: f64) -> Result<f64> {
        Ok(0.0)
    }
}

/// `v = (c_x, c_y)` everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformFlow(pub Vec2);

impl VelocityField for UniformFlow {
    fn velocity(&self, _x: f64, _y: f64) -> Result<Vec2> {
        Ok(self.0)
    }

    fn divergence(&self, _x: f64, _y: f64) -> Result<f64> {
        Ok(0.0)
    }

    fn vorticity(&self, _x: f64, _y: f64) -> Result<f64> {
        Ok(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Candidate exponents are `1..=max_exponent`.
    pub max_exponent: u32,
    /// Largest relative RMS residual accepted.
    pub tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_exponent: 6,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CornerFit {
    pub potential: CornerPotential,
    /// Relative RMS residual of the chosen exponent.
    pub residual: f64,
    /// `(a, residual)` for every candidate.
    pub scan: Vec<(u32, f64)>,
}

/// Least-squares fit of the anchored samples of `Φ + iΨ` against
/// `A (zᵃ − z₀ᵃ)` for each integer `a`, keeping the best one.
pub fn fit_corner_potential<F: VelocityField>(
    pair: &PotentialPair<'_, F>,
    opts: &FitOptions,
) -> Result<CornerFit> {
    if pair.samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let z0 = Complex64::new(pair.anchor().0, pair.anchor().1);
    let targets: Vec<(Complex64, Complex64)> = pair
        .samples
        .iter()
        .map(|s| (Complex64::new(s.x, s.y), Complex64::new(s.phi, s.psi)))
        .collect();
    let norm: f64 = targets.iter().map(|(_, w)| w.norm_sqr()).sum();
    if norm == 0.0 {
        return Err(Error::NoMonomialFit {
            best_residual: f64::INFINITY,
        });
    }

    let mut best: Option<(u32, Complex64, f64)> = None;
    let mut scan = Vec::new();
    for a in 1..=opts.max_exponent.max(1) {
        let basis = |z: Complex64| z.powi(a as i32) - z0.powi(a as i32);
        let (num, den) =
            targets
                .iter()
                .fold((Complex64::new(0.0, 0.0), 0.0), |(num, den), &(z, w)| {
                    let g = basis(z);
                    (num + g.conj() * w, den + g.norm_sqr())
                });
        if den == 0.0 {
            continue;
        }
        let amp = num / den;
        let sq: f64 = targets
            .iter()
            .map(|&(z, w)| (w - amp * basis(z)).norm_sqr())
            .sum();
        let residual = (sq / norm).sqrt();
        scan.push((a, residual));
        if best.is_none_or(|(_, _, r)| residual < r) {
            best = Some((a, amp, residual));
        }
    }
    match best {
        Some((a, amp, residual)) if residual <= opts.tol => Ok(CornerFit {
            potential: CornerPotential::new(amp, a as f64),
            residual,
            scan,
        }),
        Some((_, _, residual)) => Err(Error::NoMonomialFit {
            best_residual: residual,
        }),
        None => Err(Error::NoMonomialFit {
            best_residual: f64::INFINITY,
        }),
    }
}
