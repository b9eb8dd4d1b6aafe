use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermite::{Branch, ComplexPoly1D};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex polynomial in `(x, y)`; coefficient `(i, j)` multiplies `xⁱ yʲ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly2D {
    deg_x: usize,
    deg_y: usize,
    coeffs: Vec<Complex64>,
}

impl ComplexPoly2D {
    pub fn zeros(deg_x: usize, deg_y: usize) -> Self {
        Self {
            deg_x,
            deg_y,
            coeffs: vec![ZERO; (deg_x + 1) * (deg_y + 1)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::zeros(0, 0);
        p.coeffs[0] = c;
        p
    }

    /// `px(x) · py(y)`.
    pub fn outer(px: &ComplexPoly1D, py: &ComplexPoly1D) -> Self {
        let mut p = Self::zeros(px.degree(), py.degree());
        for (i, &a) in px.coeffs().iter().enumerate() {
            for (j, &b) in py.coeffs().iter().enumerate() {
                *p.at_mut(i, j) = a * b;
            }
        }
        p
    }

    pub fn deg_x(&self) -> usize {
        self.deg_x
    }

    pub fn deg_y(&self) -> usize {
        self.deg_y
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        if i > self.deg_x || j > self.deg_y {
            return ZERO;
        }
        self.coeffs[i * (self.deg_y + 1) + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.coeffs[i * (self.deg_y + 1) + j]
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let row = self.deg_y + 1;
        self.coeffs
            .chunks(row)
            .rev()
            .fold(ZERO, |acc, coeffs_in_y| {
                let in_y = coeffs_in_y.iter().rev().fold(ZERO, |a, &c| a * y + c);
                acc * x + in_y
            })
    }

    /// `Σ |cᵢⱼ| |x|ⁱ |y|ʲ`, the magnitude the value would have without cancellation.
    pub fn abs_eval(&self, x: f64, y: f64) -> f64 {
        let (ax, ay) = (x.abs(), y.abs());
        let row = self.deg_y + 1;
        self.coeffs.chunks(row).rev().fold(0.0, |acc, coeffs_in_y| {
            let in_y = coeffs_in_y.iter().rev().fold(0.0, |a, c| a * ay + c.norm());
            acc * ax + in_y
        })
    }

    pub fn d_dx(&self) -> Self {
        if self.deg_x == 0 {
            return Self::zeros(0, self.deg_y);
        }
        let mut p = Self::zeros(self.deg_x - 1, self.deg_y);
        for i in 1..=self.deg_x {
            for j in 0..=self.deg_y {
                *p.at_mut(i - 1, j) = self.at(i, j) * i as f64;
            }
        }
        p
    }

    pub fn d_dy(&self) -> Self {
        if self.deg_y == 0 {
            return Self::zeros(self.deg_x, 0);
        }
        let mut p = Self::zeros(self.deg_x, self.deg_y - 1);
        for i in 0..=self.deg_x {
            for j in 1..=self.deg_y {
                *p.at_mut(i, j - 1) = self.at(i, j) * j as f64;
            }
        }
        p
    }

    pub fn mul_x(&self) -> Self {
        let mut p = Self::zeros(self.deg_x + 1, self.deg_y);
        for i in 0..=self.deg_x {
            for j in 0..=self.deg_y {
                *p.at_mut(i + 1, j) = self.at(i, j);
            }
        }
        p
    }

    pub fn mul_y(&self) -> Self {
        let mut p = Self::zeros(self.deg_x, self.deg_y + 1);
        for i in 0..=self.deg_x {
            for j in 0..=self.deg_y {
                *p.at_mut(i, j + 1) = self.at(i, j);
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = Self::zeros(self.deg_x.max(other.deg_x), self.deg_y.max(other.deg_y));
        for i in 0..=p.deg_x {
            for j in 0..=p.deg_y {
                *p.at_mut(i, j) = self.at(i, j) + other.at(i, j);
            }
        }
        p
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            deg_x: self.deg_x,
            deg_y: self.deg_y,
            coeffs: self.coeffs.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            deg_x: self.deg_x,
            deg_y: self.deg_y,
            coeffs: self.coeffs.iter().map(|v| v.conj()).collect(),
        }
    }
}

/// `P(βx, βy) · exp(i (sx β² x² + sy β² y²) / 2)`.
///
/// The polynomial is stored in the scaled coordinates `ξ = βx`, `η = βy`, where
/// barrier eigenstates have Gaussian-integer coefficients. Closed under
/// addition (matching signs and β) and under `∂/∂x`, `∂/∂y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    poly: ComplexPoly2D,
    sx: Branch,
    sy: Branch,
    beta: f64,
    phased: bool,
}

impl Wavefunction {
    /// `poly` is in scaled coordinates; `beta > 0`.
    pub fn new(poly: ComplexPoly2D, sx: Branch, sy: Branch, beta: f64) -> Self {
        Self {
            poly,
            sx,
            sy,
            beta,
            phased: true,
        }
    }

    /// A bare polynomial `P(βx, βy)` with no phase factor.
    pub fn without_phase(poly: ComplexPoly2D, beta: f64) -> Self {
        Self {
            poly,
            sx: Branch::Plus,
            sy: Branch::Plus,
            beta,
            phased: false,
        }
    }

    /// Polynomial in the scaled coordinates `(ξ, η) = (βx, βy)`.
    pub fn poly(&self) -> &ComplexPoly2D {
        &self.poly
    }

    pub fn phase_signs(&self) -> (Branch, Branch) {
        (self.sx, self.sy)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn phase_weights(&self) -> [f64; 2] {
        if self.phased {
            [self.sx.sign(), self.sy.sign()]
        } else {
            [0.0, 0.0]
        }
    }

    /// Exponent `S` of the phase `exp(iS)`.
    pub fn phase_exponent(&self, x: f64, y: f64) -> f64 {
        let [wx, wy] = self.phase_weights();
        let (xi, eta) = (self.beta * x, self.beta * y);
        0.5 * (wx * xi * xi + wy * eta * eta)
    }

    /// `∇S`.
    pub fn phase_gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let [wx, wy] = self.phase_weights();
        let b2 = self.beta * self.beta;
        [b2 * wx * x, b2 * wy * y]
    }

    /// Diagonal of the Hessian of `S` (the off-diagonal vanishes).
    pub fn phase_curvature(&self) -> [f64; 2] {
        let [wx, wy] = self.phase_weights();
        let b2 = self.beta * self.beta;
        [b2 * wx, b2 * wy]
    }

    /// `P` at the physical point `(x, y)`.
    pub fn poly_at(&self, x: f64, y: f64) -> Complex64 {
        self.poly.eval(self.beta * x, self.beta * y)
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        self.poly_at(x, y) * Complex64::from_polar(1.0, self.phase_exponent(x, y))
    }

    pub fn density(&self, x: f64, y: f64) -> f64 {
        self.poly_at(x, y).norm_sqr()
    }

    /// `∂ψ/∂x = β (∂P/∂ξ + i sx ξ P) e^{iS}`.
    pub fn d_dx(&self) -> Self {
        let k = I * self.phase_weights()[0];
        let inner = self.poly.d_dx().add(&self.poly.mul_x().scale(k));
        Self {
            poly: inner.scale(Complex64::new(self.beta, 0.0)),
            ..*self
        }
    }

    pub fn d_dy(&self) -> Self {
        let k = I * self.phase_weights()[1];
        let inner = self.poly.d_dy().add(&self.poly.mul_y().scale(k));
        Self {
            poly: inner.scale(Complex64::new(self.beta, 0.0)),
            ..*self
        }
    }

    /// `(∂²/∂ξ² + ∂²/∂η²) ψ`, i.e. the Laplacian divided by `β²`, kept free
    /// of any factor of `β` so integer coefficients stay exact.
    pub fn scaled_laplacian(&self) -> Self {
        let [wx, wy] = self.phase_weights();
        let dxi = |p: &ComplexPoly2D| p.d_dx().add(&p.mul_x().scale(I * wx));
        let deta = |p: &ComplexPoly2D| p.d_dy().add(&p.mul_y().scale(I * wy));
        let poly = dxi(&dxi(&self.poly)).add(&deta(&deta(&self.poly)));
        Self { poly, ..*self }
    }

    pub fn laplacian(&self) -> Self {
        self.scaled_laplacian()
            .scale(Complex64::new(self.beta * self.beta, 0.0))
    }

    /// `(ξ² + η²) ψ`.
    pub fn scaled_radius_sq(&self) -> Self {
        let poly = self.poly.mul_x().mul_x().add(&self.poly.mul_y().mul_y());
        Self { poly, ..*self }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            poly: self.poly.scale(c),
            ..*self
        }
    }

    /// Pointwise complex conjugate: conjugated coefficients, flipped phase signs.
    pub fn conj(&self) -> Self {
        Self {
            poly: self.poly.conj(),
            sx: self.sx.conj(),
            sy: self.sy.conj(),
            ..*self
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.phase_weights() != other.phase_weights() || self.beta != other.beta {
            return Err(Error::RepresentationMismatch);
        }
        Ok(Self {
            poly: self.poly.add(&other.poly),
            ..*self
        })
    }
}
