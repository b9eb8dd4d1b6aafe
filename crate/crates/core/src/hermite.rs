//! The polynomial family `H±ₙ` multiplying the quadratic phase in the
//! one-dimensional barrier eigenfunctions `u±ₙ(q) = exp(±iβ²q²/2) H±ₙ(βq)`.
//!
//! Substituting that ansatz into the 1D barrier equation with
//! `E = V0/2 ∓ i(n + 1/2)ħγ` leaves
//!
//! ```text
//! f''(ξ) ± 2iξ f'(ξ) ∓ 2in f(ξ) = 0
//! ```
//!
//! whose polynomial solutions obey `H±ₙ₊₁ = 2ξ H±ₙ ∓ 2in H±ₙ₋₁` with
//! `H±₀ = 1`, `H±₁ = 2ξ`. The leading coefficient is `2ⁿ`.
//!
//! Coefficients are Gaussian integers times powers of two, so they are exact
//! in `f64` while every magnitude stays below 2⁵³, which holds up to roughly
//! `n = 26`. Past that the low-order coefficients pick up rounding error.

use num_complex::Complex64;
use std::fmt;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The `±` superscript on 1D energies, eigenfunctions and polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Branch::Plus => '+',
            Branch::Minus => '-',
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Dense complex polynomial, ascending powers.
///
/// No trailing zero coefficients are stored; the zero polynomial is `[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly1D {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly1D {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, xi: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * xi + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Complex-conjugates every coefficient.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Coefficients of `p(scale · ξ)`.
    pub fn rescaled(&self, scale: f64) -> Self {
        let mut power = 1.0;
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    let out = c * power;
                    power *= scale;
                    out
                })
                .collect(),
        )
    }
}

/// `H±ₙ` via the three-term recurrence.
pub fn hermite_pm(n: usize, branch: Branch) -> ComplexPoly1D {
    // ∓2i: the imaginary coupling of the recurrence
    let coupling = -2.0 * branch.sign() * I;
    let mut prev = vec![Complex64::new(1.0, 0.0)];
    if n == 0 {
        return ComplexPoly1D::new(prev);
    }
    let mut cur = vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)];
    for k in 1..n {
        let mut next = vec![Complex64::new(0.0, 0.0); k + 2];
        for (j, &c) in cur.iter().enumerate() {
            next[j + 1] += 2.0 * c;
        }
        for (j, &c) in prev.iter().enumerate() {
            next[j] += coupling * k as f64 * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    ComplexPoly1D::new(cur)
}

/// `f'' ± 2iξ f' ∓ 2in f` for `f = H±ₙ`; vanishes identically for a correct family.
pub fn ode_residual(n: usize, branch: Branch, xi: Complex64) -> Complex64 {
    ode_residual_of(&hermite_pm(n, branch), n, branch, xi)
}

/// Same residual for an arbitrary candidate polynomial.
pub fn ode_residual_of(f: &ComplexPoly1D, n: usize, branch: Branch, xi: Complex64) -> Complex64 {
    let s = branch.sign();
    let d1 = f.derivative();
    let d2 = d1.derivative();
    d2.eval(xi) + 2.0 * s * I * xi * d1.eval(xi) - 2.0 * s * I * n as f64 * f.eval(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(v: &[(f64, f64)]) -> ComplexPoly1D {
        ComplexPoly1D::new(v.iter().map(|&(a, b)| c(a, b)).collect())
    }

    #[test]
    fn low_orders_match_known_coefficients() {
        assert_eq!(hermite_pm(0, Branch::Plus), poly(&[(1., 0.)]));
        assert_eq!(hermite_pm(1, Branch::Plus), poly(&[(0., 0.), (2., 0.)]));
        assert_eq!(
            hermite_pm(2, Branch::Plus),
            poly(&[(0., -2.), (0., 0.), (4., 0.)])
        );
        assert_eq!(
            hermite_pm(2, Branch::Minus),
            poly(&[(0., 2.), (0., 0.), (4., 0.)])
        );
    }

    #[test]
    fn third_order_from_recurrence() {
        // frozen from the recurrence; ODE residual below confirms it
        let h3 = poly(&[(0., 0.), (0., -12.), (0., 0.), (8., 0.)]);
        assert_eq!(hermite_pm(3, Branch::Plus), h3);
        for xi in [c(0.3, 0.0), c(-1.7, 0.2), c(2.5, -1.0)] {
            assert!(ode_residual_of(&h3, 3, Branch::Plus, xi).norm() < 1e-12);
        }
    }

    #[test]
    fn eval_examples() {
        let p2 = poly(&[(0., -2.), (0., 0.), (4., 0.)]);
        assert_eq!(p2.eval(c(1., 0.)), c(4., -2.));
        assert_eq!(poly(&[(0., 0.), (2., 0.)]).eval(c(0.5, 0.)), c(1., 0.));
        let p3 = poly(&[(0., 0.), (0., -12.), (0., 0.), (8., 0.)]);
        assert_eq!(p3.eval(c(1., 0.)), c(8., -12.));
    }

    #[test]
    fn derivative_examples() {
        let p2 = poly(&[(0., -2.), (0., 0.), (4., 0.)]);
        assert_eq!(p2.derivative(), poly(&[(0., 0.), (8., 0.)]));
        assert_eq!(poly(&[(1., 0.)]).derivative(), ComplexPoly1D::zero());
        assert_eq!(ComplexPoly1D::zero().coeffs().len(), 1);
        let p3 = poly(&[(0., 0.), (0., -12.), (0., 0.), (8., 0.)]);
        assert_eq!(p3.derivative(), poly(&[(0., -12.), (0., 0.), (24., 0.)]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = poly(&[(1., 0.), (0., 0.), (0., 0.)]);
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn ode_residual_examples() {
        assert_eq!(ode_residual(0, Branch::Plus, c(2.7, 0.)), c(0., 0.));
        assert!(ode_residual(2, Branch::Plus, c(1., 0.)).norm() < 1e-14);
        let xi = c(0.3, 0.1);
        let scale = 1.0 + hermite_pm(7, Branch::Minus).eval(xi).norm();
        assert!(ode_residual(7, Branch::Minus, xi).norm() < 1e-10 * scale);
    }

    #[test]
    fn ode_holds_on_grid_up_to_16() {
        for n in 0..=16 {
            for b in [Branch::Plus, Branch::Minus] {
                let h = hermite_pm(n, b);
                for k in 0..=80 {
                    let xi = c(-4.0 + 0.1 * k as f64, 0.0);
                    let r = ode_residual_of(&h, n, b, xi);
                    assert!(
                        r.norm() <= 1e-10 * (1.0 + h.eval(xi).norm()),
                        "n={n} {b} xi={xi} residual={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn dropping_the_coupling_breaks_the_ode() {
        // plain 2ξ Hₙ without the ∓2in Hₙ₋₁ term
        let mut p = vec![c(1., 0.)];
        for _ in 0..3 {
            let mut q = vec![c(0., 0.); p.len() + 1];
            for (j, &v) in p.iter().enumerate() {
                q[j + 1] = 2.0 * v;
            }
            p = q;
        }
        let bad = ComplexPoly1D::new(p);
        assert!(ode_residual_of(&bad, 3, Branch::Plus, c(1., 0.)).norm() > 1.0);
    }

    #[test]
    fn degree_and_leading_coefficient() {
        for n in 0..=32 {
            let h = hermite_pm(n, Branch::Plus);
            assert_eq!(h.degree(), n);
            assert_eq!(h.coeffs()[n], c(2f64.powi(n as i32), 0.));
            for (k, v) in h.coeffs().iter().enumerate() {
                if (n - k) % 2 == 1 {
                    assert_eq!(*v, c(0., 0.));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn parity(n in 0usize..=16, re in -4.0f64..4.0, im in -1.0f64..1.0, plus in any::<bool>()) {
            let b = if plus { Branch::Plus } else { Branch::Minus };
            let h = hermite_pm(n, b);
            let xi = c(re, im);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let lhs = h.eval(-xi);
            let rhs = sign * h.eval(xi);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn conjugation_swaps_branches(n in 0usize..=26) {
            prop_assert_eq!(hermite_pm(n, Branch::Plus).conj(), hermite_pm(n, Branch::Minus));
        }
    }
}
