//! Polar and rectangular hyperbolic coordinates.

use crate::error::{Error, Result};

/// `(r, φ)` with `φ ∈ (−π, π]`. At the origin `φ = 0` by convention.
pub fn to_polar(x: f64, y: f64) -> (f64, f64) {
    let r = x.hypot(y);
    if r == 0.0 {
        return (0.0, 0.0);
    }
    let phi = y.atan2(x);
    // atan2 gives −π for (x < 0, y = −0.0)
    let phi = if phi == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        phi
    };
    (r, phi)
}

/// `u = x² − y²`, `v = 2xy`.
pub fn to_hyperbolic(x: f64, y: f64) -> (f64, f64) {
    (x * x - y * y, 2.0 * x * y)
}

/// `h_u = h_v = 2 (u² + v²)^{1/4}`, which equals `|∇u| = |∇v| = 2r`.
pub fn scale_factors(u: f64, v: f64) -> Result<(f64, f64)> {
    if u == 0.0 && v == 0.0 {
        return Err(Error::OriginSingular);
    }
    let h = 2.0 * u.hypot(v).sqrt();
    Ok((h, h))
}

/// Cartesian unit vectors `ê_u = ∇u/|∇u|`, `ê_v = ∇v/|∇v|` at `(x, y)`.
pub fn hyperbolic_frame(x: f64, y: f64) -> Result<([f64; 2], [f64; 2])> {
    let r = x.hypot(y);
    if r == 0.0 {
        return Err(Error::OriginSingular);
    }
    Ok(([x / r, -y / r], [y / r, x / r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        assert_eq!(to_hyperbolic(1.0, 1.0), (0.0, 2.0));
        assert_eq!(to_polar(1.0, 0.0), (1.0, 0.0));
        let (u, v) = to_hyperbolic(2.0, 1.0);
        assert_eq!((u, v), (3.0, 4.0));
        assert_eq!(u * u + v * v, 25.0);
        assert_eq!(to_polar(0.0, 0.0), (0.0, 0.0));
        assert_eq!(to_polar(-1.0, -0.0).1, PI);
        assert_eq!(to_polar(-1.0, 0.0).1, PI);
    }

    #[test]
    fn scale_factor_examples() {
        let s = 2.0 * 2f64.sqrt();
        let (hu, hv) = scale_factors(0.0, 2.0).unwrap();
        assert!((hu - s).abs() < 1e-14 && (hv - s).abs() < 1e-14);
        assert_eq!(scale_factors(1.0, 0.0).unwrap(), (2.0, 2.0));
        let (hu, _) = scale_factors(3.0, 4.0).unwrap();
        assert!((hu - 2.0 * 5f64.sqrt()).abs() < 1e-14);
        assert_eq!(scale_factors(0.0, 0.0), Err(Error::OriginSingular));
    }

    #[test]
    fn frame_is_orthonormal_and_aligned_with_gradients() {
        let (eu, ev) = hyperbolic_frame(1.3, -0.4).unwrap();
        assert!((eu[0] * ev[0] + eu[1] * ev[1]).abs() < 1e-15);
        assert!((eu[0].hypot(eu[1]) - 1.0).abs() < 1e-15);
        // ∇u = (2x, −2y)
        assert!((eu[0] * 0.8 - eu[1] * 2.6).abs() < 1e-15);
        assert_eq!(hyperbolic_frame(0.0, 0.0), Err(Error::OriginSingular));
    }

    proptest! {
        #[test]
        fn coordinate_identities(x in -5.0f64..5.0, y in -5.0f64..5.0) {
            prop_assume!(x.hypot(y) > 1e-3);
            let (r, phi) = to_polar(x, y);
            let (u, v) = to_hyperbolic(x, y);
            prop_assert!(phi > -PI && phi <= PI);
            prop_assert!((r * phi.cos() - x).abs() < 1e-12 && (r * phi.sin() - y).abs() < 1e-12);
            prop_assert!((u * u + v * v - r.powi(4)).abs() <= 1e-12 * r.powi(4));
            let (hu, hv) = scale_factors(u, v).unwrap();
            prop_assert!((hu - 2.0 * r).abs() <= 1e-12 * r && hu == hv);
        }
    }
}
