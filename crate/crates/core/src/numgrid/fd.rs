//! Second-order central differences on the 4-point cross stencil.

use crate::error::Result;
use crate::Vec2;

/// `1e-5 · max(1, |coordinate|)`.
pub fn default_step(coord: f64) -> f64 {
    1e-5 * coord.abs().max(1.0)
}

pub fn fd_gradient<F>(f: F, x: f64, y: f64, h: f64) -> Result<Vec2>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let gx = (f(x + h, y)? - f(x - h, y)?) / (2.0 * h);
    let gy = (f(x, y + h)? - f(x, y - h)?) / (2.0 * h);
    Ok([gx, gy])
}

pub fn fd_divergence<F>(v: F, x: f64, y: f64, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    let dvx = (v(x + h, y)?[0] - v(x - h, y)?[0]) / (2.0 * h);
    let dvy = (v(x, y + h)?[1] - v(x, y - h)?[1]) / (2.0 * h);
    Ok(dvx + dvy)
}

/// Scalar curl `∂ₓv_y − ∂_y vₓ`.
pub fn fd_curl<F>(v: F, x: f64, y: f64, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    let dvy = (v(x + h, y)?[1] - v(x - h, y)?[1]) / (2.0 * h);
    let dvx = (v(x, y + h)?[0] - v(x, y - h)?[0]) / (2.0 * h);
    Ok(dvy - dvx)
}

fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// One Richardson step combining `h` and `h/2`.
pub fn fd_gradient_richardson<F>(f: F, x: f64, y: f64, h: f64) -> Result<Vec2>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let c = fd_gradient(&f, x, y, h)?;
    let r = fd_gradient(&f, x, y, h / 2.0)?;
    Ok([richardson(c[0], r[0]), richardson(c[1], r[1])])
}

pub fn fd_divergence_richardson<F>(v: F, x: f64, y: f64, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    Ok(richardson(
        fd_divergence(&v, x, y, h)?,
        fd_divergence(&v, x, y, h / 2.0)?,
    ))
}

pub fn fd_curl_richardson<F>(v: F, x: f64, y: f64, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    Ok(richardson(
        fd_curl(&v, x, y, h)?,
        fd_curl(&v, x, y, h / 2.0)?,
    ))
}
