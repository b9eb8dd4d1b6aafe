//! Fixed-step RK4 along the unit direction field `v/|v|`, so the step is arc
//! length and the integrator does not stall near stagnation points.

use std::fmt;

use crate::error::{Error, Result};
use crate::numgrid::GridSpec;
use crate::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    StepLimit,
    LeftBounds,
    /// The field became undefined (a node) or the direction field broke down
    /// (a stagnation point or sink) within one step.
    NodalRegion,
}

impl Termination {
    pub fn name(&self) -> &'static str {
        match self {
            Termination::StepLimit => "step_limit",
            Termination::LeftBounds => "left_bounds",
            Termination::NodalRegion => "nodal_region",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Streamline {
    pub points: Vec<(f64, f64)>,
    pub terminated_by: Termination,
}

impl Streamline {
    /// Sum of segment lengths.
    pub fn arc_length(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
            .sum()
    }
}

enum Direction {
    Unit(Vec2),
    Broken,
}

fn direction<F>(field: &F, x: f64, y: f64) -> Result<Direction>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    match field(x, y) {
        Ok(v) => {
            let speed = v[0].hypot(v[1]);
            if speed > 0.0 && speed.is_finite() {
                Ok(Direction::Unit([v[0] / speed, v[1] / speed]))
            } else {
                Ok(Direction::Broken)
            }
        }
        Err(Error::NodalRegion { .. }) => Ok(Direction::Broken),
        Err(e) => Err(e),
    }
}

/// One RK4 step; `None` when the direction field breaks down inside it.
fn rk4_step<F>(field: &F, (x, y): (f64, f64), h: f64) -> Result<Option<(f64, f64)>>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    let mut stages = [[0.0; 2]; 4];
    let offsets = [0.0, 0.5, 0.5, 1.0];
    for s in 0..4 {
        let prev = if s == 0 { [0.0, 0.0] } else { stages[s - 1] };
        let (px, py) = (x + offsets[s] * h * prev[0], y + offsets[s] * h * prev[1]);
        match direction(field, px, py)? {
            Direction::Unit(d) => stages[s] = d,
            Direction::Broken => return Ok(None),
        }
    }
    // a reversal inside one step means we are straddling a sink or stagnation point
    if stages[1..]
        .iter()
        .any(|k| k[0] * stages[0][0] + k[1] * stages[0][1] < 0.0)
    {
        return Ok(None);
    }
    let [k1, k2, k3, k4] = stages;
    let step = |c: usize| h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    Ok(Some((x + step(0), y + step(1))))
}

pub fn integrate_streamline<F>(
    field: F,
    seed: (f64, f64),
    step: f64,
    max_steps: usize,
    bounds: &GridSpec,
) -> Result<Streamline>
where
    F: Fn(f64, f64) -> Result<Vec2>,
{
    let (x0, y0) = seed;
    if !bounds.contains(x0, y0) {
        return Err(Error::SeedOutOfBounds { x: x0, y: y0 });
    }
    if let Direction::Broken = direction(&field, x0, y0)? {
        return Err(Error::NodalRegion { x: x0, y: y0 });
    }
    let mut points = vec![seed];
    let mut current = seed;
    for _ in 0..max_steps {
        let Some(next) = rk4_step(&field, current, step)? else {
            return Ok(Streamline {
                points,
                terminated_by: Termination::NodalRegion,
            });
        };
        if !bounds.contains(next.0, next.1) {
            return Ok(Streamline {
                points,
                terminated_by: Termination::LeftBounds,
            });
        }
        points.push(next);
        current = next;
    }
    Ok(Streamline {
        points,
        terminated_by: Termination::StepLimit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenstates::{build_state, PhysParams, StateLabel};
    use crate::hermite::Branch::{Minus, Plus};
    use crate::hydrodynamics::velocity;

    fn big_box() -> GridSpec {
        GridSpec::new(-5.0, 5.0, -5.0, 5.0, 2, 2).unwrap()
    }

    #[test]
    fn hyperbola_is_conserved() {
        let p = PhysParams::natural();
        let w = build_state(StateLabel::new(Plus, Minus, 0, 0), &p);
        let wide = GridSpec::new(-10.0, 10.0, -10.0, 10.0, 2, 2).unwrap();
        let s = integrate_streamline(|x, y| velocity(&w, &p, x, y), (2.0, 0.5), 1e-3, 4000, &wide)
            .unwrap();
        assert_eq!(s.terminated_by, Termination::StepLimit);
        assert_eq!(s.points.len(), 4001);
        for &(x, y) in &s.points {
            assert!((x * y - 1.0).abs() < 1e-6);
        }
        for w in s.points.windows(2) {
            assert!((w[1].0 - w[0].0).hypot(w[1].1 - w[0].1) <= 1e-3 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn diverging_ray_leaves_bounds() {
        let p = PhysParams::natural();
        let w = build_state(StateLabel::new(Plus, Plus, 0, 0), &p);
        let s = integrate_streamline(
            |x, y| velocity(&w, &p, x, y),
            (1.0, 0.0),
            1e-2,
            10_000,
            &big_box(),
        )
        .unwrap();
        assert_eq!(s.terminated_by, Termination::LeftBounds);
        assert!(s.points.iter().all(|&(_, y)| y == 0.0));
        assert!(s.points.windows(2).all(|w| w[1].0 > w[0].0));
        assert!(s.points.last().unwrap().0 > 4.98);
    }

    #[test]
    fn corner_flow_turns_from_y_to_x() {
        let p = PhysParams::natural();
        let w = build_state(StateLabel::new(Plus, Minus, 0, 0), &p);
        let bounds = GridSpec::new(-4.0, 4.0, -4.0, 4.0, 2, 2).unwrap();
        let s = integrate_streamline(
            |x, y| velocity(&w, &p, x, y),
            (0.01, 3.0),
            1e-3,
            20_000,
            &bounds,
        )
        .unwrap();
        assert_eq!(s.terminated_by, Termination::LeftBounds);
        let first = s.points[1];
        assert!(first.1 < 3.0 && (first.0 - 0.01).abs() < 1e-4);
        let last = *s.points.last().unwrap();
        assert!(last.0 > 3.99 && last.1 > 0.0 && last.1 < 0.01);
    }

    #[test]
    fn converging_flow_stops_at_the_sink() {
        let p = PhysParams::natural();
        let w = build_state(StateLabel::new(Minus, Minus, 0, 0), &p);
        let s = integrate_streamline(
            |x, y| velocity(&w, &p, x, y),
            (2.0, 2.0),
            1e-2,
            10_000,
            &big_box(),
        )
        .unwrap();
        assert_eq!(s.terminated_by, Termination::NodalRegion);
        let (x, y) = *s.points.last().unwrap();
        assert!(x.hypot(y) < 2e-2);
    }

    #[test]
    fn seed_errors() {
        let p = PhysParams::natural();
        let w = build_state(StateLabel::new(Plus, Minus, 1, 1), &p);
        let f = |x, y| velocity(&w, &p, x, y);
        assert!(matches!(
            integrate_streamline(f, (0.0, 1.0), 1e-2, 10, &big_box()),
            Err(Error::NodalRegion { .. })
        ));
        assert!(matches!(
            integrate_streamline(f, (9.0, 1.0), 1e-2, 10, &big_box()),
            Err(Error::SeedOutOfBounds { .. })
        ));
    }
}
