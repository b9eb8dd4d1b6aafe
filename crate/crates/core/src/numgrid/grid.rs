use crate::error::{Error, Result};

/// Uniform rectangular grid, row-major with `x` varying fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    nx_pts: usize,
    ny_pts: usize,
}

impl GridSpec {
    pub fn new(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        nx_pts: usize,
        ny_pts: usize,
    ) -> Result<Self> {
        if ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if !(x_min < x_max && y_min < y_max) {
            return Err(Error::InvalidGrid(format!(
                "need x_min < x_max and y_min < y_max, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if nx_pts < 2 || ny_pts < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points per axis, got {nx_pts} x {ny_pts}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx_pts,
            ny_pts,
        })
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x_min, self.x_max)
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.y_min, self.y_max)
    }

    pub fn resolution(&self) -> (usize, usize) {
        (self.nx_pts, self.ny_pts)
    }

    pub fn len(&self) -> usize {
        self.nx_pts * self.ny_pts
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        lerp(self.x_min, self.x_max, i, self.nx_pts)
    }

    pub fn y(&self, j: usize) -> f64 {
        lerp(self.y_min, self.y_max, j, self.ny_pts)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    pub fn diameter(&self) -> f64 {
        (self.x_max - self.x_min).hypot(self.y_max - self.y_min)
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.ny_pts).flat_map(move |j| (0..self.nx_pts).map(move |i| (self.x(i), self.y(j))))
    }
}

fn lerp(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
    if k + 1 == n {
        return hi;
    }
    lo + (hi - lo) * k as f64 / (n - 1) as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell<T> {
    pub x: f64,
    pub y: f64,
    /// `None` marks a nodal cell.
    pub value: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridTable<T> {
    pub spec: GridSpec,
    pub cells: Vec<GridCell<T>>,
}

impl<T> GridTable<T> {
    pub fn nodal_count(&self) -> usize {
        self.cells.iter().filter(|c| c.value.is_none()).count()
    }
}

/// Evaluates `field` at every grid point. `NodalRegion` results are flagged
/// in the table; any other error aborts the sampling.
pub fn sample_grid<T, F>(field: F, spec: &GridSpec) -> Result<GridTable<T>>
where
    F: Fn(f64, f64) -> Result<T>,
{
    let cells = spec
        .points()
        .map(|(x, y)| match field(x, y) {
            Ok(v) => Ok(GridCell {
                x,
                y,
                value: Some(v),
            }),
            Err(Error::NodalRegion { .. }) => Ok(GridCell { x, y, value: None }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridTable { spec: *spec, cells })
}
