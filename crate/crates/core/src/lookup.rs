//! Interpolated lookup tables backing the battery and plant curves.
//!
//! All tables use linear interpolation and clamp queries to the table
//! domain. Breakpoints must be strictly increasing.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("table needs at least 2 breakpoints, got {0}")]
    TooFewPoints(usize),
    #[error("breakpoints must be strictly increasing at index {0}")]
    NotIncreasing(usize),
    #[error("values must be strictly increasing at index {0}")]
    ValuesNotIncreasing(usize),
    #[error("values must be strictly positive at index {0}")]
    NotPositive(usize),
    #[error("grid size mismatch: expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("malformed table row {row}: {msg}")]
    Parse { row: usize, msg: String },
}

fn check_axis(xs: &[f64]) -> Result<(), TableError> {
    if xs.len() < 2 {
        return Err(TableError::TooFewPoints(xs.len()));
    }
    for i in 1..xs.len() {
        if xs[i] <= xs[i - 1] {
            return Err(TableError::NotIncreasing(i));
        }
    }
    Ok(())
}

/// Locate `x` on the axis: returns (left index, interpolation weight), clamped.
fn locate(xs: &[f64], x: f64) -> (usize, f64) {
    if x <= xs[0] {
        return (0, 0.0);
    }
    let last = xs.len() - 1;
    if x >= xs[last] {
        return (last - 1, 1.0);
    }
    // partition_point: first index with xs[i] > x, so left = idx - 1
    let idx = xs.partition_point(|&v| v <= x);
    let lo = idx - 1;
    let w = (x - xs[lo]) / (xs[lo + 1] - xs[lo]);
    (lo, w)
}

/// One-dimensional piecewise-linear table, clamped at the edges.
#[derive(Debug, Clone)]
pub struct Table1d {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Table1d {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, TableError> {
        check_axis(&xs)?;
        if ys.len() != xs.len() {
            return Err(TableError::SizeMismatch {
                expected: xs.len(),
                got: ys.len(),
            });
        }
        Ok(Self { xs, ys })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, w) = locate(&self.xs, x);
        self.ys[lo] * (1.0 - w) + self.ys[lo + 1] * w
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    /// Require strictly increasing values (used by the OCV curve).
    pub fn require_increasing(&self) -> Result<(), TableError> {
        for i in 1..self.ys.len() {
            if self.ys[i] <= self.ys[i - 1] {
                return Err(TableError::ValuesNotIncreasing(i));
            }
        }
        Ok(())
    }

    /// Require strictly positive values (used by resistance surfaces).
    pub fn require_positive(&self) -> Result<(), TableError> {
        for (i, &y) in self.ys.iter().enumerate() {
            if y <= 0.0 {
                return Err(TableError::NotPositive(i));
            }
        }
        Ok(())
    }
}

/// Two-dimensional bilinear table over (x, y), clamped at the edges.
#[derive(Debug, Clone)]
pub struct Table2d {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Row-major: values[ix * ys.len() + iy]
    values: Vec<f64>,
}

impl Table2d {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, values: Vec<f64>) -> Result<Self, TableError> {
        check_axis(&xs)?;
        check_axis(&ys)?;
        if values.len() != xs.len() * ys.len() {
            return Err(TableError::SizeMismatch {
                expected: xs.len() * ys.len(),
                got: values.len(),
            });
        }
        Ok(Self { xs, ys, values })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (ix, wx) = locate(&self.xs, x);
        let (iy, wy) = locate(&self.ys, y);
        let n = self.ys.len();
        let v00 = self.values[ix * n + iy];
        let v01 = self.values[ix * n + iy + 1];
        let v10 = self.values[(ix + 1) * n + iy];
        let v11 = self.values[(ix + 1) * n + iy + 1];
        v00 * (1.0 - wx) * (1.0 - wy)
            + v01 * (1.0 - wx) * wy
            + v10 * wx * (1.0 - wy)
            + v11 * wx * wy
    }

    pub fn require_positive(&self) -> Result<(), TableError> {
        for (i, &v) in self.values.iter().enumerate() {
            if v <= 0.0 {
                return Err(TableError::NotPositive(i));
            }
        }
        Ok(())
    }

    pub fn x_axis(&self) -> &[f64] {
        &self.xs
    }

    pub fn y_axis(&self) -> &[f64] {
        &self.ys
    }
}
