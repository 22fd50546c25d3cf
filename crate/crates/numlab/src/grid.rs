//! Uniform Cartesian momentum grid over `[-pmax, pmax]³` with the
//! on-shell energy `ω_p = sqrt(m² + |p|²)` and the invariant measure
//! weight `h³/(2ω_p)` cached per node. The point count per axis is odd so
//! the origin is a grid node; grids are immutable after construction and
//! shared behind `Arc`.

use std::sync::Arc;

use thiserror::Error;

/// Grid construction parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Points per axis; odd and at least 9.
    pub n: usize,
    /// Momentum half-extent (in units of the mass).
    pub pmax: f64,
    /// Particle mass; strictly positive.
    pub mass: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("points per axis must be odd and at least 9, got {0}")]
    BadPointCount(usize),
    #[error("momentum half-extent must be positive and finite, got {0}")]
    BadExtent(f64),
    #[error("mass must be positive and finite, got {0}")]
    BadMass(f64),
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), GridError> {
        if self.n < 9 || self.n % 2 == 0 {
            return Err(GridError::BadPointCount(self.n));
        }
        if !(self.pmax > 0.0) || !self.pmax.is_finite() {
            return Err(GridError::BadExtent(self.pmax));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(GridError::BadMass(self.mass));
        }
        Ok(())
    }

    /// Grid spacing `h = 2·pmax/(N−1)`.
    pub fn h(&self) -> f64 {
        2.0 * self.pmax / (self.n as f64 - 1.0)
    }
}

/// A constructed grid with cached per-node energy and measure weight.
#[derive(Debug)]
pub struct Grid {
    pub spec: GridSpec,
    /// The N axis coordinates `-pmax + i·h`.
    pub axis: Vec<f64>,
    /// `ω_p` per node, flattened with index `(i·N + j)·N + k`.
    pub omega: Vec<f64>,
    /// Inner-product weight `h³/(2ω_p)` per node.
    pub weight: Vec<f64>,
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Arc<Grid>, GridError> {
        spec.validate()?;
        let n = spec.n;
        let h = spec.h();
        let axis: Vec<f64> = (0..n).map(|i| -spec.pmax + h * i as f64).collect();
        let m2 = spec.mass * spec.mass;
        let h3 = h * h * h;
        let len = n * n * n;
        let mut omega = Vec::with_capacity(len);
        let mut weight = Vec::with_capacity(len);
        for &qi in &axis {
            for &qj in &axis {
                for &qk in &axis {
                    let w = (m2 + qi * qi + qj * qj + qk * qk).sqrt();
                    omega.push(w);
                    weight.push(h3 / (2.0 * w));
                }
            }
        }
        Ok(Arc::new(Grid {
            spec,
            axis,
            omega,
            weight,
        }))
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Flat index of the node `(i, j, k)`.
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.spec.n + j) * self.spec.n + k
    }

    /// Flat-index stride of a unit step along the given spatial axis.
    pub fn stride(&self, axis: usize) -> usize {
        let n = self.spec.n;
        match axis {
            0 => n * n,
            1 => n,
            2 => 1,
            _ => panic!("axis out of range: {axis}"),
        }
    }

    /// The axis-index of node `t` along `axis`.
    pub fn axis_index(&self, t: usize, axis: usize) -> usize {
        (t / self.stride(axis)) % self.spec.n
    }

    /// The momentum coordinate of node `t` along `axis`.
    pub fn coord(&self, t: usize, axis: usize) -> f64 {
        self.axis[self.axis_index(t, axis)]
    }
}
