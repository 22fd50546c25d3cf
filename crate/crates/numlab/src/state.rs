//! One-particle wavefunctions: complex samples on a shared grid, with the
//! invariant inner product `⟨ψ,φ⟩ = Σ conj(ψ)·φ·h³/(2ω_p)` and Gaussian
//! test-state construction.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::Grid;
use crate::kernels;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("states live on different grids")]
    GridMismatch,
    #[error(
        "gaussian support violates the grid extent: center {center:?}, width {width}, pmax {pmax}"
    )]
    SupportTooWide {
        center: [f64; 3],
        width: f64,
        pmax: f64,
    },
}

/// A complex-valued state sampled on a grid.
#[derive(Clone, Debug)]
pub struct Wavefunction {
    pub grid: Arc<Grid>,
    pub data: Vec<Complex64>,
}

impl Wavefunction {
    pub fn zeros(grid: Arc<Grid>) -> Wavefunction {
        let len = grid.len();
        Wavefunction {
            grid,
            data: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn from_fn(grid: Arc<Grid>, mut f: impl FnMut(usize) -> Complex64) -> Wavefunction {
        let data = (0..grid.len()).map(&mut f).collect();
        Wavefunction { grid, data }
    }

    /// Invariant inner product; conjugate-linear in `self`.
    pub fn inner(&self, other: &Wavefunction) -> Result<Complex64, StateError> {
        if !Arc::ptr_eq(&self.grid, &other.grid) && self.grid.spec != other.grid.spec {
            return Err(StateError::GridMismatch);
        }
        Ok(kernels::inner_weighted(
            &self.data,
            &other.data,
            &self.grid.weight,
        ))
    }

    pub fn norm(&self) -> f64 {
        let n2 = kernels::inner_weighted(&self.data, &self.data, &self.grid.weight);
        n2.re.max(0.0).sqrt()
    }

    pub fn normalized(&self) -> Wavefunction {
        let n = self.norm();
        let mut out = self.clone();
        kernels::scale_in_place(&mut out.data, Complex64::new(1.0 / n, 0.0));
        out
    }

    /// `self += c·other` elementwise.
    pub fn axpy(&mut self, c: Complex64, other: &Wavefunction) {
        kernels::axpy(&mut self.data, c, &other.data);
    }

    /// `‖self − other‖` under the invariant norm.
    pub fn distance(&self, other: &Wavefunction) -> f64 {
        let mut diff = self.clone();
        diff.axpy(Complex64::new(-1.0, 0.0), other);
        diff.norm()
    }
}

/// Unnormalized Gaussian `exp(−|p−center|²/(2·width²))`.
///
/// Support precondition: the center lies inside the grid extent and five
/// widths fit across the box (`5·width ≤ 2·pmax`), so the state decays by
/// construction; residual boundary amplitude is reported separately by
/// [`boundary_decay_ratio`].
pub fn gaussian_state(
    grid: &Arc<Grid>,
    center: [f64; 3],
    width: f64,
) -> Result<Wavefunction, StateError> {
    let pmax = grid.spec.pmax;
    let inside = center.iter().all(|c| c.abs() <= pmax);
    if !inside || !(width > 0.0) || 5.0 * width > 2.0 * pmax {
        return Err(StateError::SupportTooWide {
            center,
            width,
            pmax,
        });
    }
    let inv2w2 = 1.0 / (2.0 * width * width);
    Ok(Wavefunction::from_fn(grid.clone(), |t| {
        let dx = grid.coord(t, 0) - center[0];
        let dy = grid.coord(t, 1) - center[1];
        let dz = grid.coord(t, 2) - center[2];
        Complex64::new((-(dx * dx + dy * dy + dz * dz) * inv2w2).exp(), 0.0)
    }))
}

/// Largest amplitude within `margin` nodes of the boundary, relative to the
/// state's peak amplitude. Values above the decay threshold (1e−8) indicate
/// the stencil's zero padding is biting into visible support.
pub fn boundary_decay_ratio(state: &Wavefunction, margin: usize) -> f64 {
    let n = state.grid.spec.n;
    let mut peak = 0.0f64;
    let mut shell = 0.0f64;
    for (t, v) in state.data.iter().enumerate() {
        let a = v.norm();
        peak = peak.max(a);
        let near = (0..3).any(|axis| {
            let c = state.grid.axis_index(t, axis);
            c < margin || c + margin >= n
        });
        if near {
            shell = shell.max(a);
        }
    }
    if peak == 0.0 {
        0.0
    } else {
        shell / peak
    }
}

/// Decay threshold below which the zero-padded stencil is considered safe.
pub const DECAY_THRESHOLD: f64 = 1e-8;

/// Stencil margin (in nodes) over which decay is checked.
pub const DECAY_MARGIN: usize = 3;
