//! Momentum-space laboratory for the relativistic position algebra.
//!
//! The crate realizes the one-particle operators on a uniform cubic grid
//! over the spatial momenta, with the energy determined by the mass shell.
//! Derivatives are second-order central differences with zero padding
//! outside the box; the inner product carries the Lorentz-invariant
//! measure weight.
//!
//! Layout:
//! - [`grid`]: grid geometry, mass-shell energies, quadrature weights.
//! - [`kernels`]: flat array primitives (weighted inner products, central
//!   differences, field multiplication). Each kernel has a sequential
//!   driver and, behind the `parallel` feature, a data-parallel driver
//!   that reduces in fixed chunk order so results are bitwise identical.
//! - [`state`]: wavefunctions, Gaussian test states, boundary-decay
//!   diagnostics.
//! - [`op`]: small operator-expression trees built from the kernels.
//! - [`ops`]: the physical operator catalog (momentum, Lorentz
//!   generators, position, deformed position, Newton–Wigner–Pryce,
//!   velocity) and the expected right-hand sides of their commutation
//!   relations.
//! - [`residual`]: hermiticity, commutator, and covariance residuals.
//! - [`convergence`]: slope fitting and the second-order contract.
//! - [`uncertainty`]: Robertson-bound margins.
//! - [`checks`]: the pinned check catalog and the ladder runner.

pub mod checks;
pub mod convergence;
pub mod grid;
pub mod kernels;
pub mod op;
pub mod ops;
pub mod residual;
pub mod state;
pub mod uncertainty;

pub use checks::{
    numeric_catalog, run_numeric_suite, CheckContext, LabError, NumericCheckDef, NumericResult,
    NumericRunConfig, DEFAULT_LADDER, MAGNITUDE_GRID,
};
pub use convergence::{fit_slope, order_contract_holds, GridSample, SlopeStatus, ORDER_WINDOW};
pub use grid::{Grid, GridError, GridSpec};
pub use op::Op;
pub use ops::Theta;
pub use state::{boundary_decay_ratio, gaussian_state, StateError, Wavefunction};
pub use uncertainty::{uncertainty_check, UncertaintyRecord};
