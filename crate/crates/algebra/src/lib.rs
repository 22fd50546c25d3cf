//! Exact operator algebra for a relativistic position construction.
//!
//! This crate normal-orders words in the Poincaré generators (Lorentz
//! generators `J[μ,ν]` and momenta `P[μ]`) over exact rational-complex
//! coefficients, localized at the central mass Casimir `M² = P·P`. On top of
//! the normal-ordering core it defines the covariant position operator
//! `X[μ]` (a symmetrized Lorentz-momentum bilinear over the Casimir), its
//! skew-matrix deformation `XT[μ]`, finite translation adjoints (the series
//! terminates exactly), and a catalog of verified operator identities with
//! failure witnesses.
//!
//! Design rules the engine enforces:
//!
//! * coefficients are exact (`BigRational` complex numbers) — no floats;
//! * elements carry a single global power of `1/M²`; arithmetic lifts to a
//!   common power by multiplying numerators by `M²` (never by dividing);
//! * equality is decided by cross-multiplied subtraction, never division;
//! * no arithmetic operation silently cancels `M²` factors — cancellation
//!   happens only in the explicit, purely cosmetic [`Element::reduce_denominator`].
//!
//! The `parallel` feature (on by default) runs catalog verification on a
//! rayon pool; disabling it gives a dependency-free sequential build with
//! bitwise-identical results.

pub mod bracket;
pub mod element;
pub mod expr;
pub mod gens;
pub mod ops;
pub mod params;
pub mod scalar;
pub mod verify;

pub use bracket::{BracketProvider, FlipSlot, Mutated, Poincare};
pub use element::Element;
pub use expr::{eval_str, format_element, ExprError};
pub use gens::{eta, generators, Gen};
pub use verify::{
    catalog, jacobi_mutation_scan, momentum_position_contraction, verify_catalog,
    verify_catalog_seq, IdentityRecord, Status,
};
