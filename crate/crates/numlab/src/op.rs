//! The discrete-operator composition tree. Every named operator in the
//! laboratory (momenta, Lorentz generators, positions, velocity, the
//! deformed position, and all expected commutator right-hand sides) is
//! expressed in these primitives — there are no ad-hoc kernels:
//!
//! * multiplication by a named real field (`1`, `ω_p`, `1/ω_p`, `p_k`),
//! * the symmetric two-point central difference with zero padding,
//! * complex scalar scaling, sums, and products (composition).

use num_complex::Complex64;

use crate::kernels;
pub use crate::kernels::Field;
use crate::state::Wavefunction;

/// A discretized operator as a composition tree.
#[derive(Clone, Debug)]
pub enum Op {
    /// Pointwise multiplication by a named real field.
    Multiply(Field),
    /// Central difference along a spatial axis (0, 1, or 2).
    CentralDiff(usize),
    /// Complex scalar times an operator.
    Scale(Complex64, Box<Op>),
    /// Sum of operators.
    Sum(Vec<Op>),
    /// Product: `Compose([A, B])` applies `B` first, then `A`.
    Compose(Vec<Op>),
}

impl Op {
    pub fn scaled(self, c: Complex64) -> Op {
        Op::Scale(c, Box::new(self))
    }

    /// Applies the operator, allocating the output state.
    pub fn apply(&self, state: &Wavefunction) -> Wavefunction {
        match self {
            Op::Multiply(field) => {
                let mut out = Wavefunction::zeros(state.grid.clone());
                kernels::multiply_field(&state.grid, *field, &state.data, &mut out.data);
                out
            }
            Op::CentralDiff(axis) => {
                let mut out = Wavefunction::zeros(state.grid.clone());
                kernels::central_diff(&state.grid, *axis, &state.data, &mut out.data);
                out
            }
            Op::Scale(c, inner) => {
                let mut out = inner.apply(state);
                kernels::scale_in_place(&mut out.data, *c);
                out
            }
            Op::Sum(ops) => {
                let mut acc = Wavefunction::zeros(state.grid.clone());
                for op in ops {
                    let part = op.apply(state);
                    acc.axpy(Complex64::new(1.0, 0.0), &part);
                }
                acc
            }
            Op::Compose(ops) => {
                let mut current = state.clone();
                for op in ops.iter().rev() {
                    current = op.apply(&current);
                }
                current
            }
        }
    }

    /// The commutator action `A(Bφ) − B(Aφ)`.
    pub fn commutator_apply(a: &Op, b: &Op, state: &Wavefunction) -> Wavefunction {
        let mut ab = a.apply(&b.apply(state));
        let ba = b.apply(&a.apply(state));
        ab.axpy(Complex64::new(-1.0, 0.0), &ba);
        ab
    }
}
