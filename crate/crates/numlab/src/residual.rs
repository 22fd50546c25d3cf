//! Residual measurements: hermiticity defect, commutator defect against an
//! expected right-hand side, and translation-covariance defect under the
//! exact phase conjugation.

use num_complex::Complex64;

use crate::op::Op;
use crate::ops;
use crate::state::Wavefunction;

/// `|⟨ψ, op φ⟩ − ⟨op ψ, φ⟩| / (‖ψ‖·‖φ‖)` under the invariant inner product.
pub fn hermiticity_residual(op: &Op, psi: &Wavefunction, phi: &Wavefunction) -> f64 {
    let op_phi = op.apply(phi);
    let op_psi = op.apply(psi);
    let forward = psi.inner(&op_phi).expect("same grid");
    let backward = op_psi.inner(phi).expect("same grid");
    (forward - backward).norm() / (psi.norm() * phi.norm())
}

/// `‖(A∘B − B∘A − expected)φ‖ / ‖φ‖`.
pub fn commutator_residual(a: &Op, b: &Op, expected: &Op, phi: &Wavefunction) -> f64 {
    let mut defect = Op::commutator_apply(a, b, phi);
    let rhs = expected.apply(phi);
    defect.axpy(Complex64::new(-1.0, 0.0), &rhs);
    defect.norm() / phi.norm()
}

fn multiply_pointwise(state: &Wavefunction, values: &[Complex64]) -> Wavefunction {
    let mut out = state.clone();
    for (o, v) in out.data.iter_mut().zip(values) {
        *o *= *v;
    }
    out
}

/// `‖U(a)·X_μ·U(−a)φ − (X_μ + a_μ − (a·p/m²)·pvec_μ)φ‖ / ‖φ‖` where `U(a)`
/// is exact pointwise multiplication by `exp(i(a_0ω − Σ a_k q_k))`.
pub fn translation_covariance_residual(
    mu: usize,
    a: [f64; 4],
    m: f64,
    phi: &Wavefunction,
) -> f64 {
    let grid = &phi.grid;
    let forward = ops::translation_phase(grid, a, 1.0);
    let backward = ops::translation_phase(grid, a, -1.0);
    let x = ops::x_op(mu, m);
    let conjugated = multiply_pointwise(&x.apply(&multiply_pointwise(phi, &backward)), &forward);
    let expected = ops::translation_expected(mu, a, m).apply(phi);
    let mut defect = conjugated;
    defect.axpy(Complex64::new(-1.0, 0.0), &expected);
    defect.norm() / phi.norm()
}

/// Distance between the direct expected-transport operator and its
/// velocity-form rewriting, applied to the same state (exact algebraic
/// identity; should sit at machine precision).
pub fn velocity_form_cross_check(mu: usize, a: [f64; 4], m: f64, phi: &Wavefunction) -> f64 {
    let direct = ops::translation_expected(mu, a, m).apply(phi);
    let vform = ops::translation_expected_velocity_form(mu, a, m).apply(phi);
    direct.distance(&vform) / phi.norm()
}
