//! Robertson uncertainty data for the position-momentum pair: with the
//! commutator `[X_j, P_j] = i(η_{jj} − p_jp_j/m²)` the bound reads
//! `ΔX_j·ΔP_j ≥ ½|⟨φ, i(η_{jj} − p_jp_j/m²)φ⟩|`. Spreads are computed as
//! `ΔA² = ‖Aφ‖² − (Re⟨φ,Aφ⟩)²` on normalized states, which is robust to the
//! O(h²) hermiticity defect of the discrete position operator.

use crate::ops;
use crate::state::Wavefunction;

/// One uncertainty evaluation.
#[derive(Clone, Copy, Debug)]
pub struct UncertaintyRecord {
    pub dx: f64,
    pub dp: f64,
    pub bound: f64,
    /// `ΔX·ΔP − bound`; the inequality demands this be nonnegative up to
    /// discretization error.
    pub margin: f64,
}

fn spread(op: &crate::op::Op, phi: &Wavefunction) -> f64 {
    let a_phi = op.apply(phi);
    let mean = phi.inner(&a_phi).expect("same grid").re;
    let second = a_phi.inner(&a_phi).expect("same grid").re;
    (second - mean * mean).max(0.0).sqrt()
}

/// Evaluates the Robertson data for spatial direction `j ∈ {1,2,3}` on a
/// normalized state.
pub fn uncertainty_check(j: usize, m: f64, phi_normalized: &Wavefunction) -> UncertaintyRecord {
    assert!((1..=3).contains(&j));
    let phi = phi_normalized;
    let dx = spread(&ops::x_op(j, m), phi);
    let dp = spread(&ops::p_op(j), phi);
    let rhs = ops::expected_xp_rhs(j, j, m).apply(phi);
    let bound = 0.5 * phi.inner(&rhs).expect("same grid").norm();
    UncertaintyRecord {
        dx,
        dp,
        bound,
        margin: dx * dp - bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid, GridSpec};
    use crate::state::gaussian_state;

    #[test]
    fn centered_gaussian_has_zero_position_expectation() {
        let g = Grid::new(GridSpec { n: 33, pmax: 6.0, mass: 1.0 }).unwrap();
        let phi = gaussian_state(&g, [0.0; 3], 1.0).unwrap().normalized();
        for j in 1..=3 {
            let x_phi = ops::x_op(j, 1.0).apply(&phi);
            let mean = phi.inner(&x_phi).unwrap();
            assert!(mean.norm() < 1e-10, "j={j}: ⟨X_j⟩ = {mean}");
        }
    }

    #[test]
    fn broad_gaussian_satisfies_the_bound() {
        let g = Grid::new(GridSpec { n: 33, pmax: 6.0, mass: 1.0 }).unwrap();
        let phi = gaussian_state(&g, [0.0; 3], 1.0).unwrap().normalized();
        for j in 1..=3 {
            let rec = uncertainty_check(j, 1.0, &phi);
            assert!(rec.margin >= -1e-6, "j={j}: margin {}", rec.margin);
            assert!(rec.bound > 0.49, "bound must exceed the flat-space half");
        }
    }

    #[test]
    fn narrow_momentum_state_still_respects_the_bound() {
        let g = Grid::new(GridSpec { n: 65, pmax: 6.0, mass: 1.0 }).unwrap();
        let phi = gaussian_state(&g, [0.4, 0.0, -0.2], 0.5).unwrap().normalized();
        for j in 1..=3 {
            let rec = uncertainty_check(j, 1.0, &phi);
            assert!(rec.dp < 1.0, "narrow state has small ΔP");
            assert!(rec.margin >= -1e-6, "j={j}: margin {}", rec.margin);
        }
    }
}
