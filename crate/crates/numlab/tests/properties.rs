//! Property tests for the kernel and operator layer on small grids.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use worldline_numlab::grid::{Grid, GridSpec};
use worldline_numlab::kernels;
use worldline_numlab::ops::{self, Theta};
use worldline_numlab::residual::{hermiticity_residual, velocity_form_cross_check};
use worldline_numlab::state::{gaussian_state, Wavefunction};

fn small_grid(pmax: f64) -> std::sync::Arc<Grid> {
    Grid::new(GridSpec {
        n: 11,
        pmax,
        mass: 1.0,
    })
    .expect("valid grid")
}

fn random_state(grid: &std::sync::Arc<Grid>, seed: u64) -> Wavefunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Wavefunction::from_fn(grid.clone(), |_| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The weighted inner product is conjugate-symmetric bit-for-bit:
    /// conjugation commutes with every partial sum.
    #[test]
    fn inner_product_conjugate_symmetry_is_exact(seed_a in any::<u64>(), seed_b in any::<u64>()) {
        let grid = small_grid(2.5);
        let a = random_state(&grid, seed_a);
        let b = random_state(&grid, seed_b);
        let ab = a.inner(&b).unwrap();
        let ba = b.inner(&a).unwrap();
        prop_assert_eq!(ab.re, ba.re);
        prop_assert_eq!(ab.im, -ba.im);
    }

    /// With zero padding the central difference is skew-adjoint under the
    /// plain (unweighted) sum: summation by parts telescopes exactly.
    #[test]
    fn central_difference_is_skew_adjoint_under_plain_sum(
        seed_a in any::<u64>(),
        seed_b in any::<u64>(),
        axis in 0usize..3,
    ) {
        let grid = small_grid(2.5);
        let a = random_state(&grid, seed_a);
        let b = random_state(&grid, seed_b);
        let mut da = vec![Complex64::new(0.0, 0.0); grid.len()];
        let mut db = vec![Complex64::new(0.0, 0.0); grid.len()];
        kernels::central_diff(&grid, axis, &a.data, &mut da);
        kernels::central_diff(&grid, axis, &b.data, &mut db);
        let forward: Complex64 = a.data.iter().zip(&db).map(|(x, y)| x.conj() * y).sum();
        let backward: Complex64 = da.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum();
        let scale: f64 = a.data.iter().map(|z| z.norm()).sum::<f64>()
            * b.data.iter().map(|z| z.norm()).sum::<f64>()
            / grid.len() as f64;
        prop_assert!((forward + backward).norm() <= 1e-12 * scale.max(1.0));
    }

    /// Momentum components are hermitian to machine precision on any
    /// admissible Gaussian pair.
    #[test]
    fn momentum_is_hermitian_on_gaussians(
        cx in -0.8f64..0.8,
        cy in -0.8f64..0.8,
        cz in -0.8f64..0.8,
        width in 0.4f64..0.8,
        mu in 0usize..4,
    ) {
        let grid = small_grid(2.5);
        let psi = gaussian_state(&grid, [cx, cy, cz], width).unwrap();
        let phi = gaussian_state(&grid, [-cy, cz, cx], width).unwrap();
        prop_assert!(hermiticity_residual(&ops::p_op(mu), &psi, &phi) <= 1e-13);
    }

    /// The deformed position is exactly affine in the skew matrix.
    #[test]
    fn deformation_shift_is_linear_in_theta(
        upper in prop::array::uniform6(-1.0f64..1.0),
        seed in any::<u64>(),
        mu in 0usize..4,
        mass in 0.5f64..2.0,
    ) {
        let grid = Grid::new(GridSpec { n: 11, pmax: 2.5, mass }).unwrap();
        let phi = random_state(&grid, seed);
        let th = Theta::from_upper(upper);
        let th2 = th.scaled(2.0);
        let base = ops::x_op(mu, mass).apply(&phi);
        let mut d1 = ops::x_theta(mu, mass, &th).apply(&phi);
        d1.axpy(Complex64::new(-1.0, 0.0), &base);
        let mut d2 = ops::x_theta(mu, mass, &th2).apply(&phi);
        d2.axpy(Complex64::new(-1.0, 0.0), &base);
        d2.axpy(Complex64::new(-2.0, 0.0), &d1);
        prop_assert!(d2.norm() <= 1e-13 * phi.norm().max(1.0));
    }

    /// Position minus the Newton–Wigner–Pryce operator equals the closed-
    /// form remainder at machine precision, discretely and for any mass.
    #[test]
    fn nwp_remainder_is_exact(
        cx in -0.8f64..0.8,
        width in 0.4f64..0.8,
        mass in 0.5f64..2.0,
        j in 1usize..4,
    ) {
        let grid = Grid::new(GridSpec { n: 11, pmax: 2.5, mass }).unwrap();
        let phi = gaussian_state(&grid, [cx, -cx, 0.3], width).unwrap();
        let x = ops::x_op(j, mass).apply(&phi);
        let mut reassembled = ops::nwp(j).apply(&phi);
        let rem = ops::nwp_remainder(j, mass).apply(&phi);
        reassembled.axpy(Complex64::new(1.0, 0.0), &rem);
        prop_assert!(x.distance(&reassembled) <= 1e-12 * phi.norm());
    }

    /// The velocity-operator rewrite of the expected translation transport
    /// agrees with the direct form at machine precision.
    #[test]
    fn velocity_rewrite_matches_direct_transport(
        a0 in -0.5f64..0.5,
        a1 in -0.5f64..0.5,
        a3 in -0.5f64..0.5,
        mass in 0.5f64..2.0,
        mu in 0usize..4,
        seed in any::<u64>(),
    ) {
        let grid = Grid::new(GridSpec { n: 11, pmax: 2.5, mass }).unwrap();
        let phi = random_state(&grid, seed);
        let residual = velocity_form_cross_check(mu, [a0, a1, 0.0, a3], mass, &phi);
        prop_assert!(residual <= 1e-13);
    }
}
