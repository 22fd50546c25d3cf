//! Named operator builders.
//!
//! Index dictionary (applied once, here, and nowhere else): the grid stores
//! the three Euclidean momentum components `q_k` (the contravariant spatial
//! momenta) and the on-shell energy `ω`. Operator formulas stated with
//! covariant (lower-index) momenta and upper-index derivatives map into
//! this dictionary as `p_0 = p^0 = ω`, lower `p_j ↦ −q_j`, and
//! `∂/∂p^k ↦ ∇_k` (the plain grid gradient). Every builder below documents
//! its resulting Euclidean field expression; metric signs are folded at
//! construction time, never inside kernels.
//!
//! With `q·∇ = Σ_k q_k ∇_k`, the operators realized here are:
//!
//! * momenta: `P_0 = ω·`, `P_k = q_k·` (pure multiplications);
//! * boosts `J_{j0} = −i·ω·∇_j` and rotations `J_{ik} = +i(q_i∇_k − q_k∇_i)`;
//! * time position `X_0 = −(i/m²)·ω·(3/2 + q·∇)`;
//! * space position `X_j = −i(3q_j/(2m²) + (q_j/m²)·q·∇ + ∇_j)`;
//! * Newton–Wigner–Pryce `X^NWP_j = −i(∇_j − q_j/(2ω²))` and the exact
//!   remainder `X_j − X^NWP_j = −i·(q_j/(2m²))·(3 + m²/ω² + 2·q·∇)`;
//! * velocity `V_0 = 1·`, `V_k = (q_k/ω)·`;
//! * the deformed position `X^Θ_μ = X_μ + (Θp)_μ·` with the multiplication
//!   fields `(Θp)_0 = −Σ_k Θ_{0k} q_k` and `(Θp)_j = Θ_{j0}·ω − Σ_k Θ_{jk} q_k`.
//!
//! Expected right-hand sides of the commutator checks use the four-vector
//! of grid fields `pvec = (ω, q_1, q_2, q_3)` and the metric
//! `η = diag(+1,−1,−1,−1)`.

use num_complex::Complex64;

use crate::grid::Grid;
use crate::op::{Field, Op};

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Metric signature diag(+1, −1, −1, −1).
pub fn eta(mu: usize, nu: usize) -> f64 {
    if mu != nu {
        0.0
    } else if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Multiplication by the grid field `pvec_μ` (ω for μ=0, else `q_μ`).
pub fn momentum_field(mu: usize) -> Op {
    if mu == 0 {
        Op::Multiply(Field::Omega)
    } else {
        Op::Multiply(Field::Momentum(mu - 1))
    }
}

/// The momentum operator `P_μ` (pure multiplication).
pub fn p_op(mu: usize) -> Op {
    momentum_field(mu)
}

/// `q·∇ = Σ_k q_k ∇_k`.
pub fn radial_derivative() -> Op {
    Op::Sum(
        (0..3)
            .map(|axis| {
                Op::Compose(vec![
                    Op::Multiply(Field::Momentum(axis)),
                    Op::CentralDiff(axis),
                ])
            })
            .collect(),
    )
}

/// Boost generator `J_{j0} = −i·ω·∇_j` for spatial `j ∈ {1,2,3}`.
pub fn boost(j: usize) -> Op {
    assert!((1..=3).contains(&j));
    Op::Compose(vec![Op::Multiply(Field::Omega), Op::CentralDiff(j - 1)]).scaled(im(-1.0))
}

/// Rotation generator `J_{ik} = +i(q_i ∇_k − q_k ∇_i)` for spatial `i≠k`.
pub fn rotation(i: usize, k: usize) -> Op {
    assert!((1..=3).contains(&i) && (1..=3).contains(&k) && i != k);
    Op::Sum(vec![
        Op::Compose(vec![
            Op::Multiply(Field::Momentum(i - 1)),
            Op::CentralDiff(k - 1),
        ]),
        Op::Compose(vec![
            Op::Multiply(Field::Momentum(k - 1)),
            Op::CentralDiff(i - 1),
        ])
        .scaled(re(-1.0)),
    ])
    .scaled(im(1.0))
}

/// The lower-index Lorentz generator `J_{μν}`: `J_{j0} = boost(j)`,
/// `J_{0j} = −boost(j)`, `J_{ik} = rotation(i,k)`; `None` on the diagonal.
pub fn j_lower(mu: usize, nu: usize) -> Option<Op> {
    match (mu, nu) {
        (m, n) if m == n => None,
        (j, 0) => Some(boost(j)),
        (0, j) => Some(boost(j).scaled(re(-1.0))),
        (i, k) => Some(rotation(i, k)),
    }
}

/// Time position `X_0 = −(i/m²)·ω·(3/2 + q·∇)`.
pub fn x0(m: f64) -> Op {
    Op::Compose(vec![
        Op::Multiply(Field::Omega),
        Op::Sum(vec![
            Op::Multiply(Field::One).scaled(re(1.5)),
            radial_derivative(),
        ]),
    ])
    .scaled(im(-1.0 / (m * m)))
}

/// Space position `X_j = −i(3q_j/(2m²) + (q_j/m²)·q·∇ + ∇_j)`.
pub fn xj(j: usize, m: f64) -> Op {
    assert!((1..=3).contains(&j));
    let m2 = m * m;
    Op::Sum(vec![
        Op::Multiply(Field::Momentum(j - 1)).scaled(re(1.5 / m2)),
        Op::Compose(vec![
            Op::Multiply(Field::Momentum(j - 1)),
            radial_derivative(),
        ])
        .scaled(re(1.0 / m2)),
        Op::CentralDiff(j - 1),
    ])
    .scaled(im(-1.0))
}

/// The position operator `X_μ`.
pub fn x_op(mu: usize, m: f64) -> Op {
    if mu == 0 {
        x0(m)
    } else {
        xj(mu, m)
    }
}

/// Newton–Wigner–Pryce position `X^NWP_j = −i(∇_j − q_j/(2ω²))`.
pub fn nwp(j: usize) -> Op {
    assert!((1..=3).contains(&j));
    Op::Sum(vec![
        Op::CentralDiff(j - 1),
        Op::Compose(vec![
            Op::Multiply(Field::InvOmega),
            Op::Multiply(Field::InvOmega),
            Op::Multiply(Field::Momentum(j - 1)),
        ])
        .scaled(re(-0.5)),
    ])
    .scaled(im(-1.0))
}

/// The exact remainder `X_j − X^NWP_j = −i·(q_j/(2m²))·(3 + m²/ω² + 2·q·∇)`.
pub fn nwp_remainder(j: usize, m: f64) -> Op {
    assert!((1..=3).contains(&j));
    let m2 = m * m;
    Op::Compose(vec![
        Op::Multiply(Field::Momentum(j - 1)),
        Op::Sum(vec![
            Op::Multiply(Field::One).scaled(re(3.0)),
            Op::Compose(vec![
                Op::Multiply(Field::InvOmega),
                Op::Multiply(Field::InvOmega),
            ])
            .scaled(re(m2)),
            radial_derivative().scaled(re(2.0)),
        ]),
    ])
    .scaled(im(-0.5 / m2))
}

/// Velocity `V_0 = 1·`, `V_k = (q_k/ω)·`.
pub fn velocity(mu: usize) -> Op {
    if mu == 0 {
        Op::Multiply(Field::One)
    } else {
        Op::Compose(vec![
            Op::Multiply(Field::InvOmega),
            Op::Multiply(Field::Momentum(mu - 1)),
        ])
    }
}

/// A constant real skew-symmetric 4×4 matrix, built from its six
/// independent upper-triangle entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Theta {
    entries: [[f64; 4]; 4],
}

impl Theta {
    /// Upper entries ordered `(01, 02, 03, 12, 13, 23)`.
    pub fn from_upper(upper: [f64; 6]) -> Theta {
        let mut entries = [[0.0; 4]; 4];
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (value, (mu, nu)) in upper.iter().zip(pairs) {
            entries[mu][nu] = *value;
            entries[nu][mu] = -*value;
        }
        Theta { entries }
    }

    pub fn zero() -> Theta {
        Theta::from_upper([0.0; 6])
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.entries[mu][nu]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Theta {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for v in row.iter_mut() {
                *v *= factor;
            }
        }
        out
    }
}

/// Multiplication by the deformation field `(Θp)_μ`:
/// `(Θp)_0 = −Σ_k Θ_{0k} q_k`, `(Θp)_j = Θ_{j0}·ω − Σ_k Θ_{jk} q_k`.
/// Terms with zero coefficients are omitted; an all-zero row yields `None`.
pub fn theta_p_field(mu: usize, theta: &Theta) -> Option<Op> {
    let mut terms = Vec::new();
    let omega_coeff = if mu == 0 { 0.0 } else { theta.get(mu, 0) };
    if omega_coeff != 0.0 {
        terms.push(Op::Multiply(Field::Omega).scaled(re(omega_coeff)));
    }
    for k in 1..=3usize {
        let c = -theta.get(mu, k);
        if c != 0.0 {
            terms.push(Op::Multiply(Field::Momentum(k - 1)).scaled(re(c)));
        }
    }
    if terms.is_empty() {
        None
    } else {
        Some(Op::Sum(terms))
    }
}

/// The deformed position `X^Θ_μ = X_μ + (Θp)_μ·`. With `Θ = 0` this is the
/// very same tree as `X_μ`, so the outputs agree bitwise.
pub fn x_theta(mu: usize, m: f64, theta: &Theta) -> Op {
    match theta_p_field(mu, theta) {
        None => x_op(mu, m),
        Some(field) => Op::Sum(vec![x_op(mu, m), field]),
    }
}

/// Expected value of `[X_μ, P_ν]`: multiplication by
/// `i(η_{μν} − pvec_μ·pvec_ν/m²)`.
pub fn expected_xp_rhs(mu: usize, nu: usize, m: f64) -> Op {
    Op::Sum(vec![
        Op::Multiply(Field::One).scaled(re(eta(mu, nu))),
        Op::Compose(vec![momentum_field(mu), momentum_field(nu)]).scaled(re(-1.0 / (m * m))),
    ])
    .scaled(im(1.0))
}

/// Expected value of `[X_μ, X_ν]`: `−(i/m²)·J_{μν}`.
pub fn expected_xx_rhs(mu: usize, nu: usize, m: f64) -> Op {
    let j = j_lower(mu, nu).expect("distinct indices");
    j.scaled(im(-1.0 / (m * m)))
}

/// Expected value of the deformed commutator `[X^Θ_μ, X^Θ_ν]`:
/// `−(i/m²)·J_{μν} − 2i·Θ_{μν} + (i/m²)·((Θp)_μ·pvec_ν − (Θp)_ν·pvec_μ)`.
pub fn expected_xtxt_rhs(mu: usize, nu: usize, m: f64, theta: &Theta) -> Op {
    let m2 = m * m;
    let mut terms = vec![expected_xx_rhs(mu, nu, m)];
    let c = theta.get(mu, nu);
    if c != 0.0 {
        terms.push(Op::Multiply(Field::One).scaled(im(-2.0 * c)));
    }
    if let Some(tp_mu) = theta_p_field(mu, theta) {
        terms.push(Op::Compose(vec![tp_mu, momentum_field(nu)]).scaled(im(1.0 / m2)));
    }
    if let Some(tp_nu) = theta_p_field(nu, theta) {
        terms.push(Op::Compose(vec![tp_nu, momentum_field(mu)]).scaled(im(-1.0 / m2)));
    }
    Op::Sum(terms)
}

/// Multiplication by `a·p = a_0·ω − Σ_k a_k·q_k`.
pub fn a_dot_p_field(a: [f64; 4]) -> Op {
    let mut terms = Vec::new();
    if a[0] != 0.0 {
        terms.push(Op::Multiply(Field::Omega).scaled(re(a[0])));
    }
    for k in 1..=3usize {
        if a[k] != 0.0 {
            terms.push(Op::Multiply(Field::Momentum(k - 1)).scaled(re(-a[k])));
        }
    }
    if terms.is_empty() {
        Op::Multiply(Field::One).scaled(re(0.0))
    } else {
        Op::Sum(terms)
    }
}

/// Expected translation transport of position:
/// `X_μ + a_μ − (a·p/m²)·pvec_μ`.
pub fn translation_expected(mu: usize, a: [f64; 4], m: f64) -> Op {
    Op::Sum(vec![
        x_op(mu, m),
        Op::Multiply(Field::One).scaled(re(a[mu])),
        Op::Compose(vec![a_dot_p_field(a), momentum_field(mu)]).scaled(re(-1.0 / (m * m))),
    ])
}

/// The same expected transport with every momentum factor rewritten
/// through the velocity operator (`pvec_μ = ω·V_μ`); used as an exact
/// algebraic cross-check of the direct form.
pub fn translation_expected_velocity_form(mu: usize, a: [f64; 4], m: f64) -> Op {
    let omega_v = |idx: usize| Op::Compose(vec![Op::Multiply(Field::Omega), velocity(idx)]);
    let mut adotp_terms = Vec::new();
    if a[0] != 0.0 {
        adotp_terms.push(omega_v(0).scaled(re(a[0])));
    }
    for k in 1..=3usize {
        if a[k] != 0.0 {
            adotp_terms.push(omega_v(k).scaled(re(-a[k])));
        }
    }
    let adotp = if adotp_terms.is_empty() {
        Op::Multiply(Field::One).scaled(re(0.0))
    } else {
        Op::Sum(adotp_terms)
    };
    Op::Sum(vec![
        x_op(mu, m),
        Op::Multiply(Field::One).scaled(re(a[mu])),
        Op::Compose(vec![adotp, omega_v(mu)]).scaled(re(-1.0 / (m * m))),
    ])
}

/// The exact pointwise translation phase `exp(s·i·(a_0·ω − Σ_k a_k·q_k))`
/// with `s = ±1`.
pub fn translation_phase(grid: &Grid, a: [f64; 4], sign: f64) -> Vec<Complex64> {
    (0..grid.len())
        .map(|t| {
            let mut phase = a[0] * grid.omega[t];
            for k in 0..3 {
                phase -= a[k + 1] * grid.coord(t, k);
            }
            Complex64::from_polar(1.0, sign * phase)
        })
        .collect()
}
