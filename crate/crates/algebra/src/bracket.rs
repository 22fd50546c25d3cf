//! Structure constants of the Poincaré algebra, behind a trait so that
//! consistency tests can run the engine against sign-mutated variants.
//!
//! The brackets (with `η = diag(+,−,…,−)`):
//!
//! ```text
//! [P_μ, P_ν]        = 0
//! [J_{ρσ}, P_μ]     = i(η_{μρ} P_σ − η_{μσ} P_ρ)
//! [J_{μν}, J_{ρσ}]  = i(η_{μρ} J_{νσ} − η_{μσ} J_{νρ} − η_{νρ} J_{μσ} + η_{νσ} J_{μρ})
//! ```
//!
//! A bracket value is a scalar linear combination of generators (the algebra
//! is closed, degree never grows), returned as `(generator, coefficient)`
//! pairs with exact purely-imaginary coefficients.

use crate::gens::{eta, Gen};
use crate::scalar::{imag, Scalar};

/// Linear combination of generators with exact scalar coefficients.
pub type BracketValue = Vec<(Gen, Scalar)>;

/// Source of structure constants for the normal-ordering engine.
pub trait BracketProvider: Sync {
    /// The Lie bracket `[x, y]` expanded over canonical generators.
    fn bracket(&self, x: Gen, y: Gen) -> BracketValue;
}

/// The standard Poincaré structure constants.
#[derive(Clone, Copy, Debug, Default)]
pub struct Poincare;

/// Accumulates `coeff · J[μ,ν]` (arbitrary index order) into `out`.
fn push_j(out: &mut BracketValue, mu: u8, nu: u8, coeff: Scalar) {
    if let Some((g, sign)) = Gen::j(mu, nu) {
        let c = coeff * crate::scalar::int(sign);
        if !num_traits::Zero::is_zero(&c) {
            out.push((g, c));
        }
    }
}

/// `[J_{ρσ}, P_μ] = i(η_{μρ} P_σ − η_{μσ} P_ρ)`.
fn bracket_j_p(rho: u8, sigma: u8, mu: u8) -> BracketValue {
    let mut out = BracketValue::new();
    let c1 = eta(mu, rho);
    if c1 != 0 {
        out.push((Gen::p(sigma), imag(c1)));
    }
    let c2 = eta(mu, sigma);
    if c2 != 0 {
        out.push((Gen::p(rho), imag(-c2)));
    }
    out
}

/// `[J_{μν}, J_{ρσ}]` expanded over canonical generators.
fn bracket_j_j(mu: u8, nu: u8, rho: u8, sigma: u8) -> BracketValue {
    let mut out = BracketValue::new();
    push_j(&mut out, nu, sigma, imag(eta(mu, rho)));
    push_j(&mut out, nu, rho, imag(-eta(mu, sigma)));
    push_j(&mut out, mu, sigma, imag(-eta(nu, rho)));
    push_j(&mut out, mu, rho, imag(eta(nu, sigma)));
    merge(out)
}

/// Combines duplicate generators and drops zero coefficients.
fn merge(mut v: BracketValue) -> BracketValue {
    v.sort_by_key(|&(g, _)| g);
    let mut out = BracketValue::new();
    for (g, c) in v {
        match out.last_mut() {
            Some((lg, lc)) if *lg == g => *lc += c,
            _ => out.push((g, c)),
        }
    }
    out.retain(|(_, c)| !num_traits::Zero::is_zero(c));
    out
}

impl BracketProvider for Poincare {
    fn bracket(&self, x: Gen, y: Gen) -> BracketValue {
        match (x, y) {
            (Gen::P { .. }, Gen::P { .. }) => BracketValue::new(),
            (Gen::J { mu: r, nu: s }, Gen::P { mu }) => bracket_j_p(r, s, mu),
            (Gen::P { mu }, Gen::J { mu: r, nu: s }) => {
                let mut v = bracket_j_p(r, s, mu);
                for (_, c) in v.iter_mut() {
                    *c = -c.clone();
                }
                v
            }
            (Gen::J { mu, nu }, Gen::J { mu: rho, nu: sigma }) => {
                bracket_j_j(mu, nu, rho, sigma)
            }
        }
    }
}

/// Identifies one structure-constant slot: the coefficient of `target` in
/// the canonical bracket `[x, y]` (with `x`, `y` in stored canonical form).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FlipSlot {
    pub x: Gen,
    pub y: Gen,
    pub target: Gen,
}

/// A provider equal to [`Poincare`] except that one structure-constant sign
/// is flipped (consistently in `[x,y]` and `[y,x]`, preserving antisymmetry
/// so that the mutation is detectable only through the Jacobi identity).
#[derive(Clone, Copy, Debug)]
pub struct Mutated {
    pub flip: FlipSlot,
}

impl BracketProvider for Mutated {
    fn bracket(&self, x: Gen, y: Gen) -> BracketValue {
        let mut v = Poincare.bracket(x, y);
        let hit = (x == self.flip.x && y == self.flip.y)
            || (x == self.flip.y && y == self.flip.x);
        if hit {
            for (g, c) in v.iter_mut() {
                if *g == self.flip.target {
                    *c = -c.clone();
                }
            }
        }
        v
    }
}

/// Enumerates every nonzero structure-constant slot in dimension `d`
/// (unordered generator pairs, each nonzero coefficient once).
pub fn enumerate_flip_slots(d: u8) -> Vec<FlipSlot> {
    let gens = crate::gens::generators(d);
    let mut out = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in gens.iter().skip(i + 1) {
            for (target, _) in Poincare.bracket(x, y) {
                out.push(FlipSlot { x, y, target });
            }
        }
    }
    out
}
