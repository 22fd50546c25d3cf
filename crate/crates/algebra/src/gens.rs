//! Generators of the Poincaré algebra and the PBW monomial order.
//!
//! Generators are the Lorentz generators `J[μ,ν]` (stored with μ < ν; the
//! opposite order is the negative) and the momenta `P[μ]`, with indices in
//! `0..d`. The metric is `diag(+,−,…,−)`.
//!
//! The normal (PBW) order puts every `J` before every `P`, lexicographically
//! within each kind; the derived `Ord` on [`Gen`] realizes exactly that
//! order, so a sorted word is a normal-ordered word.

/// A single algebra generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Gen {
    /// Lorentz generator `J[μ,ν]`, canonical with μ < ν.
    J { mu: u8, nu: u8 },
    /// Momentum `P[μ]`.
    P { mu: u8 },
}

impl Gen {
    /// Canonical Lorentz generator for arbitrary index order: returns the
    /// stored generator and the reordering sign, or `None` when μ = ν (the
    /// generator is identically zero).
    pub fn j(mu: u8, nu: u8) -> Option<(Gen, i64)> {
        use std::cmp::Ordering;
        match mu.cmp(&nu) {
            Ordering::Less => Some((Gen::J { mu, nu }, 1)),
            Ordering::Greater => Some((Gen::J { mu: nu, nu: mu }, -1)),
            Ordering::Equal => None,
        }
    }

    /// Momentum generator.
    pub fn p(mu: u8) -> Gen {
        Gen::P { mu }
    }

    /// Largest index mentioned (for dimension checks).
    pub fn max_index(&self) -> u8 {
        match *self {
            Gen::J { mu, nu } => mu.max(nu),
            Gen::P { mu } => mu,
        }
    }
}

/// Minkowski metric `η_{μν} = diag(+1, −1, …, −1)`; equals the inverse
/// metric `η^{μν}` componentwise.
pub fn eta(mu: u8, nu: u8) -> i64 {
    if mu != nu {
        0
    } else if mu == 0 {
        1
    } else {
        -1
    }
}

/// All generators in dimension `d`, in PBW order: the `d(d−1)/2` Lorentz
/// generators lexicographically, then the `d` momenta.
pub fn generators(d: u8) -> Vec<Gen> {
    let mut out = Vec::new();
    for mu in 0..d {
        for nu in (mu + 1)..d {
            out.push(Gen::J { mu, nu });
        }
    }
    for mu in 0..d {
        out.push(Gen::P { mu });
    }
    out
}
