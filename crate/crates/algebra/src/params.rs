//! Formal commuting parameters and polynomial coefficients.
//!
//! Identities involving a translation vector or a constant skew-symmetric
//! deformation matrix must hold for *all* parameter values, so coefficients
//! are polynomials over formal variables rather than sampled numbers:
//!
//! * `a[μ]` — covariant components of a translation four-vector,
//! * `th[μ,ν]` — independent upper-triangle entries of a skew-symmetric
//!   matrix Θ (entries with μ > ν are rewritten as `-th[ν,μ]`, the diagonal
//!   is zero).
//!
//! A [`Poly`] is a sparse multivariate polynomial with [`Scalar`]
//! (Gaussian-rational) coefficients; equality is exact structural equality
//! of the canonical form.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::{self, Scalar};

/// A formal scalar parameter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ParamId {
    /// Translation component `a[μ]` (covariant index).
    A(u8),
    /// Skew-matrix entry `th[μ,ν]` with μ < ν (canonical upper triangle).
    Th(u8, u8),
}

impl ParamId {
    /// The translation parameter `a[μ]`.
    pub fn a(mu: u8) -> ParamId {
        ParamId::A(mu)
    }

    /// Canonical skew-matrix entry for arbitrary index order: returns the
    /// upper-triangle parameter together with the sign picked up by
    /// reordering, or `None` for a diagonal entry (which is identically
    /// zero).
    pub fn th(mu: u8, nu: u8) -> Option<(ParamId, i64)> {
        use std::cmp::Ordering;
        match mu.cmp(&nu) {
            Ordering::Less => Some((ParamId::Th(mu, nu), 1)),
            Ordering::Greater => Some((ParamId::Th(nu, mu), -1)),
            Ordering::Equal => None,
        }
    }
}

/// A power product of parameters, e.g. `a[0]^2 * th[1,2]`.
///
/// Invariant: factors are sorted by `ParamId` and exponents are nonzero.
/// The empty monomial is the constant 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(ParamId, u32)>);

impl Monomial {
    /// The constant monomial 1.
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    /// A single variable to the first power.
    pub fn var(id: ParamId) -> Monomial {
        Monomial(vec![(id, 1)])
    }

    /// True for the constant monomial.
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Merges two monomials, adding exponents.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(ParamId, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            use std::cmp::Ordering;
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// The sorted factor list.
    pub fn factors(&self) -> &[(ParamId, u32)] {
        &self.0
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }
}

/// Sparse polynomial in the formal parameters with exact complex-rational
/// coefficients. Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly(BTreeMap<Monomial, Scalar>);

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    /// A constant polynomial.
    pub fn constant(c: Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    /// The polynomial 1.
    pub fn one() -> Poly {
        Poly::constant(scalar::one())
    }

    /// A bare variable.
    pub fn var(id: ParamId) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(id), scalar::one());
        p
    }

    /// `c · var`.
    pub fn scaled_var(id: ParamId, c: Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(id), c);
        p
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Adds `c · m` in place, pruning a resulting zero coefficient.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Adds another polynomial in place.
    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Negation.
    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }

    /// Scales by an exact scalar.
    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(
            self.0
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        )
    }

    /// Polynomial product.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Iterates terms in canonical (monomial-sorted) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when empty (same as `is_zero`; provided for idiom).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{imag, int};

    #[test]
    fn theta_canonicalizes_with_sign() {
        let (id, s) = ParamId::th(2, 1).unwrap();
        assert_eq!(id, ParamId::Th(1, 2));
        assert_eq!(s, -1);
        assert!(ParamId::th(3, 3).is_none());
        let (id, s) = ParamId::th(0, 3).unwrap();
        assert_eq!(id, ParamId::Th(0, 3));
        assert_eq!(s, 1);
    }

    #[test]
    fn monomial_product_merges_exponents() {
        let a = Monomial::var(ParamId::A(0));
        let b = a.mul(&Monomial::var(ParamId::A(0)));
        assert_eq!(b.factors(), &[(ParamId::A(0), 2)]);
        assert_eq!(b.degree(), 2);
        let c = b.mul(&Monomial::var(ParamId::Th(0, 1)));
        assert_eq!(c.degree(), 3);
        assert_eq!(c.factors().len(), 2);
    }

    #[test]
    fn cancellation_prunes_to_zero() {
        let p = Poly::var(ParamId::A(1));
        let mut q = p.clone();
        q.add_assign(&p.neg());
        assert!(q.is_zero());
    }

    #[test]
    fn distributes_over_addition() {
        // (a0 + 2)·(a0 - 2) = a0² - 4
        let mut lhs = Poly::var(ParamId::A(0));
        lhs.add_assign(&Poly::constant(int(2)));
        let mut rhs = Poly::var(ParamId::A(0));
        rhs.add_assign(&Poly::constant(int(-2)));
        let prod = lhs.mul(&rhs);
        let mut expect = Poly::zero();
        expect.add_term(Monomial::var(ParamId::A(0)).mul(&Monomial::var(ParamId::A(0))), int(1));
        expect.add_term(Monomial::one(), int(-4));
        assert_eq!(prod, expect);
    }

    #[test]
    fn imaginary_units_multiply_exactly() {
        let i = Poly::constant(imag(1));
        let minus_one = i.mul(&i);
        assert_eq!(minus_one, Poly::constant(int(-1)));
    }
}
