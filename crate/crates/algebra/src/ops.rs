//! Builders for the distinguished elements: momenta, Lorentz generators,
//! the mass Casimir, the relativistic position operator, its deformation,
//! and the translation adjoint action.

use crate::bracket::BracketProvider;
use crate::element::{Element, Word};
use crate::gens::{eta, Gen};
use crate::params::{ParamId, Poly};
use crate::scalar::{imag, int, real_rat, Scalar};

/// `P[μ]`.
pub fn p(mu: u8) -> Element {
    Element::generator(Gen::p(mu))
}

/// `J[μ,ν]` for arbitrary distinct indices (antisymmetric in μν).
pub fn j(mu: u8, nu: u8) -> Element {
    match Gen::j(mu, nu) {
        Some((g, s)) => Element::generator(g).scale(&int(s)),
        None => Element::zero(),
    }
}

/// The mass Casimir `M² = P_μP^μ = Σ_μ η^{μμ} P_μP_μ` as a numerator
/// element (denominator power 0).
pub fn m2(d: u8) -> Element {
    let mut out = Element::zero();
    for mu in 0..d {
        let word = Word::from_slice(&[Gen::p(mu), Gen::p(mu)]);
        let term = Element::from_term(word, Poly::constant(int(eta(mu, mu))), 0);
        out = out.add(&term, d);
    }
    out
}

/// The relativistic position operator
/// `X[μ] = (J_{μν}P^ν + P^νJ_{μν}) / (2M²)`, built by symmetrizing the
/// boost-momentum product and dividing by the Casimir.
pub fn x(mu: u8, d: u8, provider: &dyn BracketProvider) -> Element {
    let mut num = Element::zero();
    for nu in 0..d {
        if nu == mu {
            continue;
        }
        let sign = int(eta(nu, nu));
        let jm = j(mu, nu);
        let pm = p(nu);
        let sym = jm
            .mul(&pm, provider, d)
            .add(&pm.mul(&jm, provider, d), d)
            .scale(&sign);
        num = num.add(&sym, d);
    }
    num.scale(&real_rat(1, 2)).over_m2(1)
}

/// The contraction `(ΘP)[μ] = Θ_{μν}P^ν = Σ_ν Θ_{μν} η^{νν} P_ν`, with the
/// skew-matrix entries as formal parameters.
pub fn theta_p(mu: u8, d: u8) -> Element {
    let mut out = Element::zero();
    for nu in 0..d {
        if let Some((id, sign)) = ParamId::th(mu, nu) {
            let coeff = Poly::scaled_var(id, int(sign * eta(nu, nu)));
            out = out.add(&Element::generator(Gen::p(nu)).scale_poly(&coeff), d);
        }
    }
    out
}

/// The deformed position operator `X^Θ[μ] = X[μ] + (ΘP)[μ]`.
pub fn x_theta(mu: u8, d: u8, provider: &dyn BracketProvider) -> Element {
    x(mu, d, provider).add(&theta_p(mu, d), d)
}

/// The contraction `a·P = a^νP_ν = Σ_ν η^{νν} a_ν P_ν`, with the covariant
/// translation components as formal parameters.
pub fn a_dot_p(d: u8) -> Element {
    let mut out = Element::zero();
    for nu in 0..d {
        let coeff = Poly::scaled_var(ParamId::a(nu), int(eta(nu, nu)));
        out = out.add(&Element::generator(Gen::p(nu)).scale_poly(&coeff), d);
    }
    out
}

/// The translation parameter `a[μ]` as a polynomial coefficient.
pub fn a_param(mu: u8) -> Poly {
    Poly::var(ParamId::a(mu))
}

/// The skew-matrix entry `Θ_{μν}` as a polynomial (zero on the diagonal,
/// antisymmetric).
pub fn theta_param(mu: u8, nu: u8) -> Poly {
    match ParamId::th(mu, nu) {
        Some((id, sign)) => Poly::scaled_var(id, int(sign)),
        None => Poly::zero(),
    }
}

/// Hard cap on the translation-adjoint series; the algebra guarantees
/// termination at order 2, so hitting the cap signals a broken provider.
pub const ADJOINT_ORDER_CAP: usize = 16;

/// Per-order terms of the translation adjoint action
/// `U(a) E U(a)⁻¹ = Σ_k ad_T^k(E)/k!` with `T = i·a·P`:
/// index `k` of the result holds `ad_T^k(E)/k!`. The series is returned in
/// full up to the first vanishing term; `None` if the cap is hit.
pub fn adjoint_translation_orders(
    e: &Element,
    d: u8,
    provider: &dyn BracketProvider,
) -> Option<Vec<Element>> {
    let t = a_dot_p(d).scale(&imag(1));
    let mut orders = vec![e.clone()];
    for k in 1..=ADJOINT_ORDER_CAP {
        let prev = orders.last().expect("nonempty");
        let inv_k = Scalar::new(crate::scalar::rat(1, k as i64), crate::scalar::rat(0, 1));
        let next = t.commutator(prev, provider, d).scale(&inv_k);
        if next.is_zero() {
            return Some(orders);
        }
        orders.push(next);
    }
    None
}

/// The translation adjoint action `U(a) E U(a)⁻¹` summed to termination.
/// `None` if the BCH series fails to terminate within the cap.
pub fn adjoint_translation(
    e: &Element,
    d: u8,
    provider: &dyn BracketProvider,
) -> Option<Element> {
    let orders = adjoint_translation_orders(e, d, provider)?;
    let mut out = Element::zero();
    for term in &orders {
        out = out.add(term, d);
    }
    Some(out)
}
