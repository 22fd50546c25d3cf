//! The identity catalog: every operator identity the engine certifies, with
//! per-identity timing, pass/fail status, and a witness element on failure.
//!
//! Free indices are enumerated concretely; a failing identity reports the
//! first offending index tuple together with the (denominator-reduced)
//! normal form of `lhs − rhs`, so a sign discrepancy is documented rather
//! than hidden. Identities hold for all values of the formal parameters
//! `a[μ]` and `th[μ,ν]` because coefficients are polynomials in them.

use std::time::Instant;

use crate::bracket::{enumerate_flip_slots, BracketProvider, FlipSlot, Mutated, Poincare};
use crate::element::Element;
use crate::expr::format_element;
use crate::gens::{eta, generators};
use crate::ops;
use crate::scalar::{imag, int};

/// Outcome of one identity check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

/// One verified catalog entry.
#[derive(Clone, Debug)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub reference: &'static str,
    pub status: Status,
    pub witness: Option<String>,
    pub ms: u128,
}

/// A catalog definition: identifier, human-readable reference label, and
/// the checking function (returns a witness string on failure).
pub struct IdentityDef {
    pub id: &'static str,
    pub reference: &'static str,
    pub run: fn(u8, &dyn BracketProvider) -> Result<(), String>,
}

fn witness(label: String, diff: Element, d: u8) -> String {
    format!(
        "{label}: lhs - rhs = {}",
        format_element(&diff.reduce_denominator(d))
    )
}

fn check_equal(
    label: impl FnOnce() -> String,
    lhs: &Element,
    rhs: &Element,
    d: u8,
) -> Result<(), String> {
    let diff = lhs.sub(rhs, d);
    if diff.is_zero() {
        Ok(())
    } else {
        Err(witness(label(), diff, d))
    }
}

/// Jacobi identity over all ordered generator triples.
pub fn run_jacobi(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    let gens = generators(d);
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                let ex = Element::generator(x);
                let ey = Element::generator(y);
                let ez = Element::generator(z);
                let s = ex
                    .commutator(&ey, provider, d)
                    .commutator(&ez, provider, d)
                    .add(&ey.commutator(&ez, provider, d).commutator(&ex, provider, d), d)
                    .add(&ez.commutator(&ex, provider, d).commutator(&ey, provider, d), d);
                if !s.is_zero() {
                    return Err(witness(
                        format!("triple ({x:?}, {y:?}, {z:?})"),
                        s,
                        d,
                    ));
                }
            }
        }
    }
    Ok(())
}

fn run_x_p_commutator(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    for mu in 0..d {
        let x = ops::x(mu, d, provider);
        for nu in 0..d {
            let lhs = x.commutator(&ops::p(nu), provider, d);
            let rhs = Element::scalar(imag(eta(mu, nu))).add(
                &ops::p(mu)
                    .mul(&ops::p(nu), provider, d)
                    .scale(&imag(-1))
                    .over_m2(1),
                d,
            );
            check_equal(|| format!("(mu={mu}, nu={nu})"), &lhs, &rhs, d)?;
        }
    }
    Ok(())
}

fn run_j_x_covariance(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    for rho in 0..d {
        for sigma in (rho + 1)..d {
            let j = ops::j(rho, sigma);
            for mu in 0..d {
                let lhs = j.commutator(&ops::x(mu, d, provider), provider, d);
                let rhs = ops::x(sigma, d, provider)
                    .scale(&imag(eta(mu, rho)))
                    .add(&ops::x(rho, d, provider).scale(&imag(-eta(mu, sigma))), d);
                check_equal(
                    || format!("(rho={rho}, sigma={sigma}, mu={mu})"),
                    &lhs,
                    &rhs,
                    d,
                )?;
            }
        }
    }
    Ok(())
}

fn run_x_x_snyder(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    for mu in 0..d {
        for nu in (mu + 1)..d {
            let lhs = ops::x(mu, d, provider).commutator(&ops::x(nu, d, provider), provider, d);
            let rhs = ops::j(mu, nu).scale(&imag(-1)).over_m2(1);
            check_equal(|| format!("(mu={mu}, nu={nu})"), &lhs, &rhs, d)?;
        }
    }
    Ok(())
}

fn run_mass_casimir(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    let m2 = ops::m2(d);
    let zero = Element::zero();
    for mu in 0..d {
        let c = m2.commutator(&ops::p(mu), provider, d);
        check_equal(|| format!("[M2, P[{mu}]]"), &c, &zero, d)?;
    }
    for mu in 0..d {
        for nu in (mu + 1)..d {
            let c = m2.commutator(&ops::j(mu, nu), provider, d);
            check_equal(|| format!("[M2, J[{mu},{nu}]]"), &c, &zero, d)?;
        }
    }
    for mu in 0..d {
        let c = m2.commutator(&ops::x(mu, d, provider), provider, d);
        check_equal(|| format!("[M2, X[{mu}]]"), &c, &zero, d)?;
    }
    Ok(())
}

fn adjoint_or_err(e: &Element, d: u8, provider: &dyn BracketProvider) -> Result<Element, String> {
    ops::adjoint_translation(e, d, provider)
        .ok_or_else(|| "translation adjoint series did not terminate".to_string())
}

fn run_translation_adjoint_x(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    for mu in 0..d {
        let x = ops::x(mu, d, provider);
        let lhs = adjoint_or_err(&x, d, provider)?;
        let rhs = x
            .add(&Element::from_poly(ops::a_param(mu)), d)
            .add(
                &ops::a_dot_p(d)
                    .mul(&ops::p(mu), provider, d)
                    .scale(&int(-1))
                    .over_m2(1),
                d,
            );
        check_equal(|| format!("(mu={mu})"), &lhs, &rhs, d)?;
    }
    Ok(())
}

fn run_snyder_translation_covariance(
    d: u8,
    provider: &dyn BracketProvider,
) -> Result<(), String> {
    for mu in 0..d {
        for nu in (mu + 1)..d {
            // Transport each side of the position commutator independently.
            let ax = adjoint_or_err(&ops::x(mu, d, provider), d, provider)?;
            let ay = adjoint_or_err(&ops::x(nu, d, provider), d, provider)?;
            let lhs = ax.commutator(&ay, provider, d);
            let rhs = adjoint_or_err(&ops::j(mu, nu).scale(&imag(-1)).over_m2(1), d, provider)?;
            check_equal(|| format!("(mu={mu}, nu={nu})"), &lhs, &rhs, d)?;
        }
    }
    Ok(())
}

fn run_deformed_x(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    // Substituting a_ν → (ΘP)_ν into the translation orbit of X must give
    // exactly X + ΘP: the quadratic correction dies by skew-symmetry.
    for mu in 0..d {
        let mut contraction = Element::zero();
        for nu in 0..d {
            contraction = contraction.add(
                &ops::theta_p(nu, d)
                    .mul(&ops::p(nu), provider, d)
                    .scale(&int(eta(nu, nu))),
                d,
            );
        }
        let lhs = ops::x(mu, d, provider)
            .add(&ops::theta_p(mu, d), d)
            .add(
                &contraction
                    .mul(&ops::p(mu), provider, d)
                    .scale(&int(-1))
                    .over_m2(1),
                d,
            );
        let rhs = ops::x_theta(mu, d, provider);
        check_equal(|| format!("(mu={mu})"), &lhs, &rhs, d)?;
    }
    Ok(())
}

/// Right-hand side of the deformed position commutator.
fn deformed_commutator_rhs(mu: u8, nu: u8, d: u8, provider: &dyn BracketProvider) -> Element {
    ops::j(mu, nu)
        .scale(&imag(-1))
        .over_m2(1)
        .add(&Element::from_poly(ops::theta_param(mu, nu)).scale(&imag(-2)), d)
        .add(
            &ops::theta_p(mu, d)
                .mul(&ops::p(nu), provider, d)
                .sub(&ops::theta_p(nu, d).mul(&ops::p(mu), provider, d), d)
                .scale(&imag(1))
                .over_m2(1),
            d,
        )
}

fn run_deformed_commutator(d: u8, provider: &dyn BracketProvider) -> Result<(), String> {
    for mu in 0..d {
        for nu in (mu + 1)..d {
            let lhs = ops::x_theta(mu, d, provider)
                .commutator(&ops::x_theta(nu, d, provider), provider, d);
            let rhs = deformed_commutator_rhs(mu, nu, d, provider);
            check_equal(|| format!("(mu={mu}, nu={nu})"), &lhs, &rhs, d)?;
        }
    }
    Ok(())
}

fn run_deformed_translation_covariance(
    d: u8,
    provider: &dyn BracketProvider,
) -> Result<(), String> {
    for mu in 0..d {
        for nu in (mu + 1)..d {
            let ax = adjoint_or_err(&ops::x_theta(mu, d, provider), d, provider)?;
            let ay = adjoint_or_err(&ops::x_theta(nu, d, provider), d, provider)?;
            let lhs = ax.commutator(&ay, provider, d);
            let rhs0 = deformed_commutator_rhs(mu, nu, d, provider);
            let rhs = adjoint_or_err(&rhs0, d, provider)?;
            check_equal(|| format!("transported equality (mu={mu}, nu={nu})"), &lhs, &rhs, d)?;
            // The transport shifts the right-hand side by an explicit
            // momentum correction; pin it down exactly.
            let correction = rhs.sub(&rhs0, d);
            let expected = ops::p(mu)
                .scale_poly(&ops::a_param(nu))
                .sub(&ops::p(nu).scale_poly(&ops::a_param(mu)), d)
                .scale(&imag(1))
                .over_m2(1);
            check_equal(
                || format!("transport correction (mu={mu}, nu={nu})"),
                &correction,
                &expected,
                d,
            )?;
        }
    }
    Ok(())
}

fn run_deformed_lorentz_infinitesimal(
    d: u8,
    provider: &dyn BracketProvider,
) -> Result<(), String> {
    for rho in 0..d {
        for sigma in (rho + 1)..d {
            let j = ops::j(rho, sigma);
            for mu in 0..d {
                let lhs = j.commutator(&ops::x_theta(mu, d, provider), provider, d);
                let rhs = ops::x(sigma, d, provider)
                    .scale(&imag(eta(mu, rho)))
                    .add(&ops::x(rho, d, provider).scale(&imag(-eta(mu, sigma))), d)
                    .add(
                        &ops::p(sigma)
                            .scale_poly(&ops::theta_param(mu, rho))
                            .sub(&ops::p(rho).scale_poly(&ops::theta_param(mu, sigma)), d)
                            .scale(&imag(1)),
                        d,
                    );
                check_equal(
                    || format!("(rho={rho}, sigma={sigma}, mu={mu})"),
                    &lhs,
                    &rhs,
                    d,
                )?;
            }
        }
    }
    Ok(())
}

/// The full identity catalog, in report order.
pub fn catalog() -> &'static [IdentityDef] {
    &[
        IdentityDef {
            id: "POINCARE_JACOBI",
            reference: "Jacobi identity over all ordered generator triples",
            run: run_jacobi,
        },
        IdentityDef {
            id: "X_P_COMMUTATOR",
            reference: "position-momentum commutator with relativistic correction",
            run: run_x_p_commutator,
        },
        IdentityDef {
            id: "J_X_COVARIANCE",
            reference: "position components transform as a Lorentz vector",
            run: run_j_x_covariance,
        },
        IdentityDef {
            id: "X_X_SNYDER",
            reference: "position noncommutativity closes on the Lorentz generator over the Casimir",
            run: run_x_x_snyder,
        },
        IdentityDef {
            id: "MASS_CASIMIR",
            reference: "mass Casimir is central: commutes with momenta, Lorentz generators, and position",
            run: run_mass_casimir,
        },
        IdentityDef {
            id: "TRANSLATION_ADJOINT_X",
            reference: "translation adjoint of position: affine shift plus momentum-projected correction",
            run: run_translation_adjoint_x,
        },
        IdentityDef {
            id: "SNYDER_TRANSLATION_COVARIANCE",
            reference: "position commutator and its closed form transport identically under translations",
            run: run_snyder_translation_covariance,
        },
        IdentityDef {
            id: "DEFORMED_X",
            reference: "skew-deformation equals the momentum-substituted translation orbit of position",
            run: run_deformed_x,
        },
        IdentityDef {
            id: "DEFORMED_COMMUTATOR",
            reference: "deformed position commutator: Lorentz term plus constant and momentum-quadratic skew terms",
            run: run_deformed_commutator,
        },
        IdentityDef {
            id: "DEFORMED_TRANSLATION_COVARIANCE",
            reference: "deformed commutator transports under translations with an explicit momentum correction",
            run: run_deformed_translation_covariance,
        },
        IdentityDef {
            id: "DEFORMED_LORENTZ_INFINITESIMAL",
            reference: "infinitesimal Lorentz action on the deformed position",
            run: run_deformed_lorentz_infinitesimal,
        },
    ]
}

/// Runs a single identity and records status, witness, and wall time.
pub fn verify_identity(
    def: &IdentityDef,
    d: u8,
    provider: &dyn BracketProvider,
) -> IdentityRecord {
    let start = Instant::now();
    let outcome = (def.run)(d, provider);
    let ms = start.elapsed().as_millis();
    match outcome {
        Ok(()) => IdentityRecord {
            id: def.id,
            reference: def.reference,
            status: Status::Pass,
            witness: None,
            ms,
        },
        Err(w) => IdentityRecord {
            id: def.id,
            reference: def.reference,
            status: Status::Fail,
            witness: Some(w),
            ms,
        },
    }
}

/// Runs the whole catalog; records are returned in catalog order regardless
/// of scheduling.
pub fn verify_catalog(d: u8, provider: &(impl BracketProvider + Sync)) -> Vec<IdentityRecord> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        catalog()
            .par_iter()
            .map(|def| verify_identity(def, d, provider))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_catalog_seq(d, provider)
    }
}

/// Sequential fallback driver (always available; the benchmark suite
/// compares it against the parallel path).
pub fn verify_catalog_seq(d: u8, provider: &dyn BracketProvider) -> Vec<IdentityRecord> {
    catalog()
        .iter()
        .map(|def| verify_identity(def, d, provider))
        .collect()
}

/// The fully contracted position-momentum commutator
/// `Σ_{μν} η^{μν} [X_μ, P_ν]`, denominator-reduced. Equals `i(d−1)` in
/// dimension `d`.
pub fn momentum_position_contraction(d: u8, provider: &dyn BracketProvider) -> Element {
    let mut acc = Element::zero();
    for mu in 0..d {
        let x = ops::x(mu, d, provider);
        let c = x.commutator(&ops::p(mu), provider, d);
        acc = acc.add(&c.scale(&int(eta(mu, mu))), d);
    }
    acc.reduce_denominator(d)
}

/// For every single-sign structure-constant mutation, whether the Jacobi
/// scan detects it (pairs each flip slot with the detection outcome).
pub fn jacobi_mutation_scan(d: u8) -> Vec<(FlipSlot, bool)> {
    enumerate_flip_slots(d)
        .into_iter()
        .map(|flip| {
            let provider = Mutated { flip };
            let detected = run_jacobi(d, &provider).is_err();
            (flip, detected)
        })
        .collect()
}

/// Convenience: the standard provider.
pub fn standard() -> Poincare {
    Poincare
}
