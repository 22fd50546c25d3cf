//! Exact scalar coefficients: Gaussian rationals, i.e. complex numbers whose
//! real and imaginary parts are arbitrary-precision rationals.
//!
//! Every coefficient that appears during normal ordering is a finite sum of
//! products of `i` with rationals, so this type is closed under all engine
//! operations and equality is decidable exactly.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Gaussian rational: exact complex scalar with rational parts.
pub type Scalar = Complex<Rat>;

/// Rational `n/d`. Panics if `d == 0` (callers only pass literal constants).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Real integer scalar `n`.
pub fn int(n: i64) -> Scalar {
    Scalar::new(rat(n, 1), Rat::zero())
}

/// Purely imaginary scalar `n·i`.
pub fn imag(n: i64) -> Scalar {
    Scalar::new(Rat::zero(), rat(n, 1))
}

/// Purely imaginary rational scalar `(n/d)·i`.
pub fn imag_rat(n: i64, d: i64) -> Scalar {
    Scalar::new(Rat::zero(), rat(n, d))
}

/// Real rational scalar `n/d`.
pub fn real_rat(n: i64, d: i64) -> Scalar {
    Scalar::new(rat(n, d), Rat::zero())
}

/// The scalar one.
pub fn one() -> Scalar {
    Scalar::one()
}

/// The scalar zero.
pub fn zero() -> Scalar {
    Scalar::zero()
}

/// Renders a scalar in the canonical expression syntax.
///
/// Pure reals print as `3` or `-3/2`; pure imaginaries as `3i` or `-3/2i`;
/// mixed values as `(a+bi)` with both parts rendered the same way. The zero
/// scalar prints as `0`.
pub fn format_scalar(s: &Scalar) -> String {
    fn rat_str(r: &Rat) -> String {
        if r.denom().is_one() {
            format!("{}", r.numer())
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
    match (s.re.is_zero(), s.im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => rat_str(&s.re),
        (true, false) => format!("{}i", rat_str(&s.im)),
        (false, false) => {
            let im = if s.im < Rat::zero() {
                format!("-{}i", rat_str(&(-s.im.clone())))
            } else {
                format!("+{}i", rat_str(&s.im))
            };
            format!("({}{})", rat_str(&s.re), im)
        }
    }
}

/// True when the printed leading sign of `s` is negative (used by the
/// formatter to join terms with ` - ` instead of ` + `).
pub fn displays_negative(s: &Scalar) -> bool {
    if !s.re.is_zero() {
        s.re < Rat::zero()
    } else {
        s.im < Rat::zero()
    }
}

/// Strips the displayed leading sign: returns `(magnitude-part, was_negative)`.
pub fn display_magnitude(s: &Scalar) -> (Scalar, bool) {
    if displays_negative(s) {
        (-s.clone(), true)
    } else {
        (s.clone(), false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_pure_real_and_imaginary() {
        assert_eq!(format_scalar(&int(3)), "3");
        assert_eq!(format_scalar(&imag(1)), "1i");
        assert_eq!(format_scalar(&imag(-1)), "-1i");
        assert_eq!(format_scalar(&imag_rat(3, 2)), "3/2i");
        assert_eq!(format_scalar(&real_rat(-7, 4)), "-7/4");
        assert_eq!(format_scalar(&zero()), "0");
    }

    #[test]
    fn formats_mixed_with_parentheses() {
        let s = int(2) + imag(3);
        assert_eq!(format_scalar(&s), "(2+3i)");
        let t = int(2) - imag_rat(1, 2);
        assert_eq!(format_scalar(&t), "(2-1/2i)");
    }

    #[test]
    fn display_magnitude_strips_sign() {
        let (m, neg) = display_magnitude(&imag(-4));
        assert!(neg);
        assert_eq!(format_scalar(&m), "4i");
        let (m, neg) = display_magnitude(&int(5));
        assert!(!neg);
        assert_eq!(format_scalar(&m), "5");
    }

    #[test]
    fn exact_arithmetic_has_no_drift() {
        // (1/3 + i/7) summed 21 times equals exactly 7 + 3i.
        let s = Scalar::new(rat(1, 3), rat(1, 7));
        let mut acc = zero();
        for _ in 0..21 {
            acc += s.clone();
        }
        assert_eq!(acc, Scalar::new(rat(7, 1), rat(3, 1)));
    }
}
