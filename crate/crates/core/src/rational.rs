//! Exact scalar type and its textual form.
//!
//! Every coordinate, slope and weight in this crate is a [`Rational`]. The
//! textual form is `p/q` in lowest terms, or a bare integer when `q = 1`;
//! [`parse_rational`] accepts anything [`format_rational`] produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction with a positive, reduced denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    InvalidInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| ParseRationalError::InvalidInteger(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Same order as `Ord`, by one cross multiplication. Faster for operands
/// with large numerators and denominators.
pub fn cmp_rational(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// Lossy conversion for presentation only (plots, fitted exponents).
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cross_multiplied_order_agrees() {
        let xs = [rat(-7, 3), rat(-2, 1), int(0), rat(1, 9), rat(2, 3), rat(5, 7)];
        for a in &xs {
            for b in &xs {
                assert_eq!(cmp_rational(a, b), a.cmp(b));
            }
        }
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
        assert!(matches!(parse_rational("x"), Err(ParseRationalError::InvalidInteger(_))));
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(format_rational(&rat(0, 3)), "0");
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn text_round_trip(r in arb_rat()) {
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }

        #[test]
        fn addition_associates_and_commutes(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }
    }
}
