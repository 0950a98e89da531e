//! Arbitrary-precision rationals plus the telescoped Gamma ratios that the
//! C-function quotient engine is built on.
//!
//! `Rational` is always stored reduced with a positive denominator (the
//! backing type maintains both invariants), and serializes as `"P/Q"`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Canonical `"P/Q"` form; integers print without the `/Q` part.
pub fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"P"` or `"P/Q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Gamma(x+n)/Gamma(x) as a rising (n >= 0) or reciprocal falling (n < 0)
/// factorial.
///
/// For n >= 0 the product may legitimately vanish; for n < 0 a vanishing
/// factor sits in a denominator and signals a genuine Gamma pole, reported
/// as [`Error::PoleEncountered`].
pub fn gamma_ratio(x: &Rational, n: i64) -> Result<Rational> {
    let mut acc = Rational::one();
    if n >= 0 {
        for j in 0..n {
            acc *= x + rat_int(j);
        }
        Ok(acc)
    } else {
        for j in 1..=(-n) {
            let factor = x - rat_int(j);
            if factor.is_zero() {
                return Err(Error::PoleEncountered(format!(
                    "gamma_ratio({}, {n}) divides by Gamma pole at 0",
                    rational_string(x)
                )));
            }
            acc *= factor;
        }
        Ok(acc.recip())
    }
}

/// Gamma(u)/Gamma(v) for arguments differing by an integer.
///
/// Evaluated as the telescoped product, which equals the limit of
/// Gamma(u+eps)/Gamma(v+eps) as eps -> 0; this is the correct reading for
/// quotients of C-functions at lattice points where both Gamma factors
/// degenerate simultaneously.
pub fn gamma_quot(u: &Rational, v: &Rational) -> Result<Rational> {
    let diff = v - u;
    if !diff.is_integer() {
        return Err(Error::Parse(format!(
            "gamma_quot arguments differ by non-integer {}",
            rational_string(&diff)
        )));
    }
    let n: i64 = int_part(&diff)?;
    // Gamma(u)/Gamma(u+n) = 1 / gamma_ratio(u, n)
    let rising = gamma_ratio(u, n)?;
    if n >= 0 {
        if rising.is_zero() {
            return Err(Error::PoleEncountered(format!(
                "gamma_quot({}, {}) has a pole",
                rational_string(u),
                rational_string(v)
            )));
        }
        Ok(rising.recip())
    } else {
        // gamma_ratio already inverted the falling product.
        Ok(rising.recip())
    }
}

fn int_part(x: &Rational) -> Result<i64> {
    let n = x.to_integer();
    i64::try_from(&n).map_err(|_| Error::Parse(format!("integer {n} out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_factorial_values() {
        // (1/2)(3/2) = 3/4
        assert_eq!(gamma_ratio(&rat(1, 2), 2).unwrap(), rat(3, 4));
        // empty product
        assert_eq!(gamma_ratio(&rat(7, 3), 0).unwrap(), rat_int(1));
        // 3 * 4 = 12
        assert_eq!(gamma_ratio(&rat_int(3), 2).unwrap(), rat_int(12));
    }

    #[test]
    fn falling_side_and_poles() {
        // Gamma(x)/Gamma(x-1) = x-1 hence gamma_ratio(x, -1) = 1/(x-1)
        assert_eq!(gamma_ratio(&rat_int(5), -1).unwrap(), rat(1, 4));
        assert!(matches!(
            gamma_ratio(&rat_int(1), -1),
            Err(Error::PoleEncountered(_))
        ));
    }

    #[test]
    fn telescoping_composition() {
        // gamma_ratio(x, n) * gamma_ratio(x+n, m) = gamma_ratio(x, n+m)
        for (num, den) in [(1i64, 2i64), (-7, 3), (4, 1)] {
            let x = rat(num, den);
            for n in -3..=3i64 {
                for m in -3..=3i64 {
                    let lhs = gamma_ratio(&x, n)
                        .and_then(|a| Ok(a * gamma_ratio(&(&x + rat_int(n)), m)?));
                    let rhs = gamma_ratio(&x, n + m);
                    if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                        assert_eq!(lhs, rhs, "x={x} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn quotients_at_negative_integers() {
        // Gamma(-3)/Gamma(-2) = -1/3 (residue ratio)
        assert_eq!(gamma_quot(&rat_int(-3), &rat_int(-2)).unwrap(), rat(-1, 3));
        // Gamma(0)/Gamma(-1) = -1
        assert_eq!(gamma_quot(&rat_int(0), &rat_int(-1)).unwrap(), rat_int(-1));
        // Gamma(-1)/Gamma(0) = -1
        assert_eq!(gamma_quot(&rat_int(-1), &rat_int(0)).unwrap(), rat_int(-1));
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for s in ["3", "-5", "7/3", "-11/4", "0"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(rational_string(&x), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
