//! Exact rational scalars and the small integer combinatorics the mode
//! formulas need.
//!
//! Every coefficient in the crate is a [`Rational`] in lowest terms with a
//! positive denominator; `num-rational` maintains that normal form on every
//! operation, so arithmetic never leaves the canonical representation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
pub type Rational = num_rational::BigRational;

/// `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a [`Rational`].
pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let q: BigInt = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|e| format!("bad integer: {e}"))?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` of either sign
/// and `k >= 0`: the product `n (n-1) ... (n-k+1) / k!`, always an integer.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for t in 0..k as i64 {
        num *= BigInt::from(n - t);
    }
    num / factorial(k)
}

/// `k!` as a [`BigInt`].
pub fn factorial(k: u32) -> BigInt {
    let mut f = BigInt::one();
    for t in 2..=k as u64 {
        f *= BigInt::from(t);
    }
    f
}

/// `(-1)^k`.
pub fn sign_pow(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

/// Asserts the lowest-terms normal form: gcd(|p|, q) = 1 and q > 0.
/// Used by tests to pin the exactness invariant.
pub fn is_normal_form(r: &Rational) -> bool {
    if !r.denom().is_positive() {
        return false;
    }
    num_integer::Integer::gcd(r.numer(), r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn binomial_negative_upper() {
        // C(-1, k) = (-1)^k
        assert_eq!(binomial(-1, 0), BigInt::from(1));
        assert_eq!(binomial(-1, 1), BigInt::from(-1));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        // C(-2, 2) = (-2)(-3)/2 = 3
        assert_eq!(binomial(-2, 2), BigInt::from(3));
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert!(is_normal_form(&r));
        }
        // non-canonical input normalizes
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert!(is_normal_form(&r));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn arithmetic_stays_normalized() {
        let a = rat(2, 6);
        let b = rat(3, 4);
        for r in [&a + &b, &a - &b, &a * &b, &a / &b] {
            assert!(is_normal_form(&r));
        }
    }
}
