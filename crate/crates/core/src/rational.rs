//! The base scalar: normalized arbitrary-precision fractions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"n"`, `"-n"` or `"n/d"`; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| AlgebraError::Precondition(format!("not a rational: {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| AlgebraError::Precondition(format!("not a rational: {text:?}")))?;
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Renders as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Small-height random rational: numerator in [-9, 9], denominator in {1, 2, 3}.
pub fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=3);
    frac(num, den)
}

/// True when `q` has a denominator coprime to the prime `p`.
pub fn is_p_integral(q: &Rational, p: u64) -> bool {
    !(q.denom() % BigInt::from(p)).is_zero()
}

/// Image of a `p`-integral rational in `F_p`.
pub fn reduce_mod(q: &Rational, p: u64) -> Result<u64> {
    if !is_p_integral(q, p) {
        return Err(AlgebraError::Precondition(format!(
            "denominator of {} is not coprime to {p}",
            format_rational(q)
        )));
    }
    let modulus = BigInt::from(p);
    let reduce = |n: &BigInt| -> BigInt {
        let r = n % &modulus;
        if r.is_negative() {
            r + &modulus
        } else {
            r
        }
    };
    let num = reduce(q.numer());
    let den = reduce(q.denom());
    let den_inv = den.modpow(&BigInt::from(p - 2), &modulus);
    let value = (num * den_inv) % &modulus;
    Ok(u64::try_from(value).expect("residue fits in u64"))
}
