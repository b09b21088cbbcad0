//! Exact rational scalars and small helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational scalar used everywhere symbolic results must be certified.
///
/// `BigRational` is always stored reduced with a positive denominator, which
/// is exactly the invariant the rest of the crate relies on.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on `q == 0`.
pub fn ratq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Sign of a rational as `-1`, `0`, `1`.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Renders a rational as `p` or `p/q` (reduced, denominator positive).
pub fn format_rat(x: &Rat) -> String {
    if x.denom() == &BigInt::from(1) {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let num = bigint_sqrt_exact(x.numer())?;
    let den = bigint_sqrt_exact(x.denom())?;
    Some(Rat::new(num, den))
}

/// Lossy conversion to `f64` for the numeric cross-checks.
pub fn rat_to_f64(x: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or_else(|| {
        // Fall back to a quotient of lossy integer conversions; good enough
        // for diagnostics on astronomically large intermediates.
        let n = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d
    })
}
