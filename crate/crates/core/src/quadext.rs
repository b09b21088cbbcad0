//! Exact arithmetic in a real quadratic extension `Q(sqrt(d))`.
//!
//! Invariant-curve coefficients are usually rational, but a simple real root
//! of an edge polynomial can be irrational (e.g. `±sqrt(2)`); once such a
//! root enters the series, every later coefficient stays inside the same
//! quadratic field. Elements are `a + b*sqrt(d)` with `d` a fixed
//! non-square positive integer per value (`d = 0` encodes a plain rational).
//! Mixing two different nonzero `d`s is a logic error and panics.

use crate::rational::{bigint_sqrt_exact, format_rat, rat_sqrt_exact, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// `a + b*sqrt(d)`; `d == 0` means the value is the plain rational `a`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub d: u64,
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rat(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", format_rat(&self.b), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", format_rat(&self.a), format_rat(&self.b), self.d)
        }
    }
}

impl QuadExt {
    pub fn from_rat(a: Rat) -> Self {
        Self { a, b: Rat::zero(), d: 0 }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn new(a: Rat, b: Rat, d: u64) -> Self {
        if b.is_zero() {
            Self::from_rat(a)
        } else {
            debug_assert!(d > 1, "nonzero surd part requires d > 1");
            Self { a, b, d }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The common radicand of two values, or `None` if they conflict.
    fn join_d(&self, rhs: &Self) -> Option<u64> {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => Some(0),
            (false, true) => Some(self.d),
            (true, false) => Some(rhs.d),
            (false, false) => (self.d == rhs.d).then_some(self.d),
        }
    }

    fn joined(&self, rhs: &Self) -> u64 {
        self.join_d(rhs)
            .expect("arithmetic across distinct quadratic extensions")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = self.joined(rhs);
        Self::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, self.d)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.joined(rhs);
        let dr = Rat::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::new(a, b, d)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(&self.a * c, &self.b * c, self.d)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Self::from_rat(Rat::from_integer(BigInt::from(1)) / &self.a);
        }
        // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
        let dr = Rat::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * dr;
        debug_assert!(!norm.is_zero(), "d is not a perfect square");
        Self::new(&self.a / &norm, -&self.b / &norm, self.d)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Exact sign (`-1`, `0`, `1`) of the real number `a + b*sqrt(d)`.
    pub fn sign(&self) -> i32 {
        let sa = crate::rational::sign(&self.a);
        let sb = crate::rational::sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare |a|^2 against b^2 d.
        let dr = Rat::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dr;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0, // impossible for non-square d
        }
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational::rat_to_f64(&self.a)
            + crate::rational::rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// Square root of this value inside the same field, when it exists.
    ///
    /// For a rational value `a` this is either `sqrt(a)` in `Q` or
    /// `sqrt(a/d')*sqrt(d')` for the square-free kernel `d'` of `a` (which
    /// fixes the field for a previously rational series). For a genuine
    /// `a + b*sqrt(d)` it solves `(x + y*sqrt(d))^2 = a + b*sqrt(d)` in `Q`.
    /// Returns the non-negative root together with its radicand.
    pub fn sqrt_in_real_quadratic(&self) -> Option<QuadExt> {
        if self.sign() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.b.is_zero() {
            if let Some(r) = rat_sqrt_exact(&self.a) {
                return Some(Self::from_rat(r));
            }
            // a = (p/q) = (p*q)/q^2; sqrt(a) = sqrt(s^2 * k)/q = (s/q) sqrt(k)
            let pq: BigInt = self.a.numer() * self.a.denom();
            let (s, k) = square_free_split(&pq);
            let k_u64 = u64::try_from(&k).ok()?;
            let coeff = Rat::new(s, self.a.denom().clone());
            return Some(Self::new(Rat::zero(), coeff, k_u64));
        }
        // Solve x^2 + y^2 d = a, 2xy = b. Then x^2 is a rational root of
        // T^2 - a T + b^2 d / 4 = 0.
        let dr = Rat::from_integer(BigInt::from(self.d));
        let disc = &self.a * &self.a - &self.b * &self.b * &dr;
        let sq = rat_sqrt_exact(&disc)?;
        let two = Rat::from_integer(BigInt::from(2));
        for x2 in [(&self.a + &sq) / &two, (&self.a - &sq) / &two] {
            if let Some(x) = rat_sqrt_exact(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = Self::new(x, y, self.d);
                if cand.sign() >= 0 {
                    return Some(cand);
                }
                return Some(cand.neg());
            }
        }
        None
    }
}

/// Writes `n = s^2 * k` with `k` square-free; returns `(s, k)`. `n > 0`.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = n.clone();
    let mut s = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= k {
        let p2 = &p * &p;
        while (&k % &p2).is_zero() {
            k /= &p2;
            s *= &p;
        }
        p += 1;
    }
    // Pull out any residual perfect square (k may still be p^2 for large p).
    if let Some(r) = bigint_sqrt_exact(&k) {
        if r > BigInt::from(1) {
            s *= &r;
            k = BigInt::from(1);
        }
    }
    (s, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratq};

    fn q(a: i64, b: i64, d: u64) -> QuadExt {
        QuadExt::new(rat(a), rat(b), d)
    }

    #[test]
    fn field_arithmetic() {
        let x = q(1, 1, 2); // 1 + sqrt 2
        let y = q(3, -2, 2);
        assert_eq!(x.mul(&y), q(-1, 1, 2)); // (1+s)(3-2s) = 3 - 2s + 3s - 4 = -1 + s
        assert_eq!(x.mul(&x.inv()), QuadExt::from_rat(rat(1)));
        assert_eq!(x.add(&x.neg()), QuadExt::zero());
        assert!(x.sub(&y).mul(&x.sub(&y)).sign() > 0);
    }

    #[test]
    fn exact_signs() {
        assert_eq!(q(-3, 2, 2).sign(), -1); // 2 sqrt2 ≈ 2.83 < 3
        assert_eq!(q(-2, 2, 2).sign(), 1);
        assert_eq!(q(0, -1, 5).sign(), -1);
        assert_eq!(QuadExt::zero().sign(), 0);
        assert_eq!(QuadExt::from_rat(ratq(1, 7)).sign(), 1);
    }

    #[test]
    fn square_roots_in_field() {
        // sqrt(2) from a rational input fixes the field.
        let r = QuadExt::from_rat(rat(2)).sqrt_in_real_quadratic().unwrap();
        assert_eq!(r, q(0, 1, 2));
        // sqrt(9/4) stays rational.
        let r = QuadExt::from_rat(ratq(9, 4)).sqrt_in_real_quadratic().unwrap();
        assert_eq!(r, QuadExt::from_rat(ratq(3, 2)));
        // sqrt(3 + 2 sqrt 2) = 1 + sqrt 2.
        let r = q(3, 2, 2).sqrt_in_real_quadratic().unwrap();
        assert_eq!(r, q(1, 1, 2));
        // sqrt(1 + sqrt 2) leaves the field.
        assert!(q(1, 1, 2).sqrt_in_real_quadratic().is_none());
        // Negative values have no real square root.
        assert!(QuadExt::from_rat(rat(-2)).sqrt_in_real_quadratic().is_none());
        // sqrt(8) = 2 sqrt 2 (square-free kernel extraction).
        let r = QuadExt::from_rat(rat(8)).sqrt_in_real_quadratic().unwrap();
        assert_eq!(r, q(0, 2, 2));
    }
}
