//! Sparse bivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by `(u-exponent, v-exponent)` so that
//! iteration order is deterministic. The variable names are positional: the
//! first variable is the one blow-ups divide by ("u"), the second is the
//! fibre variable ("v"). The substitutions implemented here are exactly the
//! ones the resolution module needs: directional blow-ups
//! `u -> u1^q, v -> u1^p (phi + v1)`, vertical blow-ups `u -> w z, v -> s z^p`,
//! and the sign conjugation `u -> -u`.

use crate::poly::{PolyError, RatPoly};
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse bivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiRatPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl fmt::Debug for BiRatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let mut s = format!("{}", c);
                if i > 0 {
                    s.push_str(&format!("*u^{}", i));
                }
                if j > 0 {
                    s.push_str(&format!("*v^{}", j));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BiRatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The monomial `c * u^i * v^j`.
    pub fn term(c: Rat, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    /// Lifts a univariate polynomial in `u`, multiplied by `v^j`.
    pub fn from_u_poly(p: &RatPoly, j: u32) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(c.clone(), i as u32, j);
        }
        out
    }

    pub fn add_term(&mut self, c: Rat, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Coefficient of `u^i v^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(c1 * c2, i1 + i2, j1 + j2);
            }
        }
        out
    }

    /// Total restriction to `u = 0`, as a polynomial in `v`.
    pub fn at_u_zero(&self) -> RatPoly {
        let mut coeffs: Vec<Rat> = Vec::new();
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                if coeffs.len() <= j as usize {
                    coeffs.resize(j as usize + 1, Rat::zero());
                }
                coeffs[j as usize] = c.clone();
            }
        }
        RatPoly::new(coeffs)
    }

    /// Exact division by `u^k`; errors if some term has a smaller u-exponent.
    pub fn div_upow(&self, k: u32) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i < k {
                return Err(PolyError::InexactDivision);
            }
            out.add_term(c.clone(), i - k, j);
        }
        Ok(out)
    }

    /// Substitutes `u -> -u`.
    pub fn conjugate_u(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let c = if i % 2 == 0 { c.clone() } else { -c };
            out.add_term(c, i, j);
        }
        out
    }

    /// Directional blow-up substitution `u -> u1^q`, `v -> u1^p (phi + v1)`,
    /// returning a polynomial in `(u1, v1)`.
    pub fn subst_blowup(&self, p: u32, q: u32, phi: &Rat) -> Self {
        let shift = RatPoly::new(vec![phi.clone(), Rat::one()]); // phi + v1
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let upow = q * i + p * j;
            let expanded = shift.pow(j); // polynomial in v1
            for (jj, cc) in expanded.coeffs().iter().enumerate() {
                out.add_term(c * cc, upow, jj as u32);
            }
        }
        out
    }

    /// Vertical blow-up substitution `u -> w z`, `v -> s z^p` with `s = ±1`,
    /// returning a polynomial in `(w, z)`.
    pub fn subst_vertical(&self, p: u32, sign_negative: bool) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let c = if sign_negative && j % 2 == 1 { -c } else { c.clone() };
            out.add_term(c, i, i + p * j);
        }
        out
    }

    /// Formal partial derivative with respect to the second variable.
    pub fn dv(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(c * crate::rational::rat(j as i64), i, j - 1);
            }
        }
        out
    }

    /// Exact division by `v^k`; errors if some term has a smaller v-exponent.
    pub fn div_vpow(&self, k: u32) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j < k {
                return Err(PolyError::InexactDivision);
            }
            out.add_term(c.clone(), i, j - k);
        }
        Ok(out)
    }

    /// Maximum u-degree over all terms (`None` if zero).
    pub fn u_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Maximum v-degree over all terms (`None` if zero).
    pub fn v_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Evaluates at an exact rational point.
    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t *= u;
            }
            for _ in 0..j {
                t *= v;
            }
            acc += t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn ring_ops_and_restriction() {
        // G = -v - u^2 v^3
        let g = BiRatPoly::term(rat(-1), 0, 1).add(&BiRatPoly::term(rat(-1), 2, 3));
        assert_eq!(g.at_u_zero(), RatPoly::from_ints(&[0, -1]));
        assert_eq!(g.coeff(2, 3), rat(-1));
        assert_eq!(g.u_degree(), Some(2));
        assert_eq!(g.v_degree(), Some(3));
        let g2 = g.mul(&BiRatPoly::term(rat(2), 1, 0));
        assert_eq!(g2.coeff(1, 1), rat(-2));
        assert_eq!(g2.coeff(3, 3), rat(-2));
    }

    #[test]
    fn blowup_substitution_expands_shift() {
        // v^2 under u -> u1, v -> u1^2 (3 + v1): u1^4 (9 + 6 v1 + v1^2).
        let f = BiRatPoly::term(rat(1), 0, 2);
        let s = f.subst_blowup(2, 1, &rat(3));
        assert_eq!(s.coeff(4, 0), rat(9));
        assert_eq!(s.coeff(4, 1), rat(6));
        assert_eq!(s.coeff(4, 2), rat(1));
    }

    #[test]
    fn vertical_substitution_and_division() {
        // u v^2 under u -> w z, v -> -z^3: w z^7.
        let f = BiRatPoly::term(rat(1), 1, 2);
        let s = f.subst_vertical(3, true);
        assert_eq!(s.coeff(1, 7), rat(1));
        // u v under the same: -w z^4.
        let f = BiRatPoly::term(rat(1), 1, 1);
        assert_eq!(f.subst_vertical(3, true).coeff(1, 4), rat(-1));
        assert!(f.div_upow(2).is_err());
        assert_eq!(f.div_upow(1).unwrap(), BiRatPoly::term(rat(1), 0, 1));
    }

    #[test]
    fn conjugation_flips_odd_u_terms() {
        let f = BiRatPoly::term(rat(1), 1, 0).add(&BiRatPoly::term(rat(2), 2, 1));
        let c = f.conjugate_u();
        assert_eq!(c.coeff(1, 0), rat(-1));
        assert_eq!(c.coeff(2, 1), rat(2));
    }
}
