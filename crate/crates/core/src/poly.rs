//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros
//! (the zero polynomial is the empty vector). On top of the ring operations
//! this module provides the exact decision kernels the rest of the crate is
//! built on: Sturm real-root counting, the double-root classification used by
//! the blow-up descent, coefficient reversal (the degree-`n` reciprocal
//! transform), and complete functional decomposition `F = g(h)`.

use crate::rational::{rat, rat_sqrt_exact, sign, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Errors from exact polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("reversal order {order} is smaller than the degree {degree}")]
    ReverseOrderTooSmall { order: usize, degree: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("functional decomposition requires degree >= 2")]
    DecompositionDegree,
}

/// Interval endpoint for real-root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    /// Finite endpoint excluded from the interval.
    Excl(Rat),
    /// Finite endpoint included in the interval.
    Incl(Rat),
}

/// Dense univariate polynomial with rational coefficients, ascending order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", k)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// Convenience constructor from small integer coefficients (ascending).
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at 0, or `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Coefficient at the valuation (lowest nonzero), `None` if zero.
    pub fn trailing(&self) -> Option<&Rat> {
        self.valuation().map(|v| &self.coeffs[v])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Exact division by `x^k`; errors if the valuation is smaller.
    pub fn div_xpow(&self, k: usize) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.valuation().unwrap_or(0) < k {
            return Err(PolyError::InexactDivision);
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![Rat::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / rat(k as i64 + 1)),
        );
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::rational::rat_to_f64(c);
        }
        acc
    }

    /// Functional composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Substitutes `x -> -x`.
    pub fn compose_neg_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
                .collect(),
        )
    }

    /// Euclidean division returning `(quotient, remainder)`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.clone();
        let mut quo = vec![
            Rat::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while let Some(r) = rem.degree() {
            if r < d {
                break;
            }
            let factor = &rem.coeffs[r] / &lead;
            quo[r - d] = factor.clone();
            let mut coeffs = rem.coeffs;
            for i in 0..=d {
                let t = &factor * &divisor.coeffs[i];
                coeffs[r - d + i] -= t;
            }
            rem = Self::new(coeffs);
        }
        Ok((Self::new(quo), rem))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading() {
            None => a,
            Some(l) => {
                let inv = Rat::one() / l;
                a.scale(&inv)
            }
        }
    }

    /// The square-free part `self / gcd(self, self')`, made monic.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        let q = self.exact_div(&g).expect("gcd divides");
        let inv = Rat::one() / q.leading().expect("nonzero");
        q.scale(&inv)
    }

    /// Coefficient reversal at order `n`: returns `x^n * self(1/x)`, i.e. the
    /// polynomial whose `x^(n-k)` coefficient is this one's `x^k` coefficient.
    /// Errors when `n` is smaller than the degree.
    pub fn reverse(&self, n: usize) -> Result<Self, PolyError> {
        let deg = match self.degree() {
            None => return Ok(Self::zero()),
            Some(d) => d,
        };
        if n < deg {
            return Err(PolyError::ReverseOrderTooSmall { order: n, degree: deg });
        }
        let mut out = vec![Rat::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[n - k] = c.clone();
        }
        Ok(Self::new(out))
    }

    /// Multiplicity of `root` as a zero of this polynomial.
    pub fn root_multiplicity(&self, root: &Rat) -> usize {
        let lin = Self::new(vec![-root.clone(), Rat::one()]);
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.divmod(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            m += 1;
            p = q;
        }
        m
    }

    /// All rational roots (with multiplicity collapsed; each root listed once),
    /// found by the rational-root theorem on the primitive integer form.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut p = self.clone();
        let val = p.valuation().unwrap_or(0);
        if val > 0 {
            roots.push(Rat::zero());
            p = p.div_xpow(val).expect("valuation");
        }
        if p.degree() == Some(0) {
            return roots;
        }
        // Clear denominators to a primitive integer polynomial.
        let mut den = BigInt::one();
        for c in p.coeffs() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let a0 = ints.first().expect("nonzero valuation stripped").clone();
        let an = ints.last().expect("nonzero").clone();
        let p_divs = positive_divisors(&a0.abs());
        let q_divs = positive_divisors(&an.abs());
        for num in &p_divs {
            for den in &q_divs {
                for s in [1, -1] {
                    let cand = Rat::new(num * BigInt::from(s), den.clone());
                    if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    /// Counts distinct real roots in the interval delimited by `lo`/`hi`
    /// via a Sturm chain on the square-free part.
    pub fn sturm_real_root_count(&self, lo: &Endpoint, hi: &Endpoint) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let sf = self.square_free_part();
        if sf.degree() == Some(0) {
            return Ok(0);
        }
        let chain = sturm_chain(&sf);
        let lo_pt = endpoint_value(lo);
        let hi_pt = endpoint_value(hi);
        let va = sign_variations(&chain, lo_pt);
        let vb = sign_variations(&chain, hi_pt);
        // V(a) - V(b) counts roots in the half-open interval (a, b].
        let mut count = va as isize - vb as isize;
        if let Endpoint::Excl(b) = hi {
            if sf.eval(b).is_zero() {
                count -= 1;
            }
        }
        if let Endpoint::Incl(a) = lo {
            if sf.eval(a).is_zero() {
                count += 1;
            }
        }
        debug_assert!(count >= 0, "sturm count must be non-negative");
        Ok(count.max(0) as usize)
    }

    /// Counts distinct nonzero real roots (both half-lines, zero excluded).
    pub fn nonzero_real_root_count(&self) -> Result<usize, PolyError> {
        let zero = Rat::zero();
        let neg = self.sturm_real_root_count(&Endpoint::NegInf, &Endpoint::Excl(zero.clone()))?;
        let pos = self.sturm_real_root_count(&Endpoint::Excl(zero), &Endpoint::PosInf)?;
        Ok(neg + pos)
    }

    /// Classifies the nonzero real roots the way the blow-up descent needs:
    /// either there are none, or exactly one and it is a rational double
    /// root, or at least one simple root exists, or anything else.
    pub fn double_root_factor(&self) -> Result<RootClassification, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(RootClassification::NoNonzeroRealRoots);
        }
        let distinct = self.nonzero_real_root_count()?;
        if distinct == 0 {
            return Ok(RootClassification::NoNonzeroRealRoots);
        }
        let g = self.gcd(&self.derivative());
        let multiple = if g.degree().map_or(true, |d| d == 0) {
            0
        } else {
            g.nonzero_real_root_count()?
        };
        if distinct > multiple {
            // A nonzero real root of multiplicity one exists.
            return Ok(RootClassification::SimpleNonzeroRootExists);
        }
        if distinct == 1 {
            for cand in g.rational_roots() {
                if !cand.is_zero() && self.root_multiplicity(&cand) == 2 {
                    return Ok(RootClassification::DoubleRoot { root: cand });
                }
            }
        }
        Ok(RootClassification::Other)
    }

    /// Complete functional decomposition: all nontrivial `(g, h)` with
    /// `self = g(h)`, one per admissible inner degree, normalized so that
    /// `h(0) = 0` and the lowest-degree nonzero coefficient of `h` is 1.
    /// Errors for constant or linear input; an indecomposable polynomial of
    /// degree >= 2 yields the empty list.
    pub fn decompose_complete(&self) -> Result<Vec<(RatPoly, RatPoly)>, PolyError> {
        let n = self.degree().filter(|&d| d >= 2).ok_or(PolyError::DecompositionDegree)?;
        let lead = self.leading().expect("degree >= 2").clone();
        let monic = self.scale(&(Rat::one() / &lead));
        let mut out = Vec::new();
        for d in 2..n {
            if n % d != 0 {
                continue;
            }
            let e = (n / d) as u32;
            if let Some(h) = inner_candidate(&monic, d, e) {
                // The inner component is pinned (monic, h(0)=0); check that
                // the h-adic digits of the original polynomial are constants.
                if let Some(g) = outer_from_digits(self, &h) {
                    let (g, h) = normalize_decomposition(g, h);
                    debug_assert_eq!(g.compose(&h), *self);
                    out.push((g, h));
                }
            }
        }
        Ok(out)
    }
}

/// Result of [`RatPoly::double_root_factor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootClassification {
    /// No nonzero real roots at all.
    NoNonzeroRealRoots,
    /// Exactly one nonzero real root, rational, of multiplicity two.
    DoubleRoot { root: Rat },
    /// At least one nonzero real root of multiplicity one exists.
    SimpleNonzeroRootExists,
    /// Anything else (e.g. higher multiplicities or irrational double roots).
    Other,
}

enum ChainPoint<'a> {
    NegInf,
    PosInf,
    At(&'a Rat),
}

fn endpoint_value(e: &Endpoint) -> ChainPoint<'_> {
    match e {
        Endpoint::NegInf => ChainPoint::NegInf,
        Endpoint::PosInf => ChainPoint::PosInf,
        Endpoint::Excl(x) | Endpoint::Incl(x) => ChainPoint::At(x),
    }
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].divmod(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_variations(chain: &[RatPoly], at: ChainPoint<'_>) -> usize {
    let mut last = 0i32;
    let mut changes = 0;
    for p in chain {
        let s = match at {
            ChainPoint::At(x) => sign(&p.eval(x)),
            ChainPoint::PosInf => p.leading().map_or(0, sign),
            ChainPoint::NegInf => p.leading().map_or(0, |l| {
                let s = sign(l);
                if p.degree().unwrap_or(0) % 2 == 0 {
                    s
                } else {
                    -s
                }
            }),
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division; constants here come from small edge polynomials.
    let mut divs = Vec::new();
    if n.is_zero() {
        return divs;
    }
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if &dd > n {
            break;
        }
        if n.is_multiple_of(&d) {
            divs.push(d.clone());
            let q = n / &d;
            if q != d {
                divs.push(q);
            }
        }
        d += 1;
    }
    divs
}

/// Candidate monic inner component of degree `d` with zero constant term,
/// read off triangularly from the top `d` coefficients of the monic input.
fn inner_candidate(monic: &RatPoly, d: usize, e: u32) -> Option<RatPoly> {
    let n = monic.degree()?;
    let mut h = RatPoly::monomial(Rat::one(), d);
    for k in 1..d {
        // Coefficient of x^(n-k) in h^e is linear in the unknown h_{d-k}
        // with slope e (h is monic), all higher coefficients already fixed.
        let he = h.pow(e);
        let current = he.coeff(n - k);
        let target = monic.coeff(n - k);
        let t = (target - current) / rat(e as i64);
        if !t.is_zero() {
            h = h.add(&RatPoly::monomial(t, d - k));
        }
    }
    Some(h)
}

/// Expands `f` in base `h` and returns the outer polynomial when every digit
/// is a constant.
fn outer_from_digits(f: &RatPoly, h: &RatPoly) -> Option<RatPoly> {
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divmod(h).ok()?;
        if r.degree().is_some_and(|d| d > 0) {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(RatPoly::new(digits))
}

/// Rescales `(g, h)` so the lowest-degree nonzero coefficient of `h` is 1.
fn normalize_decomposition(g: RatPoly, h: RatPoly) -> (RatPoly, RatPoly) {
    let c = h.trailing().expect("inner component nonzero").clone();
    if c.is_one() {
        return (g, h);
    }
    let h2 = h.scale(&(Rat::one() / &c));
    let g2 = g.compose(&RatPoly::new(vec![Rat::zero(), c]));
    (g2, h2)
}

/// Exact square roots of a rational `x`, i.e. solutions of `t^2 = x` in Q.
pub fn rational_square_roots(x: &Rat) -> Vec<Rat> {
    match rat_sqrt_exact(x) {
        Some(r) if r.is_zero() => vec![r],
        Some(r) => vec![r.clone(), -r],
        None => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    #[test]
    fn basic_ring_ops() {
        let a = p(&[1, 2, 3]); // 1 + 2x + 3x^2
        let b = p(&[0, -1]); // -x
        assert_eq!(a.mul(&b), p(&[0, -1, -2, -3]));
        assert_eq!(a.add(&b), p(&[1, 1, 3]));
        assert_eq!(a.derivative(), p(&[2, 6]));
        assert_eq!(p(&[2, 6]).antiderivative(), p(&[0, 2, 3]));
        assert_eq!(a.eval(&rat(2)), rat(17));
        assert_eq!(a.degree(), Some(2));
        assert_eq!(RatPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 5]).valuation(), Some(2));
    }

    #[test]
    fn divmod_and_gcd() {
        let f = p(&[-1, 0, 1]); // x^2 - 1
        let g = p(&[-1, 1]); // x - 1
        let (q, r) = f.divmod(&g).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&g), g);
        assert!(f.exact_div(&p(&[1, 1])).is_ok());
        assert_eq!(p(&[1, 1]).exact_div(&f), Err(PolyError::InexactDivision));
    }

    #[test]
    fn reverse_matches_spec_example() {
        // P0 = -x reversed at order n = 5 gives -u^4.
        let p0 = p(&[0, -1]);
        assert_eq!(p0.reverse(5).unwrap(), p(&[0, 0, 0, 0, -1]));
        assert_eq!(
            p(&[0, 0, 1]).reverse(1),
            Err(PolyError::ReverseOrderTooSmall { order: 1, degree: 2 })
        );
        // Involution on the support: reversing twice at the same order is
        // the identity when the valuation is positive enough.
        let q = p(&[3, 0, -2, 5]);
        assert_eq!(q.reverse(3).unwrap().reverse(3).unwrap(), q);
    }

    #[test]
    fn sturm_counts_known_roots() {
        // (x-1)(x+2)(x-3) has roots 1, -2, 3.
        let f = p(&[-1, 1]).mul(&p(&[2, 1])).mul(&p(&[-3, 1]));
        assert_eq!(f.sturm_real_root_count(&Endpoint::NegInf, &Endpoint::PosInf).unwrap(), 3);
        assert_eq!(
            f.sturm_real_root_count(&Endpoint::Excl(rat(0)), &Endpoint::PosInf).unwrap(),
            2
        );
        assert_eq!(
            f.sturm_real_root_count(&Endpoint::Excl(rat(1)), &Endpoint::Incl(rat(3))).unwrap(),
            1
        );
        assert_eq!(
            f.sturm_real_root_count(&Endpoint::Incl(rat(1)), &Endpoint::Incl(rat(3))).unwrap(),
            2
        );
        // x^2 + 1 has no real roots.
        assert_eq!(
            p(&[1, 0, 1]).sturm_real_root_count(&Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            0
        );
        // Multiplicities collapse: (x-1)^3 counts once.
        let c = p(&[-1, 1]).pow(3);
        assert_eq!(c.sturm_real_root_count(&Endpoint::NegInf, &Endpoint::PosInf).unwrap(), 1);
    }

    #[test]
    fn double_root_classification() {
        // -v^3 - v: no nonzero real roots.
        assert_eq!(
            p(&[0, -1, 0, -1]).double_root_factor().unwrap(),
            RootClassification::NoNonzeroRealRoots
        );
        // v(v-2)^2: unique nonzero real root 2, multiplicity two.
        let f = p(&[0, 1]).mul(&p(&[-2, 1]).pow(2));
        assert_eq!(
            f.double_root_factor().unwrap(),
            RootClassification::DoubleRoot { root: rat(2) }
        );
        // v(v^2 - 2): simple irrational roots.
        assert_eq!(
            p(&[0, -2, 0, 1]).double_root_factor().unwrap(),
            RootClassification::SimpleNonzeroRootExists
        );
        // (v-1)^3: triple root is not a double root.
        assert_eq!(p(&[-1, 1]).pow(3).double_root_factor().unwrap(), RootClassification::Other);
        // Double root with an extra simple root still reports the simple one.
        let g = p(&[-1, 1]).pow(2).mul(&p(&[3, 1]));
        assert_eq!(
            g.double_root_factor().unwrap(),
            RootClassification::SimpleNonzeroRootExists
        );
    }

    #[test]
    fn rational_roots_via_rrt() {
        let f = p(&[0, 1]).mul(&p(&[-2, 3])).mul(&p(&[5, 2])); // x(3x-2)(2x+5)
        let mut roots = f.rational_roots();
        roots.sort();
        assert_eq!(roots, vec![ratq(-5, 2), rat(0), ratq(2, 3)]);
    }

    #[test]
    fn decompose_finds_inner_square() {
        // F = (x^2 + x)^2 + 3(x^2 + x)  decomposes through h = x^2 + x.
        let h = p(&[0, 1, 1]);
        let g = p(&[0, 3, 1]);
        let f = g.compose(&h);
        let decs = f.decompose_complete().unwrap();
        assert_eq!(decs.len(), 1);
        let (g2, h2) = &decs[0];
        assert_eq!(h2, &h); // already normalized: h(0)=0, lowest coeff 1
        assert_eq!(g2.compose(h2), f);
    }

    #[test]
    fn decompose_normalizes_lowest_coefficient() {
        // F = (2x^2)^3: inner candidate x^2 after normalization.
        let f = p(&[0, 0, 2]).pow(3);
        let decs = f.decompose_complete().unwrap();
        assert!(!decs.is_empty());
        for (g, h) in &decs {
            assert_eq!(h.trailing().unwrap(), &Rat::one());
            assert_eq!(h.coeff(0), Rat::zero());
            assert_eq!(g.compose(h), f);
        }
        // Degree-2 inner present.
        assert!(decs.iter().any(|(_, h)| h.degree() == Some(2)));
    }

    #[test]
    fn decompose_rejects_small_and_prime() {
        assert_eq!(p(&[1, 2]).decompose_complete(), Err(PolyError::DecompositionDegree));
        // Degree 3 with no decomposition structure: empty list.
        assert!(p(&[1, 1, 0, 1]).decompose_complete().unwrap().is_empty());
        // x^6 + x + 1 is indecomposable.
        let mut c = vec![1i64, 1, 0, 0, 0, 0, 1];
        let f = RatPoly::new(c.drain(..).map(rat).collect());
        assert!(f.decompose_complete().unwrap().is_empty());
    }

    #[test]
    fn compose_neg_and_shift() {
        let f = p(&[1, 2, 3, 4]);
        assert_eq!(f.compose_neg_x(), p(&[1, -2, 3, -4]));
        assert_eq!(f.shift_up(2).div_xpow(2).unwrap(), f);
        assert!(f.div_xpow(1).is_err());
    }
}
