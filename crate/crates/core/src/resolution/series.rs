//! Search for half-integer-exponent formal invariant curves.
//!
//! Given a planar field `F d/du + G d/dv`, a curve `v = Phi(u)` with
//! `Phi = sum_k c_k u^(k/2)` (`c_k` real, `Phi(0) = 0`) is invariant exactly
//! when the residual `G(u, Phi) - F(u, Phi) Phi'(u)` vanishes identically.
//! This module solves for the `c_k` by undetermined coefficients up to a
//! requested exponent bound, exploring every root branch of the coefficient
//! equations with a worklist. Coefficients usually stay rational, but a
//! branching quadratic can introduce a square root; all later coefficients
//! then live in the same real quadratic extension, which [`QuadExt`]
//! represents exactly.
//!
//! The search is deliberately independent from the polygon descent in the
//! parent module: the two are cross-checked against each other, one deciding
//! "no curve exists", the other exhibiting a witness.

use super::PlanarField;
use crate::bipoly::BiRatPoly;
use crate::poly::RatPoly;
use crate::quadext::QuadExt;
use crate::rational::{rat, ratq, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

const VAL_INF: i64 = i64::MAX / 4;

/// Truncated series witness `Phi = sum coeffs[k] * u^((k+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSeries {
    /// `coeffs[k]` multiplies `u^((k+1)/2)`.
    pub coeffs: Vec<QuadExt>,
}

impl FractionalSeries {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Leading term as `(twice_exponent, coefficient)`.
    pub fn leading(&self) -> Option<(i64, &QuadExt)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 + 1, c))
    }

    /// Human-readable rendering, e.g. `2*u^2 - 1/3*u^(5/2)`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let two_e = k as i64 + 1;
            let e = if two_e % 2 == 0 {
                format!("u^{}", two_e / 2)
            } else {
                format!("u^({}/2)", two_e)
            };
            parts.push(format!("({})*{}", c, e));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Result of the curve search.
#[derive(Debug, Clone)]
pub struct CurveSearchOutcome {
    /// A verified witness, if some branch closed consistently.
    pub witness: Option<FractionalSeries>,
    /// False when some branch required a real root outside the supported
    /// coefficient fields (plain rationals and one quadratic extension), so
    /// "no witness" is not a proof of absence. Eligible inputs never trip it.
    pub exhaustive: bool,
}

/// Polynomial in the current unknown coefficient, over a quadratic extension.
#[derive(Debug, Clone)]
struct TPoly(Vec<QuadExt>);

impl TPoly {
    fn zero() -> Self {
        TPoly(vec![])
    }

    fn constant(c: QuadExt) -> Self {
        let mut p = TPoly(vec![c]);
        p.trim();
        p
    }

    fn unknown() -> Self {
        TPoly(vec![QuadExt::zero(), QuadExt::from_rat(rat(1))])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn as_constant(&self) -> Option<&QuadExt> {
        (self.0.len() == 1).then(|| &self.0[0])
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_else(QuadExt::zero);
            let b = rhs.0.get(k).cloned().unwrap_or_else(QuadExt::zero);
            out.push(a.add(&b));
        }
        let mut p = TPoly(out);
        p.trim();
        p
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![QuadExt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        let mut p = TPoly(out);
        p.trim();
        p
    }

    fn scale_rat(&self, c: &Rat) -> Self {
        let mut p = TPoly(self.0.iter().map(|a| a.scale(c)).collect());
        p.trim();
        p
    }

}

/// Truncated series in `u^(1/2)` with [`TPoly`] coefficients, keyed by twice
/// the exponent. Keys above `cap2` are discarded eagerly.
#[derive(Debug, Clone)]
struct TSeries {
    terms: BTreeMap<i64, TPoly>,
    cap2: i64,
}

impl TSeries {
    fn zero(cap2: i64) -> Self {
        TSeries { terms: BTreeMap::new(), cap2 }
    }

    fn insert(&mut self, key: i64, p: TPoly) {
        if key > self.cap2 || p.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, p);
            }
            Some(old) => {
                let s = old.add(&p);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, p) in &rhs.terms {
            out.insert(k, p.clone());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = TSeries::zero(self.cap2);
        for (&k1, p1) in &self.terms {
            for (&k2, p2) in &rhs.terms {
                if k1 + k2 > self.cap2 {
                    break;
                }
                out.insert(k1 + k2, p1.mul(p2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        TSeries {
            terms: self
                .terms
                .iter()
                .map(|(&k, p)| (k, p.scale_rat(&rat(-1))))
                .collect(),
            cap2: self.cap2,
        }
    }

    /// `d/du`: the key drops by 2 and the coefficient picks up `key/2`.
    fn derivative_u(&self) -> Self {
        let mut out = TSeries::zero(self.cap2);
        for (&k, p) in &self.terms {
            if k == 0 {
                continue;
            }
            out.insert(k - 2, p.scale_rat(&ratq(k, 2)));
        }
        out
    }

    /// Smallest key with a nonzero coefficient (as a polynomial in the
    /// unknown), or `VAL_INF`.
    fn valuation2(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(VAL_INF)
    }
}

/// Evaluates a bivariate polynomial at `(u, Phi)` where `Phi` is a series.
fn eval_at_series(poly: &BiRatPoly, phi: &TSeries, phi_pows: &[TSeries]) -> TSeries {
    let cap2 = phi.cap2;
    let mut out = TSeries::zero(cap2);
    for (&(a, b), c) in poly.terms() {
        let ua = 2 * a as i64;
        if ua > cap2 {
            continue;
        }
        let pw = &phi_pows[b as usize];
        for (&k, p) in &pw.terms {
            if ua + k > cap2 {
                break;
            }
            out.insert(ua + k, p.scale_rat(c));
        }
    }
    out
}

fn series_powers(phi: &TSeries, max_pow: u32) -> Vec<TSeries> {
    let mut pows = Vec::with_capacity(max_pow as usize + 1);
    let mut one = TSeries::zero(phi.cap2);
    one.insert(0, TPoly::constant(QuadExt::from_rat(rat(1))));
    pows.push(one);
    for k in 1..=max_pow {
        let prev = &pows[(k - 1) as usize];
        pows.push(prev.mul(phi));
    }
    pows
}

/// Builds `Phi_t = sum coeffs[k] u^((k+1)/2) + t u^(unknown_key2/2)`.
/// Passing `unknown_key2 = None` gives the concrete truncation.
fn build_series(coeffs: &[QuadExt], unknown_key2: Option<i64>, cap2: i64) -> TSeries {
    let mut s = TSeries::zero(cap2);
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            s.insert(k as i64 + 1, TPoly::constant(c.clone()));
        }
    }
    if let Some(k2) = unknown_key2 {
        s.insert(k2, TPoly::unknown());
    }
    s
}

struct ResidualData {
    residual: TSeries,
    /// Twice the lowest exponent a *later* unknown could still perturb.
    final_below2: i64,
}

/// Residual `G(u, Phi) - F(u, Phi) Phi'` together with the finality
/// threshold for equations in the current unknown.
fn residual_with_threshold(
    field: &PlanarField,
    coeffs: &[QuadExt],
    unknown_key2: Option<i64>,
    cap2: i64,
) -> ResidualData {
    let phi = build_series(coeffs, unknown_key2, cap2);
    let max_pow = field.f.v_degree().unwrap_or(0).max(field.g.v_degree().unwrap_or(0));
    let pows = series_powers(&phi, max_pow);
    let f_at = eval_at_series(&field.f, &phi, &pows);
    let g_at = eval_at_series(&field.g, &phi, &pows);
    let dphi = phi.derivative_u();
    let residual = g_at.add(&f_at.mul(&dphi).neg());
    // A later coefficient d * u^(j/2) (j > current unknown index) first
    // perturbs the residual at exponent >= j/2 + min(val(G_v), val(F) - 1,
    // val(F_v * Phi')), all valuations taken on the current series. Using
    // lower bounds here only defers equations, never finalizes them early.
    let gv_at = eval_at_series(&field.g.dv(), &phi, &pows);
    let fv_at = eval_at_series(&field.f.dv(), &phi, &pows);
    let d2 = gv_at
        .valuation2()
        .min(f_at.valuation2().saturating_sub(2))
        .min(fv_at.mul(&dphi).valuation2());
    let next_key2 = unknown_key2.map_or(VAL_INF, |k| k + 1);
    let final_below2 = next_key2.saturating_add(d2);
    ResidualData { residual, final_below2 }
}

/// All roots of a low-degree [`TPoly`] representable in (at most one) real
/// quadratic extension. The boolean is false when real roots may exist
/// outside that representation.
fn tpoly_roots(p: &TPoly) -> (Vec<QuadExt>, bool) {
    let mut c = p.0.clone();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    match c.len() {
        0 | 1 => (vec![], true),
        2 => (vec![c[0].neg().div(&c[1])], true),
        3 => {
            let (roots, exhaustive) = quadratic_roots(&c[0], &c[1], &c[2]);
            (roots, exhaustive)
        }
        _ => {
            // Degree >= 3: peel a zero root, then try rational roots, then a
            // residual quadratic.
            if c[0].is_zero() {
                let (mut roots, ex) = tpoly_roots(&TPoly(c[1..].to_vec()));
                if !roots.iter().any(|r| r.is_zero()) {
                    roots.push(QuadExt::zero());
                }
                return (roots, ex);
            }
            if c.iter().all(|x| x.is_rational()) {
                let rp = RatPoly::new(c.iter().map(|x| x.a.clone()).collect());
                let mut rest = rp.clone();
                let mut roots = Vec::new();
                for r in rp.rational_roots() {
                    roots.push(QuadExt::from_rat(r.clone()));
                    let lin = RatPoly::new(vec![-r.clone(), rat(1)]);
                    while let Ok(q) = rest.exact_div(&lin) {
                        rest = q;
                        if !rest.eval(&r).is_zero() {
                            break;
                        }
                    }
                }
                if rest.degree() == Some(2) {
                    let (mut qroots, ex) = quadratic_roots(
                        &QuadExt::from_rat(rest.coeff(0)),
                        &QuadExt::from_rat(rest.coeff(1)),
                        &QuadExt::from_rat(rest.coeff(2)),
                    );
                    for r in qroots.drain(..) {
                        if !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                    return (roots, ex);
                }
                // Fully deflated, or an odd-degree remainder with no rational
                // root: real roots of the remainder are unrepresentable.
                let exhaustive = rest.degree().map_or(true, |d| d < 2)
                    || rest.sturm_real_root_count(&crate::poly::Endpoint::NegInf, &crate::poly::Endpoint::PosInf)
                        .map_or(false, |n| n == 0);
                return (roots, exhaustive);
            }
            (vec![], false)
        }
    }
}

/// Real roots of `c2 t^2 + c1 t + c0` inside the quadratic-extension tower.
fn quadratic_roots(c0: &QuadExt, c1: &QuadExt, c2: &QuadExt) -> (Vec<QuadExt>, bool) {
    debug_assert!(!c2.is_zero());
    let four = QuadExt::from_rat(rat(4));
    let two = QuadExt::from_rat(rat(2));
    let disc = c1.mul(c1).sub(&four.mul(c2).mul(c0));
    match disc.sign() {
        -1 => (vec![], true),
        0 => (vec![c1.neg().div(&two.mul(c2))], true),
        _ => match disc.sqrt_in_real_quadratic() {
            Some(s) => {
                let r1 = c1.neg().add(&s).div(&two.mul(c2));
                let r2 = c1.neg().sub(&s).div(&two.mul(c2));
                (vec![r1, r2], true)
            }
            // Real roots exist but leave the representable tower.
            None => (vec![], false),
        },
    }
}

/// Verifies a concrete truncation: every residual coefficient with exponent
/// `<= cap2/2` must vanish.
fn residual_vanishes(field: &PlanarField, coeffs: &[QuadExt], cap2: i64) -> bool {
    let data = residual_with_threshold(field, coeffs, None, cap2);
    data.residual.terms.is_empty()
}

/// Searches for a nonzero formal invariant curve `v = Phi(u)`,
/// `Phi in R[[u^(1/2)]]`, `Phi(0) = 0`, solving coefficient equations up to
/// exponent `order_bound` by undetermined coefficients. With `u_negative`
/// the field is conjugated first, so the witness describes the `u <= 0` side.
/// `require_nonzero` excludes the identically-zero assignment (used when the
/// axis `v = 0` is trivially invariant).
pub fn fractional_curve_search(
    field: &PlanarField,
    order_bound: usize,
    u_negative: bool,
    require_nonzero: bool,
) -> CurveSearchOutcome {
    let field = if u_negative { field.conjugate_u() } else { field.clone() };
    let cap2 = 2 * order_bound as i64;
    let max_index = (2 * order_bound).max(1);
    let mut exhaustive = true;
    // DFS over coefficient assignments; each entry fixes a prefix of the
    // coefficient vector.
    let mut stack: Vec<Vec<QuadExt>> = vec![vec![]];
    let mut steps = 0usize;
    while let Some(coeffs) = stack.pop() {
        steps += 1;
        if steps > 200_000 {
            // Unreachable for sane inputs; refuse to loop forever.
            exhaustive = false;
            break;
        }
        if coeffs.len() == max_index {
            if residual_vanishes(&field, &coeffs, cap2)
                && (!require_nonzero || coeffs.iter().any(|c| !c.is_zero()))
            {
                return CurveSearchOutcome {
                    witness: Some(FractionalSeries { coeffs }),
                    exhaustive,
                };
            }
            continue;
        }
        let unknown_key2 = coeffs.len() as i64 + 1;
        let data = residual_with_threshold(&field, &coeffs, Some(unknown_key2), cap2);
        let mut handled = false;
        let mut dead = false;
        for (&key, tp) in &data.residual.terms {
            if key >= data.final_below2 {
                break;
            }
            if let Some(c) = tp.as_constant() {
                if !c.is_zero() {
                    dead = true;
                    break;
                }
                continue;
            }
            // First finalized equation that actually mentions the unknown:
            // branch over its representable real roots.
            let (roots, ex) = tpoly_roots(tp);
            if !ex {
                exhaustive = false;
            }
            for r in roots {
                let mut next = coeffs.clone();
                next.push(r);
                stack.push(next);
            }
            handled = true;
            break;
        }
        if dead || handled {
            continue;
        }
        // The unknown is not pinned by any finalized equation; default it to
        // zero. If it does occur in a deferred equation, record that the
        // zero default may hide other solution slices.
        if data
            .residual
            .terms
            .values()
            .any(|tp| tp.as_constant().is_none())
        {
            exhaustive = false;
        }
        let mut next = coeffs;
        next.push(QuadExt::zero());
        stack.push(next);
    }
    CurveSearchOutcome { witness: None, exhaustive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn qr(n: i64) -> QuadExt {
        QuadExt::from_rat(rat(n))
    }

    /// F = u^3, G = 2u^4 + v^2 - u^2 v has the exact invariant curve v = u^2.
    #[test]
    fn finds_planted_polynomial_curve() {
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 3, 0),
            BiRatPoly::term(rat(2), 4, 0)
                .add(&BiRatPoly::term(rat(1), 0, 2))
                .add(&BiRatPoly::term(rat(-1), 2, 1)),
        );
        let out = fractional_curve_search(&field, 4, false, true);
        assert!(out.exhaustive);
        let w = out.witness.expect("curve exists");
        assert_eq!(w.leading(), Some((4, &qr(1)))); // u^2
        assert!(residual_vanishes(&field, &w.coeffs, 8));
    }

    /// The certified quintic chart F = u^7, G = -v^3 - u^4 v admits no curve.
    #[test]
    fn no_curve_for_certified_chart() {
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(-1), 4, 1)),
        );
        for neg in [false, true] {
            let out = fractional_curve_search(&field, 5, neg, true);
            assert!(out.exhaustive);
            assert!(out.witness.is_none());
        }
    }

    /// Flipping one sign plants simple roots ±sqrt(2): a witness exists with
    /// an irrational leading coefficient.
    #[test]
    fn finds_irrational_leading_coefficient() {
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(2), 4, 1)),
        );
        // The coefficient equation c(2 - c^2) = 0 sits at residual exponent
        // 6, so the order bound must reach it.
        let out = fractional_curve_search(&field, 7, false, true);
        let w = out.witness.expect("simple-root witness");
        let (key2, lead) = w.leading().unwrap();
        assert_eq!(key2, 4); // leading exponent 2 = edge weight p
        assert_eq!(lead.mul(lead), qr(2)); // coefficient is ±sqrt(2)
    }

    /// Shifted chart of y' = -x - x^3 y^2: the zero series is not invariant
    /// (G(u, 0) != 0) and no nonzero curve exists either.
    #[test]
    fn shifted_chart_has_no_curve() {
        let field = PlanarField::new(
            BiRatPoly::term(rat(-1), 5, 1),
            BiRatPoly::term(rat(-1), 2, 0).add(&BiRatPoly::term(rat(-1), 0, 2)),
        );
        for neg in [false, true] {
            let out = fractional_curve_search(&field, 4, neg, false);
            assert!(out.exhaustive, "search must be conclusive");
            assert!(out.witness.is_none());
        }
    }

    /// Odd-width edge: roots only appear on one side of u = 0.
    #[test]
    fn half_integer_exponent_witness() {
        // F = u^7, G = -v^3 + u^3 v: edge (0,2)-(3,0), weights (3,2);
        // expected leading term c * u^(3/2) with c^2 = 1... the edge equation
        // here is 2*(-1)v^3 + 2*1*v = 0 at the half-exponent, giving c = ±1.
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(1), 3, 1)),
        );
        let out = fractional_curve_search(&field, 5, false, true);
        let w = out.witness.expect("half-integer witness");
        let (key2, _) = w.leading().unwrap();
        assert_eq!(key2, 3); // exponent 3/2
        // And on the conjugated side the signs turn against a real solution.
        let out_neg = fractional_curve_search(&field, 5, true, true);
        assert!(out_neg.witness.is_none());
        assert!(out_neg.exhaustive);
    }
}
