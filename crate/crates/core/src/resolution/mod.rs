//! Newton polygons, weighted blow-ups and the double-root descent.
//!
//! A [`PlanarField`] is a polynomial vector field `F(u,v) d/du + G(u,v) d/dv`.
//! Its support lives at the shifted lattice points `(i, j)` carrying the
//! coefficient pair `(f_{i+1,j}, g_{i,j+1})`; the Newton polygon is the
//! compact part of the lower-left boundary of the support's positive hull.
//! The descent repeatedly blows up the unique double root of the single edge
//! polynomial until it either certifies a saddle-like corner (no nonzero real
//! roots) or exhibits one of the failure shapes. The companion
//! [`series`] module solves the dual problem directly: searching for a
//! half-integer-exponent invariant curve by undetermined coefficients.

pub mod series;

pub use series::{fractional_curve_search, CurveSearchOutcome, FractionalSeries};

use crate::bipoly::BiRatPoly;
use crate::poly::{PolyError, RatPoly, RootClassification};
use crate::rational::Rat;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Errors from polygon/blow-up machinery.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("blow-up weights must be coprime (got p={p}, q={q})")]
    WeightsNotCoprime { p: u32, q: u32 },
    #[error("the zero vector field has no Newton polygon")]
    EmptyField,
    #[error("descent exceeded its depth bound {bound}; the input violates the eligibility contract")]
    DepthExceeded { bound: usize },
}

/// Polynomial planar vector field `F d/du + G d/dv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarField {
    pub f: BiRatPoly,
    pub g: BiRatPoly,
}

impl PlanarField {
    pub fn new(f: BiRatPoly, g: BiRatPoly) -> Self {
        Self { f, g }
    }

    /// The field seen from `u -> -u` (the left half-plane branch).
    pub fn conjugate_u(&self) -> Self {
        Self {
            f: self.f.conjugate_u().neg(),
            g: self.g.conjugate_u(),
        }
    }

    fn f_coeff(&self, i: i64, j: i64) -> Rat {
        if i < 0 || j < 0 {
            Rat::zero()
        } else {
            self.f.coeff(i as u32, j as u32)
        }
    }

    fn g_coeff(&self, i: i64, j: i64) -> Rat {
        if i < 0 || j < 0 {
            Rat::zero()
        } else {
            self.g.coeff(i as u32, j as u32)
        }
    }

    /// Support: points `(i, j)` with `(f_{i+1,j}, g_{i,j+1}) != (0,0)`.
    /// F-terms sit one step left, G-terms one step down, so `i, j >= -1`.
    pub fn support(&self) -> BTreeSet<SupportPoint> {
        let mut pts = BTreeSet::new();
        for (&(a, b), _) in self.f.terms() {
            pts.insert(SupportPoint { i: a as i64 - 1, j: b as i64 });
        }
        for (&(a, b), _) in self.g.terms() {
            pts.insert(SupportPoint { i: a as i64, j: b as i64 - 1 });
        }
        pts
    }

    /// The weighted order `sigma = min { q i + p j }` over the support.
    pub fn weighted_order(&self, p: u32, q: u32) -> Option<i64> {
        self.support()
            .iter()
            .map(|pt| q as i64 * pt.i + p as i64 * pt.j)
            .min()
    }

    /// Edge polynomial: the weighted combination of coefficients along the
    /// lattice points of `edge`, as a polynomial in the fibre variable.
    pub fn edge_polynomial(&self, edge: &PolygonEdge) -> RatPoly {
        let p = edge.p as i64;
        let q = edge.q as i64;
        let mut coeffs = Vec::new();
        for &(i, j) in &edge.lattice {
            let c = crate::rational::rat(q) * self.g_coeff(i, j + 1) - crate::rational::rat(p) * self.f_coeff(i + 1, j);
            let k = (j + 1) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] = c;
        }
        RatPoly::new(coeffs)
    }
}

/// A support lattice point (F-coefficients shifted left, G shifted down).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SupportPoint {
    pub i: i64,
    pub j: i64,
}

/// One compact edge of the Newton polygon, lying on `q u + p v = sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonEdge {
    /// Upper-left vertex.
    pub from: (i64, i64),
    /// Lower-right vertex.
    pub to: (i64, i64),
    /// Coprime weights: the edge direction is `(p, -q)`.
    pub p: u32,
    pub q: u32,
    /// Weighted order of the edge line.
    pub sigma: i64,
    /// Vertical extent (`from.1 - to.1`).
    pub height: u32,
    /// Horizontal extent (`to.0 - from.0`).
    pub width: u32,
    /// All integer lattice points on the closed segment.
    pub lattice: Vec<(i64, i64)>,
}

/// Compact Newton polygon: the strictly-decreasing edges of the lower-left
/// hull, ordered from the upper-left vertex to the lower-right one.
pub fn newton_polygon(support: &BTreeSet<SupportPoint>) -> Vec<PolygonEdge> {
    // Keep only the lowest point in each column, sorted by i.
    let mut cols: Vec<(i64, i64)> = Vec::new();
    for pt in support {
        match cols.last_mut() {
            Some((i, j)) if *i == pt.i => {
                if pt.j < *j {
                    *j = pt.j;
                }
            }
            _ => cols.push((pt.i, pt.j)),
        }
    }
    // Lower convex hull (monotone chain); collinear points are dropped.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &cols {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.1 >= a.1 {
            // Non-negative slope: past the lowest vertex; not part of the
            // compact polygon.
            break;
        }
        let di = b.0 - a.0;
        let dj = a.1 - b.1;
        let g = di.gcd(&dj);
        let p = (di / g) as u32;
        let q = (dj / g) as u32;
        let sigma = q as i64 * a.0 + p as i64 * a.1;
        let lattice = (0..=g)
            .map(|t| (a.0 + t * p as i64, a.1 - t * q as i64))
            .collect();
        edges.push(PolygonEdge {
            from: a,
            to: b,
            p,
            q,
            sigma,
            height: dj as u32,
            width: di as u32,
            lattice,
        });
    }
    edges
}

/// Divides by `u^k` when `k >= 0`, multiplies by `u^(-k)` otherwise.
fn shift_u(poly: &BiRatPoly, k: i64) -> Result<BiRatPoly, PolyError> {
    if k >= 0 {
        poly.div_upow(k as u32)
    } else {
        Ok(poly.mul(&BiRatPoly::term(crate::rational::rat(1), (-k) as u32, 0)))
    }
}

fn shift_v(poly: &BiRatPoly, k: i64) -> Result<BiRatPoly, PolyError> {
    if k >= 0 {
        poly.div_vpow(k as u32)
    } else {
        Ok(poly.mul(&BiRatPoly::term(crate::rational::rat(1), 0, (-k) as u32)))
    }
}

/// Directional blow-up `u = u1^q`, `v = u1^p (phi + v1)` with the common
/// factor `u1^sigma / q` removed:
///
/// `F1 = F(u,v) / u1^(sigma+q-1)`,
/// `G1 = q G(u,v) / u1^(sigma+p) - p (phi + v1) F(u,v) / u1^(sigma+q)`.
///
/// `sigma` is the weighted order of the field for `(p, q)`, so both divisions
/// are exact by construction; inexactness signals a corrupted invariant.
pub fn blowup_u(field: &PlanarField, p: u32, q: u32, phi: &Rat) -> Result<PlanarField, ResolutionError> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(ResolutionError::WeightsNotCoprime { p, q });
    }
    let sigma = field.weighted_order(p, q).ok_or(ResolutionError::EmptyField)?;
    let fs = field.f.subst_blowup(p, q, phi);
    let gs = field.g.subst_blowup(p, q, phi);
    let f1 = shift_u(&fs, sigma + q as i64 - 1)?;
    let shift = BiRatPoly::term(phi.clone(), 0, 0).add(&BiRatPoly::term(crate::rational::rat(1), 0, 1));
    let qg = shift_u(&gs.scale(&crate::rational::rat(q as i64)), sigma + p as i64)?;
    let pf = shift_u(&shift.mul(&fs).scale(&crate::rational::rat(p as i64)), sigma + q as i64)?;
    Ok(PlanarField::new(f1, qg.sub(&pf)))
}

/// Vertical blow-up `u = w z`, `v = s z^p` (`s = ±1`) with the common factor
/// `z^sigma / p` removed:
///
/// `W = p F(u,v) / z^(sigma+1) - s w G(u,v) / z^(sigma+p)`,
/// `Z = s G(u,v) / z^(sigma+p-1)`.
///
/// The returned field's variables are `(w, z)`.
pub fn blowup_vertical(field: &PlanarField, p: u32, sign_negative: bool) -> Result<PlanarField, ResolutionError> {
    if p == 0 {
        return Err(ResolutionError::WeightsNotCoprime { p, q: 0 });
    }
    let sigma = field.weighted_order(p, 1).ok_or(ResolutionError::EmptyField)?;
    let s = if sign_negative { crate::rational::rat(-1) } else { crate::rational::rat(1) };
    let fs = field.f.subst_vertical(p, sign_negative);
    let gs = field.g.subst_vertical(p, sign_negative);
    let w_mono = BiRatPoly::term(crate::rational::rat(1), 1, 0);
    let w_comp = shift_v(&fs.scale(&crate::rational::rat(p as i64)), sigma + 1)?
        .sub(&shift_v(&w_mono.mul(&gs).scale(&s), sigma + p as i64)?);
    let z_comp = shift_v(&gs.scale(&s), sigma + p as i64 - 1)?;
    Ok(PlanarField::new(w_comp, z_comp))
}

/// Why the descent stopped.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalReason {
    /// The single height-2 edge polynomial has no nonzero real roots: the
    /// monodromic pattern is certified at this level.
    NoNonzeroRealRoots,
    /// A simple (multiplicity-one) nonzero real root exists.
    SimpleRootFound,
    /// The single edge has odd width and its edge polynomial has nonzero
    /// real roots (necessarily a simple pair): an invariant-curve branch in
    /// powers of `u^(1/2)` exists on this side of `u = 0`. (The mirror side
    /// sees the conjugated polynomial, whose root pair exists exactly when
    /// this one's does not.)
    OddWidth,
    /// The polygon has more than one compact edge.
    MultipleEdges,
    /// The polygon degenerated (no compact edge, or an edge of height != 2):
    /// the corner is not of saddle type.
    ZeroLeftEndpoint,
    /// Nonzero real roots exist but form neither a lone rational double root
    /// nor a simple root (e.g. a triple or irrational double root).
    IrregularRoots,
}

/// One completed double-root level of the descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentLevel {
    /// Edge weight: the blow-up is `u = u1`, `v = u1^p (phi + v1)`.
    pub p: u32,
    /// The unique (double) nonzero real root of the edge polynomial.
    pub phi: Rat,
    /// The edge polynomial at this level.
    pub edge_poly: RatPoly,
    /// The edge the root came from.
    pub edge: PolygonEdge,
}

/// Outcome of the double-root descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentCertificate {
    /// True when the descent certifies the monodromic (saddle) pattern.
    pub monodromic: bool,
    /// Blow-up chain actually performed (empty when level 0 was terminal).
    pub levels: Vec<DescentLevel>,
    pub terminal: TerminalReason,
    /// Terminal level index (equals `levels.len()`).
    pub depth: usize,
    /// Edge polynomial at the terminal level, when a single edge existed.
    pub terminal_edge_poly: Option<RatPoly>,
}

/// Runs the double-root descent on `field` (conjugated to `u -> -u` first
/// when `u_negative`). At every level the polygon must consist of a single
/// height-2 edge; a lone rational double root of its edge polynomial is blown
/// up and the loop continues, no nonzero real roots certify the pattern, and
/// everything else fails with the corresponding terminal reason.
///
/// `depth_bound` is a hard contract: eligible inputs terminate within it, so
/// exceeding it is reported as an error rather than a verdict.
pub fn m1_descent(
    field: &PlanarField,
    depth_bound: usize,
    u_negative: bool,
) -> Result<DescentCertificate, ResolutionError> {
    let mut current = if u_negative { field.conjugate_u() } else { field.clone() };
    let mut levels: Vec<DescentLevel> = Vec::new();
    loop {
        if levels.len() > depth_bound {
            return Err(ResolutionError::DepthExceeded { bound: depth_bound });
        }
        let support = current.support();
        if support.is_empty() {
            return Err(ResolutionError::EmptyField);
        }
        let polygon = newton_polygon(&support);
        let done = |monodromic, terminal, terminal_edge_poly| {
            Ok(DescentCertificate {
                monodromic,
                depth: levels.len(),
                levels: levels.clone(),
                terminal,
                terminal_edge_poly,
            })
        };
        if polygon.is_empty() {
            return done(false, TerminalReason::ZeroLeftEndpoint, None);
        }
        if polygon.len() > 1 {
            return done(false, TerminalReason::MultipleEdges, None);
        }
        let edge = polygon[0].clone();
        if edge.height != 2 {
            return done(false, TerminalReason::ZeroLeftEndpoint, None);
        }
        let ep = current.edge_polynomial(&edge);
        if edge.width % 2 == 1 {
            // No interior lattice point: the edge polynomial is v(Av^2 + C)
            // with A, C nonzero, so it has either a pair of simple nonzero
            // real roots or none at all.
            return match ep.double_root_factor()? {
                RootClassification::NoNonzeroRealRoots => {
                    done(true, TerminalReason::NoNonzeroRealRoots, Some(ep))
                }
                _ => done(false, TerminalReason::OddWidth, Some(ep)),
            };
        }
        match ep.double_root_factor()? {
            RootClassification::NoNonzeroRealRoots => {
                return done(true, TerminalReason::NoNonzeroRealRoots, Some(ep));
            }
            RootClassification::SimpleNonzeroRootExists => {
                return done(false, TerminalReason::SimpleRootFound, Some(ep));
            }
            RootClassification::Other => {
                return done(false, TerminalReason::IrregularRoots, Some(ep));
            }
            RootClassification::DoubleRoot { root } => {
                // Odd-width edges have coprime direction (width, -2), so they
                // carry no interior lattice point and cannot produce a double
                // root; a double root implies q == 1.
                debug_assert_eq!(edge.q, 1, "double root on a q != 1 edge");
                let next = blowup_u(&current, edge.p, edge.q, &root)?;
                levels.push(DescentLevel {
                    p: edge.p,
                    phi: root,
                    edge_poly: ep,
                    edge,
                });
                current = next;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Chart field of `y' = -x^5 - x y^2` at infinity: F = u^7,
    /// G = -v^3 - u^4 v.
    fn quintic_chart() -> PlanarField {
        PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(-1), 4, 1)),
        )
    }

    #[test]
    fn support_of_quintic_chart() {
        let s = quintic_chart().support();
        let pts: Vec<(i64, i64)> = s.iter().map(|p| (p.i, p.j)).collect();
        assert_eq!(pts, vec![(0, 2), (4, 0), (6, 0)]);
    }

    #[test]
    fn polygon_of_quintic_chart() {
        let field = quintic_chart();
        let edges = newton_polygon(&field.support());
        assert_eq!(edges.len(), 1);
        let e = &edges[0];
        assert_eq!((e.from, e.to), ((0, 2), (4, 0)));
        assert_eq!((e.p, e.q, e.sigma), (2, 1, 4));
        assert_eq!((e.height, e.width), (2, 4));
        assert_eq!(e.lattice, vec![(0, 2), (2, 1), (4, 0)]);
    }

    #[test]
    fn edge_polynomial_of_quintic_chart() {
        let field = quintic_chart();
        let edges = newton_polygon(&field.support());
        // q g_{0,3} v^3 + (q g_{4,1} - p f_{5,0}) v = -v^3 - v.
        assert_eq!(field.edge_polynomial(&edges[0]), RatPoly::from_ints(&[0, -1, 0, -1]));
    }

    #[test]
    fn descent_certifies_quintic_chart() {
        let field = quintic_chart();
        for neg in [false, true] {
            let cert = m1_descent(&field, 4, neg).unwrap();
            assert!(cert.monodromic);
            assert_eq!(cert.terminal, TerminalReason::NoNonzeroRealRoots);
            assert_eq!(cert.depth, 0);
        }
    }

    /// Shifted chart field of `y' = -x - x^3 y^2`: F = -u^5 v, G = -u^2 - v^2.
    fn cubic_shifted_chart() -> PlanarField {
        PlanarField::new(
            BiRatPoly::term(rat(-1), 5, 1),
            BiRatPoly::term(rat(-1), 2, 0).add(&BiRatPoly::term(rat(-1), 0, 2)),
        )
    }

    #[test]
    fn descent_on_shifted_chart() {
        let field = cubic_shifted_chart();
        let s = field.support();
        let pts: Vec<(i64, i64)> = s.iter().map(|p| (p.i, p.j)).collect();
        assert_eq!(pts, vec![(0, 1), (2, -1), (4, 1)]);
        let edges = newton_polygon(&s);
        assert_eq!(edges.len(), 1);
        assert_eq!((edges[0].from, edges[0].to), ((0, 1), (2, -1)));
        assert_eq!((edges[0].p, edges[0].q), (1, 1));
        // -v^2 - 1: no nonzero real roots.
        assert_eq!(field.edge_polynomial(&edges[0]), RatPoly::from_ints(&[-1, 0, -1]));
        for neg in [false, true] {
            let cert = m1_descent(&field, 4, neg).unwrap();
            assert!(cert.monodromic);
            assert_eq!(cert.depth, 0);
        }
    }

    #[test]
    fn descent_blows_up_double_root() {
        // F = u^5, G = -v^3 + 2 u^2 v^2 + u^4 v: edge polynomial
        // -v^3 + 2v^2 - 3v... pick coefficients for a true double root:
        // want v(-v^2 + 2v - 1) = -v (v-1)^2, so g_{4,1} - 2 f_{5,0} = -1.
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 5, 0),
            BiRatPoly::term(rat(-1), 0, 3)
                .add(&BiRatPoly::term(rat(2), 2, 2))
                .add(&BiRatPoly::term(rat(1), 4, 1)),
        );
        let edges = newton_polygon(&field.support());
        assert_eq!(edges.len(), 1);
        let ep = field.edge_polynomial(&edges[0]);
        assert_eq!(ep, RatPoly::from_ints(&[0, -1, 2, -1]));
        let cert = m1_descent(&field, 3, false).unwrap();
        assert_eq!(cert.levels.len(), 1);
        assert_eq!(cert.levels[0].p, 2);
        assert_eq!(cert.levels[0].phi, rat(1));
    }

    #[test]
    fn blowup_drops_to_edge_polynomial_at_origin() {
        // After blowing up the double root, the new fibre restriction at
        // u1 = 0 must be the old edge polynomial shifted by the root.
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 5, 0),
            BiRatPoly::term(rat(-1), 0, 3)
                .add(&BiRatPoly::term(rat(2), 2, 2))
                .add(&BiRatPoly::term(rat(1), 4, 1)),
        );
        let blown = blowup_u(&field, 2, 1, &rat(1)).unwrap();
        // F1 = u^(n+2-2p) = u.
        assert_eq!(blown.f, BiRatPoly::term(rat(1), 1, 0));
        let ep = field.edge_polynomial(&newton_polygon(&field.support())[0]);
        let shifted = ep.compose(&RatPoly::from_ints(&[1, 1])); // P(1 + v1)
        assert_eq!(blown.g.at_u_zero(), shifted);
    }

    #[test]
    fn blowup_substitution_identity() {
        // q G(u(u1), v(u1,v1)) - p (phi+v1) F(...) == u1^(sigma+p) G1 and
        // F(...) == u1^(sigma+q-1) F1, checked as exact polynomial identities.
        let field = quintic_chart();
        let (p, q, phi) = (2u32, 1u32, rat(5));
        let sigma = field.weighted_order(p, q).unwrap();
        let blown = blowup_u(&field, p, q, &phi).unwrap();
        let fs = field.f.subst_blowup(p, q, &phi);
        let gs = field.g.subst_blowup(p, q, &phi);
        let shift = BiRatPoly::term(phi, 0, 0).add(&BiRatPoly::term(rat(1), 0, 1));
        let upow = |k: i64| BiRatPoly::term(rat(1), k as u32, 0);
        assert_eq!(fs, upow(sigma + q as i64 - 1).mul(&blown.f));
        let lhs = gs.scale(&rat(q as i64)).mul(&upow(q as i64))
            .sub(&shift.mul(&fs).scale(&rat(p as i64)).mul(&upow(p as i64)));
        // Both terms over the common denominator u^(sigma+p+q):
        assert_eq!(lhs, upow(sigma + p as i64 + q as i64).mul(&blown.g));
    }

    #[test]
    fn vertical_blowup_shape() {
        // For F = u^(n+2), G = a v^3 + ..., the vertical blow-up with
        // 2p < n+2 must look like w(-a + o(1)) d/dw + z(a + o(1)) d/dz.
        let field = quintic_chart(); // a = -1, n = 5, p = 2
        for neg in [false, true] {
            let blown = blowup_vertical(&field, 2, neg).unwrap();
            assert_eq!(blown.f.coeff(1, 0), rat(1)); // -a = 1
            assert_eq!(blown.g.coeff(0, 1), rat(-1)); // a = -1
            // No constant terms: both components vanish at the origin.
            assert_eq!(blown.f.coeff(0, 0), rat(0));
            assert_eq!(blown.g.coeff(0, 0), rat(0));
        }
    }

    #[test]
    fn descent_failure_shapes() {
        // Simple roots: G = -v^3 + 2 u^4 v gives edge polynomial -v^3 + 2v.
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(2), 4, 1)),
        );
        let cert = m1_descent(&field, 4, false).unwrap();
        assert!(!cert.monodromic);
        assert_eq!(cert.terminal, TerminalReason::SimpleRootFound);

        // Odd width: G = -v^3 - u^3 v has the edge (0,2)-(3,0).
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(-1), 3, 1)),
        );
        // The edge polynomial -v^3 - v has no nonzero real roots, so this
        // side of u = 0 carries no branch and is monodromic.
        let cert = m1_descent(&field, 4, false).unwrap();
        assert!(cert.monodromic);
        assert_eq!(cert.terminal, TerminalReason::NoNonzeroRealRoots);

        // Two edges.
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3)
                .add(&BiRatPoly::term(rat(1), 1, 2))
                .add(&BiRatPoly::term(rat(1), 6, 1)),
        );
        let cert = m1_descent(&field, 4, false).unwrap();
        assert_eq!(cert.terminal, TerminalReason::MultipleEdges);
    }

    #[test]
    fn conjugation_flips_odd_edges() {
        // The odd-width example above acquires roots on the other side.
        let field = PlanarField::new(
            BiRatPoly::term(rat(1), 7, 0),
            BiRatPoly::term(rat(-1), 0, 3).add(&BiRatPoly::term(rat(-1), 3, 1)),
        );
        let cert = m1_descent(&field, 4, true).unwrap();
        assert!(!cert.monodromic);
        assert_eq!(cert.terminal, TerminalReason::OddWidth);
    }
}
