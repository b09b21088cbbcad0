//! Certificate documents: lossless JSON records of an analysis run.
//!
//! Every exact quantity is serialized as a string — rationals as `"p/q"`,
//! polynomials as ascending coefficient lists, half-integer exponents as
//! `"k/2"` — so no value ever passes through floating point. The document
//! shape is committed as a JSON schema in `docs/certificate.schema.json`
//! and round-trips losslessly through serde.

use crate::center::{
    decide_global_center, decide_local_center, CenterDecomposition, GlobalCenterVerdict,
    LocalCenterVerdict,
};
use crate::monodromy::{decide_monodromy, MonodromyError, MonodromyVerdict, NewtonSystem};
use crate::numerics::{OracleAnswer, PeriodSample};
use crate::parse::print_system;
use crate::poly::RatPoly;
use crate::quadext::QuadExt;
use crate::rational::format_rat;
use crate::resolution::{CurveSearchOutcome, DescentCertificate, FractionalSeries};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

fn poly_strings(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rat).collect()
}

/// Top-level certificate emitted by the full analysis pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub system: SystemEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromyBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_center: Option<LocalCenterBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_center: Option<GlobalCenterBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericBlock>,
}

/// The input system in canonical coefficient and expression form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemEcho {
    pub expression: String,
    /// `p[i]` lists the ascending `x` coefficients of `P_i`.
    pub p: Vec<Vec<String>>,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyBlock {
    pub monodromic: bool,
    /// `M1`/`M2`/`M3`/`L1`/`L2`/`Potential`/`NotMonodromic`.
    pub condition: String,
    /// Exclusion case (`N1`..`N7`, `DegreeTooHigh`, ...) when not monodromic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent: Option<DescentPairBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_search: Option<CurveSearchPairBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentPairBlock {
    pub u_positive: DescentBlock,
    pub u_negative: DescentBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentBlock {
    pub monodromic: bool,
    pub depth: usize,
    pub terminal: String,
    pub levels: Vec<DescentLevelBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terminal_edge_poly: Option<Vec<String>>,
}

/// One blow-up level of the double-root descent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentLevelBlock {
    pub p: u32,
    pub q: u32,
    pub sigma: i64,
    /// Endpoints of the supporting Newton-polygon edge.
    pub edge_points: [[i64; 2]; 2],
    pub edge_poly: Vec<String>,
    /// The double root blown up at this level.
    pub phi: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSearchPairBlock {
    pub u_positive: CurveSearchBlock,
    pub u_negative: CurveSearchBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSearchBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SeriesBlock>,
    pub exhaustive: bool,
}

/// A fractional power series `sum c_k u^((k+1)/2)` witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesBlock {
    pub terms: Vec<SeriesTermBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTermBlock {
    /// Half-integer exponent, e.g. `"1/2"`, `"1"`, `"3/2"`.
    pub exponent: String,
    pub coeff: CoeffBlock,
}

/// Exact series coefficient: rational, or `a + b*sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffBlock {
    Rational(String),
    Quadratic { a: String, b: String, d: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalCenterBlock {
    pub center: bool,
    /// `W1` / `W2` monodromy case at the origin.
    pub case: String,
    pub nu: usize,
    pub iota0: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iota1: Option<usize>,
    pub leading: String,
    /// Satisfied center conditions among `C1`, `C2`, `C3`.
    pub conditions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub darboux_e: Option<String>,
    pub e_is_quarter: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionBlock>,
}

/// The `F_i = B_i(r)` decomposition backing condition C2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionBlock {
    pub r: Vec<String>,
    pub a0: Vec<String>,
    pub a1: Vec<String>,
    pub a2: Vec<String>,
    pub kappa: usize,
    pub alpha_k: String,
    pub beta_k: String,
    pub gamma_k: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_tilde_star: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalCenterBlock {
    pub global_center: bool,
    /// `G1`/`G2i`/`G2ii`/`G2iii`/`G3`/`Potential`/`Lienard`/`None`.
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_search: Option<CurveSearchBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent: Option<DescentBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleAnswer>,
    /// Path of the period-table CSV emitted alongside this certificate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_table: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<Vec<PeriodRow>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodRow {
    pub amplitude: f64,
    pub period: f64,
    pub converged: bool,
    pub refinement_error: f64,
}

impl From<&PeriodSample> for PeriodRow {
    fn from(s: &PeriodSample) -> Self {
        PeriodRow {
            amplitude: s.amplitude,
            period: s.period,
            converged: s.converged,
            refinement_error: s.refinement_error,
        }
    }
}

fn descent_block(c: &DescentCertificate) -> DescentBlock {
    DescentBlock {
        monodromic: c.monodromic,
        depth: c.depth,
        terminal: format!("{:?}", c.terminal),
        levels: c
            .levels
            .iter()
            .map(|l| DescentLevelBlock {
                p: l.p,
                q: l.edge.q,
                sigma: l.edge.sigma,
                edge_points: [
                    [l.edge.from.0, l.edge.from.1],
                    [l.edge.to.0, l.edge.to.1],
                ],
                edge_poly: poly_strings(&l.edge_poly),
                phi: format_rat(&l.phi),
            })
            .collect(),
        terminal_edge_poly: c.terminal_edge_poly.as_ref().map(poly_strings),
    }
}

fn coeff_block(c: &QuadExt) -> CoeffBlock {
    if c.is_rational() {
        CoeffBlock::Rational(format_rat(&c.a))
    } else {
        CoeffBlock::Quadratic {
            a: format_rat(&c.a),
            b: format_rat(&c.b),
            d: c.d,
        }
    }
}

fn series_block(s: &FractionalSeries) -> SeriesBlock {
    SeriesBlock {
        terms: s
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let twice = k as u64 + 1;
                let exponent = if twice % 2 == 0 {
                    format!("{}", twice / 2)
                } else {
                    format!("{twice}/2")
                };
                SeriesTermBlock { exponent, coeff: coeff_block(c) }
            })
            .collect(),
    }
}

fn curve_search_block(o: &CurveSearchOutcome) -> CurveSearchBlock {
    CurveSearchBlock {
        witness: o.witness.as_ref().map(series_block),
        exhaustive: o.exhaustive,
    }
}

pub fn system_echo(s: &NewtonSystem) -> SystemEcho {
    SystemEcho {
        expression: print_system(s),
        p: s.polys().iter().map(poly_strings).collect(),
        m: s.m(),
        n: s.n(),
    }
}

pub fn monodromy_block(v: &MonodromyVerdict) -> MonodromyBlock {
    MonodromyBlock {
        monodromic: v.monodromic,
        condition: format!("{:?}", v.condition),
        failure: v.failure.as_ref().map(|f| format!("{f:?}")),
        descent: v.descent.as_ref().map(|d| DescentPairBlock {
            u_positive: descent_block(&d.u_positive),
            u_negative: descent_block(&d.u_negative),
        }),
        curve_search: v.curve_search.as_ref().map(|c| CurveSearchPairBlock {
            u_positive: curve_search_block(&c.u_positive),
            u_negative: curve_search_block(&c.u_negative),
        }),
    }
}

fn decomposition_block(d: &CenterDecomposition) -> DecompositionBlock {
    DecompositionBlock {
        r: poly_strings(&d.r),
        a0: poly_strings(&d.a[0]),
        a1: poly_strings(&d.a[1]),
        a2: poly_strings(&d.a[2]),
        kappa: d.kappa,
        alpha_k: format_rat(&d.alpha_k),
        beta_k: format_rat(&d.beta_k),
        gamma_k: format_rat(&d.gamma_k),
        y_tilde_star: d.y_tilde_star.as_ref().map(format_rat),
    }
}

pub fn local_center_block(v: &LocalCenterVerdict) -> LocalCenterBlock {
    LocalCenterBlock {
        center: v.center,
        case: format!("{:?}", v.local_monodromy.case),
        nu: v.local_monodromy.nu,
        iota0: v.local_monodromy.iota0,
        iota1: v.local_monodromy.iota1,
        leading: format_rat(&v.local_monodromy.leading),
        conditions: v.conditions.iter().map(|c| format!("{c:?}")).collect(),
        darboux_e: v.darboux_e.as_ref().map(format_rat),
        e_is_quarter: v.e_is_quarter,
        decomposition: v.decomposition.as_ref().map(decomposition_block),
    }
}

pub fn global_center_block(v: &GlobalCenterVerdict) -> GlobalCenterBlock {
    GlobalCenterBlock {
        global_center: v.global_center,
        condition: format!("{:?}", v.condition),
        curve_search: v.curve_search.as_ref().map(curve_search_block),
        descent: v.descent.as_ref().map(descent_block),
    }
}

/// Runs the exact pipeline and assembles the certificate (without numerics;
/// callers attach a [`NumericBlock`] separately when enabled).
pub fn build_certificate(s: &NewtonSystem) -> Result<CertificateDocument, MonodromyError> {
    let mono = decide_monodromy(s)?;
    let local = decide_local_center(s).ok();
    let global = decide_global_center(s).map_err(|e| match e {
        crate::center::CenterError::Monodromy(m) => m,
        other => MonodromyError::Internal(other.to_string()),
    })?;
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        system: system_echo(s),
        monodromy: Some(monodromy_block(&mono)),
        local_center: local.as_ref().map(local_center_block),
        global_center: Some(global_center_block(&global)),
        numeric: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system;

    #[test]
    fn worked_example_certificate() {
        let s = parse_system("y' = -x - x^3*y^2").unwrap();
        let doc = build_certificate(&s).unwrap();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert_eq!(doc.system.expression, "y' = -x - x^3*y^2");
        assert_eq!(doc.system.p[0], vec!["0", "-1"]);
        let mono = doc.monodromy.as_ref().unwrap();
        assert!(mono.monodromic);
        let global = doc.global_center.as_ref().unwrap();
        assert!(global.global_center);
        assert_eq!(global.condition, "G1");
    }

    #[test]
    fn json_round_trip_is_lossless() {
        for text in [
            "y' = -x - x^3*y^2",
            "y' = -x + x*y - x*y^2",
            "y' = -x^3 + x*y",
            "y' = -x + y^3",
            "y' = -x^5 + x^4*y^2", // M1-route system with descent witnesses
        ] {
            let s = parse_system(text).unwrap();
            let doc = build_certificate(&s).unwrap();
            let json = serde_json::to_string_pretty(&doc).unwrap();
            let back: CertificateDocument = serde_json::from_str(&json).unwrap();
            assert_eq!(doc, back, "round trip for {text}");
        }
    }

    #[test]
    fn series_exponents_are_half_integers() {
        let series = FractionalSeries {
            coeffs: vec![
                QuadExt::from_rat(crate::rational::ratq(1, 2)),
                QuadExt::zero(),
                QuadExt::new(crate::rational::rat(0), crate::rational::rat(1), 2),
            ],
        };
        let block = series_block(&series);
        assert_eq!(block.terms.len(), 2);
        assert_eq!(block.terms[0].exponent, "1/2");
        assert_eq!(block.terms[0].coeff, CoeffBlock::Rational("1/2".into()));
        assert_eq!(block.terms[1].exponent, "3/2");
        assert_eq!(
            block.terms[1].coeff,
            CoeffBlock::Quadratic { a: "0".into(), b: "1".into(), d: 2 }
        );
    }
}
