//! Exact monodromy and global-center analysis for planar polynomial Newton
//! systems `x' = y`, `y' = P_0(x) + P_1(x) y + ... + P_m(x) y^m`.
//!
//! The library is organised bottom-up:
//!
//! - [`rational`] / [`quadext`]: exact scalars (`BigRational` and real
//!   quadratic extensions `a + b sqrt(d)`),
//! - [`poly`] / [`bipoly`]: dense univariate and sparse bivariate rational
//!   polynomials, Sturm counting, functional decomposition,
//! - [`resolution`]: Newton polygons, weighted directional blow-ups, the
//!   double-root descent and the half-integer invariant-curve search,
//! - [`monodromy`]: charts at infinity and the monodromy-at-infinity decision,
//! - [`center`]: local center conditions and the global-center decision,
//! - [`numerics`]: an adaptive RK5(4) integrator, period functions and the
//!   corner passage-time classifier used as floating-point cross-checks,
//! - [`certificate`] / [`parse`]: JSON certificates and the `y' = ...`
//!   expression grammar shared with the CLI.

pub mod bipoly;
pub mod center;
pub mod certificate;
pub mod monodromy;
pub mod numerics;
pub mod parse;
pub mod poly;
pub mod quadext;
pub mod rational;
pub mod resolution;

pub use rational::Rat;
