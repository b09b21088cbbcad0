//! Floating-point cross-validation of the exact verdicts.
//!
//! Nothing here decides anything: orbits are integrated with an adaptive
//! embedded Runge–Kutta 5(4) pair (Dormand–Prince) to corroborate the exact
//! classification — detecting escape to infinity, measuring first-return
//! periods on the section `{y = 0, x > 0}`, probing monodromy from rings of
//! large initial conditions, and checking the asymptotic passage-time orders
//! near polycycle corners against brute-force log-log fits.

use crate::monodromy::NewtonSystem;
use crate::rational::rat_to_f64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Tolerances and limits for the integrator.
#[derive(Debug, Clone)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Hard cap on integrated system time.
    pub max_time: f64,
    /// Hard cap on accepted steps.
    pub max_steps: usize,
    /// `|(x, y)|` beyond this counts as escape.
    pub escape_radius: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_time: 1e4,
            max_steps: 20_000_000,
            escape_radius: 1e6,
        }
    }
}

/// `P_i` coefficients lowered to `f64` once, for fast right-hand sides.
struct SystemF64 {
    coeffs: Vec<Vec<f64>>,
    /// Degree in `y` is at most 2, so the vertical log chart applies.
    quadratic_in_y: bool,
}

impl SystemF64 {
    fn new(s: &NewtonSystem) -> Self {
        SystemF64 {
            coeffs: s
                .polys()
                .iter()
                .map(|p| p.coeffs().iter().map(rat_to_f64).collect())
                .collect(),
            quadratic_in_y: s.m() <= 2,
        }
    }

    fn poly_eval(&self, i: usize, x: f64) -> f64 {
        let Some(c) = self.coeffs.get(i) else { return 0.0 };
        let mut p = 0.0;
        for a in c.iter().rev() {
            p = p * x + a;
        }
        p
    }

    fn rhs(&self, x: f64, y: f64) -> (f64, f64) {
        let mut dy = 0.0;
        for c in self.coeffs.iter().rev() {
            let mut p = 0.0;
            for a in c.iter().rev() {
                p = p * x + a;
            }
            dy = dy * y + p;
        }
        (y, dy)
    }
}

/// How an orbit integration ended.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitOutcome {
    /// First return to the section `{y = 0, x > 0}` (a full revolution when
    /// started on it).
    SectionReturn { time: f64, x: f64 },
    /// Left the escape radius.
    Escaped { time: f64 },
    /// Neither returned nor escaped within the budget.
    TimedOut,
    /// Step size underflow (stiffness); reported, not fatal.
    StepFailure { time: f64 },
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Sampled accepted steps `(t, x, y)`.
    pub points: Vec<(f64, f64, f64)>,
    pub outcome: OrbitOutcome,
    /// Total winding angle around the origin accumulated along the orbit.
    pub winding: f64,
}

// Dormand-Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Error weights (5th-order minus embedded 4th-order solution).
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Cubic Hermite value of a component on an accepted step.
fn hermite(theta: f64, h: f64, y0: f64, f0: f64, y1: f64, f1: f64) -> f64 {
    let t2 = theta * theta;
    let t3 = t2 * theta;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + theta) * h * f0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * f1
}

/// Integrates one orbit, reporting the first return to `{y = 0, x > 0}`
/// (section events are located by bisection on the dense output to 1e-13 in
/// time), escape, or exhaustion. `record` keeps the accepted-step samples.
pub fn integrate_orbit(s: &NewtonSystem, ic: (f64, f64), cfg: &IntegratorConfig) -> Trajectory {
    let sf = SystemF64::new(s);
    integrate_raw(&sf, ic, cfg, true)
}

/// `|y|` beyond this switches integration to the vertical log chart (only
/// for systems of degree at most 2 in `y`, where the chart field stays
/// bounded); dropping back below [`LOG_CHART_EXIT`] switches back. Closed
/// orbits of such systems can swing to `|y|` far beyond `f64` range while
/// `x` stays small, so radial escape tests are meaningless there: escape is
/// detected on `|x|` alone (for these systems `|y| -> inf` forces
/// `|x| -> inf`, since `dx/dt = y`).
const LOG_CHART_ENTER: f64 = 1e5;
const LOG_CHART_EXIT: f64 = 1e4;

fn integrate_raw(
    sf: &SystemF64,
    ic: (f64, f64),
    cfg: &IntegratorConfig,
    record: bool,
) -> Trajectory {
    let (mut x, mut y) = ic;
    let mut t = 0.0;
    let mut points = Vec::new();
    if record {
        points.push((t, x, y));
    }
    let (mut fx, mut fy) = sf.rhs(x, y);
    let mut h = 1e-6_f64.max(1e-3 * cfg.rel_tol.powf(0.2));
    let mut winding = 0.0_f64;
    let mut angle = y.atan2(x);
    // The start may sit exactly on the section; arm event detection only
    // after y has left zero.
    let mut armed = y != 0.0;
    let mut last_sign = if y > 0.0 { 1.0 } else if y < 0.0 { -1.0 } else { 0.0 };
    for _ in 0..cfg.max_steps {
        if t >= cfg.max_time {
            return Trajectory { points, outcome: OrbitOutcome::TimedOut, winding };
        }
        if sf.quadratic_in_y && y.abs() >= LOG_CHART_ENTER {
            match log_chart_leg(sf, x, y, t, cfg) {
                LogLeg::Reenter { x: nx, y: ny, t: nt, winding: dw } => {
                    x = nx;
                    y = ny;
                    t = nt;
                    winding += dw;
                    angle = y.atan2(x);
                    let f = sf.rhs(x, y);
                    fx = f.0;
                    fy = f.1;
                    last_sign = if y > 0.0 { 1.0 } else { -1.0 };
                    if record {
                        points.push((t, x, y));
                    }
                    continue;
                }
                LogLeg::Escaped { time } => {
                    return Trajectory { points, outcome: OrbitOutcome::Escaped { time }, winding };
                }
                LogLeg::TimedOut => {
                    return Trajectory { points, outcome: OrbitOutcome::TimedOut, winding };
                }
                LogLeg::Failure { time } => {
                    return Trajectory {
                        points,
                        outcome: OrbitOutcome::StepFailure { time },
                        winding,
                    };
                }
            }
        }
        // Fast segments (e.g. |y| near the log-chart band on stiff systems)
        // legitimately need steps many orders below 1; only true stagnation
        // (h below the rounding granularity of t) signals failure.
        if (t + h == t && t > 0.0) || h < 1e-300 {
            return Trajectory { points, outcome: OrbitOutcome::StepFailure { time: t }, winding };
        }
        if t + h > cfg.max_time {
            h = cfg.max_time - t;
        }
        // One Dormand-Prince step (FSAL: stage 1 reuses the last derivative).
        let mut kx = [0.0; 7];
        let mut ky = [0.0; 7];
        kx[0] = fx;
        ky[0] = fy;
        for i in 0..6 {
            let mut ax = 0.0;
            let mut ay = 0.0;
            for j in 0..=i {
                ax += A[i][j] * kx[j];
                ay += A[i][j] * ky[j];
            }
            let (nx, ny) = sf.rhs(x + h * ax, y + h * ay);
            kx[i + 1] = nx;
            ky[i + 1] = ny;
        }
        let x1 = x + h * (A[5][0] * kx[0] + A[5][2] * kx[2] + A[5][3] * kx[3] + A[5][4] * kx[4] + A[5][5] * kx[5]);
        let y1 = y + h * (A[5][0] * ky[0] + A[5][2] * ky[2] + A[5][3] * ky[3] + A[5][4] * ky[4] + A[5][5] * ky[5]);
        let (f1x, f1y) = sf.rhs(x1, y1);
        let kx7 = [kx[0], kx[1], kx[2], kx[3], kx[4], kx[5], f1x];
        let ky7 = [ky[0], ky[1], ky[2], ky[3], ky[4], ky[5], f1y];
        let mut ex = 0.0;
        let mut ey = 0.0;
        for i in 0..7 {
            ex += E[i] * kx7[i];
            ey += E[i] * ky7[i];
        }
        ex *= h;
        ey *= h;
        let scx = cfg.abs_tol + cfg.rel_tol * x.abs().max(x1.abs());
        let scy = cfg.abs_tol + cfg.rel_tol * y.abs().max(y1.abs());
        let err = (0.5 * ((ex / scx).powi(2) + (ey / scy).powi(2))).sqrt();
        if !err.is_finite() {
            h *= 0.2;
            continue;
        }
        if err > 1.0 {
            h *= (0.9 * err.powf(-0.2)).max(0.2);
            continue;
        }
        // Accepted.
        let t1 = t + h;
        let escaped = if sf.quadratic_in_y {
            x1.abs() > cfg.escape_radius
        } else {
            x1.hypot(y1) > cfg.escape_radius
        };
        if !x1.is_finite() || !y1.is_finite() || escaped {
            return Trajectory { points, outcome: OrbitOutcome::Escaped { time: t1 }, winding };
        }
        let new_sign = if y1 > 0.0 { 1.0 } else if y1 < 0.0 { -1.0 } else { 0.0 };
        if !armed && new_sign != 0.0 {
            armed = true;
            last_sign = new_sign;
        } else if armed && new_sign != 0.0 && new_sign != last_sign {
            // Bracketed section crossing: bisect the dense output in time.
            let mut lo = 0.0;
            let mut hi = 1.0;
            while (hi - lo) * h > 1e-13 {
                let mid = 0.5 * (lo + hi);
                let ym = hermite(mid, h, y, fy, y1, f1y);
                if (ym > 0.0) == (y1 > 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let theta = 0.5 * (lo + hi);
            let xc = hermite(theta, h, x, fx, x1, f1x);
            if xc > 0.0 {
                let tc = t + theta * h;
                if record {
                    points.push((tc, xc, 0.0));
                }
                return Trajectory {
                    points,
                    outcome: OrbitOutcome::SectionReturn { time: tc, x: xc },
                    winding,
                };
            }
            last_sign = new_sign;
        }
        let new_angle = y1.atan2(x1);
        let mut da = new_angle - angle;
        if da > std::f64::consts::PI {
            da -= 2.0 * std::f64::consts::PI;
        } else if da < -std::f64::consts::PI {
            da += 2.0 * std::f64::consts::PI;
        }
        winding += da;
        angle = new_angle;
        t = t1;
        x = x1;
        y = y1;
        fx = f1x;
        fy = f1y;
        if record {
            points.push((t, x, y));
        }
        h *= (0.9 * err.max(1e-10).powf(-0.2)).min(5.0);
    }
    Trajectory { points, outcome: OrbitOutcome::TimedOut, winding }
}

enum LogLeg {
    Reenter { x: f64, y: f64, t: f64, winding: f64 },
    Escaped { time: f64 },
    TimedOut,
    Failure { time: f64 },
}

/// Follows the orbit through the far-field band `|y| >= LOG_CHART_EXIT` in
/// the vertical log chart `w = ln|y|` with `x` as the independent variable:
/// for degree at most 2 in `y`,
/// `dw/dx = P2(x) + sigma*P1(x)*e^(-w) + P0(x)*e^(-2w)` and
/// `dt/dx = sigma*e^(-w)` with `sigma = sign(y)` (constant on the leg, since
/// `y` cannot vanish there). This stays well-scaled even when `|y|` exceeds
/// `f64` range — the elapsed time underflows harmlessly to zero. Adaptive
/// Dormand-Prince on `(w, t)`.
fn log_chart_leg(sf: &SystemF64, x0: f64, y0: f64, t0: f64, cfg: &IntegratorConfig) -> LogLeg {
    let sigma = if y0 > 0.0 { 1.0 } else { -1.0 };
    let mut x = x0;
    let mut w = y0.abs().ln();
    let mut t = t0;
    let exit_w = LOG_CHART_EXIT.ln();
    let deriv = |x: f64, w: f64| -> (f64, f64) {
        let e1 = (-w).exp();
        let dw = sf.poly_eval(2, x)
            + sigma * sf.poly_eval(1, x) * e1
            + sf.poly_eval(0, x) * e1 * e1;
        (dw, sigma * e1)
    };
    // x advances in the direction of dx/dt = y.
    let mut h = sigma * 1e-4 * (1.0 + x0.abs());
    let mut winding = 0.0_f64;
    let mut angle = sigma.atan2(x * (-w).exp());
    let (mut fw, mut ft) = deriv(x, w);
    for _ in 0..cfg.max_steps {
        if (x + h == x && x != 0.0) || h.abs() < 1e-300 {
            return LogLeg::Failure { time: t };
        }
        let mut kw = [0.0; 7];
        let mut kt = [0.0; 7];
        kw[0] = fw;
        kt[0] = ft;
        for i in 0..6 {
            let mut aw = 0.0;
            for j in 0..=i {
                aw += A[i][j] * kw[j];
            }
            let (nw, nt) = deriv(x + h * partial_x(A[i], i), w + h * aw);
            kw[i + 1] = nw;
            kt[i + 1] = nt;
        }
        let w1 = w + h * (A[5][0] * kw[0] + A[5][2] * kw[2] + A[5][3] * kw[3] + A[5][4] * kw[4] + A[5][5] * kw[5]);
        let t1 = t + h * (A[5][0] * kt[0] + A[5][2] * kt[2] + A[5][3] * kt[3] + A[5][4] * kt[4] + A[5][5] * kt[5]);
        let x1 = x + h;
        let (f1w, f1t) = deriv(x1, w1);
        let kw7 = [kw[0], kw[1], kw[2], kw[3], kw[4], kw[5], f1w];
        let kt7 = [kt[0], kt[1], kt[2], kt[3], kt[4], kt[5], f1t];
        let mut ew = 0.0;
        let mut et = 0.0;
        for i in 0..7 {
            ew += E[i] * kw7[i];
            et += E[i] * kt7[i];
        }
        ew *= h;
        et *= h;
        let scw = cfg.abs_tol + cfg.rel_tol * w.abs().max(w1.abs());
        let sct = cfg.abs_tol + cfg.rel_tol * t.abs().max(t1.abs());
        let err = (0.5 * ((ew / scw).powi(2) + (et / sct).powi(2))).sqrt();
        if !err.is_finite() {
            h *= 0.2;
            continue;
        }
        if err > 1.0 {
            h *= (0.9 * err.powf(-0.2)).max(0.2);
            continue;
        }
        if !w1.is_finite() {
            return LogLeg::Failure { time: t1 };
        }
        if x1.abs() > cfg.escape_radius {
            return LogLeg::Escaped { time: t1 };
        }
        if t1 >= cfg.max_time {
            return LogLeg::TimedOut;
        }
        // Winding: theta = atan2(sigma*e^w, x) = atan2(sigma, x*e^(-w)).
        let new_angle = sigma.atan2(x1 * (-w1).exp());
        let mut da = new_angle - angle;
        if da > std::f64::consts::PI {
            da -= 2.0 * std::f64::consts::PI;
        } else if da < -std::f64::consts::PI {
            da += 2.0 * std::f64::consts::PI;
        }
        winding += da;
        angle = new_angle;
        x = x1;
        w = w1;
        t = t1;
        fw = f1w;
        ft = f1t;
        if w < exit_w {
            return LogLeg::Reenter { x, y: sigma * w.exp(), t, winding };
        }
        h *= (0.9 * err.max(1e-10).powf(-0.2)).min(5.0);
    }
    LogLeg::TimedOut
}

/// Abscissa offset of a Dormand-Prince stage (the tableau is consistent, so
/// the node equals the row sum of its `a` coefficients).
fn partial_x(row: [f64; 6], i: usize) -> f64 {
    row[..=i].iter().sum()
}

/// One first-return period measurement.
#[derive(Debug, Clone)]
pub struct PeriodSample {
    pub amplitude: f64,
    pub period: f64,
    pub converged: bool,
    /// Difference against a 100x-tighter re-integration.
    pub refinement_error: f64,
}

/// Measures the first-return period through `(A, 0)` for each amplitude,
/// cross-refining with tolerances tightened by 100.
pub fn period_function(
    s: &NewtonSystem,
    amplitudes: &[f64],
    cfg: &IntegratorConfig,
) -> Vec<PeriodSample> {
    let sf = SystemF64::new(s);
    let tight = IntegratorConfig {
        rel_tol: cfg.rel_tol / 100.0,
        abs_tol: cfg.abs_tol / 100.0,
        ..cfg.clone()
    };
    amplitudes
        .iter()
        .map(|&a| {
            let coarse = integrate_raw(&sf, (a, 0.0), cfg, false);
            let fine = integrate_raw(&sf, (a, 0.0), &tight, false);
            match (coarse.outcome, fine.outcome) {
                (
                    OrbitOutcome::SectionReturn { time: t1, .. },
                    OrbitOutcome::SectionReturn { time: t2, .. },
                ) => {
                    let refinement_error = (t1 - t2).abs();
                    PeriodSample {
                        amplitude: a,
                        period: t2,
                        converged: refinement_error < 10.0 * cfg.rel_tol * t2,
                        refinement_error,
                    }
                }
                _ => PeriodSample {
                    amplitude: a,
                    period: f64::NAN,
                    converged: false,
                    refinement_error: f64::INFINITY,
                },
            }
        })
        .collect()
}

/// Advisory numerical answer about monodromy at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OracleAnswer {
    True,
    False,
    Inconclusive,
}

/// Probes monodromy at infinity: launches orbits from rings of radius
/// 10^2 and 10^3 and watches whether each accumulates a full turn around
/// the origin. An orbit that leaves its shell while still turning may be
/// an outward spiral (anti-damped systems stay monodromic while every
/// orbit grows), so escapes are chased through geometrically growing
/// shells; only an orbit whose angle settles before the shells run out
/// counts as an escape. That makes `False` a confident answer, while
/// `True` ("every sampled orbit wound") is finite-sample evidence only —
/// a non-monodromic system whose generic orbits spiral inward still winds.
pub fn monodromy_oracle(s: &NewtonSystem, cfg: &IntegratorConfig) -> OracleAnswer {
    let sf = SystemF64::new(s);
    let mut all_wound = true;
    for radius in [1e2, 1e3] {
        for k in 0..8 {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 8.0;
            let ic = (radius * th.cos(), radius * th.sin());
            let probe_cfg = IntegratorConfig {
                escape_radius: 10.0 * radius,
                ..cfg.clone()
            };
            match probe_orbit(&sf, ic, &probe_cfg) {
                ProbeResult::Escaped => return OracleAnswer::False,
                ProbeResult::Wound => {}
                ProbeResult::Unclear => all_wound = false,
            }
        }
    }
    if all_wound {
        OracleAnswer::True
    } else {
        OracleAnswer::Inconclusive
    }
}

enum ProbeResult {
    Wound,
    Escaped,
    Unclear,
}

fn probe_orbit(sf: &SystemF64, ic: (f64, f64), cfg: &IntegratorConfig) -> ProbeResult {
    match integrate_winding(sf, ic, cfg) {
        WindingOutcome::Wound => ProbeResult::Wound,
        WindingOutcome::Escaped => ProbeResult::Escaped,
        WindingOutcome::Unclear => ProbeResult::Unclear,
    }
}

enum WindingOutcome {
    Wound,
    Escaped,
    Unclear,
}

fn integrate_winding(sf: &SystemF64, ic: (f64, f64), cfg: &IntegratorConfig) -> WindingOutcome {
    // Piggyback on integrate_raw by chunking: integrate in slices and check
    // the accumulated winding after each one. A section return counts as a
    // checkpoint, not a verdict: started off the section, the first crossing
    // can happen after a small fraction of a turn, so only the accumulated
    // angle decides.
    let (mut x, mut y) = ic;
    let mut total_winding = 0.0;
    let mut elapsed = 0.0;
    let mut slice = IntegratorConfig {
        max_time: cfg.max_time / 16.0,
        ..cfg.clone()
    };
    // Crossing the escape shell does not by itself refute winding at
    // infinity: in an anti-damped monodromic system every orbit spirals
    // outward and leaves any fixed shell while still turning. Chase such an
    // orbit through geometrically growing shells and only call it an escape
    // if its angle settles (no full revolution) before the shells run out.
    let shell_cap = cfg.escape_radius * 1e6;
    for _ in 0..16 {
        let traj = integrate_raw(sf, (x, y), &slice, true);
        total_winding += traj.winding;
        if total_winding.abs() >= 2.0 * std::f64::consts::PI {
            return WindingOutcome::Wound;
        }
        match traj.outcome {
            OrbitOutcome::Escaped { .. } => {
                if slice.escape_radius >= shell_cap {
                    return WindingOutcome::Escaped;
                }
                slice.escape_radius *= 100.0;
                // The escaping step itself is not recorded; resume from the
                // last accepted point (or the slice start if none was taken).
                if let Some(&(t, lx, ly)) = traj.points.last() {
                    elapsed += t;
                    x = lx;
                    y = ly;
                }
            }
            OrbitOutcome::SectionReturn { time, x: xc } => {
                elapsed += time;
                x = xc;
                y = 0.0;
            }
            OrbitOutcome::StepFailure { .. } => return WindingOutcome::Unclear,
            OrbitOutcome::TimedOut => {
                let Some(&(t, lx, ly)) = traj.points.last() else {
                    return WindingOutcome::Unclear;
                };
                elapsed += t;
                x = lx;
                y = ly;
            }
        }
        if elapsed >= cfg.max_time {
            return WindingOutcome::Unclear;
        }
    }
    WindingOutcome::Unclear
}

/// Corner or side of a polycycle at infinity, in normal-form coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CornerKind {
    /// Regular side: field `(1 / y^q) d/dx` along a segment.
    Side { q: i64 },
    /// Hyperbolic saddle corner: `(1 / (x^p y^q)) (x d/dx - lambda y d/dy)`.
    Hyperbolic { p: i64, q: i64, lambda: f64 },
    /// Semi-hyperbolic saddle corner:
    /// `(1 / (x^p y^q)) ((x^k + a x^(2k-1)) d/dx - lambda y d/dy)`.
    SemiHyperbolic { p: i64, q: i64, k: i64, a: f64, lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LimitClass {
    Zero,
    Finite,
    Infinite,
    Exponential,
}

/// Asymptotic order of a passage time `t(s)` as `s -> 0+`.
#[derive(Debug, Clone, PartialEq)]
pub struct PassageTimeClass {
    pub kind: CornerKind,
    /// Leading power of `s` (ignored for the exponential branch).
    pub exponent: f64,
    /// Power of `|ln s|` (0 or 1).
    pub log_power: u8,
    pub limit: LimitClass,
}

/// Classifies the passage-time order near a polycycle corner or side.
pub fn passage_time_class(kind: CornerKind) -> Result<PassageTimeClass, NumericsError> {
    let classify_power = |exponent: f64, log_power: u8| {
        if exponent > 0.0 {
            LimitClass::Zero
        } else if exponent < 0.0 || log_power == 1 {
            LimitClass::Infinite
        } else {
            LimitClass::Finite
        }
    };
    match kind {
        CornerKind::Side { q } => {
            let exponent = q as f64;
            Ok(PassageTimeClass { kind, exponent, log_power: 0, limit: classify_power(exponent, 0) })
        }
        CornerKind::Hyperbolic { p, q, lambda } => {
            if lambda <= 0.0 {
                return Err(NumericsError::InvalidParams("lambda must be positive".into()));
            }
            let rho = (p as f64).min(lambda * q as f64);
            let log_power = u8::from(p as f64 - lambda * q as f64 == 0.0);
            Ok(PassageTimeClass { kind, exponent: rho, log_power, limit: classify_power(rho, log_power) })
        }
        CornerKind::SemiHyperbolic { p, q, k, a: _, lambda } => {
            if lambda <= 0.0 {
                return Err(NumericsError::InvalidParams("lambda must be positive".into()));
            }
            if k < 2 {
                return Err(NumericsError::InvalidParams("k must be at least 2".into()));
            }
            if q > 0 {
                let exponent = p as f64;
                Ok(PassageTimeClass { kind, exponent, log_power: 0, limit: classify_power(exponent, 0) })
            } else if q == 0 {
                if p >= k {
                    Ok(PassageTimeClass { kind, exponent: 0.0, log_power: 0, limit: LimitClass::Finite })
                } else {
                    let exponent = (p - k + 1) as f64;
                    let log_power = u8::from(p == k - 1);
                    Ok(PassageTimeClass { kind, exponent, log_power, limit: classify_power(exponent, log_power) })
                }
            } else {
                // q < 0: t(s) = O(s^(-a lambda q) exp(lambda q s^(1-k)/(1-k)))
                // blows up faster than any power.
                Ok(PassageTimeClass {
                    kind,
                    exponent: -(CornerKind::extract_a(&kind)) * lambda * q as f64,
                    log_power: 0,
                    limit: LimitClass::Exponential,
                })
            }
        }
    }
}

impl CornerKind {
    fn extract_a(&self) -> f64 {
        match self {
            CornerKind::SemiHyperbolic { a, .. } => *a,
            _ => 0.0,
        }
    }
}

/// Brute-force passage time through a corner model: integrates the slow
/// direction from `x = s` to `x = eta` carrying `(y, t)` along, with
/// `dx/dtau = v(x)`, `dy/dtau = -lambda y`, `dt/dtau = x^p y^q`.
/// Fixed-step fourth-order Runge-Kutta in `w = ln x`.
pub fn model_passage_time(kind: CornerKind, s: f64, eta: f64) -> Result<f64, NumericsError> {
    match kind {
        CornerKind::Side { q } => Ok(eta * s.powi(q as i32)),
        CornerKind::Hyperbolic { p, q, lambda } => {
            integrate_corner(p, q, lambda, |x| x, s, eta)
        }
        CornerKind::SemiHyperbolic { p, q, k, a, lambda } => integrate_corner(
            p,
            q,
            lambda,
            move |x: f64| x.powi(k as i32) + a * x.powi(2 * k as i32 - 1),
            s,
            eta,
        ),
    }
}

fn integrate_corner(
    p: i64,
    q: i64,
    lambda: f64,
    v: impl Fn(f64) -> f64,
    s: f64,
    eta: f64,
) -> Result<f64, NumericsError> {
    if !(s > 0.0 && eta > s) {
        return Err(NumericsError::InvalidParams("need 0 < s < eta".into()));
    }
    // State (y, t) as a function of w = ln x; dy/dw = -lambda y x / v(x),
    // dt/dw = x^(p+1) y^q / v(x).
    let deriv = |w: f64, y: f64| -> (f64, f64) {
        let x = w.exp();
        let vx = v(x);
        (
            -lambda * y * x / vx,
            x.powi(p as i32 + 1) * y.powi(q as i32) / vx,
        )
    };
    let (w0, w1) = (s.ln(), eta.ln());
    let n = 20_000;
    let h = (w1 - w0) / n as f64;
    let mut y = eta; // launch height on the entry section
    let mut t = 0.0;
    let mut w = w0;
    for _ in 0..n {
        let (k1y, k1t) = deriv(w, y);
        let (k2y, k2t) = deriv(w + 0.5 * h, y + 0.5 * h * k1y);
        let (k3y, k3t) = deriv(w + 0.5 * h, y + 0.5 * h * k2y);
        let (k4y, k4t) = deriv(w + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        t += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        w += h;
    }
    Ok(t)
}

/// Log-log slope of `f` between two abscissae (estimates the leading power).
pub fn loglog_slope(f: impl Fn(f64) -> f64, s1: f64, s2: f64) -> f64 {
    (f(s2).ln() - f(s1).ln()) / (s2.ln() - s1.ln())
}
