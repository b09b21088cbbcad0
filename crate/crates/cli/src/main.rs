//! Command-line front end for the Newton-system analyzer.
//!
//! Exit codes: 0 = analysis decided, 1 = input error, 2 = internal
//! invariant violation (the exact engines disagreed with each other).

use clap::{Args, Parser, Subcommand};
use newton_center::center::{
    decide_global_center, decide_local_center, kukles_global_center, kukles_system, CenterError,
};
use newton_center::certificate::{
    build_certificate, global_center_block, local_center_block, monodromy_block, system_echo,
    CertificateDocument, NumericBlock, PeriodRow,
};
use newton_center::monodromy::{
    decide_monodromy, lienard_chart_monodromy, lienard_monodromy, MonodromyError, NewtonSystem,
};
use newton_center::numerics::{
    integrate_orbit, monodromy_oracle, period_function, IntegratorConfig, OrbitOutcome,
};
use newton_center::parse::{parse_system, print_system};
use newton_center::rational::rat;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "newton-center",
    about = "Exact global-center and monodromy analysis of Newton systems x' = y, y' = sum P_i(x) y^i"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the JSON certificate to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
    /// Relative integration tolerance for the numeric cross-checks.
    #[arg(long, value_name = "TOL", default_value_t = 1e-8)]
    tol: f64,
    /// Skip all floating-point cross-checks.
    #[arg(long)]
    no_numeric: bool,
}

#[derive(Args)]
struct GridOpts {
    /// Write the sweep table as CSV to this path (default: stdout).
    #[arg(long, value_name = "PATH")]
    csv: Option<String>,
    /// Seed for randomized subsampling of the grid.
    #[arg(long, value_name = "INT")]
    seed: Option<u64>,
    /// Randomly subsample this many grid instances (requires --seed).
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: monodromy, local center, global center, certificate.
    Analyze {
        system: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Monodromy at infinity only.
    Monodromy {
        system: String,
        #[arg(long, value_name = "PATH")]
        json: Option<String>,
    },
    /// Local center classification at the origin only.
    Center {
        system: String,
        #[arg(long, value_name = "PATH")]
        json: Option<String>,
    },
    /// Global center verdict only.
    Global {
        system: String,
        #[arg(long, value_name = "PATH")]
        json: Option<String>,
    },
    /// Kukles family: single instance or a full-grid comparison against the
    /// closed-form criterion.
    Kukles {
        /// Sweep the coefficient grid for a given degree, e.g. `--grid n=3`.
        #[arg(long, value_name = "n=N")]
        grid: Option<String>,
        /// Degree of the single instance (odd).
        #[arg(long, value_name = "N")]
        n: Option<usize>,
        /// Linear coefficient delta of the single instance.
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        delta: Option<String>,
        /// Coefficients a_{n,0},a_{n-1,1},a_{n-2,2},a_{n-3,3} of the single
        /// instance, comma-separated rationals.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[command(flatten)]
        gridopts: GridOpts,
    },
    /// Lienard family (m = 1): grid comparison of the chart-level descent
    /// against the closed-form (L1)/(L2) criterion.
    Lienard {
        /// Monomial grid sweep, e.g. `--grid l0=3` (or `l0=3,l1=1`).
        #[arg(long, value_name = "SPEC")]
        grid: Option<String>,
        /// Single instance as a full system string, e.g. "y' = -x^3 + x*y".
        system: Option<String>,
        #[command(flatten)]
        gridopts: GridOpts,
    },
    /// Integrate one orbit and emit the trajectory as CSV.
    Simulate {
        system: String,
        /// Initial condition `x,y`.
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        ic: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<String>,
        #[arg(long, value_name = "TOL", default_value_t = 1e-10)]
        tol: f64,
        /// Integration time budget.
        #[arg(long, value_name = "T", default_value_t = 1e4)]
        max_time: f64,
    },
    /// Sample the period function at the given amplitudes and emit CSV.
    Period {
        system: String,
        /// Comma-separated list of initial abscissae on `{y = 0, x > 0}`.
        #[arg(long, value_name = "LIST")]
        amplitudes: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<String>,
        #[arg(long, value_name = "TOL", default_value_t = 1e-10)]
        tol: f64,
    },
}

enum CliError {
    /// Bad input (exit 1).
    Input(String),
    /// Violated internal invariant (exit 2).
    Internal(String),
}

impl From<MonodromyError> for CliError {
    fn from(e: MonodromyError) -> Self {
        match e {
            MonodromyError::Internal(msg) => CliError::Internal(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CenterError> for CliError {
    fn from(e: CenterError) -> Self {
        match e {
            CenterError::Monodromy(m) => m.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_input(text: &str) -> Result<NewtonSystem, CliError> {
    parse_system(text).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_rat_arg(text: &str, what: &str) -> Result<newton_center::Rat, CliError> {
    newton_center::rational::parse_rat(text.trim())
        .ok_or_else(|| CliError::Input(format!("{what}: expected a rational, got {text:?}")))
}

fn write_json(path: &Option<String>, doc: &CertificateDocument) -> Result<(), CliError> {
    if let Some(path) = path {
        let json = serde_json::to_string_pretty(doc).expect("certificate serializes");
        std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Input(format!("cannot write {path}: {e}")))?;
        println!("certificate written to {path}");
    }
    Ok(())
}

fn out_writer(path: &Option<String>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => Ok(Box::new(std::fs::File::create(p).map_err(|e| {
            CliError::Input(format!("cannot create {p}: {e}"))
        })?)),
        None => Ok(Box::new(std::io::stdout())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { system, out } => cmd_analyze(&system, &out),
        Command::Monodromy { system, json } => cmd_monodromy(&system, &json),
        Command::Center { system, json } => cmd_center(&system, &json),
        Command::Global { system, json } => cmd_global(&system, &json),
        Command::Kukles { grid, n, delta, coeffs, gridopts } => {
            cmd_kukles(grid, n, delta, coeffs, &gridopts)
        }
        Command::Lienard { grid, system, gridopts } => cmd_lienard(grid, system, &gridopts),
        Command::Simulate { system, ic, csv, tol, max_time } => {
            cmd_simulate(&system, &ic, &csv, tol, max_time)
        }
        Command::Period { system, amplitudes, csv, tol } => {
            cmd_period(&system, &amplitudes, &csv, tol)
        }
    }
}

fn cmd_analyze(text: &str, out: &OutputOpts) -> Result<(), CliError> {
    let s = parse_input(text)?;
    let mut doc = build_certificate(&s)?;
    if !out.no_numeric {
        let cfg = IntegratorConfig {
            rel_tol: out.tol,
            abs_tol: out.tol * 1e-2,
            max_time: 200.0,
            ..IntegratorConfig::default()
        };
        doc.numeric = Some(NumericBlock {
            oracle: Some(monodromy_oracle(&s, &cfg)),
            period_table: None,
            periods: None,
        });
    }
    println!("system: {}", doc.system.expression);
    if let Some(mono) = &doc.monodromy {
        println!(
            "monodromic at infinity: {} ({}{})",
            mono.monodromic,
            mono.condition,
            mono.failure.as_deref().map(|f| format!(", case {f}")).unwrap_or_default()
        );
    }
    if let Some(local) = &doc.local_center {
        println!(
            "local center at origin: {} (case {}, conditions [{}])",
            local.center,
            local.case,
            local.conditions.join(", ")
        );
    }
    if let Some(global) = &doc.global_center {
        println!(
            "global center: {} (condition {})",
            global.global_center, global.condition
        );
    }
    if let Some(numeric) = &doc.numeric {
        if let Some(oracle) = &numeric.oracle {
            println!("numeric monodromy oracle: {oracle:?}");
        }
    }
    write_json(&out.json, &doc)
}

fn cmd_monodromy(text: &str, json: &Option<String>) -> Result<(), CliError> {
    let s = parse_input(text)?;
    let v = decide_monodromy(&s)?;
    println!(
        "monodromic at infinity: {} ({:?}{})",
        v.monodromic,
        v.condition,
        v.failure.map(|f| format!(", case {f:?}")).unwrap_or_default()
    );
    let doc = CertificateDocument {
        schema_version: newton_center::certificate::SCHEMA_VERSION,
        system: system_echo(&s),
        monodromy: Some(monodromy_block(&v)),
        local_center: None,
        global_center: None,
        numeric: None,
    };
    write_json(json, &doc)
}

fn cmd_center(text: &str, json: &Option<String>) -> Result<(), CliError> {
    let s = parse_input(text)?;
    match decide_local_center(&s) {
        Ok(v) => {
            println!(
                "local center at origin: {} (case {:?}, conditions {:?})",
                v.center, v.local_monodromy.case, v.conditions
            );
            if let Some(e) = &v.darboux_e {
                println!("Darboux parameter e = {}", newton_center::rational::format_rat(e));
            }
            let doc = CertificateDocument {
                schema_version: newton_center::certificate::SCHEMA_VERSION,
                system: system_echo(&s),
                monodromy: None,
                local_center: Some(local_center_block(&v)),
                global_center: None,
                numeric: None,
            };
            write_json(json, &doc)
        }
        Err(CenterError::OriginNotMonodromic) => {
            println!("local center at origin: false (the origin is not monodromic)");
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_global(text: &str, json: &Option<String>) -> Result<(), CliError> {
    let s = parse_input(text)?;
    let v = decide_global_center(&s)?;
    println!(
        "global center: {} (condition {:?})",
        v.global_center, v.condition
    );
    let doc = CertificateDocument {
        schema_version: newton_center::certificate::SCHEMA_VERSION,
        system: system_echo(&s),
        monodromy: None,
        local_center: v.local.as_ref().map(local_center_block),
        global_center: Some(global_center_block(&v)),
        numeric: None,
    };
    write_json(json, &doc)
}

/// One Kukles grid instance: delta and the four low coefficients.
type KuklesRow = (i64, [i64; 4]);

fn kukles_rows() -> Vec<KuklesRow> {
    let mut rows = Vec::new();
    for delta in [0i64, -1, -2] {
        for a0 in -2i64..=2 {
            for a1 in -2i64..=2 {
                for a2 in -2i64..=2 {
                    for a3 in -2i64..=2 {
                        if (a0, a1, a2, a3) == (0, 0, 0, 0) {
                            continue;
                        }
                        rows.push((delta, [a0, a1, a2, a3]));
                    }
                }
            }
        }
    }
    rows
}

fn subsample<T>(mut rows: Vec<T>, opts: &GridOpts) -> Result<Vec<T>, CliError> {
    if let Some(n) = opts.samples {
        let Some(seed) = opts.seed else {
            return Err(CliError::Input("--samples requires --seed".into()));
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        rows.shuffle(&mut rng);
        rows.truncate(n);
    }
    Ok(rows)
}

fn cmd_kukles(
    grid: Option<String>,
    n: Option<usize>,
    delta: Option<String>,
    coeffs: Option<String>,
    opts: &GridOpts,
) -> Result<(), CliError> {
    if let Some(spec) = grid {
        let n: usize = spec
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| CliError::Input(format!("--grid expects n=N, got {spec:?}")))?;
        if n < 3 || n % 2 == 0 {
            return Err(CliError::Input("grid degree must be odd and at least 3".into()));
        }
        let rows = subsample(kukles_rows(), opts)?;
        let results: Vec<(KuklesRow, bool, bool)> = rows
            .par_iter()
            .map(|row| {
                let (d, a) = row;
                let delta = rat(*d);
                let coeffs: BTreeMap<usize, newton_center::Rat> =
                    a.iter().enumerate().map(|(i, &c)| (i, rat(c))).collect();
                let predicate = kukles_global_center(&delta, &coeffs, n);
                let pipeline = decide_global_center(&kukles_system(&delta, &coeffs, n))
                    .map(|v| v.global_center)
                    .map_err(CliError::from)?;
                Ok((*row, predicate, pipeline))
            })
            .collect::<Result<_, CliError>>()?;
        let mut w = out_writer(&opts.csv)?;
        writeln!(w, "delta,a_n0,a_n11,a_n22,a_n33,predicate,pipeline,agree").ok();
        let mut disagreements = 0usize;
        for ((d, a), predicate, pipeline) in &results {
            if predicate != pipeline {
                disagreements += 1;
            }
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                d, a[0], a[1], a[2], a[3], predicate, pipeline, predicate == pipeline
            )
            .ok();
        }
        drop(w);
        eprintln!(
            "kukles grid n={n}: {} instances, {} disagreements",
            results.len(),
            disagreements
        );
        if disagreements > 0 {
            return Err(CliError::Internal(format!(
                "pipeline disagrees with the Kukles criterion on {disagreements} instances"
            )));
        }
        return Ok(());
    }
    let (Some(n), Some(delta), Some(coeffs)) = (n, delta, coeffs) else {
        return Err(CliError::Input(
            "kukles needs either --grid n=N or all of --n, --delta, --coeffs".into(),
        ));
    };
    let delta = parse_rat_arg(&delta, "--delta")?;
    let mut map = BTreeMap::new();
    for (i, piece) in coeffs.split(',').enumerate() {
        map.insert(i, parse_rat_arg(piece, "--coeffs")?);
    }
    if map.len() > 4 {
        return Err(CliError::Input("--coeffs takes at most four entries".into()));
    }
    if n < 3 || n % 2 == 0 {
        return Err(CliError::Input("degree must be odd and at least 3".into()));
    }
    let predicate = kukles_global_center(&delta, &map, n);
    let s = kukles_system(&delta, &map, n);
    let pipeline = decide_global_center(&s)?;
    println!("system: {}", print_system(&s));
    println!("closed-form criterion: {predicate}");
    println!(
        "pipeline verdict: {} (condition {:?})",
        pipeline.global_center, pipeline.condition
    );
    if predicate != pipeline.global_center {
        return Err(CliError::Internal(
            "pipeline disagrees with the Kukles criterion".into(),
        ));
    }
    Ok(())
}

fn cmd_lienard(
    grid: Option<String>,
    system: Option<String>,
    opts: &GridOpts,
) -> Result<(), CliError> {
    if let Some(spec) = grid {
        let mut l0s = vec![3usize, 5];
        let mut l1s = vec![0usize, 1, 2];
        for piece in spec.split(',') {
            if let Some(v) = piece.strip_prefix("l0=") {
                l0s = vec![v
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad l0 in {spec:?}")))?];
            } else if let Some(v) = piece.strip_prefix("l1=") {
                l1s = vec![v
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad l1 in {spec:?}")))?];
            } else {
                return Err(CliError::Input(format!("--grid expects l0=..[,l1=..], got {spec:?}")));
            }
        }
        let mut rows = Vec::new();
        for &l0 in &l0s {
            for &l1 in &l1s {
                for a in -3i64..=3 {
                    for b in -3i64..=3 {
                        if a != 0 && b != 0 {
                            rows.push((l0, l1, a, b));
                        }
                    }
                }
            }
        }
        let rows = subsample(rows, opts)?;
        let results: Vec<((usize, usize, i64, i64), bool, bool)> = rows
            .par_iter()
            .map(|&(l0, l1, a, b)| {
                let p0 = newton_center::poly::RatPoly::monomial(rat(a), l0);
                let p1 = newton_center::poly::RatPoly::monomial(rat(b), l1);
                let predicate =
                    lienard_monodromy(&p0, &p1).map(|v| v.monodromic).map_err(CliError::from)?;
                let chart = lienard_chart_monodromy(&p0, &p1).map_err(CliError::from)?;
                Ok(((l0, l1, a, b), predicate, chart))
            })
            .collect::<Result<_, CliError>>()?;
        let mut w = out_writer(&opts.csv)?;
        writeln!(w, "l0,l1,a,b,criterion,chart_descent,agree").ok();
        let mut disagreements = 0usize;
        for ((l0, l1, a, b), predicate, chart) in &results {
            if predicate != chart {
                disagreements += 1;
            }
            writeln!(w, "{l0},{l1},{a},{b},{predicate},{chart},{}", predicate == chart).ok();
        }
        drop(w);
        eprintln!(
            "lienard grid: {} instances, {} disagreements",
            results.len(),
            disagreements
        );
        if disagreements > 0 {
            return Err(CliError::Internal(format!(
                "chart descent disagrees with the (L1)/(L2) criterion on {disagreements} instances"
            )));
        }
        return Ok(());
    }
    let Some(text) = system else {
        return Err(CliError::Input("lienard needs a system string or --grid".into()));
    };
    let s = parse_input(&text)?;
    if s.m() > 1 {
        return Err(CliError::Input(format!(
            "not a Lienard system: degree in y is {}",
            s.m()
        )));
    }
    let v = lienard_monodromy(&s.poly(0), &s.poly(1))?;
    let chart = lienard_chart_monodromy(&s.poly(0), &s.poly(1))?;
    println!(
        "monodromic at infinity: {} ({:?}{})",
        v.monodromic,
        v.condition,
        v.failure.map(|f| format!(", case {f:?}")).unwrap_or_default()
    );
    println!("chart-level descent agrees: {}", v.monodromic == chart);
    if v.monodromic != chart {
        return Err(CliError::Internal(
            "chart descent disagrees with the (L1)/(L2) criterion".into(),
        ));
    }
    Ok(())
}

fn cmd_simulate(
    text: &str,
    ic: &str,
    csv: &Option<String>,
    tol: f64,
    max_time: f64,
) -> Result<(), CliError> {
    let s = parse_input(text)?;
    let parts: Vec<&str> = ic.split(',').collect();
    let [x, y] = parts[..] else {
        return Err(CliError::Input(format!("--ic expects X,Y, got {ic:?}")));
    };
    let x: f64 = x.trim().parse().map_err(|_| CliError::Input(format!("bad x in --ic: {x:?}")))?;
    let y: f64 = y.trim().parse().map_err(|_| CliError::Input(format!("bad y in --ic: {y:?}")))?;
    let cfg = IntegratorConfig {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        max_time,
        ..IntegratorConfig::default()
    };
    let traj = integrate_orbit(&s, (x, y), &cfg);
    let mut w = out_writer(csv)?;
    writeln!(w, "t,x,y").ok();
    for (t, px, py) in &traj.points {
        writeln!(w, "{t},{px},{py}").ok();
    }
    drop(w);
    match traj.outcome {
        OrbitOutcome::SectionReturn { time, x } => {
            eprintln!("section return at t = {time}, x = {x}")
        }
        OrbitOutcome::Escaped { time } => eprintln!("escaped at t = {time}"),
        OrbitOutcome::TimedOut => eprintln!("no event within the time budget"),
        OrbitOutcome::StepFailure { time } => eprintln!("step-size underflow at t = {time}"),
    }
    Ok(())
}

fn cmd_period(
    text: &str,
    amplitudes: &str,
    csv: &Option<String>,
    tol: f64,
) -> Result<(), CliError> {
    let s = parse_input(text)?;
    let amps: Vec<f64> = amplitudes
        .split(',')
        .map(|a| {
            a.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad amplitude {a:?}")))
        })
        .collect::<Result<_, _>>()?;
    let cfg = IntegratorConfig {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        ..IntegratorConfig::default()
    };
    let samples = period_function(&s, &amps, &cfg);
    let mut w = out_writer(csv)?;
    writeln!(w, "amplitude,period,converged,refinement_error").ok();
    for row in samples.iter().map(PeriodRow::from) {
        writeln!(
            w,
            "{},{},{},{}",
            row.amplitude, row.period, row.converged, row.refinement_error
        )
        .ok();
    }
    Ok(())
}
