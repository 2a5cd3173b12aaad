//! Command-line front end shared by the `frobeq` binary and the tests.
//!
//! Every subcommand prints one JSON report envelope on stdout. Failures
//! print a single JSON object on stderr and map to the exit codes of
//! [`Error::exit_code`]; usage and parse errors exit with 1.

mod spec_file;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::classify::{self, CensusOptions, RelationReport};
use crate::equidist::{
    self, density, discrepancy, AlphaMode, EmpiricalReport, HistogramBin, IntervalQuery,
};
use crate::error::Error;
use crate::kloosterman;
use crate::mp::fixed_decimal;
use crate::zeta::{self, FrobeniusAngles, ZetaNumerator};

pub use spec_file::{Coeffs, CurveSpecFile, Model};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failures surfaced by the front end.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Lib(e) => e.exit_code(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Parse(_) => "ParseError",
            CliError::Io(_) => "IoError",
            CliError::Lib(e) => e.kind(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Io(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }

    /// The single-line diagnostic written to stderr.
    pub fn to_json(&self) -> String {
        json!({
            "error": self.kind(),
            "message": self.message(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "frobeq", version, about = "Zeta numerators, Frobenius angles and equidistribution of point-count ratios")]
struct Cli {
    /// Include wall-clock timing in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Point counts over F_{q^n} for n = 1..N.
    Count(CountArgs),
    /// Zeta numerator coefficients and Jacobian orders.
    Zeta(CurveArg),
    /// Frobenius angles with modulus and reconstruction residuals.
    Angles(AnglesArgs),
    /// Newton polygon, irreducibility and integer-relation search.
    Classify(ClassifyArgs),
    /// Normalized traces alpha_1..alpha_N.
    Alpha(AlphaArgs),
    /// Interval frequencies of alpha_n against lambda_g.
    Empirical(EmpiricalArgs),
    /// lambda_g(beta, gamma) by closed form or quadrature, optionally Monte Carlo.
    Density(DensityArgs),
    /// Star discrepancy of the Kronecker points of the angles.
    Discrepancy(DiscrepancyArgs),
    /// Survey of a small curve family.
    Census(CensusArgs),
    /// Kloosterman sum, its angle and the distribution of kappa_n.
    Kloosterman(KloostermanArgs),
}

#[derive(Debug, Args)]
struct CurveArg {
    /// Curve specification file (JSON, or TOML by extension).
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    curve: CurveArg,
    /// Largest extension degree.
    #[arg(long = "n")]
    n: usize,
}

#[derive(Debug, Args)]
struct AnglesArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long, default_value_t = 50)]
    digits: u32,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    curve: CurveArg,
    /// Relation search bound.
    #[arg(long = "K", default_value_t = 50)]
    bound: u32,
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    #[arg(long, default_value_t = 50)]
    digits: u32,
}

#[derive(Debug, Args)]
struct AlphaArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value = "exact")]
    mode: AlphaMode,
    /// Directory for CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EmpiricalArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long, default_value = "exact")]
    mode: AlphaMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long)]
    g: usize,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long)]
    tol: Option<f64>,
    /// Monte Carlo sample count.
    #[arg(long)]
    mc: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct DiscrepancyArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 50)]
    digits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    genus: usize,
    #[arg(long = "K", default_value_t = 50)]
    bound: u32,
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    /// Sample size for families too large to enumerate.
    #[arg(long, default_value_t = 200)]
    sample: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct KloostermanArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What a subcommand produced.
struct Outcome {
    inputs: Value,
    seed: Option<u64>,
    results: Value,
}

/// Runs one invocation. `argv[0]` is the program name. Returns the exit
/// code and the text destined for stdout and stderr.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string(), String::new()),
                _ => {
                    let err = CliError::Usage(e.to_string().trim_end().to_string());
                    (err.exit_code(), String::new(), err.to_json() + "\n")
                }
            };
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(out) => {
            let timing = if cli.timing {
                json!({ "elapsed_seconds": start.elapsed().as_secs_f64() })
            } else {
                Value::Null
            };
            let envelope = json!({
                "tool_version": TOOL_VERSION,
                "command": name,
                "inputs": out.inputs,
                "seed": out.seed,
                "results": out.results,
                "timing": timing,
            });
            let text = serde_json::to_string_pretty(&envelope).expect("report serializes");
            (0, text + "\n", String::new())
        }
        Err(e) => (e.exit_code(), String::new(), e.to_json() + "\n"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Zeta(_) => "zeta",
        Command::Angles(_) => "angles",
        Command::Classify(_) => "classify",
        Command::Alpha(_) => "alpha",
        Command::Empirical(_) => "empirical",
        Command::Density(_) => "density",
        Command::Discrepancy(_) => "discrepancy",
        Command::Census(_) => "census",
        Command::Kloosterman(_) => "kloosterman",
    }
}

fn dispatch(c: Command) -> CliResult<Outcome> {
    match c {
        Command::Count(a) => cmd_count(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Angles(a) => cmd_angles(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Alpha(a) => cmd_alpha(a),
        Command::Empirical(a) => cmd_empirical(a),
        Command::Density(a) => cmd_density(a),
        Command::Discrepancy(a) => cmd_discrepancy(a),
        Command::Census(a) => cmd_census(a),
        Command::Kloosterman(a) => cmd_kloosterman(a),
    }
}

// ---------------------------------------------------------------------------
// JSON helpers

const MAX_SAFE_JSON_INT: u64 = 1 << 53;

/// Integers beyond 2^53 become decimal strings so no reader loses digits.
pub fn int_json(n: &BigInt) -> Value {
    match n.abs().to_u64() {
        Some(m) if m <= MAX_SAFE_JSON_INT => json!(n.to_i64().expect("fits")),
        _ => Value::String(n.to_string()),
    }
}

fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn u64_json(n: u64) -> Value {
    int_json(&BigInt::from(n))
}

fn numerator_json(z: &ZetaNumerator) -> Value {
    json!({
        "g": z.g(),
        "q": int_json(z.q()),
        "e": ints_json(z.e()),
        "coefficients": ints_json(&z.coefficients()),
        "polynomial": z.to_string(),
    })
}

fn relation_json(r: &RelationReport) -> Value {
    json!({
        "found": r.found.is_some(),
        "vector": r.found,
        "residual": r.residual,
        "bound": r.bound,
        "epsilon": r.epsilon,
        "floor": r.floor,
        "min_residual": r.min_residual,
        "min_vector": r.min_vector,
        "vectors_scanned": r.vectors_scanned,
    })
}

fn query_json(q: &IntervalQuery) -> Value {
    json!([q.beta(), q.gamma()])
}

fn empirical_json(r: &EmpiricalReport) -> Value {
    json!({
        "n": r.n,
        "g": r.g,
        "sup_deviation": r.sup_deviation,
        "rows": r.rows.iter().map(|row| json!({
            "interval": query_json(&row.query),
            "count": row.count,
            "frequency": row.frequency,
            "lambda": row.lambda,
            "deviation": row.deviation,
        })).collect::<Vec<_>>(),
        "histogram": r.histogram.iter().map(|b| json!([b.lo, b.hi, b.count])).collect::<Vec<_>>(),
    })
}

fn density_json(d: &density::DensityValue) -> Value {
    json!({
        "value": d.value,
        "method": d.method.as_str(),
        "error_bound": d.error_bound,
    })
}

fn angles_json(a: &FrobeniusAngles) -> Value {
    let places = a.precision_digits();
    json!({
        "theta": a.theta().iter().map(|t| fixed_decimal(t, places, a.working_bits())).collect::<Vec<_>>(),
        "theta_f64": a.theta_f64(),
        "precision_digits": places,
        "working_bits": a.working_bits(),
        "modulus_residual": a.modulus_residual(),
        "reconstruction_error": a.reconstruction_error(),
    })
}

// ---------------------------------------------------------------------------
// CSV artifacts

fn csv_writer(dir: &Path, name: &str) -> CliResult<csv::Writer<std::fs::File>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    csv::Writer::from_path(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn csv_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

fn write_rows<R>(dir: &Path, name: &str, header: &[String], rows: R) -> CliResult<()>
where
    R: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv_writer(dir, name)?;
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

fn write_histogram(dir: &Path, bins: &[HistogramBin]) -> CliResult<()> {
    let header = ["lo", "hi", "count"].map(String::from);
    write_rows(
        dir,
        "histogram.csv",
        &header,
        bins.iter().map(|b| vec![b.lo.to_string(), b.hi.to_string(), b.count.to_string()]),
    )
}

// ---------------------------------------------------------------------------
// Subcommands

struct LoadedCurve {
    file: CurveSpecFile,
    curve: crate::curves::CurveSpec,
}

fn load_curve(path: &Path) -> CliResult<LoadedCurve> {
    let file = CurveSpecFile::read(path)?;
    let curve = file.to_curve()?;
    Ok(LoadedCurve { file, curve })
}

fn curve_inputs(path: &Path, lc: &LoadedCurve, extra: Value) -> Value {
    let mut m = Map::new();
    m.insert("curve_file".into(), json!(path.display().to_string()));
    m.insert("curve".into(), serde_json::to_value(&lc.file).expect("spec serializes"));
    if let Value::Object(extra) = extra {
        m.extend(extra);
    }
    Value::Object(m)
}

fn cmd_count(a: CountArgs) -> CliResult<Outcome> {
    if a.n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()).into());
    }
    let lc = load_curve(&a.curve.curve)?;
    let counts = (1..=a.n)
        .map(|n| lc.curve.count_points(n))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(Outcome {
        inputs: curve_inputs(&a.curve.curve, &lc, json!({ "n": a.n })),
        seed: None,
        results: json!({
            "genus": lc.curve.genus(),
            "q": lc.curve.q(),
            "counts": counts.iter().map(|c| u64_json(*c)).collect::<Vec<_>>(),
        }),
    })
}

fn cmd_zeta(a: CurveArg) -> CliResult<Outcome> {
    let lc = load_curve(&a.curve)?;
    let z = zeta::numerator_for_curve(&lc.curve)?;
    let g = z.g();
    let ps = zeta::extend_power_sums(&z, 2 * g)?;
    let orders = (1..=4)
        .map(|n| zeta::jacobian_order(&z, n).map(|o| int_json(&o)))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(Outcome {
        inputs: curve_inputs(&a.curve, &lc, json!({})),
        seed: None,
        results: json!({
            "numerator": ints_json(z.e()),
            "zeta": numerator_json(&z),
            "power_sums": ints_json(ps.values()),
            "jacobian_orders": orders,
        }),
    })
}

fn cmd_angles(a: AnglesArgs) -> CliResult<Outcome> {
    let lc = load_curve(&a.curve.curve)?;
    let z = zeta::numerator_for_curve(&lc.curve)?;
    let angles = zeta::frobenius_angles(&z, a.digits)?;
    Ok(Outcome {
        inputs: curve_inputs(&a.curve.curve, &lc, json!({ "digits": a.digits })),
        seed: None,
        results: json!({
            "numerator": ints_json(z.e()),
            "angles": angles_json(&angles),
        }),
    })
}

fn cmd_classify(a: ClassifyArgs) -> CliResult<Outcome> {
    let lc = load_curve(&a.curve.curve)?;
    let z = zeta::numerator_for_curve(&lc.curve)?;
    let c = classify::classify(&z, lc.curve.p())?;
    let p2 = zeta::pm_numerator(&z, 2)?;
    let p_irr = classify::is_irreducible_over_z(&z.coefficients())?;
    let p2_irr = classify::is_irreducible_over_z(&p2.coefficients())?;
    let proxy_degree = 6;
    let simple = classify::simplicity_proxy(&z, proxy_degree)?;
    let angles = zeta::frobenius_angles(&z, a.digits)?;
    let rel = classify::find_integer_relation(&angles, a.bound, a.eps)?;
    Ok(Outcome {
        inputs: curve_inputs(
            &a.curve.curve,
            &lc,
            json!({ "K": a.bound, "eps": a.eps, "digits": a.digits }),
        ),
        seed: None,
        results: json!({
            "numerator": ints_json(z.e()),
            "kind": c.kind.as_str(),
            "p_rank": c.p_rank,
            "newton_slopes": c.newton_slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "p_irreducible": p_irr,
            "p2_numerator": ints_json(p2.e()),
            "p2_irreducible": p2_irr,
            "simplicity_proxy": {
                "value": simple,
                "max_m": proxy_degree,
                "note": "P_m irreducible over Z for every m up to max_m; a necessary condition for an absolutely simple Jacobian, not a proof",
            },
            "angles_theta_f64": angles.theta_f64(),
            "relation": relation_json(&rel),
        }),
    })
}

fn cmd_alpha(a: AlphaArgs) -> CliResult<Outcome> {
    let lc = load_curve(&a.curve.curve)?;
    let z = zeta::numerator_for_curve(&lc.curve)?;
    let seq = equidist::alpha_sequence(&z, a.n, a.mode)?;
    let mut results = json!({
        "n": seq.len(),
        "g": seq.g,
        "mode": seq.mode.as_str(),
        "min": seq.alpha.iter().cloned().fold(f64::INFINITY, f64::min),
        "max": seq.alpha.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    });
    match &a.out {
        Some(dir) => {
            write_rows(
                dir,
                "alpha.csv",
                &["n".to_string(), "alpha".to_string()],
                seq.alpha.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), v.to_string()]),
            )?;
            results["artifacts"] = json!(["alpha.csv"]);
        }
        None => results["alpha"] = json!(seq.alpha),
    }
    Ok(Outcome {
        inputs: curve_inputs(
            &a.curve.curve,
            &lc,
            json!({ "N": a.n, "mode": a.mode.as_str(), "out": a.out.as_ref().map(|p| p.display().to_string()) }),
        ),
        seed: None,
        results,
    })
}

fn cmd_empirical(a: EmpiricalArgs) -> CliResult<Outcome> {
    let lc = load_curve(&a.curve.curve)?;
    let z = zeta::numerator_for_curve(&lc.curve)?;
    let seq = equidist::alpha_sequence(&z, a.n, a.mode)?;
    let grid = equidist::default_grid(a.grid)?;
    let report = equidist::empirical_report(&seq, &grid)?;
    let mut results = empirical_json(&report);
    if let Some(dir) = &a.out {
        write_histogram(dir, &report.histogram)?;
        results["artifacts"] = json!(["histogram.csv"]);
    }
    Ok(Outcome {
        inputs: curve_inputs(
            &a.curve.curve,
            &lc,
            json!({ "N": a.n, "grid": a.grid, "mode": a.mode.as_str(), "out": a.out.as_ref().map(|p| p.display().to_string()) }),
        ),
        seed: None,
        results,
    })
}

fn cmd_density(a: DensityArgs) -> CliResult<Outcome> {
    let query = IntervalQuery::new(a.beta, a.gamma)?;
    let tol = a.tol.unwrap_or_else(|| density::default_tolerance(a.g));
    let exact = density::lambda_density(a.g, query, tol)?;
    let mc = a
        .mc
        .map(|samples| density::monte_carlo_lambda(a.g, query, samples, a.seed))
        .transpose()?;
    let mut results = density_json(&exact);
    results["monte_carlo"] = mc.as_ref().map(density_json).unwrap_or(Value::Null);
    Ok(Outcome {
        inputs: json!({ "g": a.g, "beta": a.beta, "gamma": a.gamma, "tol": tol, "mc": a.mc }),
        seed: a.mc.map(|_| a.seed),
        results,
    })
}

fn cmd_discrepancy(a: DiscrepancyArgs) -> CliResult<Outcome> {
    let lc = load_curve(&a.curve.curve)?;
    let z = zeta::numerator_for_curve(&lc.curve)?;
    let angles = zeta::frobenius_angles(&z, a.digits)?;
    let points = discrepancy::kronecker_points(&angles, a.n)?;
    let report = discrepancy::star_discrepancy(&points)?;
    let mut results = json!({
        "theta_f64": angles.theta_f64(),
        "n": report.n,
        "dimension": report.dimension,
        "star_discrepancy": report.star_discrepancy,
        "method": report.method.as_str(),
        "extreme_factor": report.extreme_factor,
    });
    if let Some(dir) = &a.out {
        let mut header = vec!["n".to_string()];
        header.extend((1..=report.dimension).map(|j| format!("x{j}")));
        write_rows(
            dir,
            "kronecker.csv",
            &header,
            points.iter().enumerate().map(|(i, pt)| {
                std::iter::once((i + 1).to_string())
                    .chain(pt.iter().map(|x| x.to_string()))
                    .collect()
            }),
        )?;
        results["artifacts"] = json!(["kronecker.csv"]);
    }
    Ok(Outcome {
        inputs: curve_inputs(
            &a.curve.curve,
            &lc,
            json!({ "N": a.n, "digits": a.digits, "out": a.out.as_ref().map(|p| p.display().to_string()) }),
        ),
        seed: None,
        results,
    })
}

fn cmd_census(a: CensusArgs) -> CliResult<Outcome> {
    let opts = CensusOptions {
        bound: a.bound,
        epsilon: a.eps,
        sample_limit: a.sample,
        seed: a.seed,
        ..CensusOptions::default()
    };
    let r = classify::census(a.p, a.genus, &opts)?;
    let curves: Vec<Value> = r
        .curves
        .iter()
        .map(|c| {
            json!({
                "coeffs": c.coeffs,
                "counts": c.counts,
                "numerator": ints_json(c.numerator.e()),
                "a1": c.a1,
                "kind": c.classification.kind.as_str(),
                "p_rank": c.classification.p_rank,
                "newton_slopes": c.classification.newton_slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "p_irreducible": c.p_irreducible,
                "p2_irreducible": c.p2_irreducible,
                "simplicity_proxy": c.simple_proxy,
                "relation": relation_json(&c.relation),
            })
        })
        .collect();
    let hist: Map<String, Value> = r
        .a1_histogram
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    Ok(Outcome {
        inputs: json!({
            "p": a.p,
            "genus": a.genus,
            "K": a.bound,
            "eps": a.eps,
            "sample": a.sample,
            "digits": opts.digits,
            "proxy_degree": opts.proxy_degree,
        }),
        seed: Some(a.seed),
        results: json!({
            "family": r.family,
            "sampled": r.sampled,
            "total_nonsingular": r.total_nonsingular,
            "singular_skipped": r.singular_skipped,
            "surveyed": r.curves.len(),
            "fractions": {
                "ordinary": r.fractions.ordinary,
                "supersingular": r.fractions.supersingular,
                "intermediate": r.fractions.intermediate,
                "p_irreducible": r.fractions.p_irreducible,
                "relation_found": r.fractions.relation_found,
            },
            "a1_histogram": hist,
            "curves": curves,
        }),
    })
}

fn cmd_kloosterman(a: KloostermanArgs) -> CliResult<Outcome> {
    let grid = equidist::default_grid(a.grid)?;
    let (seq, report) = kloosterman::kappa_distribution_report(a.p, a.a, a.n, &grid)?;
    let d = &seq.data;
    let over_pi = d.angle_over_pi();
    let bits = over_pi.working_bits();
    let places = d.precision_digits;
    let mut results = json!({
        "k": fixed_decimal(&d.k, places, bits),
        "k_f64": d.k_f64(),
        "phi": fixed_decimal(&d.phi, places, bits),
        "phi_f64": d.phi_f64(),
        "phi_over_pi": fixed_decimal(&over_pi.theta()[0], places, bits),
        "relation": relation_json(&report.relation),
        "equidistribution_expected": report.equidistribution_expected,
        "empirical": empirical_json(&report.empirical),
    });
    if let Some(dir) = &a.out {
        write_histogram(dir, &report.empirical.histogram)?;
        results["artifacts"] = json!(["histogram.csv"]);
    }
    Ok(Outcome {
        inputs: json!({
            "p": a.p,
            "a": a.a,
            "N": a.n,
            "grid": a.grid,
            "out": a.out.as_ref().map(|p| p.display().to_string()),
        }),
        seed: None,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int_json(&BigInt::from(1u64 << 53)), json!(9007199254740992u64));
        assert_eq!(int_json(&BigInt::from(-(1i64 << 53))), json!(-9007199254740992i64));
        assert_eq!(int_json(&BigInt::from((1u64 << 53) + 1)), json!("9007199254740993"));
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, out, err) = run(["frobeq", "zeta"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"], "UsageError");
        assert_eq!(run(["frobeq", "--help"]).0, 0);
    }

    #[test]
    fn density_reports_closed_form() {
        let (code, out, _) = run(["frobeq", "density", "--g", "1", "--beta", "-0.5", "--gamma", "0.5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["results"]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert_eq!(v["timing"], Value::Null);
        assert_eq!(v["seed"], Value::Null);
    }
}
