//! The `companion-smith` command line: Smith forms of matrix files, the
//! gcd-reduction fast path for `f(C_g)`, closed-form cyclotomic and
//! Brieskorn computations, and the verification sweeps.
//!
//! Exit status contract: 0 on success, 1 when a requested cross-check
//! disagrees (or a verify suite fails), 2 on input or usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::Error;
use crate::matrix::{poly_of_companion, IntMatrix};
use crate::poly::{cyclotomic, IntPolynomial};
use crate::smith::{smith_form, SmithDecomposition, DEFAULT_MINOR_CAP};
use crate::structured::{
    alexander_polynomial, cyclotomic_companion_smith, last_nonzero_determinantal_divisor,
    reduce_common_divisor, smith_via_reduction, torus_circulant_smith,
};
use crate::topology::{abelianization, brieskorn_homology, AbelianGroup, CyclicPresentation};
use crate::verify::{run_suite, SweepReport, SUITE_NAMES};

/// Environment variable overriding the minor-oracle dimension cap.
pub const MINOR_CAP_ENV: &str = "COMPANION_SMITH_MINOR_CAP";

#[derive(Parser)]
#[command(
    name = "companion-smith",
    version,
    about = "Exact Smith normal forms of integer matrices in companion rings",
    max_term_width = 100
)]
struct Cli {
    /// Output format for the run report
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Include elapsed time in the report (off by default so that identical
    /// inputs produce byte-identical output)
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of a matrix file (`rows cols` header, then one row
    /// of integers per line)
    Snf {
        matrix_file: PathBuf,
        /// Also compute and print the unimodular transforms
        #[arg(long)]
        transforms: bool,
    },
    /// Reduce f(C_g) by the monic gcd of f and g and report its Smith form
    Polymat {
        /// Polynomial f, e.g. "t^2 - 1" or "-1,0,1"
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Monic polynomial g
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Cross-check the fast path against the general engine
        #[arg(long)]
        check: bool,
    },
    /// Closed-form Smith form of Phi_m evaluated at the companion matrix of
    /// Phi_n, for m >= n >= 1
    Cyclotomic {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// Cross-check the closed form against the general engine
        #[arg(long)]
        check: bool,
    },
    /// First homology of the Brieskorn manifold M(r, s, n), r and s coprime
    Brieskorn {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        n: u64,
        /// Recompute via the direct circulant Smith form and compare
        #[arg(long)]
        verify: bool,
    },
    /// Run a named verification sweep
    Verify {
        /// One of: theorem-c, corollary-d, cyclotomic, dunwoody,
        /// eq1-resultant, factor-splits, lemma-gamma1, all
        #[arg(long)]
        suite: String,
        /// Sweep bound (cyclotomic, dunwoody) or instance count (seeded
        /// suites); suite default when omitted
        #[arg(long)]
        max: Option<u64>,
        /// Seed for the deterministic instance generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads to fan the sweep out over
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// One executed command: the echoed inputs, the JSON result payload, the
/// cross-check outcome when one was requested, and the elapsed time.
pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub agreement: Option<bool>,
    pub elapsed: Duration,
    text: String,
}

impl RunReport {
    /// The versioned JSON document (`"schema": 1`). Timings are included
    /// only on request, keeping default output reproducible.
    pub fn to_json(&self, include_timings: bool) -> Value {
        let mut doc = json!({
            "schema": 1,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "agreement": self.agreement,
        });
        if include_timings {
            doc["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        doc
    }

    /// 0 on success, 1 when a requested cross-check disagreed.
    pub fn exit_code(&self) -> i32 {
        match self.agreement {
            Some(false) => 1,
            _ => 0,
        }
    }
}

/// Renders a big integer as an exact JSON number.
pub fn big_json(value: &BigInt) -> Value {
    serde_json::from_str(&value.to_string()).expect("integer literal is valid JSON")
}

fn factors_json(factors: &[BigInt]) -> Value {
    Value::Array(factors.iter().map(big_json).collect())
}

/// A matrix as a JSON array of rows of exact integers.
pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| big_json(&m[(i, j)])).collect()))
            .collect(),
    )
}

/// `{"invariant_factors": [...], "rank": k, "left": ?, "right": ?}`.
pub fn smith_json(d: &SmithDecomposition) -> Value {
    json!({
        "invariant_factors": factors_json(d.invariant_factors()),
        "rank": d.rank(),
        "left": d.left_transform().map(matrix_json),
        "right": d.right_transform().map(matrix_json),
    })
}

/// `{"torsion": [...], "betti": k}`.
pub fn group_json(g: &AbelianGroup) -> Value {
    json!({
        "torsion": factors_json(g.torsion()),
        "betti": g.betti(),
    })
}

fn factor_list(factors: &[BigInt]) -> String {
    factors
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn minor_cap_from_env() -> usize {
    std::env::var(MINOR_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MINOR_CAP)
}

fn parse_poly(text: &str, name: &str) -> Result<IntPolynomial, String> {
    text.parse()
        .map_err(|e| format!("invalid polynomial for --{name}: {e}"))
}

fn cmd_snf(matrix_file: &PathBuf, transforms: bool) -> Result<RunReport, String> {
    let raw = std::fs::read_to_string(matrix_file)
        .map_err(|e| format!("cannot read {}: {e}", matrix_file.display()))?;
    let matrix: IntMatrix = raw.parse().map_err(|e| format!("{e}"))?;
    let decomposition = smith_form(&matrix, transforms);
    let mut text = format!(
        "invariant factors: {}\nrank: {}",
        factor_list(decomposition.invariant_factors()),
        decomposition.rank()
    );
    if let (Some(left), Some(right)) = (
        decomposition.left_transform(),
        decomposition.right_transform(),
    ) {
        write!(text, "\nleft transform:\n{left}\nright transform:\n{right}").unwrap();
    }
    Ok(RunReport {
        command: "snf",
        inputs: json!({
            "matrix_file": matrix_file.display().to_string(),
            "rows": matrix.rows(),
            "cols": matrix.cols(),
            "transforms": transforms,
        }),
        result: smith_json(&decomposition),
        agreement: None,
        elapsed: Duration::ZERO,
        text,
    })
}

fn cmd_polymat(f_text: &str, g_text: &str, check: bool) -> Result<RunReport, String> {
    let f = parse_poly(f_text, "f")?;
    let g = parse_poly(g_text, "g")?;
    let reduction = reduce_common_divisor(&f, &g).map_err(|e| e.to_string())?;
    let fast = smith_via_reduction(&f, &g).map_err(|e| e.to_string())?;
    let last_divisor = match last_nonzero_determinantal_divisor(&f, &g) {
        Ok(v) => Some(v),
        Err(Error::AllZeroMatrix) => None,
        Err(e) => return Err(e.to_string()),
    };
    let engine = if check {
        Some(smith_form(
            &poly_of_companion(&f, &g).map_err(|e| e.to_string())?,
            false,
        ))
    } else {
        None
    };
    let agreement = engine
        .as_ref()
        .map(|engine| engine.invariant_factors() == fast.invariant_factors());
    let mut text = format!(
        "z = {}\nF = {}\nG = {}\nzero block size: {}\ninvariant factors: {}",
        reduction.z(),
        reduction.f_quot(),
        reduction.g_quot(),
        reduction.zero_block_size(),
        factor_list(fast.invariant_factors()),
    );
    match &last_divisor {
        Some(v) => write!(text, "\nlast nonzero determinantal divisor: {v}").unwrap(),
        None => write!(text, "\nlast nonzero determinantal divisor: none (zero matrix)").unwrap(),
    }
    if let Some(engine) = &engine {
        write!(
            text,
            "\nengine invariant factors: {}\nengine agreement: {}",
            factor_list(engine.invariant_factors()),
            agreement.unwrap()
        )
        .unwrap();
    }
    Ok(RunReport {
        command: "polymat",
        inputs: json!({ "f": f.to_string(), "g": g.to_string(), "check": check }),
        result: json!({
            "z": reduction.z().to_string(),
            "f_quot": reduction.f_quot().to_string(),
            "g_quot": reduction.g_quot().to_string(),
            "zero_block_size": reduction.zero_block_size(),
            "invariant_factors": factors_json(fast.invariant_factors()),
            "rank": fast.rank(),
            "last_nonzero_determinantal_divisor": last_divisor.as_ref().map(big_json),
            "engine_invariant_factors": engine
                .as_ref()
                .map(|d| factors_json(d.invariant_factors())),
        }),
        agreement,
        elapsed: Duration::ZERO,
        text,
    })
}

fn cmd_cyclotomic(m: u64, n: u64, check: bool) -> Result<RunReport, String> {
    let closed = cyclotomic_companion_smith(m, n).map_err(|e| e.to_string())?;
    let agreement = if check {
        let matrix = poly_of_companion(
            &cyclotomic(m).map_err(|e| e.to_string())?,
            &cyclotomic(n).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let engine = smith_form(&matrix, false);
        Some(engine.invariant_factors() == closed.invariant_factors())
    } else {
        None
    };
    let mut text = format!(
        "smith form of Phi_{m}(C_Phi_{n}): {}",
        factor_list(closed.invariant_factors())
    );
    if let Some(ok) = agreement {
        write!(text, "\nengine agreement: {ok}").unwrap();
    }
    Ok(RunReport {
        command: "cyclotomic",
        inputs: json!({ "m": m, "n": n, "check": check }),
        result: smith_json(&closed),
        agreement,
        elapsed: Duration::ZERO,
        text,
    })
}

fn cmd_brieskorn(r: u64, s: u64, n: u64, verify: bool) -> Result<RunReport, String> {
    let homology = brieskorn_homology(r, s, n).map_err(|e| e.to_string())?;
    let chain = torus_circulant_smith(r, s, n).map_err(|e| e.to_string())?;
    let agreement = if verify {
        let f = alexander_polynomial(r, s).map_err(|e| e.to_string())?;
        let reduced = f
            .rem_monic(&IntPolynomial::power_minus_one(n as usize))
            .map_err(|e| e.to_string())?;
        let mut sums = reduced.coeffs().to_vec();
        sums.resize(n as usize, BigInt::from(0));
        let presentation = CyclicPresentation::new(sums).map_err(|e| e.to_string())?;
        let direct = abelianization(&crate::topology::representer_circulant(&presentation));
        Some(direct == homology)
    } else {
        None
    };
    let mut text = format!("H1(M({r}, {s}, {n})) = {homology}");
    if let Some(ok) = agreement {
        write!(text, "\ncirculant agreement: {ok}").unwrap();
    }
    Ok(RunReport {
        command: "brieskorn",
        inputs: json!({ "r": r, "s": s, "n": n, "verify": verify }),
        result: json!({
            "homology": group_json(&homology),
            "rendered": homology.to_string(),
            "invariant_factors": factors_json(chain.invariant_factors()),
        }),
        agreement,
        elapsed: Duration::ZERO,
        text,
    })
}

fn cmd_verify(suite: &str, max: Option<u64>, seed: u64, jobs: usize) -> Result<RunReport, String> {
    let jobs = jobs.max(1);
    let reports = run_suite(suite, max, seed, jobs, minor_cap_from_env()).ok_or_else(|| {
        format!(
            "unknown suite `{suite}` (expected one of: {})",
            SUITE_NAMES.join(", ")
        )
    })?;
    let all_passed = reports.iter().all(SweepReport::all_passed);
    let mut text = String::new();
    for report in &reports {
        if !text.is_empty() {
            text.push('\n');
        }
        write!(
            text,
            "suite {}: {}/{} passed",
            report.name,
            report.passed(),
            report.total
        )
        .unwrap();
        for failure in report.failures.iter().take(5) {
            write!(text, "\n  FAIL {failure}").unwrap();
        }
        if report.failures.len() > 5 {
            write!(text, "\n  ... {} more failures", report.failures.len() - 5).unwrap();
        }
    }
    let suites_json: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "total": r.total,
                "passed": r.passed(),
                "failures": r.failures,
            })
        })
        .collect();
    Ok(RunReport {
        command: "verify",
        inputs: json!({ "suite": suite, "max": max, "seed": seed, "jobs": jobs }),
        result: json!({ "suites": suites_json }),
        agreement: Some(all_passed),
        elapsed: Duration::ZERO,
        text,
    })
}

/// Parses `std::env::args`, runs the selected command, prints the report,
/// and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Snf {
            matrix_file,
            transforms,
        } => cmd_snf(matrix_file, *transforms),
        Command::Polymat { f, g, check } => cmd_polymat(f, g, *check),
        Command::Cyclotomic { m, n, check } => cmd_cyclotomic(*m, *n, *check),
        Command::Brieskorn { r, s, n, verify } => cmd_brieskorn(*r, *s, *n, *verify),
        Command::Verify {
            suite,
            max,
            seed,
            jobs,
        } => cmd_verify(suite, *max, *seed, *jobs),
    };
    match outcome {
        Ok(mut report) => {
            report.elapsed = started.elapsed();
            match cli.format {
                OutputFormat::Text => {
                    println!("{}", report.text);
                    if cli.timings {
                        eprintln!("elapsed: {} ms", report.elapsed.as_millis());
                    }
                }
                OutputFormat::Json => {
                    println!("{}", report.to_json(cli.timings));
                }
            }
            report.exit_code()
        }
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}
