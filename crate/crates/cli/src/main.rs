//! Command-line surface for the exact trace computations.
//!
//! Subcommands: `trace` (geometric breakdown), `oracle` (spectral side),
//! `classnum` (Hurwitz class numbers and reduced forms), `orbital`
//! (archimedean orbital integrals), `equivariance` (verification suites),
//! `verify` (engine-vs-oracle grid).
//!
//! Exit codes: 0 success / verified, 1 verification failure, 2 usage or
//! domain error. Rationals are always printed exactly as `p/q`.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use gl2trace::chars::WeightVector;
use gl2trace::classnum;
use gl2trace::exact::{parse_rational, QuadElem, Rational};
use gl2trace::galois;
use gl2trace::oracle::CuspSpace;
use gl2trace::orbital::{arch_orbital, GroupElement};
use gl2trace::tfengine::TraceEngine;

/// Environment variable capping the class-number memo bound.
const CLASSNUM_BOUND_ENV: &str = "GL2TRACE_CLASSNUM_BOUND";

// Records mode is made to be piped; exit quietly when the reader closes
// the pipe instead of panicking on EPIPE.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "gl2trace",
    version,
    about = "Exact Hecke traces on level-one cusp forms: geometric side, spectral oracle, and Galois-equivariance suites",
    after_help = "Set GL2TRACE_CLASSNUM_BOUND to cap the Hurwitz class-number memo bound."
)]
struct Cli {
    /// Output mode: aligned table or line-delimited JSON records.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Table)]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Table,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric-side trace breakdown of T_m on the weight-k cusp space.
    Trace {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    /// Spectral side: trace, matrix or characteristic polynomial of T_m.
    Oracle {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        /// Print the full Hecke matrix.
        #[arg(long)]
        matrix: bool,
        /// Print the characteristic polynomial.
        #[arg(long)]
        charpoly: bool,
    },
    /// Hurwitz class number H(n), optionally with the reduced forms.
    Classnum {
        #[arg(long)]
        n: u64,
        /// List the reduced forms of discriminant -n.
        #[arg(long)]
        forms: bool,
    },
    /// Archimedean orbital integral of a 2x2 element.
    Orbital {
        /// Field seed: 1 for the rationals, a squarefree d > 1 for Q(sqrt(d)).
        #[arg(long)]
        d: i64,
        /// Matrix entries a,b,c,e (row major), each a rational or
        /// "a+b*sqrt(d)".
        #[arg(long)]
        gamma: String,
        /// Weight list: one entry over the rationals, two over Q(sqrt(d)).
        #[arg(long)]
        k: String,
        /// Central character exponent.
        #[arg(long, default_value_t = 0)]
        w: i64,
    },
    /// Conjugation-equivariance verification suites.
    Equivariance {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Engine-vs-oracle equality over a (k, m) grid.
    Verify {
        #[arg(long, default_value_t = 4)]
        k_min: u64,
        #[arg(long, default_value_t = 30)]
        k_max: u64,
        #[arg(long, default_value_t = 30)]
        m_max: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    RationalTraces,
    HilbertOrbital,
    Eigensystems,
}

#[derive(Args)]
struct SuiteOpts {
    /// rational-traces: smallest weight in the sweep.
    #[arg(long, default_value_t = 4)]
    k_min: u64,
    /// rational-traces: largest weight in the sweep.
    #[arg(long, default_value_t = 30)]
    k_max: u64,
    /// rational-traces: largest Hecke index.
    #[arg(long, default_value_t = 10)]
    m_max: u64,
    /// hilbert-orbital: field seed (0 runs d = 2, 3, 5, 13).
    #[arg(long, default_value_t = 0)]
    d: i64,
    /// hilbert-orbital: elliptic samples per weight pair.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// hilbert-orbital: vanishing samples.
    #[arg(long, default_value_t = 200)]
    vanishing: usize,
    /// hilbert-orbital: central character exponent.
    #[arg(long, default_value_t = 0)]
    w: i64,
    /// hilbert-orbital: RNG seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// eigensystems: weight to inspect (0 runs 12, 16, 18, 20, 22, 24, 26).
    #[arg(long, default_value_t = 0)]
    k: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = cli.output;
    let code = match cli.command {
        Command::Trace { k, m } => cmd_trace(mode, k, m),
        Command::Oracle {
            k,
            m,
            matrix,
            charpoly,
        } => cmd_oracle(mode, k, m, matrix, charpoly),
        Command::Classnum { n, forms } => cmd_classnum(mode, n, forms),
        Command::Orbital { d, gamma, k, w } => cmd_orbital(mode, d, &gamma, &k, w),
        Command::Equivariance { suite, opts } => cmd_equivariance(mode, suite, &opts),
        Command::Verify {
            k_min,
            k_max,
            m_max,
        } => cmd_verify(mode, k_min, k_max, m_max),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn require_even_weight(k: u64) -> Result<(), u8> {
    if k % 2 != 0 || k < 4 {
        Err(usage_error(&format!(
            "weight k = {k} violates the domain: need even k >= 4"
        )))
    } else {
        Ok(())
    }
}

fn require_hecke_index(m: u64) -> Result<(), u8> {
    if m < 1 {
        Err(usage_error("Hecke index m must be at least 1"))
    } else {
        Ok(())
    }
}

fn engine_for(m_max: u64) -> TraceEngine {
    match std::env::var(CLASSNUM_BOUND_ENV)
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
    {
        Some(bound) => TraceEngine::with_hurwitz_bound(bound),
        None => TraceEngine::for_hecke_bound(m_max),
    }
}

fn breakdown_record(b: &gl2trace::TraceBreakdown) -> serde_json::Value {
    json!({
        "k": b.k,
        "m": b.m,
        "identity": b.identity.to_string(),
        "elliptic": b.elliptic.to_string(),
        "hyperbolic": b.hyperbolic.to_string(),
        "total": b.total.to_string(),
    })
}

fn cmd_trace(mode: OutputMode, k: u64, m: u64) -> u8 {
    if require_even_weight(k).is_err() || require_hecke_index(m).is_err() {
        return 2;
    }
    let engine = engine_for(m);
    let b = match engine.trace_cusp(k, m) {
        Ok(b) => b,
        Err(e) => return usage_error(&e.to_string()),
    };
    match mode {
        OutputMode::Records => out!("{}", breakdown_record(&b)),
        OutputMode::Table => {
            out!(
                "{:>4} {:>4} {:>14} {:>14} {:>14} {:>14}",
                "k", "m", "identity", "elliptic", "hyperbolic", "total"
            );
            out!(
                "{:>4} {:>4} {:>14} {:>14} {:>14} {:>14}",
                b.k, b.m, b.identity, b.elliptic, b.hyperbolic, b.total
            );
        }
    }
    0
}

fn poly_string(poly: &[BigInt]) -> String {
    poly.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_oracle(mode: OutputMode, k: u64, m: u64, matrix: bool, charpoly: bool) -> u8 {
    if require_even_weight(k).is_err() || require_hecke_index(m).is_err() {
        return 2;
    }
    let space = match CuspSpace::new(k, m) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mat = match space.hecke_matrix(m) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut record = json!({
        "k": k,
        "m": m,
        "dim": space.dim(),
        "trace": mat.trace().to_string(),
    });
    if matrix {
        let rows: Vec<Vec<String>> = mat
            .rows()
            .iter()
            .map(|r| r.iter().map(Rational::to_string).collect())
            .collect();
        record["matrix"] = json!(rows);
    }
    if charpoly {
        match mat.charpoly() {
            Ok(p) => {
                record["charpoly"] =
                    json!(p.iter().map(BigInt::to_string).collect::<Vec<_>>());
            }
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    match mode {
        OutputMode::Records => out!("{record}"),
        OutputMode::Table => {
            out!("k={k} m={m} dim={} trace={}", space.dim(), mat.trace());
            if matrix {
                for row in mat.rows() {
                    let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
                    out!("[ {} ]", cells.join("  "));
                }
            }
            if charpoly {
                let p = mat.charpoly().expect("charpoly already validated");
                out!("charpoly (ascending): {}", poly_string(&p));
            }
        }
    }
    0
}

fn cmd_classnum(mode: OutputMode, n: u64, forms: bool) -> u8 {
    let h = classnum::hurwitz(n);
    let form_list: Vec<classnum::ReducedForm> = if forms && n >= 1 {
        classnum::reduced_forms(n)
    } else {
        Vec::new()
    };
    match mode {
        OutputMode::Records => {
            let mut record = json!({ "n": n, "hurwitz": h.to_string() });
            if forms {
                record["forms"] = json!(form_list
                    .iter()
                    .map(|f| vec![f.a, f.b, f.c])
                    .collect::<Vec<_>>());
            }
            out!("{record}");
        }
        OutputMode::Table => {
            out!("H({n}) = {h}");
            if forms {
                for f in &form_list {
                    out!("({}, {}, {})", f.a, f.b, f.c);
                }
            }
        }
    }
    0
}

fn parse_weights(s: &str) -> Result<Vec<i64>, u8> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage_error("weights must be a comma-separated integer list"))
}

fn cmd_orbital(mode: OutputMode, d: i64, gamma: &str, k: &str, w: i64) -> u8 {
    let weights = match parse_weights(k) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let kw = match WeightVector::new(weights.clone(), w) {
        Ok(kw) => kw,
        Err(e) => return usage_error(&e.to_string()),
    };
    let entries: Vec<&str> = gamma.split(',').map(str::trim).collect();
    if entries.len() != 4 {
        return usage_error("gamma must have exactly four comma-separated entries");
    }
    let value = if d == 1 {
        let parsed: Result<Vec<Rational>, _> =
            entries.iter().map(|e| parse_rational(e)).collect();
        let parsed = match parsed {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        let g = match GroupElement::new([
            [parsed[0].clone(), parsed[1].clone()],
            [parsed[2].clone(), parsed[3].clone()],
        ]) {
            Ok(g) => g,
            Err(e) => return usage_error(&e.to_string()),
        };
        match arch_orbital(&g, &kw) {
            Ok(v) => v.to_string(),
            Err(e) => return usage_error(&e.to_string()),
        }
    } else {
        let parsed: Result<Vec<QuadElem>, _> = entries
            .iter()
            .map(|e| QuadElem::parse_in_field(e, d))
            .collect();
        let parsed = match parsed {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        let g = match GroupElement::new([
            [parsed[0].clone(), parsed[1].clone()],
            [parsed[2].clone(), parsed[3].clone()],
        ]) {
            Ok(g) => g,
            Err(e) => return usage_error(&e.to_string()),
        };
        match arch_orbital(&g, &kw) {
            Ok(v) => v.to_string(),
            Err(e) => return usage_error(&e.to_string()),
        }
    };
    match mode {
        OutputMode::Records => out!(
            "{}",
            json!({
                "d": d,
                "gamma": gamma,
                "k": weights,
                "w": w,
                "value": value,
            })
        ),
        OutputMode::Table => out!("{value}"),
    }
    0
}

fn cmd_equivariance(mode: OutputMode, suite: Suite, opts: &SuiteOpts) -> u8 {
    match suite {
        Suite::RationalTraces => {
            if require_even_weight(opts.k_min).is_err() || require_even_weight(opts.k_max).is_err()
            {
                return 2;
            }
            let ks: Vec<u64> = (opts.k_min..=opts.k_max).filter(|k| k % 2 == 0).collect();
            let ms: Vec<u64> = (1..=opts.m_max).collect();
            let report = match galois::trace_identity_suite(&ks, &ms) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            for entry in &report.entries {
                match mode {
                    OutputMode::Records => {
                        let mut record = breakdown_record(&entry.breakdown);
                        record["conjugate_total"] = json!(entry.conjugate_total.to_string());
                        record["holds"] = json!(entry.holds);
                        out!("{record}");
                    }
                    OutputMode::Table => out!(
                        "k={} m={} total={} conjugate={} holds={}",
                        entry.k, entry.m, entry.breakdown.total, entry.conjugate_total, entry.holds
                    ),
                }
            }
            if report.all_hold() {
                out!("rational-traces: all {} identities hold", report.entries.len());
                0
            } else {
                out!("rational-traces: FAILED");
                1
            }
        }
        Suite::HilbertOrbital => {
            let ds: Vec<i64> = if opts.d == 0 {
                vec![2, 3, 5, 13]
            } else {
                vec![opts.d]
            };
            let pairs = [(4i64, 6i64), (4, 10), (6, 8)];
            let mut all = true;
            for &d in &ds {
                let report = match galois::hilbert_orbital_suite(
                    d,
                    &pairs,
                    opts.w,
                    opts.samples,
                    opts.vanishing,
                    opts.seed,
                ) {
                    Ok(r) => r,
                    Err(e) => return usage_error(&e.to_string()),
                };
                all &= report.all_pass();
                match mode {
                    OutputMode::Records => out!(
                        "{}",
                        json!({
                            "d": d,
                            "elliptic_samples": report.elliptic_samples,
                            "equivariant": report.equivariant,
                            "vanishing_samples": report.vanishing_samples,
                            "vanishing_zero": report.vanishing_zero,
                            "pass": report.all_pass(),
                        })
                    ),
                    OutputMode::Table => out!(
                        "d={d}: equivariant {}/{} checks, vanishing {}/{} -> {}",
                        report.equivariant,
                        report.elliptic_samples * pairs.len(),
                        report.vanishing_zero,
                        report.vanishing_samples,
                        if report.all_pass() { "pass" } else { "FAIL" }
                    ),
                }
            }
            if all {
                out!("hilbert-orbital: pass");
                0
            } else {
                out!("hilbert-orbital: FAILED");
                1
            }
        }
        Suite::Eigensystems => {
            let ks: Vec<u64> = if opts.k == 0 {
                vec![12, 16, 18, 20, 22, 24, 26]
            } else {
                vec![opts.k]
            };
            let mut all = true;
            for &k in &ks {
                let report = match galois::eigensystem_orbit_check(k) {
                    Ok(r) => r,
                    Err(e) => return usage_error(&e.to_string()),
                };
                all &= report.orbit_is_consistent();
                let kind = match &report.outcome {
                    galois::EigensystemOutcome::SingleRational { .. } => {
                        "single rational system".to_string()
                    }
                    galois::EigensystemOutcome::ConjugatePair { field_seed, .. } => {
                        format!("conjugate pair over Q(sqrt({field_seed}))")
                    }
                    galois::EigensystemOutcome::RationalPair { .. } => {
                        "two rational systems".to_string()
                    }
                };
                match mode {
                    OutputMode::Records => out!(
                        "{}",
                        json!({
                            "k": k,
                            "dim": report.dim,
                            "orbit": kind,
                            "consistent": report.orbit_is_consistent(),
                        })
                    ),
                    OutputMode::Table => out!(
                        "k={k} dim={} {} -> {}",
                        report.dim,
                        kind,
                        if report.orbit_is_consistent() {
                            "pass"
                        } else {
                            "FAIL"
                        }
                    ),
                }
            }
            if all {
                out!("eigensystems: pass");
                0
            } else {
                out!("eigensystems: FAILED");
                1
            }
        }
    }
}

fn cmd_verify(mode: OutputMode, k_min: u64, k_max: u64, m_max: u64) -> u8 {
    if require_even_weight(k_min).is_err()
        || require_even_weight(k_max).is_err()
        || require_hecke_index(m_max).is_err()
    {
        return 2;
    }
    if k_min > k_max {
        return usage_error("k-min must not exceed k-max");
    }
    let engine = engine_for(m_max);
    let mut pairs = 0usize;
    for k in (k_min..=k_max).filter(|k| k % 2 == 0) {
        let space = match CuspSpace::new(k, m_max) {
            Ok(s) => s,
            Err(e) => return usage_error(&e.to_string()),
        };
        for m in 1..=m_max {
            let b = match engine.trace_cusp(k, m) {
                Ok(b) => b,
                Err(e) => return usage_error(&e.to_string()),
            };
            let spectral = match space.trace(m) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            if b.total != spectral {
                out!(
                    "MISMATCH at k={k} m={m}: engine={} oracle={spectral}",
                    b.total
                );
                return 1;
            }
            pairs += 1;
            if mode == OutputMode::Records {
                let mut record = breakdown_record(&b);
                record["oracle"] = json!(spectral.to_string());
                out!("{record}");
            }
        }
        if mode == OutputMode::Table {
            out!("k={k}: m=1..{m_max} all match");
        }
    }
    out!("verified {pairs} (k, m) pairs: engine total = oracle trace exactly");
    0
}
