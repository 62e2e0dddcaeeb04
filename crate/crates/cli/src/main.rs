//! `deltalp` — certified construction and verification of Jensen, Appell,
//! and delta-Appell polynomials from the command line.
//!
//! Every scalar is printed as a ball `v +/- r` with the radius rounded up,
//! so a printed value re-parses to within its own radius. Suite reports are
//! JSON with a fixed key order; under a fixed `--seed` identical invocations
//! produce byte-identical output.
//!
//! Exit codes: 0 success, 1 verification failure (a suite reported failed
//! cases, or a runtime computation failed), 2 usage error, 3 precision
//! ceiling exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::float::Round;
use rug::{Integer, Rational};
use serde_json::json;

use deltalp::curves::{check_interlacing, check_limits, geometric_grid, trace_root_curves};
use deltalp::harness::{
    suite_delta_difference, suite_gaussian, suite_laguerre_delta, suite_lp_embedding,
    suite_ono_grid, suite_zero_separation, LpFunction, SuiteReport,
};
use deltalp::jensen::{delta_appell_poly, jensen_poly, laguerre_poly, SampleWindow, SequenceWindow};
use deltalp::specfun::{
    bessel_clifford, fractional_partitions, gamma_and_reciprocal, partition_numbers, r_alpha,
};
use deltalp::{
    certify_hyperbolic, refine_root, BigReal, Ctx, Error, HyperbolicityReport, IntervalPolynomial,
    RootDomain, Verdict,
};

const USAGE_ERROR: u8 = 2;
const PRECISION_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "deltalp",
    version,
    about = "Certified Jensen / Appell / delta-Appell polynomial toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,

    /// Working precision in bits (DELTALP_BITS overrides the default).
    #[arg(long, global = true, env = "DELTALP_BITS", default_value_t = 128)]
    bits: u32,

    /// Ceiling for adaptive precision escalation, in bits.
    #[arg(long, global = true, default_value_t = 1024)]
    max_bits: u32,

    /// Output format. Defaults: json for verify, csv for trace, plain otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed shared by all randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker cap. Accepted for interface stability; orchestration is
    /// single-threaded, so any positive value behaves identically.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    /// Partition numbers p(n) (exact pentagonal recurrence).
    Partition,
    /// Fractional partition numbers p_alpha(n) (exact rationals).
    FracPartition,
    /// First Hardy-Ramanujan-Rademacher term R_alpha(n).
    RAlpha,
    /// Reciprocal gamma samples 1/Gamma(nu + 1 + k).
    RecipGamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum LpKind {
    /// Bessel-Clifford C_nu (requires --nu).
    BesselClifford,
    /// Gaussian e^{-beta t^2} (requires --beta).
    Gaussian,
    /// Reciprocal gamma 1/Gamma(t).
    RecipGamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainKind {
    AllReal,
    AllPositive,
    AllNegative,
}

impl DomainKind {
    fn to_domain(self) -> RootDomain {
        match self {
            DomainKind::AllReal => RootDomain::AllReal,
            DomainKind::AllPositive => RootDomain::AllPositive,
            DomainKind::AllNegative => RootDomain::AllNegative,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a special function or an exact coefficient table.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Construct the Jensen polynomial J_d^{a,n}(x) of a built-in sequence.
    Jensen(JensenArgs),
    /// Construct the delta-Appell polynomial A_d^{f,delta}(t0; x).
    DeltaAppell(DeltaAppellArgs),
    /// Certify hyperbolicity of an explicitly given polynomial.
    Certify(CertifyArgs),
    /// Trace delta-Appell root curves t = tau_{d,k}(x) for a scaled Laguerre
    /// source polynomial; emits one CSV row per sample.
    Trace(TraceArgs),
    /// Run a verification suite and emit its report.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Subcommand)]
enum EvalTarget {
    /// Bessel-Clifford function C_nu(t).
    BesselClifford {
        /// Order nu.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Argument t.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// First Hardy-Ramanujan-Rademacher term R_alpha(n).
    RAlpha {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: u32,
    },
    /// Gamma(x) together with the entire reciprocal 1/Gamma(x).
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Exact partition numbers p(0), ..., p(n-max).
    Partition {
        #[arg(long)]
        n_max: usize,
    },
    /// Exact fractional partition numbers p_alpha(0), ..., p_alpha(n-max).
    FracPartition {
        /// alpha as an exact rational ("1/2", "149/100", or a decimal).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Args)]
struct JensenArgs {
    /// Coefficient sequence.
    #[arg(long, value_enum)]
    seq: SeqKind,
    /// Window start n: the polynomial uses a_n, ..., a_{n+d}.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    n: i64,
    /// Degree d.
    #[arg(long)]
    d: usize,
    /// alpha for the frac-partition / r-alpha sequences.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// nu for the recip-gamma sequence a_k = 1/Gamma(nu + 1 + k).
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Also certify hyperbolicity and print roots.
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct DeltaAppellArgs {
    /// Source function f.
    #[arg(long, value_enum)]
    f: LpKind,
    /// nu for f = bessel-clifford.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// beta for f = gaussian.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Base point t0.
    #[arg(long, allow_hyphen_values = true)]
    t0: String,
    /// Step delta > 0; symbolic constants like pi2/6 are accepted.
    #[arg(long)]
    delta: String,
    /// Degree d.
    #[arg(long)]
    d: usize,
    /// Also certify that all d roots are real (via the positive-root form
    /// in y = e^{delta x}) and print the x-roots.
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct CertifyArgs {
    /// Comma-separated coefficients, constant term first. Exact rationals
    /// ("3/4"), decimals, and symbolic constants (pi, pi2/6) are accepted.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    coeffs: Vec<String>,
    /// Where the roots are required to live.
    #[arg(long, value_enum, default_value_t = DomainKind::AllReal)]
    domain: DomainKind,
    /// Additionally require certified pairwise root gaps >= delta.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct TraceArgs {
    /// Degree D of the Laguerre source: f(t) = L_D^nu(-t/scale).
    #[arg(long)]
    laguerre_d: usize,
    /// Laguerre order nu.
    #[arg(long, allow_hyphen_values = true)]
    laguerre_nu: String,
    /// Appell step delta; symbolic constants like pi2/6 are accepted.
    #[arg(long)]
    delta: String,
    /// Largest Appell degree: families d = 0, ..., appell-d are traced.
    #[arg(long)]
    appell_d: usize,
    /// Root scale (f roots = scale * roots of L_D^nu(-x)). Defaults to D.
    #[arg(long)]
    scale: Option<u32>,
    /// Innermost |x| of the grid, in units of 1/delta.
    #[arg(long, default_value_t = 0.05)]
    grid_near: f64,
    /// Outermost |x| of the grid, in units of 1/delta.
    #[arg(long, default_value_t = 10.0)]
    grid_far: f64,
    /// Grid points per sign of x.
    #[arg(long, default_value_t = 9)]
    per_side: usize,
    /// Check interlacing between consecutive families and the branch limits;
    /// summaries go to standard error, certain violations exit 1.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Random delta-hyperbolic f: certify g(t) = (e^{delta d/dt} - 1) f and
    /// the root-localization intervals, plus deterministic exact-gap cases.
    DeltaDifference {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        max_deg: usize,
        #[arg(long, default_value = "1/2")]
        delta: String,
    },
    /// Hyperbolicity of J_d^{R_alpha,n} over the (n, d) grid, with the
    /// closed-form delta-Appell cross-check for alpha <= 3/2.
    Ono {
        /// alpha values (repeatable), exact rationals or decimals.
        #[arg(long = "alpha", required = true)]
        alphas: Vec<String>,
        #[arg(long, default_value_t = 50)]
        n_max: u32,
        #[arg(long, default_value_t = 12)]
        d_max: usize,
    },
    /// Jensen polynomials J_d^{a,0} of equally spaced samples of an LP
    /// function are hyperbolic.
    LpEmbed {
        #[arg(long, value_enum)]
        f: LpKind,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        t0: String,
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
    },
    /// Gaussian g_d: certified 2*beta root separation and the defining
    /// difference recursion.
    Gaussian {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 15)]
        d_max: usize,
    },
    /// delta-generalized Laguerre windows: hyperbolicity for delta in (0,1]
    /// plus the classical identity at delta = 1.
    Laguerre {
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        nu: String,
        /// delta values in (0, 1] (repeatable; exact rationals).
        #[arg(long = "delta", default_values_t = ["1/4", "1/2", "3/4", "1"].map(String::from))]
        deltas: Vec<String>,
        #[arg(long, default_value_t = 10)]
        d_max: usize,
    },
    /// Bessel-Clifford zero separation r_{k+1} - r_k > pi^2/4, with the
    /// closed form k^2 pi^2 / 4 at nu = 1/2.
    Zeros {
        /// nu values (repeatable; rationals > -1).
        #[arg(long = "nu", default_values_t = ["1/2", "3/2", "5/2"].map(String::from), allow_hyphen_values = true)]
        nus: Vec<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

enum Failure {
    Usage(String),
    Runtime(Error),
    Io(std::io::Error),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Failure {
    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Runtime(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE_ERROR,
            // Out-of-domain parameters are usage mistakes, not computation
            // failures; the precision ceiling has its own contract code.
            Failure::Runtime(Error::Domain(_)) => USAGE_ERROR,
            Failure::Runtime(Error::PrecisionExhausted(_)) => PRECISION_ERROR,
            Failure::Runtime(_) => 1,
            Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return ExitCode::from(if is_help { 0 } else { USAGE_ERROR });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            if f.exit_code() == USAGE_ERROR {
                eprintln!("run `deltalp --help` or `deltalp <command> --help` for usage");
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if cli.bits < 64 || cli.bits > cli.max_bits {
        return Err(usage(format!(
            "precision must satisfy 64 <= --bits <= --max-bits (got bits={}, max-bits={})",
            cli.bits, cli.max_bits
        )));
    }
    if cli.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let ctx = Ctx {
        bits: cli.bits,
        max_bits: cli.max_bits,
    };
    let (text, code) = match &cli.cmd {
        Command::Eval { target } => cmd_eval(target, &ctx, cli.pick_format(Format::Plain))?,
        Command::Jensen(args) => cmd_jensen(args, &ctx, cli.pick_format(Format::Plain))?,
        Command::DeltaAppell(args) => cmd_delta_appell(args, &ctx, cli.pick_format(Format::Plain))?,
        Command::Certify(args) => cmd_certify(args, &ctx, cli.pick_format(Format::Plain))?,
        Command::Trace(args) => cmd_trace(args, &ctx, cli.pick_format(Format::Csv))?,
        Command::Verify { suite } => cmd_verify(suite, cli.seed, &ctx, cli.pick_format(Format::Json))?,
    };
    write_output(cli.out.as_deref(), &text)?;
    Ok(code)
}

impl Cli {
    fn pick_format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(Failure::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

/// Parse a real literal: exact rationals ("3/4"), decimals, or the symbolic
/// constants `pi` and `pi2` optionally divided by an integer ("pi2/6").
fn parse_real(s: &str, prec: u32) -> Result<BigReal, Failure> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r.trim_start()),
        None => (false, t),
    };
    let symbolic = |base: BigReal, rest: &str| -> Result<BigReal, Failure> {
        if rest.is_empty() {
            Ok(base)
        } else if let Some(den) = rest.strip_prefix('/') {
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad denominator in constant {t:?}")))?;
            if d == 0 {
                return Err(usage(format!("zero denominator in constant {t:?}")));
            }
            Ok(base.div(&BigReal::from_i64(d, prec + 8))?)
        } else {
            Err(usage(format!("unrecognized constant {t:?}")))
        }
    };
    let v = if let Some(rest) = body.strip_prefix("pi2") {
        let pi = BigReal::pi(prec + 8);
        symbolic(pi.mul(&pi), rest)?.to_prec(prec)
    } else if let Some(rest) = body.strip_prefix("pi") {
        symbolic(BigReal::pi(prec + 8), rest)?.to_prec(prec)
    } else {
        BigReal::parse(body, prec).map_err(|_| usage(format!("cannot parse number {s:?}")))?
    };
    Ok(if neg { v.neg() } else { v })
}

/// Parse an exact rational: "p/q", an integer, or a finite decimal.
fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let t = s.trim();
    if let Ok(v) = t.parse::<Rational>() {
        return Ok(v);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let all_digits =
        |p: &str| -> bool { p.chars().all(|c| c.is_ascii_digit()) };
    if (int_part.is_empty() && frac_part.is_empty())
        || !all_digits(int_part)
        || !all_digits(frac_part)
    {
        return Err(usage(format!("cannot parse rational {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: Integer = digits
        .parse()
        .map_err(|_| usage(format!("cannot parse rational {s:?}")))?;
    let denom = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
    let mut q = Rational::from((numer, denom));
    if neg {
        q = -q;
    }
    Ok(q)
}

fn lp_from(
    kind: LpKind,
    nu: Option<&str>,
    beta: Option<&str>,
    prec: u32,
) -> Result<(LpFunction, String), Failure> {
    match kind {
        LpKind::BesselClifford => {
            let s = nu.ok_or_else(|| usage("--nu is required for f = bessel-clifford"))?;
            Ok((
                LpFunction::BesselClifford(parse_real(s, prec)?),
                format!("bessel-clifford(nu={s})"),
            ))
        }
        LpKind::Gaussian => {
            let s = beta.ok_or_else(|| usage("--beta is required for f = gaussian"))?;
            Ok((
                LpFunction::Gaussian(parse_real(s, prec)?),
                format!("gaussian(beta={s})"),
            ))
        }
        LpKind::RecipGamma => Ok((LpFunction::ReciprocalGamma, "recip-gamma".to_string())),
    }
}

// ---------------------------------------------------------------------------
// Rendering helpers

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn radius_str(b: &BigReal) -> String {
    if b.radius().is_zero() {
        "0".to_string()
    } else {
        b.radius().to_string_radix_round(10, Some(3), Round::Up)
    }
}

fn verdict_str(v: &Verdict) -> &'static str {
    match v {
        Verdict::Hyperbolic => "Hyperbolic",
        Verdict::NotHyperbolic => "NotHyperbolic",
        Verdict::Undetermined => "Undetermined",
    }
}

fn certification_json(rep: &HyperbolicityReport) -> serde_json::Value {
    json!({
        "verdict": verdict_str(&rep.verdict),
        "degree": rep.degree,
        "certified_real_roots": rep.certified_real_roots,
        "roots": rep.roots.iter().map(|r| json!({
            "enclosure": r.enclosure.to_decimal_string(),
            "multiplicity": r.multiplicity,
        })).collect::<Vec<_>>(),
        "min_gap": rep.min_gap.as_ref().map(|g| g.to_decimal_string()),
        "precision_used": rep.precision_used,
    })
}

fn certification_plain(rep: &HyperbolicityReport) -> String {
    let mut s = format!(
        "certification: {}  (degree {}, certified real roots {}, precision used {} bits)\n",
        verdict_str(&rep.verdict),
        rep.degree,
        rep.certified_real_roots,
        rep.precision_used
    );
    for (i, r) in rep.roots.iter().enumerate() {
        s.push_str(&format!(
            "  root {:>2}: {}  (multiplicity {})\n",
            i + 1,
            r.enclosure.to_decimal_string(),
            r.multiplicity
        ));
    }
    if let Some(g) = &rep.min_gap {
        s.push_str(&format!("  min gap: {}\n", g.to_decimal_string()));
    }
    s
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON rendering is infallible");
    s.push('\n');
    s
}

/// Render a list of labelled scalar results.
fn render_scalars(
    fmt: Format,
    command: &str,
    bits: u32,
    inputs: &[(&str, String)],
    results: &[(&str, String)],
) -> String {
    match fmt {
        Format::Plain => {
            let mut s = String::new();
            for (k, v) in results {
                s.push_str(&format!("{k} = {v}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            for (k, v) in results {
                s.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
            }
            s
        }
        Format::Json => {
            let inp: serde_json::Map<String, serde_json::Value> = inputs
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            let res: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            json_text(&json!({
                "command": command,
                "bits": bits,
                "inputs": inp,
                "results": res,
            }))
        }
    }
}

/// Render a two-column exact table (index, value).
fn render_table(fmt: Format, command: &str, col: &str, rows: &[String]) -> String {
    match fmt {
        Format::Plain => {
            let mut s = String::new();
            for (n, v) in rows.iter().enumerate() {
                s.push_str(&format!("{col}({n}) = {v}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = format!("n,{col}\n");
            for (n, v) in rows.iter().enumerate() {
                s.push_str(&format!("{},{}\n", n, csv_field(v)));
            }
            s
        }
        Format::Json => json_text(&json!({
            "command": command,
            "column": col,
            "values": rows,
        })),
    }
}

fn render_suite(report: &SuiteReport, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("key,verdict,detail\n");
            for c in &report.cases {
                s.push_str(&format!(
                    "{},{},{}\n",
                    csv_field(&c.key),
                    c.verdict,
                    csv_field(&c.detail)
                ));
            }
            s
        }
        Format::Plain => {
            let mut s = format!("suite: {}\n", report.suite_id);
            for (k, v) in &report.config {
                s.push_str(&format!("  {k} = {v}\n"));
            }
            for c in &report.cases {
                s.push_str(&format!("{:<12} {}  {}\n", c.verdict.to_string(), c.key, c.detail));
            }
            let sm = &report.summary;
            s.push_str(&format!(
                "summary: run={} passed={} undetermined={} failed={}\n",
                sm.run, sm.passed, sm.undetermined, sm.failed
            ));
            s
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommand handlers

fn cmd_eval(target: &EvalTarget, ctx: &Ctx, fmt: Format) -> Result<(String, u8), Failure> {
    let bits = ctx.bits;
    let text = match target {
        EvalTarget::BesselClifford { nu, t } => {
            let nu_v = parse_real(nu, bits)?;
            let t_v = parse_real(t, bits)?;
            let v = bessel_clifford(&nu_v, &t_v, bits)?;
            render_scalars(
                fmt,
                "eval bessel-clifford",
                bits,
                &[("nu", nu_v.to_decimal_string()), ("t", t_v.to_decimal_string())],
                &[("C_nu(t)", v.to_decimal_string())],
            )
        }
        EvalTarget::RAlpha { alpha, n } => {
            let a = parse_real(alpha, bits)?;
            let v = r_alpha(&a, *n, bits)?;
            render_scalars(
                fmt,
                "eval r-alpha",
                bits,
                &[("alpha", a.to_decimal_string()), ("n", n.to_string())],
                &[("R_alpha(n)", v.to_decimal_string())],
            )
        }
        EvalTarget::Gamma { x } => {
            let x_v = parse_real(x, bits)?;
            let gv = gamma_and_reciprocal(&x_v, bits)?;
            let gamma_text = match &gv.gamma {
                Some(g) => g.to_decimal_string(),
                None => "pole (x encloses a nonpositive integer)".to_string(),
            };
            render_scalars(
                fmt,
                "eval gamma",
                bits,
                &[("x", x_v.to_decimal_string())],
                &[
                    ("Gamma(x)", gamma_text),
                    ("1/Gamma(x)", gv.reciprocal.to_decimal_string()),
                ],
            )
        }
        EvalTarget::Partition { n_max } => {
            let rows: Vec<String> = partition_numbers(*n_max)
                .iter()
                .map(|p| p.to_string())
                .collect();
            render_table(fmt, "eval partition", "p", &rows)
        }
        EvalTarget::FracPartition { alpha, n_max } => {
            let a = parse_rational(alpha)?;
            let rows: Vec<String> = fractional_partitions(&a, *n_max)
                .iter()
                .map(|p| p.to_string())
                .collect();
            render_table(fmt, "eval frac-partition", "p_alpha", &rows)
        }
    };
    Ok((text, 0))
}

fn cmd_jensen(args: &JensenArgs, ctx: &Ctx, fmt: Format) -> Result<(String, u8), Failure> {
    let bits = ctx.bits;
    let d = args.d;
    let need_alpha = || -> Result<&str, Failure> {
        args.alpha
            .as_deref()
            .ok_or_else(|| usage("--alpha is required for this sequence"))
    };
    let (values, label): (Vec<BigReal>, String) = match args.seq {
        SeqKind::Partition => {
            let n = usize::try_from(args.n)
                .map_err(|_| usage("the partition sequence needs n >= 0"))?;
            let table = partition_numbers(n + d);
            let vals = table[n..=n + d]
                .iter()
                .map(|p| BigReal::from_integer(p, bits))
                .collect();
            (vals, format!("J_{d}^{{p,{n}}}"))
        }
        SeqKind::FracPartition => {
            let a = parse_rational(need_alpha()?)?;
            let n = usize::try_from(args.n)
                .map_err(|_| usage("the frac-partition sequence needs n >= 0"))?;
            let table = fractional_partitions(&a, n + d);
            let vals = table[n..=n + d]
                .iter()
                .map(|p| BigReal::from_rational(p, bits))
                .collect();
            (vals, format!("J_{d}^{{p_{a},{n}}}"))
        }
        SeqKind::RAlpha => {
            let a = parse_real(need_alpha()?, bits)?;
            if args.n < 1 {
                return Err(usage("the r-alpha sequence needs n >= 1"));
            }
            let mut vals = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let idx = u32::try_from(args.n + k as i64)
                    .map_err(|_| usage("window index out of range"))?;
                vals.push(r_alpha(&a, idx, bits)?);
            }
            (vals, format!("J_{d}^{{R_alpha,{}}}", args.n))
        }
        SeqKind::RecipGamma => {
            let nu = parse_real(
                args.nu
                    .as_deref()
                    .ok_or_else(|| usage("--nu is required for seq = recip-gamma"))?,
                bits,
            )?;
            let mut vals = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let arg = nu.add(&BigReal::from_i64(args.n + k as i64 + 1, bits));
                vals.push(gamma_and_reciprocal(&arg, bits)?.reciprocal);
            }
            (vals, format!("J_{d}^{{1/Gamma,nu+1+{}}}", args.n))
        }
    };
    let window = SequenceWindow::new(args.n, values);
    let poly = jensen_poly(&window);
    let certification = if args.certify {
        Some(certify_hyperbolic(&poly, RootDomain::AllReal, None, ctx)?)
    } else {
        None
    };
    let coeff_strings: Vec<String> = poly.coeffs().iter().map(|c| c.to_decimal_string()).collect();
    let text = match fmt {
        Format::Plain => {
            let mut s = format!("{label}(x), coefficients low to high  [{bits} bits]\n");
            for (k, c) in coeff_strings.iter().enumerate() {
                s.push_str(&format!("  x^{k}: {c}\n"));
            }
            if let Some(rep) = &certification {
                s.push_str(&certification_plain(rep));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("k,center,radius\n");
            for (k, c) in poly.coeffs().iter().enumerate() {
                s.push_str(&format!("{},{},{}\n", k, c.center(), radius_str(c)));
            }
            s
        }
        Format::Json => json_text(&json!({
            "command": "jensen",
            "label": label,
            "bits": bits,
            "n": args.n,
            "d": d,
            "coefficients": coeff_strings,
            "certification": certification.as_ref().map(certification_json),
        })),
    };
    Ok((text, 0))
}

fn cmd_delta_appell(
    args: &DeltaAppellArgs,
    ctx: &Ctx,
    fmt: Format,
) -> Result<(String, u8), Failure> {
    let bits = ctx.bits;
    let (f, flabel) = lp_from(args.f, args.nu.as_deref(), args.beta.as_deref(), bits)?;
    let t0 = parse_real(&args.t0, bits)?;
    let delta = parse_real(&args.delta, bits)?;
    let mut samples = Vec::with_capacity(args.d + 1);
    for k in 0..=args.d {
        let t = t0.add(&delta.mul_i64(k as i64));
        samples.push(f.eval(&t, bits)?);
    }
    let window = SampleWindow::new(t0.clone(), delta.clone(), samples)?;
    let poly = delta_appell_poly(&window)?;
    let coeff_strings: Vec<String> =
        poly.coeffs().iter().map(|c| c.to_decimal_string()).collect();

    let mut certification = None;
    let mut x_roots: Vec<String> = Vec::new();
    if args.certify {
        let y_poly = poly.as_y_polynomial();
        let rep = certify_hyperbolic(&y_poly, RootDomain::AllPositive, None, ctx)?;
        if matches!(rep.verdict, Verdict::Hyperbolic) {
            for r in &rep.roots {
                // Tighten the y enclosure relative to its size so the log
                // does not inflate the printed radius.
                let mut target = r.enclosure.center().clone().abs();
                target >>= (3 * bits) / 4;
                let refined = refine_root(&y_poly, &r.enclosure, &target);
                match poly.x_from_y(&refined) {
                    Ok(x) => x_roots.push(x.to_decimal_string()),
                    Err(_) => x_roots.push(format!("y = {}", refined.to_decimal_string())),
                }
            }
        }
        certification = Some(rep);
    }

    let text = match fmt {
        Format::Plain => {
            let mut s = format!(
                "A_{}^{{f,delta}}(t0; x) = sum_k c_k y^k,  y = exp(delta*x)  [{} bits]\n",
                args.d, bits
            );
            s.push_str(&format!("  f = {flabel}\n"));
            s.push_str(&format!("  t0 = {}\n", t0.to_decimal_string()));
            s.push_str(&format!("  delta = {}\n", delta.to_decimal_string()));
            for (k, c) in coeff_strings.iter().enumerate() {
                s.push_str(&format!("  y^{k}: {c}\n"));
            }
            if let Some(rep) = &certification {
                s.push_str("in y = exp(delta*x):\n");
                s.push_str(&certification_plain(rep));
                if !x_roots.is_empty() {
                    s.push_str("x-roots:\n");
                    for (i, x) in x_roots.iter().enumerate() {
                        s.push_str(&format!("  x {:>2}: {x}\n", i + 1));
                    }
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("k,center,radius\n");
            for (k, c) in poly.coeffs().iter().enumerate() {
                s.push_str(&format!("{},{},{}\n", k, c.center(), radius_str(c)));
            }
            s
        }
        Format::Json => json_text(&json!({
            "command": "delta-appell",
            "bits": bits,
            "f": flabel,
            "t0": t0.to_decimal_string(),
            "delta": delta.to_decimal_string(),
            "d": args.d,
            "form": "sum_k c_k y^k with y = exp(delta*x)",
            "coefficients": coeff_strings,
            "certification": certification.as_ref().map(certification_json),
            "x_roots": x_roots,
        })),
    };
    Ok((text, 0))
}

fn cmd_certify(args: &CertifyArgs, ctx: &Ctx, fmt: Format) -> Result<(String, u8), Failure> {
    let bits = ctx.bits;
    let coeffs: Vec<BigReal> = args
        .coeffs
        .iter()
        .map(|s| parse_real(s, bits))
        .collect::<Result<_, _>>()?;
    let poly = IntervalPolynomial::new(coeffs);
    let delta = match &args.delta {
        Some(s) => {
            let d = parse_real(s, bits)?;
            if !d.certainly_positive() {
                return Err(usage("--delta must be positive"));
            }
            Some(d)
        }
        None => None,
    };
    let rep = certify_hyperbolic(&poly, args.domain.to_domain(), delta.as_ref(), ctx)?;
    let text = match fmt {
        Format::Plain => certification_plain(&rep),
        Format::Csv => {
            let mut s = String::from("root,enclosure,multiplicity\n");
            for (i, r) in rep.roots.iter().enumerate() {
                s.push_str(&format!(
                    "{},{},{}\n",
                    i + 1,
                    csv_field(&r.enclosure.to_decimal_string()),
                    r.multiplicity
                ));
            }
            s.push_str(&format!("verdict,{},\n", verdict_str(&rep.verdict)));
            s
        }
        Format::Json => json_text(&json!({
            "command": "certify",
            "bits": bits,
            "certification": certification_json(&rep),
        })),
    };
    Ok((text, 0))
}

fn cmd_trace(args: &TraceArgs, ctx: &Ctx, fmt: Format) -> Result<(String, u8), Failure> {
    let prec = ctx.bits;
    if args.laguerre_d == 0 {
        return Err(usage("--laguerre-d must be at least 1"));
    }
    if !(args.grid_near > 0.0 && args.grid_far > args.grid_near) {
        return Err(usage("the grid needs 0 < --grid-near < --grid-far"));
    }
    if args.per_side < 2 {
        return Err(usage("--per-side must be at least 2"));
    }
    let nu = parse_real(&args.laguerre_nu, prec)?;
    let delta = parse_real(&args.delta, prec)?;
    if !delta.certainly_positive() {
        return Err(usage("--delta must be positive"));
    }
    let lag = laguerre_poly(args.laguerre_d, &nu, prec)?;
    let rep = certify_hyperbolic(&lag, RootDomain::AllNegative, None, ctx)?;
    if !matches!(rep.verdict, Verdict::Hyperbolic) {
        return Err(Failure::Runtime(Error::Domain(
            "the Laguerre source polynomial did not certify hyperbolic".into(),
        )));
    }
    let scale = i64::from(args.scale.unwrap_or(args.laguerre_d as u32));
    if scale == 0 {
        return Err(usage("--scale must be positive"));
    }
    // The tracer demands certified pairwise gaps >= delta, so tighten the
    // certifier's enclosures well beyond that before scaling.
    let mut target = delta.lower_bound();
    target >>= 48;
    let mut roots: Vec<BigReal> = rep
        .roots
        .iter()
        .map(|r| refine_root(&lag, &r.enclosure, &target).mul_i64(scale))
        .collect();
    roots.reverse(); // ascending -> descending
    let grid = geometric_grid(&delta, args.grid_near, args.grid_far, args.per_side, prec);
    let mut families = Vec::with_capacity(args.appell_d + 1);
    for d in 0..=args.appell_d {
        families.push(trace_root_curves(&roots, &delta, d, &grid, ctx)?);
    }

    let digits = 12;
    let text = match fmt {
        Format::Csv | Format::Plain => {
            let mut s = String::from("x,branch_k,t,d\n");
            for fam in &families {
                for line in fam.csv(digits).lines().skip(1) {
                    s.push_str(line);
                    s.push('\n');
                }
            }
            s
        }
        Format::Json => {
            let mut rows = Vec::new();
            for fam in &families {
                for b in &fam.branches {
                    for (x, t) in &b.samples {
                        rows.push(json!({
                            "x": x.center().to_string_radix(10, Some(digits)),
                            "branch_k": b.k,
                            "t": t.center().to_string_radix(10, Some(digits)),
                            "d": fam.d,
                        }));
                    }
                }
            }
            json_text(&json!({
                "command": "trace",
                "bits": prec,
                "delta": delta.to_decimal_string(),
                "source_roots": roots.iter().map(|r| r.to_decimal_string()).collect::<Vec<_>>(),
                "rows": rows,
            }))
        }
    };

    let mut code = 0u8;
    if args.check {
        let tol = BigReal::from_f64(1e-3, prec);
        let mut certain = 0usize;
        let mut undecided = 0usize;
        let mut checks = 0usize;
        for d in 1..=args.appell_d {
            let r = check_interlacing(&families[d], &families[d - 1])?;
            checks += r.checks;
            for v in &r.violations {
                if v.certain {
                    certain += 1;
                } else {
                    undecided += 1;
                }
            }
        }
        let mut limit_total = 0usize;
        let mut limit_bad = 0usize;
        for fam in &families {
            let lr = check_limits(fam, &tol);
            limit_total += lr.finite.len() + lr.escapes.len();
            limit_bad += lr.finite.iter().filter(|c| !c.ok).count()
                + lr.escapes.iter().filter(|c| !c.ok).count();
        }
        eprintln!(
            "interlacing: {checks} checks, {certain} certain violations, {undecided} undecided"
        );
        eprintln!("limits: {limit_total} checks, {limit_bad} out of tolerance");
        if certain > 0 || limit_bad > 0 {
            code = 1;
        }
    }
    Ok((text, code))
}

fn cmd_verify(
    suite: &VerifySuite,
    seed: u64,
    ctx: &Ctx,
    fmt: Format,
) -> Result<(String, u8), Failure> {
    let bits = ctx.bits;
    let report = match suite {
        VerifySuite::DeltaDifference {
            trials,
            max_deg,
            delta,
        } => {
            let d = parse_real(delta, bits)?;
            if !d.certainly_positive() {
                return Err(usage("--delta must be positive"));
            }
            suite_delta_difference(*trials, *max_deg, &d, seed, ctx)
        }
        VerifySuite::Ono {
            alphas,
            n_max,
            d_max,
        } => {
            let a: Vec<Rational> = alphas
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?;
            suite_ono_grid(&a, *n_max, *d_max, ctx)?
        }
        VerifySuite::LpEmbed {
            f,
            nu,
            beta,
            t0,
            delta,
            d_max,
        } => {
            let (lf, _) = lp_from(*f, nu.as_deref(), beta.as_deref(), bits)?;
            let t0_v = parse_real(t0, bits)?;
            let delta_v = parse_real(delta, bits)?;
            suite_lp_embedding(&lf, &t0_v, &delta_v, *d_max, ctx)?
        }
        VerifySuite::Gaussian { beta, d_max } => {
            let b = parse_real(beta, bits)?;
            suite_gaussian(&b, *d_max, seed, ctx)?
        }
        VerifySuite::Laguerre { nu, deltas, d_max } => {
            let nu_v = parse_real(nu, bits)?;
            let ds: Vec<Rational> = deltas
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?;
            suite_laguerre_delta(&nu_v, &ds, *d_max, ctx)?
        }
        VerifySuite::Zeros { nus, count } => {
            let ns: Vec<Rational> = nus
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?;
            suite_zero_separation(&ns, *count, ctx)?
        }
    };
    let code = if report.summary.failed > 0 { 1 } else { 0 };
    Ok((render_suite(&report, fmt), code))
}
