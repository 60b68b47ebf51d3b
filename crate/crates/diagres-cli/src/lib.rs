//! Command-line surface for `diagres`.
//!
//! Every command prints JSON (default) or a plain-text table. Exit codes:
//! 0 success, 1 verification failure or internal error, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diagres::classifier::{pd_verdict, validate_char, PdVerdict};
use diagres::finitepd::finite_resolution;
use diagres::frobenius::{
    f_injective, mult_order, tail_compare, tail_period, twovar_equiv, twovar_f, twovar_matrices, twovar_p_resolution,
    twovar_r_resolution, twovar_socle_degrees,
};
use diagres::oracle::{colon_ideal, frobenius_gens, ideals_equal, socle, GradedRing};
use diagres::par::{self, Mode};
use diagres::pfaffian::Matrix;
use diagres::polyring::{Polynomial, Ring};
use diagres::resolver::{
    colon_generators, gorenstein_resolution, p_resolution, r_resolution, socle_degrees, GradedResolution,
};
use diagres::suites::{self, SUITES};
use diagres::Error;

#[derive(Parser, Debug)]
#[command(name = "diagres", version, about = "Resolutions of x^N, y^N, z^N over the diagonal hypersurface")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite/Infinite verdict for pd_R Q; --n and --N accept ranges `a..=b`.
    Classify(RangeArgs),
    /// Explicit resolutions, verified to be complexes up to the cutoff.
    Resolve(Point),
    /// Colon ideal (x^N, y^N, z^N) : (x^n + y^n + z^n).
    Colon(Point),
    /// Socle degrees of Q.
    Socle(Point),
    /// Frobenius period of the tail class of Q_{p^t N}.
    Frobenius(FrobArgs),
    /// The two-variable analogue over k[x,y]/(x^n + y^n).
    Twovar(FrobArgs),
    /// Runs a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct RangeArgs {
    /// Field characteristic: 0 or a prime.
    #[arg(long = "char", value_name = "C")]
    c: u64,
    #[arg(long, value_parser = parse_range)]
    n: (u32, u32),
    #[arg(long = "N", value_name = "N", value_parser = parse_range)]
    big_n: (u32, u32),
}

#[derive(Args, Debug)]
struct Point {
    /// Field characteristic: 0 or a prime.
    #[arg(long = "char", value_name = "C")]
    c: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long = "N", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    big_n: u32,
    /// Degree cutoff for oracle computations (default 3N+3).
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Args, Debug)]
struct FrobArgs {
    /// Field characteristic.
    #[arg(long = "char", value_name = "C")]
    c: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long = "N", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    big_n: u32,
    /// A second N to compare against.
    #[arg(long = "N2", value_name = "N2", value_parser = clap::value_parser!(u32).range(1..))]
    big_n2: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Replaces the suite's main bound.
    #[arg(long)]
    max: Option<u32>,
    /// Disables the worker pool.
    #[arg(long)]
    sequential: bool,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        let b = num(b)?;
        (num(a)?, b.checked_sub(1).ok_or("empty range")?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo == 0 {
        return Err("values must be positive".into());
    }
    if lo > hi {
        return Err("empty range".into());
    }
    Ok((lo, hi))
}

/// Outcome of one command before it is written out.
enum Outcome {
    Ok(Value, String),
    Failed(Value, String),
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonPrime(_)
            | Error::PrimeTooSmall(_)
            | Error::NotCoprime(..)
            | Error::Unsupported(_)
            | Error::OutOfRange(_)
            | Error::Divisible(_)
            | Error::ConditionFails(_)
            | Error::NotInfinite
            | Error::NotFinite
            | Error::NotInS(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// Parses `argv` (including the program name) and runs it against the
/// process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = dispatch(&cli.command);
    let (value, text, code) = match result {
        Ok(Outcome::Ok(v, t)) => (v, t, 0),
        Ok(Outcome::Failed(v, t)) => (v, t, 1),
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 2;
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 1;
        }
    };
    let written = match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("JSON values serialize")),
        Format::Text => write!(out, "{text}"),
    };
    if written.is_err() {
        return 1;
    }
    code
}

fn dispatch(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Classify(a) => classify(a),
        Command::Resolve(p) => resolve(p),
        Command::Colon(p) => colon(p),
        Command::Socle(p) => socle_cmd(p),
        Command::Frobenius(a) => frobenius(a),
        Command::Twovar(a) => twovar(a),
        Command::Verify(a) => verify(a),
    }
}

fn check_char(c: u64) -> Result<(), Failure> {
    validate_char(c).map_err(|e| Failure::Usage(e.to_string()))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn verdict_json(c: u64, n: u32, big_n: u32, v: &PdVerdict) -> Value {
    let mut obj = to_value(v);
    obj["char"] = json!(c);
    obj["n"] = json!(n);
    obj["N"] = json!(big_n);
    obj
}

fn verdict_text(v: &PdVerdict) -> String {
    let mut s = format!("{:?} theta={} r={}", v.kind, v.theta, v.r);
    if let Some(w) = v.witness {
        let _ = write!(s, " J={} q={}", w.j, w.q);
    }
    if let Some(reason) = v.reason {
        let _ = write!(s, " ({reason:?})");
    }
    s
}

fn classify(a: &RangeArgs) -> Result<Outcome, Failure> {
    check_char(a.c)?;
    let grid: Vec<(u32, u32)> = (a.n.0..=a.n.1)
        .flat_map(|n| (a.big_n.0..=a.big_n.1).map(move |big_n| (n, big_n)))
        .collect();
    let c = a.c;
    let verdicts = par::map(Mode::default(), grid, |(n, big_n)| (n, big_n, pd_verdict(c, n.into(), big_n.into())));
    let mut text = format!("{:>4} {:>4} {:>6}  verdict\n", "n", "N", "char");
    for (n, big_n, v) in &verdicts {
        let _ = writeln!(text, "{n:>4} {big_n:>4} {c:>6}  {}", verdict_text(v));
    }
    let value = if verdicts.len() == 1 {
        let (n, big_n, v) = &verdicts[0];
        verdict_json(c, *n, *big_n, v)
    } else {
        Value::Array(verdicts.iter().map(|(n, big_n, v)| verdict_json(c, *n, *big_n, v)).collect())
    };
    Ok(Outcome::Ok(value, text))
}

fn cutoff(p: &Point) -> usize {
    p.cutoff.unwrap_or(3 * p.big_n as usize + 3)
}

fn fermat(ring: Ring, n: u32) -> Polynomial {
    (0..3).map(|i| Polynomial::var_pow(ring, i, n)).fold(Polynomial::zero(ring), |a, b| a + b)
}

fn twist_text(twists: &[i64], base: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < twists.len() {
        let mut j = i;
        while j < twists.len() && twists[j] == twists[i] {
            j += 1;
        }
        let m = if j - i > 1 { format!("^{}", j - i) } else { String::new() };
        parts.push(format!("{base}({}){m}", twists[i]));
        i = j;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn matrix_text(m: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "    [{}]", row.join(", "));
    }
    s
}

fn resolution_text(title: &str, res: &GradedResolution) -> String {
    let mut s = format!("{title} over {}: {}\n", res.base, res.augmentation);
    for (i, m) in res.modules.iter().enumerate() {
        let _ = writeln!(s, "  F{i} = {}", twist_text(m, &res.base));
    }
    for (i, m) in res.maps.iter().enumerate() {
        let _ = write!(s, "  d{} =\n{}", i + 1, matrix_text(m.matrix()));
    }
    if let Some(t) = &res.tail {
        let _ = writeln!(s, "  tail: period 2, degree shift {} per period", t.period_shift);
        for (i, m) in t.maps.iter().enumerate() {
            let _ = write!(s, "  t{} =\n{}", i + 1, matrix_text(m.matrix()));
        }
    }
    let _ = writeln!(s, "  minimal: {}", res.minimal);
    s
}

fn resolve(p: &Point) -> Result<Outcome, Failure> {
    check_char(p.c)?;
    let (c, n, big_n) = (p.c, p.n, p.big_n);
    let cut = cutoff(p);
    let v = pd_verdict(c, n.into(), big_n.into());
    let poly = GradedRing::polynomial(Ring::xyz(c), cut);
    let quot = GradedRing::fermat(c, n, cut);
    let mut value = json!({ "verdict": verdict_json(c, n, big_n, &v) });
    let mut text = format!("char={c} n={n} N={big_n}: {}\n", verdict_text(&v));
    let mut ok = true;
    if v.is_infinite() {
        let pres = p_resolution(c, n, big_n)?;
        let rres = r_resolution(c, n, big_n)?;
        ok &= pres.verify(&poly, 3)?;
        ok &= rres.verify(&quot, 6)?;
        text += &resolution_text("Q", &pres);
        text += &resolution_text("Q", &rres);
        value["p_resolution"] = to_value(&pres);
        value["r_resolution"] = to_value(&rres);
        if v.theta >= 1 {
            let gres = gorenstein_resolution(c, n, big_n)?;
            ok &= gres.verify(&poly, 3)?;
            text += &resolution_text("P/J", &gres);
            value["gorenstein_resolution"] = to_value(&gres);
        }
    } else {
        let fin = finite_resolution(c, n, big_n)?;
        let res = fin.resolution()?;
        ok &= res.verify(&quot, res.len())?;
        ok &= fin.minors_generate()?;
        let _ = writeln!(text, "construction: {:?}", fin.construction);
        text += &resolution_text("Q", &res);
        value["construction"] = to_value(&fin.construction);
        value["matrix"] = to_value(&fin.matrix);
        value["resolution"] = to_value(&res);
    }
    value["verified"] = json!(ok);
    let _ = writeln!(text, "verified up to degree {cut}: {ok}");
    Ok(if ok { Outcome::Ok(value, text) } else { Outcome::Failed(value, text) })
}

fn colon(p: &Point) -> Result<Outcome, Failure> {
    check_char(p.c)?;
    let (c, n, big_n) = (p.c, p.n, p.big_n);
    let cut = cutoff(p);
    let v = pd_verdict(c, n.into(), big_n.into());
    let ring = Ring::xyz(c);
    let poly = GradedRing::polynomial(ring, cut);
    let col = colon_ideal(&poly, &frobenius_gens(ring, big_n), &fermat(ring, n))?;
    let mut value = json!({
        "verdict": verdict_json(c, n, big_n, &v),
        "count": col.count(),
        "degrees": col.degrees(),
        "generators": to_value(&col.generators),
    });
    let mut text = format!("char={c} n={n} N={big_n}: {}\n", verdict_text(&v));
    let _ = writeln!(text, "{} minimal generators, degrees {:?}", col.count(), col.degrees());
    for g in &col.generators {
        let _ = writeln!(text, "  {g}");
    }
    let mut ok = true;
    if v.is_infinite() {
        let closed = colon_generators(c, n, big_n)?;
        let agrees = ideals_equal(&poly, &closed, &col.generators)?;
        ok &= agrees;
        value["closed_form"] = to_value(&closed);
        value["agrees"] = json!(agrees);
        let _ = writeln!(text, "closed-form generators agree: {agrees}");
    }
    Ok(if ok { Outcome::Ok(value, text) } else { Outcome::Failed(value, text) })
}

fn socle_cmd(p: &Point) -> Result<Outcome, Failure> {
    check_char(p.c)?;
    let (c, n, big_n) = (p.c, p.n, p.big_n);
    let v = pd_verdict(c, n.into(), big_n.into());
    let quot = GradedRing::fermat(c, n, cutoff(p));
    let computed = socle(&quot, &frobenius_gens(quot.ring(), big_n))?;
    let mut value = json!({ "verdict": verdict_json(c, n, big_n, &v), "socle": computed });
    let mut text = format!("char={c} n={n} N={big_n}: {}\n", verdict_text(&v));
    let _ = writeln!(text, "socle degrees: {computed:?}");
    let mut ok = true;
    if v.is_infinite() {
        let predicted = socle_degrees(c, n, big_n)?;
        let agrees = predicted == computed;
        ok &= agrees;
        let _ = writeln!(text, "predicted: {predicted:?} (agrees: {agrees})");
        value["predicted"] = json!(predicted);
        value["agrees"] = json!(agrees);
    }
    Ok(if ok { Outcome::Ok(value, text) } else { Outcome::Failed(value, text) })
}

fn frobenius(a: &FrobArgs) -> Result<Outcome, Failure> {
    let (p, n, big_n) = (a.c, u64::from(a.n), u64::from(a.big_n));
    let report = tail_period(p, n, big_n)?;
    let mut value = json!({
        "order": mult_order(p, n)?,
        "report": to_value(&report),
        "f_injective": f_injective(p, n).ok(),
    });
    let mut text = format!("p={p} n={n} N={big_n}: order {}\n", report.order);
    let _ = writeln!(
        text,
        "case {:?}, q={} e={} t0={} observed period {:?} (scanned t <= {}, certified {})",
        report.case, report.q, report.e, report.t0, report.observed_period, report.scan, report.certified
    );
    let _ = writeln!(text, "{:>3}  {:>8}  class", "t", "p^t N");
    for (t, cl) in report.classes.iter().enumerate() {
        let class = match cl.key() {
            None => "free".to_string(),
            Some(k) => format!("{k} ({:?})", cl.parity),
        };
        let _ = writeln!(text, "{t:>3}  {:>8}  {class}", p.pow(t as u32).saturating_mul(big_n));
    }
    if let Some(n2) = a.big_n2 {
        let w = tail_compare(p, a.n, a.big_n, n2)?;
        value["N2"] = json!(n2);
        value["shift"] = json!(w);
        let _ = writeln!(text, "tail shift N={big_n} -> N={n2}: {w:?}");
    }
    let ok = report.periodic;
    Ok(if ok { Outcome::Ok(value, text) } else { Outcome::Failed(value, text) })
}

fn twovar(a: &FrobArgs) -> Result<Outcome, Failure> {
    check_char(a.c)?;
    let (c, n, big_n) = (a.c, a.n, a.big_n);
    let ring = Ring::xy(c);
    let f = twovar_f(n, c);
    let (d, dc) = twovar_matrices(n, big_n, c)?;
    let fi = Matrix::identity(ring, 2).scale(&f);
    let mut ok = d.mul(&dc) == fi && dc.mul(&d) == fi;
    let pres = twovar_p_resolution(n, big_n, c)?;
    let rres = twovar_r_resolution(n, big_n, c)?;
    ok &= pres.verify(&GradedRing::polynomial(ring, 0), 2)?;
    ok &= rres.verify(&GradedRing::twovar(c, n, 0), 6)?;
    let socle = twovar_socle_degrees(n, big_n)?;
    let mut value = json!({
        "char": c, "n": n, "N": big_n,
        "f": to_value(&f),
        "D": to_value(&d),
        "D_adjoint": to_value(&dc),
        "p_resolution": to_value(&pres),
        "r_resolution": to_value(&rres),
        "socle": socle,
    });
    let mut text = format!("char={c} n={n} N={big_n}, f = {f}\n");
    let _ = write!(text, "D =\n{}D' =\n{}", matrix_text(&d), matrix_text(&dc));
    text += &resolution_text("Q", &pres);
    text += &resolution_text("Q", &rres);
    let _ = writeln!(text, "socle degrees: {socle:?}");
    if let Some(n2) = a.big_n2 {
        let w = twovar_equiv(n.into(), big_n.into(), n2.into())?;
        value["N2"] = json!(n2);
        value["shift"] = json!(w);
        let _ = writeln!(text, "tail shift N={big_n} -> N={n2}: {w:?}");
    }
    value["verified"] = json!(ok);
    let _ = writeln!(text, "verified: {ok}");
    Ok(if ok { Outcome::Ok(value, text) } else { Outcome::Failed(value, text) })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(Failure::Usage(format!("unknown suite {:?}; expected one of all, {}", a.suite, SUITES.join(", "))));
    };
    let mode = if a.sequential { Mode::Sequential } else { Mode::default() };
    let mut reports = Vec::new();
    let mut text = String::new();
    for name in names {
        let rep = suites::run(name, mode, a.max)?;
        let status = if rep.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{status} {:<10} {} cases, {} failures", rep.name, rep.checked, rep.failures.len());
        for f in &rep.failures {
            let _ = writeln!(text, "  {f}");
        }
        reports.push(rep);
    }
    let ok = reports.iter().all(|r| r.passed());
    let value = to_value(&reports);
    Ok(if ok { Outcome::Ok(value, text) } else { Outcome::Failed(value, text) })
}
