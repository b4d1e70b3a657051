//! Command-line front end and the complex document format.
//!
//! A complex document is JSON laid out one matrix row per line:
//!
//! ```text
//! {
//!   "lattice_rank": 1,
//!   "ranks": [1, 1],
//!   "boundaries": [
//!     [
//!       [[[2, [0]], [2, [1]]]]
//!     ]
//!   ]
//! }
//! ```
//!
//! Each entry is a list of `[coefficient, exponent-vector]` terms. On input an
//! entry may also be a polynomial string such as `"2+2*t"`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{self, FreeComplex, Model};
use crate::error::{Error, ParseError, Result};
use crate::invariants::{main_bound, report_with_xi, FittingClass, InvariantReport};
use crate::matrix::{snf, IntMatrix, PolyMatrix};
use crate::novikov::{check_xi_generic, excluded_hyperplanes};
use crate::oracle::{
    cyclic_cover_z, finite_quotient_z, format_rational, morse_number_z, mu_series_along, slope_fit,
};
use crate::ring::{
    parse_int_list, parse_poly, split_along_xi, CohomologyClass, ExponentVector, LaurentPoly,
};

// ---------------------------------------------------------------- documents

fn json_error(e: &serde_json::Error) -> ParseError {
    ParseError::at_line(e.line(), e.column().max(1), e.to_string())
}

fn doc_error(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| doc_error(format!("{what} must be a nonnegative integer")))
}

fn as_bigint(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| doc_error(format!("{what} must be an integer, found {n}"))),
        _ => Err(doc_error(format!("{what} must be an integer"))),
    }
}

fn parse_entry(v: &Value, m: usize, at: &str) -> Result<LaurentPoly> {
    match v {
        Value::String(s) => {
            parse_poly(s, m).map_err(|e| doc_error(format!("{at}: {}: {}", e.position, e.message)))
        }
        Value::Array(terms) => {
            let mut p = LaurentPoly::zero(m);
            for term in terms {
                let pair = term.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                    doc_error(format!(
                        "{at}: each term must be [coefficient, [exponents]]"
                    ))
                })?;
                let c = as_bigint(&pair[0], &format!("{at}: coefficient"))?;
                let exps = pair[1]
                    .as_array()
                    .ok_or_else(|| doc_error(format!("{at}: exponent vector must be a list")))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| doc_error(format!("{at}: exponents must be integers")))
                    })
                    .collect::<Result<Vec<i64>>>()?;
                if exps.len() != m {
                    return Err(doc_error(format!(
                        "{at}: exponent vector has length {}, lattice rank is {m}",
                        exps.len()
                    )));
                }
                p += &LaurentPoly::monomial(m, c, ExponentVector::new(exps));
            }
            Ok(p)
        }
        _ => Err(doc_error(format!(
            "{at}: entry must be a term list or a polynomial string"
        ))),
    }
}

/// Parses a document without checking `∂∘∂ = 0` or shapes beyond raggedness.
pub fn parse_document(text: &str) -> Result<FreeComplex> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(json_error(&e)))?;
    let obj = v
        .as_object()
        .ok_or_else(|| doc_error("document must be a JSON object"))?;
    for key in obj.keys() {
        if !["lattice_rank", "ranks", "boundaries"].contains(&key.as_str()) {
            return Err(doc_error(format!("unknown field '{key}'")));
        }
    }
    let m = as_usize(
        obj.get("lattice_rank")
            .ok_or_else(|| doc_error("missing field 'lattice_rank'"))?,
        "lattice_rank",
    )?;
    let ranks = obj
        .get("ranks")
        .and_then(Value::as_array)
        .ok_or_else(|| doc_error("missing list 'ranks'"))?
        .iter()
        .map(|r| as_usize(r, "rank"))
        .collect::<Result<Vec<_>>>()?;
    let raw = obj
        .get("boundaries")
        .and_then(Value::as_array)
        .ok_or_else(|| doc_error("missing list 'boundaries'"))?;
    let mut boundaries = Vec::with_capacity(raw.len());
    for (i, mat) in raw.iter().enumerate() {
        let p = i + 1;
        let rows = mat
            .as_array()
            .ok_or_else(|| doc_error(format!("boundary {p} must be a list of rows")))?;
        if rows.is_empty() {
            boundaries.push(PolyMatrix::zeros(m, 0, ranks.get(p).copied().unwrap_or(0)));
            continue;
        }
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.as_array()
                    .ok_or_else(|| doc_error(format!("boundary {p} row {r} must be a list")))?
                    .iter()
                    .enumerate()
                    .map(|(c, e)| parse_entry(e, m, &format!("boundary {p} entry ({r}, {c})")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(
            PolyMatrix::from_rows(m, parsed)
                .map_err(|e| doc_error(format!("boundary {p}: {e}")))?,
        );
    }
    Ok(FreeComplex::from_parts(m, ranks, boundaries))
}

fn write_entry(out: &mut String, p: &LaurentPoly) {
    out.push('[');
    for (k, (e, c)) in p.terms().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let exps: Vec<String> = e.as_slice().iter().map(i64::to_string).collect();
        let _ = write!(out, "[{c}, [{}]]", exps.join(", "));
    }
    out.push(']');
}

/// Canonical text: sorted terms, no zero coefficients, one matrix row per line.
pub fn serialize_document(c: &FreeComplex) -> String {
    let ranks: Vec<String> = c.ranks().iter().map(usize::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{{\n  \"lattice_rank\": {},\n  \"ranks\": [{}],",
        c.nvars(),
        ranks.join(", ")
    );
    if c.boundaries().is_empty() {
        out.push_str("  \"boundaries\": []\n}\n");
        return out;
    }
    out.push_str("  \"boundaries\": [\n");
    for (i, b) in c.boundaries().iter().enumerate() {
        if b.rows() == 0 {
            out.push_str("    []");
        } else {
            out.push_str("    [\n");
            for r in 0..b.rows() {
                out.push_str("      [");
                for (j, e) in b.row(r).iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    write_entry(&mut out, e);
                }
                out.push(']');
                out.push_str(if r + 1 < b.rows() { ",\n" } else { "\n" });
            }
            out.push_str("    ]");
        }
        out.push_str(if i + 1 < c.boundaries().len() {
            ",\n"
        } else {
            "\n"
        });
    }
    out.push_str("  ]\n}\n");
    out
}

/// sha256 of the canonical serialization.
pub fn digest(c: &FreeComplex) -> String {
    hex::encode(Sha256::digest(serialize_document(c).as_bytes()))
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_complex(path: &Path) -> Result<FreeComplex> {
    let c = parse_document(&read_input(path)?)?;
    c.validate().map_err(|v| {
        Error::InvalidComplex(
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    Ok(c)
}

fn parse_xi(text: Option<&str>, c: &FreeComplex) -> Result<Option<CohomologyClass>> {
    let Some(text) = text else { return Ok(None) };
    let v = parse_int_list(text)?;
    if v.len() != c.nvars() {
        return Err(Error::LatticeRank {
            expected: c.nvars(),
            found: v.len(),
        });
    }
    split_along_xi(&v).map(Some)
}

fn xi_or_default(text: Option<&str>, c: &FreeComplex) -> Result<CohomologyClass> {
    match parse_xi(text, c)? {
        Some(x) => Ok(x),
        None if c.nvars() == 1 => split_along_xi(&[1]),
        None => Err(Error::Usage(format!(
            "--xi is required for lattice rank {}",
            c.nvars()
        ))),
    }
}

// ---------------------------------------------------------------- commands

#[derive(Parser, Debug)]
#[command(
    name = "morsegrowth",
    version,
    about = "Morse-number growth invariants of free chain complexes over Z[Z^m]"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check shapes and d*d = 0.
    Validate { path: PathBuf },
    /// B_p, Q_p, the bound B+2Q, Fitting ideals and gcd ladders.
    Invariants {
        path: PathBuf,
        /// Integral class as "c1,c2,..."
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Morse numbers of truncations along xi and their fitted slope.
    Mu {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long, default_value_t = 2)]
        burnin: usize,
        /// Send the kernel variables of xi to 1 before truncating.
        #[arg(long)]
        augment: bool,
        /// Print only "k<TAB>mu_k<TAB>prediction" lines.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Morse numbers over Z of cyclic covers (m = 1) or finite quotients.
    Cover {
        path: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Tabulate k = 1..kmax.
        #[arg(long)]
        kmax: Option<usize>,
        /// Use the quotient by k Z^m (any lattice rank).
        #[arg(long)]
        quotient: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write a model complex document to standard output.
    Make {
        #[command(subcommand)]
        model: MakeCommand,
    },
    /// Smith normal form of an integer matrix given as a JSON 2D array.
    Snf {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Excluded integral hyperplanes, and the genericity verdict for --xi.
    Hyperplanes {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum MakeCommand {
    /// Rank-s complex concentrated in one degree.
    Free {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
    },
    /// 0 <- Λ <-rho- Λ <- 0 in degrees dim, dim+1.
    Tau {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long, default_value_t = 0)]
        dim: usize,
    },
    /// Like tau, with rho shifted to start at t^0.
    TauBasic {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long, default_value_t = 0)]
        dim: usize,
    },
    /// Principal model; --aI lists the torsion chain of degree I, comma separated.
    Principal {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value = "")]
        b: String,
        #[arg(long)]
        a0: Option<String>,
        #[arg(long)]
        a1: Option<String>,
        #[arg(long)]
        a2: Option<String>,
        #[arg(long)]
        a3: Option<String>,
        #[arg(long)]
        a4: Option<String>,
        #[arg(long)]
        a5: Option<String>,
        #[arg(long)]
        a6: Option<String>,
        #[arg(long)]
        a7: Option<String>,
    },
    /// Direct sum of documents.
    Sum { paths: Vec<PathBuf> },
    /// Degree shift by one.
    Suspension { path: PathBuf },
}

/// What a command produced: human text, machine document, exit status.
struct Outcome {
    human: String,
    json: Value,
    status: i32,
}

impl Outcome {
    fn ok(human: String, json: Value) -> Self {
        Outcome {
            human,
            json,
            status: 0,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ZeroClass
        | Error::OracleRefused(_)
        | Error::WindowTooShort { .. }
        | Error::MonicCoefficient(_)
        | Error::ZeroCoefficient(_)
        | Error::Divisibility { .. }
        | Error::NonUnimodular(_) => 2,
        _ => 1,
    }
}

/// Runs the command line; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (json, echo) = describe(&cli.command);
    match execute(&cli.command) {
        Ok(out) => {
            let text = if json {
                serde_json::to_string_pretty(&out.json).expect("serializable report") + "\n"
            } else {
                out.human
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            out.status
        }
        Err(e) => {
            let code = exit_code(&e);
            if json {
                let report = json!({
                    "command": echo,
                    "error": e.to_string(),
                    "flags": { "oracle_refused": matches!(e, Error::OracleRefused(_)) },
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                );
            }
            eprintln!("error: {e}");
            code
        }
    }
}

fn describe(c: &Command) -> (bool, String) {
    match c {
        Command::Validate { .. } => (false, "validate".into()),
        Command::Invariants { json, .. } => (*json, "invariants".into()),
        Command::Mu { json, .. } => (*json, "mu".into()),
        Command::Cover { json, .. } => (*json, "cover".into()),
        Command::Make { .. } => (false, "make".into()),
        Command::Snf { json, .. } => (*json, "snf".into()),
        Command::Hyperplanes { json, .. } => (*json, "hyperplanes".into()),
    }
}

fn execute(c: &Command) -> Result<Outcome> {
    match c {
        Command::Validate { path } => cmd_validate(path),
        Command::Invariants { path, xi, .. } => cmd_invariants(path, xi.as_deref()),
        Command::Mu {
            path,
            xi,
            kmax,
            burnin,
            augment,
            table,
            ..
        } => cmd_mu(path, xi.as_deref(), *kmax, *burnin, *augment, *table),
        Command::Cover {
            path,
            k,
            kmax,
            quotient,
            ..
        } => cmd_cover(path, *k, *kmax, *quotient),
        Command::Make { model } => cmd_make(model),
        Command::Snf { path, .. } => cmd_snf(path),
        Command::Hyperplanes { path, xi, .. } => cmd_hyperplanes(path, xi.as_deref()),
    }
}

fn cmd_validate(path: &Path) -> Result<Outcome> {
    let c = parse_document(&read_input(path)?)?;
    match c.validate() {
        Ok(()) => Ok(Outcome::ok(
            format!("ok: lattice rank {}, ranks {:?}\n", c.nvars(), c.ranks()),
            json!({ "command": "validate", "valid": true }),
        )),
        Err(violations) => {
            let mut human = String::new();
            for v in &violations {
                let _ = writeln!(human, "violation: {v}");
            }
            Ok(Outcome {
                human,
                json: json!({ "command": "validate", "valid": false }),
                status: 1,
            })
        }
    }
}

fn class_text(f: &FittingClass) -> String {
    match f {
        FittingClass::Zero => "zero".into(),
        FittingClass::NotNumericallyPrime { witness } => {
            format!("not numerically prime (witness {witness})")
        }
        FittingClass::ProperNumericallyPrime => "numerically prime, not certified unit".into(),
        FittingClass::Unit => "unit".into(),
    }
}

fn invariants_human(r: &InvariantReport, digest: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input digest {digest}");
    let _ = writeln!(s, "lattice rank {}, ranks {:?}", r.lattice_rank, r.ranks);
    let _ = writeln!(s, "degree\tB_p\tQ_p\tB_p+Q_p+Q_(p-1)");
    for p in 0..r.betti.len() {
        let _ = writeln!(
            s,
            "{p}\t{}\t{}\t{}",
            r.betti[p], r.torsion[p], r.per_degree_bound[p]
        );
    }
    let _ = writeln!(
        s,
        "B = {}, Q = {}, bound B+2Q = {}",
        r.b_total, r.q_total, r.bound
    );
    for (p, f) in r.fitting.iter().enumerate() {
        let _ = writeln!(s, "Fitting ideals of d{} ({} generators):", p + 1, f.d);
        for i in &f.ideals {
            let _ = write!(
                s,
                "  F_{}: {}, content {}",
                i.t,
                class_text(&i.class),
                i.content
            );
            if let Some(g) = &i.generator_gcd {
                let _ = write!(s, ", gcd {g}");
            }
            s.push('\n');
        }
        let l = &r.ladders[p];
        if !l.rho.is_empty() {
            let fmt = |v: &[LaurentPoly]| {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let _ = writeln!(s, "  rho = [{}], zeta = [{}]", fmt(&l.rho), fmt(&l.zeta));
            if !l.divisible {
                let _ = writeln!(s, "  warning: ladder is not a divisibility chain");
            }
        }
    }
    if !r.fr_endpoints_certified {
        let _ = writeln!(s, "note: some reduced-sequence upper endpoints are upper bounds (unit ideal not certified)");
    }
    if let Some(x) = &r.xi {
        let _ = writeln!(s, "xi = {:?} (divisibility {})", x.covector, x.divisibility);
        for d in &x.principal {
            let a: Vec<String> = d.a.iter().map(|e| e.value.to_string()).collect();
            let _ = write!(
                s,
                "  degree {}: b = {}, q = {}, a = [{}]",
                d.degree,
                d.b,
                d.q,
                a.join(", ")
            );
            if !d.divisibility {
                s.push_str(", divisibility fails");
            }
            if d.consistent == Some(false) {
                s.push_str(", inconsistent with Q");
            }
            s.push('\n');
        }
        match &x.genericity.excluded_by {
            None => {
                let _ = writeln!(
                    s,
                    "  generic: certified ({} hyperplanes checked)",
                    x.genericity.hyperplanes_checked
                );
            }
            Some(h) => {
                let _ = writeln!(
                    s,
                    "  generic: no, xi vanishes on {:?} from {}; a_j are heuristic",
                    h.vector, h.source
                );
            }
        }
    }
    s
}

fn cmd_invariants(path: &Path, xi: Option<&str>) -> Result<Outcome> {
    let c = load_complex(path)?;
    let xi = parse_xi(xi, &c)?;
    let report = match &xi {
        Some(x) => report_with_xi(&c, x),
        None => main_bound(&c),
    };
    let d = digest(&c);
    let generic = report.xi.as_ref().map(|x| x.genericity.certified);
    let json = json!({
        "command": "invariants",
        "input_digest": d,
        "report": report,
        "flags": {
            "generic_certified": generic,
            "fr_endpoint_certified": report.fr_endpoints_certified,
            "oracle_refused": false,
        },
    });
    Ok(Outcome::ok(invariants_human(&report, &d), json))
}

fn cmd_mu(
    path: &Path,
    xi: Option<&str>,
    kmax: usize,
    burnin: usize,
    augment: bool,
    table: bool,
) -> Result<Outcome> {
    let c = load_complex(path)?;
    let class = xi_or_default(xi, &c)?;
    let bound = main_bound(&c).bound;
    let series = mu_series_along(&c, &class, kmax, augment)?;
    let predictions: Vec<usize> = (1..=kmax).map(|k| bound * k).collect();
    let mut human = String::new();
    if !table {
        let _ = writeln!(human, "input digest {}", digest(&c));
        let _ = writeln!(human, "{}", series.source);
        let _ = writeln!(human, "k\tmu_k\t(B+2Q)k");
    }
    for k in 1..=kmax {
        let _ = writeln!(human, "{k}\t{}\t{}", series.get(k), predictions[k - 1]);
    }
    let fit = slope_fit(&series.values, burnin);
    let predicted = BigRational::from_integer(bound.into());
    let (fit_json, verdict) = match &fit {
        Ok(f) => {
            let agree = f.slope == predicted;
            if !table {
                let _ = writeln!(
                    human,
                    "slope {} on k = {}..{}, max deviation {}; predicted B+2Q = {bound}: {}",
                    format_rational(&f.slope),
                    f.window.0,
                    f.window.1,
                    format_rational(&f.max_deviation),
                    if agree { "agree" } else { "disagree" }
                );
            }
            (
                serde_json::to_value(f).expect("serializable fit"),
                Some(agree),
            )
        }
        Err(e) => {
            if !table {
                let _ = writeln!(human, "no fit: {e}");
            }
            (Value::Null, None)
        }
    };
    let generic = check_xi_generic(&c, &class).certified;
    let json = json!({
        "command": "mu",
        "input_digest": digest(&c),
        "xi": class.covector,
        "series": series,
        "k": (1..=kmax).collect::<Vec<_>>(),
        "predictions": predictions,
        "fit": fit_json,
        "predicted_slope": bound,
        "agree": verdict,
        "flags": { "generic_certified": generic, "oracle_refused": false },
    });
    Ok(Outcome::ok(human, json))
}

fn cmd_cover(
    path: &Path,
    k: Option<usize>,
    kmax: Option<usize>,
    quotient: bool,
) -> Result<Outcome> {
    let c = load_complex(path)?;
    let ks: Vec<usize> = match (k, kmax) {
        (Some(k), None) => vec![k],
        (None, Some(n)) => (1..=n).collect(),
        (None, None) => return Err(Error::Usage("give --k or --kmax".into())),
        (Some(_), Some(_)) => return Err(Error::Usage("--k and --kmax are exclusive".into())),
    };
    let bound = main_bound(&c).bound;
    let m = if quotient { c.nvars() as u32 } else { 1 };
    let mut human = format!(
        "input digest {}\nk\tM_Z\t(B+2Q)k^{m}\tresidual\n",
        digest(&c)
    );
    let mut rows = Vec::new();
    for k in ks {
        let cover = if quotient {
            finite_quotient_z(&c, k)?
        } else {
            cyclic_cover_z(&c, k)?
        };
        let morse = morse_number_z(&cover)?;
        let prediction = bound * k.pow(m);
        let residual = morse as i64 - prediction as i64;
        let _ = writeln!(human, "{k}\t{morse}\t{prediction}\t{residual}");
        rows.push(json!({ "k": k, "morse_number": morse, "prediction": prediction, "residual": residual, "cover_ranks": cover.ranks() }));
    }
    let json = json!({
        "command": "cover",
        "input_digest": digest(&c),
        "quotient": quotient,
        "bound": bound,
        "exponent": m,
        "rows": rows,
    });
    Ok(Outcome::ok(human, json))
}

fn poly_list(text: &str, m: usize) -> Result<Vec<LaurentPoly>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Ok(parse_poly(s, m)?))
        .collect()
}

fn cmd_make(model: &MakeCommand) -> Result<Outcome> {
    let c = match model {
        MakeCommand::Free { m, dim, rank } => complex::build(&Model::Free {
            nvars: *m,
            i: *dim,
            s: *rank,
        })?,
        MakeCommand::Tau { m, rho, dim } => complex::build(&Model::Tau {
            rho: parse_poly(rho, *m)?,
            i: *dim,
        })?,
        MakeCommand::TauBasic { m, rho, dim } => complex::build(&Model::TauBasic {
            rho: parse_poly(rho, *m)?,
            i: *dim,
        })?,
        MakeCommand::Principal {
            m,
            b,
            a0,
            a1,
            a2,
            a3,
            a4,
            a5,
            a6,
            a7,
        } => {
            let b: Vec<usize> = parse_int_list(b)?
                .into_iter()
                .map(|x| {
                    usize::try_from(x)
                        .map_err(|_| Error::Usage("Betti numbers must be nonnegative".into()))
                })
                .collect::<Result<_>>()?;
            let raw = [a0, a1, a2, a3, a4, a5, a6, a7];
            let top = raw.iter().rposition(|x| x.is_some()).map_or(0, |i| i + 1);
            let a = raw[..top]
                .iter()
                .map(|x| x.as_deref().map_or(Ok(Vec::new()), |s| poly_list(s, *m)))
                .collect::<Result<Vec<_>>>()?;
            complex::build(&Model::Principal { nvars: *m, b, a })?
        }
        MakeCommand::Sum { paths } => {
            let parts = paths
                .iter()
                .map(|p| load_complex(p))
                .collect::<Result<Vec<_>>>()?;
            let first = parts
                .first()
                .ok_or_else(|| Error::Usage("sum needs at least one document".into()))?;
            complex::direct_sum_all(first.nvars(), &parts)?
        }
        MakeCommand::Suspension { path } => complex::suspension(&load_complex(path)?),
    };
    c.validate()
        .map_err(|v| Error::InvalidComplex(format!("{v:?}")))?;
    Ok(Outcome::ok(serialize_document(&c), Value::Null))
}

fn load_int_matrix(path: &Path) -> Result<IntMatrix> {
    let v: Value =
        serde_json::from_str(&read_input(path)?).map_err(|e| Error::Parse(json_error(&e)))?;
    let rows = v
        .as_array()
        .ok_or_else(|| doc_error("matrix must be a list of rows"))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| doc_error("each row must be a list"))?
                .iter()
                .map(|x| as_bigint(x, "matrix entry"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(doc_error("rows have different lengths"));
    }
    Ok(IntMatrix::from_big_rows(parsed, cols))
}

fn cmd_snf(path: &Path) -> Result<Outcome> {
    let a = load_int_matrix(path)?;
    let r = snf(&a);
    let fmt = |m: &IntMatrix| {
        m.to_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
    };
    let mut human = format!("{}x{} matrix, rank {}\n", a.rows(), a.cols(), r.rank());
    let divisors: Vec<String> = r
        .invariant_factors
        .iter()
        .map(ToString::to_string)
        .collect();
    let _ = writeln!(human, "invariant factors: [{}]", divisors.join(", "));
    for (name, m) in [("S", &r.s), ("U", &r.u), ("V", &r.v)] {
        let _ = writeln!(human, "{name}:");
        for line in fmt(m) {
            let _ = writeln!(human, "  {line}");
        }
    }
    let to_json = |m: &IntMatrix| -> Value {
        Value::Array(
            m.to_rows()
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|x| Value::Number(crate::ser::number(x)))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let json = json!({
        "command": "snf",
        "rows": a.rows(),
        "cols": a.cols(),
        "rank": r.rank(),
        "divisors": r.invariant_factors.iter().map(crate::ser::number).collect::<Vec<_>>(),
        "S": to_json(&r.s),
        "U": to_json(&r.u),
        "V": to_json(&r.v),
    });
    Ok(Outcome::ok(human, json))
}

fn cmd_hyperplanes(path: &Path, xi: Option<&str>) -> Result<Outcome> {
    let c = load_complex(path)?;
    let set = excluded_hyperplanes(&c);
    let mut human = format!(
        "input digest {}\n{} excluded hyperplanes\n",
        digest(&c),
        set.hyperplanes.len()
    );
    for h in &set.hyperplanes {
        let _ = writeln!(human, "  {:?}  from {}", h.vector, h.source);
    }
    let cert = parse_xi(xi, &c)?.map(|x| (x.covector.clone(), check_xi_generic(&c, &x)));
    if let Some((v, g)) = &cert {
        match &g.excluded_by {
            None => {
                let _ = writeln!(human, "xi = {v:?}: certified generic relative to this set");
            }
            Some(h) => {
                let _ = writeln!(human, "xi = {v:?}: excluded by {:?}", h.vector);
            }
        }
    }
    let json = json!({
        "command": "hyperplanes",
        "input_digest": digest(&c),
        "hyperplanes": set,
        "xi": cert.as_ref().map(|(v, _)| v.clone()),
        "genericity": cert.map(|(_, g)| g),
    });
    Ok(Outcome::ok(human, json))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tau;

    #[test]
    fn canonical_round_trip() {
        let c = complex::direct_sum(
            &tau(&parse_poly("2+2t", 1).unwrap(), 0),
            &complex::free_model(1, 1, 1),
        )
        .unwrap();
        let text = serialize_document(&c);
        let back = parse_document(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(serialize_document(&back), text);
        assert_eq!(digest(&back), digest(&c));
    }

    #[test]
    fn string_entries_and_errors() {
        let c =
            parse_document(r#"{"lattice_rank": 1, "ranks": [1, 1], "boundaries": [[["t-1"]]]}"#)
                .unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(
            c.boundary(1).unwrap().get(0, 0),
            &parse_poly("t-1", 1).unwrap()
        );
        let e = parse_document("{\n  \"lattice_rank\": 1,\n  \"ranks\": [1,\n}").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!(p.position, 4),
            other => panic!("{other:?}"),
        }
        assert!(
            parse_document(r#"{"lattice_rank": 2, "ranks": [1, 1], "boundaries": [[["t"]]]}"#)
                .is_err()
        );
        assert!(parse_document(
            r#"{"lattice_rank": 1, "ranks": [1], "boundaries": [], "extra": 1}"#
        )
        .is_err());
    }
}
