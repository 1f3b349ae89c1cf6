use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zerosum::bounds::{check_hui, check_sf, multiplicity_bounds_report};
use zerosum::davenport::davenport_constant;
use zerosum::error::Error;
use zerosum::families::{gen_ap_power, gen_cube, gen_two_gen};
use zerosum::oracle::brute_sums;
use zerosum::sampling::{random_group, random_sequence};
use zerosum::structure::{
    check_hypotheses, extract_certificate, verify_certificate, CertificateClaim, StructureCertificate,
};
use zerosum::sumset::{is_minimal_zero_sum, subsequence_sums};
use zerosum::transfer::{is_stable, stabilize};
use zerosum::{GroupSpec, Limits, Sequence};

mod text;

#[derive(Parser)]
#[command(name = "zerosum", version, about = "Subsequence sums of zero-sum-free sequences over abelian groups")]
struct Cli {
    /// Largest sum set that may be materialized.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MAX_SUMSET)]
    max_sumset: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Cube,
    TwoGen,
    ApPower,
}

#[derive(Subcommand)]
enum Command {
    /// Statistics, sum-set sizes, zero-sum flags and lower-bound checks.
    Analyze {
        /// Sequence JSON file, or `-` for stdin.
        input: String,
        #[arg(long = "C")]
        c: Option<u64>,
    },
    /// Run transfers until the sequence is stable.
    Stabilize { input: String },
    /// Check hypotheses, extract a structure certificate and verify it.
    VerifyStructure {
        input: String,
        #[arg(long = "C")]
        c: u64,
        /// Verify this certificate instead of extracting one.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Emit an extremal family member with its predicted |Σ|.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyName,
        /// Comma-separated `key=value` list, e.g. `s=1,n=10`.
        #[arg(long)]
        params: String,
    },
    /// Davenport constant of a small finite group.
    Davenport {
        #[arg(long)]
        group: String,
    },
    /// Compare the sum-set engine with brute-force enumeration.
    OracleCheck {
        input: Option<String>,
        /// Instead of a file, check this many seeded random sequences.
        #[arg(long)]
        random: Option<usize>,
    },
}

/// A finished command: its JSON and the exit code it implies.
struct Outcome {
    body: Value,
    code: u8,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, code: 0 }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Validation(format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Error::Validation(format!("reading {path}: {e}")))?
    };
    Ok(text)
}

/// Accepts a bare sequence object or the `{"sequence": ...}` wrapper that `gen` emits.
fn load_sequence(path: &str) -> Result<Sequence, Error> {
    let text = read_input(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Validation(format!("bad JSON in {path}: {e}")))?;
    let inner = match value.get("sequence") {
        Some(seq) => seq.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| Error::Validation(format!("bad sequence in {path}: {e}")))
}

fn parse_params(raw: &str) -> Result<BTreeMap<String, u64>, Error> {
    let mut out = BTreeMap::new();
    for pair in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::Validation(format!("parameter {pair:?} is not key=value")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("parameter {k} needs a nonnegative integer")))?;
        out.insert(k.trim().to_ascii_lowercase(), v);
    }
    Ok(out)
}

fn param(params: &BTreeMap<String, u64>, key: &str) -> Result<u64, Error> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Validation(format!("missing parameter {key}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn analyze(seq: &Sequence, c: Option<u64>, limits: &Limits) -> Result<Outcome, Error> {
    let sums = subsequence_sums(seq, limits)?;
    let proper = sums.proper();
    let zsf = sums.zero_sum_free;
    let mut body = json!({
        "stats": seq.stats(),
        "sigma_size": sums.sigma.len(),
        "proper_size": proper.len(),
        "zero_sum_free": zsf,
        "minimal_zero_sum": is_minimal_zero_sum(seq, limits)?,
        "stable": is_stable(seq)?,
    });
    if zsf {
        let mut records = check_sf(seq, limits)?;
        records.push(check_hui(&seq.support_sequence(), limits)?);
        body["lower_bounds"] = to_value(&records);
    }
    if let Some(c) = c {
        body["bounds"] = if zsf && seq.len() >= 2 {
            to_value(&multiplicity_bounds_report(seq, c, limits)?)
        } else {
            Value::Null
        };
    }
    Ok(Outcome::ok(body))
}

fn verify_structure(seq: &Sequence, c: u64, cert_path: Option<&str>, limits: &Limits) -> Result<Outcome, Error> {
    let hypotheses = check_hypotheses(seq, c, limits)?;
    let (cert, external) = match cert_path {
        Some(path) => {
            let claim: CertificateClaim = serde_json::from_str(&read_input(path)?)
                .map_err(|e| Error::Validation(format!("bad certificate JSON: {e}")))?;
            (StructureCertificate::from_claim(seq, &claim)?, true)
        }
        None if hypotheses.all_hold() => (extract_certificate(seq, c, limits)?, false),
        None => {
            return Ok(Outcome {
                body: json!({
                    "hypotheses": hypotheses,
                    "certificate": Value::Null,
                    "verification": Value::Null,
                }),
                code: 1,
            });
        }
    };
    let report = verify_certificate(seq, c, &cert, limits)?;
    // a self-extracted certificate that fails verification is a bug
    let code = match (report.all_pass(), external) {
        (true, _) => 0,
        (false, true) => 1,
        (false, false) => 3,
    };
    let cert_value = if external {
        json!({"a": cert.a, "h": cert.h, "X": cert.x})
    } else {
        to_value(&cert)
    };
    Ok(Outcome {
        body: json!({
            "hypotheses": hypotheses,
            "certificate": cert_value,
            "verification": report,
        }),
        code,
    })
}

fn oracle_compare(seq: &Sequence, limits: &Limits) -> Result<(bool, usize, usize), Error> {
    let (brute_all, brute_proper) = brute_sums(seq, limits)?;
    let sums = subsequence_sums(seq, limits)?;
    let agree = sums.sigma == brute_all && sums.proper() == brute_proper;
    Ok((agree, brute_all.len(), brute_proper.len()))
}

fn oracle_check(input: Option<&str>, random: Option<usize>, seed: u64, limits: &Limits) -> Result<Outcome, Error> {
    use rand::SeedableRng;
    match (input, random) {
        (Some(path), None) => {
            let seq = load_sequence(path)?;
            let (agree, sigma, proper) = oracle_compare(&seq, limits)?;
            Ok(Outcome {
                body: json!({"agree": agree, "sigma_size": sigma, "proper_size": proper}),
                code: if agree { 0 } else { 3 },
            })
        }
        (None, Some(count)) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut disagreements = Vec::new();
            for case in 0..count {
                let g = random_group(&mut rng, 30, 0.3);
                let seq = random_sequence(&mut rng, &g, 5, 12, 100_000);
                if !oracle_compare(&seq, limits)?.0 {
                    disagreements.push(json!({"case": case, "sequence": seq}));
                }
            }
            let agree = disagreements.is_empty();
            Ok(Outcome {
                body: json!({"seed": seed, "cases": count, "agree": agree, "disagreements": disagreements}),
                code: if agree { 0 } else { 3 },
            })
        }
        _ => Err(Error::Validation(
            "oracle-check takes either a sequence file or --random <count>".into(),
        )),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let limits = Limits::default().with_max_sumset(cli.max_sumset);
    match &cli.command {
        Command::Analyze { input, c } => analyze(&load_sequence(input)?, *c, &limits),
        Command::Stabilize { input } => {
            let seq = load_sequence(input)?;
            let (stable, trace) = stabilize(&seq, &limits)?;
            Ok(Outcome::ok(json!({
                "initial": trace.initial,
                "final": trace.final_stats,
                "sequence": stable,
                "steps": trace.steps.len(),
                "trace": trace,
            })))
        }
        Command::VerifyStructure { input, c, certificate } => {
            verify_structure(&load_sequence(input)?, *c, certificate.as_deref(), &limits)
        }
        Command::Gen { family, params } => {
            let p = parse_params(params)?;
            let fam = match family {
                FamilyName::Cube => gen_cube(param(&p, "s")?, param(&p, "n")?)?,
                FamilyName::TwoGen => gen_two_gen(param(&p, "c")?, param(&p, "n")?)?,
                FamilyName::ApPower => gen_ap_power(param(&p, "s")?, param(&p, "k")?)?,
            };
            Ok(Outcome::ok(to_value(&fam)))
        }
        Command::Davenport { group } => {
            let g: GroupSpec = group.parse()?;
            let r = davenport_constant(&g, &limits)?;
            Ok(Outcome::ok(json!({"group": g, "d": r.d, "witness": r.witness})))
        }
        Command::OracleCheck { input, random } => oracle_check(input.as_deref(), *random, cli.seed, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(out) => (out.body, out.code),
        Err(e) => {
            eprintln!("zerosum: {e}");
            let kind = match e {
                Error::Structural(_) => "structural",
                Error::Validation(_) => "validation",
                Error::Resource(_) => "resource",
                Error::Internal(_) => "internal",
            };
            (
                json!({"error": {"kind": kind, "message": e.to_string()}}),
                e.exit_code() as u8,
            )
        }
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&body).expect("json")),
        Format::Text => print!("{}", text::render(&body)),
    }
    ExitCode::from(code)
}
