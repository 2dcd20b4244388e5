//! Command-line front end: lifting pipelines, projective-space
//! enumeration, and the ring-condition checkers, all with JSON output.
//!
//! Exit codes: 0 on success or verdict-true, 1 on verdict-false,
//! 2 on malformed input or violated guards.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use rowlift::conditions::{
    lemma41_check, sap_check_small, usc_check_finite, usc_refute_poly_example, usc_witness_z,
    usc_zero_ideal_refutation, ProductRing,
};
use rowlift::exactring::{Ideal, QuotRing, RingElem};
use rowlift::jsonio;
use rowlift::lifting::{omega_lift, sigma_lift, verify_certificate, GroupKind, LiftCertificate};
use rowlift::matgroup::{elementary_decompose, word_to_matrix, RMatrix};
use rowlift::projspace::{canon, enumerate_pf, ProjPoint, WeightVector};
use rowlift::Error;

#[derive(Parser)]
#[command(name = "rowlift")]
#[command(about = "Exact congruence-subgroup lifting, projective enumeration, and ring-condition checkers")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Also write the JSON document to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Lift prescribed rows into SL_{k+1}(Z) at a congruence level
    LiftSl {
        /// Rows as semicolon-separated integer lists, e.g. "1,2;3,1"
        #[arg(long)]
        rows: String,
        /// Row ideals of Z as generator integers, e.g. "2,3"
        #[arg(long)]
        ideals: String,
        /// Level ideal generator
        #[arg(long)]
        level: i128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lift prescribed rows into Sp_{2k}(Z) at a congruence level
    LiftSp {
        #[arg(long)]
        rows: String,
        #[arg(long)]
        ideals: String,
        #[arg(long)]
        level: i128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate the classes of a weighted projective space over Z/n
    PfEnum {
        #[arg(long)]
        k: usize,
        /// Ideal generator of Z
        #[arg(long)]
        ideal: i128,
        /// Weights, e.g. "1,2"
        #[arg(long)]
        weights: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical representative of a projective point
    PfCanon {
        #[arg(long)]
        ideal: i128,
        #[arg(long)]
        weights: String,
        /// The tuple, e.g. "2,4"
        #[arg(long)]
        tuple: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// USC checks: exhaustive on finite rings, or the recorded refutations
    UscCheck {
        /// Finite ring as component moduli, e.g. "6" or "2x3"
        #[arg(long, conflicts_with_all = ["poly_example", "zero_ideal"])]
        ring: Option<String>,
        /// Ideal generator, one entry per component, e.g. "2" or "0,0"
        #[arg(long)]
        ideal_gen: Option<String>,
        /// Largest unital set size scanned
        #[arg(long, default_value_t = 3)]
        max_set_size: usize,
        /// Cap on the number of scanned tuples
        #[arg(long, default_value_t = 10_000_000)]
        guard: u64,
        /// Run the F_5[x] refutation up to this multiplier degree
        #[arg(long)]
        poly_example: Option<usize>,
        /// Emit the zero-ideal refutation record for the set {5, 7}
        #[arg(long)]
        zero_ideal: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Constructive USC witness over Z
    UscWitness {
        /// The unital set, e.g. "4,7"
        #[arg(long)]
        set: String,
        /// Ideal generator (|n| >= 2)
        #[arg(long)]
        modulus: i128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive strong-approximation round trip over Z/n
    SapCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        modulus: i128,
        #[arg(long, default_value_t = 1 << 24)]
        guard: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Factor a determinant-one matrix into elementary factors
    GeDecompose {
        /// Matrix rows, e.g. "0,-1;1,0"
        #[arg(long)]
        matrix: String,
        /// Modulus (0 means over Z)
        #[arg(long, default_value_t = 0)]
        modulus: i128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Order identity and sampled subgroup identities at co-maximal levels
    Lemma41Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: i128,
        #[arg(long)]
        j: i128,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// RNG seed (required: the subcommand samples)
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 24)]
        guard: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-verify a lift certificate from a JSON file
    Verify {
        /// Path to the certificate JSON
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate a full projective product and lift every target
    Surjectivity {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        /// Row ideals, e.g. "2,3"
        #[arg(long)]
        ideals: String,
        #[arg(long)]
        level: i128,
        /// One weight row per ideal, e.g. "1,1;1,1"
        #[arg(long)]
        weights: String,
        /// Lift only this many seeded random targets instead of all
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        /// RNG seed (required with --sample)
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on the size of the full target product
        #[arg(long, default_value_t = 1_000_000)]
        guard: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((doc, ok)) => {
            let rendered = serde_json::to_string_pretty(&doc).expect("serializable document");
            println!("{rendered}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let doc = json!({"error": {"code": e.code(), "message": e.to_string()}});
            eprintln!("{}", serde_json::to_string_pretty(&doc).unwrap());
            ExitCode::from(2)
        }
    }
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>, Error> {
    s.split(',')
        .map(|t| {
            BigInt::from_str(t.trim())
                .map_err(|e| Error::InvalidArgument(format!("bad integer '{t}': {e}")))
        })
        .collect()
}

fn parse_rows(s: &str) -> Result<Vec<Vec<RingElem>>, Error> {
    s.split(';')
        .map(|row| Ok(parse_int_list(row)?.into_iter().map(RingElem::int).collect()))
        .collect()
}

fn parse_weight_rows(s: &str) -> Result<Vec<WeightVector>, Error> {
    s.split(';')
        .map(|row| {
            let ws: Vec<u64> = row
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::InvalidArgument(format!("bad weight '{t}': {e}")))
                })
                .collect::<Result<_, Error>>()?;
            WeightVector::new(ws)
        })
        .collect()
}

fn parse_ideals(s: &str) -> Result<Vec<Ideal>, Error> {
    Ok(parse_int_list(s)?.into_iter().map(Ideal::from_int).collect())
}

fn parse_group(s: &str) -> Result<GroupKind, Error> {
    match s {
        "sl" => Ok(GroupKind::Sl),
        "sp" => Ok(GroupKind::Sp),
        other => Err(Error::InvalidArgument(format!(
            "group must be 'sl' or 'sp', got '{other}'"
        ))),
    }
}

fn emit(out: &OutputArgs, doc: &Value) -> Result<(), Error> {
    if let Some(path) = &out.out {
        let rendered = serde_json::to_string_pretty(doc).expect("serializable document");
        fs::write(path, rendered + "\n")
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn certificate_doc(command: &str, params: Value, cert: &LiftCertificate) -> (Value, bool) {
    let ok = verify_certificate(cert);
    let doc = json!({
        "command": command,
        "params": params,
        "certificate": jsonio::certificate_to_json(cert),
        "ok": ok,
    });
    (doc, ok)
}

fn run(cmd: Command) -> Result<(Value, bool), Error> {
    match cmd {
        Command::LiftSl {
            rows,
            ideals,
            level,
            output,
        } => {
            let rows_v = parse_rows(&rows)?;
            let ideals_v = parse_ideals(&ideals)?;
            let level_v = Ideal::from_int(level);
            let params = json!({
                "rows": rows, "ideals": ideals, "level": level.to_string(),
            });
            let cert = omega_lift(&rows_v, &ideals_v, &level_v)?;
            let (doc, ok) = certificate_doc("lift-sl", params, &cert);
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::LiftSp {
            rows,
            ideals,
            level,
            output,
        } => {
            let rows_v = parse_rows(&rows)?;
            let ideals_v = parse_ideals(&ideals)?;
            let level_v = Ideal::from_int(level);
            let params = json!({
                "rows": rows, "ideals": ideals, "level": level.to_string(),
            });
            let cert = sigma_lift(&rows_v, &ideals_v, &level_v)?;
            let (doc, ok) = certificate_doc("lift-sp", params, &cert);
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::PfEnum {
            k,
            ideal,
            weights,
            output,
        } => {
            let w = parse_weight_rows(&weights)?
                .into_iter()
                .next()
                .ok_or(Error::EmptyInput)?;
            let ideal_v = Ideal::from_int(ideal);
            let points = enumerate_pf(k, &w, &ideal_v)?;
            let doc = json!({
                "command": "pf-enum",
                "params": {"k": k, "ideal": ideal.to_string(), "weights": weights},
                "classes": points.len(),
                "points": points.iter().map(jsonio::proj_point_to_json).collect::<Vec<_>>(),
            });
            emit(&output, &doc)?;
            Ok((doc, true))
        }
        Command::PfCanon {
            ideal,
            weights,
            tuple,
            output,
        } => {
            let w = parse_weight_rows(&weights)?
                .into_iter()
                .next()
                .ok_or(Error::EmptyInput)?;
            let rep: Vec<RingElem> = parse_int_list(&tuple)?.into_iter().map(RingElem::int).collect();
            if rep.len() != w.len() {
                return Err(Error::ShapeMismatch {
                    expected: format!("{} entries", w.len()),
                    got: format!("{}", rep.len()),
                });
            }
            let point = ProjPoint::Class {
                ideal: Ideal::from_int(ideal),
                weights: w,
                rep,
            };
            let canonical = canon(&point)?;
            let doc = json!({
                "command": "pf-canon",
                "params": {"ideal": ideal.to_string(), "weights": weights, "tuple": tuple},
                "point": jsonio::proj_point_to_json(&canonical),
            });
            emit(&output, &doc)?;
            Ok((doc, true))
        }
        Command::UscCheck {
            ring,
            ideal_gen,
            max_set_size,
            guard,
            poly_example,
            zero_ideal,
            output,
        } => {
            if zero_ideal {
                let record = usc_zero_ideal_refutation();
                let ok = record.refuted;
                let doc = json!({
                    "command": "usc-check",
                    "params": {"mode": "zero-ideal"},
                    "report": to_value(&record),
                    "ok": ok,
                });
                emit(&output, &doc)?;
                return Ok((doc, ok));
            }
            if let Some(d) = poly_example {
                let record = usc_refute_poly_example(d)?;
                let ok = record.all_non_units && record.symbolic.scaled_leading_coeffs_nonzero;
                let doc = json!({
                    "command": "usc-check",
                    "params": {"mode": "poly-example", "degree_bound": d},
                    "report": to_value(&record),
                    "ok": ok,
                });
                emit(&output, &doc)?;
                return Ok((doc, ok));
            }
            let ring_spec = ring.ok_or_else(|| {
                Error::InvalidArgument("usc-check needs --ring, --poly-example, or --zero-ideal".into())
            })?;
            let components: Vec<QuotRing> = ring_spec
                .split('x')
                .map(|t| {
                    let n = BigInt::from_str(t.trim())
                        .map_err(|e| Error::InvalidArgument(format!("bad modulus '{t}': {e}")))?;
                    Ok(QuotRing::integers_mod(n))
                })
                .collect::<Result<_, Error>>()?;
            let product = ProductRing::new(components)?;
            let gen = match ideal_gen {
                None => product.zero(),
                Some(g) => {
                    let parts = parse_int_list(&g)?;
                    if parts.len() != product.components().len() {
                        return Err(Error::ShapeMismatch {
                            expected: format!("{} components", product.components().len()),
                            got: format!("{}", parts.len()),
                        });
                    }
                    parts
                        .into_iter()
                        .zip(product.components())
                        .map(|(v, q)| q.reduce(&RingElem::int(v)))
                        .collect()
                }
            };
            let report = usc_check_finite(&product, &gen, max_set_size, guard)?;
            let ok = report.verdict;
            let doc = json!({
                "command": "usc-check",
                "params": {"ring": ring_spec, "max_set_size": max_set_size, "guard": guard},
                "report": to_value(&report),
                "ok": ok,
            });
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::UscWitness {
            set,
            modulus,
            output,
        } => {
            let set_v = parse_int_list(&set)?;
            let w = usc_witness_z(&set_v, &BigInt::from(modulus))?;
            let doc = json!({
                "command": "usc-witness",
                "params": {"set": set, "modulus": modulus.to_string()},
                "b": w.b.to_string(),
                "coefficients": w.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            emit(&output, &doc)?;
            Ok((doc, true))
        }
        Command::SapCheck {
            group,
            k,
            modulus,
            guard,
            output,
        } => {
            let kind = parse_group(&group)?;
            let report = sap_check_small(kind, k, &BigInt::from(modulus), guard)?;
            let ok = report.ok;
            let doc = json!({
                "command": "sap-check",
                "params": {"group": group, "k": k, "modulus": modulus.to_string()},
                "report": to_value(&report),
                "ok": ok,
            });
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::GeDecompose {
            matrix,
            modulus,
            output,
        } => {
            let rows = parse_rows(&matrix)?;
            let ring = if modulus == 0 {
                QuotRing::base_ring(rowlift::exactring::BaseRing::Int)
            } else {
                QuotRing::integers_mod(BigInt::from(modulus))
            };
            let m = RMatrix::from_rows(ring, rows)?;
            let word = elementary_decompose(&m)?;
            let ok = word_to_matrix(&word) == m;
            let doc = json!({
                "command": "ge-decompose",
                "params": {"matrix": matrix, "modulus": modulus.to_string()},
                "word": jsonio::word_to_json(&word),
                "factors": word.len(),
                "round_trip": ok,
                "ok": ok,
            });
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::Lemma41Check {
            group,
            k,
            i,
            j,
            samples,
            seed,
            guard,
            output,
        } => {
            let kind = parse_group(&group)?;
            let report = lemma41_check(
                kind,
                k,
                &Ideal::from_int(i),
                &Ideal::from_int(j),
                samples,
                seed,
                guard,
            )?;
            let ok = report.ok;
            let doc = json!({
                "command": "lemma41-check",
                "params": {"group": group, "k": k, "i": i.to_string(), "j": j.to_string(),
                           "samples": samples, "seed": seed},
                "report": to_value(&report),
                "ok": ok,
            });
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::Verify { input, output } => {
            let raw = fs::read_to_string(&input)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", input.display())))?;
            let value: Value = serde_json::from_str(&raw).map_err(|e| Error::Json(e.to_string()))?;
            // accept either a bare certificate or a lift-sl/lift-sp document
            let cert_value = value.get("certificate").unwrap_or(&value);
            let cert = jsonio::certificate_from_json(cert_value)?;
            let ok = verify_certificate(&cert);
            let doc = json!({
                "command": "verify",
                "params": {"input": input.display().to_string()},
                "ok": ok,
            });
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
        Command::Surjectivity {
            group,
            k,
            ideals,
            level,
            weights,
            sample,
            seed,
            guard,
            output,
        } => {
            let kind = parse_group(&group)?;
            let n = kind.dimension(k);
            let ideals_v = parse_ideals(&ideals)?;
            if ideals_v.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n} ideals for {group} with k={k}"),
                    got: format!("{}", ideals_v.len()),
                });
            }
            let weight_rows = parse_weight_rows(&weights)?;
            if weight_rows.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n} weight rows"),
                    got: format!("{}", weight_rows.len()),
                });
            }
            let level_v = Ideal::from_int(level);
            // the projective spaces use tuples of length n (k+1 for SL
            // rows of SL_{k+1}; 2k for Sp rows)
            let mut spaces: Vec<Vec<ProjPoint>> = Vec::with_capacity(n);
            for (ideal, w) in ideals_v.iter().zip(&weight_rows) {
                if w.len() != n {
                    return Err(Error::ShapeMismatch {
                        expected: format!("{n} weights per row"),
                        got: format!("{}", w.len()),
                    });
                }
                spaces.push(enumerate_pf(n - 1, w, ideal)?);
            }
            let total: u128 = spaces.iter().map(|s| s.len() as u128).product();
            if total > guard as u128 {
                return Err(Error::GuardExceeded {
                    checked: total,
                    cap: guard as u128,
                });
            }
            let lift_target = |choice: &[usize]| -> Result<bool, Error> {
                let rows: Vec<Vec<RingElem>> = choice
                    .iter()
                    .zip(&spaces)
                    .map(|(idx, space)| space[*idx].rep().expect("proper ideal").to_vec())
                    .collect();
                let cert = match kind {
                    GroupKind::Sl => omega_lift(&rows, &ideals_v, &level_v)?,
                    GroupKind::Sp => sigma_lift(&rows, &ideals_v, &level_v)?,
                };
                Ok(verify_certificate(&cert))
            };
            let mut attempted: u64 = 0;
            let mut lifted: u64 = 0;
            match sample {
                Some(count) => {
                    use rand::Rng;
                    use rand::SeedableRng;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
                        seed.expect("clap enforces --seed with --sample"),
                    );
                    for _ in 0..count {
                        let choice: Vec<usize> = spaces
                            .iter()
                            .map(|s| rng.gen_range(0..s.len()))
                            .collect();
                        attempted += 1;
                        if lift_target(&choice)? {
                            lifted += 1;
                        }
                    }
                }
                None => {
                    let mut odometer = vec![0usize; n];
                    'outer: loop {
                        attempted += 1;
                        if lift_target(&odometer)? {
                            lifted += 1;
                        }
                        let mut pos = n;
                        loop {
                            if pos == 0 {
                                break 'outer;
                            }
                            pos -= 1;
                            odometer[pos] += 1;
                            if odometer[pos] < spaces[pos].len() {
                                break;
                            }
                            odometer[pos] = 0;
                        }
                    }
                }
            }
            let ok = lifted == attempted;
            let doc = json!({
                "command": "surjectivity",
                "params": {"group": group, "k": k, "ideals": ideals, "level": level.to_string(),
                           "weights": weights, "sample": sample, "seed": seed},
                "space_sizes": spaces.iter().map(|s| s.len()).collect::<Vec<_>>(),
                "targets": attempted,
                "lifted": lifted,
                "ok": ok,
            });
            emit(&output, &doc)?;
            Ok((doc, ok))
        }
    }
}
