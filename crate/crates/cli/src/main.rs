//! Command-line front end: parses map expressions, runs the analyses, and
//! prints text or deterministic JSON.
//!
//! Exit codes: 0 on success, 1 on a mathematical negative (e.g. `check` on a
//! map that is not a planarization), 2 on input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planarize_core::catalog::{classify_quadric_image, verify_equivalence, EquivalenceWitness};
use planarize_core::error::Error;
use planarize_core::parse::{parse_map, parse_rational};
use planarize_core::planarity::{dual_map, implicitize, is_planarization};
use planarize_core::ratmap::RationalMap;
use planarize_core::report::{analyze, catalog_json, AnalyzeOptions, FieldMode, SCHEMA_VERSION};
use planarize_core::scalar::Rational;

#[derive(Parser)]
#[command(
    name = "planarize",
    version,
    about = "Exact analysis of rational maps P^2 -> P^3 that take lines to plane curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Rational,
    Complex,
}

#[derive(Args)]
struct MapArgs {
    /// Map expression, e.g. "[x^2 : x*y : y^2 : z^2]"
    map: Option<String>,
    /// Read maps from a file, one per line ('#' starts a comment)
    #[arg(long)]
    file: Option<PathBuf>,
    /// Emit a JSON document instead of text
    #[arg(long)]
    json: bool,
    /// Seed for all randomized sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximal degree tried by implicitization
    #[arg(long, default_value_t = 4)]
    dmax: usize,
    /// Classification field: the real classification keeps Phi1a/Phi1b apart
    #[arg(long, value_enum, default_value_t = FieldArg::Rational)]
    field: FieldArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// The map Phi
    map: String,
    /// The map Phi'
    other: String,
    /// 3x3 source change, rows separated by ';', entries by ','
    #[arg(long)]
    eta: String,
    /// 4x4 target change, rows separated by ';', entries by ','
    #[arg(long)]
    mu: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the map takes every line into a plane
    Check(MapArgs),
    /// Run the full analysis pipeline
    Analyze(MapArgs),
    /// Compute the dual planarization in line coordinates
    Dual(MapArgs),
    /// Compute implicit equations of the image surface
    Implicitize(MapArgs),
    /// Compute the base locus with multiplicities
    BaseLocus(MapArgs),
    /// Classify a quadratic map with quadric image into its normal form
    Classify(MapArgs),
    /// Print the built-in catalog of normal forms
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Verify a projective-equivalence witness: Phi = mu . Phi' . eta
    VerifyEquiv(VerifyArgs),
}

fn report_error(e: &Error) -> ExitCode {
    eprintln!("error: {}", e);
    match e {
        Error::Parse { .. }
        | Error::AllComponentsZero
        | Error::NonHomogeneous
        | Error::UnsupportedDegree(_)
        | Error::InvalidWitness => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn parse_one_map(text: &str) -> Result<RationalMap, Error> {
    parse_map(text)?.to_rational_map()
}

fn gather_inputs(args: &MapArgs) -> Result<Vec<String>, Error> {
    if let Some(path) = &args.file {
        let content = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            offset: 0,
            message: format!("cannot read {}: {}", path.display(), e),
        })?;
        Ok(content
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_string())
            .collect())
    } else if let Some(m) = &args.map {
        Ok(vec![m.clone()])
    } else {
        Err(Error::Parse {
            offset: 0,
            message: "provide a map expression or --file".into(),
        })
    }
}

/// Runs `f` on every input map; in batch mode JSON documents are emitted one
/// per line, in single mode pretty-printed.
fn for_each_map(
    args: &MapArgs,
    mut f: impl FnMut(&RationalMap, bool) -> Result<ExitCode, Error>,
) -> ExitCode {
    let inputs = match gather_inputs(args) {
        Ok(i) => i,
        Err(e) => return report_error(&e),
    };
    let batch = inputs.len() > 1;
    let mut worst = ExitCode::SUCCESS;
    for text in &inputs {
        match parse_one_map(text).and_then(|m| f(&m, batch)) {
            Ok(code) => {
                if code != ExitCode::SUCCESS && worst == ExitCode::SUCCESS {
                    worst = code;
                }
            }
            Err(e) => return report_error(&e),
        }
    }
    worst
}

fn emit_json(value: &serde_json::Value, batch: bool) {
    if batch {
        println!("{}", value);
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("json"));
    }
}

fn sub_report(kind: &str, body: serde_json::Value) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), serde_json::json!(SCHEMA_VERSION));
    map.insert("kind".into(), serde_json::json!(kind));
    if let serde_json::Value::Object(o) = body {
        for (k, v) in o {
            map.insert(k, v);
        }
    }
    serde_json::Value::Object(map)
}

fn parse_matrix(text: &str, n: usize) -> Result<Vec<Vec<Rational>>, Error> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != n {
        return Err(Error::Parse {
            offset: 0,
            message: format!("expected {} matrix rows separated by ';'", n),
        });
    }
    rows.iter()
        .map(|row| {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != n {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!("expected {} entries per row", n),
                });
            }
            entries.iter().map(|e| parse_rational(e)).collect()
        })
        .collect()
}

fn field_mode(f: FieldArg) -> FieldMode {
    match f {
        FieldArg::Rational => FieldMode::Rational,
        FieldArg::Complex => FieldMode::Complex,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(args) => for_each_map(&args, |map, batch| {
            let planar = is_planarization(map);
            if args.json {
                emit_json(
                    &sub_report(
                        "check",
                        serde_json::json!({
                            "degree": map.degree(),
                            "input": map.to_string(),
                            "planarization": planar,
                        }),
                    ),
                    batch,
                );
            } else {
                println!(
                    "planarization: {} (degree {})",
                    if planar { "yes" } else { "no" },
                    map.degree()
                );
            }
            Ok(if planar {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }),
        Command::Analyze(args) => {
            let options = AnalyzeOptions {
                seed: args.seed,
                dmax: args.dmax,
                field: field_mode(args.field),
            };
            for_each_map(&args, |map, batch| {
                let report = analyze(map, &options);
                if args.json {
                    emit_json(&report.to_json(), batch);
                } else {
                    print!("{}", report.to_text());
                    if batch {
                        println!();
                    }
                }
                Ok(ExitCode::SUCCESS)
            })
        }
        Command::Dual(args) => for_each_map(&args, |map, batch| {
            let dual = dual_map(map)?;
            if args.json {
                let comps: Vec<String> = dual.components.iter().map(|c| c.to_string()).collect();
                emit_json(
                    &sub_report(
                        "dual",
                        serde_json::json!({
                            "components": comps,
                            "degree": dual.degree,
                            "input": map.to_string(),
                        }),
                    ),
                    batch,
                );
            } else {
                println!(
                    "dual planarization (degree {}): [{} : {} : {} : {}]",
                    dual.degree,
                    dual.components[0],
                    dual.components[1],
                    dual.components[2],
                    dual.components[3]
                );
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::Implicitize(args) => for_each_map(&args, |map, batch| {
            let model = implicitize(map, args.dmax)?;
            if args.json {
                let eqs: Vec<String> = model.equations.iter().map(|e| e.to_string()).collect();
                emit_json(
                    &sub_report(
                        "implicitize",
                        serde_json::json!({
                            "degree": model.degree,
                            "equation": eqs[0],
                            "equations": eqs,
                            "imageDimension": model.image_dimension,
                            "input": map.to_string(),
                        }),
                    ),
                    batch,
                );
            } else {
                println!(
                    "image dimension {}, implicit degree {}",
                    model.image_dimension, model.degree
                );
                for e in &model.equations {
                    println!("  {} = 0", e);
                }
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::BaseLocus(args) => for_each_map(&args, |map, batch| {
            let locus = map.base_locus(args.seed);
            if args.json {
                let points: Vec<serde_json::Value> = locus
                    .points
                    .iter()
                    .map(|b| {
                        serde_json::json!({
                            "multiplicity": b.multiplicity,
                            "point": b.point.to_string(),
                        })
                    })
                    .collect();
                emit_json(
                    &sub_report(
                        "base-locus",
                        serde_json::json!({
                            "complete": locus.complete,
                            "input": map.to_string(),
                            "points": points,
                            "positiveDimensional": locus.positive_dimensional,
                            "weight": locus.weight,
                        }),
                    ),
                    batch,
                );
            } else {
                println!(
                    "base locus: weight {} (complete: {})",
                    locus.weight, locus.complete
                );
                for b in &locus.points {
                    println!("  {} with multiplicity {}", b.point, b.multiplicity);
                }
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::Classify(args) => for_each_map(&args, |map, batch| {
            let c = classify_quadric_image(map, args.seed)?;
            let label = match field_mode(args.field) {
                FieldMode::Rational => c.label.as_str(),
                FieldMode::Complex => c.label.complex_str(),
            };
            if args.json {
                let witness = c.witness.as_ref().map(|w| {
                    serde_json::json!({
                        "eta": w.eta.iter().map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "mu": w.mu.iter().map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })
                });
                emit_json(
                    &sub_report(
                        "classify",
                        serde_json::json!({
                            "input": map.to_string(),
                            "label": label,
                            "witness": witness,
                        }),
                    ),
                    batch,
                );
            } else {
                println!(
                    "classification: {} (witness: {})",
                    label,
                    if c.witness.is_some() {
                        "available"
                    } else {
                        "unavailable"
                    }
                );
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::Catalog { json } => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&catalog_json()).expect("json")
                );
            } else {
                for nf in planarize_core::catalog::catalog() {
                    println!("{:6} {}", nf.label.as_str(), nf.map);
                }
            }
            ExitCode::SUCCESS
        }
        Command::VerifyEquiv(args) => {
            let run = || -> Result<bool, Error> {
                let map = parse_one_map(&args.map)?;
                let other = parse_one_map(&args.other)?;
                let eta = parse_matrix(&args.eta, 3)?;
                let mu = parse_matrix(&args.mu, 4)?;
                let witness = EquivalenceWitness::from_rational(&eta, &mu);
                verify_equivalence(&map, &other, &witness)
            };
            match run() {
                Ok(equivalent) => {
                    if args.json {
                        emit_json(
                            &sub_report(
                                "verify-equiv",
                                serde_json::json!({ "equivalent": equivalent }),
                            ),
                            false,
                        );
                    } else {
                        println!("equivalent: {}", if equivalent { "yes" } else { "no" });
                    }
                    if equivalent {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => report_error(&e),
            }
        }
    }
}
