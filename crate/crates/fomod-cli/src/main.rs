//! `fomod`: invariants, moduli points and descent for rational maps of
//! degree 2 and 3, with JSON on standard output.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fomod::field::FieldElement;
use fomod::forms::split;
use fomod::inv2::invariants2;
use fomod::inv3::invariants3;
use fomod::moduli::{classify_tuple, validate2, validate3, wp_equal2, wp_equal3};
use fomod::poly::{identity2, Matrix2};
use fomod::reconstruct::{descend3, reconstruct2, DescentResult};
use serde_json::{json, Value};

use io::{CliError, CliResult, Point};

#[derive(Parser)]
#[command(name = "fomod", version, about = "Fields of moduli and models of rational maps of degree 2 and 3")]
struct Cli {
    /// Also print a readable summary on standard error.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a map, as a moduli point file.
    Invariants {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        map: PathBuf,
    },
    /// Automorphism stratum of a degree-3 point or map.
    Classify {
        #[arg(long, conflicts_with = "map", required_unless_present = "map")]
        point: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Check that a coordinate tuple is a moduli point.
    Validate {
        #[arg(long)]
        point: PathBuf,
    },
    /// Whether two tuples are the same weighted projective point.
    Equivalent {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    /// Decide whether a degree-3 point has a model over its field of
    /// definition and construct one.
    Descend {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long)]
        point: PathBuf,
        /// Side of the brute-force pass of the conic point search.
        #[arg(long, env = "FOMOD_HEIGHT_BOUND", default_value_t = 10_000)]
        height_bound: u64,
    },
    /// Model of a degree-2 point with trivial automorphism group.
    Reconstruct2 {
        #[arg(long)]
        point: PathBuf,
        /// Coefficients `w00,w01,w10,w11` of `W0 = w00 X0 + w01 X1`,
        /// `W1 = w10 X0 + w11 X1`; determinant 1.
        #[arg(long, value_delimiter = ',', num_args = 4)]
        w: Option<Vec<String>>,
    },
    /// Run the built-in identity checks.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

struct Output {
    json: Value,
    summary: String,
    code: u8,
}

fn ok(json: Value, summary: String) -> CliResult<Output> {
    Ok(Output { json, summary, code: 0 })
}

fn degree3(point: Point) -> CliResult<fomod::inv3::InvariantTuple3> {
    match point {
        Point::Degree3(t) => Ok(t),
        Point::Degree2(_) => Err(CliError::schema("this command needs a degree-3 point")),
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Invariants { degree, map } => {
            let (m, field) = io::read_map(map)?;
            if m.degree() != *degree {
                return Err(CliError::schema(format!("map has degree {}, --degree is {degree}", m.degree())));
            }
            let pair = split(&m);
            match degree {
                3 => {
                    let t = invariants3(&pair)?;
                    ok(io::point3_json(&t, field), format!("invariants (d, i, j, a, b, c) = {t}"))
                }
                2 => {
                    let t = invariants2(&pair)?;
                    ok(io::point2_json(&t, field), format!("invariants (s1, s2, s3, r) = {t}"))
                }
                d => Err(CliError::schema(format!("invariants are implemented in degrees 2 and 3, not {d}"))),
            }
        }
        Command::Classify { point, map } => {
            let t = match (point, map) {
                (Some(p), _) => degree3(io::read_point(p)?.0)?,
                (None, Some(m)) => {
                    let (m, _) = io::read_map(m)?;
                    invariants3(&split(&m))?
                }
                (None, None) => unreachable!("clap requires one of --point, --map"),
            };
            let s = classify_tuple(&t);
            ok(
                json!({"schema": 1, "stratum": s.name(), "dimension": s.dimension()}),
                format!("stratum {} (dimension {})", s.name(), s.dimension()),
            )
        }
        Command::Validate { point } => {
            let status = match io::read_point(point)?.0 {
                Point::Degree3(t) => validate3(&t),
                Point::Degree2(t) => validate2(&t),
            };
            ok(json!({"schema": 1, "status": status.name()}), format!("status: {}", status.name()))
        }
        Command::Equivalent { first, second } => {
            let (p, fp) = io::read_point(first)?;
            let (q, fq) = io::read_point(second)?;
            if fp != fq {
                return Err(fomod::Error::FieldMismatch(format!("{fp} vs {fq}; declare both files over the same field")).into());
            }
            let eq = match (&p, &q) {
                (Point::Degree3(a), Point::Degree3(b)) => wp_equal3(a, b)?,
                (Point::Degree2(a), Point::Degree2(b)) => wp_equal2(a, b)?,
                _ => return Err(CliError::schema("the two points have different degrees")),
            };
            ok(json!({"schema": 1, "equivalent": eq}), format!("equivalent: {eq}"))
        }
        Command::Descend { degree, point, height_bound } => {
            if *degree != 3 {
                return Err(CliError::schema("descend works in degree 3; use reconstruct2 for degree 2"));
            }
            let (p, field) = io::read_point(point)?;
            let t = degree3(p)?;
            let r = descend3(&t, *height_bound)?;
            Ok(descent_output(&r, field))
        }
        Command::Reconstruct2 { point, w } => {
            let (p, field) = io::read_point(point)?;
            let Point::Degree2(t) = p else { return Err(CliError::schema("reconstruct2 needs a degree-2 point")) };
            let w: Matrix2 = match w {
                None => identity2(),
                Some(v) => {
                    let e: Vec<FieldElement> = v
                        .iter()
                        .map(|s| FieldElement::parse(s, field).map_err(|e| CliError::schema(e.to_string())))
                        .collect::<CliResult<_>>()?;
                    [[e[0].clone(), e[1].clone()], [e[2].clone(), e[3].clone()]]
                }
            };
            let pair = reconstruct2(&t, &w)?;
            let model = io::model_json(&pair);
            let summary = format!("model f = {}, g = {}", model["f"], model["g"]);
            ok(json!({"schema": 1, "outcome": "model", "model": model}), summary)
        }
        Command::Selftest { seed, trials } => {
            let checks = fomod::selftest::run(*seed, *trials);
            let passed = checks.iter().all(|c| c.passed);
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "trials": c.trials, "detail": c.detail}))
                .collect();
            let summary = checks
                .iter()
                .map(|c| format!("{} {} ({} trials){}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.trials, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output { json: json!({"schema": 1, "passed": passed, "checks": list}), summary, code: if passed { 0 } else { 1 } })
        }
    }
}

fn descent_output(r: &DescentResult, field: fomod::field::FieldDescriptor) -> Output {
    let (json, summary) = match r {
        DescentResult::Model { pair, field: model_field, route } => (
            json!({"outcome": "model", "route": route, "field": model_field.to_string(), "model": io::model_json(pair)}),
            format!("model over {model_field} via {route}"),
        ),
        DescentResult::Obstruction { conic, certificate } => (
            json!({
                "outcome": "obstruction",
                "conic": io::conic_json(conic),
                "certificate": certificate.kind(),
                "certificate_detail": io::certificate_json(certificate),
            }),
            format!("no model over {field}: the conic {conic} has no rational point ({})", certificate.kind()),
        ),
        DescentResult::NeedsExtension { pair, discriminant, conic, decision } => (
            json!({
                "outcome": "needs_extension",
                "discriminant": discriminant,
                "model": io::model_json(pair),
                "conic": io::conic_json(conic),
                "conic_search": io::search_json(decision),
            }),
            format!("model over Q(sqrt({discriminant})); attached conic {conic}"),
        ),
        DescentResult::SearchExhausted { conic, height_bound, diagnostic } => (
            json!({
                "outcome": "search_exhausted",
                "conic": io::conic_json(conic),
                "height_bound": height_bound,
                "diagnostic": diagnostic,
            }),
            format!("undecided: {diagnostic}"),
        ),
    };
    let mut json = json;
    json["schema"] = json!(1);
    Output { json, summary, code: 0 }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, summary, code) = match run(&cli) {
        Ok(out) => (out.json, Some(out.summary), out.code),
        Err(e) => (e.to_json(), None, e.exit_code() as u8),
    };
    println!("{}", serde_json::to_string(&json).expect("serializable"));
    if cli.human {
        if let Some(s) = summary {
            eprintln!("{s}");
        }
    }
    ExitCode::from(code)
}
