//! Command-line front end: diagrams, Duflo-Serganova factors,
//! superdimensions, forests, duals, blocks, enumeration and the verification
//! sweep.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 internal invariant breach.

use clap::{Parser, Subcommand, ValueEnum};
use periplectic::cap::{caps, CapRef};
use periplectic::ds::{ds, ds_iterate, signed_multiset, SimpleModule};
use periplectic::duality::{club, dagger, dagger_via_dab, star};
use periplectic::forest::{block_index, forest, is_worthy, sdim, worthiness_witness};
use periplectic::json::{
    arrows_json, ds_json, forest_json, CapJson, CapRefJson, CapsJson, DiagramJson, ReportJson,
};
use periplectic::oracle::{heap_ordering_count, sdim_recursive, verify_corpus};
use periplectic::render::{render_ascii, render_svg, Charset, DiagramStyle, SvgOptions};
use periplectic::translation::theta_candidate;
use periplectic::weight::{corpus_size, enumerate_diagrams, DominantWeight, WeightDiagram};
use serde::Serialize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

const DEFAULT_SPAN_LIMIT: u128 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "periplectic",
    version,
    about = "Weight diagram combinatorics for p(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Ascii,
    Svg,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Show {
    Caps,
    Arrows,
    Balls,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SdimMethod {
    Forest,
    Recursive,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DualOp {
    Club,
    Star,
    Dagger,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumFilter {
    Worthy,
    #[value(name = "simple-ds")]
    SimpleDs,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a weight diagram with caps, arrows or bare balls.
    Diagram {
        weight: String,
        #[arg(long, value_enum, default_value = "caps")]
        show: Show,
        #[arg(long, value_enum, default_value = "ascii")]
        format: DiagramFormat,
        /// Plain-ASCII arcs instead of box-drawing characters.
        #[arg(long)]
        plain: bool,
    },
    /// Composition factors under the Duflo-Serganova functor.
    Ds {
        weight: String,
        /// Apply the functor this many times and report the multiset.
        #[arg(long)]
        iterate: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Superdimension by the forest formula, the rank recursion, or both.
    Sdim {
        weight: String,
        #[arg(long, value_enum, default_value = "both")]
        method: SdimMethod,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The rooted forest of a worthy weight.
    Forest {
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Worthiness, with the offending cap as a witness when unworthy.
    Worthy {
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Diagram duals: club, star, or dagger (optionally via ball pushing).
    Dual {
        weight: String,
        #[arg(long, value_enum)]
        op: DualOp,
        /// Compute dagger by the ball-pushing rewriting system.
        #[arg(long, value_parser = ["dab"])]
        via: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Block index of the weight.
    Block {
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The distinguished translation-functor factor at position i.
    Translate {
        weight: String,
        #[arg(short)]
        i: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stream the normalized diagram corpus of one rank.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        span: i64,
        #[arg(long, value_enum)]
        filter: Option<EnumFilter>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every oracle cross-check over the exhaustive corpus.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 12)]
        span: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum CliError {
    Input(String),
    Verification(String),
}

impl From<periplectic::Error> for CliError {
    fn from(e: periplectic::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match catch_unwind(AssertUnwindSafe(|| run(cli.command))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CliError::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(CliError::Verification(msg))) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("internal invariant breach");
            ExitCode::from(3)
        }
    }
}

/// Accepts coefficients ("0,0,1") or ball positions prefixed by @ ("@0,1,3").
fn parse_weight(text: &str) -> Result<WeightDiagram, CliError> {
    if text.starts_with('@') {
        Ok(WeightDiagram::parse(text)?)
    } else {
        Ok(DominantWeight::parse(text)?.diagram())
    }
}

fn span_limit() -> u128 {
    std::env::var("PERIPLECTIC_SPAN_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SPAN_LIMIT)
}

fn check_corpus_budget(n_max: usize, span: i64) -> Result<(), CliError> {
    let mut total: u128 = 0;
    for n in 1..=n_max {
        if span >= n as i64 {
            total += corpus_size(n, span);
        }
    }
    let limit = span_limit();
    if total > limit {
        return Err(CliError::Input(format!(
            "corpus of {total} diagrams exceeds PERIPLECTIC_SPAN_LIMIT ({limit})"
        )));
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

#[derive(Serialize)]
struct SdimJson {
    input: Vec<i64>,
    forest: Option<String>,
    recursive: Option<String>,
}

#[derive(Serialize)]
struct WorthyJson {
    input: Vec<i64>,
    worthy: bool,
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct WitnessJson {
    cap: CapRefJson,
    odd_successors: Vec<CapJson>,
}

#[derive(Serialize)]
struct BlockJson {
    input: Vec<i64>,
    block: i64,
}

#[derive(Serialize)]
struct TranslateJson {
    input: Vec<i64>,
    i: i64,
    factor: Option<ModuleJson>,
}

#[derive(Serialize)]
struct ModuleJson {
    weight: Vec<i64>,
    parity: u8,
}

#[derive(Serialize)]
struct IterateJson {
    input: Vec<i64>,
    depth: usize,
    factors: Vec<IterateFactorJson>,
}

#[derive(Serialize)]
struct IterateFactorJson {
    weight: Vec<i64>,
    z: u8,
    count: u64,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Diagram {
            weight,
            show,
            format,
            plain,
        } => {
            let d = parse_weight(&weight)?;
            let cd = caps(&d);
            let style = match show {
                Show::Caps => DiagramStyle::Caps,
                Show::Arrows => DiagramStyle::Arrows,
                Show::Balls => DiagramStyle::Balls,
            };
            match format {
                DiagramFormat::Ascii => {
                    let charset = if plain {
                        Charset::Ascii
                    } else {
                        Charset::Unicode
                    };
                    print!("{}", render_ascii(&cd, style, charset));
                }
                DiagramFormat::Svg => {
                    let opts = SvgOptions {
                        style,
                        ..SvgOptions::default()
                    };
                    print!("{}", render_svg(&cd, &opts));
                }
                DiagramFormat::Json => match show {
                    Show::Caps => print_json(&CapsJson::from(&cd)),
                    Show::Arrows => print_json(&arrows_json(&d)),
                    Show::Balls => print_json(&DiagramJson::from(&d)),
                },
            }
            Ok(())
        }

        Command::Ds {
            weight,
            iterate,
            format,
        } => {
            let d = parse_weight(&weight)?;
            let module = SimpleModule::even(d.weight());
            match iterate {
                None => {
                    let result = ds(&module);
                    match format {
                        Format::Json => print_json(&ds_json(&module, &result)),
                        Format::Text => {
                            for f in &result.factors {
                                println!(
                                    "z={} removed_ball={} weight={}",
                                    f.parity, f.removed_ball, f.weight
                                );
                            }
                        }
                    }
                }
                Some(k) => {
                    let factors = ds_iterate(&module, k)?;
                    match format {
                        Format::Json => print_json(&IterateJson {
                            input: module.weight.coeffs().to_vec(),
                            depth: k,
                            factors: factors
                                .iter()
                                .map(|f| IterateFactorJson {
                                    weight: f.weight.coeffs().to_vec(),
                                    z: f.parity.as_u8(),
                                    count: f.count,
                                })
                                .collect(),
                        }),
                        Format::Text => {
                            for f in &factors {
                                println!("z={} count={} weight={}", f.parity, f.count, f.weight);
                            }
                            for (w, coeff) in signed_multiset(&factors) {
                                println!("signed {coeff:+} weight={w}");
                            }
                        }
                    }
                }
            }
            Ok(())
        }

        Command::Sdim {
            weight,
            method,
            format,
        } => {
            let d = parse_weight(&weight)?;
            let by_forest = matches!(method, SdimMethod::Forest | SdimMethod::Both)
                .then(|| sdim(&SimpleModule::even(d.weight())));
            let by_recursion = matches!(method, SdimMethod::Recursive | SdimMethod::Both)
                .then(|| sdim_recursive(&d));
            match format {
                Format::Json => print_json(&SdimJson {
                    input: d.weight().coeffs().to_vec(),
                    forest: by_forest.as_ref().map(|v| v.to_string()),
                    recursive: by_recursion.as_ref().map(|v| v.to_string()),
                }),
                Format::Text => {
                    if let Some(v) = &by_forest {
                        println!("forest: {v}");
                    }
                    if let Some(v) = &by_recursion {
                        println!("recursive: {v}");
                    }
                }
            }
            if let (Some(a), Some(b)) = (&by_forest, &by_recursion) {
                if a != b {
                    return Err(CliError::Verification(format!(
                        "methods disagree: forest {a}, recursive {b}"
                    )));
                }
            }
            Ok(())
        }

        Command::Forest { weight, format } => {
            let d = parse_weight(&weight)?;
            let f = forest(&caps(&d))?;
            match format {
                Format::Json => print_json(&forest_json(&f)),
                Format::Text => {
                    for (i, (node, parent)) in f.nodes.iter().zip(&f.parent).enumerate() {
                        let parent = match parent {
                            Some(p) => p.to_string(),
                            None => "-".to_string(),
                        };
                        println!(
                            "node {i}: even={} odd={} parent={parent}",
                            node.even_cap, node.odd_cap
                        );
                    }
                    println!("|F| = {}", f.size());
                    println!("F! = {}", f.factorial());
                    println!("heap orderings = {}", heap_ordering_count(&f)?);
                    println!("sdim = {}", f.heap_count_formula());
                }
            }
            Ok(())
        }

        Command::Worthy { weight, format } => {
            let d = parse_weight(&weight)?;
            let cd = caps(&d);
            let witness = worthiness_witness(&cd);
            match format {
                Format::Json => print_json(&WorthyJson {
                    input: d.weight().coeffs().to_vec(),
                    worthy: witness.is_none(),
                    witness: witness.as_ref().map(|(cap, odd)| WitnessJson {
                        cap: CapRefJson::from(cap),
                        odd_successors: odd.iter().map(CapJson::from).collect(),
                    }),
                }),
                Format::Text => match &witness {
                    None => println!("worthy: true"),
                    Some((cap, odd)) => {
                        println!("worthy: false");
                        let caps: Vec<String> = odd.iter().map(|c| c.to_string()).collect();
                        let name = match cap {
                            CapRef::Virtual => "virtual cap".to_string(),
                            CapRef::Cap(c) => format!("cap {c}"),
                        };
                        println!("witness: {name} with odd successors {}", caps.join(", "));
                    }
                },
            }
            Ok(())
        }

        Command::Dual {
            weight,
            op,
            via,
            format,
        } => {
            let d = parse_weight(&weight)?;
            if via.is_some() && op != DualOp::Dagger {
                return Err(CliError::Input("--via dab only applies to dagger".into()));
            }
            let out = match (op, via) {
                (DualOp::Club, _) => club(&d),
                (DualOp::Star, _) => star(&d),
                (DualOp::Dagger, None) => dagger(&d),
                (DualOp::Dagger, Some(_)) => dagger_via_dab(&d),
            };
            match format {
                Format::Json => print_json(&DiagramJson::from(&out)),
                Format::Text => println!("{out}"),
            }
            Ok(())
        }

        Command::Block { weight, format } => {
            let d = parse_weight(&weight)?;
            let k = block_index(&d);
            match format {
                Format::Json => print_json(&BlockJson {
                    input: d.weight().coeffs().to_vec(),
                    block: k,
                }),
                Format::Text => println!("block = {k}"),
            }
            Ok(())
        }

        Command::Translate { weight, i, format } => {
            let d = parse_weight(&weight)?;
            let module = SimpleModule::even(d.weight());
            let factor = theta_candidate(&module, i);
            match format {
                Format::Json => print_json(&TranslateJson {
                    input: d.weight().coeffs().to_vec(),
                    i,
                    factor: factor.as_ref().map(|m| ModuleJson {
                        weight: m.weight.coeffs().to_vec(),
                        parity: m.parity.as_u8(),
                    }),
                }),
                Format::Text => match factor {
                    None => println!("annihilated"),
                    Some(m) => println!("z={} weight={}", m.parity, m.weight),
                },
            }
            Ok(())
        }

        Command::Enumerate {
            n,
            span,
            filter,
            format,
        } => {
            if n >= 1 && span >= n as i64 {
                check_corpus_budget(n, span)?;
            }
            for d in enumerate_diagrams(n, span)? {
                let keep = match filter {
                    None => true,
                    Some(EnumFilter::Worthy) => is_worthy(&caps(&d)),
                    Some(EnumFilter::SimpleDs) => {
                        periplectic::ds::ds_is_simple(&SimpleModule::even(d.weight()))
                    }
                };
                if !keep {
                    continue;
                }
                match format {
                    Format::Json => print_json(&DiagramJson::from(&d)),
                    Format::Text => println!("{d}"),
                }
            }
            Ok(())
        }

        Command::Verify {
            n_max,
            span,
            jobs,
            format,
        } => {
            check_corpus_budget(n_max, span)?;
            let report = verify_corpus(n_max, span, jobs)?;
            match format {
                Format::Json => print_json(&ReportJson::from(&report)),
                Format::Text => {
                    println!("checked {} diagrams", report.checked);
                    for f in &report.failures {
                        println!(
                            "FAIL {} {}: expected {}, got {}",
                            f.diagram, f.property, f.expected, f.got
                        );
                    }
                    if report.is_clean() {
                        println!("all properties hold");
                    }
                }
            }
            if !report.is_clean() {
                return Err(CliError::Verification(format!(
                    "{} failures",
                    report.failures.len()
                )));
            }
            Ok(())
        }
    }
}
