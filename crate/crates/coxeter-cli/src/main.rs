//! coxeter: exact computations for positively weighted Coxeter systems.
//!
//! Every subcommand reads the system from a JSON config (--config),
//! writes a report to stdout or --out, and exits 0 on success, 2 on
//! invalid input, 3 on an invariant violation or bound failure, 4 when
//! a budget stopped the computation early. Reports are deterministic:
//! the same config and flags produce byte-identical output.

use clap::{Parser, Subcommand, ValueEnum};
use coxeter_core::{
    aggregate_expansion, bound_report, build_context, construct_chain, element_from_word,
    enumerate_elements, enumerate_expansion, enumerate_positive_roots, max_f_degree,
    max_intersecting_clique, n_weighted, structure_constants, validate_sequence, verify_bound,
    Bond, ConstructionError, CoxeterSystem, LaurentPoly, RunConfig, SequenceError,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_INVALID: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "coxeter",
    version,
    about = "Exact Hecke products, hyperplane chains, and intersecting-set bounds \
             for weighted Coxeter systems"
)]
struct Cli {
    /// Path to the system configuration (JSON: rank, matrix, weights)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply T_x T_y and print the coefficient of every T_z
    Mult {
        /// word for x: comma-separated 1-based generators, or "e"
        #[arg(long)]
        x: String,
        /// word for y
        #[arg(long)]
        y: String,
    },
    /// List the subsequence expansion of T_x T_y term by term
    Expand {
        #[arg(long)]
        x: String,
        /// reduced word for y (positions are indexed into this word)
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Run the inductive hyperplane-chain construction for one instance
    Construct {
        #[arg(long)]
        x: String,
        /// reduced word for y
        #[arg(long)]
        y: String,
        /// chosen positions: comma-separated 1-based indices into y
        #[arg(long)]
        indices: String,
    },
    /// Check the degree bound over all pairs up to a length cap
    Verify {
        #[arg(long)]
        length_cap: usize,
        /// bound to check against (default: largest finite-parabolic
        /// longest-element weight)
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Full bound report: parabolic maxima, palette, Ramsey upper
    /// bound, clique lower bound
    Bounds {
        #[arg(long, default_value_t = 6)]
        col_depth: usize,
        #[arg(long, default_value_t = 4)]
        clique_depth: usize,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// Maximum intersecting set among hyperplanes at bounded depth
    Clique {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// List group elements or positive roots
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// inclusive length cap (elements) or depth cap (roots)
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Elements,
    Roots,
}

/// A finished report plus the exit status it should carry (violations
/// and exhausted budgets are reported in-band, not as errors).
struct Outcome {
    report: Value,
    text: String,
    exit: u8,
}

struct CliError {
    exit: u8,
    code: &'static str,
    message: String,
    detail: Value,
}

impl CliError {
    fn invalid(code: &'static str, message: impl Into<String>) -> CliError {
        CliError {
            exit: EXIT_INVALID,
            code,
            message: message.into(),
            detail: Value::Null,
        }
    }

    fn object(&self) -> Value {
        json!({
            "error": {
                "code": self.code,
                "message": self.message,
                "detail": self.detail,
            }
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&outcome.report)
                        .expect("report serialization cannot fail");
                    s.push('\n');
                    s
                }
                Format::Text => outcome.text,
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!(
                            "{{\"error\":{{\"code\":\"io\",\"message\":{:?}}}}}",
                            e.to_string()
                        );
                        return ExitCode::from(EXIT_INVALID);
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::from(outcome.exit)
        }
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&err.object()).expect("error serialization")
            );
            ExitCode::from(err.exit)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let system = load_system(cli)?;
    match &cli.command {
        Command::Mult { x, y } => cmd_mult(&system, x, y),
        Command::Expand { x, y, budget } => cmd_expand(&system, x, y, *budget),
        Command::Construct { x, y, indices } => cmd_construct(&system, x, y, indices),
        Command::Verify {
            length_cap,
            bound,
            budget,
        } => cmd_verify(&system, *length_cap, *bound, *budget),
        Command::Bounds {
            col_depth,
            clique_depth,
            budget,
        } => cmd_bounds(&system, *col_depth, *clique_depth, *budget),
        Command::Clique { depth, budget } => cmd_clique(&system, *depth, *budget),
        Command::Enumerate { kind, cap, budget } => cmd_enumerate(&system, *kind, *cap, *budget),
    }
}

fn load_system(cli: &Cli) -> Result<Arc<CoxeterSystem>, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::invalid("config", "--config <path> is required"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid("io", format!("cannot read {}: {}", path.display(), e)))?;
    let cfg =
        RunConfig::from_json(&text).map_err(|e| CliError::invalid("config", e.to_string()))?;
    CoxeterSystem::from_config(&cfg).map_err(|e| CliError::invalid("config", e.to_string()))
}

/// Parse a comma-separated word of 1-based generator indices ("e" or
/// the empty string denote the identity) into 0-based indices.
fn parse_word(system: &CoxeterSystem, text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for part in t.split(',') {
        let g: usize = part.trim().parse().map_err(|_| {
            CliError::invalid(
                "bad-word",
                format!("{what}: '{part}' is not a generator index"),
            )
        })?;
        if g < 1 || g > system.rank() {
            return Err(CliError::invalid(
                "bad-word",
                format!("{what}: generator {g} out of range 1..={}", system.rank()),
            ));
        }
        word.push(g - 1);
    }
    Ok(word)
}

fn parse_positions(text: &str) -> Result<Vec<usize>, CliError> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| {
                CliError::invalid(
                    "bad-indices",
                    format!("indices: '{part}' is not a position"),
                )
            })
        })
        .collect()
}

fn word_str(word: &[u32]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|g| format!("s{g}"))
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn one_based(word: &[u8]) -> Vec<u32> {
    word.iter().map(|&g| g as u32 + 1).collect()
}

fn one_based_usize(word: &[usize]) -> Vec<u32> {
    word.iter().map(|&g| g as u32 + 1).collect()
}

/// Canonical echo of the system: the bond matrix with 0 for infinity,
/// plus the weights. Identical configs produce identical echoes.
fn system_echo(system: &CoxeterSystem) -> Value {
    let matrix: Vec<Vec<u64>> = (0..system.rank())
        .map(|s| {
            (0..system.rank())
                .map(|t| match system.bond(s, t) {
                    Bond::Finite(m) => m,
                    Bond::Infinite => 0,
                })
                .collect()
        })
        .collect();
    json!({
        "rank": system.rank(),
        "matrix": matrix,
        "weights": system.weights(),
    })
}

fn poly_json(f: &LaurentPoly) -> Value {
    serde_json::to_value(f).expect("polynomial serialization")
}

fn cmd_mult(system: &Arc<CoxeterSystem>, x: &str, y: &str) -> Result<Outcome, CliError> {
    let x_word = parse_word(system, x, "x")?;
    let y_word = parse_word(system, y, "y")?;
    let xe = element_from_word(system, &x_word);
    let ye = element_from_word(system, &y_word);
    let product = structure_constants(&xe, &ye);
    let degrees = max_f_degree(&xe, &ye);
    let nw = n_weighted(system) as i64;

    let terms: Vec<Value> = product
        .sorted_terms()
        .iter()
        .map(|(z, f)| {
            json!({
                "z": one_based(z.word()),
                "length": z.length(),
                "f": poly_json(f),
                "degree": f.degree(),
            })
        })
        .collect();

    let mut text = String::new();
    text.push_str(&format!(
        "T_x T_y with x = {}, y = {}\n",
        word_str(&one_based(xe.word())),
        word_str(&one_based(ye.word()))
    ));
    for (z, f) in product.sorted_terms() {
        text.push_str(&format!("  {}: {}\n", word_str(&one_based(z.word())), f));
    }
    text.push_str(&format!(
        "max degree {} at z = {} (largest index set: {})\n",
        degrees.degree,
        word_str(&one_based(degrees.witness_z.word())),
        degrees.p_max
    ));
    text.push_str(&format!(
        "bound n_weighted = {}: {}\n",
        nw,
        if degrees.degree <= nw {
            "within"
        } else {
            "EXCEEDED"
        }
    ));

    Ok(Outcome {
        report: json!({
            "command": "mult",
            "system": system_echo(system),
            "x": one_based(xe.word()),
            "y": one_based(ye.word()),
            "terms": terms,
            "max_degree": degrees.degree,
            "witness_z": one_based(degrees.witness_z.word()),
            "p_max": degrees.p_max,
            "n_weighted": nw,
            "within_bound": degrees.degree <= nw,
        }),
        text,
        exit: 0,
    })
}

fn cmd_expand(
    system: &Arc<CoxeterSystem>,
    x: &str,
    y: &str,
    budget: usize,
) -> Result<Outcome, CliError> {
    let x_word = parse_word(system, x, "x")?;
    let y_word = parse_word(system, y, "y")?;
    let xe = element_from_word(system, &x_word);
    if element_from_word(system, &y_word).length() != y_word.len() {
        return Err(CliError::invalid("bad-word", "y must be a reduced word"));
    }
    let expansion = enumerate_expansion(&xe, &y_word, budget);

    // the grouped expansion must reproduce the direct product exactly;
    // skipped when truncated (the partial sum would differ)
    let agreement = if expansion.truncated {
        Value::Null
    } else {
        let ye = element_from_word(system, &y_word);
        Value::Bool(aggregate_expansion(&expansion.items) == structure_constants(&xe, &ye))
    };

    let mut text = format!(
        "expansion of T_x T_y with x = {}, y = {} ({} terms{})\n",
        word_str(&one_based(xe.word())),
        word_str(&one_based_usize(&y_word)),
        expansion.len(),
        if expansion.truncated {
            ", TRUNCATED"
        } else {
            ""
        }
    );
    for t in &expansion.items {
        text.push_str(&format!(
            "  I = {:?}, z = {}, xi = {}\n",
            t.indices,
            word_str(&one_based(t.z.word())),
            t.xi
        ));
    }

    let exit = if expansion.truncated { EXIT_BUDGET } else { 0 };
    Ok(Outcome {
        report: json!({
            "command": "expand",
            "system": system_echo(system),
            "x": one_based(xe.word()),
            "y": one_based_usize(&y_word),
            "count": expansion.len(),
            "truncated": expansion.truncated,
            "aggregate_matches_direct": agreement,
            "terms": serde_json::to_value(&expansion.items).expect("term serialization"),
        }),
        text,
        exit,
    })
}

fn cmd_construct(
    system: &Arc<CoxeterSystem>,
    x: &str,
    y: &str,
    indices: &str,
) -> Result<Outcome, CliError> {
    let x_word = parse_word(system, x, "x")?;
    let y_word = parse_word(system, y, "y")?;
    let positions = parse_positions(indices)?;
    let xe = element_from_word(system, &x_word);

    let map_sequence_error = |e: SequenceError| CliError {
        exit: EXIT_INVALID,
        code: "sequence-malformed",
        message: e.to_string(),
        detail: Value::Null,
    };

    if !validate_sequence(&xe, &y_word, &positions).map_err(map_sequence_error)? {
        return Err(CliError {
            exit: EXIT_INVALID,
            code: "sequence-invalid",
            message: "the deletion-descent condition fails for these indices".into(),
            detail: json!({
                "x": one_based(xe.word()),
                "y": one_based_usize(&y_word),
                "indices": positions,
            }),
        });
    }

    let ctx = build_context(&xe, &y_word, &positions).map_err(|e| match e {
        ConstructionError::Sequence(se) => map_sequence_error(se),
        ConstructionError::SequenceInvalid { n } => CliError {
            exit: EXIT_INVALID,
            code: "sequence-invalid",
            message: format!("deletion condition fails at step {n}"),
            detail: Value::Null,
        },
        ConstructionError::Violation(v) => CliError {
            exit: EXIT_VIOLATION,
            code: "invariant-violation",
            message: v.to_string(),
            detail: serde_json::to_value(&v).expect("violation serialization"),
        },
    })?;

    let steps = construct_chain(&ctx).map_err(|v| CliError {
        exit: EXIT_VIOLATION,
        code: "invariant-violation",
        message: v.to_string(),
        detail: serde_json::to_value(&v).expect("violation serialization"),
    })?;

    let q_final = steps.last().map(|s| s.q.len()).unwrap_or(0);
    let mut text = format!(
        "chain for x = {}, y = {}, indices {:?}: {} steps\n",
        word_str(&one_based(xe.word())),
        word_str(&one_based_usize(&y_word)),
        positions,
        steps.len()
    );
    for step in &steps {
        text.push_str(&format!(
            "  step {}: |Q| = {}, cascade blocks {}, |B| = {}\n",
            step.n,
            step.q.len(),
            step.cascade.len(),
            step.b.len()
        ));
    }
    text.push_str(&format!("all invariants hold; final set size {q_final}\n"));

    Ok(Outcome {
        report: json!({
            "command": "construct",
            "system": system_echo(system),
            "x": one_based(xe.word()),
            "y": one_based_usize(&y_word),
            "indices": positions,
            "steps": serde_json::to_value(&steps).expect("step serialization"),
            "q_final_size": q_final,
        }),
        text,
        exit: 0,
    })
}

fn cmd_verify(
    system: &Arc<CoxeterSystem>,
    length_cap: usize,
    bound: Option<i64>,
    budget: usize,
) -> Result<Outcome, CliError> {
    let elements = enumerate_elements(system, length_cap, budget);
    let (n, source) = match bound {
        Some(b) => (b, "explicit"),
        None => (n_weighted(system) as i64, "n-weighted"),
    };
    let mut pairs = Vec::with_capacity(elements.len() * elements.len());
    for x in &elements.items {
        for y in &elements.items {
            pairs.push((x.clone(), y.clone()));
        }
    }
    let check = verify_bound(system, n, &pairs);
    let pass = check.violations.is_empty();

    let exit = if !pass {
        EXIT_VIOLATION
    } else if elements.truncated {
        EXIT_BUDGET
    } else {
        0
    };
    let text = format!(
        "degree bound {} ({}) over {} pairs (length cap {}{}): {}\nmax degree seen: {}\n",
        n,
        source,
        check.pairs_checked,
        length_cap,
        if elements.truncated {
            ", element budget EXHAUSTED"
        } else {
            ""
        },
        if pass { "PASS" } else { "FAIL" },
        check.max_degree_seen
    );

    Ok(Outcome {
        report: json!({
            "command": "verify",
            "system": system_echo(system),
            "length_cap": length_cap,
            "bound": n,
            "bound_source": source,
            "elements": elements.len(),
            "element_budget_exhausted": elements.truncated,
            "check": serde_json::to_value(&check).expect("check serialization"),
            "pass": pass,
        }),
        text,
        exit,
    })
}

fn cmd_bounds(
    system: &Arc<CoxeterSystem>,
    col_depth: usize,
    clique_depth: usize,
    budget: usize,
) -> Result<Outcome, CliError> {
    let report = bound_report(system, col_depth, clique_depth, budget);
    let exit = if !report.coherent {
        EXIT_VIOLATION
    } else if !report.clique.exhausted || report.col.truncated {
        EXIT_BUDGET
    } else {
        0
    };

    let upper = match report.n_prime.bound {
        coxeter_core::Bound::Finite(v) => v.to_string(),
        coxeter_core::Bound::Overflow => "overflow".to_string(),
    };
    let text = format!(
        "n_weighted = {}, n_unweighted = {}\n\
         palette size {} (last new value at depth {}{})\n\
         intersecting-set bounds: {} <= N'(W) <= {}{}\n\
         coherent: {}\n",
        report.n_weighted,
        report.n_unweighted,
        report.col.values.len(),
        report.col.last_new_depth,
        match report.col.stabilized_at {
            Some(_) => ", stabilized",
            None => ", NOT stabilized",
        },
        report.clique.size,
        upper,
        if report.n_prime.provisional {
            " (provisional)"
        } else {
            ""
        },
        report.coherent
    );

    Ok(Outcome {
        report: json!({
            "command": "bounds",
            "system": system_echo(system),
            "report": serde_json::to_value(&report).expect("report serialization"),
        }),
        text,
        exit,
    })
}

fn cmd_clique(
    system: &Arc<CoxeterSystem>,
    depth: usize,
    budget: usize,
) -> Result<Outcome, CliError> {
    let result = max_intersecting_clique(system, depth, budget);
    let exit = if result.exhausted { 0 } else { EXIT_BUDGET };
    let text = format!(
        "maximum intersecting set at depth {}: size {} of {} hyperplanes ({})\n",
        depth,
        result.size,
        result.vertex_count,
        if result.exhausted {
            "search exhausted"
        } else {
            "budget exhausted, lower bound only"
        }
    );
    Ok(Outcome {
        report: json!({
            "command": "clique",
            "system": system_echo(system),
            "result": serde_json::to_value(&result).expect("result serialization"),
        }),
        text,
        exit,
    })
}

fn cmd_enumerate(
    system: &Arc<CoxeterSystem>,
    kind: Kind,
    cap: usize,
    budget: usize,
) -> Result<Outcome, CliError> {
    let (items, truncated, count, kind_name) = match kind {
        Kind::Elements => {
            let e = enumerate_elements(system, cap, budget);
            let words: Vec<Vec<u32>> = e.items.iter().map(|w| one_based(w.word())).collect();
            (
                serde_json::to_value(&words).expect("word serialization"),
                e.truncated,
                e.len(),
                "elements",
            )
        }
        Kind::Roots => {
            let r = enumerate_positive_roots(system, cap, budget);
            (
                serde_json::to_value(&r.items).expect("root serialization"),
                r.truncated,
                r.len(),
                "roots",
            )
        }
    };
    let exit = if truncated { EXIT_BUDGET } else { 0 };
    let text = format!(
        "{count} {kind_name} up to cap {cap}{}\n",
        if truncated { " (budget exhausted)" } else { "" }
    );
    Ok(Outcome {
        report: json!({
            "command": "enumerate",
            "system": system_echo(system),
            "kind": kind_name,
            "cap": cap,
            "count": count,
            "truncated": truncated,
            "items": items,
        }),
        text,
        exit,
    })
}
