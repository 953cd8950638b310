//! Command-line front end: validate decorated-graph documents, compute
//! norm and character invariants, evaluate circle-bundle genus bounds, and
//! generate random corpora.
//!
//! Every run prints a single JSON object on stdout (the corpus command
//! streams one document per line). Exit codes: 0 success, 1 domain error,
//! 2 usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use graphnorm::abelian::{FgAbelianGroup, GroupElement};
use graphnorm::bundle::{
    baldridge_sum, bound_rhs, limit_certificate, separating_k, sw_gate_satisfied, twist_euler,
    BundleClass, BundleError, SWFunction, SWFunctionDoc, DEFAULT_SEPARATING_CAP,
};
use graphnorm::corpus::random_composite_graph;
use graphnorm::covers::{glue_character, CoverError, GlueOutcome};
use graphnorm::document::{parse_graph, DocumentError, GraphDocument};
use graphnorm::manifold::{DecoratedGraph, Homology};
use graphnorm::norms::{
    smallest_admissible_modulus, thurston_norm, verify_norm_equality, AlphaSpec, NormError,
    SigmaSpec,
};

#[derive(Parser)]
#[command(
    name = "graphnorm",
    version,
    about = "Exact invariants of combinatorially presented graph manifolds"
)]
struct Cli {
    /// Indent JSON output (ignored by the corpus stream)
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph document and classify the presented manifold
    Validate { path: PathBuf },
    /// Thurston norm and twisted torsion width for a class and character
    Invariants {
        path: PathBuf,
        /// Class data: "fibres=v1,v2,..." (one value per block, unvalidated)
        /// or "class=v1,...,vn" (one value per homology generator, checked
        /// against the gluing relations)
        #[arg(long)]
        sigma: String,
        /// Character modulus; defaults to the smallest admissible one
        #[arg(long)]
        d: Option<i64>,
    },
    /// Minimal-genus lower bound for a circle bundle over the manifold
    Bundle {
        path: PathBuf,
        /// Same forms as for invariants
        #[arg(long)]
        sigma: String,
        /// Self-intersection number of the class upstairs
        #[arg(long = "self-intersection", allow_negative_numbers = true)]
        self_intersection: i64,
        /// Finitely supported function file (JSON) for the orbit sums
        #[arg(long, requires = "euler", requires = "gamma")]
        sw: Option<PathBuf>,
        /// Euler class, "a,b,..." or "a,b;t1,..." with torsion coordinates
        #[arg(long, requires = "sw")]
        euler: Option<String>,
        /// Loop class to twist along, same syntax as --euler
        #[arg(long, requires = "sw")]
        gamma: Option<String>,
        /// Candidate complexity for the limit certificate; defaults to the
        /// computed bound
        #[arg(long = "chi-candidate", allow_negative_numbers = true)]
        chi_candidate: Option<i64>,
        /// Geometric intersection count for the limit certificate
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
    },
    /// Stream deterministic pseudo-random composite graphs, one per line
    Corpus {
        /// Blocks per graph, at least 2
        #[arg(long)]
        blocks: usize,
        /// Generator seed; the GRAPHNORM_SEED environment variable wins
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of graphs to emit
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

struct Failure {
    payload: Value,
    exit: u8,
}

fn fail(exit: u8, code: &str, mut details: Value) -> Failure {
    let obj = details.as_object_mut().expect("details are an object");
    obj.insert("code".into(), Value::String(code.into()));
    Failure {
        payload: json!({ "error": details }),
        exit,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (payload, exit) = match run(&cli.command) {
        Ok((payload, exit)) => (payload, exit),
        Err(f) => (Some(f.payload), f.exit),
    };
    if let Some(payload) = payload {
        let rendered = if cli.pretty {
            serde_json::to_string_pretty(&payload)
        } else {
            serde_json::to_string(&payload)
        }
        .expect("reports serialize");
        println!("{rendered}");
    }
    ExitCode::from(exit)
}

fn run(command: &Command) -> Result<(Option<Value>, u8), Failure> {
    match command {
        Command::Validate { path } => cmd_validate(path),
        Command::Invariants { path, sigma, d } => cmd_invariants(path, sigma, *d),
        Command::Bundle {
            path,
            sigma,
            self_intersection,
            sw,
            euler,
            gamma,
            chi_candidate,
            m,
        } => cmd_bundle(
            path,
            sigma,
            *self_intersection,
            sw.as_deref(),
            euler.as_deref(),
            gamma.as_deref(),
            *chi_candidate,
            *m,
        ),
        Command::Corpus {
            blocks,
            seed,
            count,
        } => cmd_corpus(*blocks, *seed, *count),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        fail(
            2,
            "IO_ERROR",
            json!({ "path": path.display().to_string(), "message": e.to_string() }),
        )
    })
}

fn document_failure(err: DocumentError) -> Failure {
    match err {
        DocumentError::Parse {
            line,
            column,
            message,
        } => fail(
            2,
            "PARSE_ERROR",
            json!({ "line": line, "column": column, "message": message }),
        ),
        DocumentError::Schema { field, message } => fail(
            2,
            "SCHEMA_ERROR",
            json!({ "field": field, "message": message }),
        ),
    }
}

fn load_graph(path: &Path) -> Result<DecoratedGraph, Failure> {
    parse_graph(&read_file(path)?).map_err(document_failure)
}

fn require_composite(g: &DecoratedGraph) -> Result<(), Failure> {
    let ty = g.classify();
    if ty.composite {
        Ok(())
    } else {
        Err(fail(
            1,
            "NOT_COMPOSITE",
            json!({ "reasons": serde_json::to_value(&ty.reasons).unwrap() }),
        ))
    }
}

fn cmd_validate(path: &Path) -> Result<(Option<Value>, u8), Failure> {
    let g = load_graph(path)?;
    let structure = g.validate_structure();
    let ty = g.classify();
    let exit = u8::from(!ty.composite);
    Ok((
        Some(json!({
            "structure": serde_json::to_value(&structure).unwrap(),
            "type": serde_json::to_value(&ty).unwrap(),
        })),
        exit,
    ))
}

enum ParsedSigma {
    Fibres(Vec<i64>),
    Class(Vec<i64>),
}

fn parse_int_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>().map_err(|_| {
                fail(
                    2,
                    "USAGE_ERROR",
                    json!({ "message": format!("not an integer: {s:?}") }),
                )
            })
        })
        .collect()
}

fn parse_sigma_arg(text: &str) -> Result<ParsedSigma, Failure> {
    let usage = || {
        fail(
            2,
            "USAGE_ERROR",
            json!({
                "message": "expected --sigma fibres=v1,v2,... or --sigma class=v1,...,vn"
            }),
        )
    };
    let (kind, rest) = text.split_once('=').ok_or_else(usage)?;
    let values = parse_int_list(rest)?;
    match kind.trim() {
        "fibres" => Ok(ParsedSigma::Fibres(values)),
        "class" => Ok(ParsedSigma::Class(values)),
        _ => Err(usage()),
    }
}

fn resolve_sigma(h: &Homology, parsed: ParsedSigma) -> Result<(SigmaSpec, Value), Failure> {
    match parsed {
        ParsedSigma::Fibres(values) => {
            let info = json!({ "kind": "fibres", "values": values, "validated": false });
            Ok((SigmaSpec::FibreValues(values), info))
        }
        ParsedSigma::Class(values) => {
            let class = h.cohomology_class(&values).map_err(|e| {
                fail(1, "VALIDATION_ERROR", json!({ "message": e.to_string() }))
            })?;
            let info = json!({ "kind": "class", "values": values, "validated": true });
            Ok((SigmaSpec::Class(class), info))
        }
    }
}

fn cover_failure(err: CoverError, g: &DecoratedGraph) -> Failure {
    match err {
        CoverError::NotCoprime { torus, c, modulus } => fail(
            1,
            "NOT_COPRIME",
            json!({
                "torus": torus.0,
                "c": c,
                "modulus": modulus,
                "suggested_modulus": smallest_admissible_modulus(g),
            }),
        ),
        CoverError::NotComposite { reasons } => fail(
            1,
            "NOT_COMPOSITE",
            json!({ "reasons": serde_json::to_value(&reasons).unwrap() }),
        ),
        CoverError::BadModulus(d) => fail(1, "BAD_MODULUS", json!({ "modulus": d })),
        other => fail(1, "VALIDATION_ERROR", json!({ "message": other.to_string() })),
    }
}

fn norm_failure(err: NormError) -> Failure {
    match err {
        NormError::NotComposite { reasons } => fail(
            1,
            "NOT_COMPOSITE",
            json!({ "reasons": serde_json::to_value(&reasons).unwrap() }),
        ),
        NormError::NotAcyclic { block } => {
            fail(1, "NOT_ACYCLIC", json!({ "block": block.0 }))
        }
        NormError::BadModulus(d) => fail(1, "BAD_MODULUS", json!({ "modulus": d })),
        other => fail(1, "VALIDATION_ERROR", json!({ "message": other.to_string() })),
    }
}

fn h1_summary(h: &Homology) -> Value {
    let group = h.group();
    json!({
        "b1": group.free_rank(),
        "invariant_factors": group
            .torsion_factors()
            .iter()
            .map(|d| d.to_i64().expect("torsion factors fit in i64"))
            .collect::<Vec<i64>>(),
    })
}

/// The character driving the torsion: the glued one when the boundary
/// obstructions vanish, otherwise raw fibre residues 1 with the
/// obstruction attached.
fn choose_alpha(g: &DecoratedGraph, d: i64) -> Result<(AlphaSpec, Value), Failure> {
    match glue_character(g, d).map_err(|e| cover_failure(e, g))? {
        GlueOutcome::Character(alpha) => {
            let residues: Vec<i64> = alpha
                .residues()
                .iter()
                .map(|r| r.to_i64().expect("residues fit in i64"))
                .collect();
            let info = json!({
                "modulus": d,
                "source": "glued",
                "validated": true,
                "residues": residues,
            });
            Ok((AlphaSpec::Character(alpha), info))
        }
        GlueOutcome::Obstructed(report) => {
            let values = vec![1i64; g.blocks().len()];
            let info = json!({
                "modulus": d,
                "source": "fibre_fallback",
                "validated": false,
                "fibre_values": values,
                "obstruction": serde_json::to_value(&report).unwrap(),
            });
            Ok((
                AlphaSpec::FibreValues {
                    modulus: d,
                    values,
                },
                info,
            ))
        }
    }
}

fn cmd_invariants(
    path: &Path,
    sigma: &str,
    d: Option<i64>,
) -> Result<(Option<Value>, u8), Failure> {
    let parsed = parse_sigma_arg(sigma)?;
    let g = load_graph(path)?;
    require_composite(&g)?;
    let h = g.homology_h1();
    let d = match d {
        Some(d) => d,
        None => smallest_admissible_modulus(&g).expect("composite graphs admit a modulus"),
    };
    let (sigma_spec, sigma_info) = resolve_sigma(&h, parsed)?;
    let (alpha_spec, alpha_info) = choose_alpha(&g, d)?;
    let report = verify_norm_equality(&g, &sigma_spec, &alpha_spec).map_err(norm_failure)?;
    Ok((
        Some(json!({
            "h1": h1_summary(&h),
            "sigma": sigma_info,
            "alpha": alpha_info,
            "norms": serde_json::to_value(&report).unwrap(),
        })),
        0,
    ))
}

fn bundle_failure(err: BundleError) -> Failure {
    match err {
        BundleError::TorsionEuler => fail(1, "TORSION_EULER", json!({})),
        BundleError::TorsionLoop => fail(1, "TORSION_LOOP", json!({})),
        BundleError::CapExceeded {
            cap,
            largest_multiple,
        } => fail(
            1,
            "CAP_EXCEEDED",
            json!({ "cap": cap, "largest_multiple": largest_multiple }),
        ),
        BundleError::NonzeroAlgebraic(n) => {
            fail(1, "NONZERO_ALGEBRAIC", json!({ "algebraic_intersection": n }))
        }
        BundleError::Support(message) => {
            fail(1, "VALIDATION_ERROR", json!({ "message": message }))
        }
        BundleError::Norm(e) => norm_failure(e),
    }
}

fn parse_element(group: &FgAbelianGroup, text: &str) -> Result<GroupElement, Failure> {
    let (free_part, torsion_part) = match text.split_once(';') {
        Some((f, t)) => (f, t),
        None => (text, ""),
    };
    let free = parse_int_list(free_part)?;
    let torsion = parse_int_list(torsion_part)?;
    if free.len() != group.free_rank() || torsion.len() != group.torsion_factors().len() {
        return Err(fail(
            1,
            "VALIDATION_ERROR",
            json!({
                "message": format!(
                    "element shape ({}, {}) does not match the group ({}, {})",
                    free.len(),
                    torsion.len(),
                    group.free_rank(),
                    group.torsion_factors().len()
                )
            }),
        ));
    }
    Ok(group.element_from_i64(&free, &torsion))
}

fn element_json(e: &GroupElement) -> Value {
    json!({
        "free": e.free().iter().map(|x| x.to_i64().expect("fits")).collect::<Vec<i64>>(),
        "torsion": e.torsion().iter().map(|x| x.to_i64().expect("fits")).collect::<Vec<i64>>(),
    })
}

fn load_sw(path: &Path) -> Result<SWFunction, Failure> {
    let text = read_file(path)?;
    let doc: SWFunctionDoc = serde_json::from_str(&text).map_err(|e| {
        fail(
            2,
            "PARSE_ERROR",
            json!({
                "line": e.line(),
                "column": e.column(),
                "message": e.to_string(),
            }),
        )
    })?;
    doc.to_function().map_err(bundle_failure)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bundle(
    path: &Path,
    sigma: &str,
    self_intersection: i64,
    sw: Option<&Path>,
    euler: Option<&str>,
    gamma: Option<&str>,
    chi_candidate: Option<i64>,
    m: i64,
) -> Result<(Option<Value>, u8), Failure> {
    if m < 0 {
        return Err(fail(
            2,
            "USAGE_ERROR",
            json!({ "message": "--m must be non-negative" }),
        ));
    }
    let parsed = parse_sigma_arg(sigma)?;
    let g = load_graph(path)?;
    require_composite(&g)?;
    let h = g.homology_h1();
    let (sigma_spec, sigma_info) = resolve_sigma(&h, parsed)?;
    let rhs = match &sigma_spec {
        SigmaSpec::Class(class) => bound_rhs(
            &g,
            &BundleClass {
                self_intersection,
                pushforward: class.clone(),
            },
        )
        .map_err(bundle_failure)?,
        SigmaSpec::FibreValues(_) => {
            self_intersection.abs()
                + thurston_norm(&g, &sigma_spec).map_err(norm_failure)?
        }
    };
    let norm = rhs - self_intersection.abs();
    let mut out = json!({
        "sigma": sigma_info,
        "self_intersection": self_intersection,
        "pushforward_norm": norm,
        "bound_rhs": rhs,
        "sw_gate_b1": sw_gate_satisfied(&g),
        "b1": h.group().free_rank(),
    });

    if let Some(sw_path) = sw {
        let sw = load_sw(sw_path)?;
        let group = sw.group().clone();
        let e = parse_element(&group, euler.expect("clap enforces --euler with --sw"))?;
        let gamma = parse_element(&group, gamma.expect("clap enforces --gamma with --sw"))?;
        let sums: Vec<Value> = sw
            .support()
            .map(|(point, _)| {
                baldridge_sum(&sw, &e, point).map(|s| {
                    json!({ "xi": element_json(point), "sum": s })
                })
            })
            .collect::<Result<_, _>>()
            .map_err(bundle_failure)?;
        let k = separating_k(&sw, &e, &gamma, DEFAULT_SEPARATING_CAP).map_err(bundle_failure)?;
        let twisted = twist_euler(&group, &e, &gamma, k);
        let restored: Vec<Value> = sw
            .support()
            .map(|(point, _)| {
                baldridge_sum(&sw, &twisted, point).map(|s| {
                    json!({ "xi": element_json(point), "sum": s })
                })
            })
            .collect::<Result<_, _>>()
            .map_err(bundle_failure)?;
        let certificate = limit_certificate(chi_candidate.unwrap_or(rhs), m, rhs);
        let obj = out.as_object_mut().unwrap();
        obj.insert(
            "baldridge".into(),
            json!({
                "euler": element_json(&e),
                "sums": sums,
            }),
        );
        obj.insert(
            "separation".into(),
            json!({
                "gamma": element_json(&gamma),
                "k": k,
                "twisted_euler": element_json(&twisted),
                "restored": restored,
            }),
        );
        obj.insert(
            "limit_certificate".into(),
            serde_json::to_value(&certificate).unwrap(),
        );
    }
    Ok((Some(out), 0))
}

fn cmd_corpus(blocks: usize, seed: u64, count: usize) -> Result<(Option<Value>, u8), Failure> {
    if blocks < 2 {
        return Err(fail(
            2,
            "USAGE_ERROR",
            json!({ "message": "--blocks must be at least 2" }),
        ));
    }
    let seed = match std::env::var("GRAPHNORM_SEED") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            fail(
                2,
                "USAGE_ERROR",
                json!({ "message": format!("GRAPHNORM_SEED is not a u64: {text:?}") }),
            )
        })?,
        Err(_) => seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = String::new();
    for _ in 0..count {
        let g = random_composite_graph(&mut rng, blocks);
        debug_assert!(g.classify().composite);
        lines.push_str(&GraphDocument::from_graph(&g).to_json(false));
        lines.push('\n');
    }
    // the stream is the report: print directly, one document per line
    print!("{lines}");
    Ok((None, 0))
}
