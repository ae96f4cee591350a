//! `gcat`: batch front end for the gcat workbench.
//!
//! Inputs are file paths or `@name` for a fixture (from `GCAT_FIXTURES` if set,
//! otherwise the corpus compiled into the binary).
//! Exit status: 0 when every verdict passes, 1 on a failed verdict, 2 on an input error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gcat_core::action::{semidirect, ActionSpec};
use gcat_core::catcore::{from_group_bundle, round_trip, FiniteCategory};
use gcat_core::io::{self, check_mutant, parse_json, validate_document, CategoryJson, Document, MutantHeader, RepJson, Resolver};
use gcat_core::quasidyn::{check_quasi, embedding_check, induce_quasi_action, inverse_law_failures};
use gcat_core::staralg::{check_representation, left_regular, MatrixRep};
use gcat_core::theorems::{run_campaign, verify_decomposition, verify_main_theorem, DecompOptions, SizeCaps, TheoremReport};
use gcat_core::ValidationReport;

#[derive(Parser, Debug)]
#[command(name = "gcat", version, about = "Exact checks for groupoid actions, representations and crossed products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest groupoid (morphism count) the fuzzer draws.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    max_g: u64,
    /// Largest category (morphism count) the fuzzer draws.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_h: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of fuzzed instances.
    #[arg(long, global = true, default_value_t = 100)]
    budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks categories, groupoids, actions and bundles (mutated fixtures are checked against their header).
    Validate { inputs: Vec<String> },
    /// Groupoid to group bundle (with the round-trip isomorphism), or bundle to groupoid.
    Bundle { input: String },
    /// The largest subcategory on which the action is regular.
    RegularPart { input: String },
    /// The semidirect product category.
    Semidirect { input: String },
    /// Checks a matrix assignment; `--category` supplies the category if the file does not.
    RepCheck {
        input: String,
        #[arg(long)]
        category: Option<String>,
    },
    /// The left regular representation of a category, and its check.
    Leftreg { input: String },
    /// Induces the quasi action from a representation of H (default: left regular) and checks it.
    Quasi {
        input: String,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Realizes A[G] through the regular covariant representation and checks injectivity.
    Crossed {
        input: String,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Representations of the semidirect product versus covariant representations.
    VerifyMain {
        input: String,
        /// Representation of the semidirect product (default: left regular).
        #[arg(long)]
        rep: Option<String>,
    },
    /// Splitting of A[G] along the orbit classes of G.
    VerifyDecomp {
        input: String,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Every theorem suite over a seeded batch of random actions.
    Fuzz,
}

/// An input problem: exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// What a subcommand produced.
struct Outcome {
    ok: bool,
    json: Value,
    text: String,
}

impl Outcome {
    fn new(ok: bool, json: impl Serialize, text: impl Into<String>) -> Self {
        Outcome {
            ok,
            json: serde_json::to_value(json).expect("serializable report"),
            text: text.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n",
        Format::Text => outcome.text,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(if outcome.ok { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Validate { inputs } => validate(inputs),
        Command::Bundle { input } => bundle(input),
        Command::RegularPart { input } => {
            let spec = action(input)?;
            let hr = spec.regular_part();
            let text = format!("H_r: {} of {} morphisms\n{}\n", hr.morphism_count(), spec.h.morphism_count(), io::to_pretty_json(&CategoryJson::from_category(&hr)));
            Ok(Outcome::new(true, CategoryJson::from_category(&hr), text))
        }
        Command::Semidirect { input } => {
            let spec = action(input)?;
            let sd = semidirect(&spec).map_err(|e| InputError(format!("{input}: {e}")))?;
            let j = match &sd.groupoid {
                Some(g) => CategoryJson::from_groupoid(g),
                None => CategoryJson::from_category(&sd.cat),
            };
            let text = format!("semidirect product: {} morphisms\n{}\n", sd.len(), io::to_pretty_json(&j));
            Ok(Outcome::new(true, j, text))
        }
        Command::RepCheck { input, category } => {
            let rep = load_rep(input, category.as_deref().map(category_of).transpose()?)?;
            Ok(report_outcome(&check_representation(&rep)))
        }
        Command::Leftreg { input } => {
            let cat = category_of(input)?;
            let rep = left_regular(&cat);
            let r = check_representation(&rep);
            let j = RepJson {
                category: None,
                dim: rep.dim(),
                assign: rep.named(),
            };
            let text = format!("{r}\n{}\n", io::to_pretty_json(&j));
            Ok(Outcome::new(r.is_valid(), json!({"rep": j, "report": r}), text))
        }
        Command::Quasi { input, rep } => quasi(input, rep.as_deref()),
        Command::Crossed { input, rep } => crossed(input, rep.as_deref()),
        Command::VerifyMain { input, rep } => {
            let spec = action(input)?;
            let rep = match rep {
                Some(r) => {
                    let sd = semidirect(&spec).map_err(|e| InputError(format!("{input}: {e}")))?;
                    Some(load_rep(r, Some(sd.cat))?)
                }
                None => None,
            };
            Ok(theorem_outcome(verify_main_theorem(&spec, rep.as_ref(), input)))
        }
        Command::VerifyDecomp { input, rep } => {
            let spec = action(input)?;
            let rep = rep.as_deref().map(|r| load_rep(r, Some(spec.regular_part()))).transpose()?;
            let opts = DecompOptions {
                seed: cli.seed,
                ..DecompOptions::default()
            };
            Ok(theorem_outcome(verify_decomposition(&spec, rep.as_ref(), input, opts)))
        }
        Command::Fuzz => {
            let caps = SizeCaps {
                max_g: cli.max_g as usize,
                max_h: cli.max_h as usize,
            };
            let c = run_campaign(cli.seed, cli.budget, caps);
            let mut text = String::new();
            for o in &c.instances {
                for r in o.reports.iter().filter(|r| !r.passed()) {
                    text.push_str(&format!("instance {} (seed {}):\n{r}", o.id, o.seed));
                }
            }
            text.push_str(&format!(
                "fuzz seed {} budget {} caps |G|<={} |H|<={}: {} pass, {} fail, {} inapplicable\n",
                c.seed, c.budget, caps.max_g, caps.max_h, c.tally.pass, c.tally.fail, c.tally.inapplicable
            ));
            Ok(Outcome::new(c.passed(), &c, text))
        }
    }
}

fn load(reference: &str) -> Result<Document, InputError> {
    Ok(io::load(reference)?)
}

/// Text of a path or `@fixture`, and where its relative references resolve.
fn read(reference: &str) -> Result<(String, Resolver), InputError> {
    if reference.starts_with('@') {
        return Ok(Resolver::builtin().read(reference)?);
    }
    let path = PathBuf::from(reference);
    let text = std::fs::read_to_string(&path).map_err(|e| InputError(format!("{reference}: {e}")))?;
    let dir = path.parent().map(PathBuf::from).unwrap_or_default();
    Ok((text, Resolver::at(dir)))
}

fn action(reference: &str) -> Result<ActionSpec, InputError> {
    match load(reference)? {
        Document::Action(a) => Ok(a),
        other => Err(InputError(format!("{reference}: expected an action, found a {}", other.kind()))),
    }
}

fn category_of(reference: &str) -> Result<FiniteCategory, InputError> {
    match load(reference)? {
        Document::Category(c) => Ok(c),
        Document::Groupoid(g) => Ok(g.into_category()),
        Document::Action(a) => Ok(a.h),
        Document::Bundle(b) => Ok(from_group_bundle(&b)?.into_category()),
    }
}

fn load_rep(reference: &str, fallback: Option<FiniteCategory>) -> Result<MatrixRep, InputError> {
    let (text, resolver) = read(reference)?;
    let j: RepJson = parse_json(&text, reference)?;
    let cat = match resolver.rep_category(&j)? {
        Some(c) => c,
        None => fallback.ok_or_else(|| InputError(format!("{reference}: no category given")))?,
    };
    MatrixRep::from_named(cat, j.dim, &j.assign).map_err(|e| InputError(format!("{reference}: {e}")))
}

fn report_outcome(r: &ValidationReport) -> Outcome {
    Outcome::new(r.is_valid(), r, format!("{r}\n"))
}

fn theorem_outcome(r: TheoremReport) -> Outcome {
    let text = r.to_string();
    Outcome::new(r.passed(), &r, text)
}

fn validate(inputs: &[String]) -> Result<Outcome, InputError> {
    if inputs.is_empty() {
        return Err(InputError("validate needs at least one input".into()));
    }
    let mut ok = true;
    let mut entries = Vec::new();
    let mut text = String::new();
    for input in inputs {
        let (body, resolver) = read(input)?;
        // mutated fixtures carry the violation they must trigger
        if serde_json::from_str::<MutantHeader>(&body).is_ok() {
            let m = check_mutant(&body, input, &resolver)?;
            ok &= m.caught;
            text.push_str(&format!(
                "{input}: mutant expecting {}: {} (cited {})\n",
                m.expect,
                if m.caught { "caught" } else { "MISSED" },
                m.cited.join(", ")
            ));
            entries.push(json!({"input": input, "mutant": m}));
            continue;
        }
        let doc = io::parse_document(&body, input, &resolver)?;
        let r = validate_document(&doc);
        ok &= r.is_valid();
        text.push_str(&format!("{input} ({}): {r}\n", doc.kind()));
        entries.push(json!({"input": input, "kind": doc.kind(), "report": r}));
    }
    Ok(Outcome::new(ok, entries, text))
}

fn bundle(input: &str) -> Result<Outcome, InputError> {
    match load(input)? {
        Document::Groupoid(g) => {
            let rt = round_trip(&g)?;
            let ok = rt.iso_verified && rt.bundle_fixed;
            let iso: BTreeMap<String, String> = rt.iso.named(rt.rebuilt.category(), g.category()).into_iter().collect();
            let text = format!(
                "{}\nround trip: isomorphism {}, bundle {}\n",
                io::to_pretty_json(&rt.bundle),
                if rt.iso_verified { "verified" } else { "FAILED" },
                if rt.bundle_fixed { "recovered" } else { "NOT recovered" }
            );
            Ok(Outcome::new(
                ok,
                json!({"bundle": rt.bundle, "isomorphism": iso, "iso_verified": rt.iso_verified, "bundle_recovered": rt.bundle_fixed}),
                text,
            ))
        }
        Document::Bundle(b) => {
            let g = from_group_bundle(&b)?;
            let j = CategoryJson::from_groupoid(&g);
            let text = io::to_pretty_json(&j) + "\n";
            Ok(Outcome::new(true, j, text))
        }
        other => Err(InputError(format!("{input}: expected a groupoid or a bundle, found a {}", other.kind()))),
    }
}

/// The regular part of the action, noting when it differs from the input.
fn regular_input(input: &str) -> Result<(ActionSpec, Vec<String>), InputError> {
    let spec = action(input)?;
    if spec.is_regular() {
        return Ok((spec, vec![]));
    }
    let note = format!(
        "action is not regular; using H_r ({} of {} morphisms)",
        spec.regular_part().morphism_count(),
        spec.h.morphism_count()
    );
    Ok((spec.regular_spec(), vec![note]))
}

fn quasi(input: &str, rep: Option<&str>) -> Result<Outcome, InputError> {
    let (spec, notes) = regular_input(input)?;
    let rep = match rep {
        Some(r) => load_rep(r, Some(spec.h.clone()))?,
        None => left_regular(&spec.h),
    };
    let sys = induce_quasi_action(&spec, &rep).map_err(|e| InputError(format!("{input}: {e}")))?;
    let r = check_quasi(&sys);
    let inverse = inverse_law_failures(&sys);
    let domains: BTreeMap<String, usize> = sys.g.morphisms().map(|g| (sys.g.morphism_name(g).to_string(), sys.domain(g).dim())).collect();
    let ok = r.is_valid() && inverse.is_empty();
    let mut text = format!("{r}\nalgebra dimension {}\n", sys.algebra().dim());
    for (g, d) in &domains {
        text.push_str(&format!("  dim D(beta_{g}) = {d}\n"));
    }
    text.push_str(&format!("inverse law beta_(g^-1) beta_g = id: {}\n", if inverse.is_empty() { "holds" } else { "FAILS" }));
    for n in &notes {
        text.push_str(&format!("note: {n}\n"));
    }
    Ok(Outcome::new(
        ok,
        json!({"report": r, "algebra_dim": sys.algebra().dim(), "domain_dims": domains, "inverse_law_failures": inverse, "notes": notes}),
        text,
    ))
}

fn crossed(input: &str, rep: Option<&str>) -> Result<Outcome, InputError> {
    let (spec, notes) = regular_input(input)?;
    let rep = match rep {
        Some(r) => load_rep(r, Some(spec.h.clone()))?,
        None => left_regular(&spec.h),
    };
    let sys = induce_quasi_action(&spec, &rep).map_err(|e| InputError(format!("{input}: {e}")))?;
    let e = embedding_check(&sys, sys.basis(), sys.size());
    let mut text = format!("{}\ndim A[G] = {}, rank of sigma = {}\n", e.report, e.dim, e.rank);
    for n in &notes {
        text.push_str(&format!("note: {n}\n"));
    }
    Ok(Outcome::new(
        e.report.is_valid(),
        json!({"report": e.report, "conv_dim": e.dim, "sigma_rank": e.rank, "carrier_dim": sys.size() * sys.g.morphism_count(), "notes": notes}),
        text,
    ))
}
