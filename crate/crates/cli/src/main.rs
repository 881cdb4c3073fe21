use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use alexq::arrangement::{self, milnor_report};
use alexq::chain::{
    default_method, duality_dims, homology_of_quotient, quotient_of_homology_by, stabilization_bound, PresentationMethod,
};
use alexq::deck::{eigenspace_decomposition, DeckDecomposition};
use alexq::format::{matrix_from_json, matrix_to_json, rat_from_json};
use alexq::fox;
use alexq::laurent::QuotientAlgebra;
use alexq::truncmod::iso_rmodm_to_rm;
use alexq::{CancelToken, FreeChainComplex, LineArrangement, Presentation, QMatrix, Rat, SubgroupSpec, TruncModule, Variant};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "alexq", version, about = "Finite-dimensional quotients of Alexander modules of abelian covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cancel Groebner basis computations after this many seconds.
    #[arg(long, global = true)]
    timeout: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Smith,
    Groebner,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Truncation,
    Dual,
}

#[derive(Subcommand)]
enum Command {
    /// Quotients of H_j of an abelian cover by powers of an augmentation ideal.
    Alexander(AlexanderArgs),
    /// The truncation module R_m or its dual.
    Truncate(TruncateArgs),
    /// Generalized eigenspaces of commuting operators.
    Decompose(DecomposeArgs),
    /// Combinatorics of a line arrangement.
    Arrangement(SourceArgs),
    /// Milnor fiber report of a line arrangement.
    Milnor(MilnorArgs),
    /// Validate an input file.
    Check(CheckArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in input (trefoil, circle, pencil3, generic4, generic_multi3, triangle, ...).
    #[arg(long, conflicts_with = "input")]
    preset: Option<String>,
    /// JSON input file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct QuotientArgs {
    /// Subgroup H: an integer n (the subgroup n Z^g) or a JSON integer matrix
    /// whose columns generate H.
    #[arg(long)]
    subgroup: Option<String>,
    /// Power of the augmentation ideal.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Homological degree.
    #[arg(long, short = 'j', default_value_t = 1, allow_negative_numbers = true)]
    degree: i64,
}

#[derive(Args)]
struct AlexanderArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    quotient: QuotientArgs,
    /// How to present H_j (default: smith for one variable, groebner otherwise).
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Also report the stabilization index of the finite-level images.
    #[arg(long)]
    stabilize: bool,
    /// Also report homology/cohomology dimensions of the duality check.
    #[arg(long)]
    duality: bool,
}

#[derive(Args)]
struct TruncateArgs {
    /// Number of variables.
    #[arg(long, default_value_t = 1)]
    g: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, value_enum, default_value_t = Kind::Truncation)]
    variant: Kind,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    quotient: QuotientArgs,
    /// Multiple of the quasi-unipotence order of every operator.
    #[arg(long)]
    hint: Option<u64>,
}

#[derive(Args)]
struct MilnorArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Presentation of the complement's group: a JSON file or a built-in name.
    #[arg(long)]
    presentation: Option<String>,
    /// Require the Milnor fiber Betti number (needs a presentation).
    #[arg(long)]
    b1: bool,
    /// JSON file with spectrum multiplicities `[[alpha, n], ...]`.
    #[arg(long)]
    spectrum: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// JSON file holding a presentation, complex, arrangement or operators.
    input: PathBuf,
}

enum Failure {
    Validation(String),
    Cap(String),
}

impl From<alexq::Error> for Failure {
    fn from(e: alexq::Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// What a `--preset` or `--input` resolved to.
struct Loaded {
    label: String,
    complex: FreeChainComplex,
    arrangement: Option<LineArrangement>,
}

fn load_complex(src: &SourceArgs) -> Outcome<Loaded> {
    if let Some(name) = &src.preset {
        if let Ok((a, p)) = arrangement::preset(name) {
            return Ok(Loaded { label: name.clone(), complex: p.complex()?, arrangement: Some(a) });
        }
        let p = fox::builtin(name)?;
        return Ok(Loaded { label: name.clone(), complex: p.complex()?, arrangement: None });
    }
    let path = src.input.as_ref().ok_or_else(|| invalid("pass --preset or --input"))?;
    let v = read_json(path)?;
    let label = path.display().to_string();
    if v.get("differentials").is_some() {
        Ok(Loaded { label, complex: FreeChainComplex::from_json(&v)?, arrangement: None })
    } else {
        let p = Presentation::from_json(&v)?;
        Ok(Loaded { label, complex: p.complex()?, arrangement: None })
    }
}

fn parse_subgroup(spec: &str, g: usize) -> Outcome<SubgroupSpec> {
    if let Ok(n) = spec.trim().parse::<i64>() {
        return Ok(SubgroupSpec::scalar(g, n)?);
    }
    let v: Value = serde_json::from_str(spec).map_err(|e| invalid(format!("subgroup: {e}")))?;
    let rows = alexq::format::int_matrix_from_json(&v)?;
    if rows.len() != g {
        return Err(alexq::Error::ArityMismatch { expected: g, found: rows.len() }.into());
    }
    Ok(SubgroupSpec::new(rows)?)
}

/// Explicit `--subgroup`, else `<t^N>` for arrangement presets, else `Z^g`.
fn resolve_subgroup(q: &QuotientArgs, loaded: &Loaded) -> Outcome<SubgroupSpec> {
    let g = loaded.complex.nvars();
    if let Some(s) = &q.subgroup {
        return parse_subgroup(s, g);
    }
    if let Some(n) = loaded.arrangement.as_ref().and_then(|a| a.milnor_n().ok()) {
        return Ok(SubgroupSpec::scalar(g, n as i64)?);
    }
    Ok(SubgroupSpec::full(g))
}

fn token(timeout: Option<f64>) -> Outcome<CancelToken> {
    match timeout {
        None => Ok(CancelToken::new()),
        Some(s) if s.is_finite() && s >= 0.0 => Ok(CancelToken::with_timeout(Duration::from_secs_f64(s))),
        Some(s) => Err(invalid(format!("bad timeout {s}"))),
    }
}

fn eigen_report(ops: &[QMatrix], hint: u64) -> Outcome<Value> {
    if ops.first().is_none_or(|a| a.rows() == 0) {
        return Ok(json!({ "ambient": 0, "blocks": [] }));
    }
    let hints = vec![hint; ops.len()];
    Ok(eigenspace_decomposition(ops, Some(&hints))?.to_json())
}

fn cmd_alexander(args: &AlexanderArgs, timeout: Option<f64>) -> Outcome<Value> {
    let loaded = load_complex(&args.source)?;
    let q = &args.quotient;
    let h = resolve_subgroup(q, &loaded)?;
    let c = &loaded.complex;
    let method = match args.method {
        Some(Method::Smith) => PresentationMethod::Smith,
        Some(Method::Groebner) => PresentationMethod::Groebner,
        None => default_method(c),
    };
    let tok = token(timeout)?;
    let hq = quotient_of_homology_by(c, q.degree, &h, q.m, method, &tok)?;
    let qa = QuotientAlgebra::new(h.clone(), q.m)?;
    let direct = homology_of_quotient(c, &qa, q.degree)?;
    let mut out = json!({
        "schema": SCHEMA,
        "command": "alexander",
        "source": loaded.label,
        "nvars": c.nvars(),
        "subgroup": h.hnf(),
        "index": h.index(),
        "m": q.m,
        "degree": q.degree,
        "algebra_dim": qa.dim(),
        "dim": hq.dim,
        "deck_actions": hq.deck_actions.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "eigen": eigen_report(&hq.deck_actions, h.exponent())?,
        "homology_of_quotient_dim": direct.dim,
    });
    if args.stabilize {
        out["stabilization"] = json!(stabilization_bound(c, q.degree, &h, q.m, None)?);
    }
    if args.duality {
        out["duality"] = json!(duality_dims(c, &h, q.m, q.degree)?);
    }
    Ok(out)
}

fn cmd_truncate(args: &TruncateArgs) -> Outcome<Value> {
    let variant = match args.variant {
        Kind::Truncation => Variant::Truncation,
        Kind::Dual => Variant::Dual,
    };
    let t = TruncModule::new(args.g, args.m, variant)?;
    let actions: Vec<Value> = (0..args.g)
        .map(|i| {
            let mut e = vec![0; args.g];
            e[i] = 1;
            matrix_to_json(&t.rm_action(&e))
        })
        .collect();
    let mut out = json!({
        "schema": SCHEMA,
        "command": "truncate",
        "g": args.g,
        "m": args.m,
        "variant": match variant { Variant::Truncation => "truncation", Variant::Dual => "dual" },
        "dim": t.dim(),
        "basis": t.basis_labels(),
        "actions": actions,
    });
    if let Some(tw) = t.twist_label() {
        out["twist"] = json!(tw);
    }
    if variant == Variant::Truncation {
        out["iso_from_quotient"] = matrix_to_json(&iso_rmodm_to_rm(args.g, args.m)?);
    }
    Ok(out)
}

fn operators_from_json(v: &Value) -> Outcome<(Vec<QMatrix>, Option<Vec<u64>>)> {
    if v.is_array() {
        return Ok((vec![matrix_from_json(v)?], None));
    }
    let ops = v
        .get("operators")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("expected a matrix or {\"operators\": [...]}"))?
        .iter()
        .map(matrix_from_json)
        .collect::<alexq::Result<Vec<_>>>()?;
    let hints = match v.get("hints") {
        None => None,
        Some(h) => Some(
            h.as_array()
                .ok_or_else(|| invalid("hints must be an array"))?
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| invalid("hints must be positive integers")))
                .collect::<Outcome<Vec<_>>>()?,
        ),
    };
    Ok((ops, hints))
}

fn cmd_decompose(args: &DecomposeArgs, timeout: Option<f64>) -> Outcome<Value> {
    let operator_file = match (&args.source.preset, &args.source.input) {
        (None, Some(path)) => {
            let v = read_json(path)?;
            (v.is_array() || v.get("operators").is_some()).then_some((path.display().to_string(), v))
        }
        _ => None,
    };
    let (label, ops, hints) = match operator_file {
        Some((label, v)) => {
            let (ops, hints) = operators_from_json(&v)?;
            let hints = hints.or(args.hint.map(|h| vec![h; ops.len()]));
            (label, ops, hints)
        }
        None => {
            let loaded = load_complex(&args.source)?;
            let h = resolve_subgroup(&args.quotient, &loaded)?;
            let c = &loaded.complex;
            let hq = quotient_of_homology_by(c, args.quotient.degree, &h, args.quotient.m, default_method(c), &token(timeout)?)?;
            let hint = args.hint.unwrap_or(h.exponent());
            let n = hq.deck_actions.len();
            (loaded.label, hq.deck_actions, Some(vec![hint; n]))
        }
    };
    if ops.is_empty() {
        return Err(invalid("no operators"));
    }
    let mut out = json!({
        "schema": SCHEMA,
        "command": "decompose",
        "source": label,
        "operators": ops.len(),
    });
    if ops[0].rows() == 0 {
        out["eigen"] = json!({ "ambient": 0, "blocks": [] });
        return Ok(out);
    }
    out["eigen"] = eigenspace_decomposition(&ops, hints.as_deref())?.to_json();
    if ops.len() == 1 {
        out["deck"] = DeckDecomposition::new(&ops[0], hints.and_then(|h| h.first().copied()))?.to_json();
    }
    Ok(out)
}

fn load_arrangement(src: &SourceArgs) -> Outcome<(String, LineArrangement, Option<Presentation>)> {
    if let Some(name) = &src.preset {
        let (a, p) = arrangement::preset(name)?;
        return Ok((name.clone(), a, Some(p)));
    }
    let path = src.input.as_ref().ok_or_else(|| invalid("pass --preset or --input"))?;
    Ok((path.display().to_string(), LineArrangement::from_json(&read_json(path)?)?, None))
}

fn cmd_arrangement(args: &SourceArgs) -> Outcome<Value> {
    let (label, a, _) = load_arrangement(args)?;
    let c = a.combinatorics();
    let mut out = json!({
        "schema": SCHEMA,
        "command": "arrangement",
        "source": label,
        "m": c.m,
        "points": c.points,
        "essential": c.essential,
    });
    if c.essential {
        let b = a.betti_chi()?;
        out["b1"] = json!(b.b1);
        out["b2"] = json!(b.b2);
        out["chi"] = json!(b.chi);
        if let Ok(n) = a.milnor_n() {
            let (rank, dim) = a.h2_report()?;
            out["N"] = json!(n);
            out["h2_rank"] = json!(rank);
            out["h2_quotient_dim"] = json!(dim);
        }
    }
    Ok(out)
}

fn load_presentation(spec: &str) -> Outcome<Presentation> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(Presentation::from_json(&read_json(path)?)?);
    }
    Ok(fox::builtin(spec)?)
}

fn load_spectrum(path: &Path) -> Outcome<Vec<(Rat, i64)>> {
    let v = read_json(path)?;
    let entries = v.get("spectrum").unwrap_or(&v);
    entries
        .as_array()
        .ok_or_else(|| invalid("spectrum must be an array of [alpha, n] pairs"))?
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([alpha, n]) => {
                let n = n.as_i64().ok_or_else(|| invalid("spectrum multiplicity must be an integer"))?;
                Ok((rat_from_json(alpha)?, n))
            }
            _ => Err(invalid("spectrum entry must be [alpha, n]")),
        })
        .collect()
}

fn cmd_milnor(args: &MilnorArgs) -> Outcome<Value> {
    let (label, a, preset_p) = load_arrangement(&args.source)?;
    let p = match &args.presentation {
        Some(s) => Some(load_presentation(s)?),
        None => preset_p,
    };
    if args.b1 && p.is_none() {
        return Err(invalid("--b1 needs a presentation (--presentation or --preset)"));
    }
    let spectrum = args.spectrum.as_deref().map(load_spectrum).transpose()?;
    let rep = milnor_report(&a, p.as_ref(), spectrum.as_deref())?;
    let mut out = rep.to_json();
    out["schema"] = json!(SCHEMA);
    out["command"] = json!("milnor");
    out["source"] = json!(label);
    Ok(out)
}

fn cmd_check(args: &CheckArgs) -> Outcome<Value> {
    let v = read_json(&args.input)?;
    let (kind, summary) = if v.get("generators").is_some() {
        let p = Presentation::from_json(&v)?;
        ("presentation", json!({ "generators": p.generators.len(), "relators": p.relators.len(), "nvars": p.nvars() }))
    } else if v.get("differentials").is_some() {
        let c = FreeChainComplex::from_json(&v)?;
        let ranks: Vec<usize> = c.degrees().map(|j| c.rank(j)).collect();
        ("complex", json!({ "nvars": c.nvars(), "min_degree": c.min_degree(), "ranks": ranks }))
    } else if v.get("lines").is_some() || v.get("incidence").is_some() {
        let a = LineArrangement::from_json(&v)?;
        ("arrangement", json!({ "m": a.num_lines(), "essential": a.combinatorics().essential }))
    } else if v.is_array() || v.get("operators").is_some() {
        let (ops, _) = operators_from_json(&v)?;
        if let Some(bad) = ops.iter().position(|a| !a.is_square() || a.rows() != ops[0].rows()) {
            return Err(invalid(format!("operator {bad} has the wrong shape")));
        }
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !ops[i].commutes_with(&ops[j]) {
                    return Err(alexq::Error::NonCommuting(i, j).into());
                }
            }
        }
        ("operators", json!({ "count": ops.len(), "dim": ops[0].rows() }))
    } else {
        return Err(invalid("unrecognized input"));
    };
    Ok(json!({
        "schema": SCHEMA,
        "command": "check",
        "source": args.input.display().to_string(),
        "valid": true,
        "kind": kind,
        "summary": summary,
    }))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar_list(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || (x.is_array() && !is_scalar_list(x)) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => scalar_text(other),
    }
}

fn run(cli: &Cli) -> Outcome<Value> {
    match &cli.command {
        Command::Alexander(a) => cmd_alexander(a, cli.timeout),
        Command::Truncate(a) => cmd_truncate(a),
        Command::Decompose(a) => cmd_decompose(a, cli.timeout),
        Command::Arrangement(a) => cmd_arrangement(a),
        Command::Milnor(a) => cmd_milnor(a),
        Command::Check(a) => cmd_check(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(v) => v,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(&report, 0, &mut s);
            s
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
