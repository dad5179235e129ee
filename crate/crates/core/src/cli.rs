//! The `regracut` command line. Every subcommand writes JSON (tagged with
//! `"schema": 1`) to `--out` or stdout, except `sample`, which writes a graph
//! file, and `fk` / `edit-distance`, which print a bare number unless `--json`
//! or `--out` is given.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a cap was hit or the checked
//! statement failed (irregular pair, too few copies, no type, cap reached).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposition::{decompose_with, select_subclusters, Certifier, EFunction, DEFAULT_ORDER_CAP};
use crate::density::{density_vector, index};
use crate::embedding::{check_embedding_lemma, count_spanning_copies};
use crate::error::{Error, Result};
use crate::graph::io::{load, write_any};
use crate::graph::{
    equipartition, sample_digraph, sample_rgraph, AnyGraph, ArrowProbabilities, ColorProbabilities, Equipartition,
    Palette, ProbabilityVector,
};
use crate::types::{
    distance_to_property, enumerate_types, error_term, experiment_theorem_app, f_k, lower_bound_fk, type_kind_for,
    ForbiddenFamily, TypeGraph, TypeKind,
};

pub const SCHEMA: u32 = 1;
/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "REGRACUT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "regracut",
    version,
    about = "Regularity partitions, copy counting and edit-distance bounds for r-graphs and digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a random r-graph or digraph and write it as a graph file.
    Sample(SampleArgs),
    /// Density vector of a pair of vertex sets, with a verdict when --gamma is given.
    Density(PairArgs),
    /// γ-regularity verdict and witness for a pair of vertex sets (exit 3 if irregular).
    CheckPair(CheckPairArgs),
    /// Index of an equipartition.
    Index(IndexArgs),
    /// Two-level regular decomposition with subcluster selection (exit 3 if the order cap is hit).
    Decompose(DecomposeArgs),
    /// Copies of a pattern spanning the given parts (exit 3 below the embedding bound).
    CountCopies(CountCopiesArgs),
    /// Types, up to relabeling, into which no forbidden graph embeds.
    EnumTypes(EnumTypesArgs),
    /// The f_K value of a type under a probability vector.
    Fk(FkArgs),
    /// Exact distance from a graph to the property avoiding the forbidden graphs.
    EditDistance(EditDistanceArgs),
    /// The f_K lower bound on the distance of a random graph.
    Bound(BoundArgs),
    /// Mean exact distance of random graphs against the f_K bound.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Rgraph,
    Digraph,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Graph kind.
    #[arg(long, value_enum, default_value = "rgraph")]
    kind: Kind,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Color probabilities p1,...,pr for r-graphs; p,q for digraphs.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    p: Vec<f64>,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Graph file.
    #[arg(long, visible_alias = "input")]
    graph: PathBuf,
    /// First vertex set, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<usize>,
    /// Second vertex set, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<usize>,
    /// Regularity parameter; omit to report densities only.
    #[arg(long)]
    gamma: Option<f64>,
    /// exact, heuristic or auto (exact when both sides have at most 6 vertices).
    #[arg(long, default_value = "auto")]
    certifier: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CheckPairArgs {
    /// Graph file.
    #[arg(long, visible_alias = "input")]
    graph: PathBuf,
    /// First vertex set, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<usize>,
    /// Second vertex set, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<usize>,
    /// Regularity parameter.
    #[arg(long)]
    gamma: f64,
    /// exact, heuristic or auto (exact when both sides have at most 6 vertices).
    #[arg(long, default_value = "auto")]
    certifier: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct IndexArgs {
    /// Graph file.
    #[arg(long, visible_alias = "input")]
    graph: PathBuf,
    /// Partition file (JSON array of blocks); if absent a seeded equipartition of order --k is used.
    #[arg(long, conflicts_with = "k")]
    parts: Option<PathBuf>,
    /// Order of the seeded equipartition.
    #[arg(long, required_unless_present = "parts")]
    k: Option<usize>,
    /// Seed for the equipartition.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    /// Graph file.
    #[arg(long, visible_alias = "graph")]
    input: PathBuf,
    /// Order of the first equipartition (raised to 2 if smaller).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Value of E(0); overrides the rule at k = 0.
    #[arg(long)]
    eps: Option<f64>,
    /// Epsilon function: a constant `c` or `a/(k+1)`, optionally followed by `,k:value` overrides.
    #[arg(long, default_value = "0.3/(k+1)")]
    efun: String,
    /// Largest partition order allowed.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    /// exact, heuristic or auto.
    #[arg(long, default_value = "auto")]
    certifier: String,
    /// Draws for the subcluster selection; all choices are tried when there are at most this many.
    #[arg(long, default_value_t = 4096)]
    trials: usize,
    /// Seed for the first partition and the selection.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CountCopiesArgs {
    /// Host graph file.
    #[arg(long, visible_alias = "input")]
    graph: PathBuf,
    /// Pattern graph file; vertex i is placed in part i.
    #[arg(long)]
    pattern: PathBuf,
    /// Partition file (JSON array of parts), one part per pattern vertex.
    #[arg(long)]
    parts: PathBuf,
    /// Density threshold η in (0, 1).
    #[arg(long)]
    eta: f64,
    /// Also report the density and regularity premises of every pair.
    #[arg(long)]
    premises: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Forbidden graph files.
    #[arg(long, num_args = 1.., required = true)]
    forbid: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct EnumTypesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest number of type vertices.
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    /// Palette of dir-types (P0..P4); defaults to the smallest holding the family's states.
    #[arg(long)]
    palette: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct FkArgs {
    /// Type file.
    #[arg(long = "type")]
    type_file: PathBuf,
    /// p1,...,pr for r-types; p,q for dir-types.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    p: Vec<f64>,
    /// Print JSON instead of the bare value.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct EditDistanceArgs {
    /// Graph file.
    #[arg(long, visible_alias = "input")]
    graph: PathBuf,
    #[command(flatten)]
    family: FamilyArgs,
    /// Write a closest graph in the property to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Print JSON instead of the bare distance.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// p1,...,pr for r-graphs; p,q for digraphs.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    p: Vec<f64>,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Largest number of type vertices searched.
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    /// Also report the finite-n error term for a partition of this order.
    #[arg(long)]
    order: Option<usize>,
    /// ε used in the error term.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// p1,...,pr for r-graphs; p,q for digraphs.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    p: Vec<f64>,
    /// Vertex counts, comma separated.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    /// Samples per vertex count, with seeds 0..seeds.
    #[arg(long, default_value_t = 200)]
    seeds: usize,
    /// Largest number of type vertices searched.
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    #[command(flatten)]
    output: Output,
}

/// Runs the command line on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let outcome = match pool {
        Some(pool) => pool.install(|| dispatch(cli.command)),
        None => dispatch(cli.command),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn thread_pool() -> std::result::Result<Option<rayon::ThreadPool>, String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(None);
    };
    let threads: usize = raw.trim().parse().map_err(|_| format!("{THREADS_VAR}={raw:?} is not a thread count"))?;
    if threads == 0 {
        return Err(format!("{THREADS_VAR} must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map(Some).map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLargeForExact { .. }
        | Error::TooLargeForExhaustive { .. }
        | Error::SearchSpaceTooLarge(_)
        | Error::EmptyProperty(_) => 3,
        _ => 2,
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Sample(a) => sample(a),
        Command::Density(a) => pair(a).map(|(code, _)| code),
        Command::CheckPair(a) => pair(PairArgs {
            graph: a.graph,
            a: a.a,
            b: a.b,
            gamma: Some(a.gamma),
            certifier: a.certifier,
            output: a.output,
        })
        .map(|(code, irregular)| if irregular { 3 } else { code }),
        Command::Index(a) => index_cmd(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::CountCopies(a) => count_copies_cmd(a),
        Command::EnumTypes(a) => enum_types_cmd(a),
        Command::Fk(a) => fk_cmd(a),
        Command::EditDistance(a) => edit_distance_cmd(a),
        Command::Bound(a) => bound_cmd(a),
        Command::Experiment(a) => experiment_cmd(a),
    }
}

fn emit_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(out: Option<&Path>, mut body: Value) -> Result<()> {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut text = serde_json::to_string_pretty(&body)?;
    text.push('\n');
    emit_text(out, &text)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn load_family(args: &FamilyArgs) -> Result<ForbiddenFamily> {
    ForbiddenFamily::new(args.forbid.iter().map(load).collect::<Result<_>>()?)
}

fn load_parts(path: &Path, n: usize) -> Result<Vec<Vec<usize>>> {
    let parts: Vec<Vec<usize>> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if let Some(v) = parts.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: *v, n });
    }
    Ok(parts)
}

fn color_probabilities(p: &[f64]) -> Result<ProbabilityVector> {
    Ok(ProbabilityVector::Colors(ColorProbabilities::new(p.to_vec())?))
}

fn arrow_probabilities(p: &[f64]) -> Result<ProbabilityVector> {
    match p {
        [p, q] => Ok(ProbabilityVector::Arrows(ArrowProbabilities::new(*p, *q)?)),
        _ => Err(Error::BadDistribution(format!("digraphs take p,q, got {} numbers", p.len()))),
    }
}

fn probabilities_for(family: &ForbiddenFamily, p: &[f64]) -> Result<ProbabilityVector> {
    match family {
        ForbiddenFamily::Colored(_) => color_probabilities(p),
        ForbiddenFamily::Directed(_) => arrow_probabilities(p),
    }
}

fn sample(a: SampleArgs) -> Result<i32> {
    let g = match a.kind {
        Kind::Rgraph => {
            let ProbabilityVector::Colors(p) = color_probabilities(&a.p)? else { unreachable!() };
            AnyGraph::Colored(sample_rgraph(a.n, &p, a.seed)?)
        }
        Kind::Digraph => {
            let ProbabilityVector::Arrows(p) = arrow_probabilities(&a.p)? else { unreachable!() };
            AnyGraph::Directed(sample_digraph(a.n, p.p(), p.q(), a.seed)?)
        }
    };
    emit_text(a.output.out.as_deref(), &write_any(&g))?;
    Ok(0)
}

fn pair(a: PairArgs) -> Result<(i32, bool)> {
    let g = load(&a.graph)?;
    let certifier: Certifier = a.certifier.parse()?;
    let (densities, report) = match &g {
        AnyGraph::Colored(g) => {
            (density_vector(g, &a.a, &a.b)?, a.gamma.map(|gm| certifier.certify(g, &a.a, &a.b, gm)).transpose()?)
        }
        AnyGraph::Directed(g) => {
            (density_vector(g, &a.a, &a.b)?, a.gamma.map(|gm| certifier.certify(g, &a.a, &a.b, gm)).transpose()?)
        }
    };
    let mut body = json!({ "densities": densities });
    let irregular = report.as_ref().is_some_and(|r| r.is_irregular());
    if let Some(r) = report {
        body["gamma"] = json!(r.gamma);
        body["certifier"] = to_value(&certifier)?;
        body["verdict"] = to_value(&r.verdict)?;
        body["witness"] = to_value(&r.witness)?;
    }
    emit_json(a.output.out.as_deref(), body)?;
    Ok((0, irregular))
}

fn index_cmd(a: IndexArgs) -> Result<i32> {
    let g = load(&a.graph)?;
    let n = g.vertex_count();
    let p = match (&a.parts, a.k) {
        (Some(path), _) => Equipartition::new(n, load_parts(path, n)?)?,
        (None, Some(k)) => equipartition(n, k, a.seed)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let value = match &g {
        AnyGraph::Colored(g) => index(g, &p)?,
        AnyGraph::Directed(g) => index(g, &p)?,
    };
    emit_json(a.output.out.as_deref(), json!({ "index": value, "order": p.order(), "partition": p }))?;
    Ok(0)
}

fn decompose_cmd(a: DecomposeArgs) -> Result<i32> {
    let g = load(&a.input)?;
    let mut e: EFunction = a.efun.parse()?;
    if let Some(eps) = a.eps {
        e = e.with_value(0, eps)?;
    }
    let certifier: Certifier = a.certifier.parse()?;
    let (result, selection) = match &g {
        AnyGraph::Colored(g) => {
            let d = decompose_with(g, a.m, &e, a.cap, certifier, a.seed)?;
            let s = select_subclusters(g, &d, &e, a.trials, a.seed)?;
            (d, s)
        }
        AnyGraph::Directed(g) => {
            let d = decompose_with(g, a.m, &e, a.cap, certifier, a.seed)?;
            let s = select_subclusters(g, &d, &e, a.trials, a.seed)?;
            (d, s)
        }
    };
    let code = if result.cap_exceeded() { 3 } else { 0 };
    let mut body = to_value(&result)?;
    body["children"] = json!(result.children());
    body["selection"] = to_value(&selection)?;
    emit_json(a.output.out.as_deref(), body)?;
    Ok(code)
}

fn count_copies_cmd(a: CountCopiesArgs) -> Result<i32> {
    let g = load(&a.graph)?;
    let h = load(&a.pattern)?;
    let parts = load_parts(&a.parts, g.vertex_count())?;
    let body = match (&g, &h) {
        (AnyGraph::Colored(g), AnyGraph::Colored(h)) if a.premises => {
            to_value(&check_embedding_lemma(g, h, &parts, a.eta)?)?
        }
        (AnyGraph::Directed(g), AnyGraph::Directed(h)) if a.premises => {
            to_value(&check_embedding_lemma(g, h, &parts, a.eta)?)?
        }
        (AnyGraph::Colored(g), AnyGraph::Colored(h)) => to_value(&count_spanning_copies(g, h, &parts, a.eta)?)?,
        (AnyGraph::Directed(g), AnyGraph::Directed(h)) => to_value(&count_spanning_copies(g, h, &parts, a.eta)?)?,
        _ => return Err(Error::KindMismatch("graph and pattern are of different kinds".into())),
    };
    let satisfied = body.get("satisfied").or_else(|| body.pointer("/copies/satisfied")).and_then(Value::as_bool);
    emit_json(a.output.out.as_deref(), body)?;
    Ok(if satisfied == Some(false) { 3 } else { 0 })
}

fn enum_types_cmd(a: EnumTypesArgs) -> Result<i32> {
    let family = load_family(&a.family)?;
    let kind = match (&a.palette, family.type_kind()) {
        (None, kind) => kind,
        (Some(p), TypeKind::DirType { palette }) => {
            let chosen: Palette = p.parse()?;
            if palette.mask() & !chosen.mask() != 0 {
                return Err(Error::KindMismatch(format!("palette {p} misses states used by the family")));
            }
            TypeKind::DirType { palette: chosen }
        }
        (Some(_), TypeKind::RType { .. }) => {
            return Err(Error::KindMismatch("--palette applies to digraph families only".into()));
        }
    };
    let types = enumerate_types(kind, a.k_max, &family)?;
    let code = if types.is_empty() { 3 } else { 0 };
    emit_json(
        a.output.out.as_deref(),
        json!({ "type_kind": kind_name(kind), "k_max": types.size_bound, "count": types.len(), "types": types.types }),
    )?;
    Ok(code)
}

fn kind_name(kind: TypeKind) -> Value {
    match kind {
        TypeKind::RType { r } => json!({ "kind": "rtype", "r": r }),
        TypeKind::DirType { palette } => json!({ "kind": "dirtype", "palette": palette }),
    }
}

fn fk_cmd(a: FkArgs) -> Result<i32> {
    let t = TypeGraph::from_json(&std::fs::read_to_string(&a.type_file)?)?;
    let p = if t.kind().is_directed() { arrow_probabilities(&a.p)? } else { color_probabilities(&a.p)? };
    let value = f_k(&t, &p)?;
    if a.json || a.output.out.is_some() {
        emit_json(a.output.out.as_deref(), json!({ "f_k": value, "type": t }))?;
    } else {
        println!("{value}");
    }
    Ok(0)
}

fn edit_distance_cmd(a: EditDistanceArgs) -> Result<i32> {
    let g = load(&a.graph)?;
    let family = load_family(&a.family)?;
    let d = distance_to_property(&g, &family)?;
    if let Some(path) = &a.witness {
        std::fs::write(path, write_any(&d.witness))?;
    }
    if a.json || a.output.out.is_some() {
        emit_json(a.output.out.as_deref(), json!({ "distance": d.distance, "n": g.vertex_count() }))?;
    } else {
        println!("{}", d.distance);
    }
    Ok(0)
}

fn bound_cmd(a: BoundArgs) -> Result<i32> {
    let family = load_family(&a.family)?;
    let p = probabilities_for(&family, &a.p)?;
    let kind = type_kind_for(&family, &p)?;
    let types = enumerate_types(kind, a.k_max, &family)?;
    let mut body = json!({ "n": a.n, "k_max": a.k_max, "types_searched": types.len() });
    let code = if types.is_empty() {
        body["bound"] = Value::Null;
        body["note"] = json!("no type found");
        3
    } else {
        let lb = lower_bound_fk(&p, &types, a.n)?;
        body["bound"] = json!(lb.value);
        body["f_k"] = json!(lb.f_k);
        body["best_type"] = to_value(&lb.best)?;
        0
    };
    if let Some(order) = a.order {
        let r = match kind {
            TypeKind::RType { r } => r,
            TypeKind::DirType { .. } => 4,
        };
        body["error_term"] = json!(error_term(a.n, order, r, a.eps));
    }
    emit_json(a.output.out.as_deref(), body)?;
    Ok(code)
}

fn experiment_cmd(a: ExperimentArgs) -> Result<i32> {
    let family = load_family(&a.family)?;
    let p = probabilities_for(&family, &a.p)?;
    let report = experiment_theorem_app(&family, &p, &a.n_list, a.seeds, a.k_max)?;
    emit_json(a.output.out.as_deref(), to_value(&report)?)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["regracut", "no-such-command"]), 2);
        assert_eq!(run(["regracut", "fk"]), 2);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["regracut", "--help"]), 0);
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::TooLargeForExact { n: 9, cap: 7 }), 3);
        assert_eq!(exit_code(&Error::EmptySet), 2);
    }
}
