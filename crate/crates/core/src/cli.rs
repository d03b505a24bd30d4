//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 `check` found failures, 2 parse or usage error,
//! 3 input outside the solvable class, 4 oracle size bound exceeded,
//! 5 invalid or missing sat-partition.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::check::{run_suite, Suite};
use crate::decomposition::{build_tree, to_dot, DecompError, TreeOptions};
use crate::format::{content_hash, emit_partition, parse_dimacs, parse_partition, GraphFile};
use crate::generators::{generate, GenError, GenSpec, Instance};
use crate::graph::{Graph, WeightedGraph};
use crate::hardness::build_wid_reduction;
use crate::oracle::{oracle_wid, OracleError};
use crate::patterns::{find_induced, PatternId};
use crate::satgraph::{find_sat_partition, gamma_transform, star_transform, SatError, SatPartition};
use crate::solver::{solve_naive_eq1_with, SolveError, Solver};
use crate::vertex_set::VertexSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_IN_CLASS: i32 = 3;
pub const EXIT_ORACLE_LIMIT: i32 = 4;
pub const EXIT_BAD_PARTITION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "indom", version, about = "Independent domination on (P5, co-P5)-free graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum weight independent dominating set of a graph file.
    Solve(SolveArgs),
    /// Build a reduction or gadget instance from a graph file.
    Reduce(ReduceArgs),
    /// Export the decomposition tree.
    Tree(TreeArgs),
    /// Test class membership.
    Recognize(RecognizeArgs),
    /// Run a validation suite over a corpus.
    Check(CheckArgs),
    /// Generate a corpus directory with a manifest.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub file: PathBuf,
    /// Read the file as 1-indexed DIMACS `p edge` format.
    #[arg(long)]
    pub dimacs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sound,
    Naive,
    Oracle,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Mode::Sound)]
    pub mode: Mode,
    /// Ignore or skip the weights section and weigh every vertex 1.
    #[arg(long)]
    pub unit_weights: bool,
    /// Branch at this vertex at the root of the decomposition tree.
    #[arg(long)]
    pub pin: Option<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "construction")]
pub struct Construction {
    /// Three-layer weighted reduction from domination.
    #[arg(long)]
    pub wid: bool,
    /// Split the A-B edge (A, B).
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub gamma: Option<Vec<usize>>,
    /// Split every A-B edge.
    #[arg(long)]
    pub star: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub construction: Construction,
    /// Partition file with lines `A ids...` and `B ids...`.
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, conflicts_with = "json")]
    pub dot: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    P5cop5,
    Sat,
    Patterns,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub class: Class,
    /// Comma-separated pattern names for `--class patterns`.
    #[arg(long, value_delimiter = ',', default_value = "P5,coP5")]
    pub patterns: Vec<PatternId>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub suite: Suite,
    /// Corpus manifest; defaults to the suite's built-in corpus.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Also write each failing instance to this directory.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Named,
    Gnp,
    Sat,
    Substitution,
    Planted,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p_max: f64,
    /// Forbidden patterns for `--kind gnp`.
    #[arg(long, value_delimiter = ',', default_value = "P5,coP5")]
    pub forbid: Vec<PatternId>,
    /// Attach random weights in `0..=W`.
    #[arg(long)]
    pub max_weight: Option<u64>,
    /// Graph names for `--kind named`.
    #[arg(long, value_delimiter = ',')]
    pub names: Vec<String>,
}

impl GenArgs {
    pub fn spec(&self) -> GenSpec {
        match self.kind {
            GenKind::Named => GenSpec::Named {
                names: self.names.clone(),
            },
            GenKind::Gnp => GenSpec::GnpFiltered {
                n_min: self.n_min,
                n_max: self.n_max,
                p_min: self.p_min,
                p_max: self.p_max,
                forbidden: self.forbid.clone(),
                seed: self.seed,
                count: self.count,
                max_weight: self.max_weight,
            },
            GenKind::Sat => GenSpec::SatRandom {
                n_max: self.n_max,
                seed: self.seed,
                count: self.count,
            },
            GenKind::Substitution => GenSpec::Substitution {
                n_max: self.n_max,
                seed: self.seed,
                count: self.count,
                max_weight: self.max_weight,
            },
            GenKind::Planted => GenSpec::PlantedModule {
                n_max: self.n_max,
                seed: self.seed,
                count: self.count,
                max_weight: self.max_weight.unwrap_or(100),
            },
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Decomposition(DecompError::NotInClass(_)) => Self::new(EXIT_NOT_IN_CLASS, e.to_string()),
            _ => Self::usage(e.to_string()),
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        SolveError::from(e).into()
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        Self::new(EXIT_ORACLE_LIMIT, e.to_string())
    }
}

impl From<SatError> for CliError {
    fn from(e: SatError) -> Self {
        match e {
            SatError::TooLarge { .. } => Self::new(EXIT_ORACLE_LIMIT, e.to_string()),
            SatError::Invalid(_) => Self::new(EXIT_BAD_PARTITION, e.to_string()),
            _ => Self::usage(e.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        Self::usage(e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::usage(format!("{}: {e}", path.display()))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::usage(format!("writing output: {e}")))
}

/// JSON record printed by `solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub input_hash: String,
    pub mode: String,
    pub value: Option<u64>,
    pub witness: Vec<usize>,
    pub feasible: bool,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

struct Input {
    file: GraphFile,
    hash: String,
}

fn read_input(args: &InputArgs) -> Result<Input, CliError> {
    let bytes = fs::read(&args.file).map_err(|e| io_error(&args.file, e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::usage("input is not UTF-8"))?;
    let file = if args.dimacs {
        GraphFile::unweighted(parse_dimacs(&text).map_err(|e| CliError::usage(e.to_string()))?)
    } else {
        GraphFile::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", args.file.display())))?
    };
    Ok(Input {
        file,
        hash: content_hash(&bytes),
    })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Reduce(a) => cmd_reduce(&a, out),
        Command::Tree(a) => cmd_tree(&a, out),
        Command::Recognize(a) => cmd_recognize(&a, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(&args.input)?;
    let g = if args.unit_weights {
        WeightedGraph::unit(input.file.graph.clone())
    } else {
        input
            .file
            .weighted()
            .ok_or_else(|| CliError::usage("no weights section; pass --unit-weights"))?
    };
    let record = solve_record(&g, args.mode, args.pin, &input.hash)?;
    write_out(out, &(serde_json::to_string(&record).unwrap() + "\n"))?;
    Ok(EXIT_OK)
}

pub fn solve_record(
    g: &WeightedGraph,
    mode: Mode,
    pin: Option<usize>,
    input_hash: &str,
) -> Result<ResultRecord, CliError> {
    let options = TreeOptions { root_vertex: pin };
    let start = Instant::now();
    let (value, witness) = match mode {
        Mode::Sound => {
            let sol = Solver::with_options(g, &options)?.solve(&[])?;
            (sol.weight(), sol.vertices().cloned())
        }
        Mode::Naive => {
            let r = solve_naive_eq1_with(g, &options)?;
            (Some(r.value), Some(r.witness))
        }
        Mode::Oracle => {
            let r = oracle_wid(g)?;
            (Some(r.value), Some(r.witness))
        }
    };
    Ok(ResultRecord {
        command: "solve".into(),
        input_hash: input_hash.to_string(),
        mode: serde_json::to_value(mode).unwrap().as_str().unwrap().to_string(),
        value,
        feasible: witness.is_some(),
        witness: witness.map(|w| w.to_vec()).unwrap_or_default(),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: None,
    })
}

fn partition_for(g: &Graph, path: Option<&Path>) -> Result<SatPartition, CliError> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| io_error(p, e))?;
            let (a, b) = parse_partition(&text, g.n()).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?;
            SatPartition::new(g, a, b)
                .map_err(|v| CliError::new(EXIT_BAD_PARTITION, format!("invalid sat-partition: {v}")))
        }
        None => find_sat_partition(g)?.ok_or_else(|| CliError::new(EXIT_BAD_PARTITION, "not a sat-graph")),
    }
}

#[derive(Serialize)]
struct PartitionMeta {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl From<&SatPartition> for PartitionMeta {
    fn from(p: &SatPartition) -> Self {
        PartitionMeta {
            a: p.a.to_vec(),
            b: p.b.to_vec(),
        }
    }
}

pub fn cmd_reduce(args: &ReduceArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(&args.input)?;
    let g = &input.file.graph;
    let c = &args.construction;
    let (file, meta) = if c.wid {
        let r = build_wid_reduction(g);
        let meta = serde_json::json!({
            "construction": "wid",
            "source_n": g.n(),
            "partition": PartitionMeta::from(&r.claimed_partition),
        });
        (GraphFile::from_weighted(&r.target), meta)
    } else {
        let p = partition_for(g, args.partition.as_deref())?;
        let (name, t) = match &c.gamma {
            Some(ab) => ("gamma", gamma_transform(g, &p, ab[0], ab[1])?),
            None => ("star", star_transform(g, &p)?),
        };
        let meta = serde_json::json!({
            "construction": name,
            "input_partition": PartitionMeta::from(&p),
            "partition": PartitionMeta::from(&t.partition),
            "markers": t.markers,
        });
        (GraphFile::unweighted(t.graph), meta)
    };
    let mut text = file.emit();
    text.push_str(&format!("# meta: {meta}\n"));
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

pub fn cmd_tree(args: &TreeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(&args.input)?;
    let tree = build_tree(&input.file.graph)?;
    let text = if args.dot {
        to_dot(&tree)
    } else {
        serde_json::to_string_pretty(&tree).unwrap() + "\n"
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

pub fn cmd_recognize(args: &RecognizeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(&args.input)?;
    let g = &input.file.graph;
    let report = match args.class {
        Class::Sat => match find_sat_partition(g)? {
            Some(p) => serde_json::json!({
                "class": "sat",
                "member": true,
                "message": "sat-graph",
                "partition": PartitionMeta::from(&p),
                "s": p.s(),
            }),
            None => serde_json::json!({"class": "sat", "member": false, "message": "not a sat-graph"}),
        },
        Class::P5cop5 | Class::Patterns => {
            let patterns = if args.class == Class::P5cop5 {
                vec![PatternId::P5, PatternId::CoP5]
            } else {
                args.patterns.clone()
            };
            let found: Vec<_> = patterns
                .iter()
                .map(|&p| serde_json::json!({"pattern": p, "occurrence": find_induced(g, p).map(|o| o.vertices)}))
                .collect();
            let member = found.iter().all(|f| f["occurrence"].is_null());
            serde_json::json!({
                "class": if args.class == Class::P5cop5 { "p5cop5" } else { "patterns" },
                "member": member,
                "message": if member { "free of all patterns" } else { "contains a forbidden pattern" },
                "patterns": found,
            })
        }
    };
    write_out(out, &(report.to_string() + "\n"))?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub sha256: String,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec: GenSpec,
    pub entries: Vec<ManifestEntry>,
}

/// Writes every instance as `<name>.graph` (plus `<name>.part` for
/// sat-graphs) and a `manifest.json` describing them.
pub fn write_corpus(dir: &Path, spec: &GenSpec, instances: &[Instance]) -> Result<Manifest, CliError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut entries = Vec::with_capacity(instances.len());
    for inst in instances {
        let text = GraphFile {
            graph: inst.graph.clone(),
            weights: inst.weights.clone(),
        }
        .emit();
        let file = format!("{}.graph", inst.name);
        let path = dir.join(&file);
        fs::write(&path, &text).map_err(|e| io_error(&path, e))?;
        let partition = match &inst.partition {
            Some(p) => {
                let name = format!("{}.part", inst.name);
                let path = dir.join(&name);
                fs::write(&path, emit_partition(&p.a, &p.b)).map_err(|e| io_error(&path, e))?;
                Some(name)
            }
            None => None,
        };
        entries.push(ManifestEntry {
            name: inst.name.clone(),
            file,
            sha256: content_hash(text.as_bytes()),
            n: inst.graph.n(),
            m: inst.graph.edge_count(),
            partition,
            module: inst.module.as_ref().map(VertexSet::to_vec),
        });
    }
    let manifest = Manifest {
        spec: spec.clone(),
        entries,
    };
    let path = dir.join("manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest).unwrap() + "\n").map_err(|e| io_error(&path, e))?;
    Ok(manifest)
}

/// Reads a manifest and its files, checking every hash.
pub fn load_corpus(manifest_path: &Path) -> Result<Vec<Instance>, CliError> {
    let text = fs::read_to_string(manifest_path).map_err(|e| io_error(manifest_path, e))?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", manifest_path.display())))?;
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    manifest
        .entries
        .iter()
        .map(|entry| {
            let path = dir.join(&entry.file);
            let bytes = fs::read(&path).map_err(|e| io_error(&path, e))?;
            if content_hash(&bytes) != entry.sha256 {
                return Err(CliError::usage(format!("{}: hash mismatch", path.display())));
            }
            let text = String::from_utf8(bytes).map_err(|_| CliError::usage("corpus file is not UTF-8"))?;
            let file = GraphFile::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let partition = match &entry.partition {
                Some(name) => Some(partition_for(&file.graph, Some(&dir.join(name)))?),
                None => None,
            };
            let module = match &entry.module {
                Some(ids) => Some(
                    VertexSet::try_from_ids(file.graph.n(), ids.iter().copied())
                        .map_err(|e| CliError::usage(e.to_string()))?,
                ),
                None => None,
            };
            Ok(Instance {
                name: entry.name.clone(),
                graph: file.graph,
                weights: file.weights,
                partition,
                module,
            })
        })
        .collect()
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let corpus = match &args.corpus {
        Some(path) => load_corpus(path)?,
        None => generate(&args.suite.default_corpus())?,
    };
    let report = run_suite(args.suite, &corpus);
    for f in &report.failures {
        eprintln!("failure {}: {}\n{}", f.name, f.detail, f.dump);
        if let Some(dir) = &args.dump_dir {
            fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
            let path = dir.join(format!("{}.graph", f.name));
            fs::write(&path, &f.dump).map_err(|e| io_error(&path, e))?;
        }
    }
    let summary = serde_json::json!({
        "suite": report.suite,
        "total": report.total,
        "passed": report.passed,
        "skipped": report.skipped,
        "failed": report.failures.len(),
        "failures": report.failures.iter().map(|f| serde_json::json!({"name": f.name, "detail": f.detail})).collect::<Vec<_>>(),
    });
    write_out(out, &(summary.to_string() + "\n"))?;
    Ok(if report.ok() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = args.spec();
    let instances = generate(&spec)?;
    let manifest = write_corpus(&args.out, &spec, &instances)?;
    write_out(out, &(serde_json::to_string(&manifest).unwrap() + "\n"))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn run_args(args: &[&str]) -> (Result<i32, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("indom").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = run(cli, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    fn write_graph(dir: &Path, name: &str, f: &GraphFile) -> String {
        let p = dir.join(name);
        fs::write(&p, f.emit()).unwrap();
        p.to_str().unwrap().to_string()
    }

    #[test]
    fn solve_modes_on_bull() {
        let dir = tempfile::tempdir().unwrap();
        let g = WeightedGraph::new(bull(), vec![1, 5, 5, 1, 100]).unwrap();
        let path = write_graph(dir.path(), "bull.graph", &GraphFile::from_weighted(&g));
        for mode in ["sound", "oracle"] {
            let (code, text) = run_args(&["solve", &path, "--mode", mode]);
            assert_eq!(code.unwrap(), 0);
            let r: ResultRecord = serde_json::from_str(&text).unwrap();
            assert_eq!((r.value, r.witness.clone(), r.feasible), (Some(6), vec![0, 2], true));
            assert_eq!(r.mode, mode);
        }
        let (_, text) = run_args(&["solve", &path, "--mode", "naive", "--pin", "4"]);
        let r: ResultRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(r.value, Some(2));
    }

    #[test]
    fn solve_errors() {
        let dir = tempfile::tempdir().unwrap();
        let k3 = write_graph(dir.path(), "k3.graph", &GraphFile::unweighted(complete(3)));
        let (code, text) = run_args(&["solve", &k3, "--unit-weights"]);
        assert_eq!(code.unwrap(), 0);
        assert!(text.contains("\"value\":1"));
        assert_eq!(run_args(&["solve", &k3]).0.unwrap_err().code, EXIT_USAGE);
        let p7 = write_graph(dir.path(), "p7.graph", &GraphFile::unweighted(path(7)));
        assert_eq!(
            run_args(&["solve", &p7, "--unit-weights"]).0.unwrap_err().code,
            EXIT_NOT_IN_CLASS
        );
        let big = write_graph(dir.path(), "big.graph", &GraphFile::unweighted(Graph::empty(30)));
        let (code, _) = run_args(&["solve", &big, "--unit-weights", "--mode", "oracle"]);
        assert_eq!(code.unwrap_err().code, EXIT_ORACLE_LIMIT);
        let bad = dir.path().join("bad.graph");
        fs::write(&bad, "2 1\n0 5\n").unwrap();
        let (code, _) = run_args(&["solve", bad.to_str().unwrap(), "--unit-weights"]);
        assert_eq!(code.unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn reduce_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write_graph(dir.path(), "p4.graph", &GraphFile::unweighted(path(4)));
        let (code, text) = run_args(&["reduce", &p4, "--wid"]);
        assert_eq!(code.unwrap(), 0);
        let f = GraphFile::parse(&text).unwrap();
        assert_eq!((f.graph.n(), f.graph.edge_count()), (12, 20));
        assert!(f.weights.is_some());

        let p3 = write_graph(dir.path(), "p3.graph", &GraphFile::unweighted(path(3)));
        let part = dir.path().join("p3.part");
        fs::write(&part, "A 1\nB 0 2\n").unwrap();
        // P3 with A = {1} is not a sat-partition (B = {0, 2} is not an edge).
        let (code, _) = run_args(&[
            "reduce",
            &p3,
            "--gamma",
            "1",
            "0",
            "--partition",
            part.to_str().unwrap(),
        ]);
        assert_eq!(code.unwrap_err().code, EXIT_BAD_PARTITION);
        fs::write(&part, "A 0\nB 1 2\n").unwrap();
        let (code, text) = run_args(&[
            "reduce",
            &p3,
            "--gamma",
            "0",
            "1",
            "--partition",
            part.to_str().unwrap(),
        ]);
        assert_eq!(code.unwrap(), 0);
        let expected = Graph::new(6, &[(3, 1), (1, 2), (3, 4), (4, 5), (0, 5), (3, 0)]).unwrap();
        assert_eq!(GraphFile::parse(&text).unwrap().graph, expected);
        assert!(text.contains("\"alpha_new\":[3]"));

        let k2k2 = GraphFile::unweighted(Graph::new(4, &[(0, 1), (2, 3)]).unwrap());
        let src = write_graph(dir.path(), "mk.graph", &k2k2);
        let (code, text) = run_args(&["reduce", &src, "--star"]);
        assert_eq!(code.unwrap(), 0);
        assert!(text.starts_with(&k2k2.emit()));
        let c5 = write_graph(dir.path(), "c5.graph", &GraphFile::unweighted(cycle(5)));
        assert_eq!(
            run_args(&["reduce", &c5, "--star"]).0.unwrap_err().code,
            EXIT_BAD_PARTITION
        );
    }

    #[test]
    fn tree_and_recognize() {
        let dir = tempfile::tempdir().unwrap();
        let k5 = write_graph(dir.path(), "k5.graph", &GraphFile::unweighted(complete(5)));
        let (_, dot) = run_args(&["tree", &k5, "--dot"]);
        assert!(dot.starts_with("digraph") && !dot.contains("->"));
        let (_, json) = run_args(&["tree", &k5, "--json"]);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["node_count"], 1);
        let c5 = write_graph(dir.path(), "c5.graph", &GraphFile::unweighted(cycle(5)));
        let (_, text) = run_args(&["recognize", &c5, "--class", "sat"]);
        assert!(text.contains("not a sat-graph"));
        let (_, text) = run_args(&["recognize", &c5, "--class", "patterns", "--patterns", "C5,P5"]);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["member"], false);
        assert_eq!(v["patterns"][1]["occurrence"], serde_json::Value::Null);
    }

    #[test]
    fn gen_then_check() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("corpus");
        let out_s = out.to_str().unwrap();
        let (code, _) = run_args(&[
            "gen", "--kind", "sat", "--out", out_s, "--n-max", "10", "--count", "12", "--seed", "4",
        ]);
        assert_eq!(code.unwrap(), 0);
        let manifest = out.join("manifest.json");
        let (code, text) = run_args(&["check", "--suite", "lemma1", "--corpus", manifest.to_str().unwrap()]);
        assert_eq!(code.unwrap(), 0, "{text}");
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["total"], 12);
        // Tampering with a file is detected.
        let first = out.join("sat-0000.graph");
        let mut t = fs::read_to_string(&first).unwrap();
        t.push_str("# edited\n");
        fs::write(&first, t).unwrap();
        let (code, _) = run_args(&["check", "--suite", "obs2", "--corpus", manifest.to_str().unwrap()]);
        assert_eq!(code.unwrap_err().code, EXIT_USAGE);
    }
}
