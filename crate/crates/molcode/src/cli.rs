//! Command-line surface.
//!
//! Exit status: 0 on success, 1 on data errors (including any rejected
//! record), 2 on usage errors. Settings come from flags, then from the
//! `--config` TOML file, then from defaults; the worker count additionally
//! falls back to `MOLCODE_WORKERS`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use molcode_core::align::{self, AlignMode, FeatureVector, DEFAULT_OUTLIER_THRESHOLD, DEFAULT_RIDGE};
use molcode_core::coverage::{self, CoverageReport, DatasetRecord, DatasetTable, Feature, Property, DEFAULT_EPSILON};
use molcode_core::descriptors::{binding_energy, e_gcn0, group_stats, AtomRefTable};
use molcode_core::gcn::{self, Gcn0};
use molcode_core::molgraph::Element;
use molcode_core::nbg::{self, ExtractMode, NbgTopology};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::ingest::{self, Ingest, Loaded, Reject, Source};
use crate::model::{read_model, write_model};
use crate::record::{record_line, to_line};
use crate::report::{RunConfig, TextTable};
use crate::tables::{parse_orbitals, parse_refs};
use crate::topo::{write_topology_set, TopologySet};

pub const WORKERS_ENV: &str = "MOLCODE_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "molcode",
    version,
    about = "Valence-environment codes, ring topologies and dataset coverage"
)]
pub struct Cli {
    /// TOML file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (falls back to MOLCODE_WORKERS, then the core count).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output path; `-` is standard output.
    #[arg(short, long, global = true)]
    pub output: Option<String>,
    /// Where rejected records go (JSON lines); standard error by default.
    #[arg(long, global = true)]
    pub rejects: Option<String>,
    /// Report format.
    #[arg(long, global = true)]
    pub format: Option<OutFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-molecule codes, levels, ring units and scaffold (JSON lines).
    Encode(ModeInputs),
    /// List codes of one level.
    Enumerate(EnumerateArgs),
    /// Exact number of level-2 codes over a level-1 list.
    CountGcn2(CountArgs),
    /// Closure of the ring-topology generator.
    GenerateNbg0(GenerateArgs),
    /// Cut vertices, cut edges and level per molecule.
    Cutset(Inputs),
    /// Unique-type statistics per dataset.
    Coverage(ModeInputs),
    /// Venn regions of two or three datasets along one axis.
    Compare(CompareArgs),
    /// Pairwise KL divergence of type distributions.
    Kl(KlArgs),
    /// Histogram of a per-molecule quantity.
    Hist(HistArgs),
    /// Ids within code-level and topology-level thresholds.
    Subset(SubsetArgs),
    /// Evaluation ids carrying types unseen in training.
    Complement(ComplementArgs),
    /// Occupation-weighted orbital energy per atom.
    Egcn0(Egcn0Args),
    /// Binding energy per molecule.
    BindEnergy(BindArgs),
    /// Linear cross-dataset alignment.
    #[command(subcommand)]
    Align(AlignCommand),
    /// Distinct structures per molecular formula.
    Composition(Inputs),
    /// Seeded synthetic molecules in record format.
    Synth(SynthArgs),
}

#[derive(Args, Debug)]
pub struct Inputs {
    /// Record (.jsonl) or MOL/SDF files; `-` reads standard input.
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ModeInputs {
    /// Topology extraction mode: element-order, skeleton or skeleton-no-order.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(required = true)]
    pub inputs: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Gcn0,
    Gcn1,
    Gcn2,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    pub level: Level,
    /// Element subset, e.g. `CNOF` or `O,F`.
    #[arg(long)]
    pub elements: Option<String>,
    /// Level-1 list for `gcn2` (default: the full enumerated list).
    #[arg(long)]
    pub gcn1_list: Option<String>,
    /// Maximum number of level-2 codes to print.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// One level-1 code per line; `-` reads standard input.
    #[arg(long)]
    pub gcn1_list: Option<String>,
    #[arg(long)]
    pub elements: Option<String>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub max_heavy: Option<usize>,
    /// Also emit isovalent substitutions with these heteroatoms (e.g. `N,O`).
    #[arg(long)]
    pub substitute: Option<String>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub mode: Option<String>,
    /// gcn0, gcn1, gcn2, nbg0, nbg-plus or scaffold.
    #[arg(long)]
    pub feature: Option<String>,
    #[arg(required = true, num_args = 2..=3)]
    pub inputs: Vec<String>,
}

#[derive(Args, Debug)]
pub struct KlArgs {
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub feature: Option<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(required = true, num_args = 2..)]
    pub inputs: Vec<String>,
}

#[derive(Args, Debug)]
pub struct HistArgs {
    /// `na`, `binding-energy` or a record property name.
    #[arg(long)]
    pub property: Option<String>,
    /// Number of bins (default: unit-width bins).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Reference energies, needed for `binding-energy`.
    #[arg(long)]
    pub refs: Option<String>,
    /// Property holding the total energy for `binding-energy`.
    #[arg(long)]
    pub total: Option<String>,
    pub input: String,
}

#[derive(Args, Debug)]
pub struct SubsetArgs {
    #[arg(long)]
    pub gcn2_level: Option<usize>,
    #[arg(long)]
    pub nbg_level: Option<usize>,
    pub input: String,
}

#[derive(Args, Debug)]
pub struct ComplementArgs {
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub feature: Option<String>,
    #[arg(long)]
    pub na_cap: Option<usize>,
    pub train: String,
    pub eval: String,
}

#[derive(Args, Debug)]
pub struct Egcn0Args {
    /// Rows of `atom orbital occupancy energy [group]`.
    pub orbitals: String,
}

#[derive(Args, Debug)]
pub struct BindArgs {
    /// Rows of `element energy`.
    #[arg(long)]
    pub refs: Option<String>,
    /// Property holding the total energy.
    #[arg(long)]
    pub total: Option<String>,
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum AlignCommand {
    /// Fit a model from paired source and target properties.
    Fit(AlignFitArgs),
    /// Map source values through a model.
    Apply(AlignApplyArgs),
    /// Residuals of a model on paired data.
    Stats(AlignStatsArgs),
}

#[derive(Args, Debug)]
pub struct AlignFitArgs {
    /// plain, composition or gcn1.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub ridge: Option<f64>,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    pub input: String,
}

#[derive(Args, Debug)]
pub struct AlignApplyArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub source: Option<String>,
    pub input: String,
}

#[derive(Args, Debug)]
pub struct AlignStatsArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub threshold: Option<f64>,
    pub input: String,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_heavy: Option<usize>,
}

/// Values a config file may supply. Keys mirror the long flag names with
/// `_` for `-`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub output: Option<String>,
    pub rejects: Option<String>,
    pub format: Option<OutFormat>,
    pub mode: Option<String>,
    pub elements: Option<String>,
    pub gcn1_list: Option<String>,
    pub limit: Option<u64>,
    pub max_heavy: Option<usize>,
    pub substitute: Option<String>,
    pub feature: Option<String>,
    pub epsilon: Option<f64>,
    pub property: Option<String>,
    pub bins: Option<usize>,
    pub refs: Option<String>,
    pub total: Option<String>,
    pub gcn2_level: Option<usize>,
    pub nbg_level: Option<usize>,
    pub na_cap: Option<usize>,
    pub align_mode: Option<String>,
    pub ridge: Option<f64>,
    pub source: Option<String>,
    pub target: Option<String>,
    pub threshold: Option<f64>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
}

/// Error kinds mapped to exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] anyhow::Error),
    #[error("{0} record(s) rejected")]
    Rejected(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Rejected(_) => "rejects",
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses arguments, runs, and returns the process exit status. Errors are
/// reported on standard error as one JSON object.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            let report = json!({
                "status": "error",
                "kind": e.kind(),
                "exit_code": e.exit_code(),
                "message": format!("{e:#}"),
            });
            eprintln!("{report}");
            e.exit_code()
        }
    }
}

struct Ctx {
    file: FileConfig,
    output: Option<String>,
    rejects: Option<String>,
    format: OutFormat,
    pending_rejects: Vec<Reject>,
}

impl Ctx {
    fn mode(&self, flag: &Option<String>) -> Result<ExtractMode, CliError> {
        match flag.as_deref().or(self.file.mode.as_deref()) {
            None => Ok(ExtractMode::default()),
            Some(m) => ExtractMode::from_name(m).ok_or_else(|| usage(format!("unknown mode `{m}`"))),
        }
    }

    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match self.output.as_deref() {
            None | Some("-") => Box::new(BufWriter::new(io::stdout().lock())),
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {p}"))?,
            )),
        })
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        let mut w = self.writer()?;
        w.write_all(text.as_bytes())?;
        w.flush()?;
        Ok(())
    }

    fn absorb(&mut self, loaded: &mut Loaded) {
        for w in &loaded.warnings {
            eprintln!("warning: {}:{} {}: {}", w.source, w.line, w.id, w.message);
        }
        self.pending_rejects.append(&mut loaded.rejects);
    }

    fn load(&mut self, path: &str) -> anyhow::Result<Loaded> {
        let mut l = ingest::load(path).with_context(|| format!("reading {path}"))?;
        self.absorb(&mut l);
        Ok(l)
    }

    fn finish(&mut self) -> Result<(), CliError> {
        if self.pending_rejects.is_empty() {
            return Ok(());
        }
        let mut text = String::new();
        for r in &self.pending_rejects {
            text += &serde_json::to_string(r).expect("json");
            text.push('\n');
        }
        match self.rejects.as_deref() {
            None | Some("-") => eprint!("{text}"),
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {p}"))?,
        }
        Err(CliError::Rejected(self.pending_rejects.len()))
    }
}

fn read_text(path: &str) -> anyhow::Result<(String, String)> {
    let bytes = if path == "-" {
        let mut b = Vec::new();
        io::Read::read_to_end(&mut io::stdin().lock(), &mut b)?;
        b
    } else {
        std::fs::read(path).with_context(|| format!("reading {path}"))?
    };
    let digest = ingest::sha256_hex(&bytes[..])?;
    Ok((
        String::from_utf8(bytes).with_context(|| format!("{path} is not UTF-8"))?,
        digest,
    ))
}

fn parse_elements(s: Option<&str>) -> Result<Vec<Element>, CliError> {
    let Some(s) = s else {
        return Ok(Element::HEAVY.to_vec());
    };
    let mut out = BTreeSet::new();
    for tok in s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let symbols: Vec<String> = if tok.chars().all(|c| c.is_ascii_uppercase()) {
            tok.chars().map(String::from).collect()
        } else {
            vec![tok.to_string()]
        };
        for sym in symbols {
            match Element::from_symbol(&sym) {
                Some(e) if e.is_heavy() => {
                    out.insert(e);
                }
                _ => return Err(usage(format!("unsupported element `{sym}`"))),
            }
        }
    }
    if out.is_empty() {
        return Err(usage("empty element set"));
    }
    Ok(out.into_iter().collect())
}

fn parse_feature(name: Option<&str>, mode: ExtractMode, allowed: &[&str]) -> Result<Feature, CliError> {
    let name = name.ok_or_else(|| usage("--feature is required"))?;
    let f = Feature::parse(name, mode).ok_or_else(|| usage(format!("unknown feature `{name}`")))?;
    if !allowed.contains(&f.name()) {
        return Err(usage(format!(
            "feature `{name}` is not available here; use one of {}",
            allowed.join(", ")
        )));
    }
    Ok(f)
}

fn workers(cli: &Cli, file: &FileConfig) -> Result<usize, CliError> {
    let env = match std::env::var(WORKERS_ENV) {
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| usage(format!("{WORKERS_ENV} must be a positive integer")))?,
        ),
        Err(_) => None,
    };
    let n = cli
        .workers
        .or(file.workers)
        .or(env)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if n == 0 {
        return Err(usage("worker count must be at least 1"));
    }
    Ok(n)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("reading config {}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| usage(format!("config {}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let n = workers(&cli, &file)?;
    let mut ctx = Ctx {
        output: cli.output.clone().or(file.output.clone()),
        rejects: cli.rejects.clone().or(file.rejects.clone()),
        format: cli.format.or(file.format).unwrap_or(OutFormat::Text),
        file,
        pending_rejects: Vec::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Data(anyhow!("starting workers: {e}")))?;
    pool.install(|| dispatch(&cli.command, &mut ctx))?;
    ctx.finish()
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<(), CliError> {
    match cmd {
        Command::Encode(a) => encode(a, ctx),
        Command::Enumerate(a) => enumerate(a, ctx),
        Command::CountGcn2(a) => count_gcn2(a, ctx),
        Command::GenerateNbg0(a) => generate(a, ctx),
        Command::Cutset(a) => cutset(a, ctx),
        Command::Coverage(a) => coverage_cmd(a, ctx),
        Command::Compare(a) => compare(a, ctx),
        Command::Kl(a) => kl(a, ctx),
        Command::Hist(a) => hist(a, ctx),
        Command::Subset(a) => subset(a, ctx),
        Command::Complement(a) => complement(a, ctx),
        Command::Egcn0(a) => egcn0_cmd(a, ctx),
        Command::BindEnergy(a) => bind(a, ctx),
        Command::Align(a) => align_cmd(a, ctx),
        Command::Composition(a) => composition(a, ctx),
        Command::Synth(a) => synth(a, ctx),
    }
}

/// Runs `f` over every record of every input in order, a chunk at a time,
/// and writes the per-record output lines after the header.
fn per_record<F>(inputs: &[String], ctx: &mut Ctx, cfg: &mut RunConfig, f: F) -> Result<(), CliError>
where
    F: Fn(&DatasetRecord) -> Result<String, String> + Sync,
{
    let mut sources = Vec::new();
    for p in inputs {
        let s = Source::open(p).with_context(|| format!("reading {p}"))?;
        cfg.input(&s.path, &s.digest);
        sources.push(s);
    }
    let mut w = ctx.writer()?;
    w.write_all(cfg.header().as_bytes()).map_err(anyhow::Error::from)?;
    for s in sources {
        let path = s.path.clone();
        let mut ing = Ingest::new(s);
        while let Some(chunk) = ing.next_chunk().with_context(|| format!("reading {path}"))? {
            let out: Vec<Result<String, String>> = chunk.par_iter().map(&f).collect();
            for (r, o) in chunk.iter().zip(out) {
                match o {
                    Ok(line) => {
                        w.write_all(line.as_bytes()).map_err(anyhow::Error::from)?;
                        w.write_all(b"\n").map_err(anyhow::Error::from)?;
                    }
                    Err(reason) => ctx.pending_rejects.push(Reject {
                        source: path.clone(),
                        line: 0,
                        id: Some(r.id.clone()),
                        reason,
                    }),
                }
            }
        }
        let mut l = Loaded {
            table: DatasetTable::new(""),
            path: path.clone(),
            digest: String::new(),
            rejects: std::mem::take(&mut ing.rejects),
            warnings: std::mem::take(&mut ing.warnings),
        };
        ctx.absorb(&mut l);
    }
    w.flush().map_err(anyhow::Error::from)?;
    Ok(())
}

fn encode_record(r: &DatasetRecord, mode: ExtractMode) -> Result<String, String> {
    let g = &r.graph;
    let codes = gcn::encode(g).map_err(|e| e.to_string())?;
    let class = nbg::nbg_plus_class(g);
    let units: Vec<String> = nbg::nbg0_extract(g, mode)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|t| t.signature)
        .collect();
    let scaffold = nbg::scaffold(g, mode).map_err(|e| e.to_string())?.map(|t| t.signature);
    let mut obj = serde_json::Map::new();
    obj.insert("id".into(), json!(r.id));
    if let Some(c) = &r.conformer {
        obj.insert("conformer".into(), json!(c));
    }
    obj.insert("na".into(), json!(g.na()));
    obj.insert("gcn0".into(), json!(codes.iter().map(|c| &c.gcn0).collect::<Vec<_>>()));
    obj.insert("gcn1".into(), json!(codes.iter().map(|c| &c.gcn1).collect::<Vec<_>>()));
    obj.insert("gcn2".into(), json!(codes.iter().map(|c| &c.gcn2).collect::<Vec<_>>()));
    obj.insert("gcn2_level".into(), json!(gcn::gcn2_level(g)));
    obj.insert("vc".into(), json!(class.vc_count));
    obj.insert("ec".into(), json!(class.ec_count));
    obj.insert("nbg_level".into(), json!(class.level));
    obj.insert("within_plus".into(), json!(class.within_plus));
    obj.insert("nbg0".into(), json!(units));
    obj.insert("scaffold".into(), json!(scaffold));
    Ok(Value::Object(obj).to_string())
}

fn encode(a: &ModeInputs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mode = ctx.mode(&a.mode)?;
    let mut cfg = RunConfig::new("encode");
    cfg.set("mode", mode.name());
    per_record(&a.inputs, ctx, &mut cfg, |r| encode_record(r, mode))
}

fn cutset(a: &Inputs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mut cfg = RunConfig::new("cutset");
    per_record(&a.inputs, ctx, &mut cfg, |r| {
        let c = nbg::nbg_plus_class(&r.graph);
        Ok(format!(
            "{} vc={} ec={} level={}",
            r.id, c.vc_count, c.ec_count, c.level
        ))
    })
}

fn sorted_desc(mut codes: Vec<String>) -> String {
    codes.sort_unstable_by(|a, b| b.cmp(a));
    let mut s = String::with_capacity(codes.iter().map(|c| c.len() + 1).sum());
    for c in codes {
        s.push_str(&c);
        s.push('\n');
    }
    s
}

fn gcn1_list(path: Option<&str>, elements: &[Element]) -> Result<Vec<String>, CliError> {
    Ok(match path {
        Some(p) => read_text(p)?
            .0
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect(),
        None => gcn::enumerate_gcn1(elements)
            .map_err(|e| usage(e.to_string()))?
            .into_iter()
            .map(|c| c.text)
            .collect(),
    })
}

fn enumerate(a: &EnumerateArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let elements = parse_elements(a.elements.as_deref().or(ctx.file.elements.as_deref()))?;
    let codes = match a.level {
        Level::Gcn0 => gcn::enumerate_gcn0(&elements).map_err(|e| usage(e.to_string()))?,
        Level::Gcn1 => gcn::enumerate_gcn1(&elements).map_err(|e| usage(e.to_string()))?,
        Level::Gcn2 => {
            let limit = a
                .limit
                .or(ctx.file.limit)
                .ok_or_else(|| usage("enumerate gcn2 needs --limit"))?;
            let list = gcn1_list(a.gcn1_list.as_deref().or(ctx.file.gcn1_list.as_deref()), &elements)?;
            let universe = Gcn0::universe(&elements).map_err(|e| usage(e.to_string()))?;
            let stream = gcn::enumerate_gcn2_stream(&universe, &list, usize::try_from(limit).unwrap_or(usize::MAX))
                .map_err(|e| anyhow!("{e}"))?;
            let mut s = String::new();
            for c in stream {
                s.push_str(&c.text);
                s.push('\n');
            }
            return ctx.emit(&s).map_err(CliError::from);
        }
    };
    ctx.emit(&sorted_desc(codes.into_iter().map(|c| c.text).collect()))?;
    Ok(())
}

fn count_gcn2(a: &CountArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let elements = parse_elements(a.elements.as_deref().or(ctx.file.elements.as_deref()))?;
    let path = a
        .gcn1_list
        .as_deref()
        .or(ctx.file.gcn1_list.as_deref())
        .ok_or_else(|| usage("--gcn1-list is required"))?;
    let list = gcn1_list(Some(path), &elements)?;
    let universe = Gcn0::universe(&elements).map_err(|e| usage(e.to_string()))?;
    let n = gcn::count_gcn2(&universe, &list).map_err(|e| anyhow!("{e}"))?;
    ctx.emit(&format!("{n}\n"))?;
    Ok(())
}

fn generate(a: &GenerateArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let max = a
        .max_heavy
        .or(ctx.file.max_heavy)
        .ok_or_else(|| usage("--max-heavy is required"))?;
    if !nbg::GENERATE_RANGE.contains(&max) {
        return Err(usage(format!(
            "--max-heavy must lie in {}..={}",
            nbg::GENERATE_RANGE.start(),
            nbg::GENERATE_RANGE.end()
        )));
    }
    let topologies = nbg::nbg0_generate_with(max, |frontier| {
        frontier.par_iter().map(|g| nbg::expand(g, max)).collect()
    })
    .map_err(|e| anyhow!("{e}"))?;
    let substitute = a.substitute.as_deref().or(ctx.file.substitute.as_deref());
    let (mode, signatures) = match substitute {
        None => (
            "skeleton",
            topologies.into_iter().map(|t| t.signature).collect::<BTreeSet<_>>(),
        ),
        Some(s) => {
            let hetero = parse_elements(Some(s))?;
            if hetero.iter().any(|e| !matches!(e, Element::N | Element::O)) {
                return Err(usage("--substitute accepts N and O"));
            }
            let parts: Vec<Vec<NbgTopology>> = topologies
                .par_iter()
                .map(|t| nbg::isovalent_substitutions(t, &hetero))
                .collect::<Result<_, _>>()
                .map_err(|e| anyhow!("{e}"))?;
            (
                "element-order",
                parts.into_iter().flatten().map(|t| t.signature).collect(),
            )
        }
    };
    ctx.emit(&write_topology_set(&TopologySet {
        mode: mode.to_string(),
        max_heavy: Some(max),
        signatures,
    }))?;
    Ok(())
}

/// Coverage of one input, merged from per-shard partial reports.
fn coverage_of(path: &str, mode: ExtractMode, ctx: &mut Ctx, cfg: &mut RunConfig) -> Result<CoverageReport, CliError> {
    let s = Source::open(path).with_context(|| format!("reading {path}"))?;
    cfg.input(&s.path, &s.digest);
    let name = s.name();
    let mut ing = Ingest::new(s);
    let mut total = CoverageReport {
        name: name.clone(),
        scaffold_mode: mode,
        ..Default::default()
    };
    while let Some(chunk) = ing.next_chunk().with_context(|| format!("reading {path}"))? {
        let parts: Vec<CoverageReport> = chunk
            .par_chunks(256)
            .map(|shard| coverage::coverage_partial(&name, shard, mode))
            .collect::<Result<_, _>>()
            .map_err(|e| anyhow!("{e}"))?;
        for p in parts {
            total.merge(p);
        }
    }
    let mut l = Loaded {
        table: DatasetTable::new(""),
        path: path.to_string(),
        digest: String::new(),
        rejects: std::mem::take(&mut ing.rejects),
        warnings: std::mem::take(&mut ing.warnings),
    };
    ctx.absorb(&mut l);
    Ok(total)
}

fn coverage_json(r: &CoverageReport) -> Value {
    json!({
        "name": r.name,
        "molecules": r.molecules(),
        "conformations": r.conformations,
        "gcn0": r.gcn0.len(),
        "gcn1": r.gcn1.len(),
        "gcn2": r.gcn2.len(),
        "nbg0_element_order": r.nbg0_element_order.len(),
        "nbg0_skeleton": r.nbg0_skeleton.len(),
        "nbg0_skeleton_no_order": r.nbg0_skeleton_no_order.len(),
        "scaffold_mode": r.scaffold_mode.name(),
        "scaffolds": r.scaffolds.len(),
        "within_plus": r.within_plus,
        "nbg_plus_levels": r.nbg_plus_levels,
        "gcn2_levels": r.gcn2_levels,
        "na_histogram": r.na_histogram,
    })
}

fn coverage_cmd(a: &ModeInputs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mode = ctx.mode(&a.mode)?;
    let mut cfg = RunConfig::new("coverage");
    cfg.set("mode", mode.name());
    let reports = a
        .inputs
        .iter()
        .map(|p| coverage_of(p, mode, ctx, &mut cfg))
        .collect::<Result<Vec<_>, _>>()?;
    if ctx.format == OutFormat::Json {
        let v = json!({"header": cfg.header_json(), "datasets": reports.iter().map(coverage_json).collect::<Vec<_>>()});
        ctx.emit(&format!("{v:#}\n"))?;
        return Ok(());
    }
    let mut names = vec!["metric".to_string()];
    names.extend(reports.iter().map(|r| r.name.clone()));
    let mut t = TextTable::new(&names);
    let mut row = |label: &str, f: &dyn Fn(&CoverageReport) -> usize| {
        let mut cells = vec![label.to_string()];
        cells.extend(reports.iter().map(|r| f(r).to_string()));
        t.row(&cells);
    };
    row("molecules", &|r| r.molecules());
    row("conformations", &|r| r.conformations);
    row("gcn0", &|r| r.gcn0.len());
    row("gcn1", &|r| r.gcn1.len());
    row("gcn2", &|r| r.gcn2.len());
    row("nbg0 element-order", &|r| r.nbg0_element_order.len());
    row("nbg0 skeleton", &|r| r.nbg0_skeleton.len());
    row("nbg0 skeleton-no-order", &|r| r.nbg0_skeleton_no_order.len());
    row(&format!("scaffold {}", mode.name()), &|r| r.scaffolds.len());
    row("within nbg-plus", &|r| r.within_plus);
    let levels: BTreeSet<usize> = reports.iter().flat_map(|r| r.nbg_plus_levels.keys().copied()).collect();
    for l in levels {
        row(&format!("nbg-plus level {l}"), &|r| {
            r.nbg_plus_levels.get(&l).copied().unwrap_or(0)
        });
    }
    let levels: BTreeSet<usize> = reports.iter().flat_map(|r| r.gcn2_levels.keys().copied()).collect();
    for l in levels {
        row(&format!("gcn2 level {l}"), &|r| {
            r.gcn2_levels.get(&l).copied().unwrap_or(0)
        });
    }
    let sizes: BTreeSet<usize> = reports.iter().flat_map(|r| r.na_histogram.keys().copied()).collect();
    for n in sizes {
        row(&format!("na {n}"), &|r| r.na_histogram.get(&n).copied().unwrap_or(0));
    }
    ctx.emit(&(cfg.header() + &t.render()))?;
    Ok(())
}

const SET_FEATURES: [&str; 6] = ["gcn0", "gcn1", "gcn2", "nbg0", "nbg-plus", "scaffold"];

fn load_all(paths: &[String], ctx: &mut Ctx, cfg: &mut RunConfig) -> Result<Vec<DatasetTable>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        let l = ctx.load(p)?;
        cfg.input(&l.path, &l.digest);
        out.push(l.table);
    }
    Ok(out)
}

/// Type sets computed per record in parallel.
fn type_sets(t: &DatasetTable, feature: Feature) -> Result<BTreeSet<String>, CliError> {
    let parts: Vec<Vec<String>> = t
        .records()
        .par_iter()
        .map(|r| coverage::record_types(&r.graph, feature))
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow!("{e}"))?;
    Ok(parts.into_iter().flatten().collect())
}

fn type_counts(t: &DatasetTable, feature: Feature) -> Result<BTreeMap<String, u64>, CliError> {
    let parts: Vec<Vec<String>> = t
        .records()
        .par_iter()
        .map(|r| coverage::record_types(&r.graph, feature))
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow!("{e}"))?;
    let mut out = BTreeMap::new();
    for ty in parts.into_iter().flatten() {
        *out.entry(ty).or_insert(0) += 1;
    }
    Ok(out)
}

fn region_label(names: &[String], mask: u8) -> String {
    let inside: Vec<&str> = (0..names.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| names[i].as_str())
        .collect();
    let mut s = inside.join(" & ");
    if inside.len() < names.len() {
        s.push_str(" only");
    }
    s
}

fn compare(a: &CompareArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mode = ctx.mode(&a.mode)?;
    let feature = parse_feature(
        a.feature.as_deref().or(ctx.file.feature.as_deref()),
        mode,
        &SET_FEATURES,
    )?;
    let mut cfg = RunConfig::new("compare");
    cfg.set("feature", feature.name()).set("mode", mode.name());
    let tables = load_all(&a.inputs, ctx, &mut cfg)?;
    let sets = tables
        .iter()
        .map(|t| type_sets(t, feature))
        .collect::<Result<Vec<_>, _>>()?;
    let names: Vec<&str> = tables.iter().map(|t| t.name.as_str()).collect();
    let refs: Vec<&BTreeSet<String>> = sets.iter().collect();
    let o = coverage::overlap_sets(&names, &refs).map_err(|e| usage(e.to_string()))?;
    let masks: Vec<u8> = (1..(1u8 << names.len())).collect();
    if ctx.format == OutFormat::Json {
        let regions: Vec<Value> = masks
            .iter()
            .map(|&m| {
                let members: Vec<&str> = (0..names.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| names[i])
                    .collect();
                json!({"members": members, "count": o.region(m)})
            })
            .collect();
        let v = json!({"header": cfg.header_json(), "names": names, "sizes": sets.iter().map(BTreeSet::len).collect::<Vec<_>>(), "regions": regions, "union": o.union_size()});
        ctx.emit(&format!("{v:#}\n"))?;
        return Ok(());
    }
    let mut t = TextTable::new(&["region", "count"]);
    for (name, s) in names.iter().zip(&sets) {
        t.row(&[format!("{name} total"), s.len().to_string()]);
    }
    for &m in &masks {
        t.row(&[region_label(&o.names, m), o.region(m).to_string()]);
    }
    t.row(&["union".to_string(), o.union_size().to_string()]);
    ctx.emit(&(cfg.header() + &t.render()))?;
    Ok(())
}

fn kl(a: &KlArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mode = ctx.mode(&a.mode)?;
    let feature = parse_feature(
        a.feature.as_deref().or(ctx.file.feature.as_deref()),
        mode,
        &SET_FEATURES,
    )?;
    let eps = a.epsilon.or(ctx.file.epsilon).unwrap_or(DEFAULT_EPSILON);
    if !eps.is_finite() || eps <= 0.0 {
        return Err(usage("--epsilon must be positive"));
    }
    let mut cfg = RunConfig::new("kl");
    cfg.set("feature", feature.name())
        .set("mode", mode.name())
        .set("epsilon", eps);
    let tables = load_all(&a.inputs, ctx, &mut cfg)?;
    let counts = tables
        .iter()
        .map(|t| type_counts(t, feature))
        .collect::<Result<Vec<_>, _>>()?;
    let names: Vec<&str> = tables.iter().map(|t| t.name.as_str()).collect();
    let m = coverage::kl_from_counts(&names, &counts, eps).map_err(|e| anyhow!("{e}"))?;
    if ctx.format == OutFormat::Json {
        let v = json!({"header": cfg.header_json(), "epsilon": m.epsilon, "support": m.support, "rows_q": m.names, "cols_p": m.names, "values": m.values});
        ctx.emit(&format!("{v:#}\n"))?;
        return Ok(());
    }
    let mut head = vec!["Q \\ P".to_string()];
    head.extend(m.names.iter().cloned());
    let mut t = TextTable::new(&head);
    for (i, row) in m.values.iter().enumerate() {
        let mut cells = vec![m.names[i].clone()];
        cells.extend(row.iter().map(|v| format!("{v:.6}")));
        t.row(&cells);
    }
    let body = format!("# epsilon {} support {}\n{}", m.epsilon, m.support, t.render());
    ctx.emit(&(cfg.header() + &body))?;
    Ok(())
}

fn load_refs(path: &str, cfg: &mut RunConfig) -> Result<AtomRefTable, CliError> {
    let (text, digest) = read_text(path)?;
    cfg.input(path, &digest);
    Ok(parse_refs(&text).with_context(|| format!("reading {path}"))?)
}

fn hist(a: &HistArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let prop = a
        .property
        .clone()
        .or(ctx.file.property.clone())
        .ok_or_else(|| usage("--property is required"))?;
    let bins = a.bins.or(ctx.file.bins);
    if bins == Some(0) {
        return Err(usage("--bins must be at least 1"));
    }
    let mut cfg = RunConfig::new("hist");
    cfg.set("property", &prop).set("bins", bins);
    let l = ctx.load(&a.input)?;
    cfg.input(&l.path, &l.digest);
    let (values, missing) = if prop == "binding-energy" {
        let total = a
            .total
            .clone()
            .or(ctx.file.total.clone())
            .unwrap_or_else(|| "etot".into());
        cfg.set("total", &total);
        let refs_path = a
            .refs
            .clone()
            .or(ctx.file.refs.clone())
            .ok_or_else(|| usage("binding-energy needs --refs"))?;
        let refs = load_refs(&refs_path, &mut cfg)?;
        let mut values = Vec::new();
        let mut missing = 0;
        for r in l.table.records() {
            match r
                .props
                .get(&total)
                .map(|&e| binding_energy(e, &r.graph.composition(), &refs))
            {
                Some(Ok(v)) => values.push(v),
                _ => missing += 1,
            }
        }
        (values, missing)
    } else {
        coverage::property_values(&l.table, &Property::parse(&prop))
    };
    let mut h = coverage::Histogram::auto(&values, bins);
    h.missing = missing;
    if ctx.format == OutFormat::Json {
        let v = json!({"header": cfg.header_json(), "edges": h.edges(), "counts": h.counts, "used": h.used(), "missing": h.missing, "out_of_range": h.out_of_range});
        ctx.emit(&format!("{v:#}\n"))?;
        return Ok(());
    }
    let mut s = cfg.header();
    s += &format!("# used {} missing {}\n", h.used(), h.missing);
    s += "lo\thi\tcount\n";
    let edges = h.edges();
    for (i, c) in h.counts.iter().enumerate() {
        s += &format!("{}\t{}\t{}\n", edges[i], edges[i + 1], c);
    }
    ctx.emit(&s)?;
    Ok(())
}

fn id_list(cfg: &RunConfig, ids: &BTreeSet<String>) -> String {
    let mut s = cfg.header();
    s += &format!("# count {}\n", ids.len());
    for id in ids {
        s.push_str(id);
        s.push('\n');
    }
    s
}

fn subset(a: &SubsetArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let g = a
        .gcn2_level
        .or(ctx.file.gcn2_level)
        .ok_or_else(|| usage("--gcn2-level is required"))?;
    let n = a
        .nbg_level
        .or(ctx.file.nbg_level)
        .ok_or_else(|| usage("--nbg-level is required"))?;
    let mut cfg = RunConfig::new("subset");
    cfg.set("gcn2_level", g).set("nbg_level", n);
    let l = ctx.load(&a.input)?;
    cfg.input(&l.path, &l.digest);
    let keep: Vec<bool> = l
        .table
        .records()
        .par_iter()
        .map(|r| gcn::gcn2_level(&r.graph) <= g && nbg::nbg_plus_class(&r.graph).level <= n)
        .collect();
    let ids = l
        .table
        .records()
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r.id.clone())
        .collect();
    ctx.emit(&id_list(&cfg, &ids))?;
    Ok(())
}

fn complement(a: &ComplementArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mode = ctx.mode(&a.mode)?;
    let feature = parse_feature(
        a.feature.as_deref().or(ctx.file.feature.as_deref()),
        mode,
        &["gcn1", "nbg-plus", "scaffold", "gcn0", "gcn2", "nbg0"],
    )?;
    let cap = a.na_cap.or(ctx.file.na_cap);
    let mut cfg = RunConfig::new("complement");
    cfg.set("feature", feature.name())
        .set("mode", mode.name())
        .set("na_cap", cap);
    let train = ctx.load(&a.train)?;
    cfg.input(&train.path, &train.digest);
    let eval = ctx.load(&a.eval)?;
    cfg.input(&eval.path, &eval.digest);
    let seen = type_sets(&train.table, feature)?;
    let flags: Vec<bool> = eval
        .table
        .records()
        .par_iter()
        .map(|r| {
            if cap.is_some_and(|c| r.graph.na() > c) {
                return Ok(false);
            }
            Ok(coverage::record_types(&r.graph, feature)?
                .iter()
                .any(|t| !seen.contains(t)))
        })
        .collect::<Result<_, coverage::CoverageError>>()
        .map_err(|e| anyhow!("{e}"))?;
    let ids = eval
        .table
        .records()
        .iter()
        .zip(flags)
        .filter(|(_, f)| *f)
        .map(|(r, _)| r.id.clone())
        .collect();
    ctx.emit(&id_list(&cfg, &ids))?;
    Ok(())
}

fn egcn0_cmd(a: &Egcn0Args, ctx: &mut Ctx) -> Result<(), CliError> {
    let mut cfg = RunConfig::new("egcn0");
    let (text, digest) = read_text(&a.orbitals)?;
    cfg.input(&a.orbitals, &digest);
    let atoms = parse_orbitals(&text).with_context(|| format!("reading {}", a.orbitals))?;
    let mut s = cfg.header();
    s += "atom\te_gcn0\torbitals\tgroup\n";
    let mut grouped = Vec::new();
    for at in &atoms {
        match e_gcn0(&at.records) {
            Ok(e) => {
                s += &format!(
                    "{}\t{}\t{}\t{}\n",
                    at.atom,
                    e,
                    at.records.len(),
                    at.group.as_deref().unwrap_or("-")
                );
                if let Some(g) = &at.group {
                    grouped.push((g.as_str(), e));
                }
            }
            Err(err) => ctx.pending_rejects.push(Reject {
                source: a.orbitals.clone(),
                line: 0,
                id: Some(at.atom.clone()),
                reason: err.to_string(),
            }),
        }
    }
    let stats = group_stats(grouped);
    if !stats.is_empty() {
        s += "\ngroup\tcount\tmean\tstd\n";
        for (g, st) in stats {
            s += &format!("{g}\t{}\t{}\t{}\n", st.count, st.mean, st.std);
        }
    }
    ctx.emit(&s)?;
    Ok(())
}

fn bind(a: &BindArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let refs_path = a
        .refs
        .clone()
        .or(ctx.file.refs.clone())
        .ok_or_else(|| usage("--refs is required"))?;
    let total = a
        .total
        .clone()
        .or(ctx.file.total.clone())
        .unwrap_or_else(|| "etot".into());
    let mut cfg = RunConfig::new("bind-energy");
    cfg.set("total", &total);
    let refs = load_refs(&refs_path, &mut cfg)?;
    let l = ctx.load(&a.input)?;
    cfg.input(&l.path, &l.digest);
    let mut s = cfg.header();
    s += "id\tbinding_energy\n";
    for r in l.table.records() {
        let res = match r.props.get(&total) {
            None => Err(format!("missing property `{total}`")),
            Some(&e) => binding_energy(e, &r.graph.composition(), &refs).map_err(|e| e.to_string()),
        };
        match res {
            Ok(v) => s += &format!("{}\t{}\n", r.id, v),
            Err(reason) => ctx.pending_rejects.push(Reject {
                source: l.path.clone(),
                line: 0,
                id: Some(r.id.clone()),
                reason,
            }),
        }
    }
    ctx.emit(&s)?;
    Ok(())
}

/// Feature vectors with targets; records lacking a property become rejects.
fn paired(
    t: &DatasetTable,
    path: &str,
    source: &str,
    target: Option<&str>,
    mode: AlignMode,
    ctx: &mut Ctx,
) -> Result<Vec<(String, FeatureVector, Option<f64>)>, CliError> {
    let results: Vec<Result<(FeatureVector, Option<f64>), String>> = t
        .records()
        .par_iter()
        .map(|r| {
            let e0 = *r
                .props
                .get(source)
                .ok_or_else(|| format!("missing property `{source}`"))?;
            let y = match target {
                Some(name) => Some(*r.props.get(name).ok_or_else(|| format!("missing property `{name}`"))?),
                None => None,
            };
            let v = align::features_of(&r.graph, e0, mode).map_err(|e| e.to_string())?;
            Ok((v, y))
        })
        .collect();
    let mut out = Vec::new();
    for (r, res) in t.records().iter().zip(results) {
        match res {
            Ok((v, y)) => out.push((r.id.clone(), v, y)),
            Err(reason) => ctx.pending_rejects.push(Reject {
                source: path.to_string(),
                line: 0,
                id: Some(r.id.clone()),
                reason,
            }),
        }
    }
    Ok(out)
}

fn required(v: Option<String>, flag: &str) -> Result<String, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required")))
}

fn align_cmd(a: &AlignCommand, ctx: &mut Ctx) -> Result<(), CliError> {
    match a {
        AlignCommand::Fit(a) => {
            let mode_name = a
                .mode
                .clone()
                .or(ctx.file.align_mode.clone())
                .unwrap_or_else(|| "plain".into());
            let mode =
                AlignMode::from_name(&mode_name).ok_or_else(|| usage(format!("unknown align mode `{mode_name}`")))?;
            let ridge = a.ridge.or(ctx.file.ridge).unwrap_or(DEFAULT_RIDGE);
            let source = required(a.source.clone().or(ctx.file.source.clone()), "source")?;
            let target = required(a.target.clone().or(ctx.file.target.clone()), "target")?;
            let mut cfg = RunConfig::new("align fit");
            cfg.set("mode", mode.name())
                .set("ridge", ridge)
                .set("source", &source)
                .set("target", &target);
            let l = ctx.load(&a.input)?;
            cfg.input(&l.path, &l.digest);
            let pairs: Vec<(FeatureVector, f64)> = paired(&l.table, &l.path, &source, Some(&target), mode, ctx)?
                .into_iter()
                .map(|(_, v, y)| (v, y.expect("target requested")))
                .collect();
            let m = align::fit(&pairs, mode, ridge).map_err(|e| anyhow!("{e}"))?;
            ctx.emit(&(cfg.header() + &write_model(&m)))?;
            Ok(())
        }
        AlignCommand::Apply(a) => {
            let (text, digest) = read_text(&a.model)?;
            let m = read_model(&text).with_context(|| format!("reading {}", a.model))?;
            let source = required(a.source.clone().or(ctx.file.source.clone()), "source")?;
            let mut cfg = RunConfig::new("align apply");
            cfg.set("source", &source).input(&a.model, &digest);
            let l = ctx.load(&a.input)?;
            cfg.input(&l.path, &l.digest);
            let mut s = cfg.header();
            s += "id\taligned\n";
            for (id, v, _) in paired(&l.table, &l.path, &source, None, m.mode, ctx)? {
                match align::apply(&m, &v) {
                    Ok(y) => s += &format!("{id}\t{y}\n"),
                    Err(e) => ctx.pending_rejects.push(Reject {
                        source: l.path.clone(),
                        line: 0,
                        id: Some(id),
                        reason: e.to_string(),
                    }),
                }
            }
            ctx.emit(&s)?;
            Ok(())
        }
        AlignCommand::Stats(a) => {
            let (text, digest) = read_text(&a.model)?;
            let m = read_model(&text).with_context(|| format!("reading {}", a.model))?;
            let source = required(a.source.clone().or(ctx.file.source.clone()), "source")?;
            let target = required(a.target.clone().or(ctx.file.target.clone()), "target")?;
            let threshold = a.threshold.or(ctx.file.threshold).unwrap_or(DEFAULT_OUTLIER_THRESHOLD);
            let mut cfg = RunConfig::new("align stats");
            cfg.set("source", &source)
                .set("target", &target)
                .set("threshold", threshold);
            cfg.input(&a.model, &digest);
            let l = ctx.load(&a.input)?;
            cfg.input(&l.path, &l.digest);
            let mut pairs = Vec::new();
            for (id, v, y) in paired(&l.table, &l.path, &source, Some(&target), m.mode, ctx)? {
                if let Err(e) = align::apply(&m, &v) {
                    ctx.pending_rejects.push(Reject {
                        source: l.path.clone(),
                        line: 0,
                        id: Some(id),
                        reason: e.to_string(),
                    });
                    continue;
                }
                pairs.push((v, y.expect("target requested")));
            }
            let st = align::residual_stats(&m, &pairs, threshold).map_err(|e| anyhow!("{e}"))?;
            if ctx.format == OutFormat::Json {
                let v = json!({"header": cfg.header_json(), "mae": st.mae, "rmsd": st.rmsd, "outliers": st.outliers, "records": st.records});
                ctx.emit(&format!("{v:#}\n"))?;
            } else {
                let s = format!(
                    "{}mae {}\nrmsd {}\noutliers {}\nrecords {}\n",
                    cfg.header(),
                    st.mae,
                    st.rmsd,
                    st.outliers,
                    st.records
                );
                ctx.emit(&s)?;
            }
            Ok(())
        }
    }
}

fn composition(a: &Inputs, ctx: &mut Ctx) -> Result<(), CliError> {
    let mut cfg = RunConfig::new("composition");
    let mut rep = coverage::CompositionReport::default();
    for p in &a.inputs {
        let l = ctx.load(p)?;
        cfg.input(&l.path, &l.digest);
        let parts: Vec<coverage::CompositionReport> = l
            .table
            .records()
            .par_chunks(256)
            .map(|shard| {
                let t = DatasetTable::from_records("", shard.iter().cloned())?;
                coverage::composition_uniformity(&t)
            })
            .collect::<Result<_, _>>()
            .map_err(|e| anyhow!("{e}"))?;
        for part in parts {
            rep.merge(part);
        }
    }
    let under: BTreeSet<String> = rep.under_represented().into_iter().collect();
    if ctx.format == OutFormat::Json {
        let v = json!({"header": cfg.header_json(), "compositions": rep.counts(), "under_represented": under});
        ctx.emit(&format!("{v:#}\n"))?;
        return Ok(());
    }
    let mut t = TextTable::new(&["formula", "structures", "flag"]);
    for (f, n) in rep.counts() {
        let flag = if under.contains(&f) { "under-represented" } else { "" };
        t.row(&[f, n.to_string(), flag.to_string()]);
    }
    let body = format!(
        "# compositions {} under-represented {}\n{}",
        rep.structures.len(),
        under.len(),
        t.render()
    );
    ctx.emit(&(cfg.header() + &body))?;
    Ok(())
}

fn synth(a: &SynthArgs, ctx: &mut Ctx) -> Result<(), CliError> {
    let count = a.count.or(ctx.file.count).unwrap_or(1000);
    let seed = a.seed.or(ctx.file.seed).unwrap_or(0);
    let max = a.max_heavy.or(ctx.file.max_heavy).unwrap_or(32);
    if max == 0 || max > molcode_core::canon::MAX_VERTICES {
        return Err(usage(format!(
            "--max-heavy must lie in 1..={}",
            molcode_core::canon::MAX_VERTICES
        )));
    }
    let mut w = ctx.writer()?;
    for (i, g) in crate::synth::molecules(count, max, seed).enumerate() {
        let line = to_line(&record_line(&format!("s{i:07}"), &g));
        w.write_all(line.as_bytes()).map_err(anyhow::Error::from)?;
        w.write_all(b"\n").map_err(anyhow::Error::from)?;
    }
    w.flush().map_err(anyhow::Error::from)?;
    Ok(())
}
