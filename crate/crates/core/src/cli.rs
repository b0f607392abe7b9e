//! Command-line front end; the `gowers` binary is a thin wrapper over [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::sweep_scaling_identity;
use crate::coloring::{parse_coloring, ColoringJson};
use crate::domain::SearchBox;
use crate::engine::{
    emit_certificates, hunt_ladders, run_hunt, run_threshold_table, summary_csv, Campaign,
    Certificate, Engine, Verdict,
};
use crate::error::{Error, Result};
use crate::oracle::{find_witness, StructureKind, StructureSpec, Witness};
use crate::sat::{encode_avoidance, write_dimacs, EncodeOptions, SOLVER_ENV};
use crate::subspace::{
    finite_products, finite_sums, gowers_product_subspace, gowers_sum_subspace, EmitMode,
    GeneratorSet,
};
use crate::tuple::{KTuple, SpaceTag};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gowers",
    version,
    about = "Gowers subspaces, colorings and avoidance search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a generated structure.
    Generate(GenerateArgs),
    /// Look for a monochromatic target in a coloring file.
    Verify(VerifyArgs),
    /// Threshold table over a parameter grid.
    Search(SearchArgs),
    /// Write the avoidance CNF for one box.
    Encode(EncodeArgs),
    /// Avoidance verdict per box size for a pair of structures.
    Hunt(HuntArgs),
    /// Exhaustive sweep of the scaling identity.
    CheckAlgebra(CheckAlgebraArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sum,
    Product,
    Fs,
    Fp,
    SumFp,
    SumProduct,
}

impl From<KindArg> for StructureKind {
    fn from(k: KindArg) -> StructureKind {
        match k {
            KindArg::Sum => StructureKind::GowersSum,
            KindArg::Product => StructureKind::GowersProduct,
            KindArg::Fs => StructureKind::FiniteSums,
            KindArg::Fp => StructureKind::FiniteProducts,
            KindArg::SumFp => StructureKind::SumFpPair,
            KindArg::SumProduct => StructureKind::SumProductPair,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Oracle,
    Sat,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Oracle => Engine::Oracle,
            EngineArg::Sat => Engine::Sat,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Expr,
    Value,
}

/// Structure policy flags shared by several subcommands.
#[derive(Debug, Args)]
pub struct PolicyArgs {
    /// Generators must be pairwise distinct.
    #[arg(long)]
    pub distinct: bool,
    /// Only require the in-box part of a structure to be monochromatic.
    #[arg(long)]
    pub no_closure: bool,
    /// Restrict sum-side generators of pair kinds to positive tuples.
    #[arg(long)]
    pub positive_sum_generators: bool,
}

impl PolicyArgs {
    fn apply(&self, spec: StructureSpec) -> StructureSpec {
        spec.with_distinct(self.distinct)
            .with_closure(!self.no_closure)
            .with_positive_sum_generators(self.positive_sum_generators)
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Generators as `(a,b);(c,d)`, or `3;5` when k=1.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: String,
    #[arg(long, value_enum, default_value = "expr")]
    pub mode: ModeArg,
    #[arg(long)]
    pub distinct: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "sum")]
    pub kind: KindArg,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Product-side generator count for pair kinds.
    #[arg(long, default_value_t = 2)]
    pub m_prod: usize,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Dimensions: `1`, `1,2` or `1..3`.
    #[arg(long, default_value = "1")]
    pub k: String,
    /// Color counts, same syntax as `--k`.
    #[arg(long, default_value = "2")]
    pub r: String,
    /// Generator counts, same syntax as `--k`.
    #[arg(long, default_value = "2")]
    pub m: String,
    #[arg(long, default_value_t = 2)]
    pub m_prod: usize,
    #[arg(long, value_enum, default_value = "sum")]
    pub kind: KindArg,
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub nmax: u64,
    #[command(flatten)]
    pub run: RunArgs,
    /// Directory for certificates and summaries.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long, value_enum, default_value = "oracle")]
    pub engine: EngineArg,
    /// Solver command, run as `<command> <file.cnf>`; defaults to $GOWERS_SOLVER.
    #[arg(long)]
    pub solver: Option<String>,
    /// Search-node cap per instance.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Wall-clock cap per instance, in milliseconds.
    #[arg(long)]
    pub timeout_ms: Option<u64>,
    /// Worker threads; defaults to the number of processors.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also split each individual search across the workers.
    #[arg(long)]
    pub parallel_dfs: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub r: u32,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub m_prod: usize,
    #[arg(long, value_enum, default_value = "sum")]
    pub kind: KindArg,
    #[arg(long)]
    pub space: Option<String>,
    #[command(flatten)]
    pub policy: PolicyArgs,
    /// Output file; the formula goes to standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HuntArgs {
    #[arg(long, default_value = "1")]
    pub k: String,
    #[arg(long, default_value = "2")]
    pub r: String,
    /// Sum-side generator counts.
    #[arg(long, default_value = "2")]
    pub m: String,
    #[arg(long, default_value_t = 2)]
    pub m_prod: usize,
    #[arg(long, value_enum, default_value = "sum-product")]
    pub kind: KindArg,
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub nmin: Option<u64>,
    #[arg(long)]
    pub nmax: u64,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckAlgebraArgs {
    #[arg(long)]
    pub k: usize,
    /// Largest coordinate in the sweep.
    #[arg(long)]
    pub max: u64,
    /// Shift exponents, e.g. `1` or `0,1`; all of `0..k` when absent.
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

/// Parses `(1,0);(2,5)` or, for k=1, `3;5`.
pub fn parse_generators(text: &str, k: usize) -> Result<Vec<KTuple>> {
    let mut out = Vec::new();
    for (i, item) in text.split(';').enumerate() {
        let item = item.trim();
        if item.is_empty() {
            return Err(usage(format!("generator {} is empty", i + 1)));
        }
        let inner = match item.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| usage(format!("generator {} `{item}` lacks `)`", i + 1)))?,
            None if k == 1 => item,
            None => {
                return Err(usage(format!(
                    "generator {} `{item}` must be parenthesised",
                    i + 1
                )))
            }
        };
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim().parse::<u64>().map_err(|_| {
                    usage(format!(
                        "generator {}: `{}` is not a natural number",
                        i + 1,
                        c.trim()
                    ))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        if coords.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: coords.len(),
            });
        }
        out.push(KTuple::new(coords)?);
    }
    Ok(out)
}

/// Parses `3`, `1,2,5` or the inclusive range `1..4`.
pub fn parse_list<T>(text: &str, what: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr + Copy + Into<u64> + TryFrom<u64>,
{
    let bad = || usage(format!("--{what}: cannot parse `{text}`"));
    let one = |s: &str| s.trim().parse::<T>().map_err(|_| bad());
    let values = if let Some((a, b)) = text.split_once("..") {
        let (a, b): (u64, u64) = (one(a)?.into(), one(b)?.into());
        if a > b {
            return Err(bad());
        }
        (a..=b)
            .map(|v| T::try_from(v).map_err(|_| bad()))
            .collect::<Result<Vec<T>>>()?
    } else {
        text.split(',').map(one).collect::<Result<Vec<T>>>()?
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

fn parse_space(s: &Option<String>) -> Result<Option<SpaceTag>> {
    s.as_deref()
        .map(|name| {
            SpaceTag::from_name(name).ok_or_else(|| {
                usage(format!(
                    "unknown space `{name}`; expected Xk, Yk, N0k or Nk"
                ))
            })
        })
        .transpose()
}

fn spec_for(kind: KindArg, m: usize, m_prod: usize, policy: &PolicyArgs) -> StructureSpec {
    let kind = StructureKind::from(kind);
    let spec = if kind.is_pair() {
        StructureSpec::pair(kind, m, m_prod)
    } else {
        StructureSpec::simple(kind, m)
    };
    policy.apply(spec)
}

fn show(t: &KTuple) -> String {
    if t.dim() == 1 {
        t.coords()[0].to_string()
    } else {
        t.to_string()
    }
}

fn show_set(ts: &[KTuple]) -> String {
    let parts: Vec<String> = ts.iter().map(show).collect();
    format!("{{{}}}", parts.join(","))
}

type Out<'a> = &'a mut dyn Write;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Discrepancy { .. } => EXIT_DISCREPANCY,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Command, out: Out) -> Result<i32> {
    match cmd {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Search(a) => cmd_search(&a, out),
        Command::Encode(a) => cmd_encode(&a, out),
        Command::Hunt(a) => cmd_hunt(&a, out),
        Command::CheckAlgebra(a) => cmd_check_algebra(&a, out),
    }
}

fn no_csv(format: Format) -> Result<()> {
    if format == Format::Csv {
        return Err(usage("csv output is only available for search and hunt"));
    }
    Ok(())
}

pub fn cmd_generate(a: &GenerateArgs, out: Out) -> Result<i32> {
    no_csv(a.format)?;
    if a.k == 0 {
        return Err(usage("--k must be positive"));
    }
    let gens = parse_generators(&a.gens, a.k)?;
    let emit = match a.mode {
        ModeArg::Expr => EmitMode::Expression,
        ModeArg::Value => EmitMode::Value,
    };
    let elements = match a.kind {
        KindArg::Sum => Some(gowers_sum_subspace(
            &GeneratorSet::new(gens.clone(), a.distinct)?,
            emit,
        )?),
        KindArg::Product => Some(gowers_product_subspace(
            &GeneratorSet::new(gens.clone(), a.distinct)?,
            emit,
        )?),
        KindArg::Fs | KindArg::Fp => None,
        KindArg::SumFp | KindArg::SumProduct => {
            return Err(usage(
                "generate takes a single structure kind: sum, product, fs or fp",
            ))
        }
    };
    let values = match (&elements, a.kind) {
        (Some(els), _) => {
            let mut v: Vec<KTuple> = els.iter().map(|e| e.value.clone()).collect();
            v.sort();
            v.dedup();
            v
        }
        (None, KindArg::Fs) => {
            GeneratorSet::new(gens.clone(), a.distinct)?;
            for g in &gens {
                SpaceTag::Xk.require(g)?;
            }
            finite_sums(&gens)?
        }
        (None, _) => {
            GeneratorSet::new(gens.clone(), a.distinct)?;
            for g in &gens {
                SpaceTag::FullNk.require(g)?;
            }
            finite_products(&gens)?
        }
    };
    match (a.format, &elements, a.mode) {
        (Format::Json, Some(els), ModeArg::Expr) => {
            writeln!(out, "{}", serde_json::to_string_pretty(els)?)?;
        }
        (Format::Json, _, _) => writeln!(out, "{}", serde_json::to_string_pretty(&values)?)?,
        (_, Some(els), ModeArg::Expr) => {
            for e in els {
                writeln!(out, "{} -> {}", e.assignment, show(&e.value))?;
            }
        }
        _ => writeln!(out, "{}", show_set(&values))?,
    }
    Ok(EXIT_OK)
}

fn print_witness(w: &Witness, out: Out) -> Result<()> {
    writeln!(out, "witness color={}", w.color)?;
    if let Some(g) = &w.sum_generators {
        writeln!(out, "sum generators: {}", show_set(g.members()))?;
    }
    if let Some(g) = &w.prod_generators {
        writeln!(out, "product generators: {}", show_set(g.members()))?;
    }
    writeln!(out, "cells: {}", show_set(&w.generated_cells))?;
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs, out: Out) -> Result<i32> {
    no_csv(a.format)?;
    let text = fs::read_to_string(&a.file)?;
    let c = if text.trim_start().starts_with('{') {
        serde_json::from_str::<ColoringJson>(&text)?.into_coloring()?
    } else {
        parse_coloring(&text)?
    };
    let spec = spec_for(a.kind, a.m, a.m_prod, &a.policy);
    let witness = find_witness(&c, &spec)?;
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&witness)?)?,
        _ => match &witness {
            Some(w) => print_witness(w, out)?,
            None => writeln!(out, "none")?,
        },
    }
    Ok(if witness.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

#[allow(clippy::too_many_arguments)]
fn campaign_from(
    kind: KindArg,
    ks: &str,
    rs: &str,
    ms: &str,
    m_prod: usize,
    space: &Option<String>,
    n_max: u64,
    run: &RunArgs,
) -> Result<Campaign> {
    let mut c = Campaign::new(kind.into());
    c.ks = parse_list::<u32>(ks, "k")?
        .into_iter()
        .map(|k| k as usize)
        .collect();
    c.rs = parse_list(rs, "r")?;
    c.ms = parse_list::<u32>(ms, "m")?
        .into_iter()
        .map(|m| m as usize)
        .collect();
    c.m_prod = if c.kind.is_pair() { m_prod } else { 0 };
    c.n_max = n_max;
    c.space = parse_space(space)?;
    c.distinct_values = run.policy.distinct;
    c.closure = !run.policy.no_closure;
    c.sum_generators_positive = run.policy.positive_sum_generators;
    c.engine = run.engine.into();
    c.solver_command = run.solver.clone().or_else(|| {
        std::env::var(SOLVER_ENV)
            .ok()
            .filter(|s| !s.trim().is_empty())
    });
    c.node_budget = run.node_budget;
    c.instance_timeout = run.timeout_ms.map(Duration::from_millis);
    c.jobs = match run.jobs {
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    c.parallel_dfs = run.parallel_dfs;
    c.validate()?;
    Ok(c)
}

fn verdict_text(v: &Verdict) -> String {
    let opt = |u: Option<u64>| u.map_or("-".to_string(), |x| x.to_string());
    match v {
        Verdict::Threshold { value } => format!("threshold={value}"),
        Verdict::Unresolved { lower, upper } => {
            format!("unresolved lower={lower} upper={}", opt(*upper))
        }
        Verdict::Avoiding => "avoiding".to_string(),
        Verdict::Unavoidable => "unavoidable".to_string(),
    }
}

fn cert_line(cert: &Certificate) -> String {
    let fp = &cert.fingerprint;
    let mut s = format!("k={} r={} m={}", fp.k, fp.r, fp.spec.m_sum);
    if fp.spec.kind.is_pair() {
        s.push_str(&format!(" m_prod={}", fp.spec.m_prod));
    }
    if let Some(n) = fp.n {
        s.push_str(&format!(" N={n}"));
    }
    s.push(' ');
    s.push_str(&verdict_text(&cert.verdict));
    if let Some(a) = cert.agreement {
        s.push_str(&format!(" agreement={a}"));
    }
    s
}

pub fn cmd_search(a: &SearchArgs, out: Out) -> Result<i32> {
    let c = campaign_from(a.kind, &a.k, &a.r, &a.m, a.m_prod, &a.space, a.nmax, &a.run)?;
    let res = run_threshold_table(&c)?;
    if let Some(dir) = &a.out {
        emit_certificates(&res, dir)?;
    }
    match a.run.format {
        Format::Text => {
            for cert in &res.certificates {
                writeln!(out, "{}", cert_line(cert))?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&res.certificates)?)?,
        Format::Csv => write!(out, "{}", summary_csv(&res.certificates))?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_encode(a: &EncodeArgs, out: Out) -> Result<i32> {
    if a.k == 0 || a.r == 0 {
        return Err(usage("--k and --r must be positive"));
    }
    let spec = spec_for(a.kind, a.m, a.m_prod, &a.policy);
    spec.validate()?;
    let space = parse_space(&a.space)?.unwrap_or_else(|| spec.default_space());
    let enc = encode_avoidance(
        &SearchBox::new(a.k, a.n, space),
        a.r,
        &spec,
        &EncodeOptions::default(),
    )?;
    let text = write_dimacs(&enc.formula);
    match &a.out {
        Some(path) => {
            fs::write(path, &text)?;
            writeln!(
                out,
                "p cnf {} {}",
                enc.formula.num_vars,
                enc.formula.clauses.len()
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_hunt(a: &HuntArgs, out: Out) -> Result<i32> {
    if !StructureKind::from(a.kind).is_pair() {
        return Err(usage("hunt needs --kind sum-product or --kind sum-fp"));
    }
    let mut c = campaign_from(a.kind, &a.k, &a.r, &a.m, a.m_prod, &a.space, a.nmax, &a.run)?;
    c.n_min = a.nmin;
    c.validate()?;
    let res = run_hunt(&c)?;
    if let Some(dir) = &a.out {
        emit_certificates(&res, dir)?;
    }
    let ladders = hunt_ladders(&res);
    match a.run.format {
        Format::Text => {
            for cert in &res.certificates {
                writeln!(out, "{}", cert_line(cert))?;
            }
            let opt = |u: Option<u64>| u.map_or("-".to_string(), |x| x.to_string());
            for l in &ladders {
                writeln!(
                    out,
                    "ladder k={} r={} m={} m_prod={} largest_avoiding={} least_unavoidable={}",
                    l.k,
                    l.r,
                    l.m_sum,
                    l.m_prod,
                    opt(l.largest_avoiding),
                    opt(l.least_unavoidable)
                )?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&res.certificates)?)?,
        Format::Csv => write!(out, "{}", summary_csv(&res.certificates))?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_check_algebra(a: &CheckAlgebraArgs, out: Out) -> Result<i32> {
    no_csv(a.format)?;
    let shifts = a
        .j
        .as_deref()
        .map(|j| {
            parse_list::<u32>(j, "j").map(|v| v.into_iter().map(|x| x as usize).collect::<Vec<_>>())
        })
        .transpose()?;
    let sweep = sweep_scaling_identity(a.k, a.max, shifts.as_deref())?;
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&sweep)?)?,
        _ => {
            writeln!(out, "checked {} passed {}", sweep.checked, sweep.passed)?;
            writeln!(
                out,
                "constant scalings: checked {} passed {}",
                sweep.constant_checked, sweep.constant_passed
            )?;
            writeln!(out, "counterexamples: {}", sweep.counterexamples.len())?;
            for ce in &sweep.counterexamples {
                writeln!(
                    out,
                    "nbar={} x={} z={} j={} left={} right={}",
                    ce.nbar, ce.x, ce.z, ce.shift, ce.left, ce.right
                )?;
            }
        }
    }
    Ok(if sweep.counterexamples.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}
