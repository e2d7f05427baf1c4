//! `gencayley`: build groups and involutions, decide subgroup codes,
//! export graphs, run the catalog census and the verification suites.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use gencayley::automorphism::{
    enumerate_automorphisms, enumerate_involutory_automorphisms, inversion_automorphism,
    load_automorphism_file, InversionAbsent,
};
use gencayley::census::{emit_report, run_census, CensusConfig, ReportFormat};
use gencayley::codes::{
    brute_force_codes_bounded, perfect_code_by, total_perfect_code_by, CodeKind, CodeMode,
    CODE_MODES, DEFAULT_BRUTE_FORCE_MAX_ORDER,
};
use gencayley::gencayley::{
    build_graph, check_dominates, check_independent, enumerate_subsets, eval_at_most_one,
    validate_subset, AT_MOST_ONE_MODES,
};
use gencayley::group::{catalog_up_to, load_group_file, GroupSpec};
use gencayley::subgroup::{enumerate_subgroups, Subgroup};
use gencayley::subgroup_codes::{
    decide_subgroup_pc, decide_subgroup_tpc, CodeWitness, Pairing, Verdict,
};
use gencayley::verify::{run_suites, VerifyConfig, SUITES};
use gencayley::{AlphaContext, AlphaRef, Automorphism, ElemSet, Error, GroupRef};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_THRESHOLD: u8 = 3;

const CSV_HELP: &str = "CSV columns: group, order, alpha_index, alpha, subgroup, \
alpha_preserves_h, is_pc, pc_witness, pc_witness_size, pc_refutation, is_tpc, tpc_witness, \
tpc_witness_size, tpc_refutation, note, timing_ms. Sets are space-separated element indices; \
absent values are empty.";

#[derive(Parser, Debug)]
#[command(
    name = "gencayley",
    version,
    about = "Generalized Cayley graphs and their perfect codes"
)]
struct Cli {
    /// TOML file supplying defaults for any flag (keys use underscores,
    /// e.g. `max_order = 12`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Inspect automorphisms.
    #[command(subcommand)]
    Aut(AutCmd),
    /// Print omega, Omega, mho, Fix and K for each involution.
    Sets(SetsArgs),
    /// Build a generalized Cayley graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Test a vertex set against the code definitions.
    Check(CheckArgs),
    /// Decide whether a subgroup is a (total) perfect code for some S.
    Decide(DecideArgs),
    /// Enumerate codes, subsets or subgroups by brute force.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Sweep catalog groups x involutions x subgroups.
    #[command(after_help = CSV_HELP)]
    Census(CensusArgs),
    /// Run the property suites; exits 1 on any violation.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct GroupSel {
    /// Group spec: Z6, cyclic:6, D4, dihedral:4, S3, V4, Z2xZ4, abelian:2x4,
    /// product(Z2,S3), file:PATH.
    #[arg(long)]
    group: Option<String>,
    /// Group table file (JSON object with name, order, table, names).
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct AlphaSel {
    /// `inv`, `id`, an index into the involution list, `perm:0,5,4,...`
    /// or `file:PATH`.
    #[arg(long)]
    alpha: Option<String>,
    /// Admit the identity map as an involution.
    #[arg(long)]
    include_identity: bool,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Elements, inverses, orders and subgroup count.
    Describe {
        #[command(flatten)]
        sel: GroupSel,
        /// Also print the Cayley table.
        #[arg(long)]
        table: bool,
        /// Write the group as a table file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// The default catalog.
    List {
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum AutCmd {
    /// Involutory automorphisms (or all with --all), by index.
    List {
        #[command(flatten)]
        sel: GroupSel,
        #[arg(long)]
        include_identity: bool,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args, Debug)]
struct SetsArgs {
    #[command(flatten)]
    sel: GroupSel,
    #[command(flatten)]
    alpha: AlphaSel,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Edges of GC(G, S, alpha).
    Build {
        #[command(flatten)]
        sel: GroupSel,
        #[command(flatten)]
        alpha: AlphaSel,
        /// Connection set, comma-separated.
        #[arg(long = "S", alias = "s", allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        export_dot: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CheckKind {
    /// Perfect code.
    Pc,
    /// Total perfect code.
    Tpc,
    /// Every vertex has at most one neighbor in X.
    AtMostOne,
    /// X dominates.
    Dominates,
    /// X is independent.
    Independent,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModeArg {
    Graph,
    Partition,
    Algebraic,
}

impl From<ModeArg> for CodeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Graph => CodeMode::Graph,
            ModeArg::Partition => CodeMode::Partition,
            ModeArg::Algebraic => CodeMode::Algebraic,
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    kind: CheckKind,
    #[command(flatten)]
    sel: GroupSel,
    #[command(flatten)]
    alpha: AlphaSel,
    #[arg(long = "S", alias = "s")]
    s: String,
    /// Vertex set to test.
    #[arg(long = "X", alias = "x", alias = "subset-X")]
    x: String,
    /// Evaluation for pc/tpc; all modes are printed when omitted.
    #[arg(long)]
    mode: Option<ModeArg>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DecideKind {
    Pc,
    Tpc,
}

#[derive(Args, Debug)]
struct DecideArgs {
    kind: DecideKind,
    #[command(flatten)]
    sel: GroupSel,
    #[command(flatten)]
    alpha: AlphaSel,
    #[arg(long)]
    subgroup: String,
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Perfect,
    Total,
}

#[derive(Subcommand, Debug)]
enum EnumerateCmd {
    /// Every code of GC(G, S, alpha) by scanning all vertex sets.
    Codes {
        #[command(flatten)]
        sel: GroupSel,
        #[command(flatten)]
        alpha: AlphaSel,
        #[arg(long = "S", alias = "s")]
        s: String,
        #[arg(long, value_enum, default_value = "perfect")]
        kind: KindArg,
        /// Largest order scanned.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Every generalized Cayley subset, optionally of one size.
    Subsets {
        #[command(flatten)]
        sel: GroupSel,
        #[command(flatten)]
        alpha: AlphaSel,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Every subgroup.
    Subgroups {
        #[command(flatten)]
        sel: GroupSel,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Catalog groups up to this order (default 24).
    #[arg(long)]
    max_order: Option<usize>,
    /// Restrict to these groups instead of the catalog (repeatable).
    #[arg(long)]
    group: Vec<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// Accepted for uniformity; the census itself draws no random numbers.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    include_identity: bool,
    /// Add per-record wall-clock time (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Global cap on group order (default 24).
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Random vertex sets per (alpha, S) beyond the exhaustive range.
    #[arg(long)]
    samples: Option<usize>,
    /// Run only these suites (repeatable).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: Vec<String>,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Defaults read from `--config`.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    group: Option<String>,
    group_file: Option<PathBuf>,
    alpha: Option<String>,
    include_identity: Option<bool>,
    max_order: Option<usize>,
    seed: Option<u64>,
    workers: Option<usize>,
    samples: Option<usize>,
    format: Option<FormatArg>,
    out: Option<PathBuf>,
    timings: Option<bool>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_threshold() {
            EXIT_THRESHOLD
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

struct Ctx {
    file: FileConfig,
}

impl Ctx {
    fn group(&self, sel: &GroupSel) -> Result<GroupRef, Failure> {
        if sel.group.is_some() && sel.group_file.is_some() {
            return Err(usage("give only one of --group and --group-file"));
        }
        let g = if let Some(s) = &sel.group {
            s.parse::<GroupSpec>()?.build()?
        } else if let Some(p) = &sel.group_file {
            load_group_file(p)?
        } else if let Some(s) = &self.file.group {
            s.parse::<GroupSpec>()?.build()?
        } else if let Some(p) = &self.file.group_file {
            load_group_file(p)?
        } else {
            return Err(usage("a group is required (--group or --group-file)"));
        };
        Ok(Arc::new(g))
    }

    fn include_identity(&self, sel: &AlphaSel) -> bool {
        sel.include_identity || self.file.include_identity.unwrap_or(false)
    }

    fn alpha(&self, g: &GroupRef, sel: &AlphaSel) -> Result<AlphaRef, Failure> {
        let text = sel
            .alpha
            .clone()
            .or_else(|| self.file.alpha.clone())
            .unwrap_or_else(|| "inv".to_string());
        let a = parse_alpha(g, &text, self.include_identity(sel))?;
        Ok(AlphaContext::shared(a)?)
    }
}

fn parse_alpha(g: &GroupRef, text: &str, include_identity: bool) -> Result<Automorphism, Failure> {
    let t = text.trim();
    if t == "inv" || t == "iota" {
        return inversion_automorphism(g).map_err(|why| {
            usage(match why {
                InversionAbsent::Nonabelian => format!(
                    "inversion is not an automorphism of {} (nonabelian)",
                    g.id()
                ),
                InversionAbsent::EqualsIdentity => {
                    format!("inversion equals the identity on {}", g.id())
                }
            })
        });
    }
    if t == "id" {
        return Ok(Automorphism::identity(g));
    }
    if let Some(p) = t.strip_prefix("perm:") {
        let perm = p
            .trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("bad permutation {p:?}: {e}")))?;
        return Ok(Automorphism::new(g.clone(), perm)?);
    }
    if let Some(p) = t.strip_prefix("file:") {
        return Ok(load_automorphism_file(Path::new(p), g)?);
    }
    if let Ok(i) = t.parse::<usize>() {
        let all = enumerate_involutory_automorphisms(g, include_identity)?;
        let n = all.len();
        return all.into_iter().nth(i).ok_or_else(|| {
            usage(format!(
                "alpha index {i} out of range: {} has {n} involutions",
                g.id()
            ))
        });
    }
    if Path::new(t).is_file() {
        return Ok(load_automorphism_file(Path::new(t), g)?);
    }
    Err(usage(format!(
        "cannot read alpha {t:?} (inv | id | INDEX | perm:LIST | file:PATH)"
    )))
}

fn show(g: &GroupRef, s: &ElemSet) -> String {
    if g.names().is_some() {
        format!("{s} = {}", g.format_set(s))
    } else {
        s.to_string()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let file = match &cli.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let ctx = Ctx { file };
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Group(GroupCmd::Describe { sel, table, export }) => {
            group_describe(&ctx, &sel, table, export, &mut out)
        }
        Command::Group(GroupCmd::List { max_order }) => {
            let max = max_order.or(ctx.file.max_order).unwrap_or(24);
            for spec in catalog_up_to(max) {
                let g = spec.build()?;
                writeln!(
                    out,
                    "{}\t{}\t{}",
                    spec,
                    g.order(),
                    if g.is_abelian() {
                        "abelian"
                    } else {
                        "nonabelian"
                    }
                )?;
            }
            Ok(0)
        }
        Command::Aut(AutCmd::List {
            sel,
            include_identity,
            all,
        }) => {
            let g = ctx.group(&sel)?;
            let list = if all {
                enumerate_automorphisms(&g)?
            } else {
                enumerate_involutory_automorphisms(
                    &g,
                    include_identity || ctx.file.include_identity.unwrap_or(false),
                )?
            };
            for (i, a) in list.iter().enumerate() {
                let tag = if a.is_identity() {
                    " identity"
                } else if a.is_involutory() {
                    " involutory"
                } else {
                    ""
                };
                writeln!(out, "{i}\t{:?}{tag}", a.perm())?;
            }
            if list.is_empty() {
                writeln!(out, "no involutory automorphism")?;
            }
            Ok(0)
        }
        Command::Sets(a) => sets(&ctx, &a, &mut out),
        Command::Graph(GraphCmd::Build {
            sel,
            alpha,
            s,
            export_dot,
        }) => {
            let g = ctx.group(&sel)?;
            let actx = ctx.alpha(&g, &alpha)?;
            let subset = validate_subset(&actx, g.parse_set(&s)?)?;
            let graph = build_graph(&subset);
            writeln!(
                out,
                "GC({}, {}, {:?})",
                g.id(),
                subset.elements(),
                actx.alpha().perm()
            )?;
            writeln!(
                out,
                "vertices {} degree {} edges {}",
                g.order(),
                subset.len(),
                graph.edges().count()
            )?;
            for (a, b) in graph.edges() {
                writeln!(out, "{} -- {}", g.name(a), g.name(b))?;
            }
            if let Some(p) = export_dot {
                fs::write(&p, graph.to_dot())
                    .map_err(|e| usage(format!("{}: {e}", p.display())))?;
            }
            Ok(0)
        }
        Command::Check(a) => check(&ctx, &a, &mut out),
        Command::Decide(a) => decide(&ctx, &a, &mut out),
        Command::Enumerate(e) => enumerate(&ctx, e, &mut out),
        Command::Census(a) => census(&ctx, &a, &mut out),
        Command::Verify(a) => verify(&ctx, &a, &mut out),
    }
}

fn group_describe(
    ctx: &Ctx,
    sel: &GroupSel,
    table: bool,
    export: Option<PathBuf>,
    out: &mut impl Write,
) -> CmdResult {
    let g = ctx.group(sel)?;
    writeln!(out, "group {}", g.id())?;
    writeln!(out, "order {}", g.order())?;
    match g.noncommuting_pair() {
        None => writeln!(out, "abelian")?,
        Some((a, b)) => writeln!(out, "nonabelian (witness {} {})", g.name(a), g.name(b))?,
    }
    writeln!(out, "element\tname\tinverse\torder")?;
    for x in 0..g.order() {
        writeln!(
            out,
            "{x}\t{}\t{}\t{}",
            g.name(x),
            g.inv(x),
            g.element_order(x)
        )?;
    }
    match enumerate_subgroups(&g) {
        Ok(subs) => writeln!(out, "subgroups {}", subs.len())?,
        Err(e) if e.is_threshold() => writeln!(out, "subgroups not enumerated ({e})")?,
        Err(e) => return Err(e.into()),
    }
    if table {
        for row in g.rows() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(out, "{}", cells.join(" "))?;
        }
    }
    if let Some(p) = export {
        let text = serde_json::to_string_pretty(&g.to_file()).expect("group files serialize");
        fs::write(&p, text + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(0)
}

fn sets(ctx: &Ctx, a: &SetsArgs, out: &mut impl Write) -> CmdResult {
    let g = ctx.group(&a.sel)?;
    let alphas: Vec<(String, AlphaRef)> = if a.alpha.alpha.is_some() || ctx.file.alpha.is_some() {
        vec![("alpha".into(), ctx.alpha(&g, &a.alpha)?)]
    } else {
        let list = enumerate_involutory_automorphisms(&g, ctx.include_identity(&a.alpha))?;
        if list.is_empty() {
            writeln!(out, "no involutory automorphism")?;
        }
        list.into_iter()
            .enumerate()
            .map(|(i, x)| Ok((format!("alpha {i}"), AlphaContext::shared(x)?)))
            .collect::<Result<_, Error>>()?
    };
    for (label, c) in alphas {
        writeln!(out, "{label} {:?}", c.alpha().perm())?;
        writeln!(out, "  omega {}", show(&g, &c.omega))?;
        writeln!(out, "  Omega {}", show(&g, &c.big_omega))?;
        writeln!(out, "  mho   {}", show(&g, &c.mho))?;
        writeln!(out, "  Fix   {}", show(&g, &c.fix))?;
        writeln!(out, "  K     {}", show(&g, &c.k_set))?;
    }
    Ok(0)
}

fn check(ctx: &Ctx, a: &CheckArgs, out: &mut impl Write) -> CmdResult {
    let g = ctx.group(&a.sel)?;
    let actx = ctx.alpha(&g, &a.alpha)?;
    let subset = validate_subset(&actx, g.parse_set(&a.s)?)?;
    let x = g.parse_set(&a.x)?;
    let graph = build_graph(&subset);
    let eval = |m: CodeMode| match a.kind {
        CheckKind::Pc => perfect_code_by(&graph, &x, m),
        _ => total_perfect_code_by(&graph, &x, m),
    };
    let (value, detail): (bool, Vec<(String, bool)>) = match a.kind {
        CheckKind::Pc | CheckKind::Tpc => match a.mode {
            Some(m) => (eval(m.into()), Vec::new()),
            None => {
                let d: Vec<(String, bool)> = CODE_MODES
                    .iter()
                    .map(|&m| (format!("{m:?}").to_lowercase(), eval(m)))
                    .collect();
                if d.iter().any(|(_, v)| *v != d[0].1) {
                    for (m, v) in &d {
                        writeln!(out, "{m}\t{v}")?;
                    }
                    writeln!(out, "modes disagree")?;
                    return Ok(EXIT_VIOLATION);
                }
                (d[0].1, d)
            }
        },
        CheckKind::AtMostOne => {
            let d: Vec<(String, bool)> = AT_MOST_ONE_MODES
                .iter()
                .map(|&m| {
                    (
                        format!("{m:?}").to_lowercase(),
                        eval_at_most_one(&graph, &x, m),
                    )
                })
                .collect();
            if d.iter().any(|(_, v)| *v != d[0].1) {
                writeln!(out, "modes disagree: {d:?}")?;
                return Ok(EXIT_VIOLATION);
            }
            (d[0].1, d)
        }
        CheckKind::Dominates => (check_dominates(&graph, &x), Vec::new()),
        CheckKind::Independent => (check_independent(&graph, &x), Vec::new()),
    };
    writeln!(out, "{value}")?;
    for (m, v) in detail {
        writeln!(out, "  {m}\t{v}")?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct DecideJson {
    group: String,
    alpha: Vec<usize>,
    subgroup: Vec<usize>,
    kind: CodeKind,
    is_code: bool,
    alpha_preserves_h: bool,
    witness: Option<Vec<usize>>,
    refutation: Option<String>,
    refutation_coset: Option<usize>,
    refutation_element: Option<usize>,
    cosets: Vec<CosetJson>,
}

#[derive(Serialize)]
struct CosetJson {
    coset: usize,
    pairing: String,
    rep: Option<usize>,
}

fn pairing_text(p: &Pairing) -> String {
    match p {
        Pairing::SelfPaired => "self-paired".into(),
        Pairing::PairedWith(d) => format!("paired-with {d}"),
        Pairing::Mixed(v) => format!("mixed {v:?}"),
    }
}

fn decide(ctx: &Ctx, a: &DecideArgs, out: &mut impl Write) -> CmdResult {
    let g = ctx.group(&a.sel)?;
    let actx = ctx.alpha(&g, &a.alpha)?;
    let h = Subgroup::new(g.clone(), g.parse_set(&a.subgroup)?)?;
    let w: CodeWitness = match a.kind {
        DecideKind::Pc => decide_subgroup_pc(&h, &actx),
        DecideKind::Tpc => decide_subgroup_tpc(&h, &actx),
    };
    if let Err(e) = w.revalidate() {
        writeln!(out, "witness failed re-validation: {e}")?;
        return Ok(EXIT_VIOLATION);
    }
    if a.json {
        let r = w.refutation();
        let j = DecideJson {
            group: g.id().to_string(),
            alpha: actx.alpha().perm().to_vec(),
            subgroup: h.elements().to_vec(),
            kind: w.kind,
            is_code: w.is_code(),
            alpha_preserves_h: w.alpha_preserves,
            witness: w.subset().map(|s| s.elements().to_vec()),
            refutation: r.map(|r| r.reason.to_string()),
            refutation_coset: r.and_then(|r| r.coset),
            refutation_element: r.and_then(|r| r.witness),
            cosets: w
                .coset_classification
                .iter()
                .map(|c| CosetJson {
                    coset: c.coset,
                    pairing: pairing_text(&c.pairing),
                    rep: c.rep,
                })
                .collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&j).expect("serializable"))?;
        return Ok(0);
    }
    let what = match w.kind {
        CodeKind::Perfect => "perfect code",
        CodeKind::Total => "total perfect code",
    };
    writeln!(
        out,
        "H = {} in {} under alpha {:?}",
        show(&g, h.elements()),
        g.id(),
        actx.alpha().perm()
    )?;
    writeln!(out, "alpha(H) = H: {}", w.alpha_preserves)?;
    match &w.verdict {
        Verdict::Witness(s) => {
            writeln!(out, "{what}: yes")?;
            writeln!(out, "witness S = {}", show(&g, s.elements()))?;
        }
        Verdict::Refuted(r) => {
            writeln!(out, "{what}: no")?;
            let mut line = format!("refutation: {}", r.reason);
            if let Some(c) = r.coset {
                line += &format!(" (coset {c})");
            }
            if let Some(x) = r.witness {
                line += &format!(" (element {})", g.name(x));
            }
            writeln!(out, "{line}")?;
        }
    }
    for c in &w.coset_classification {
        let rep = c
            .rep
            .map(|r| format!(", rep {}", g.name(r)))
            .unwrap_or_default();
        writeln!(
            out,
            "  coset {}: {}{rep}",
            c.coset,
            pairing_text(&c.pairing)
        )?;
    }
    Ok(0)
}

fn enumerate(ctx: &Ctx, cmd: EnumerateCmd, out: &mut impl Write) -> CmdResult {
    match cmd {
        EnumerateCmd::Codes {
            sel,
            alpha,
            s,
            kind,
            max_order,
        } => {
            let g = ctx.group(&sel)?;
            let actx = ctx.alpha(&g, &alpha)?;
            let subset = validate_subset(&actx, g.parse_set(&s)?)?;
            let graph = build_graph(&subset);
            let kind = match kind {
                KindArg::Perfect => CodeKind::Perfect,
                KindArg::Total => CodeKind::Total,
            };
            let max = max_order
                .or(ctx.file.max_order)
                .unwrap_or(DEFAULT_BRUTE_FORCE_MAX_ORDER);
            let codes = brute_force_codes_bounded(&graph, kind, max)?;
            for c in &codes {
                writeln!(out, "{}", show(&g, c))?;
            }
            writeln!(out, "{} codes", codes.len())?;
        }
        EnumerateCmd::Subsets { sel, alpha, size } => {
            let g = ctx.group(&sel)?;
            let actx = ctx.alpha(&g, &alpha)?;
            let mut n = 0;
            for s in enumerate_subsets(&actx, size)? {
                writeln!(out, "{}", show(&g, s.elements()))?;
                n += 1;
            }
            writeln!(out, "{n} subsets")?;
        }
        EnumerateCmd::Subgroups { sel } => {
            let g = ctx.group(&sel)?;
            let subs = enumerate_subgroups(&g)?;
            for h in &subs {
                writeln!(out, "{}", show(&g, h.elements()))?;
            }
            writeln!(out, "{} subgroups", subs.len())?;
        }
    }
    Ok(0)
}

fn census(ctx: &Ctx, a: &CensusArgs, out: &mut impl Write) -> CmdResult {
    let f = &ctx.file;
    let groups: Vec<GroupSpec> = if !a.group.is_empty() {
        a.group
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    } else if let Some(s) = f.group.as_ref().filter(|_| a.max_order.is_none()) {
        vec![s.parse()?]
    } else {
        catalog_up_to(a.max_order.or(f.max_order).unwrap_or(24))
    };
    let mut cfg = CensusConfig::new(groups);
    cfg.workers = a.workers.or(f.workers).unwrap_or(0);
    cfg.include_identity = a.include_identity || f.include_identity.unwrap_or(false);
    cfg.timings = a.timings || f.timings.unwrap_or(false);
    let format = match a.format.or(f.format).unwrap_or(FormatArg::Jsonl) {
        FormatArg::Jsonl => ReportFormat::Jsonl,
        FormatArg::Csv => ReportFormat::Csv,
    };
    let records = run_census(&cfg)?;
    match a.out.clone().or_else(|| f.out.clone()) {
        Some(p) => {
            let file = fs::File::create(&p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            emit_report(&records, format, io::BufWriter::new(file))?;
        }
        None => emit_report(&records, format, out)?,
    }
    Ok(0)
}

fn verify(ctx: &Ctx, a: &VerifyArgs, out: &mut impl Write) -> CmdResult {
    let f = &ctx.file;
    let d = VerifyConfig::default();
    let cfg = VerifyConfig {
        max_order: a.max_order.or(f.max_order).unwrap_or(d.max_order),
        seed: a.seed.or(f.seed).unwrap_or(d.seed),
        workers: a.workers.or(f.workers).unwrap_or(d.workers),
        samples: a.samples.or(f.samples).unwrap_or(d.samples),
    };
    let reports = run_suites(&a.suite, &cfg)?;
    let mut failed = false;
    for r in &reports {
        if r.passed() {
            writeln!(out, "PASS {} ({} checks)", r.name, r.checked)?;
        } else {
            failed = true;
            writeln!(
                out,
                "FAIL {} ({} of {} checks violated)",
                r.name,
                r.violations.len(),
                r.checked
            )?;
            if let Some(c) = r.minimized() {
                writeln!(out, "  group {} (order {})", c.group, c.order)?;
                if let Some(al) = &c.alpha {
                    writeln!(out, "  alpha {al:?}")?;
                }
                if let Some(s) = &c.s {
                    writeln!(out, "  S {s:?}")?;
                }
                if let Some(x) = &c.x {
                    writeln!(out, "  X {x:?}")?;
                }
                writeln!(out, "  {}", c.detail)?;
            }
        }
    }
    if let Some(p) = a.out.clone().or_else(|| f.out.clone()) {
        let text = serde_json::to_string_pretty(&reports).expect("serializable");
        fs::write(&p, text + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(if failed { EXIT_VIOLATION } else { 0 })
}
