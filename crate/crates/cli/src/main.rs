//! `coxpart`: generating functions, bipartition listings, conjecture
//! verification and weak order intervals from the command line.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use coxpart::enumeration::genfuns;
use coxpart::partitions::{self, atom_count, coatom_count, Conjecture};
use coxpart::perm_a::{coxeter_from_perm, perm_from_coxeter};
use coxpart::perm_b::{coxeter_from_signed, signed_from_coxeter};
use coxpart::weak_order::{self, format_word, parse_word, DEFAULT_ELEMENT_CAP};
use coxpart::{
    parse_graph, Ball, BallCache, CoxeterGraph, CoxeterSystem, ElementId, Error, GroupElement, Permutation,
    SignedPermutation,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "coxpart", version, about = "Partitions of inversion sets in Coxeter groups")]
struct Cli {
    /// Directory for cached weak order balls.
    #[arg(long, global = true, env = "COXPART_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,

    /// Abort when a ball would exceed this many elements.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: usize,

    /// Output format; `csv` applies to `genfun` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Poly)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Poly,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    Bip,
    Pirr,
    Growth,
}

#[derive(Args)]
struct GroupArgs {
    /// Named group (A3, B4, affineG2, tri(3,3,4), ...) or an inline JSON graph.
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,

    /// JSON graph file: {"rank": n, "edges": [[i, j, m], ...]}.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Args)]
struct ElementArgs {
    /// Word in 1-based generators, e.g. 32123 or 1,10,2.
    #[arg(long, conflicts_with_all = ["signed_word", "perm"])]
    word: Option<String>,

    /// Signed permutation, full ("4 -5 | 5 -4") or positive half; implies type B.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "perm")]
    signed_word: Option<String>,

    /// Permutation in one-line notation; implies type A.
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Length generating function up to a maximal length.
    Genfun {
        #[command(flatten)]
        group: GroupArgs,
        /// Which elements to count: with a proper bipartition, irreducible, or all.
        #[arg(long, value_enum, default_value_t = Stat::Bip)]
        stat: Stat,
        /// Highest power of q.
        #[arg(long)]
        max_len: usize,
    },
    /// All bipartitions of one element with descent arithmetic.
    Bipartitions {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Run a conjecture verifier over all elements up to a length.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// 1: descents add up, 2: coatoms add up, 3: atoms add up.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        conjecture: u8,
        /// Check every element up to this length.
        #[arg(long)]
        max_len: usize,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Interval [e, w]: members, atoms, coatoms and diameters.
    Interval {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
}

struct RunConfig {
    cache: Option<BallCache>,
    element_cap: usize,
    format: Format,
}

impl RunConfig {
    fn ball(&self, graph: &CoxeterGraph, radius: usize) -> coxpart::Result<Ball> {
        match &self.cache {
            Some(cache) => cache.get_or_build(graph, radius, self.element_cap),
            None => Ball::build_with_cap(graph, radius, self.element_cap),
        }
    }

    fn no_csv(&self) -> anyhow::Result<()> {
        if self.format == Format::Csv {
            return Err(Error::Precondition("--format csv is only supported by genfun".into()).into());
        }
        Ok(())
    }
}

fn resolve_group(args: &GroupArgs) -> anyhow::Result<Option<CoxeterGraph>> {
    let graph = match (&args.group, &args.group_file) {
        (Some(spec), _) => parse_graph(spec)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_graph(&text)?
        }
        (None, None) => return Ok(None),
    };
    Ok(Some(graph))
}

fn require_group(args: &GroupArgs) -> anyhow::Result<CoxeterGraph> {
    resolve_group(args)?.ok_or_else(|| Error::Precondition("one of --group or --group-file is required".into()).into())
}

/// How elements are printed back.
enum Notation {
    Word,
    Perm,
    Signed,
}

struct Target {
    graph: CoxeterGraph,
    system: CoxeterSystem,
    element: GroupElement,
    notation: Notation,
    /// The word given on the command line, kept when reduced.
    input_word: Option<Vec<usize>>,
}

impl Target {
    fn label(&self, ball: &Ball, id: ElementId) -> anyhow::Result<String> {
        let g = ball.element(id);
        Ok(match self.notation {
            Notation::Word => match &self.input_word {
                Some(word) if *g == self.element => format_word(word, self.graph.rank()),
                _ => ball.word_string(id),
            },
            Notation::Perm => perm_from_coxeter(&self.system, g)?.to_string(),
            Notation::Signed => signed_from_coxeter(&self.system, g)?.to_string(),
        })
    }
}

fn check_rank(graph: Option<&CoxeterGraph>, implied: &str) -> anyhow::Result<CoxeterGraph> {
    let implied_graph = parse_graph(implied)?;
    if let Some(g) = graph {
        if g.canonical_hash() != implied_graph.canonical_hash() {
            return Err(
                Error::Precondition(format!("element requires group {implied}, got {}", g.display_name())).into(),
            );
        }
    }
    Ok(implied_graph)
}

fn resolve_target(group: &GroupArgs, element: &ElementArgs) -> anyhow::Result<Target> {
    let graph = resolve_group(group)?;
    if let Some(text) = &element.signed_word {
        let sigma = SignedPermutation::parse(text)?;
        let graph = check_rank(graph.as_ref(), &format!("B{}", sigma.n()))?;
        let system = CoxeterSystem::new(graph.clone())?;
        let element = coxeter_from_signed(&system, &sigma)?;
        return Ok(Target {
            graph,
            system,
            element,
            notation: Notation::Signed,
            input_word: None,
        });
    }
    if let Some(text) = &element.perm {
        let sigma = Permutation::parse(text)?;
        if sigma.n() < 2 {
            return Err(Error::Precondition("permutations need n >= 2".into()).into());
        }
        let graph = check_rank(graph.as_ref(), &format!("A{}", sigma.n() - 1))?;
        let system = CoxeterSystem::new(graph.clone())?;
        let element = coxeter_from_perm(&system, &sigma)?;
        return Ok(Target {
            graph,
            system,
            element,
            notation: Notation::Perm,
            input_word: None,
        });
    }
    let graph = graph.ok_or_else(|| Error::Precondition("one of --group or --group-file is required".into()))?;
    let text = element
        .word
        .as_deref()
        .ok_or_else(|| Error::Precondition("one of --word, --signed-word or --perm is required".into()))?;
    let system = CoxeterSystem::new(graph.clone())?;
    let word = parse_word(text, graph.rank())?;
    let element = system.element_from_word(&word)?;
    let input_word = (system.length(&element)? == word.len()).then_some(word);
    Ok(Target {
        graph,
        system,
        element,
        notation: Notation::Word,
        input_word,
    })
}

fn target_ball(ctx: &RunConfig, target: &Target) -> anyhow::Result<(Ball, ElementId)> {
    let len = target.system.length(&target.element)?;
    let ball = ctx.ball(&target.graph, len)?;
    let id = ball
        .id_of(&target.element)
        .context("element missing from its own ball")?;
    Ok((ball, id))
}

fn cmd_genfun(ctx: &RunConfig, group: &GroupArgs, stat: Stat, max_len: usize) -> anyhow::Result<ExitCode> {
    let graph = require_group(group)?;
    let ball = ctx.ball(&graph, max_len)?;
    let poly = match stat {
        Stat::Growth => coxpart::enumeration::growth_series(&ball, max_len),
        Stat::Bip => genfuns(&ball, max_len).0,
        Stat::Pirr => genfuns(&ball, max_len).1,
    };
    match ctx.format {
        Format::Poly => println!("{poly}"),
        Format::Json => println!("{}", poly.to_json(max_len)),
        Format::Csv => print!("{}", poly.to_csv(max_len)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bipartitions(ctx: &RunConfig, group: &GroupArgs, element: &ElementArgs) -> anyhow::Result<ExitCode> {
    ctx.no_csv()?;
    let target = resolve_target(group, element)?;
    let (ball, w) = target_ball(ctx, &target)?;
    let dw = ball.d_r(w);
    let mut rows = Vec::new();
    let mut failures = 0;
    for b in partitions::bipartitions(&ball, w) {
        // longer part first
        let (x, y) = if ball.length(b.v) > ball.length(b.u) {
            (b.v, b.u)
        } else {
            (b.u, b.v)
        };
        let (dx, dy) = (ball.d_r(x), ball.d_r(y));
        if dx + dy != dw {
            failures += 1;
        }
        rows.push((b.proper, x, y, dx, dy));
    }
    let name = target.graph.display_name();
    let w_label = target.label(&ball, w)?;
    if ctx.format == Format::Json {
        let list: Vec<_> = rows
            .iter()
            .map(|&(proper, x, y, dx, dy)| -> anyhow::Result<_> {
                Ok(json!({
                    "u": target.label(&ball, x)?,
                    "v": target.label(&ball, y)?,
                    "proper": proper,
                    "d_r": [dx, dy],
                    "additive": dx + dy == dw,
                }))
            })
            .collect::<anyhow::Result<_>>()?;
        let doc = json!({
            "group": name,
            "w": w_label,
            "length": ball.length(w),
            "d_r": dw,
            "bipartitions": list,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("w = {w_label} in {name}, length {}, d_R = {dw}", ball.length(w));
        let proper = rows.iter().filter(|r| r.0).count();
        println!("{} bipartitions, {proper} proper", rows.len());
        for &(is_proper, x, y, dx, dy) in &rows {
            let tag = if is_proper { "proper " } else { "trivial" };
            let rel = if dx + dy == dw { "=" } else { "!=" };
            println!(
                "  {tag}  u = {}  v = {}  d_R: {dw} {rel} {dx} + {dy}",
                target.label(&ball, x)?,
                target.label(&ball, y)?
            );
        }
    }
    Ok(if failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify(
    ctx: &RunConfig,
    group: &GroupArgs,
    conjecture: u8,
    max_len: usize,
    report_path: Option<&PathBuf>,
) -> anyhow::Result<ExitCode> {
    ctx.no_csv()?;
    let graph = require_group(group)?;
    let conj = Conjecture::from_number(conjecture).context("conjecture must be 1, 2 or 3")?;
    let ball = ctx.ball(&graph, max_len)?;
    let report = partitions::verify_ball(&ball, conj, max_len);
    if let Some(path) = report_path {
        fs::write(path, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if ctx.format == Format::Json {
        let mut doc = serde_json::to_value(&report)?;
        // timing stays in the report file only
        doc.as_object_mut().map(|m| m.remove("elapsed_ms"));
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "conjecture {} on {} up to length {}: {} elements, {} pairs, {} violations",
            report.conjecture,
            report.group,
            report.radius,
            report.checked_elements,
            report.checked_pairs,
            report.violations.len()
        );
        for v in &report.violations {
            println!("  w = {}  u = {}  v = {}  {}", v.w, v.u, v.v, v.detail);
        }
    }
    Ok(if report.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_interval(ctx: &RunConfig, group: &GroupArgs, element: &ElementArgs) -> anyhow::Result<ExitCode> {
    ctx.no_csv()?;
    let target = resolve_target(group, element)?;
    let (ball, w) = target_ball(ctx, &target)?;
    let interval = weak_order::interval(&ball, w);
    let label = |id| target.label(&ball, id);
    let labels = |ids: &[ElementId]| ids.iter().map(|&id| label(id)).collect::<anyhow::Result<Vec<_>>>();
    let atoms = labels(&weak_order::atoms(&ball, &interval))?;
    let coatoms = labels(&weak_order::coatoms(&ball, &interval))?;
    let mut diameters = Vec::new();
    for (u, v) in weak_order::diameters(&ball, w) {
        let coatom_split = [
            coatom_count(&ball, 0, w),
            coatom_count(&ball, 0, u),
            coatom_count(&ball, 0, v),
        ];
        let atom_split = [
            atom_count(&ball, 0, w),
            atom_count(&ball, u, w),
            atom_count(&ball, v, w),
        ];
        diameters.push((label(u)?, label(v)?, coatom_split, atom_split));
    }
    if ctx.format == Format::Json {
        let list: Vec<_> = diameters
            .iter()
            .map(|(u, v, c, a)| json!({ "u": u, "v": v, "coatoms": c, "atoms": a }))
            .collect();
        let doc = json!({
            "group": target.graph.display_name(),
            "w": label(w)?,
            "length": ball.length(w),
            "members": interval.len(),
            "atoms": atoms,
            "coatoms": coatoms,
            "diameters": list,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "w = {} in {}, length {}",
            label(w)?,
            target.graph.display_name(),
            ball.length(w)
        );
        println!("members: {}", interval.len());
        println!("atoms: {}", atoms.join(", "));
        println!("coatoms: {}", coatoms.join(", "));
        println!("diameters: {}", diameters.len());
        for (u, v, c, a) in &diameters {
            println!(
                "  {{{u}, {v}}}  coatoms {} = {} + {}  atoms {} = {} + {}",
                c[0], c[1], c[2], a[0], a[1], a[2]
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers as usize)
            .build_global()?;
    }
    let ctx = RunConfig {
        cache: cli.cache_dir.filter(|d| !d.as_os_str().is_empty()).map(BallCache::new),
        element_cap: cli.element_cap,
        format: cli.format,
    };
    match &cli.command {
        Command::Genfun { group, stat, max_len } => cmd_genfun(&ctx, group, *stat, *max_len),
        Command::Bipartitions { group, element } => cmd_bipartitions(&ctx, group, element),
        Command::Verify {
            group,
            conjecture,
            max_len,
            report,
        } => cmd_verify(&ctx, group, *conjecture, *max_len, report.as_ref()),
        Command::Interval { group, element } => cmd_interval(&ctx, group, element),
    }
}

/// 3 for resource caps, 2 for everything else.
fn failure_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ElementCapExceeded(_) | Error::CapExceeded(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(failure_code(&err))
        }
    }
}
