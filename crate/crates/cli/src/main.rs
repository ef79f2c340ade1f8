//! `polycell`: cells, automata and pictures for hyperbolic polygon Coxeter groups.

mod cache;
mod pipeline;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cache::{write_atomic, CacheError, WorkspaceCache};
use pipeline::{to_json, Context, Disagreement, KArg};
use polycell::automata::{analyze, are_equivalent, Fsa};
use polycell::cells::{CellLabel, DihedralData};
use polycell::kl::{two_sided_cells, WGraph};
use polycell::render::{render_svg, Coloring, PolygonRealization, Scene, SceneConfig};
use polycell::verify::{empirical_vs_conjectural, kl_suite, oracle_suite, KlSuite, OracleSuite};
use polycell::{CoxeterGroup, CoxeterPresentation, Side};

#[derive(Parser)]
#[command(
    name = "polycell",
    version,
    about = "Kazhdan-Lusztig cells of hyperbolic polygon Coxeter groups"
)]
struct Cli {
    /// Group config (JSON with `name`, `angles` and optional `generators`).
    #[arg(long, global = true)]
    group: Option<PathBuf>,
    /// Cache directory; artifacts go to `<workspace>/<group name>/`.
    #[arg(long, global = true, default_value = "polycell-work")]
    workspace: PathBuf,
    /// Resource cap on ball elements, Bruhat pairs and automaton states.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Fellow-traveller constant, or `auto` to choose and validate one.
    #[arg(long, global = true, default_value = "auto")]
    k: KArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation, field and dihedral data.
    Group {
        #[command(subcommand)]
        what: GroupCmd,
    },
    /// Enumerate the ball of elements.
    Ball(RadiusArgs),
    /// KL polynomials on a ball.
    Kl(RadiusArgs),
    /// Empirical, conjectural and compared two-sided cells.
    Cells {
        #[command(subcommand)]
        what: CellsCmd,
    },
    /// Automata of reduced expressions.
    Fsa {
        #[command(subcommand)]
        what: FsaCmd,
    },
    /// One-sided cells `w·U^T` at one level.
    Onesided {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        common: ReportArgs,
    },
    /// Brute-force oracles against the engines.
    Verify {
        suite: Suite,
        #[command(flatten)]
        common: ReportArgs,
    },
    /// SVG of the tiled Poincaré disk.
    Render {
        #[arg(long, default_value_t = 8)]
        radius: usize,
        /// `twosided`, `onesided:<level>` or `plain`.
        #[arg(long, default_value = "twosided")]
        coloring: String,
        /// Output pixel size.
        #[arg(long, default_value_t = 800)]
        size: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Info {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RadiusArgs {
    #[arg(long, default_value_t = 10)]
    radius: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 12)]
    radius: usize,
    #[arg(long, default_value_t = 4)]
    trust_margin: usize,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CellsCmd {
    Empirical(ReportArgs),
    Conjectural(ReportArgs),
    Compare(ReportArgs),
}

#[derive(Subcommand)]
enum FsaCmd {
    /// Build Red(W), pattern, label and descent-class automata.
    Build,
    /// Size and path counts of a stored or given automaton.
    Stats {
        /// A file, or a name under `<workspace>/<group>/fsa/` such as `C3` or `red`.
        name: String,
        #[arg(long, default_value_t = 10)]
        radius: usize,
    },
    /// Language equality of two automata; exit status 1 when they differ.
    Equiv { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Oracles,
    Kl,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Oracles => "oracles",
            Suite::Kl => "kl",
        }
    }
}

fn context(cli: &Cli) -> Result<Context> {
    let path = cli.group.as_ref().context("--group is required")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let p = CoxeterPresentation::from_json(&text)?;
    let cache = WorkspaceCache::open(&cli.workspace, p.name(), &p.canonical_text())?;
    Ok(Context {
        group: CoxeterGroup::new(p),
        cache,
        cap: cli.cap,
        k_arg: cli.k,
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    print!("{text}");
    if let Some(out) = out {
        write_atomic(out, text.as_bytes())?;
    }
    Ok(())
}

/// Loads a stored report, or computes and stores it.
fn report(
    ctx: &mut Context,
    rel: &str,
    radius: Option<usize>,
    k: Option<usize>,
    deps: &[String],
    compute: impl FnOnce(&mut Context) -> Result<String>,
) -> Result<String> {
    let deps: Vec<&str> = deps.iter().map(String::as_str).collect();
    if let Some(text) = ctx.cache.load(rel, radius, k, &deps)? {
        return Ok(text);
    }
    let text = compute(ctx)?;
    ctx.cache.store(rel, radius, k, &deps, &text)?;
    Ok(text)
}

#[derive(Serialize)]
struct DihedralInfo {
    pair: String,
    order: u32,
    group_order: u32,
    longest: String,
    level: usize,
}

#[derive(Serialize)]
struct GroupInfo {
    name: String,
    rank: usize,
    generators: Vec<String>,
    angles: Vec<String>,
    coxeter_matrix: Vec<Vec<String>>,
    field_conductor: u32,
    field_degree: usize,
    small_roots: usize,
    automaton_states: usize,
    exponents: Vec<u32>,
    dihedral: Vec<DihedralInfo>,
    predicted_two_sided_cells: usize,
}

fn group_info(g: &CoxeterGroup) -> Result<GroupInfo> {
    let p = g.presentation();
    let data = DihedralData::new(p)?;
    Ok(GroupInfo {
        name: p.name().to_string(),
        rank: p.rank(),
        generators: p.generator_names().to_vec(),
        angles: p
            .angles()
            .iter()
            .map(|a| a.to_order().to_string())
            .collect(),
        coxeter_matrix: p
            .matrix()
            .iter()
            .map(|r| r.iter().map(|m| m.to_string()).collect())
            .collect(),
        field_conductor: p.field_conductor(),
        field_degree: g.small_roots().field().degree(),
        small_roots: g.small_roots().len(),
        automaton_states: g.dfa().num_states(),
        exponents: data.exponents().to_vec(),
        dihedral: data
            .entries()
            .iter()
            .map(|e| DihedralInfo {
                pair: e.pair.format(p),
                order: e.order,
                group_order: e.group_order(),
                longest: e.longest.format(p),
                level: e.level,
            })
            .collect(),
        predicted_two_sided_cells: data.predicted_cell_count(),
    })
}

#[derive(Serialize)]
struct BallSummary {
    group: String,
    radius: usize,
    elements: usize,
    counts_by_length: Vec<usize>,
    file: String,
}

#[derive(Serialize)]
struct KlSummary {
    group: String,
    radius: usize,
    elements: usize,
    bruhat_pairs: usize,
    nonzero_mu_pairs: usize,
    max_kl_degree: usize,
    file: String,
}

#[derive(Serialize)]
struct EmpiricalCell {
    index: u32,
    size: usize,
    shortest: String,
    min_length: usize,
    max_length: usize,
}

#[derive(Serialize)]
struct EmpiricalReport {
    group: String,
    radius: usize,
    left_cells: usize,
    right_cells: usize,
    two_sided_cells: usize,
    cells: Vec<EmpiricalCell>,
}

#[derive(Serialize)]
struct OnesidedSpecReport {
    pair: String,
    translator: String,
    fsa: String,
    states: usize,
}

#[derive(Serialize)]
struct OnesidedReport {
    group: String,
    level: usize,
    exponent: u32,
    radius: usize,
    k: usize,
    discovered: Vec<String>,
    minimal: Vec<OnesidedSpecReport>,
    cross_pair_containments: usize,
    nested_or_disjoint: bool,
    coverage: polycell::cells::Coverage,
}

#[derive(Serialize)]
struct VerifyReport {
    group: String,
    suite: String,
    radius: usize,
    trust_margin: usize,
    k: Option<usize>,
    oracles: Option<OracleSuite>,
    kl: Option<KlSuite>,
    comparison: Option<polycell::verify::ComparisonReport>,
    passed: bool,
}

fn resolve_fsa(ctx: &Context, name: &str) -> Result<Fsa> {
    let direct = PathBuf::from(name);
    let path = if direct.is_file() {
        direct
    } else {
        let n = if name.ends_with(".fsa") {
            name.to_string()
        } else {
            format!("{name}.fsa")
        };
        ctx.cache.path(&format!("fsa/{n}"))
    };
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading automaton {}", path.display()))?;
    Fsa::from_text(&text).map_err(|e| {
        CacheError::Corrupt {
            path: path.clone(),
            reason: e.to_string(),
        }
        .into()
    })
}

fn run(cli: Cli) -> Result<()> {
    let mut ctx = context(&cli)?;
    let gname = ctx.group.presentation().name().to_string();
    match cli.command {
        Command::Group {
            what: GroupCmd::Info { out },
        } => emit(&to_json(&group_info(&ctx.group)?), out.as_deref()),
        Command::Ball(a) => {
            let ball = ctx.ball(a.radius)?;
            let s = BallSummary {
                group: gname,
                radius: a.radius,
                elements: ball.len(),
                counts_by_length: ball.counts_by_length(),
                file: pipeline::ball_name(a.radius),
            };
            emit(&to_json(&s), a.out.as_deref())
        }
        Command::Kl(a) => {
            let table = ctx.kl(a.radius)?;
            let ball = table.ball();
            let mut nonzero = 0;
            let mut degree = 0;
            for w in 0..ball.len() {
                for &v in table.lower_ideal(w) {
                    if v as usize != w && table.mu(v as usize, w) != 0 {
                        nonzero += 1;
                    }
                    degree = degree.max(
                        table
                            .kl_poly(v as usize, w)
                            .coeffs()
                            .len()
                            .saturating_sub(1),
                    );
                }
            }
            let s = KlSummary {
                group: gname,
                radius: a.radius,
                elements: ball.len(),
                bruhat_pairs: table.pair_count(),
                nonzero_mu_pairs: nonzero,
                max_kl_degree: degree,
                file: pipeline::kl_name(a.radius),
            };
            emit(&to_json(&s), a.out.as_deref())
        }
        Command::Cells { what } => match what {
            CellsCmd::Empirical(a) => {
                let rel = format!("reports/empirical.r{}.json", a.radius);
                let deps = vec![pipeline::kl_name(a.radius)];
                ctx.kl(a.radius)?;
                let text = report(&mut ctx, &rel, Some(a.radius), None, &deps, |ctx| {
                    let table = ctx.kl(a.radius)?;
                    let ball = table.ball();
                    let left = WGraph::new(&table, Side::Left).cells();
                    let right = WGraph::new(&table, Side::Right).cells();
                    let two = two_sided_cells(&left, &right);
                    let cells = two
                        .blocks()
                        .iter()
                        .enumerate()
                        .map(|(i, b)| {
                            let lens: Vec<usize> = b
                                .iter()
                                .map(|&v| ball.element(v as usize).length())
                                .collect();
                            EmpiricalCell {
                                index: i as u32,
                                size: b.len(),
                                shortest: ctx.group.format(&ball.element(b[0] as usize).word),
                                min_length: *lens.iter().min().unwrap(),
                                max_length: *lens.iter().max().unwrap(),
                            }
                        })
                        .collect();
                    Ok(to_json(&EmpiricalReport {
                        group: gname.clone(),
                        radius: a.radius,
                        left_cells: left.blocks().len(),
                        right_cells: right.blocks().len(),
                        two_sided_cells: two.blocks().len(),
                        cells,
                    }))
                })?;
                emit(&text, a.out.as_deref())
            }
            CellsCmd::Conjectural(a) => {
                let (_, part) = ctx.partition()?;
                let k = part.k();
                ctx.ball(a.radius)?;
                let rel = format!("reports/partition.r{}.t{}.json", a.radius, a.trust_margin);
                let mut deps = ctx.partition_deps();
                deps.push(pipeline::ball_name(a.radius));
                let text = report(&mut ctx, &rel, Some(a.radius), Some(k), &deps, |ctx| {
                    let ball = ctx.ball(a.radius)?;
                    Ok(to_json(&part.report(&ball, a.trust_margin)?))
                })?;
                emit(&text, a.out.as_deref())
            }
            CellsCmd::Compare(a) => {
                let (_, part) = ctx.partition()?;
                let k = part.k();
                let levels = part.data().levels();
                ctx.kl(a.radius)?;
                let mut deps = ctx.partition_deps();
                deps.push(pipeline::kl_name(a.radius));
                let rel = format!("reports/compare.r{}.t{}.json", a.radius, a.trust_margin);
                let text = report(&mut ctx, &rel, Some(a.radius), Some(k), &deps, |ctx| {
                    let table = ctx.kl(a.radius)?;
                    let mut os = Vec::new();
                    for level in 1..=levels {
                        os.push(ctx.onesided(level, a.radius)?.0);
                    }
                    Ok(to_json(&empirical_vs_conjectural(
                        &table,
                        &part,
                        a.trust_margin,
                        &os,
                    )))
                })?;
                emit(&text, a.out.as_deref())?;
                let v: serde_json::Value = serde_json::from_str(&text)?;
                if v["disagreements"].as_array().is_some_and(|d| !d.is_empty()) {
                    bail!(Disagreement(format!(
                        "{} disagreements",
                        v["disagreements"].as_array().unwrap().len()
                    )));
                }
                Ok(())
            }
        },
        Command::Fsa { what } => match what {
            FsaCmd::Build => {
                let (langs, part) = ctx.partition()?;
                let descents = ctx.descent_fsas(&langs)?;
                if ctx.cache.load("fsa/red.fsa", None, None, &[])?.is_none() {
                    ctx.cache
                        .store("fsa/red.fsa", None, None, &[], &langs.red().to_text())?;
                }
                let mut rows = vec![("red".to_string(), langs.red().num_states())];
                for (i, _) in part.data().entries().iter().enumerate() {
                    rows.push((format!("pattern.{i}"), part.pattern_fsa(i).num_states()));
                }
                for (l, f) in part.label_fsas() {
                    rows.push((l.name(), f.num_states()));
                }
                for (t, f) in &descents {
                    let name = pipeline::descent_name(&ctx.group, *t);
                    rows.push((
                        name.trim_start_matches("fsa/")
                            .trim_end_matches(".fsa")
                            .to_string(),
                        f.num_states(),
                    ));
                }
                #[derive(Serialize)]
                struct Built {
                    group: String,
                    k: usize,
                    automata: Vec<(String, usize)>,
                }
                emit(
                    &to_json(&Built {
                        group: gname,
                        k: part.k(),
                        automata: rows,
                    }),
                    None,
                )
            }
            FsaCmd::Stats { name, radius } => {
                let f = resolve_fsa(&ctx, &name)?;
                let a = analyze(&f, radius)?;
                #[derive(Serialize)]
                struct Stats {
                    name: String,
                    states: usize,
                    transitions: usize,
                    deterministic: bool,
                    empty: bool,
                    counts: Vec<String>,
                }
                emit(
                    &to_json(&Stats {
                        name,
                        states: a.states,
                        transitions: a.transitions,
                        deterministic: f.is_deterministic(),
                        empty: a.is_empty,
                        counts: a.counts.iter().map(|c| c.to_string()).collect(),
                    }),
                    None,
                )
            }
            FsaCmd::Equiv { a, b } => {
                let eq = are_equivalent(&resolve_fsa(&ctx, &a)?, &resolve_fsa(&ctx, &b)?)?;
                println!("{{\"equivalent\": {eq}}}");
                if !eq {
                    bail!(Disagreement(format!(
                        "{a} and {b} accept different languages"
                    )));
                }
                Ok(())
            }
        },
        Command::Onesided { level, common: a } => {
            let (_, part) = ctx.partition()?;
            let k = part.k();
            if level == 0 || level > part.data().levels() {
                bail!("level must be between 1 and {}", part.data().levels());
            }
            let rel = format!("reports/onesided.l{level}.r{}.json", a.radius);
            let deps = ctx.partition_deps();
            let text = report(&mut ctx, &rel, Some(a.radius), Some(k), &deps, |ctx| {
                let (os, summary) = ctx.onesided(level, a.radius)?;
                let p = ctx.group.presentation().clone();
                let prefix = format!("fsa/onesided.l{level}.r{}", a.radius);
                Ok(to_json(&OnesidedReport {
                    group: gname.clone(),
                    level,
                    exponent: part.data().exponent(level),
                    radius: a.radius,
                    k,
                    discovered: summary.discovered,
                    minimal: os
                        .specs()
                        .enumerate()
                        .map(|(j, s)| OnesidedSpecReport {
                            pair: s.pair.format(&p),
                            translator: ctx.group.format(&s.translator.word),
                            fsa: format!("{prefix}.{j}.fsa"),
                            states: s.fsa.num_states(),
                        })
                        .collect(),
                    cross_pair_containments: summary.cross_pair_containments,
                    nested_or_disjoint: os.nested_or_disjoint()?,
                    coverage: os.coverage(&part, a.radius)?,
                }))
            })?;
            emit(&text, a.out.as_deref())
        }
        Command::Verify { suite, common: a } => {
            let run_oracles = matches!(suite, Suite::All | Suite::Oracles);
            let run_kl = matches!(suite, Suite::All | Suite::Kl);
            let mut deps = vec![pipeline::ball_name(a.radius)];
            let mut k = None;
            let mut part = None;
            let mut langs = None;
            if run_oracles {
                let (l, p) = ctx.partition()?;
                k = Some(p.k());
                deps.extend(ctx.partition_deps());
                let descents = ctx.descent_fsas(&l)?;
                deps.extend(
                    descents
                        .iter()
                        .map(|(t, _)| pipeline::descent_name(&ctx.group, *t)),
                );
                part = Some(p);
                langs = Some((l, descents));
            }
            ctx.ball(a.radius)?;
            if run_kl {
                ctx.kl(a.radius)?;
                deps.push(pipeline::kl_name(a.radius));
            }
            let rel = format!(
                "reports/verify.{}.r{}.t{}.json",
                suite.name(),
                a.radius,
                a.trust_margin
            );
            let text = report(&mut ctx, &rel, Some(a.radius), k, &deps, |ctx| {
                let ball = ctx.ball(a.radius)?;
                let oracles = match (&part, &langs) {
                    (Some(p), Some((_, descents))) => {
                        let labels: Vec<(CellLabel, Fsa)> = p
                            .label_fsas()
                            .iter()
                            .map(|(l, f)| (*l, f.clone()))
                            .collect();
                        Some(oracle_suite(
                            p,
                            &labels,
                            descents,
                            &ball,
                            polycell::verify::DEFAULT_CLOSURE_CAP,
                        )?)
                    }
                    _ => None,
                };
                let table = if run_kl {
                    Some(ctx.kl(a.radius)?)
                } else {
                    None
                };
                let kl = table.as_ref().map(|t| kl_suite(t, 8));
                let comparison = match (&table, &part) {
                    (Some(t), Some(p)) => Some(empirical_vs_conjectural(t, p, a.trust_margin, &[])),
                    _ => None,
                };
                let passed = oracles.as_ref().is_none_or(|o| o.passed())
                    && kl.as_ref().is_none_or(|s| s.passed())
                    && comparison.as_ref().is_none_or(|c| c.all_agree());
                Ok(to_json(&VerifyReport {
                    group: gname.clone(),
                    suite: suite.name().to_string(),
                    radius: a.radius,
                    trust_margin: a.trust_margin,
                    k,
                    oracles,
                    kl,
                    comparison,
                    passed,
                }))
            })?;
            emit(&text, a.out.as_deref())?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            if v["passed"] != serde_json::Value::Bool(true) {
                bail!(Disagreement(format!(
                    "suite {} found disagreements",
                    suite.name()
                )));
            }
            Ok(())
        }
        Command::Render {
            radius,
            coloring,
            size,
            out,
        } => {
            let ball = ctx.ball(radius)?;
            let coloring = if coloring == "plain" {
                Coloring::Plain
            } else if coloring == "twosided" {
                let (_, part) = ctx.partition()?;
                Coloring::TwoSided(part.labels_on_ball(&ball))
            } else if let Some(level) = coloring.strip_prefix("onesided:") {
                let level: usize = level.parse().context("onesided:<level> needs a number")?;
                let (os, _) = ctx.onesided(level, radius)?;
                Coloring::OneSided(ball.elements().iter().map(|w| os.locate(w)).collect())
            } else {
                bail!("unknown coloring {coloring:?}; use twosided, onesided:<level> or plain");
            };
            let realization = PolygonRealization::new(ctx.group.presentation())?;
            let config = SceneConfig {
                size,
                ..SceneConfig::default()
            };
            let scene = Scene::new(&ball, &realization, &coloring, config);
            let svg = render_svg(&scene);
            let out = out.unwrap_or_else(|| ctx.cache.path(&format!("render.r{radius}.svg")));
            write_atomic(&out, &svg)?;
            println!(
                "{}",
                serde_json::json!({"out": out.display().to_string(), "tiles": scene.tiles.len(), "fills": scene.distinct_fills()})
            );
            Ok(())
        }
    }
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if e.downcast_ref::<CacheError>()
        .is_some_and(|c| matches!(c, CacheError::Corrupt { .. }))
    {
        "corrupt_cache"
    } else if e.downcast_ref::<CacheError>().is_some() {
        "io"
    } else if e.to_string().contains("cap") || e.to_string().contains("resource") {
        "resource"
    } else {
        "error"
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<Disagreement>().is_some() => {
            eprintln!(
                "{}",
                serde_json::json!({"kind": "disagreement", "message": e.to_string()})
            );
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({"kind": error_kind(&e), "message": format!("{e:#}")})
            );
            ExitCode::from(2)
        }
    }
}
