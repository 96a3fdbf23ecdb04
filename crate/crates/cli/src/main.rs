//! Command-line frontend: simplify a set system, render it as an Euler
//! diagram, or tabulate statistics over a corpus of systems.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use euler_merge::merge::PipelineResult;
use euler_merge::{curves, genus, layout, merge, stats, svg, DualGraph, SetSystem};

#[derive(Parser)]
#[command(
    name = "euler-merge",
    version,
    about = "Simplify a set system by merging sets until it admits a well-formed Euler diagram, then draw it"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the merge pipeline and report every merge.
    Simplify(SimplifyArgs),
    /// Run the pipeline and render an SVG diagram.
    Render(RenderArgs),
    /// Tabulate run statistics over one or more input systems as CSV.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One `label: elem, elem, ...` set per line.
    Lines,
    /// Structured JSON with a `sets` array.
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    /// The dual graph as constructed, before any merge.
    Initial,
    /// After planarity repair, before concurrency removal.
    Planar,
    /// The fully simplified system, drawn with set curves.
    Final,
}

#[derive(Args)]
struct InputArgs {
    /// Input set system file.
    input: PathBuf,
    /// Input format; inferred from the content when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct SimplifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also merge away pocket obstructions after concurrency removal.
    #[arg(long)]
    genus_removal: bool,
    /// Write the simplified graph and the merge log as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Pipeline stage to draw.
    #[arg(long, value_enum, default_value = "final")]
    stage: Stage,
    /// Layout seed; equal seeds give byte-identical output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Canvas size in pixels, as WIDTHxHEIGHT.
    #[arg(long, default_value = "800x600", value_parser = parse_canvas)]
    canvas: (u32, u32),
    /// Layout refinement iterations.
    #[arg(long, default_value_t = 200)]
    refine_iterations: usize,
    /// Curve smoothing iterations.
    #[arg(long, default_value_t = 100)]
    smooth_iterations: usize,
    /// Also merge away pocket obstructions after concurrency removal.
    #[arg(long)]
    genus_removal: bool,
    /// Write the SVG here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a JSON sidecar with the final zone coordinates.
    #[arg(long)]
    coords: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Input set system files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_canvas(s: &str) -> std::result::Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got '{s}'"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad canvas dimension '{v}': {e}"))
            .and_then(|n| {
                if n == 0 {
                    Err("canvas dimensions must be positive".into())
                } else {
                    Ok(n)
                }
            })
    };
    Ok((parse(w)?, parse(h)?))
}

fn read_system(args: &InputArgs) -> Result<SetSystem> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let system = match args.format {
        Some(Format::Lines) => SetSystem::from_lines(&text),
        Some(Format::Structured) => SetSystem::from_json(&text),
        None => SetSystem::parse(&text),
    };
    system.with_context(|| format!("parsing {}", args.input.display()))
}

fn run_pipeline(system: &SetSystem, genus_removal: bool) -> PipelineResult {
    let mut result = merge::euler_merge(system);
    if genus_removal {
        result.final_graph = genus::genus_removal(result.final_graph, &mut result.log);
    }
    result
}

fn summary_line(result: &PipelineResult) -> String {
    format!(
        "planarity={} concurrency={} zones={}",
        result.log.count(merge::MergeReason::Planarity),
        result.log.count(merge::MergeReason::Concurrency),
        result.final_graph.nonempty_zone_count()
    )
}

fn cmd_simplify(args: &SimplifyArgs) -> Result<()> {
    let system = read_system(&args.input)?;
    let result = run_pipeline(&system, args.genus_removal);

    if !result.log.connects.is_empty() {
        println!("connectivity repairs:");
        for c in &result.log.connects {
            println!("  {}: {} -- {}  label {}", c.set, c.a, c.b, c.label);
        }
    }
    if result.log.steps.is_empty() {
        println!("no merges needed");
    } else {
        println!("merges:");
        println!("  step  reason       merge     concurrency  zones");
        for (i, s) in result.log.steps.iter().enumerate() {
            println!(
                "  {:<4}  {:<11}  {} << {}  {:>3} -> {:<3}   {:>3} -> {:<3}",
                i + 1,
                s.reason.to_string(),
                s.kept,
                s.absorbed,
                s.concurrency_before,
                s.concurrency_after,
                s.zones_before,
                s.zones_after
            );
        }
    }
    println!(
        "surviving sets: {}",
        result
            .final_graph
            .active()
            .iter()
            .cloned()
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("{}", summary_line(&result));

    if let Some(path) = &args.out {
        let doc = serde_json::json!({
            "graph": result.final_graph,
            "log": result.log,
        });
        fs::write(path, serde_json::to_string_pretty(&doc)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn render_stage(args: &RenderArgs, result: &PipelineResult) -> Result<(String, DualGraph)> {
    let graph = match args.stage {
        Stage::Initial => result.initial.clone(),
        Stage::Planar => result.planar.clone(),
        Stage::Final => result.final_graph.clone(),
    };
    let mut lay = layout::planar_layout(&graph, args.seed)
        .context("laying out the dual graph (is this stage planar?)")?;
    layout::refine_layout(&graph, &mut lay, args.refine_iterations);

    let doc = if args.stage == Stage::Final {
        let mut diagram = curves::route_curves(&graph, &lay)?;
        curves::smooth_curves(&mut diagram, args.smooth_iterations);
        svg::emit_svg(&graph, &diagram, args.canvas)
    } else {
        svg::emit_stage_svg(&graph, &lay, args.canvas)
    };

    if let Some(path) = &args.coords {
        let zones: Vec<serde_json::Value> = lay
            .positions
            .iter()
            .map(|(label, p)| {
                serde_json::json!({
                    "label": label,
                    "x": p.0,
                    "y": p.1,
                })
            })
            .collect();
        fs::write(
            path,
            serde_json::to_string_pretty(&serde_json::json!({ "zones": zones }))?,
        )
        .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok((doc, graph))
}

fn cmd_render(args: &RenderArgs) -> Result<()> {
    let system = read_system(&args.input)?;
    let result = run_pipeline(&system, args.genus_removal);
    let (doc, _) = render_stage(args, &result)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &doc).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{doc}"),
    }
    eprintln!("{}", summary_line(&result));
    Ok(())
}

fn cmd_stats(args: &StatsArgs) -> Result<ExitCode> {
    let mut rows: Vec<(String, stats::RunStats)> = Vec::new();
    let mut failures = 0usize;
    for path in &args.inputs {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let run = read_input_stats(path);
        match run {
            Ok(s) => rows.push((name, s)),
            Err(e) => {
                eprintln!("{}: {e:#}", path.display());
                failures += 1;
            }
        }
    }
    if rows.is_empty() {
        anyhow::bail!("no input could be processed ({failures} failed)");
    }
    let csv = stats::to_csv(&rows);
    match &args.csv {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn read_input_stats(path: &Path) -> Result<stats::RunStats> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let system = SetSystem::parse(&text).context("parsing")?;
    let result = merge::euler_merge(&system);
    Ok(stats::run_stats(&result))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simplify(args) => cmd_simplify(args).map(|()| ExitCode::SUCCESS),
        Command::Render(args) => cmd_render(args).map(|()| ExitCode::SUCCESS),
        Command::Stats(args) => cmd_stats(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
