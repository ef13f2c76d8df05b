use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dynecc::adversary::ov::{OvFile, OvInstance};
use dynecc::adversary::{
    gen_2approx, gen_diam32, gen_directed, gen_ecc53, gen_kcycle, gen_radius32, GadgetInstance, GadgetKind, Polarity,
};
use dynecc::grid::{Algorithm, GridConfig};
use dynecc::oracle::oracle;
use dynecc::report::{fmt_value, write_report};
use dynecc::stream::{parse_stream, Event, UpdateStream};
use dynecc::verify::{replay, ReplayError, Replayer, VerifyLevel};
use dynecc::{DynamicGraph, Mode, Param};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "dynecc", version, about = "Partially dynamic diameter, radius and eccentricity estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a stream through the grid-wrapped estimator and report estimates.
    Run(RunArgs),
    /// Generate a lower-bound instance as a stream plus a JSON-lines sidecar.
    Gen(GenArgs),
    /// Per-event timing and work counters for a stream.
    Bench(BenchArgs),
    /// Exact parameter values along a stream.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Rand,
    Det,
}

impl From<Alg> for Algorithm {
    fn from(a: Alg) -> Self {
        match a {
            Alg::Rand => Algorithm::Rand,
            Alg::Det => Algorithm::Det,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Verify {
    None,
    Queries,
    Events,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolarityArg {
    Insert,
    Delete,
}

#[derive(Args)]
struct EstimatorArgs {
    /// Update stream file.
    stream: PathBuf,
    #[arg(long, value_enum, default_value = "rand")]
    alg: Alg,
    /// diameter, radius or eccentricities (ecc).
    #[arg(long, default_value = "diameter")]
    param: Param,
    #[arg(long, default_value_t = 0.3)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplier on the sample size of the randomized estimators.
    #[arg(long, default_value_t = 1.0)]
    c_sample: f64,
    /// Multiplier on the admission probability of the randomized estimators.
    #[arg(long, default_value_t = 1.0)]
    c_prime: f64,
    /// Write CSV here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl EstimatorArgs {
    fn grid_config(&self) -> GridConfig {
        GridConfig {
            c_sample: self.c_sample,
            c_prime: self.c_prime,
            ..GridConfig::new(self.alg.into(), self.param, self.eps, Mode::Incremental, self.seed)
        }
    }

    fn load(&self) -> Result<UpdateStream> {
        read_stream(&self.stream)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    est: EstimatorArgs,
    /// Oracle checks at queries (default), at every event, or never.
    #[arg(long, value_enum, default_value = "queries")]
    verify: Verify,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    est: EstimatorArgs,
}

#[derive(Args)]
struct GenArgs {
    /// diam32, radius32, ecc53, 2approx, directed-ecc, directed-radius or kcycle.
    kind: GadgetKind,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Random vector instance: set sizes followed by the dimension
    /// (`|U| |V| |W| d`, or `|U| |V| d` for 2approx).
    #[arg(long, num_args = 3..=4)]
    random_ov: Option<Vec<usize>>,
    /// Probability of a 1 entry in random vectors or of an arc in a random
    /// cycle seed.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Seed instance: JSON `{"sets": [["101", ...], ...]}`, or a stream file
    /// whose initial graph seeds kcycle.
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Cycle length for kcycle.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Vertices of the random kcycle seed digraph.
    #[arg(long, default_value_t = 6)]
    nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "insert")]
    polarity: PolarityArg,
    /// Emit only this stage as a partially dynamic stream.
    #[arg(long)]
    stage: Option<usize>,
    /// Output prefix; writes `<out>.stream` and `<out>.jsonl`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest instance certified against the oracle; 0 skips certification.
    #[arg(long, default_value_t = 4000)]
    certify_limit: usize,
}

#[derive(Args)]
struct OracleArgs {
    stream: PathBuf,
    /// Only this parameter (default: diameter and radius).
    #[arg(long)]
    param: Option<Param>,
    /// Report after every event, not only at queries.
    #[arg(long)]
    every_event: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn read_stream(path: &Path) -> Result<UpdateStream> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_stream(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<bool> {
    let stream = args.est.load()?;
    let level = match args.verify {
        Verify::None => VerifyLevel::None,
        Verify::Queries => VerifyLevel::Queries,
        Verify::Events => VerifyLevel::Events,
    };
    let rows = replay(&stream, args.est.grid_config(), level)?;
    emit(&args.est.output, &write_report(&rows))?;
    let failed = rows.iter().filter(|r| r.ok == Some(false)).count();
    if failed > 0 {
        eprintln!("{failed} of {} verified rows outside the guaranteed bounds", rows.len());
    }
    Ok(failed == 0)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub const BENCH_HEADER: [&str; 11] = [
    "event_index",
    "elapsed_ns",
    "work_total",
    "work_sample",
    "work_pivot",
    "work_centers",
    "work_selection",
    "cells",
    "reinit_count",
    "phase",
    "estimate",
];

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let stream = args.est.load()?;
    let mut r = Replayer::new(&stream, args.est.grid_config(), VerifyLevel::None)?;
    let mut rows = Vec::new();
    for (i, ev) in stream.events.iter().enumerate() {
        let start = Instant::now();
        r.step(ev)?;
        let elapsed = start.elapsed().as_nanos();
        let s = r.grid().stats();
        let estimate = r.grid().query().values().into_iter().fold(0.0, f64::max);
        let w = s.work_classes;
        rows.push(vec![
            i.to_string(),
            elapsed.to_string(),
            s.work.to_string(),
            w.sample.to_string(),
            w.pivot.to_string(),
            w.centers.to_string(),
            w.selection.to_string(),
            s.cells.to_string(),
            s.reinit_count.to_string(),
            s.phase.to_string(),
            fmt_value(estimate),
        ]);
    }
    emit(&args.est.output, &csv_text(&BENCH_HEADER, rows)?)
}

fn cmd_oracle(args: &OracleArgs) -> Result<()> {
    let stream = read_stream(&args.stream)?;
    let mut g = stream.initial_graph()?;
    let params = match args.param {
        Some(p) => vec![p],
        None => vec![Param::Diameter, Param::Radius],
    };
    let mut rows = Vec::new();
    for (i, ev) in stream.events.iter().enumerate() {
        let report = match ev {
            Event::Update(e) => {
                g.apply(e)?;
                args.every_event
            }
            Event::Query => true,
            Event::Stage(_) => false,
        };
        if !report {
            continue;
        }
        let o = oracle(&g);
        for &p in &params {
            match p {
                Param::Diameter => rows.push(vec![i.to_string(), p.name().into(), fmt_value(o.diameter.as_f64())]),
                Param::Radius => rows.push(vec![i.to_string(), p.name().into(), fmt_value(o.radius.as_f64())]),
                Param::Eccentricities => {
                    for (v, d) in o.ecc_out.iter().enumerate() {
                        rows.push(vec![i.to_string(), format!("eccentricity:{v}"), fmt_value(d.as_f64())]);
                    }
                }
            }
        }
    }
    emit(&args.output, &csv_text(&["event_index", "param", "value"], rows)?)
}

fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> DynamicGraph {
    let mut g = DynamicGraph::new(n, true);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.insert_edge(u, v).expect("fresh arc");
            }
        }
    }
    g
}

fn build_gadget(args: &GenArgs) -> Result<GadgetInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let polarity = match args.polarity {
        PolarityArg::Insert => Polarity::Insert,
        PolarityArg::Delete => Polarity::Delete,
    };
    if args.kind == GadgetKind::KCycle {
        let seed = match &args.seed_file {
            Some(p) => read_stream(p)?.initial_graph()?,
            None => random_digraph(args.nodes, args.density, &mut rng),
        };
        return Ok(gen_kcycle(&seed, args.k, polarity)?);
    }
    let sets = if args.kind == GadgetKind::TwoApprox { 2 } else { 3 };
    let inst = match (&args.seed_file, &args.random_ov) {
        (Some(p), _) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let file: OvFile = serde_json::from_str(&text).context("seed instance JSON")?;
            OvInstance::from_strings(&file.sets)?
        }
        (None, sizes) => {
            let sizes = sizes.clone().unwrap_or_else(|| if sets == 2 { vec![4, 4, 3] } else { vec![4, 4, 4, 3] });
            if sizes.len() != sets + 1 {
                bail!("{} takes {} set sizes and a dimension", args.kind, sets);
            }
            OvInstance::random(&sizes[..sets], sizes[sets], args.density, &mut rng)
        }
    };
    Ok(match args.kind {
        GadgetKind::Diam32 => gen_diam32(&inst, args.eps, polarity)?,
        GadgetKind::Radius32 => gen_radius32(&inst, args.eps, polarity)?,
        GadgetKind::Ecc53 => gen_ecc53(&inst, args.eps, polarity)?,
        GadgetKind::TwoApprox => gen_2approx(&inst, args.eps, polarity)?,
        kind @ (GadgetKind::DirectedEcc | GadgetKind::DirectedRadius) => gen_directed(&inst, args.eps, kind, polarity)?,
        GadgetKind::KCycle => unreachable!("handled above"),
    })
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let gi = build_gadget(args)?;
    if args.certify_limit > 0 && gi.base.n() <= args.certify_limit {
        let report = gi.certify(args.certify_limit)?;
        let events = report.iter().filter(|r| r.event).count();
        eprintln!(
            "certified {} stages ({events} with the event) on {} vertices, a = {}",
            report.len(),
            gi.base.n(),
            gi.a
        );
    }
    let stream = match args.stage {
        Some(i) if i >= gi.stages.len() => bail!("stage {i} out of range ({} stages)", gi.stages.len()),
        Some(i) => gi.stage_stream(i),
        None => gi.to_stream(),
    };
    let prefix = args.out.clone().unwrap_or_else(|| PathBuf::from(args.kind.name()));
    let stream_path = prefix.with_extension("stream");
    let sidecar_path = prefix.with_extension("jsonl");
    fs::write(&stream_path, stream.to_text()).with_context(|| format!("writing {}", stream_path.display()))?;
    fs::write(&sidecar_path, gi.sidecar()).with_context(|| format!("writing {}", sidecar_path.display()))?;
    eprintln!("wrote {} and {}", stream_path.display(), sidecar_path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Gen(a) => cmd_gen(a).map(|_| true),
        Command::Bench(a) => cmd_bench(a).map(|_| true),
        Command::Oracle(a) => cmd_oracle(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if let Some(ReplayError::IncompatibleSpec(_)) = e.downcast_ref::<ReplayError>() {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
