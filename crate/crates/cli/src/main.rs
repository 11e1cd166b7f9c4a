//! `prefgame`: generate instances, analyze them, run dynamics and sweep the
//! closed-form bound curves.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 search budget
//! exceeded, 4 a checked bound or theorem failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prefgame::constructions::{
    discrete_to_anchored, gen_anchored_star, gen_cycle_gadget, gen_fig1_ring, gen_path_cliques, gen_poa_clique,
    gen_two_strategy_star, ConstructionId,
};
use prefgame::dynamics::{anchored_descent, potential_descent, two_phase_schedule, Picker, Trace};
use prefgame::format::{anchored_to_json, instance_to_json, parse_game, GameFile};
use prefgame::metric::{cycle_metric, two_point_metric};
use prefgame::optimize::{
    analyze, analyze_anchored, anchored_optimum, lower_bound_curve, pos_upper_bound_two, potential_min_optimum,
    single_deviation_bound, DEFAULT_BUDGET,
};
use prefgame::random;
use prefgame::rational::{format_rational, parse_rational, rat, to_decimal};
use prefgame::{Error, Rational, StrategyVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "prefgame", version, about = "Discrete preference games on networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named construction (or a seeded random instance) as JSON.
    Gen(GenArgs),
    /// Exhaustively compute optimum, best and worst equilibria, PoS and PoA.
    Analyze(AnalyzeArgs),
    /// Run improvement dynamics and print the move trace as JSON.
    Dynamics(DynamicsArgs),
    /// Tabulate bound curves over a range of alpha as CSV.
    Sweep(SweepArgs),
}

#[derive(Clone, clap::Args)]
struct GenArgs {
    /// Construction id, or `random` for a seeded random instance.
    construction: String,
    #[arg(long, value_parser = parse_rat)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = parse_rat)]
    eps: Option<Rational>,
    /// Path length for the path families; node count for `random`.
    #[arg(long)]
    n: Option<usize>,
    /// Gadget parameter for the cycle gadget and the anchored star.
    #[arg(long)]
    k: Option<usize>,
    /// Override of the default clique size.
    #[arg(long)]
    clique_size: Option<usize>,
    /// Source construction for `anchored_from_discrete` (generated at alpha 1/2).
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Strategy count for `random`.
    #[arg(long, default_value_t = 3)]
    strategies: usize,
    #[arg(long, value_enum, default_value_t = MetricKind::Tree)]
    metric: MetricKind,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricKind {
    Tree,
    Line,
    Matrix,
    Spread,
    Cycle,
    TwoPoint,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Where to write the report JSON; printed after the summary otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    TwoPhase,
    First,
    Best,
    Coherent,
}

#[derive(clap::Args)]
struct DynamicsArgs {
    file: PathBuf,
    /// `preferred`, `optimum`, or a comma-separated strategy vector.
    #[arg(long, default_value = "preferred")]
    start: String,
    #[arg(long, value_enum, default_value_t = Schedule::First)]
    schedule: Schedule,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Curve {
    PosUpperTwo,
    PathLower,
    SingleDevLower,
}

impl Curve {
    fn id(self) -> &'static str {
        match self {
            Curve::PosUpperTwo => "pos_upper_two",
            Curve::PathLower => "path_lower",
            Curve::SingleDevLower => "single_dev_lower",
        }
    }

    /// Value at `alpha`, or `None` outside the curve's domain.
    fn value(self, alpha: &Rational, eps: &Rational) -> prefgame::Result<Option<Rational>> {
        let half = rat(1, 2);
        let zero = rat(0, 1);
        let one = rat(1, 1);
        Ok(match self {
            // two strategies: PoS is exactly 1 up to alpha = 1/2
            Curve::PosUpperTwo if *alpha <= half => Some(one),
            Curve::PosUpperTwo if *alpha < one => Some(pos_upper_bound_two(alpha)?),
            Curve::PathLower if *alpha > zero && *alpha < half => Some(lower_bound_curve(alpha, eps)?.ratio),
            Curve::SingleDevLower if *alpha > zero && *alpha <= half => Some(single_deviation_bound(alpha)),
            _ => None,
        })
    }
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Curves to tabulate; all three by default.
    #[arg(long = "curve", value_enum)]
    curves: Vec<Curve>,
    /// Explicit comma-separated alpha list, e.g. `1/4,1/2,2/3`.
    #[arg(long, value_delimiter = ',', value_parser = parse_rat, conflicts_with_all = ["start", "end", "step"])]
    alphas: Vec<Rational>,
    #[arg(long, value_parser = parse_rat)]
    start: Option<Rational>,
    #[arg(long, value_parser = parse_rat)]
    end: Option<Rational>,
    #[arg(long, value_parser = parse_rat)]
    step: Option<Rational>,
    /// Path-metric spacing parameter for `path_lower`.
    #[arg(long, value_parser = parse_rat, default_value = "1/1000")]
    eps: Rational,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_rat(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// What went wrong, mapped onto an exit code.
enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Engine(e) if e.is_resource() => 3,
            Failure::Engine(e) if e.is_theorem_violation() => 4,
            Failure::Engine(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Engine(e) => write!(f, "{e}"),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout(&format!("{}\n", text.trim_end())),
    }
}

/// A closed pipe (e.g. `| head`) is not an error.
fn stdout(text: &str) -> CmdResult {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

fn require<T: Clone>(value: &Option<T>, flag: &str, id: &str) -> Result<T, Failure> {
    value.clone().ok_or_else(|| usage(format!("{id} needs --{flag}")))
}

fn build(id: ConstructionId, args: &GenArgs) -> Result<GameFile, Failure> {
    let name = id.name();
    let eps = || require(&args.eps, "eps", name);
    Ok(match id {
        ConstructionId::PoaClique => GameFile::Discrete(gen_poa_clique(&require(&args.alpha, "alpha", name)?)?.instance),
        ConstructionId::Fig1Ring => GameFile::Discrete(gen_fig1_ring().instance),
        ConstructionId::TwoStrategyStar => GameFile::Discrete(gen_two_strategy_star(&require(&args.alpha, "alpha", name)?)?),
        ConstructionId::CycleMetricGadget => {
            GameFile::Discrete(gen_cycle_gadget(require(&args.k, "k", name)?, args.clique_size)?.instance)
        }
        ConstructionId::PathCliquesHalf => {
            let n = require(&args.n, "n", name)?;
            GameFile::Discrete(gen_path_cliques(&rat(1, 2), n, &eps()?, args.clique_size)?.instance)
        }
        ConstructionId::PathCliquesSubHalf => {
            let alpha = require(&args.alpha, "alpha", name)?;
            if alpha >= rat(1, 2) {
                return Err(usage(format!("{name} needs alpha < 1/2")));
            }
            let n = require(&args.n, "n", name)?;
            GameFile::Discrete(gen_path_cliques(&alpha, n, &eps()?, args.clique_size)?.instance)
        }
        ConstructionId::AnchoredStar => GameFile::Anchored(gen_anchored_star(require(&args.k, "k", name)?)?),
        ConstructionId::AnchoredFromDiscrete => {
            let source: ConstructionId = require(&args.from, "from", name)?.parse()?;
            if matches!(source, ConstructionId::AnchoredStar | ConstructionId::AnchoredFromDiscrete) {
                return Err(usage("--from must name a discrete construction"));
            }
            let mut inner = args.clone();
            inner.alpha = Some(rat(1, 2));
            inner.from = None;
            match build(source, &inner)? {
                GameFile::Discrete(inst) => {
                    let inst = inst.with_alpha(rat(1, 2))?;
                    GameFile::Anchored(discrete_to_anchored(&inst)?)
                }
                GameFile::Anchored(_) => unreachable!("discrete source"),
            }
        }
    })
}

fn random_game(args: &GenArgs) -> Result<GameFile, Failure> {
    let seed = require(&args.seed, "seed", "random")?;
    let n = require(&args.n, "n", "random")?;
    let alpha = require(&args.alpha, "alpha", "random")?;
    let m = args.strategies;
    if m == 0 {
        return Err(usage("--strategies must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let metric = match args.metric {
        MetricKind::Tree => random::random_tree_metric(&mut rng, m),
        MetricKind::Line => random::random_line_metric(&mut rng, m),
        MetricKind::Matrix => random::random_matrix_metric(&mut rng, m),
        MetricKind::Spread => random::random_spread_metric(&mut rng, m),
        MetricKind::Cycle => cycle_metric(m)?,
        MetricKind::TwoPoint => two_point_metric(),
    };
    // build at a known-good alpha so a bad --alpha surfaces as a validation error
    let inst = random::random_instance(&mut rng, n, metric, rat(0, 1));
    Ok(GameFile::Discrete(inst.with_alpha(alpha)?))
}

fn cmd_gen(args: &GenArgs) -> CmdResult {
    let game = if args.construction == "random" {
        random_game(args)?
    } else {
        build(args.construction.parse()?, args)?
    };
    let text = match &game {
        GameFile::Discrete(inst) => instance_to_json(inst),
        GameFile::Anchored(inst) => anchored_to_json(inst),
    };
    emit(args.out.as_deref(), &text)
}

fn load(path: &Path) -> Result<GameFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_game(&text)?)
}

fn cmd_analyze(args: &AnalyzeArgs) -> CmdResult {
    let report = match load(&args.file)? {
        GameFile::Discrete(inst) => analyze(&inst, args.budget)?,
        GameFile::Anchored(inst) => analyze_anchored(&inst, args.budget)?,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serialises");
    stdout(&format!("{}\n", report.summary()))?;
    emit(args.out.as_deref(), &json)
}

fn parse_start(text: &str, len: usize) -> Result<StrategyVector, Failure> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage(format!("bad start vector {text:?}")))?;
    if values.len() != len {
        return Err(usage(format!("start vector has {} entries, expected {len}", values.len())));
    }
    Ok(StrategyVector::new(values))
}

fn picker(schedule: Schedule) -> Option<Picker> {
    match schedule {
        Schedule::TwoPhase => None,
        Schedule::First => Some(Picker::FirstImproving),
        Schedule::Best => Some(Picker::BestImproving),
        Schedule::Coherent => Some(Picker::CoherentTree),
    }
}

fn cmd_dynamics(args: &DynamicsArgs) -> CmdResult {
    let trace: Trace = match load(&args.file)? {
        GameFile::Discrete(inst) => {
            let start = match args.start.as_str() {
                "preferred" => inst.all_preferred(),
                "optimum" => potential_min_optimum(&inst, args.budget)?,
                other => parse_start(other, inst.node_count())?,
            };
            inst.check(&start)?;
            match picker(args.schedule) {
                None => two_phase_schedule(&inst, &start)?,
                Some(p) => potential_descent(&inst, &start, p)?,
            }
        }
        GameFile::Anchored(inst) => {
            let start = match args.start.as_str() {
                "preferred" => StrategyVector::new(
                    inst.strategic()
                        .iter()
                        .map(|&v| inst.fixed_neighbor_prefs(v).first().copied().unwrap_or(0))
                        .collect(),
                ),
                "optimum" => anchored_optimum(&inst, args.budget)?.vectors[0].clone(),
                other => parse_start(other, inst.strategic().len())?,
            };
            inst.check(&start)?;
            let p = match args.schedule {
                Schedule::TwoPhase => return Err(usage("two-phase schedule needs a discrete two-strategy game")),
                Schedule::Best => return Err(usage("anchored games support the first and coherent schedules")),
                other => picker(other).expect("descent schedule"),
            };
            anchored_descent(&inst, &start, p)?
        }
    };
    emit(args.out.as_deref(), &trace.to_json())
}

fn sweep_alphas(args: &SweepArgs) -> Result<Vec<Rational>, Failure> {
    let zero = rat(0, 1);
    let one = rat(1, 1);
    let alphas = if !args.alphas.is_empty() {
        args.alphas.clone()
    } else {
        let (Some(start), Some(end), Some(step)) = (&args.start, &args.end, &args.step) else {
            return Err(usage("sweep needs --alphas or all of --start, --end, --step"));
        };
        if *step <= zero {
            return Err(usage("--step must be positive"));
        }
        let mut out = Vec::new();
        let mut a = start.clone();
        while a <= *end {
            out.push(a.clone());
            a += step;
        }
        out
    };
    if let Some(bad) = alphas.iter().find(|a| **a < zero || **a > one) {
        return Err(usage(format!("alpha {} outside [0,1]", format_rational(bad))));
    }
    Ok(alphas)
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let mut alphas = sweep_alphas(args)?;
    alphas.sort();
    alphas.dedup();
    let mut curves = if args.curves.is_empty() {
        vec![Curve::PosUpperTwo, Curve::PathLower, Curve::SingleDevLower]
    } else {
        args.curves.clone()
    };
    curves.sort();
    curves.dedup();

    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| usage(e.to_string());
    writer.write_record(["alpha", "alpha_decimal", "value", "curve_id"]).map_err(csv_err)?;
    for alpha in &alphas {
        for &curve in &curves {
            if let Some(value) = curve.value(alpha, &args.eps)? {
                writer
                    .write_record([
                        format_rational(alpha),
                        to_decimal(alpha, 12),
                        format_rational(&value),
                        curve.id().to_string(),
                    ])
                    .map_err(csv_err)?;
            }
        }
    }
    let bytes = writer.into_inner().map_err(|e| usage(e.to_string()))?;
    let text = String::from_utf8(bytes).expect("csv is utf-8");
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout(&text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Dynamics(args) => cmd_dynamics(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
