//! The `mtgames` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 parse failure, 3 solver
//! mismatch, 4 resource bound exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::benchgen::{
    gen_cleaning_robot, gen_multi_target_series, gen_random_game, parse_room_boxes, standard_rooms, OwnerMode,
    RandomGameParams, RobotError, RobotWorld,
};
use crate::game::{load_game, serialize_game, GameGraph, GameParseError};
use crate::gr1::solve_gr1_emb_bound;
use crate::mt::{prepare, solve_mt_bound, MTSolveResult, SolveOptions};
use crate::spec::{parse_mt_formula, parse_spec_file, serialize_spec, BoundSpec, LtlError, MTSpec, SpecFileError};
use crate::strategy::{
    check_strategy, extract_strategy_bound, parse_strategy, parse_winning_set, serialize_strategy,
    serialize_winning_set, CheckError, CheckOptions, Verdict, DEFAULT_CHECK_BOUND,
};

pub const CSV_HEADER: &str = "algo,n,m,sum_t,max_t,pre_count,outer_iterations,wall_ms,winning_size";

/// Environment variable capping the worker threads of `compare`.
pub const THREADS_ENV: &str = "MTGAMES_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mtgames", version, about = "Solve and benchmark mode-target games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one game and print its run record.
    Solve(SolveArgs),
    /// Solve with both algorithms and require equal winning sets.
    Compare(CompareArgs),
    /// Check a strategy file against a winning-set file.
    Check(CheckArgs),
    /// Write a cleaning-robot instance.
    GenRobot(GenRobotArgs),
    /// Write a random instance.
    GenRandom(GenRandomArgs),
    /// Write a series of random instances with a growing first mode.
    GenSeries(GenSeriesArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Mt,
    Gr1emb,
}

impl Algo {
    pub fn tag(self) -> &'static str {
        match self {
            Algo::Mt => "mt",
            Algo::Gr1emb => "gr1emb",
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SpecSource {
    /// Spec file with `mode` and `target` lines.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Spec as a formula, e.g. "(FG M1 -> FG T11)".
    #[arg(long)]
    pub ltl: Option<String>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[command(flatten)]
    pub spec: SpecSource,
    #[arg(long, value_enum, default_value = "mt")]
    pub algo: Algo,
    /// Warm-start the inner fixed points.
    #[arg(long)]
    pub warm: bool,
    /// Write the extracted strategy here.
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    /// Write the winning set here.
    #[arg(long)]
    pub winning: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// A single game; needs --spec or --ltl.
    #[arg(long, conflicts_with = "dir", required_unless_present = "dir")]
    pub game: Option<PathBuf>,
    #[arg(long, conflicts_with = "ltl")]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub ltl: Option<String>,
    /// Every `<name>.game` here, paired with `<name>.spec` unless --ltl is given.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    #[arg(long)]
    pub warm: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[command(flatten)]
    pub spec: SpecSource,
    #[arg(long)]
    pub strategy: PathBuf,
    #[arg(long)]
    pub winning: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CHECK_BOUND)]
    pub max_states: usize,
}

#[derive(Args, Debug)]
pub struct GenRobotArgs {
    /// Number of rooms.
    #[arg(long)]
    pub rooms: usize,
    /// Grid size as WIDTHxHEIGHT.
    #[arg(long, default_value = "16x16", value_parser = parse_grid)]
    pub grid: (usize, usize),
    /// File of `room <col_lo> <col_hi> <row_lo> <row_hi>` lines replacing the standard layout.
    #[arg(long)]
    pub boxes: Option<PathBuf>,
    /// Fraction of cells outside the rooms that are blocked.
    #[arg(long, default_value_t = 0.0)]
    pub obstacles: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path prefix; writes `<out>.game` and `<out>.spec`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct RandomArgs {
    #[arg(long)]
    pub states: usize,
    #[arg(long)]
    pub modes: usize,
    /// Expected out-degree.
    #[arg(long, default_value_t = 2.0)]
    pub density: f64,
    /// Probability that a state carries a given target label.
    #[arg(long, default_value_t = 0.3)]
    pub target_density: f64,
    /// Draw owners at random instead of alternating.
    #[arg(long)]
    pub random_owners: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl RandomArgs {
    fn params(&self, targets: Vec<usize>) -> RandomGameParams {
        RandomGameParams {
            states: self.states,
            targets,
            edge_density: self.density,
            target_density: self.target_density,
            owners: if self.random_owners {
                OwnerMode::Random
            } else {
                OwnerMode::Alternating
            },
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenRandomArgs {
    #[command(flatten)]
    pub base: RandomArgs,
    /// Target count per mode, comma separated; defaults to one each.
    #[arg(long, value_delimiter = ',')]
    pub targets: Vec<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct GenSeriesArgs {
    #[command(flatten)]
    pub base: RandomArgs,
    #[arg(long, default_value_t = 1)]
    pub min_targets: usize,
    #[arg(long, default_value_t = 10)]
    pub max_targets: usize,
    /// Output directory; instance `x` goes to `series_<x>.game` and `.spec`.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, found `{s}`"))?;
    let dim = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad grid dimension `{t}`"));
    Ok((dim(w)?, dim(h)?))
}

/// One solver run as written to CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub algo: Algo,
    pub n: usize,
    pub m: usize,
    pub sum_t: usize,
    pub max_t: usize,
    pub pre_count: u64,
    pub outer_iterations: u32,
    pub wall_ms: f64,
    pub winning_size: usize,
}

impl RunRecord {
    pub fn new(algo: Algo, g: &GameGraph, spec: &MTSpec, result: &MTSolveResult) -> Self {
        RunRecord {
            algo,
            n: g.num_states(),
            m: spec.num_modes(),
            sum_t: spec.sum_targets(),
            max_t: spec.max_targets(),
            pre_count: result.stats.pre_count,
            outer_iterations: result.stats.outer_iterations,
            wall_ms: result.stats.wall_time.as_secs_f64() * 1000.0,
            winning_size: result.winning.count(),
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3},{}",
            self.algo.tag(),
            self.n,
            self.m,
            self.sum_t,
            self.max_t,
            self.pre_count,
            self.outer_iterations,
            self.wall_ms,
            self.winning_size
        )
    }

    pub fn summary(&self) -> String {
        format!(
            "algo={} n={} m={} sum_t={} max_t={} pre_count={} outer_iterations={} wall_ms={:.3} winning_size={}",
            self.algo.tag(),
            self.n,
            self.m,
            self.sum_t,
            self.max_t,
            self.pre_count,
            self.outer_iterations,
            self.wall_ms,
            self.winning_size
        )
    }
}

pub fn csv_text(records: &[RunRecord]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in records {
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    out
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))
}

fn load_game_file(path: &Path) -> Result<GameGraph, CliError> {
    load_game(&read(path)?).map_err(|e| match e {
        GameParseError::Invalid(_) => CliError::Validation(format!("{}: {e}", path.display())),
        _ => CliError::Parse(format!("{}: {e}", path.display())),
    })
}

fn load_spec_file(path: &Path) -> Result<MTSpec, CliError> {
    parse_spec_file(&read(path)?).map_err(|e| match e {
        SpecFileError::Spec(_) => CliError::Validation(format!("{}: {e}", path.display())),
        _ => CliError::Parse(format!("{}: {e}", path.display())),
    })
}

fn parse_ltl(text: &str) -> Result<MTSpec, CliError> {
    parse_mt_formula(text).map_err(|e| match e {
        LtlError::Spec(_) => CliError::Validation(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    })
}

fn load_spec(file: Option<&Path>, ltl: Option<&str>) -> Result<MTSpec, CliError> {
    match (file, ltl) {
        (Some(path), _) => load_spec_file(path),
        (None, Some(text)) => parse_ltl(text),
        (None, None) => Err(CliError::Validation("a spec is required: pass --spec or --ltl".into())),
    }
}

fn bind(g: &GameGraph, spec: &MTSpec) -> Result<BoundSpec, CliError> {
    prepare(g, spec).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn run_solver(algo: Algo, g: &GameGraph, bound: &BoundSpec, opts: SolveOptions) -> MTSolveResult {
    match algo {
        Algo::Mt => solve_mt_bound(g, bound, opts),
        Algo::Gr1emb => solve_gr1_emb_bound(g, bound, opts),
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.strategy.is_some() && args.algo != Algo::Mt {
        return Err(CliError::Validation("strategy extraction requires --algo mt".into()));
    }
    let g = load_game_file(&args.game)?;
    let spec = load_spec(args.spec.spec.as_deref(), args.spec.ltl.as_deref())?;
    let bound = bind(&g, &spec)?;
    let opts = SolveOptions {
        warm: args.warm,
        record_trace: true,
    };
    let result = run_solver(args.algo, &g, &bound, opts);
    let record = RunRecord::new(args.algo, &g, &spec, &result);
    writeln!(out, "{}", record.summary()).unwrap();

    if let Some(path) = &args.strategy {
        let f = extract_strategy_bound(&g, &bound, &result).map_err(|e| CliError::Validation(e.to_string()))?;
        write(path, &serialize_strategy(&f, &result.winning))?;
    }
    if let Some(path) = &args.winning {
        write(path, &serialize_winning_set(&result.winning))?;
    }
    if let Some(path) = &args.csv {
        write(path, &csv_text(&[record]))?;
    }
    Ok(())
}

/// A solver under comparison; the CLI uses [`run_solver`].
pub type Solver = dyn Fn(Algo, &GameGraph, &BoundSpec, SolveOptions) -> MTSolveResult + Sync;

/// Runs both algorithms on every instance and returns two records per
/// instance, in order. Fails on the first instance whose winning sets differ.
pub fn compare_instances(
    instances: &[(String, GameGraph, MTSpec)],
    warm: bool,
    solver: &Solver,
) -> Result<Vec<RunRecord>, CliError> {
    let opts = SolveOptions {
        warm,
        record_trace: true,
    };
    let runs: Vec<Result<[RunRecord; 2], CliError>> = instances
        .par_iter()
        .map(|(name, g, spec)| {
            let bound = bind(g, spec).map_err(|e| CliError::Validation(format!("{name}: {e}")))?;
            let mt = solver(Algo::Mt, g, &bound, opts);
            let emb = solver(Algo::Gr1emb, g, &bound, opts);
            if mt.winning != emb.winning {
                let witness = mt.winning.difference(&emb.winning).first().map_or_else(
                    || format!("state {} is won only by gr1emb", emb.winning.difference(&mt.winning).first().unwrap()),
                    |s| format!("state {s} is won only by mt"),
                );
                return Err(CliError::Mismatch(format!(
                    "{name}: winning sets differ (mt {} states, gr1emb {} states); {witness}",
                    mt.winning.count(),
                    emb.winning.count()
                )));
            }
            Ok([
                RunRecord::new(Algo::Mt, g, spec, &mt),
                RunRecord::new(Algo::Gr1emb, g, spec, &emb),
            ])
        })
        .collect();
    let mut records = Vec::with_capacity(2 * runs.len());
    for run in runs {
        records.extend(run?);
    }
    Ok(records)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads: usize = v
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Validation(format!("{THREADS_ENV} must be a positive integer, found `{v}`")))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| CliError::Resource(format!("cannot start worker threads: {e}")))
}

fn load_instances(args: &CompareArgs) -> Result<Vec<(String, GameGraph, MTSpec)>, CliError> {
    if let Some(game) = &args.game {
        let g = load_game_file(game)?;
        let spec = load_spec(args.spec.as_deref(), args.ltl.as_deref())?;
        return Ok(vec![(game.display().to_string(), g, spec)]);
    }
    let dir = args.dir.as_ref().expect("clap requires --game or --dir");
    let mut games: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "game"))
        .collect();
    games.sort();
    if games.is_empty() {
        return Err(CliError::Validation(format!("no .game files in {}", dir.display())));
    }
    games
        .iter()
        .map(|path| {
            let g = load_game_file(path)?;
            let spec = match &args.ltl {
                Some(text) => parse_ltl(text)?,
                None => load_spec_file(&path.with_extension("spec"))?,
            };
            Ok((path.display().to_string(), g, spec))
        })
        .collect()
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instances = load_instances(args)?;
    let records = thread_pool()?.install(|| compare_instances(&instances, args.warm, &run_solver))?;
    for (pair, (name, _, _)) in records.chunks(2).zip(&instances) {
        writeln!(out, "{name}").unwrap();
        for r in pair {
            writeln!(out, "  {}", r.summary()).unwrap();
        }
    }
    writeln!(out, "{} instances, winning sets equal", instances.len()).unwrap();
    if let Some(path) = &args.csv {
        write(path, &csv_text(&records))?;
    }
    Ok(())
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = load_game_file(&args.game)?;
    let spec = load_spec(args.spec.spec.as_deref(), args.spec.ltl.as_deref())?;
    let f = parse_strategy(&read(&args.strategy)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.strategy.display())))?;
    let winning = parse_winning_set(&read(&args.winning)?, g.num_states())
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.winning.display())))?;
    let opts = CheckOptions {
        max_states: args.max_states,
    };
    match check_strategy(&g, &spec, &f, &winning, opts) {
        Ok(Verdict::Pass) => {
            writeln!(out, "PASS: strategy wins from all {} states", winning.count()).unwrap();
            Ok(())
        }
        Ok(Verdict::Fail(v)) => Err(CliError::Validation(format!("FAIL: {v}"))),
        Err(e @ CheckError::TooLarge { .. }) => Err(CliError::Resource(e.to_string())),
        Err(e) => Err(CliError::Validation(e.to_string())),
    }
}

fn write_instance(prefix: &Path, g: &GameGraph, spec: &MTSpec, out: &mut dyn Write) -> Result<(), CliError> {
    let game = prefix.with_extension("game");
    let spec_path = prefix.with_extension("spec");
    write(&game, &serialize_game(g))?;
    write(&spec_path, &serialize_spec(spec))?;
    writeln!(
        out,
        "{}: {} states, {} edges, m={} sum_t={} max_t={}",
        game.display(),
        g.num_states(),
        g.num_edges(),
        spec.num_modes(),
        spec.sum_targets(),
        spec.max_targets()
    )
    .unwrap();
    Ok(())
}

fn robot_error(e: RobotError) -> CliError {
    match e {
        RobotError::BoxSyntax { .. } => CliError::Parse(e.to_string()),
        _ => CliError::Validation(e.to_string()),
    }
}

pub fn cmd_gen_robot(args: &GenRobotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (width, height) = args.grid;
    let rooms = match &args.boxes {
        Some(path) => parse_room_boxes(&read(path)?).map_err(robot_error)?,
        None => standard_rooms(args.rooms, width, height).map_err(robot_error)?,
    };
    if rooms.len() != args.rooms {
        return Err(CliError::Validation(format!(
            "--rooms {} but {} room boxes given",
            args.rooms,
            rooms.len()
        )));
    }
    let world = RobotWorld {
        width,
        height,
        rooms,
        obstacle_density: args.obstacles,
        seed: args.seed,
    };
    let (g, spec) = gen_cleaning_robot(&world).map_err(robot_error)?;
    write_instance(&args.out, &g, &spec, out)
}

pub fn cmd_gen_random(args: &GenRandomArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let targets = if args.targets.is_empty() {
        vec![1; args.base.modes]
    } else {
        args.targets.clone()
    };
    if targets.len() != args.base.modes {
        return Err(CliError::Validation(format!(
            "--modes {} but {} target counts given",
            args.base.modes,
            targets.len()
        )));
    }
    let (g, spec) = gen_random_game(&args.base.params(targets)).map_err(|e| CliError::Validation(e.to_string()))?;
    write_instance(&args.out, &g, &spec, out)
}

pub fn cmd_gen_series(args: &GenSeriesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let base = args.base.params(vec![1; args.base.modes]);
    let series = gen_multi_target_series(&base, args.min_targets..=args.max_targets)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Validation(format!("cannot create {}: {e}", args.out.display())))?;
    let width = args.max_targets.to_string().len();
    for ((g, spec), x) in series.iter().zip(args.min_targets..) {
        write_instance(&args.out.join(format!("series_{x:0width$}")), g, spec, out)?;
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::GenRobot(a) => cmd_gen_robot(a, out),
        Command::GenRandom(a) => cmd_gen_random(a, out),
        Command::GenSeries(a) => cmd_gen_series(a, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if e.use_stderr() {
                write!(err, "{}", e.render()).unwrap();
            } else {
                write!(out, "{}", e.render()).unwrap();
            }
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            writeln!(err, "error: {e}").unwrap();
            e.exit_code()
        }
    }
}
