mod check;
mod instance;
mod output;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use levelpeaks_core::geom::{Interval, Line};
use levelpeaks_core::klevel::LevelInstance;
use levelpeaks_core::oracle::{klevel_sweep, sbe_trajectory};
use levelpeaks_core::peak::Peak;
use levelpeaks_core::pmst::{d_bound, sbe_all_peaks, sbe_extrema, sbe_one_shot_c, ParamGraph};
use levelpeaks_core::rational::{parse_rational, Rational};
use serde_json::{json, Value};

use instance::{default_range, Instance, LinesInstance};
use output::Pieces;

#[derive(Debug, Parser)]
#[command(name = "levelpeaks", version, about = "Peaks of k-levels and parametric bottleneck trajectories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RangeArgs {
    /// Left end of the query interval (integer or p/q); defaults to just left of every crossing.
    #[arg(long, allow_hyphen_values = true)]
    from: Option<String>,
    /// Right end of the query interval; defaults to just right of every crossing.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<String>,
}

#[derive(Debug, Args)]
struct LevelArgs {
    /// Instance file (JSON).
    file: PathBuf,
    /// Level, counted from the bottom; overrides `k` in the file.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckKind {
    Peaks,
    Counts,
    Selection,
    Sbe,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All local peaks of the k-level.
    Peaks {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Also write an SVG plot to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The tau highest maximal peaks of the k-level.
    TopPeaks {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The tau lowest minimal peaks of the k-level.
    BottomPeaks {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The point of the k-level above one abscissa.
    LevelQuery {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Number of maximal and minimal peaks of the k-level on an interval.
    CountPeaks {
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Bottleneck edge of the minimum spanning tree at one abscissa.
    SbeQuery {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Allowed number of components.
        #[arg(long, default_value_t = 1)]
        c: usize,
    },
    /// Maximum and minimum bottleneck weight over an interval.
    SbeExtrema {
        file: PathBuf,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 1)]
        c: usize,
    },
    /// Local peaks of the bottleneck weight trajectory.
    SbePeaks {
        file: PathBuf,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compare fast algorithms with brute force on a file or a seeded corpus.
    OracleCheck {
        check: CheckKind,
        /// Instance file; without one a random corpus is generated.
        file: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corpus size when no file is given.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Instance(String),
    Mismatch(Value),
}

impl From<instance::InstanceError> for Failure {
    fn from(e: instance::InstanceError) -> Self {
        Failure::Instance(e.0)
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(doc) => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Instance(msg)) => {
            eprintln!("invalid instance: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(doc)) => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            ExitCode::from(3)
        }
    }
}

fn rational_flag(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Usage(format!("--{name} {s:?}: {e}")))
}

fn resolve_range(args: &RangeArgs, lines: &[Line]) -> Result<Interval, Failure> {
    let fallback = default_range(lines);
    let lo = args.from.as_deref().map(|s| rational_flag("from", s)).transpose()?.unwrap_or(fallback.lo);
    let hi = args.to.as_deref().map(|s| rational_flag("to", s)).transpose()?.unwrap_or(fallback.hi);
    Interval::new(lo, hi).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_lines(path: &Path) -> Result<LinesInstance, Failure> {
    match instance::load(path)? {
        Instance::Lines(inst) => Ok(inst),
        Instance::Graph(_) => Err(Failure::Instance("expected a lines instance, found a graph".into())),
    }
}

fn load_graph(path: &Path) -> Result<ParamGraph, Failure> {
    match instance::load(path)? {
        Instance::Graph(g) => Ok(g),
        Instance::Lines(_) => Err(Failure::Instance("expected a graph instance, found lines".into())),
    }
}

fn level_instance(args: &LevelArgs) -> Result<(LevelInstance, LinesInstance), Failure> {
    let inst = load_lines(&args.file)?;
    let k = args.k.or(inst.k).ok_or_else(|| Failure::Usage("no level given: pass --k or set k in the file".into()))?;
    let n = inst.lines().len();
    if k == 0 || k > n {
        return Err(Failure::Usage(format!("--k {k} outside 1..={n}")));
    }
    let level = LevelInstance::new(inst.lines().to_vec(), k).map_err(|e| Failure::Instance(e.to_string()))?;
    Ok((level, inst))
}

fn write_svg(path: &Path, svg: &str) -> Result<(), Failure> {
    std::fs::write(path, svg).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn level_svg(path: Option<&PathBuf>, level: &LevelInstance, range: &Interval, peaks: &[Peak]) -> Result<(), Failure> {
    if let Some(path) = path {
        let trace = klevel_sweep(level.lines(), level.k(), range);
        write_svg(path, &svg::render(&format!("level k = {}", level.k()), &trace.trajectory, peaks))?;
    }
    Ok(())
}

fn level_doc(command: &str, level: &LevelInstance, inst: &LinesInstance, range: &Interval) -> Value {
    json!({
        "command": command,
        "k": level.k(),
        "range": output::range(range),
        "perturbation": output::perturbation(inst.canonical.perturbation.as_ref()),
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Peaks { level, range, svg } => {
            let (lv, inst) = level_instance(&level)?;
            let r = resolve_range(&range, inst.lines())?;
            let peaks = lv.all_peaks(&r);
            level_svg(svg.as_ref(), &lv, &r, &peaks)?;
            let mut doc = level_doc("peaks", &lv, &inst, &r);
            doc["peaks"] = output::peaks(&peaks, Pieces::Lines);
            Ok(doc)
        }
        Command::TopPeaks { level, range, tau, svg } => {
            let (lv, inst) = level_instance(&level)?;
            let r = resolve_range(&range, inst.lines())?;
            let peaks = lv.top_peaks(&r, tau).map_err(|e| Failure::Usage(e.to_string()))?;
            level_svg(svg.as_ref(), &lv, &r, &peaks)?;
            let mut doc = level_doc("top-peaks", &lv, &inst, &r);
            doc["tau"] = json!(tau);
            doc["peaks"] = output::peaks(&peaks, Pieces::Lines);
            Ok(doc)
        }
        Command::BottomPeaks { level, range, tau, svg } => {
            let (lv, inst) = level_instance(&level)?;
            let r = resolve_range(&range, inst.lines())?;
            let peaks = lv.bottom_peaks(&r, tau).map_err(|e| Failure::Usage(e.to_string()))?;
            level_svg(svg.as_ref(), &lv, &r, &peaks)?;
            let mut doc = level_doc("bottom-peaks", &lv, &inst, &r);
            doc["tau"] = json!(tau);
            doc["peaks"] = output::peaks(&peaks, Pieces::Lines);
            Ok(doc)
        }
        Command::LevelQuery { level, at } => {
            let (lv, inst) = level_instance(&level)?;
            let x = rational_flag("at", &at)?;
            let lp = lv.one_shot(&x);
            Ok(json!({
                "command": "level-query",
                "k": lv.k(),
                "perturbation": output::perturbation(inst.canonical.perturbation.as_ref()),
                "x": output::num(&lp.p.x),
                "y": output::num(&lp.p.y),
                "left_line": lp.left_line.id,
                "right_line": lp.right_line.id,
                "vertex": lp.is_vertex(),
            }))
        }
        Command::CountPeaks { level, range } => {
            let (lv, inst) = level_instance(&level)?;
            let r = resolve_range(&range, inst.lines())?;
            let maximal = lv.count_max_peaks(&r);
            let total = lv.count_peaks(&r);
            let mut doc = level_doc("count-peaks", &lv, &inst, &r);
            doc["maximal"] = json!(maximal);
            doc["minimal"] = json!(total - maximal);
            doc["total"] = json!(total);
            Ok(doc)
        }
        Command::SbeQuery { file, at, c } => {
            let g = load_graph(&file)?;
            let x = rational_flag("at", &at)?;
            let r = sbe_one_shot_c(&g, &x, c).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(json!({
                "command": "sbe-query",
                "perturbation": output::perturbation(g.perturbation()),
                "c": c,
                "x": output::num(&x),
                "edge": r.edge.id,
                "endpoints": [r.edge.u, r.edge.v],
                "weight": output::num(&r.weight),
            }))
        }
        Command::SbeExtrema { file, range, c } => {
            let g = load_graph(&file)?;
            let r = resolve_range(&range, &g.weight_lines())?;
            let e = sbe_extrema(&g, &r, c).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(json!({
                "command": "sbe-extrema",
                "perturbation": output::perturbation(g.perturbation()),
                "c": c,
                "range": output::range(&r),
                "max": output::num(&e.max),
                "argmax": output::num(&e.argmax),
                "min": output::num(&e.min),
                "argmin": output::num(&e.argmin),
            }))
        }
        Command::SbePeaks { file, range, svg } => {
            let g = load_graph(&file)?;
            let r = resolve_range(&range, &g.weight_lines())?;
            let found = sbe_all_peaks(&g, &r).map_err(|e| Failure::Instance(e.to_string()))?;
            if let Some(path) = &svg {
                let trace = sbe_trajectory(g.nodes(), g.edges(), &r).map_err(|e| Failure::Instance(e.to_string()))?;
                write_svg(path, &svg::render("bottleneck weight", &trace.trajectory, &found.peaks))?;
            }
            Ok(json!({
                "command": "sbe-peaks",
                "perturbation": output::perturbation(g.perturbation()),
                "range": output::range(&r),
                "peaks": output::peaks(&found.peaks, Pieces::Edges),
                "boundary": found.boundary.iter().map(output::boundary).collect::<Vec<_>>(),
                "d": d_bound(&g, &r),
            }))
        }
        Command::OracleCheck { check, file, k, range, seed, count } => oracle_check(check, file.as_deref(), k, &range, seed, count),
    }
}

fn oracle_check(kind: CheckKind, file: Option<&Path>, k: Option<usize>, range: &RangeArgs, seed: u64, count: usize) -> Outcome {
    let mut report = check::Report::default();
    match kind {
        CheckKind::Peaks | CheckKind::Counts | CheckKind::Selection => {
            let corpus: Vec<(Vec<Line>, Option<usize>)> = match file {
                Some(path) => {
                    let inst = load_lines(path)?;
                    vec![(inst.lines().to_vec(), k.or(inst.k))]
                }
                None => check::corpus_lines(seed, count, 20).into_iter().map(|l| (l, k)).collect(),
            };
            for (i, (lines, k)) in corpus.iter().enumerate() {
                if let Some(k) = k.filter(|&k| k == 0 || k > lines.len()) {
                    return Err(Failure::Usage(format!("--k {k} outside 1..={}", lines.len())));
                }
                let r = resolve_range(range, lines)?;
                match kind {
                    CheckKind::Peaks => check::peaks(&mut report, lines, *k, &r),
                    CheckKind::Counts => check::counts(&mut report, lines, *k, &r, seed.wrapping_add(i as u64)),
                    _ => check::selection(&mut report, lines, *k, &r),
                }
            }
        }
        CheckKind::Sbe => {
            let corpus = match file {
                Some(path) => vec![load_graph(path)?],
                None => check::corpus_graphs(seed, count),
            };
            for (i, g) in corpus.iter().enumerate() {
                let r = resolve_range(range, &g.weight_lines())?;
                check::sbe(&mut report, g, &r, seed.wrapping_add(i as u64));
            }
        }
    }
    let name = kind.to_possible_value().expect("named").get_name().to_string();
    let matched = report.mismatches.is_empty();
    for m in &report.mismatches {
        eprintln!("mismatch: {m}");
    }
    let doc = json!({
        "command": "oracle-check",
        "check": name,
        "instances": report.instances,
        "comparisons": report.comparisons,
        "mismatches": report.mismatches.len(),
        "result": if matched { "match" } else { "mismatch" },
    });
    if matched {
        Ok(doc)
    } else {
        Err(Failure::Mismatch(doc))
    }
}
