use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simplexpaths::bounds::audit;
use simplexpaths::complex::{emit_facet_list, parse_facet_list};
use simplexpaths::constructions::stack_complex;
use simplexpaths::generators::{
    exponential_ball, fixture, hirsch_sphere, marked_path_report, MarkedComplex, Sidecar,
};
use simplexpaths::ordering::{Evaluator, OrderedFacet};
use simplexpaths::pathfinder::{
    build_path_to_facet, build_path_to_set, enumerate_paths, parse_face_set, parse_ordered_facet,
    path_verdicts, segment_trace, DualPath, NodeBudget, StopRule, DEFAULT_CAP,
};
use simplexpaths::{corpus, Complex, Error, Face};

const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_STUCK: u8 = 3;
const EXIT_VIOLATION: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "simplexpaths", version, about = "Monotone conservative dual paths in pure simplicial complexes")]
struct Cli {
    /// Node cap for exhaustive searches.
    #[arg(long, global = true, env = "SIMPLEXPATHS_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report structural predicates of a complex.
    Check(CheckArgs),
    /// Build, enumerate or verify monotone conservative paths.
    Path(PathArgs),
    /// Write a generated complex and its JSON sidecar.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Compare observed path lengths with the diameter upper bounds.
    Audit(AuditArgs),
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    normal: bool,
    #[arg(long)]
    flag: bool,
    /// Print the bannerness k.
    #[arg(long)]
    banner: bool,
    #[arg(long)]
    pm: bool,
    /// Vertex decomposability.
    #[arg(long)]
    vd: bool,
}

#[derive(Args)]
struct PathArgs {
    file: PathBuf,
    /// Start facet as "{a,b,c}" (first admissible ordering) or "(a b c)".
    #[arg(long)]
    from: String,
    /// Target facet; the path ends exactly there.
    #[arg(long, conflicts_with = "to_set", required_unless_present = "to_set")]
    to_facet: Option<String>,
    /// Target vertex set; the path ends at the first facet meeting it.
    #[arg(long)]
    to_set: Option<String>,
    /// Print every monotone conservative path instead of one.
    #[arg(long)]
    enumerate: bool,
    /// Run the recursive segment checker and print its trace.
    #[arg(long)]
    verify_segment: bool,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Ball with exponentially long paths between its marked facets.
    Ball {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'N')]
        n: usize,
        #[command(flatten)]
        out: GenerateOut,
    },
    /// Sphere with exponentially long paths between its marked facets.
    Sphere {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'N')]
        n: usize,
        #[command(flatten)]
        out: GenerateOut,
    },
    /// Stacked complex of `l` facets of size `d + 1`.
    Stack {
        #[arg(short = 'l')]
        l: usize,
        #[arg(short = 'd')]
        d: usize,
        #[command(flatten)]
        out: GenerateOut,
    },
    /// Built-in example complex.
    Fixture {
        name: String,
        #[command(flatten)]
        out: GenerateOut,
    },
    /// Seeded random complex from one of the test corpora.
    Random {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[command(flatten)]
        out: GenerateOut,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Normal,
    Pseudomanifold,
    Flag,
}

#[derive(Args)]
struct GenerateOut {
    /// Facet-list output; the sidecar goes to the same path plus ".json".
    /// Without it the facet list is printed and no sidecar is written.
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
    /// Enumerate paths between the marked facets and record the shortest.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct AuditArgs {
    file: PathBuf,
    /// Where to write the counterexample bundle if a bound is violated
    /// (default: the input path plus ".violation.json").
    #[arg(long)]
    certificate: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Stuck(_) | Error::NoAdmissibleOrdering(_) => EXIT_STUCK,
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) }
}

fn load(path: &Path) -> Result<Complex, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_facet_list(&text).map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let budget = NodeBudget::new(cli.cap);
    let result = match &cli.command {
        Command::Check(args) => check(args),
        Command::Path(args) => path(args, &budget),
        Command::Generate { kind } => generate(kind, &budget),
        Command::Audit(args) => run_audit(args, &budget),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn check(args: &CheckArgs) -> Result<u8, Failure> {
    let c = load(&args.file)?;
    let none = !(args.normal || args.flag || args.banner || args.pm || args.vd);
    let all = args.all || none;
    let mut holds = true;
    let mut report = |name: &str, value: bool| {
        println!("{name}: {value}");
        holds &= value;
    };
    if all || args.normal {
        report("normal", c.is_normal());
    }
    if all || args.flag {
        report("flag", c.is_flag());
    }
    if all || args.pm {
        report("pseudomanifold", c.is_pseudomanifold());
    }
    if all || args.vd {
        report("vertex-decomposable", c.is_vertex_decomposable());
    }
    if all || args.banner {
        println!("bannerness: {}", c.bannerness());
    }
    Ok(if holds { 0 } else { EXIT_FALSE })
}

fn parse_start(c: &Complex, ev: &Evaluator, text: &str) -> Result<Vec<OrderedFacet>, Failure> {
    if text.trim_start().starts_with('(') {
        let f = parse_ordered_facet(c, text)?;
        if !ev.is_admissible(&f)? {
            return Err(Error::NotAdmissible(f.display(c)).into());
        }
        return Ok(vec![f]);
    }
    let set = parse_face_set(c, text)?;
    let orderings = ev.admissible_orderings(&set)?;
    if orderings.is_empty() {
        return Err(Error::NoAdmissibleOrdering(c.format_face(&set)).into());
    }
    Ok(orderings)
}

fn print_path(c: &Complex, ev: &Evaluator, p: &DualPath) -> Result<(), Failure> {
    print!("{}", p.render(c));
    for s in &p.steps {
        println!("# vector {} {}", s.display(c), ev.distance_vector(s)?);
    }
    for (i, v) in path_verdicts(ev, p)?.iter().enumerate() {
        println!("# step {}: {}", i + 1, v.render(c));
    }
    Ok(())
}

/// Prints the segment trace of `p` (cut at the first facet meeting the
/// target) and reports whether it holds.
fn print_segment(c: &Complex, p: &DualPath) -> bool {
    let facets = p.facet_sets();
    let cut = facets.iter().position(|f| f.meets(&p.target)).map_or(facets.len(), |i| i + 1);
    if cut < facets.len() {
        println!("# segment check up to step {}", cut - 1);
    }
    let trace = segment_trace(c, &facets[..cut], &p.target);
    for line in trace.render().lines() {
        println!("# {line}");
    }
    trace.holds
}

fn path(args: &PathArgs, budget: &NodeBudget) -> Result<u8, Failure> {
    let c = load(&args.file)?;
    let (target, to_facet): (Face, bool) = match (&args.to_facet, &args.to_set) {
        (Some(t), _) => {
            let t = parse_face_set(&c, t)?;
            if !c.is_facet(&t) {
                return Err(Error::NotAFacet(c.format_face(&t)).into());
            }
            (t, true)
        }
        (None, Some(s)) => (parse_face_set(&c, s)?, false),
        (None, None) => unreachable!("clap requires a target"),
    };
    let ev = Evaluator::new(&c, &target)?;
    let starts = parse_start(&c, &ev, &args.from)?;
    let paths = if args.enumerate {
        let stop = if to_facet { StopRule::ReachFacet } else { StopRule::MeetTarget };
        let e = enumerate_paths(&ev, &starts[0].set(), stop, budget)?.complete(budget.cap())?;
        let explicit = args.from.trim_start().starts_with('(');
        e.paths
            .into_iter()
            .filter(|p| !explicit || p.first() == &starts[0])
            .collect()
    } else if to_facet {
        vec![build_path_to_facet(&c, &starts[0], &target)?]
    } else {
        vec![build_path_to_set(&ev, &starts[0])?]
    };
    let mut all_segments = true;
    for (i, p) in paths.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print_path(&c, &ev, p)?;
        if args.verify_segment {
            all_segments &= print_segment(&c, p);
        }
    }
    if args.enumerate {
        println!("\npaths: {}", paths.len());
    }
    Ok(if all_segments { 0 } else { EXIT_FALSE })
}

fn generate(kind: &GenerateKind, budget: &NodeBudget) -> Result<u8, Failure> {
    let marked = |m: MarkedComplex, name: &str, params: serde_json::Value, verify: bool| -> Result<_, Failure> {
        let mut sidecar = m.sidecar(name, params);
        if verify {
            let report = marked_path_report(&m, budget)?;
            sidecar.observed_min_length = report.min_length().map(|l| l as u64);
        }
        Ok((m.complex, sidecar))
    };
    let (complex, sidecar, out) = match kind {
        GenerateKind::Ball { d, n, out } => {
            let (c, s) = marked(exponential_ball(*d, *n)?, "ball", serde_json::json!({"d": d, "N": n}), out.verify)?;
            (c, s, out)
        }
        GenerateKind::Sphere { d, n, out } => {
            let (c, s) = marked(hirsch_sphere(*d, *n)?, "sphere", serde_json::json!({"d": d, "N": n}), out.verify)?;
            (c, s, out)
        }
        GenerateKind::Stack { l, d, out } => {
            let c = stack_complex(*l, *d)?;
            let s = Sidecar::plain("stack", serde_json::json!({"l": l, "d": d}), &c);
            (c, s, out)
        }
        GenerateKind::Fixture { name, out } => {
            let c = fixture(name)?;
            let s = Sidecar::plain("fixture", serde_json::json!({"name": name}), &c);
            (c, s, out)
        }
        GenerateKind::Random { family, seed, max_vertices, out } => {
            let c = match family {
                Family::Normal => corpus::normal_complexes(*seed, 1, *max_vertices, 1..=4),
                Family::Pseudomanifold => corpus::pseudomanifolds(*seed, 1, *max_vertices),
                Family::Flag => corpus::flag_complexes(*seed, 1, *max_vertices),
            }
            .remove(0);
            let name = match family {
                Family::Normal => "normal",
                Family::Pseudomanifold => "pseudomanifold",
                Family::Flag => "flag",
            };
            let s = Sidecar::plain(
                "random",
                serde_json::json!({"family": name, "seed": seed, "max_vertices": max_vertices}),
                &c,
            );
            (c, s, out)
        }
    };
    let text = emit_facet_list(&complex);
    match &out.out {
        None => print!("{text}"),
        Some(path) => {
            fs::write(path, &text).map_err(|e| io_failure(path, e))?;
            let side = sidecar_path(path);
            let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
            fs::write(&side, json + "\n").map_err(|e| io_failure(&side, e))?;
        }
    }
    Ok(0)
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn run_audit(args: &AuditArgs, budget: &NodeBudget) -> Result<u8, Failure> {
    let c = load(&args.file)?;
    let report = audit(&c, budget)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if !report.violated() {
        return Ok(0);
    }
    let cert = args.certificate.clone().unwrap_or_else(|| {
        let mut s = args.file.as_os_str().to_owned();
        s.push(".violation.json");
        PathBuf::from(s)
    });
    let json = serde_json::to_string_pretty(&report.violations).expect("violations serialize");
    fs::write(&cert, json + "\n").map_err(|e| io_failure(&cert, e))?;
    eprintln!("bound violated; counterexample written to {}", cert.display());
    Ok(EXIT_VIOLATION)
}
