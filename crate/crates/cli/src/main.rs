use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use globalize_cli::catalog;
use globalize_cli::pipeline::{self, Input, PcaOptions};
use globalize_cli::report::RunReport;
use globalize_cli::schema::{self, InputError};
use globalize_core::fintop::{
    initial_topology, is_continuous, is_hausdorff, is_open_embedding, product_topology,
    quotient_topology, subspace_topology, FinTopology,
};

#[derive(Parser)]
#[command(
    name = "globalize",
    version,
    about = "Compute and verify globalizations of partial actions: finite monoids on sets, \
             topological monoids on finite spaces, and bialgebra coactions on algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ReportArgs {
    /// Write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed recorded in the report and threaded to randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify and globalize a partial action of a finite monoid on a finite set.
    SetAction {
        /// Input file; omit when using --fixture.
        file: Option<PathBuf>,
        /// Use a named fixture instead of a file.
        #[arg(long)]
        fixture: Option<String>,
        /// Certify the universal property against a global action file.
        #[arg(long)]
        check_gl2: Option<PathBuf>,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Verify a geometric partial module in finite Top and decide globalizability.
    TopAction {
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        /// Print the witness open to stderr on failure.
        #[arg(long)]
        explain: bool,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Verify a partial comodule algebra and compute its globalization.
    Pca {
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        /// Also build the enveloping coaction.
        #[arg(long)]
        envelope: bool,
        /// Compare the envelope with the globalization.
        #[arg(long)]
        compare: bool,
        /// Include structure matrices in the report.
        #[arg(long)]
        dump_matrices: bool,
        /// Ground field for parametrized fixtures (Q or Fp:<prime>).
        #[arg(long)]
        field: Option<String>,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Topology utilities.
    Top {
        #[command(subcommand)]
        cmd: TopCmd,
    },
    /// The fixture catalog.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum TopCmd {
    /// Topology utilities on explicit open-set files.
    Util {
        #[command(subcommand)]
        cmd: TopUtilCmd,
    },
}

#[derive(Subcommand)]
enum TopUtilCmd {
    /// Validate a topology file and echo its canonical form.
    Validate { file: PathBuf },
    /// Product topology; points are labeled "a|b".
    Product { left: PathBuf, right: PathBuf },
    /// Subspace topology on the listed points.
    Subspace {
        file: PathBuf,
        points: Vec<String>,
    },
    /// Quotient topology along a surjection given as "a>q0,b>q0,c>q1".
    Quotient {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Initial (coarsest) topology on named points from maps into targets,
    /// each given as --via <file>:"a>x,b>y".
    Initial {
        /// Carrier points of the new space.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        #[arg(long)]
        via: Vec<String>,
    },
    /// Whether the map "a>x,..." is continuous between two topology files.
    Continuous {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Whether the map is an open embedding.
    OpenEmbedding {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Whether the space is Hausdorff (equivalently, discrete).
    Hausdorff { file: PathBuf },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List fixture names with their pipelines.
    List,
    /// Print the canonical input bytes of a fixture.
    Show { name: String },
}

fn main() -> ExitCode {
    // Die quietly when a pager closes the pipe instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_input(
    file: &Option<PathBuf>,
    fixture: &Option<String>,
    expected: catalog::Kind,
) -> Result<Input, InputError> {
    match (file, fixture) {
        (Some(_), Some(_)) => Err(InputError::schema(
            "arguments",
            "pass either a file or --fixture, not both",
        )),
        (None, None) => Err(InputError::schema(
            "arguments",
            "an input file or --fixture is required",
        )),
        (Some(path), None) => {
            let bytes = std::fs::read_to_string(path).map_err(|e| InputError::Schema {
                location: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(Input::from_file(&path.display().to_string(), bytes))
        }
        (None, Some(name)) => {
            let (kind, bytes) = catalog::fixture(name)?;
            if kind != expected {
                return Err(InputError::schema(
                    "arguments",
                    format!(
                        "fixture {name:?} belongs to the {} pipeline",
                        kind.as_str()
                    ),
                ));
            }
            Ok(Input::from_fixture(name, bytes))
        }
    }
}

fn emit(report: &RunReport, out: &ReportArgs) -> Result<ExitCode, InputError> {
    if let Some(path) = &out.report {
        std::fs::write(path, report.to_json_bytes()).map_err(|e| InputError::Schema {
            location: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    match out.format {
        Format::Json => {
            let bytes = report.to_json_bytes();
            print!("{}", String::from_utf8(bytes).expect("reports are utf-8"));
        }
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn dispatch(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.cmd {
        Cmd::SetAction {
            file,
            fixture,
            check_gl2,
            out,
        } => {
            let input = load_input(&file, &fixture, catalog::Kind::SetAction)?;
            let gl2 = match &check_gl2 {
                None => None,
                Some(path) => {
                    let bytes =
                        std::fs::read_to_string(path).map_err(|e| InputError::Schema {
                            location: path.display().to_string(),
                            message: e.to_string(),
                        })?;
                    Some(Input::from_file(&path.display().to_string(), bytes))
                }
            };
            let report = pipeline::run_set_action(&input, gl2.as_ref(), out.seed)?;
            emit(&report, &out)
        }
        Cmd::TopAction {
            file,
            fixture,
            explain,
            out,
        } => {
            let input = load_input(&file, &fixture, catalog::Kind::TopAction)?;
            let report = pipeline::run_top_action(&input, out.seed)?;
            if explain {
                for v in &report.verdicts {
                    if let (false, Some(w)) = (v.pass, &v.witness) {
                        eprintln!("{}: {w}", v.name);
                    }
                }
            }
            emit(&report, &out)
        }
        Cmd::Pca {
            file,
            fixture,
            envelope,
            compare,
            dump_matrices,
            field,
            out,
        } => {
            if let Some(f) = &field {
                // Fixtures are built over Q; other fields come through files.
                let parsed = schema::parse_field(f)?;
                if fixture.is_some() && parsed != globalize_core::exact::Field::Q {
                    return Err(InputError::schema(
                        "field",
                        "catalog fixtures are defined over Q; supply a file for other fields",
                    ));
                }
            }
            let input = load_input(&file, &fixture, catalog::Kind::Pca)?;
            let opts = PcaOptions {
                envelope,
                compare,
                dump_matrices,
            };
            let report = pipeline::run_pca(&input, &opts, out.seed)?;
            emit(&report, &out)
        }
        Cmd::Top {
            cmd: TopCmd::Util { cmd },
        } => top_util(cmd),
        Cmd::Fixtures { cmd } => match cmd {
            FixturesCmd::List => {
                for (name, kind, desc) in catalog::list() {
                    println!("{:<16} {:<12} {desc}", name, kind.as_str());
                }
                Ok(ExitCode::SUCCESS)
            }
            FixturesCmd::Show { name } => {
                let (_, bytes) = catalog::fixture(&name)?;
                print!("{bytes}");
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn read_topology(path: &PathBuf) -> Result<(Vec<String>, FinTopology), InputError> {
    let bytes = std::fs::read_to_string(path).map_err(|e| InputError::Schema {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    schema::parse_topology(&bytes)
}

fn topology_json(points: &[String], t: &FinTopology) -> serde_json::Value {
    let opens: Vec<Vec<&str>> = t
        .opens()
        .iter()
        .map(|&u| {
            (0..t.carrier_size())
                .filter(|&i| u & (1 << i) != 0)
                .map(|i| points[i].as_str())
                .collect()
        })
        .collect();
    json!({"schema": 1, "points": points, "opens": opens})
}

/// Parses "a>x,b>y" into a map from source labels to target labels.
fn parse_assignments(s: &str) -> Result<BTreeMap<String, String>, InputError> {
    let mut out = BTreeMap::new();
    for part in s.split(',') {
        let (from, to) = part.split_once('>').ok_or_else(|| {
            InputError::schema("map", format!("assignment {part:?} is not \"from>to\""))
        })?;
        out.insert(from.trim().to_string(), to.trim().to_string());
    }
    Ok(out)
}

fn resolve_map(
    assignments: &BTreeMap<String, String>,
    src_points: &[String],
    dst_points: &[String],
) -> Result<Vec<usize>, InputError> {
    src_points
        .iter()
        .map(|p| {
            let target = assignments.get(p).ok_or_else(|| {
                InputError::schema("map", format!("point {p:?} has no assignment"))
            })?;
            dst_points
                .iter()
                .position(|q| q == target)
                .ok_or_else(|| InputError::schema("map", format!("unknown target {target:?}")))
        })
        .collect()
}

fn print_value(v: serde_json::Value) -> Result<ExitCode, InputError> {
    println!(
        "{}",
        serde_json::to_string_pretty(&v).expect("value serializes")
    );
    Ok(ExitCode::SUCCESS)
}

fn top_util(cmd: TopUtilCmd) -> Result<ExitCode, InputError> {
    match cmd {
        TopUtilCmd::Validate { file } => {
            let (points, t) = read_topology(&file)?;
            print_value(topology_json(&points, &t))
        }
        TopUtilCmd::Product { left, right } => {
            let (p1, t1) = read_topology(&left)?;
            let (p2, t2) = read_topology(&right)?;
            let prod = product_topology(&t1, &t2);
            let points: Vec<String> = p1
                .iter()
                .flat_map(|a| p2.iter().map(move |b| format!("{a}|{b}")))
                .collect();
            print_value(topology_json(&points, &prod))
        }
        TopUtilCmd::Subspace { file, points } => {
            let (all, t) = read_topology(&file)?;
            let subset: Vec<usize> = points
                .iter()
                .map(|p| {
                    all.iter().position(|q| q == p).ok_or_else(|| {
                        InputError::schema("points", format!("unknown point {p:?}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let sub = subspace_topology(&t, &subset);
            print_value(topology_json(&points, &sub))
        }
        TopUtilCmd::Quotient { file, map } => {
            let (points, t) = read_topology(&file)?;
            let assignments = parse_assignments(&map)?;
            let mut targets: Vec<String> = Vec::new();
            for p in &points {
                let target = assignments.get(p).ok_or_else(|| {
                    InputError::schema("map", format!("point {p:?} has no assignment"))
                })?;
                if !targets.contains(target) {
                    targets.push(target.clone());
                }
            }
            let q: Vec<usize> = points
                .iter()
                .map(|p| targets.iter().position(|t| t == &assignments[p]).unwrap())
                .collect();
            let quot = quotient_topology(&t, &q, targets.len())
                .map_err(|e| InputError::construction("quotient", e))?;
            print_value(topology_json(&targets, &quot))
        }
        TopUtilCmd::Initial { points, via } => {
            let mut targets = Vec::new();
            for spec in &via {
                let (path, map) = spec.split_once(':').ok_or_else(|| {
                    InputError::schema("via", format!("{spec:?} is not \"<file>:<map>\""))
                })?;
                let (tp, tt) = read_topology(&PathBuf::from(path))?;
                let assignments = parse_assignments(map)?;
                let f = resolve_map(&assignments, &points, &tp)?;
                targets.push((tt, f));
            }
            let maps: Vec<(&FinTopology, &[usize])> = targets
                .iter()
                .map(|(t, f)| (t, f.as_slice()))
                .collect();
            let init = initial_topology(points.len(), &maps);
            print_value(topology_json(&points, &init))
        }
        TopUtilCmd::Continuous { src, dst, map } => {
            let (sp, st) = read_topology(&src)?;
            let (dp, dt) = read_topology(&dst)?;
            let f = resolve_map(&parse_assignments(&map)?, &sp, &dp)?;
            print_value(json!({"continuous": is_continuous(&f, &st, &dt)}))
        }
        TopUtilCmd::OpenEmbedding { src, dst, map } => {
            let (sp, st) = read_topology(&src)?;
            let (dp, dt) = read_topology(&dst)?;
            let f = resolve_map(&parse_assignments(&map)?, &sp, &dp)?;
            print_value(json!({"open_embedding": is_open_embedding(&f, &st, &dt)}))
        }
        TopUtilCmd::Hausdorff { file } => {
            let (_, t) = read_topology(&file)?;
            print_value(json!({"hausdorff": is_hausdorff(&t)}))
        }
    }
}
