use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use twistor_core::acs::{ank_reference, blocks, fundamental_form, hopf, vertex, Acs};
use twistor_core::cp3::{acs_to_cp3, cp3_to_acs};
use twistor_core::geometry::{e56, polar_contains};
use twistor_core::io::{format_complex, parse_cp3, sample_cloud, write_cloud, IoError, SampleSet, StructureDocument};
use twistor_core::nearly_kaehler::{is_ank, DEFAULT_ANK_TOL};
use twistor_core::nijenhuis::{is_integrable, max_norm, nijenhuis_norm, DEFAULT_INTEGRABILITY_TOL};
use twistor_core::report::{all_pass, render_json, render_text, run_checks};
use twistor_core::search::{maximize, minimize, SearchError, SearchReport, DEFAULT_MAX_ITERS};

const EXIT_FAIL: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "twistor", version, about = "Almost complex structures on su(2) + su(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity check and print one record per check.
    #[command(group(ArgGroup::new("format").args(["json", "text"])))]
    Verify {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        text: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Export a point cloud of tetrahedron coordinates as CSV.
    Sample {
        /// One of ank, integrable, random, polar, edge01.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe a structure given as a JSON document or a ℂP³ point.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "cp3"])))]
    Classify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Four comma-separated coordinates such as "1, 0, 0, -1" or "1+2i, i, 0, 1".
        #[arg(long, allow_hyphen_values = true)]
        cp3: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Search for extrema of the Nijenhuis norm.
    Optimize {
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Max,
    Min,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { json, text: _, seed } => verify(json, seed),
        Command::Sample { set, count, seed, out } => sample(&set, count, seed, out),
        Command::Classify { input, cp3, json } => classify(input, cp3, json),
        Command::Optimize {
            direction,
            restarts,
            seed,
            max_iters,
            json,
        } => optimize(direction, restarts, seed, max_iters, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn verify(json: bool, seed: u64) -> Result<u8, IoError> {
    let records = run_checks(seed)?;
    let rendered = if json {
        render_json(&records) + "\n"
    } else {
        render_text(&records)
    };
    io::stdout().write_all(rendered.as_bytes())?;
    Ok(if all_pass(&records) { 0 } else { EXIT_FAIL })
}

fn sample(set: &str, count: usize, seed: u64, out: Option<PathBuf>) -> Result<u8, IoError> {
    let set: SampleSet = set.parse()?;
    if count == 0 {
        return Err(IoError::Parse("--count must be at least 1".into()));
    }
    let rows = sample_cloud(set, count, seed)?;
    match out {
        Some(path) => write_cloud(&rows, BufWriter::new(File::create(path)?))?,
        None => write_cloud(&rows, io::stdout().lock())?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct BlocksView {
    a: [f64; 3],
    b: [f64; 9],
    c: [f64; 3],
}

#[derive(Serialize)]
struct Classification {
    in_z: bool,
    label: Option<String>,
    blocks: BlocksView,
    nijenhuis_norm: f64,
    integrable: bool,
    ank: bool,
    cp3: Vec<String>,
    tetra: [f64; 4],
    polar_e56: bool,
    fixture: Option<String>,
}

/// Name of the reference structure `acs` coincides with, if any.
fn fixture_name(acs: &Acs) -> Option<String> {
    let mut named = vec![("hopf".to_string(), hopf()), ("ank_reference".to_string(), ank_reference())];
    named.extend((0..4).map(|k| (format!("vertex{k}"), vertex(k))));
    named
        .into_iter()
        .find(|(_, f)| (f.matrix() - acs.matrix()).amax() < 1e-9)
        .map(|(name, _)| name)
}

#[derive(Serialize)]
struct Rejection {
    in_z: bool,
    error: String,
}

fn classify(input: Option<PathBuf>, cp3: Option<String>, json: bool) -> Result<u8, IoError> {
    let parsed: Result<(Acs, Option<String>), IoError> = match (input, cp3) {
        (Some(path), _) => {
            let doc = StructureDocument::from_json(&std::fs::read_to_string(path)?)?;
            doc.to_acs().map(|acs| (acs, doc.label))
        }
        (None, Some(text)) => {
            let point = parse_cp3(&text)?;
            cp3_to_acs(&point).map(|acs| (acs, None)).map_err(IoError::from)
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let (acs, label) = match parsed {
        Ok(v) => v,
        Err(IoError::Invalid(e)) => {
            let rejection = Rejection {
                in_z: false,
                error: e.to_string(),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&rejection)?);
            } else {
                println!("in Z: no ({})", rejection.error);
            }
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(e),
    };
    let b = blocks(&acs);
    let point = acs_to_cp3(&acs)?;
    let c = Classification {
        in_z: true,
        label,
        blocks: BlocksView {
            a: b.a_vec(),
            b: b.b_vec(),
            c: b.c_vec(),
        },
        nijenhuis_norm: nijenhuis_norm(&acs),
        integrable: is_integrable(&acs, DEFAULT_INTEGRABILITY_TOL),
        ank: is_ank(&acs, DEFAULT_ANK_TOL),
        cp3: point.coords().iter().map(|z| format_complex(*z)).collect(),
        tetra: point.tetra_coords().b,
        polar_e56: polar_contains(&e56(), &fundamental_form(&acs))?,
        fixture: fixture_name(&acs),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&c)?);
    } else {
        let mut s = String::from("in Z: yes\n");
        if let Some(l) = &c.label {
            s += &format!("label: {l}\n");
        }
        s += &format!("blocks: a = {:?}, b = {:?}, c = {:?}\n", c.blocks.a, c.blocks.b, c.blocks.c);
        s += &format!("nijenhuis norm: {} (maximum {})\n", c.nijenhuis_norm, max_norm());
        s += &format!("integrable: {}\nank: {}\n", c.integrable, c.ank);
        s += &format!("cp3: {point}\ntetra: {:?}\npolar to e5^e6: {}\n", c.tetra, c.polar_e56);
        if let Some(f) = &c.fixture {
            s += &format!("fixture: {f}\n");
        }
        print!("{s}");
    }
    Ok(0)
}

#[derive(Serialize)]
struct OptimizeView {
    direction: &'static str,
    best_value: f64,
    ratio: f64,
    iterations: usize,
    restarts: usize,
    converged: bool,
    matrix: Vec<f64>,
}

fn optimize(direction: DirectionArg, restarts: usize, seed: u64, max_iters: usize, json: bool) -> Result<u8, IoError> {
    let (name, result) = match direction {
        DirectionArg::Max => ("max", maximize(seed, restarts, max_iters)),
        DirectionArg::Min => ("min", minimize(seed, restarts, max_iters)),
    };
    let (report, code): (SearchReport, u8) = match result {
        Ok(r) => (r, 0),
        Err(SearchError::NoConvergence(r)) => (*r, EXIT_NO_CONVERGENCE),
        Err(e @ SearchError::NoRestarts) => return Err(IoError::Parse(e.to_string())),
    };
    let view = OptimizeView {
        direction: name,
        best_value: report.best_value,
        ratio: report.best_value / max_norm(),
        iterations: report.iterations,
        restarts: report.restarts,
        converged: report.converged,
        matrix: report.best_acs.to_row_major().to_vec(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&view)?);
    } else {
        println!("direction: {}", view.direction);
        println!("best value: {}", view.best_value);
        println!("ratio to maximum: {}", view.ratio);
        println!("iterations: {}", view.iterations);
        println!("restarts: {}", view.restarts);
        println!("converged: {}", view.converged);
        println!("matrix (row-major): {:?}", view.matrix);
    }
    if code == EXIT_NO_CONVERGENCE {
        eprintln!("no restart converged within {max_iters} iterations");
    }
    Ok(code)
}
