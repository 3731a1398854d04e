//! `burge`: command-line front end for the Burge correspondence.
//!
//! Inputs are JSON read from a file or stdin; outputs are JSON (or DOT for
//! crystals) on stdout. Exit status: 0 success, 1 verification failure,
//! 2 malformed input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use burge_core::burge::{decode, encode, shape_of_graph, standardize_burge_array};
use burge_core::crystal::{
    burge_arrays_of_shape, generate_crystal, to_dot, BurgeCrystal, CrystalGraph, TableauCrystal,
};
use burge_core::pvfree::pv_report;
use burge_core::verify::{run_suites, suite_names, Mutation, VerifyConfig};
use burge_core::{BurgeArray, Partition, SimpleGraph, Tableau};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "burge",
    version,
    about = "Burge correspondence between graphs and threshold tableaux"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Burge tableau of a graph or Burge array.
    Encode(GraphOrArray),
    /// Burge array (or graph with --n) of a threshold-shaped tableau.
    Decode {
        /// Tableau JSON file; stdin when omitted or `-`.
        #[arg(long)]
        tableau: Option<PathBuf>,
        /// Emit the graph on this many vertices instead of the array.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Shape of the Burge tableau.
    Shape(GraphOrArray),
    /// Peak/valley report.
    Pvcheck(GraphOrArray),
    /// Standardize a Burge array or a tableau.
    Standardize {
        #[arg(long, conflicts_with = "tableau")]
        array: Option<PathBuf>,
        #[arg(long)]
        tableau: Option<PathBuf>,
        /// Comma-separated strictly increasing alphabet; defaults to 1..N.
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<usize>>,
    },
    /// Generate a crystal from all objects of a shape.
    Crystal {
        #[arg(long, value_enum, default_value = "arrays")]
        objects: Objects,
        /// Comma-separated partition, e.g. 2,1,1.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long)]
        max_letter: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Run verification suites (`all` or a suite name; `list` to list them).
    Verify {
        #[arg(default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        /// Per-suite timings on stderr.
        #[arg(long)]
        timings: bool,
        /// Inject a known defect; the affected suite must fail.
        #[arg(long, value_enum, hide = true)]
        mutation: Option<MutationArg>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct GraphOrArray {
    /// Graph JSON file (`-` for stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Burge array JSON file (`-` for stdin).
    #[arg(long)]
    array: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objects {
    Arrays,
    Tableaux,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    IgnorePeaks,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<burge_core::Error> for Failure {
    fn from(e: burge_core::Error) -> Self {
        Failure::input(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(path: Option<&PathBuf>) -> CliResult<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::input(format!("malformed {what}: {e}")))
}

/// Reads a graph or an array. Without a flag the JSON itself decides: an
/// object with `n` is a graph, one with `top` is an array.
fn read_graph_or_array(src: &GraphOrArray) -> CliResult<(BurgeArray, Option<SimpleGraph>)> {
    if let Some(p) = &src.array {
        return Ok((parse(&read_input(Some(p))?, "Burge array")?, None));
    }
    let text = read_input(src.graph.as_ref())?;
    let is_array = src.graph.is_none()
        && serde_json::from_str::<serde_json::Value>(&text)
            .map(|v| v.get("top").is_some())
            .unwrap_or(false);
    if is_array {
        Ok((parse(&text, "Burge array")?, None))
    } else {
        let g: SimpleGraph = parse(&text, "graph")?;
        Ok((g.to_burge_array(), Some(g)))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn crystal_output<T: Serialize + std::fmt::Display>(g: &CrystalGraph<T>, format: Format) -> String {
    match format {
        Format::Dot => to_dot(g),
        Format::Json => json(g),
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Encode(src) => {
            let (array, _) = read_graph_or_array(&src)?;
            Ok(json(&encode(&array)))
        }
        Command::Decode { tableau, n } => {
            let t: Tableau = parse(&read_input(tableau.as_ref())?, "tableau")?;
            let array = decode(&t)?;
            match n {
                Some(n) => Ok(json(&SimpleGraph::from_burge_array(&array, n)?)),
                None => Ok(json(&array)),
            }
        }
        Command::Shape(src) => {
            let (array, graph) = read_graph_or_array(&src)?;
            let shape = match graph {
                Some(g) => shape_of_graph(&g),
                None => encode(&array).shape(),
            };
            Ok(json(&shape))
        }
        Command::Pvcheck(src) => {
            let (array, _) = read_graph_or_array(&src)?;
            Ok(json(&pv_report(&array)))
        }
        Command::Standardize {
            array,
            tableau,
            alphabet,
        } => {
            if let Some(p) = tableau {
                let t: Tableau = parse(&read_input(Some(&p))?, "tableau")?;
                let alphabet = alphabet.unwrap_or_else(|| (1..=t.num_cells()).collect());
                Ok(json(&t.standardize(&alphabet)?))
            } else {
                let a: BurgeArray = parse(&read_input(array.as_ref())?, "Burge array")?;
                let alphabet = alphabet.unwrap_or_else(|| (1..=2 * a.len()).collect());
                Ok(json(&standardize_burge_array(&a, &alphabet)?))
            }
        }
        Command::Crystal {
            objects,
            shape,
            max_letter,
            format,
        } => {
            let shape = Partition::new(shape)?;
            if max_letter == 0 {
                return Err(Failure::input("max-letter must be positive"));
            }
            match objects {
                Objects::Tableaux => {
                    let seeds = Tableau::all_of_shape(&shape, max_letter);
                    if seeds.is_empty() {
                        return Err(Failure::input(format!(
                            "no tableaux of shape {shape} with entries at most {max_letter}"
                        )));
                    }
                    let g = generate_crystal(&TableauCrystal { max_letter }, seeds);
                    Ok(crystal_output(&g, format))
                }
                Objects::Arrays => {
                    if !shape.is_hook() {
                        return Err(Failure::input(format!(
                            "shape {shape} is not a hook; Burge crystal operators need PV-free arrays"
                        )));
                    }
                    let seeds = burge_arrays_of_shape(&shape, max_letter)?;
                    if seeds.is_empty() {
                        return Err(Failure::input(format!(
                            "no Burge arrays of shape {shape} with entries at most {max_letter}"
                        )));
                    }
                    let g = generate_crystal(&BurgeCrystal { max_letter }, seeds);
                    Ok(crystal_output(&g, format))
                }
            }
        }
        Command::Verify {
            suite,
            max_n,
            json: as_json,
            timings,
            mutation,
        } => {
            if suite.iter().any(|s| s == "list") {
                return Ok(suite_names().join("\n") + "\n");
            }
            let names: Vec<&str> = suite
                .iter()
                .map(String::as_str)
                .filter(|s| *s != "all")
                .collect();
            let cfg = VerifyConfig {
                mutation: mutation.map(|MutationArg::IgnorePeaks| Mutation::IgnorePeaks),
                ..VerifyConfig::with_max_n(max_n)
            };
            let summary = run_suites(&names, &cfg)?;
            if timings {
                for s in &summary.suites {
                    eprintln!("{:<24} {:>10.3} ms", s.name, s.elapsed.as_secs_f64() * 1e3);
                }
            }
            let out = if as_json {
                json(&summary)
            } else {
                let mut out = String::new();
                for s in &summary.suites {
                    let verdict = if s.passed { "PASS" } else { "FAIL" };
                    out += &format!(
                        "{verdict} {:<24} checked={} failed={}\n",
                        s.name, s.checked, s.failed
                    );
                    for f in &s.failures {
                        out += &format!("    {f}\n");
                    }
                }
                out
            };
            if summary.passed {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure {
                    code: 1,
                    message: "verification failed".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
