//! Command-line interface: argument definitions, dispatch, and the exit
//! code contract (0 success/true, 1 negative result, 2 usage or parse
//! error, 3 search cap exceeded).

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use shifteq_core::corners::{corner_maps, morita_verdict};
use shifteq_core::ideals::{
    enumerate_saturated_hereditary, enumerate_saturated_hereditary_brute, outsplit_toeplitz,
};
use shifteq_core::sse::{find_elementary, inflate_graph, rect_graph};
use shifteq_core::{ElementaryPair, Graph, SearchConfig, SearchOutcome, SseChain};
use thiserror::Error;

use crate::formats::{
    read_chain, read_esse, read_graph, read_matrix, write_graph_string, write_matrix_string,
    FormatError,
};
use crate::report::{
    analysis_report, chain_report, corner_report, lattice_report, verdict_report, verify_report,
};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Exact arithmetic for strong shift equivalence and graph-algebra
/// invariants.
#[derive(Debug, Parser)]
#[command(name = "shifteq", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two matrices, printing the product in .mat form.
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare trace powers of two square matrices up to a cutoff.
    Traces {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Largest power to compare (default: max matrix size).
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify an elementary equivalence witness: RS=A and SR=B.
    VerifyEsse {
        /// Witness manifest (.esse) naming A, B, R, S.
        #[arg(long, conflicts_with_all = ["a", "b", "r", "s"])]
        esse: Option<PathBuf>,
        #[arg(long, required_unless_present = "esse")]
        a: Option<PathBuf>,
        #[arg(long, required_unless_present = "esse")]
        b: Option<PathBuf>,
        #[arg(long, required_unless_present = "esse")]
        r: Option<PathBuf>,
        #[arg(long, required_unless_present = "esse")]
        s: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a witness with entries bounded by --bound.
    FindEsse {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Inclusive entry bound for R and S.
        #[arg(long)]
        bound: u64,
        /// Search node cap.
        #[arg(long, default_value_t = SearchConfig::DEFAULT_MAX_NODES)]
        max_nodes: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a chain of elementary equivalences from a .chain file.
    Chain {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the bipartite inflation graph of a witness pair (R, S).
    Inflate {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        s: PathBuf,
        /// Comma-separated row vertex names (default u1,u2,...).
        #[arg(long)]
        row_names: Option<String>,
        /// Comma-separated column vertex names (default w1,w2,...).
        #[arg(long)]
        col_names: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the bipartite graph of a single rectangular matrix.
    Rect {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        row_names: Option<String>,
        #[arg(long)]
        col_names: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the vertex matrix of a graph in .mat form.
    Vmatrix {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the canonical graph of a square matrix in .graph form.
    Frommatrix {
        matrix: PathBuf,
        /// Comma-separated vertex names (default v1,v2,...).
        #[arg(long)]
        names: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report sinks, sources, first returns, Condition (K), regularity.
    Analyze {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the proper saturated hereditary vertex subsets.
    Ideals {
        graph: PathBuf,
        /// Use the exhaustive subset scan instead of the fast enumeration.
        #[arg(long)]
        brute_force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the Toeplitz outsplit graph (sink twin per vertex).
    Toeplitz {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the corner generator tables of a witness pair (R, S).
    Corners {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        row_names: Option<String>,
        #[arg(long)]
        col_names: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the Morita theorem hypotheses for two graphs and a witness.
    Verdict {
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn output(&self) -> Option<&PathBuf> {
        match self {
            Command::Mul { output, .. }
            | Command::Traces { output, .. }
            | Command::VerifyEsse { output, .. }
            | Command::FindEsse { output, .. }
            | Command::Chain { output, .. }
            | Command::Inflate { output, .. }
            | Command::Rect { output, .. }
            | Command::Vmatrix { output, .. }
            | Command::Frommatrix { output, .. }
            | Command::Analyze { output, .. }
            | Command::Ideals { output, .. }
            | Command::Toeplitz { output, .. }
            | Command::Corners { output, .. }
            | Command::Verdict { output, .. } => output.as_ref(),
        }
    }
}

/// Errors that abort a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Op(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

fn op<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Op(err.to_string())
}

fn names_arg(given: Option<&String>, prefix: &str, count: usize) -> Vec<String> {
    match given {
        Some(list) => list.split(',').map(str::to_string).collect(),
        None => (1..=count).map(|i| format!("{prefix}{i}")).collect(),
    }
}

/// Runs one command, returning the report text and the exit code.
pub fn execute(command: &Command) -> Result<(String, i32), CliError> {
    match command {
        Command::Mul { a, b, .. } => {
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            let product = a.multiply(&b).map_err(op)?;
            Ok((write_matrix_string(&product), EXIT_SUCCESS))
        }
        Command::Traces { a, b, kmax, .. } => {
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            if !a.is_square() {
                return Err(CliError::Op(format!(
                    "A must be square, found {}x{}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !b.is_square() {
                return Err(CliError::Op(format!(
                    "B must be square, found {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
            let k = kmax.unwrap_or_else(|| a.rows().max(b.rows()));
            let ta = a.trace_powers(k).map_err(op)?;
            let tb = b.trace_powers(k).map_err(op)?;
            let agree = ta == tb;
            let join = |t: &[u64]| {
                t.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let report = format!("A: {}\nB: {}\nagree={agree}\n", join(&ta), join(&tb));
            Ok((report, if agree { EXIT_SUCCESS } else { EXIT_NEGATIVE }))
        }
        Command::VerifyEsse { esse, a, b, r, s, .. } => {
            let (a, b, r, s) = match esse {
                Some(manifest) => read_esse(manifest)?,
                None => (
                    read_matrix(a.as_ref().expect("required by clap"))?,
                    read_matrix(b.as_ref().expect("required by clap"))?,
                    read_matrix(r.as_ref().expect("required by clap"))?,
                    read_matrix(s.as_ref().expect("required by clap"))?,
                ),
            };
            let pair = ElementaryPair::new(a, b, r, s).map_err(op)?;
            let (report, holds) = verify_report(&pair).map_err(op)?;
            Ok((report, if holds { EXIT_SUCCESS } else { EXIT_NEGATIVE }))
        }
        Command::FindEsse {
            a,
            b,
            bound,
            max_nodes,
            ..
        } => {
            let a = read_matrix(a)?;
            let b = read_matrix(b)?;
            let config = SearchConfig {
                bound: *bound,
                max_nodes: *max_nodes,
            };
            match find_elementary(&a, &b, &config).map_err(op)? {
                SearchOutcome::Found(pair) => {
                    let report = format!(
                        "witness found with entries <= {bound}\nR:\n{}S:\n{}",
                        write_matrix_string(pair.r()),
                        write_matrix_string(pair.s())
                    );
                    Ok((report, EXIT_SUCCESS))
                }
                SearchOutcome::Exhausted => Ok((
                    format!("no witness with entries <= {bound}\n"),
                    EXIT_NEGATIVE,
                )),
                SearchOutcome::CapExceeded { nodes } => Ok((
                    format!("search cap exceeded after {nodes} nodes\n"),
                    EXIT_CAP,
                )),
            }
        }
        Command::Chain { file, .. } => {
            let (matrices, witnesses) = read_chain(file)?;
            let chain = SseChain::new(matrices, witnesses).map_err(op)?;
            let (report, holds) = chain_report(&chain).map_err(op)?;
            Ok((report, if holds { EXIT_SUCCESS } else { EXIT_NEGATIVE }))
        }
        Command::Inflate {
            r,
            s,
            row_names,
            col_names,
            ..
        } => {
            let r = read_matrix(r)?;
            let s = read_matrix(s)?;
            let rows = names_arg(row_names.as_ref(), "u", r.rows());
            let cols = names_arg(col_names.as_ref(), "w", r.cols());
            let g = inflate_graph(&r, &s, &rows, &cols).map_err(op)?;
            Ok((write_graph_string(&g), EXIT_SUCCESS))
        }
        Command::Rect {
            r,
            row_names,
            col_names,
            ..
        } => {
            let r = read_matrix(r)?;
            let rows = names_arg(row_names.as_ref(), "u", r.rows());
            let cols = names_arg(col_names.as_ref(), "w", r.cols());
            let g = rect_graph(&r, &rows, &cols).map_err(op)?;
            Ok((write_graph_string(&g), EXIT_SUCCESS))
        }
        Command::Vmatrix { graph, .. } => {
            let g = read_graph(graph)?;
            let m = g.vertex_matrix().map_err(op)?;
            Ok((write_matrix_string(&m), EXIT_SUCCESS))
        }
        Command::Frommatrix { matrix, names, .. } => {
            let m = read_matrix(matrix)?;
            let explicit = names
                .as_ref()
                .map(|list| list.split(',').map(str::to_string).collect::<Vec<_>>());
            let g = Graph::from_matrix(&m, explicit.as_deref()).map_err(op)?;
            Ok((write_graph_string(&g), EXIT_SUCCESS))
        }
        Command::Analyze { graph, .. } => {
            let g = read_graph(graph)?;
            Ok((analysis_report(&g), EXIT_SUCCESS))
        }
        Command::Ideals {
            graph, brute_force, ..
        } => {
            let g = read_graph(graph)?;
            let lattice = if *brute_force {
                enumerate_saturated_hereditary_brute(&g).map_err(op)?
            } else {
                enumerate_saturated_hereditary(&g)
            };
            Ok((lattice_report(&g, &lattice), EXIT_SUCCESS))
        }
        Command::Toeplitz { graph, .. } => {
            let g = read_graph(graph)?;
            let split = outsplit_toeplitz(&g).map_err(op)?;
            Ok((write_graph_string(&split), EXIT_SUCCESS))
        }
        Command::Corners {
            r,
            s,
            row_names,
            col_names,
            ..
        } => {
            let r = read_matrix(r)?;
            let s = read_matrix(s)?;
            let rows = names_arg(row_names.as_ref(), "u", r.rows());
            let cols = names_arg(col_names.as_ref(), "w", r.cols());
            let deco = corner_maps(&r, &s, &rows, &cols).map_err(op)?;
            Ok((corner_report(&deco), EXIT_SUCCESS))
        }
        Command::Verdict { e, f, r, s, .. } => {
            let e = read_graph(e)?;
            let f = read_graph(f)?;
            let r = read_matrix(r)?;
            let s = read_matrix(s)?;
            let verdict = morita_verdict(&e, &f, &r, &s).map_err(op)?;
            let code = if verdict.applicable {
                EXIT_SUCCESS
            } else {
                EXIT_NEGATIVE
            };
            Ok((verdict_report(&verdict), code))
        }
    }
}

/// Executes the parsed CLI, writing the report to `--output` or standard
/// output and any error to standard error; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok((report, code)) => {
            if let Some(path) = cli.command.output() {
                if let Err(source) = fs::write(path, &report) {
                    eprintln!("error: cannot write {}: {source}", path.display());
                    return EXIT_USAGE;
                }
            } else {
                print!("{report}");
            }
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}
