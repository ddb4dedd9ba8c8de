//! Command-line surface. Machine output (documents, reports, CSV) goes to
//! standard output or `--out`; human summaries go to standard error, so
//! subcommands compose through pipes.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict (failed verification, invalid certificate), 2 for usage errors
//! and malformed input.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::constructions::{
    self, Construction, ConstructionParams, DEFAULT_MIXED_EDGE_READING,
};
use crate::document;
use crate::graph::{EdgeColoring, MultipartiteGraph};
use crate::oracle::{self, OracleOptions};
use crate::verifier::{self, DisjointPathCertificate};
use crate::bounds;

#[derive(Debug, Parser)]
#[command(
    name = "rck",
    about = "Two-edge-colorings of complete multipartite graphs and an exact rainbow k-connectivity verifier",
    version
)]
pub struct Cli {
    /// Worker threads for pair-parallel verification (default: all cores).
    /// Output is identical for any thread count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// side^2 equal parts (requires --ell as the side and --r).
    Square,
    /// Any number of equal parts (requires --ell and --r).
    General,
    /// Equal parts plus a smaller remainder part (requires --ell, --r, --p).
    Remainder,
    /// Spanning decomposition of the complete graph (requires --n and --k).
    Complete,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a colored graph document.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Grid side (square family) or number of main parts.
        #[arg(long)]
        ell: Option<u32>,
        /// Part size.
        #[arg(long)]
        r: Option<u32>,
        /// Remainder part size.
        #[arg(long)]
        p: Option<u32>,
        /// Number of vertices (complete family).
        #[arg(long)]
        n: Option<u32>,
        /// Target connectivity (complete family).
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify that a colored document has k internally disjoint rainbow
    /// paths between every vertex pair. Exit 0 iff it does.
    Verify {
        /// Input document path, or '-' for standard input.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Include one certificate per pair in the report.
        #[arg(long)]
        certificates: bool,
        /// Include per-case minima (requires uniform part sizes).
        #[arg(long = "per-case")]
        per_case: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively compute the exact rainbow k-connectivity of a small
    /// graph document.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Largest palette to try (default: the edge count).
        #[arg(long = "max-colors")]
        max_colors: Option<u32>,
        /// Enumeration budget in colorings.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Evaluate the threshold table over a range of k.
    Bounds {
        #[arg(long = "k-min")]
        k_min: u64,
        #[arg(long = "k-max")]
        k_max: u64,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a document in DOT format.
    Export {
        #[arg(long)]
        graph: PathBuf,
        /// Select DOT output (the only format).
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check certificates against a graph document. Exit 0 iff all pass.
    CheckCert {
        #[arg(long)]
        graph: PathBuf,
        /// A verification report or any JSON object with a `certificates`
        /// array.
        #[arg(long)]
        cert: PathBuf,
    },
}

/// Any JSON carrying a certificates array, including verification reports.
#[derive(Deserialize)]
struct CertificateFile {
    certificates: Vec<DisjointPathCertificate>,
}

pub fn run(cli: Cli) -> ExitCode {
    if let Some(threads) = cli.threads {
        // Ignore the error when a global pool already exists (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Construct {
            family,
            ell,
            r,
            p,
            n,
            k,
            out,
        } => {
            let construction = build_family(family, ell, r, p, n, k)?;
            let text = document::encode(&construction.graph, Some(&construction.coloring));
            write_output(out.as_deref(), &text)?;
            eprintln!(
                "constructed: vertices={} edges={} colors={}",
                construction.graph.vertex_count(),
                construction.graph.edge_count(),
                construction.coloring.color_count()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            k,
            certificates,
            per_case,
            out,
        } => {
            let (g, coloring) = read_document(&graph)?;
            let coloring = coloring.ok_or("verification requires a colored document")?;
            let params = if per_case {
                Some(
                    ConstructionParams::from_spec(g.spec())
                        .map_err(|e| format!("--per-case needs uniform parts: {e}"))?,
                )
            } else {
                None
            };
            let mut report = verifier::verify_rck(g.graph(), &coloring, k, certificates, params.as_ref())
                .map_err(|e| e.to_string())?;
            report.metadata.insert(
                "mixed_edge_reading".to_string(),
                DEFAULT_MIXED_EDGE_READING.name().to_string(),
            );
            write_output(out.as_deref(), &report.to_json())?;
            eprintln!(
                "verify: k={} global_min={} verdict={}",
                k,
                report
                    .global_min
                    .map_or_else(|| "none".to_string(), |m| m.to_string()),
                report.verdict
            );
            Ok(if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle {
            graph,
            k,
            max_colors,
            budget,
        } => {
            let (g, _) = read_document(&graph)?;
            let mut opts = OracleOptions::new(
                max_colors.unwrap_or_else(|| g.edge_count().max(1) as u32),
            );
            if let Some(budget) = budget {
                opts.budget = budget;
            }
            let result = oracle::exact_rck(g.graph(), k, &opts).map_err(|e| e.to_string())?;
            let text = serde_json::to_string(&result.to_document())
                .expect("oracle document serialization cannot fail");
            write_output(None, &text)?;
            eprintln!(
                "oracle: k={} colors={} colorings_examined={}",
                k, result.colors, result.colorings_examined
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds {
            k_min,
            k_max,
            csv,
            out,
        } => {
            let table = bounds::bounds_table(k_min, k_max).map_err(|e| e.to_string())?;
            let text = if csv {
                table.to_csv()
            } else {
                serde_json::to_string(&table).expect("table serialization cannot fail")
            };
            write_output(out.as_deref(), text.trim_end_matches('\n'))?;
            match table.crossover {
                Some(k) => eprintln!("crossover at k={k}"),
                None => eprintln!("no crossover in range"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { graph, dot, out } => {
            if !dot {
                return Err("select an output format with --dot".to_string());
            }
            let (g, coloring) = read_document(&graph)?;
            let text = document::to_dot(&g, coloring.as_ref());
            write_output(out.as_deref(), text.trim_end_matches('\n'))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCert { graph, cert } => {
            let (g, coloring) = read_document(&graph)?;
            let coloring = coloring.ok_or("certificate checking requires a colored document")?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| format!("cannot read {}: {e}", cert.display()))?;
            let file: CertificateFile = serde_json::from_str(&text)
                .map_err(|e| format!("invalid certificate JSON: {e}"))?;
            let mut all_ok = true;
            for (i, certificate) in file.certificates.iter().enumerate() {
                if let Err(violation) =
                    verifier::check_certificate_detailed(g.graph(), &coloring, certificate)
                {
                    all_ok = false;
                    eprintln!("certificate {i}: {violation}");
                }
            }
            eprintln!(
                "check-cert: {} certificates, {}",
                file.certificates.len(),
                if all_ok { "all valid" } else { "INVALID" }
            );
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn build_family(
    family: Family,
    ell: Option<u32>,
    r: Option<u32>,
    p: Option<u32>,
    n: Option<u32>,
    k: Option<u32>,
) -> Result<Construction, String> {
    let need = |value: Option<u32>, flag: &str| {
        value.ok_or_else(|| format!("--{flag} is required for this family"))
    };
    let result = match family {
        Family::Square => constructions::color_square_multipartite(need(ell, "ell")?, need(r, "r")?),
        Family::General => constructions::color_general_multipartite(need(ell, "ell")?, need(r, "r")?),
        Family::Remainder => constructions::color_with_remainder_part(
            need(ell, "ell")?,
            need(r, "r")?,
            need(p, "p")?,
        ),
        Family::Complete => constructions::color_complete(need(n, "n")?, need(k, "k")?),
    };
    result.map_err(|e| e.to_string())
}

fn read_document(path: &Path) -> Result<(MultipartiteGraph, Option<EdgeColoring>), String> {
    let text = if path.as_os_str() == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        buffer
    } else {
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
    };
    document::decode(&text).map_err(|e| e.to_string())
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
