use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelmap_core::report::{
    classify_group, dihedral_table, list_maps, verify_group, write_dihedral_csv, write_maps_csv,
    write_solution_csv, write_verify_csv, VerifyOptions,
};
use abelmap_core::ybe::{map_solution, MapSolution, SolutionRecord};
use abelmap_core::{build_group, enumerate_abelian_maps, Error};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "abelmap", version, about = "Abelian maps, regular subgroups and Yang-Baxter solutions")]
struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build N_ψ and N′_ψ for every abelian map, deduplicate and type them.
    Classify { spec: String },
    /// Dihedral counts against the closed formulas. Exits 1 on any mismatch.
    DihedralTable {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Run every invariant family. Exits 1 if one fails.
    Verify {
        spec: String,
        /// Also compare with the exhaustive search (order at most 8).
        #[arg(long)]
        oracle: bool,
    },
    /// Export one of the four Yang-Baxter solutions of an abelian map.
    Ybe {
        spec: String,
        /// Index into the `maps` listing.
        #[arg(long = "map", value_name = "K")]
        map: usize,
        #[arg(long, default_value = "R1", value_parser = parse_variant)]
        variant: MapSolution,
    },
    /// List the abelian maps of a group.
    Maps { spec: String },
}

fn parse_variant(s: &str) -> Result<MapSolution, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct YbeExport {
    group: String,
    map: usize,
    description: String,
    variant: String,
    #[serde(flatten)]
    solution: SolutionRecord,
}

/// A run that finished but whose checks did not all hold.
struct Failed(String);

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(mut out: impl Write, value: &impl Serialize) -> Result<(), Error> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Option<Failed>, Error> {
    let out = output(&cli.out)?;
    match &cli.command {
        Command::Classify { spec } => {
            let report = classify_group(&build_group(spec)?)?.report();
            if cli.csv {
                report.write_csv(out)?;
            } else {
                write_json(out, &report)?;
            }
            Ok(None)
        }
        Command::DihedralTable { max_n } => {
            let rows = dihedral_table(*max_n)?;
            if cli.csv {
                write_dihedral_csv(&rows, out)?;
            } else {
                write_json(out, &rows)?;
            }
            let bad: Vec<String> = rows
                .iter()
                .filter(|r| !r.matches())
                .map(|r| format!("n={}: {}", r.n, r.mismatches().join(", ")))
                .collect();
            Ok((!bad.is_empty()).then(|| Failed(format!("formula mismatch at {}", bad.join("; ")))))
        }
        Command::Verify { spec, oracle } => {
            let report = verify_group(&build_group(spec)?, VerifyOptions { oracle: *oracle })?;
            if cli.csv {
                write_verify_csv(&report, out)?;
            } else {
                write_json(out, &report)?;
            }
            let bad: Vec<&str> = report.families.iter().filter(|f| !f.passed).map(|f| f.name).collect();
            Ok((!bad.is_empty()).then(|| Failed(format!("failing families: {}", bad.join(", ")))))
        }
        Command::Ybe { spec, map, variant } => {
            let maps = enumerate_abelian_maps(&build_group(spec)?)?;
            let psi = maps.get(*map).ok_or_else(|| {
                Error::OutOfRange(format!("map {map} out of range, {spec} has {} abelian maps", maps.len()))
            })?;
            let solution = map_solution(psi, *variant)?;
            if cli.csv {
                write_solution_csv(&solution, out)?;
            } else {
                let export = YbeExport {
                    group: spec.clone(),
                    map: *map,
                    description: psi.describe(),
                    variant: format!("{variant:?}"),
                    solution: solution.to_record(),
                };
                write_json(out, &export)?;
            }
            Ok(None)
        }
        Command::Maps { spec } => {
            let maps = list_maps(&build_group(spec)?)?;
            if cli.csv {
                write_maps_csv(&maps, out)?;
            } else {
                write_json(out, &maps)?;
            }
            Ok(None)
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Spec(..)
            | Error::OrderCap { .. }
            | Error::OutOfRange(_)
            | Error::InvalidTable(_)
            | Error::Io(_)
            | Error::Json(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Failed(msg))) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
