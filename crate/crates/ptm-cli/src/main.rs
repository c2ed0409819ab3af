//! Batch entry point: catalog management, transport runs, fiber/orbit
//! spectrum sweeps, scenario execution, and the verification suite.
//!
//! Exit codes: 0 success, 1 verification check failure, 2 usage error,
//! 3 numerical/domain error.

mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::DVector;

use ptm_core::geometry::OrbitSpecJson;
use ptm_core::lie::{catalog, CatalogEntry, CatalogEntryJson};
use ptm_core::paths::FourierPathJson;
use ptm_core::spectra::{
    assemble_fiber_shape_operator, assemble_orbit_shape_operator, full_report,
};
use ptm_core::transport::{solve_transport, SolverConfig, SolverMethod};
use ptm_core::verify::run_acceptance;

#[derive(Parser)]
#[command(name = "ptm", about = "parallel transport map laboratory", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite and print one line per check.
    Verify {
        /// RNG seed for the randomized checks.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Optional JSON report output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the transport ODE for a Fourier path and report the endpoint.
    Transport {
        #[arg(long)]
        algebra: String,
        /// Path to a FourierPath JSON file.
        #[arg(long)]
        path: PathBuf,
        #[arg(long, default_value_t = 512)]
        steps: usize,
        #[arg(long, default_value = "rkmk4")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble a fiber shape operator and report its spectrum.
    FiberSpectrum {
        #[arg(long)]
        algebra: String,
        /// Transversal direction in g-coordinates, comma-separated.
        #[arg(long)]
        xi: String,
        #[arg(long, name = "N")]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional CSV export of the eigenvalues.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Assemble a lifted-orbit shape operator and report its spectrum.
    OrbitSpectrum {
        #[arg(long)]
        algebra: String,
        /// Path to an OrbitSpec JSON file.
        #[arg(long)]
        orbit: PathBuf,
        #[arg(long)]
        xi: String,
        #[arg(long, name = "N")]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Catalog inspection.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Run a batch scenario from a JSON config.
    Scenario {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the built-in algebras.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(core) = e.downcast_ref::<ptm_core::Error>() {
        match core {
            ptm_core::Error::Input(_) => 2,
            _ => 3,
        }
    } else if e.downcast_ref::<serde_json::Error>().is_some() {
        2
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        2
    } else {
        3
    }
}

/// Resolves an algebra argument: a catalog name, or a path to a catalog-entry
/// JSON file.
fn load_algebra(spec: &str) -> anyhow::Result<CatalogEntry<f64>> {
    if catalog::CATALOG_NAMES.contains(&spec) {
        return Ok(catalog::load::<f64>(spec)?);
    }
    let path = PathBuf::from(spec);
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        let json: CatalogEntryJson = serde_json::from_str(&text)?;
        return Ok(json.build::<f64>()?);
    }
    Err(ptm_core::Error::input(format!(
        "unknown algebra '{spec}': not a catalog name and not a file"
    ))
    .into())
}

fn parse_xi(s: &str, dim: usize) -> anyhow::Result<DVector<f64>> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| ptm_core::Error::input(format!("cannot parse xi: {e}")))?;
    if parts.len() != dim {
        return Err(ptm_core::Error::input(format!(
            "xi has {} entries, algebra dimension is {dim}",
            parts.len()
        ))
        .into());
    }
    Ok(DVector::from_vec(parts))
}

fn parse_method(s: &str) -> anyhow::Result<SolverMethod> {
    match s {
        "rkmk4" => Ok(SolverMethod::Rkmk4),
        "rk4-reproject" => Ok(SolverMethod::Rk4Reproject),
        other => Err(ptm_core::Error::input(format!("unknown method '{other}'")).into()),
    }
}

/// Serializes to a file atomically (write to a sibling temp file, rename).
pub(crate) fn write_atomic(path: &std::path::Path, contents: &str) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub(crate) fn eigenvalues_csv(report: &ptm_core::spectra::SpectrumReport) -> String {
    let mut out = String::from("index,re,im,multiplicity\n");
    for (i, e) in report.eigenvalues.iter().enumerate() {
        out.push_str(&format!("{i},{:.17e},{:.17e},{}\n", e.re, e.im, e.multiplicity));
    }
    out
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify { seed, out } => {
            let report = run_acceptance(seed)?;
            for line in report.render_lines() {
                println!("{line}");
            }
            if let Some(path) = out {
                write_atomic(&path, &serde_json::to_string_pretty(&report)?)?;
            }
            if report.all_passed() {
                println!("verification: all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verification: at least one check failed");
                Ok(ExitCode::from(1))
            }
        }
        Command::Transport {
            algebra,
            path,
            steps,
            method,
            out,
        } => {
            let entry = load_algebra(&algebra)?;
            let text = std::fs::read_to_string(&path)?;
            let json: FourierPathJson = serde_json::from_str(&text)?;
            let u = json.build::<f64>()?;
            let cfg = SolverConfig::new(steps, parse_method(&method)?, 1e-7)?;
            let result = solve_transport(&entry, &u, &cfg)?;
            let residual = result.validate_against(entry.pair.algebra(), &u);
            let endpoint: Vec<Vec<f64>> = (0..result.endpoint.matrix.nrows())
                .map(|i| {
                    (0..result.endpoint.matrix.ncols())
                        .map(|j| result.endpoint.matrix[(i, j)])
                        .collect()
                })
                .collect();
            let payload = serde_json::json!({
                "algebra": entry.name,
                "steps": steps,
                "method": method,
                "endpoint": endpoint,
                "coset_chart": result.coset_chart.as_ref().map(|w| w.iter().copied().collect::<Vec<f64>>()),
                "log_derivative_residual": residual,
            });
            let text = serde_json::to_string_pretty(&payload)?;
            match out {
                Some(p) => write_atomic(&p, &text)?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FiberSpectrum {
            algebra,
            xi,
            n,
            out,
            csv,
        } => {
            let entry = load_algebra(&algebra)?;
            let xi = parse_xi(&xi, entry.pair.dim())?;
            let op = assemble_fiber_shape_operator(&entry.pair, &xi, n)?;
            let report = full_report(&op)?;
            emit_spectrum(&report, out, csv)
        }
        Command::OrbitSpectrum {
            algebra,
            orbit,
            xi,
            n,
            out,
            csv,
        } => {
            let entry = load_algebra(&algebra)?;
            let xi = parse_xi(&xi, entry.pair.dim())?;
            let text = std::fs::read_to_string(&orbit)?;
            let json: OrbitSpecJson = serde_json::from_str(&text)?;
            let spec = json.build(entry.pair.clone())?;
            let op = assemble_orbit_shape_operator(&spec, &xi, n)?;
            let report = full_report(&op)?;
            emit_spectrum(&report, out, csv)
        }
        Command::Catalog { command } => match command {
            CatalogCommand::List => {
                for name in catalog::CATALOG_NAMES {
                    let entry = catalog::load::<f64>(name)?;
                    println!(
                        "{name}: dim={} dim_k={} dim_p={} chart_radius={} relations={:?}",
                        entry.pair.dim(),
                        entry.pair.dim_k(),
                        entry.pair.dim_p(),
                        entry.chart_radius,
                        entry.relations,
                    );
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Scenario { config } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg: scenario::ScenarioConfig = serde_json::from_str(&text)?;
            scenario::run_scenario(&cfg)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit_spectrum(
    report: &ptm_core::spectra::SpectrumReport,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let text = serde_json::to_string_pretty(report)?;
    match out {
        Some(p) => write_atomic(&p, &text)?,
        None => println!("{text}"),
    }
    if let Some(p) = csv {
        write_atomic(&p, &eigenvalues_csv(report))?;
    }
    Ok(ExitCode::SUCCESS)
}
