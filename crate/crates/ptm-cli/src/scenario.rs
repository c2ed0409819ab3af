//! Batch scenarios: sweeps over transversal directions and truncations, with
//! JSON/CSV reports per cell. Deterministic given the seed; cells may run in
//! parallel (thread count from PTM_THREADS), report assembly is serialized.

use std::path::PathBuf;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use ptm_core::geometry::OrbitSpecJson;
use ptm_core::lie::{catalog, CatalogEntry, CatalogEntryJson};
use ptm_core::paths::FourierPathJson;
use ptm_core::spectra::{
    assemble_fiber_shape_operator, assemble_orbit_shape_operator, full_report, SpectrumReport,
};
use ptm_core::transport::{solve_transport, SolverConfig, SolverMethod};

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(Box<CatalogEntryJson>),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolverJson {
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_method")]
    pub method: String,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_steps() -> usize {
    512
}
fn default_method() -> String {
    "rkmk4".into()
}
fn default_tolerance() -> f64 {
    1e-7
}

impl Default for SolverJson {
    fn default() -> Self {
        SolverJson {
            steps: default_steps(),
            method: default_method(),
            tolerance: default_tolerance(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub algebra: AlgebraRef,
    /// Truncations for the spectrum sweep, ascending.
    #[serde(default)]
    pub truncations: Vec<usize>,
    /// Transversal directions (g-coordinates) for the sweep.
    #[serde(default)]
    pub xi_sweep: Vec<Vec<f64>>,
    /// Optional orbit; when absent the sweep assembles fiber operators.
    #[serde(default)]
    pub orbit: Option<OrbitSpecJson>,
    /// Optional transport-only cell.
    #[serde(default)]
    pub transport_path: Option<FourierPathJson>,
    #[serde(default)]
    pub solver: SolverJson,
    pub out_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
}

fn resolve(cfg: &ScenarioConfig) -> anyhow::Result<CatalogEntry<f64>> {
    match &cfg.algebra {
        AlgebraRef::Name(n) => Ok(catalog::load::<f64>(n)?),
        AlgebraRef::Inline(json) => Ok(json.build::<f64>()?),
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> anyhow::Result<()> {
    let entry = resolve(cfg)?;
    let has_spectra = !cfg.xi_sweep.is_empty();
    if has_spectra && cfg.truncations.is_empty() {
        return Err(ptm_core::Error::input("truncation list must not be empty").into());
    }
    if !cfg
        .truncations
        .windows(2)
        .all(|w| w[0] < w[1])
    {
        return Err(ptm_core::Error::input("truncations must be sorted ascending").into());
    }
    std::fs::create_dir_all(&cfg.out_dir)?;

    let orbit = match &cfg.orbit {
        Some(json) => Some(json.build(entry.pair.clone())?),
        None => None,
    };

    // enumerate the (xi, N) cells deterministically
    let mut cells = Vec::new();
    for (xi_idx, xi) in cfg.xi_sweep.iter().enumerate() {
        if xi.len() != entry.pair.dim() {
            return Err(ptm_core::Error::input(format!(
                "xi {xi_idx} has wrong length {} (dim {})",
                xi.len(),
                entry.pair.dim()
            ))
            .into());
        }
        for &n in &cfg.truncations {
            cells.push((xi_idx, xi.clone(), n));
        }
    }

    let compute = |(xi_idx, xi, n): &(usize, Vec<f64>, usize)| -> anyhow::Result<(String, SpectrumReport)> {
        let xi_vec = DVector::from_vec(xi.clone());
        let op = match &orbit {
            Some(o) => assemble_orbit_shape_operator(o, &xi_vec, *n)?,
            None => assemble_fiber_shape_operator(&entry.pair, &xi_vec, *n)?,
        };
        let kind = if orbit.is_some() { "orbit" } else { "fiber" };
        Ok((format!("{kind}_xi{xi_idx}_N{n}"), full_report(&op)?))
    };

    let threads: usize = std::env::var("PTM_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let results: Vec<anyhow::Result<(String, SpectrumReport)>> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| ptm_core::Error::input(e.to_string()))?;
        pool.install(|| {
            use rayon::prelude::*;
            cells.par_iter().map(compute).collect()
        })
    } else {
        cells.iter().map(compute).collect()
    };

    // serialized report assembly, in cell order
    let mut index = Vec::new();
    for res in results {
        let (stem, report) = res?;
        let json_path = cfg.out_dir.join(format!("{stem}.json"));
        crate::write_atomic(&json_path, &serde_json::to_string_pretty(&report)?)?;
        let csv_path = cfg.out_dir.join(format!("{stem}.csv"));
        crate::write_atomic(&csv_path, &crate::eigenvalues_csv(&report))?;
        index.push(stem);
    }

    if let Some(path_json) = &cfg.transport_path {
        let u = path_json.build::<f64>()?;
        let method = match cfg.solver.method.as_str() {
            "rkmk4" => SolverMethod::Rkmk4,
            "rk4-reproject" => SolverMethod::Rk4Reproject,
            other => {
                return Err(ptm_core::Error::input(format!("unknown method '{other}'")).into())
            }
        };
        let solver = SolverConfig::new(cfg.solver.steps, method, cfg.solver.tolerance)?;
        let result = solve_transport(&entry, &u, &solver)?;
        let residual = result.validate_against(entry.pair.algebra(), &u);
        let endpoint: Vec<Vec<f64>> = (0..result.endpoint.matrix.nrows())
            .map(|i| {
                (0..result.endpoint.matrix.ncols())
                    .map(|j| result.endpoint.matrix[(i, j)])
                    .collect()
            })
            .collect();
        let payload = serde_json::json!({
            "endpoint": endpoint,
            "coset_chart": result.coset_chart.as_ref().map(|w| w.iter().copied().collect::<Vec<f64>>()),
            "log_derivative_residual": residual,
        });
        crate::write_atomic(
            &cfg.out_dir.join("transport.json"),
            &serde_json::to_string_pretty(&payload)?,
        )?;
        index.push("transport".into());
    }

    let manifest = serde_json::json!({
        "algebra": entry.name,
        "seed": cfg.seed,
        "cells": index,
    });
    crate::write_atomic(
        &cfg.out_dir.join("manifest.json"),
        &serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(())
}
