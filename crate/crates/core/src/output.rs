//! Run artifacts: plot-ready long-format CSV tables and a JSON-lines
//! decision log.
//!
//! Every table repeats its (scenario, region, …) keys on each row and opens
//! with a `#`-prefixed units line so downstream tooling never has to guess
//! scales. Writers accept a slice of pathway results so a single run
//! directory can hold several scenarios side by side.

use crate::catalog::Catalog;
use crate::error::Error;
use crate::pathway::PathwayResult;
use crate::scheduler::{BlockedProject, DecisionRecord};
use crate::types::Region;
use crate::Result;
use crate::{CAPEX_YEAR_MIN, YEAR_MIN};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

/// File names produced by [`write_run_dir`], in write order.
pub const RUN_FILES: [&str; 6] = [
    "schedule.csv",
    "capex_annual.csv",
    "lcoa_projects.csv",
    "emissions.csv",
    "storage.csv",
    "decisions.jsonl",
];

/// Assemble a CSV in memory (a units comment line, then records from
/// `build`) and write it to `path` in one shot.
fn write_csv(
    path: &Path,
    units: &str,
    build: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    build(&mut w).map_err(|e| Error::Csv {
        path: path.display().to_string(),
        source: e,
    })?;
    let body = w
        .into_inner()
        .expect("flushing an in-memory csv writer cannot fail");
    let mut out = Vec::with_capacity(units.len() + 3 + body.len());
    writeln!(out, "# {units}").expect("writing to a Vec cannot fail");
    out.extend_from_slice(&body);
    std::fs::write(path, out).map_err(|e| Error::io(path.display().to_string(), e))
}

/// `schedule.csv`: one row per committed abatement project.
pub fn write_schedule(path: &Path, results: &[PathwayResult]) -> Result<()> {
    write_csv(
        path,
        "units: total_capex $ (2024); lcoa $/tCO2 abated; abated_scope1 and co2_stored tCO2/y",
        |w| {
            w.write_record([
                "scenario",
                "region",
                "chemical_group",
                "facility_id",
                "asset_id",
                "technology",
                "build_type",
                "development_start",
                "online_year",
                "total_capex",
                "lcoa",
                "abated_scope1",
                "co2_stored",
                "learning_index",
                "storage_site",
            ])?;
            for r in results {
                for p in r.projects() {
                    w.write_record(&[
                        r.scenario_id.as_str().to_string(),
                        p.region.as_str().to_string(),
                        p.group.as_str().to_string(),
                        p.facility_id.clone(),
                        p.asset_id.clone(),
                        p.tech_id.as_str().to_string(),
                        p.build_type.as_str().to_string(),
                        p.development_start.to_string(),
                        p.online_year.to_string(),
                        p.total_capex.to_string(),
                        p.lcoa_at_decision.to_string(),
                        p.abated_scope1_t_per_y.to_string(),
                        p.co2_stored_t_per_y.to_string(),
                        p.learning_index.to_string(),
                        p.storage_site_id.clone().unwrap_or_default(),
                    ])?;
                }
            }
            Ok(())
        },
    )
}

/// `capex_annual.csv`: capital outlays per cell and calendar year,
/// including zero years so series plot over the full horizon.
pub fn write_capex_annual(path: &Path, results: &[PathwayResult]) -> Result<()> {
    write_csv(path, "units: capex $ (2024) spent in `year`", |w| {
        w.write_record(["scenario", "region", "chemical_group", "year", "capex"])?;
        for r in results {
            for s in &r.schedules {
                for (i, v) in s.annual_capex.iter().enumerate() {
                    w.write_record(&[
                        r.scenario_id.as_str().to_string(),
                        s.region.as_str().to_string(),
                        s.group.as_str().to_string(),
                        (CAPEX_YEAR_MIN + i as i32).to_string(),
                        v.to_string(),
                    ])?;
                }
            }
        }
        Ok(())
    })
}

/// `lcoa_projects.csv`: decision LCOAs ordered by online year — the shape
/// of the cost trajectory as deployment proceeds (first-of-a-kind premium,
/// learning decline, late-fleet rise).
pub fn write_lcoa_projects(path: &Path, results: &[PathwayResult]) -> Result<()> {
    write_csv(
        path,
        "units: lcoa $/tCO2 abated; abated_scope1 tCO2/y",
        |w| {
            w.write_record([
                "scenario",
                "region",
                "chemical_group",
                "online_year",
                "asset_id",
                "technology",
                "lcoa",
                "abated_scope1",
                "learning_index",
            ])?;
            for r in results {
                let mut rows: Vec<_> = r.projects().collect();
                rows.sort_by(|a, b| {
                    a.online_year
                        .cmp(&b.online_year)
                        .then(a.lcoa_at_decision.total_cmp(&b.lcoa_at_decision))
                        .then_with(|| a.asset_id.cmp(&b.asset_id))
                });
                for p in rows {
                    w.write_record(&[
                        r.scenario_id.as_str().to_string(),
                        p.region.as_str().to_string(),
                        p.group.as_str().to_string(),
                        p.online_year.to_string(),
                        p.asset_id.clone(),
                        p.tech_id.as_str().to_string(),
                        p.lcoa_at_decision.to_string(),
                        p.abated_scope1_t_per_y.to_string(),
                        p.learning_index.to_string(),
                    ])?;
                }
            }
            Ok(())
        },
    )
}

/// `emissions.csv`: the well-to-gate inventory in long format, one row per
/// (scenario, region, chemical, scope, year).
///
/// With `with_frozen`, the frozen-2023-intensity counterfactual is appended
/// under scenario `REF` with scope `total`. The 2023 anchor is common to
/// all presets, so the block is emitted once, from the first result.
pub fn write_emissions(path: &Path, results: &[PathwayResult], with_frozen: bool) -> Result<()> {
    write_csv(path, "units: emissions tCO2e/y", |w| {
        w.write_record(["scenario", "region", "chemical", "scope", "year", "emissions"])?;
        for r in results {
            for ((region, chemical, scope), series) in r.emissions.cells() {
                for (i, v) in series.iter().enumerate() {
                    w.write_record(&[
                        r.scenario_id.as_str().to_string(),
                        region.as_str().to_string(),
                        chemical.as_str().to_string(),
                        scope.as_str().to_string(),
                        (YEAR_MIN + i as i32).to_string(),
                        v.to_string(),
                    ])?;
                }
            }
        }
        if with_frozen {
            if let Some(r) = results.first() {
                for ((region, chemical), series) in &r.frozen.by_cell {
                    for (i, v) in series.iter().enumerate() {
                        w.write_record(&[
                            "REF".to_string(),
                            region.as_str().to_string(),
                            chemical.as_str().to_string(),
                            "total".to_string(),
                            (YEAR_MIN + i as i32).to_string(),
                            v.to_string(),
                        ])?;
                    }
                }
            }
        }
        Ok(())
    })
}

/// `storage.csv`: CO₂ injection per storage site and year. The site's
/// region comes from the catalog; sites that never receive flow are
/// omitted.
pub fn write_storage(path: &Path, results: &[PathwayResult], catalog: &Catalog) -> Result<()> {
    let mut region_of: BTreeMap<&str, Region> = BTreeMap::new();
    for region in Region::ALL {
        for site in catalog.storage_sites(region) {
            region_of.insert(site.site_id.as_str(), region);
        }
    }
    write_csv(path, "units: co2_injected tCO2/y", |w| {
        w.write_record(["scenario", "region", "site_id", "year", "co2_injected"])?;
        for r in results {
            for (site, series) in &r.storage_flow {
                if series.iter().all(|v| *v == 0.0) {
                    continue;
                }
                let region = region_of
                    .get(site.as_str())
                    .map(|r| r.as_str())
                    .unwrap_or("unassigned");
                for (i, v) in series.iter().enumerate() {
                    w.write_record(&[
                        r.scenario_id.as_str().to_string(),
                        region.to_string(),
                        site.clone(),
                        (YEAR_MIN + i as i32).to_string(),
                        v.to_string(),
                    ])?;
                }
            }
        }
        Ok(())
    })
}

#[derive(Serialize)]
struct DecisionLine<'a> {
    scenario: &'a str,
    #[serde(flatten)]
    record: &'a DecisionRecord,
}

#[derive(Serialize)]
struct BlockedLine<'a> {
    scenario: &'a str,
    region: &'a str,
    chemical_group: &'a str,
    mode: &'static str,
    blocked: &'a [BlockedProject],
}

#[derive(Serialize)]
struct CellSummaryLine<'a> {
    scenario: &'a str,
    region: &'a str,
    chemical_group: &'a str,
    mode: &'static str,
    projects: usize,
    unabated: usize,
    conventional_newbuilds: usize,
    /// Last retrofit online year; absent while targets remain unabated or
    /// when the cell had nothing to retrofit.
    completion_year: Option<i32>,
}

/// `decisions.jsonl`: the scheduler's decision log — one JSON object per
/// decision year and cell, one `blocked` object per cell whose cheapest
/// project cannot fit under the annual cap even alone, and one closing
/// `cell_summary` object per cell.
pub fn write_decisions(path: &Path, results: &[PathwayResult]) -> Result<()> {
    let json_err = |e| Error::Json {
        path: path.display().to_string(),
        source: e,
    };
    let mut out = Vec::new();
    for r in results {
        for s in &r.schedules {
            for d in &s.decisions {
                let line = serde_json::to_string(&DecisionLine {
                    scenario: r.scenario_id.as_str(),
                    record: d,
                })
                .map_err(json_err)?;
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
            }
            if !s.blocked.is_empty() {
                let line = serde_json::to_string(&BlockedLine {
                    scenario: r.scenario_id.as_str(),
                    region: s.region.as_str(),
                    chemical_group: s.group.as_str(),
                    mode: "blocked",
                    blocked: &s.blocked,
                })
                .map_err(json_err)?;
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
            }
            let line = serde_json::to_string(&CellSummaryLine {
                scenario: r.scenario_id.as_str(),
                region: s.region.as_str(),
                chemical_group: s.group.as_str(),
                mode: "cell_summary",
                projects: s.projects.len(),
                unabated: s.unabated.len(),
                conventional_newbuilds: s.conventional_newbuilds.len(),
                completion_year: s.completion_year(),
            })
            .map_err(json_err)?;
            out.extend_from_slice(line.as_bytes());
            out.push(b'\n');
        }
    }
    std::fs::write(path, out).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Write the full artifact set into `dir` and return the paths in write
/// order (see [`RUN_FILES`]).
pub fn write_run_dir(
    dir: &Path,
    results: &[PathwayResult],
    catalog: &Catalog,
    with_frozen: bool,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let paths: Vec<PathBuf> = RUN_FILES.iter().map(|f| dir.join(f)).collect();
    write_schedule(&paths[0], results)?;
    write_capex_annual(&paths[1], results)?;
    write_lcoa_projects(&paths[2], results)?;
    write_emissions(&paths[3], results, with_frozen)?;
    write_storage(&paths[4], results, catalog)?;
    write_decisions(&paths[5], results)?;
    Ok(paths)
}
