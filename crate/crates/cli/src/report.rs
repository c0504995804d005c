//! Summary tables for a finished run directory: average annual capital per
//! (region, scenario) column and chemical-group row, completion years, and
//! cumulative capital/emissions totals.

use anyhow::{bail, Context, Result};
use chemdecarb_core::{CAPEX_YEAR_MIN, YEAR_MAX};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

/// Cumulative-emissions window. Capital is averaged over the full outlay
/// horizon instead; the first spend lands in 2024.
const EMISSIONS_FROM: i64 = 2025;

struct CellOutcome {
    unabated: u64,
    completion_year: Option<i64>,
}

#[derive(Default)]
struct Tables {
    /// First-seen order, so columns follow the run's scenario order.
    scenarios: Vec<String>,
    regions: Vec<String>,
    groups: BTreeSet<String>,
    /// (scenario, region, group) → total capex $ over the outlay horizon.
    capex: BTreeMap<(String, String, String), f64>,
    cells: BTreeMap<(String, String, String), CellOutcome>,
    /// Scenario (or `REF`) → cumulative emissions t, 2025 onward.
    cumulative_emissions: BTreeMap<String, f64>,
}

fn push_unique(list: &mut Vec<String>, value: &str) {
    if !list.iter().any(|v| v == value) {
        list.push(value.to_string());
    }
}

impl Tables {
    fn load(dir: &Path) -> Result<Tables> {
        for name in ["capex_annual.csv", "emissions.csv", "decisions.jsonl"] {
            if !dir.join(name).exists() {
                bail!("{} has no {name}; run `chemdecarb run` first", dir.display());
            }
        }
        let mut t = Tables::default();
        t.load_capex(&dir.join("capex_annual.csv"))?;
        t.load_cells(&dir.join("decisions.jsonl"))?;
        t.load_emissions(&dir.join("emissions.csv"))?;
        Ok(t)
    }

    fn load_capex(&mut self, path: &Path) -> Result<()> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_path(path)
            .with_context(|| format!("reading {}", path.display()))?;
        for record in rdr.records() {
            let record = record?;
            let (scenario, region, group) = (&record[0], &record[1], &record[2]);
            let capex: f64 = record[4].parse().context("capex column")?;
            push_unique(&mut self.scenarios, scenario);
            push_unique(&mut self.regions, region);
            self.groups.insert(group.to_string());
            *self
                .capex
                .entry((scenario.into(), region.into(), group.into()))
                .or_insert(0.0) += capex;
        }
        Ok(())
    }

    fn load_cells(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        for line in text.lines() {
            let v: serde_json::Value =
                serde_json::from_str(line).context("decision log line")?;
            if v["mode"] != "cell_summary" {
                continue;
            }
            let key = (
                v["scenario"].as_str().unwrap_or_default().to_string(),
                v["region"].as_str().unwrap_or_default().to_string(),
                v["chemical_group"].as_str().unwrap_or_default().to_string(),
            );
            self.cells.insert(
                key,
                CellOutcome {
                    unabated: v["unabated"].as_u64().unwrap_or(0),
                    completion_year: v["completion_year"].as_i64(),
                },
            );
        }
        Ok(())
    }

    fn load_emissions(&mut self, path: &Path) -> Result<()> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_path(path)
            .with_context(|| format!("reading {}", path.display()))?;
        for record in rdr.records() {
            let record = record?;
            let year: i64 = record[4].parse().context("year column")?;
            if year < EMISSIONS_FROM {
                continue;
            }
            let value: f64 = record[5].parse().context("emissions column")?;
            *self
                .cumulative_emissions
                .entry(record[0].to_string())
                .or_insert(0.0) += value;
        }
        Ok(())
    }

    /// Completion entry for one (region, scenario) column: the latest group
    /// completion, `>2080` while any group keeps unabated capacity, `-`
    /// when the column scheduled nothing.
    fn completion(&self, scenario: &str, region: &str) -> String {
        let mut latest: Option<i64> = None;
        for ((s, r, _), cell) in &self.cells {
            if s != scenario || r != region {
                continue;
            }
            if cell.unabated > 0 {
                return format!(">{YEAR_MAX}");
            }
            latest = latest.max(cell.completion_year);
        }
        latest.map_or_else(|| "-".to_string(), |y| y.to_string())
    }
}

/// Render the summary for a run directory.
pub fn render(dir: &Path) -> Result<String> {
    let t = Tables::load(dir)?;
    let horizon_years = f64::from(YEAR_MAX - CAPEX_YEAR_MIN + 1);
    let label_w = t
        .groups
        .iter()
        .map(|g| g.len())
        .chain([10])
        .max()
        .unwrap_or(10)
        + 2;
    let col_w = 9;
    let block_w = col_w * t.scenarios.len();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "capital deployed, B$/y (mean over {CAPEX_YEAR_MIN}-{YEAR_MAX})"
    );
    let _ = writeln!(out);

    let _ = write!(out, "{:label_w$}", "");
    for region in &t.regions {
        let _ = write!(out, "{region:>block_w$}");
    }
    let _ = writeln!(out);
    let _ = write!(out, "{:label_w$}", "");
    for _ in &t.regions {
        for scenario in &t.scenarios {
            let _ = write!(out, "{scenario:>col_w$}");
        }
    }
    let _ = writeln!(out);

    for group in &t.groups {
        let _ = write!(out, "{group:<label_w$}");
        for region in &t.regions {
            for scenario in &t.scenarios {
                let key = (scenario.clone(), region.clone(), group.clone());
                match t.capex.get(&key) {
                    Some(capex) => {
                        let _ = write!(out, "{:>col_w$.2}", capex / horizon_years / 1e9);
                    }
                    None => {
                        let _ = write!(out, "{:>col_w$}", "-");
                    }
                }
            }
        }
        let _ = writeln!(out);
    }

    let _ = write!(out, "{:<label_w$}", "total");
    for region in &t.regions {
        for scenario in &t.scenarios {
            let total: f64 = t
                .groups
                .iter()
                .filter_map(|g| t.capex.get(&(scenario.clone(), region.clone(), g.clone())))
                .sum();
            let _ = write!(out, "{:>col_w$.2}", total / horizon_years / 1e9);
        }
    }
    let _ = writeln!(out);

    let _ = write!(out, "{:<label_w$}", "completion");
    for region in &t.regions {
        for scenario in &t.scenarios {
            let _ = write!(out, "{:>col_w$}", t.completion(scenario, region));
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out);

    let _ = write!(out, "cumulative capital {CAPEX_YEAR_MIN}-{YEAR_MAX}, B$:");
    for scenario in &t.scenarios {
        let total: f64 = t
            .capex
            .iter()
            .filter(|((s, _, _), _)| s == scenario)
            .map(|(_, v)| v)
            .sum();
        let _ = write!(out, "  {scenario} {:.1}", total / 1e9);
    }
    let _ = writeln!(out);

    let _ = write!(out, "cumulative emissions {EMISSIONS_FROM}-{YEAR_MAX}, Gt:");
    for scenario in &t.scenarios {
        if let Some(total) = t.cumulative_emissions.get(scenario) {
            let _ = write!(out, "  {scenario} {:.1}", total / 1e9);
        }
    }
    if let Some(total) = t.cumulative_emissions.get("REF") {
        let _ = write!(out, "  REF {:.1}", total / 1e9);
    }
    let _ = writeln!(out);
    Ok(out)
}
