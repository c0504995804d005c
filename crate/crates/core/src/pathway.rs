//! Whole-scenario orchestration: one call turns an asset base, technology
//! catalog, prices, and growth assumptions into deployment schedules,
//! emissions series, storage flows, and a frozen-intensity reference.
//!
//! The run is year-major: every (region, chemical group) cell advances
//! through the same calendar year before any cell sees the next one, so
//! learning spillovers and storage-basin contention play out in commitment
//! order rather than cell order. Demand growth is served by world-scale
//! capacity additions; additions due before clean options exist are built
//! conventionally and join the retrofit queue of their cell.

use crate::catalog::{Catalog, TechId};
use crate::costing::FinanceParams;
use crate::dataset::{AssetRecord, AssetTable};
use crate::emissions::{asset_emissions, frozen_reference, EmissionsTable, FrozenReference};
use crate::error::Error;
use crate::projections::{newbuild_requirements, production_series, ProductionSeries};
use crate::scenario::{ScenarioId, ScenarioParams, SchedulingMode};
use crate::scheduler::{
    AbatementProject, CellContext, CellPlanner, DeploymentSchedule, LearningState, NewbuildDemand,
    StorageLedger, CAPEX_YEARS,
};
use crate::types::{BuildType, Chemical, ChemicalGroup, Region};
use crate::{GrowthConfig, PricesConfig, Result, CAPEX_YEAR_MIN, HORIZON_YEARS, YEAR_MAX, YEAR_MIN};
use std::collections::BTreeMap;

/// Everything a scenario run consumes. Inputs are immutable; the run
/// borrows them.
#[derive(Debug, Clone)]
pub struct RunInputs {
    pub assets: AssetTable,
    pub catalog: Catalog,
    pub prices: PricesConfig,
    pub growth: GrowthConfig,
    pub finance: FinanceParams,
    pub scenario: ScenarioParams,
}

/// Output of one scenario run.
#[derive(Debug, Clone)]
pub struct PathwayResult {
    pub scenario_id: ScenarioId,
    /// One schedule per planned (region, chemical group) cell.
    pub schedules: Vec<DeploymentSchedule>,
    /// Well-to-gate inventory of the abating pathway.
    pub emissions: EmissionsTable,
    /// Counterfactual at frozen 2023 intensities.
    pub frozen: FrozenReference,
    /// Injected CO₂ per storage site, tCO₂/y over 2023–2080.
    pub storage_flow: BTreeMap<String, Vec<f64>>,
    /// Demand paths per (region, chemical), anchored to the 2023 base.
    pub production: Vec<ProductionSeries>,
    /// Every asset the emissions inventory covers, including capacity
    /// additions, with the year it enters service.
    pub asset_years: Vec<(AssetRecord, i32)>,
    /// (tech, region, online year) per commissioned project.
    pub commissioning_log: Vec<(TechId, Region, i32)>,
}

impl PathwayResult {
    /// Capital outlays summed across cells, $ per year over 2024–2080.
    pub fn annual_capex(&self) -> Vec<f64> {
        let mut out = vec![0.0; CAPEX_YEARS];
        for schedule in &self.schedules {
            for (total, v) in out.iter_mut().zip(&schedule.annual_capex) {
                *total += v;
            }
        }
        out
    }

    pub fn cumulative_capex(&self) -> f64 {
        self.schedules.iter().map(|s| s.total_capex()).sum()
    }

    pub fn projects(&self) -> impl Iterator<Item = &AbatementProject> {
        self.schedules.iter().flat_map(|s| s.projects.iter())
    }

    pub fn schedule(&self, region: Region, group: ChemicalGroup) -> Option<&DeploymentSchedule> {
        self.schedules
            .iter()
            .find(|s| s.region == region && s.group == group)
    }

    /// Latest retrofit completion across cells; `None` while any cell has
    /// unabated stock.
    pub fn completion_year(&self) -> Option<i32> {
        let mut latest = None;
        for schedule in &self.schedules {
            let has_retrofits = schedule
                .projects
                .iter()
                .any(|p| p.build_type == BuildType::Retrofit);
            if !has_retrofits && schedule.unabated.is_empty() {
                continue;
            }
            match schedule.completion_year() {
                None => return None,
                Some(y) => latest = Some(latest.map_or(y, |l: i32| l.max(y))),
            }
        }
        latest
    }

    /// Total injection across sites in `year`, tCO₂/y.
    pub fn storage_total_in(&self, year: i32) -> f64 {
        let idx = (year - YEAR_MIN) as usize;
        self.storage_flow.values().map(|series| series[idx]).sum()
    }
}

/// Scheduling cell an asset belongs to, when it can carry projects at all.
fn cell_of(asset: &AssetRecord) -> Option<(Region, ChemicalGroup)> {
    let group = ChemicalGroup::from_process(&asset.process)?;
    if ChemicalGroup::ABATABLE.contains(&group) {
        Some((asset.region, group))
    } else {
        None
    }
}

fn scope1_intensity(asset: &AssetRecord) -> f64 {
    asset.combustion_co2_intensity(crate::types::EF_GAS_T_PER_GJ, crate::types::EF_COAL_T_PER_GJ)
        + asset.process_co2_intensity
}

/// Production-weighted template for capacity additions in one (region,
/// chemical) cell: mean intensities, the cell's dominant process and
/// feedstock, and a site adjacent to the region's cheapest storage.
fn newbuild_template(
    cell_assets: &[&AssetRecord],
    region: Region,
    chemical: Chemical,
    capacity: f64,
    catalog: &Catalog,
) -> AssetRecord {
    let total: f64 = cell_assets.iter().map(|a| a.production_t_per_y()).sum();
    let weighted = |f: &dyn Fn(&AssetRecord) -> f64| -> f64 {
        if total > 0.0 {
            cell_assets
                .iter()
                .map(|a| f(a) * a.production_t_per_y())
                .sum::<f64>()
                / total
        } else {
            0.0
        }
    };
    let dominant = |f: &dyn Fn(&AssetRecord) -> String| -> String {
        let mut by_token: BTreeMap<String, f64> = BTreeMap::new();
        for a in cell_assets {
            *by_token.entry(f(a)).or_insert(0.0) += a.production_t_per_y();
        }
        by_token
            .into_iter()
            .max_by(|(ta, wa), (tb, wb)| wa.total_cmp(wb).then_with(|| tb.cmp(ta)))
            .map(|(token, _)| token)
            .unwrap_or_default()
    };
    let utilization = {
        let capacity_sum: f64 = cell_assets.iter().map(|a| a.capacity).sum();
        if capacity_sum > 0.0 {
            (total / capacity_sum).clamp(0.05, 1.0)
        } else {
            0.9
        }
    };
    // Greenfield siting follows sequestration access; fall back to the
    // production-weighted centroid of the existing stock.
    let (latitude, longitude) = catalog
        .storage_sites(region)
        .iter()
        .min_by(|a, b| {
            a.unit_storage_cost
                .total_cmp(&b.unit_storage_cost)
                .then_with(|| a.site_id.cmp(&b.site_id))
        })
        .map(|site| (site.latitude, site.longitude))
        .unwrap_or_else(|| {
            (
                weighted(&|a: &AssetRecord| a.latitude),
                weighted(&|a: &AssetRecord| a.longitude),
            )
        });
    AssetRecord {
        asset_id: String::new(),
        facility_id: String::new(),
        owner: "greenfield".into(),
        region,
        latitude,
        longitude,
        startup_year: 0,
        chemical,
        process: dominant(&|a: &AssetRecord| a.process.clone()),
        capacity,
        utilization,
        feedstock_type: dominant(&|a: &AssetRecord| a.feedstock_type.clone()),
        feedstock_intensity: weighted(&|a: &AssetRecord| a.feedstock_intensity),
        electricity_intensity: weighted(&|a: &AssetRecord| a.electricity_intensity),
        steam_intensity: weighted(&|a: &AssetRecord| a.steam_intensity),
        fuel_intensity: weighted(&|a: &AssetRecord| a.fuel_intensity),
        process_co2_intensity: weighted(&|a: &AssetRecord| a.process_co2_intensity),
    }
}

/// Run one scenario end to end.
pub fn run_pathway(inputs: &RunInputs) -> Result<PathwayResult> {
    let scenario = &inputs.scenario;
    scenario.validate()?;
    inputs.catalog.validate()?;
    inputs.prices.validate()?;
    inputs.growth.validate()?;

    let ctx = CellContext {
        scenario,
        catalog: &inputs.catalog,
        prices: &inputs.prices,
        finance: inputs.finance,
    };

    // 2023 base per (region, chemical): production anchors and template
    // pools for capacity additions.
    let mut base: BTreeMap<(Region, Chemical), Vec<&AssetRecord>> = BTreeMap::new();
    for asset in inputs.assets.iter() {
        base.entry((asset.region, asset.chemical)).or_default().push(asset);
    }

    let mut production = Vec::new();
    // (cell key, asset, enters service) per capacity addition; clean ones
    // are handed to planners, conventional ones join the emitting stock
    // immediately (and the retrofit queue when abatable).
    let mut planner_demands: BTreeMap<(Region, ChemicalGroup), Vec<NewbuildDemand>> =
        BTreeMap::new();
    let mut conventional: Vec<(AssetRecord, i32)> = Vec::new();

    for ((region, chemical), cell_assets) in &base {
        let anchor: f64 = cell_assets.iter().map(|a| a.production_t_per_y()).sum();
        let schedule = inputs.growth.schedule(*region, *chemical)?.with_anchor(anchor);
        let series = production_series(Some(*region), *chemical, &schedule)?;

        let capacity: f64 = cell_assets.iter().map(|a| a.capacity).sum();
        let utilization = if capacity > 0.0 {
            (anchor / capacity).clamp(0.05, 1.0)
        } else {
            0.9
        };
        let world_scale = inputs.growth.world_scale(*chemical)?;
        let builds = newbuild_requirements(&series, capacity, utilization, world_scale)?;
        for (seq, (year, unit_capacity)) in builds.into_iter().enumerate() {
            let mut asset =
                newbuild_template(cell_assets, *region, *chemical, unit_capacity, &inputs.catalog);
            asset.asset_id = format!("NB_{region}_{chemical}_{seq:03}");
            asset.facility_id = asset.asset_id.clone();
            asset.startup_year = year;
            let cell = cell_of(&asset).filter(|_| scope1_intensity(&asset) > 0.0);
            match cell {
                Some(key) if year >= scenario.first_online_year => {
                    planner_demands.entry(key).or_default().push(NewbuildDemand {
                        demand_year: year,
                        asset,
                    });
                }
                _ => conventional.push((asset, year)),
            }
        }
        production.push(series);
    }

    // Retrofit queues: abatable assets with their own scope-1 footprint.
    // Conventionally built additions line up behind the 2023 stock.
    let mut targets: BTreeMap<(Region, ChemicalGroup), Vec<AssetRecord>> = BTreeMap::new();
    let target_assets = inputs
        .assets
        .iter()
        .cloned()
        .chain(conventional.iter().map(|(a, _)| a.clone()));
    for asset in target_assets {
        if let Some(key) = cell_of(&asset) {
            if scope1_intensity(&asset) > 0.0 {
                targets.entry(key).or_default().push(asset);
            }
        }
    }

    // Planner demands move into the planners; keep the records so the
    // emissions pass can reconstruct committed additions by asset id.
    let mut demand_records: BTreeMap<String, AssetRecord> = BTreeMap::new();
    for demands in planner_demands.values() {
        for nb in demands {
            demand_records.insert(nb.asset.asset_id.clone(), nb.asset.clone());
        }
    }

    // Assemble planners for every cell that has work, then advance them
    // through the calendar together.
    let mut planners: BTreeMap<(Region, ChemicalGroup), CellPlanner> = BTreeMap::new();
    let cell_keys: Vec<(Region, ChemicalGroup)> = targets
        .keys()
        .chain(planner_demands.keys())
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    for key in cell_keys {
        let (region, group) = key;
        let cell_targets = targets.remove(&key).unwrap_or_default();
        let demands = planner_demands.remove(&key).unwrap_or_default();
        let planner = match scenario.scheduling_mode(region) {
            SchedulingMode::Deadline { year } => CellPlanner::deadline_cell(
                region,
                group,
                cell_targets,
                demands,
                *year,
                &ctx,
            )?,
            SchedulingMode::CapitalCap { caps } => {
                let cap = caps.get(&group).copied().ok_or_else(|| {
                    Error::config("scenario", format!("{region}/{group}: no capital cap"))
                })?;
                CellPlanner::capital_cap_cell(region, group, cell_targets, demands, cap, &ctx)?
            }
        };
        planners.insert(key, planner);
    }

    let mut learning = LearningState::new(scenario.learning.pooling);
    let mut storage = StorageLedger::new();
    for year in CAPEX_YEAR_MIN..=YEAR_MAX {
        for planner in planners.values_mut() {
            planner.advance(year, &mut learning, &mut storage, &ctx)?;
        }
    }

    let mut schedules = Vec::new();
    for ((region, _), planner) in planners {
        let remaining = planner.unabated_count();
        if remaining > 0 {
            if let SchedulingMode::Deadline { year } = scenario.scheduling_mode(region) {
                return Err(Error::InfeasibleDeadline {
                    deadline: *year,
                    earliest: *year + remaining as i32,
                });
            }
        }
        schedules.push(planner.finish(&learning, &storage, &ctx));
    }

    // Emissions: the 2023 stock emits from the start, conventional
    // additions from their build year, clean additions from their online
    // year; a project switches its asset onto the post-abatement bundle.
    let mut project_by_asset: BTreeMap<&str, &AbatementProject> = BTreeMap::new();
    for schedule in &schedules {
        for project in &schedule.projects {
            project_by_asset.insert(project.asset_id.as_str(), project);
        }
    }
    let mut asset_years: Vec<(AssetRecord, i32)> = inputs
        .assets
        .iter()
        .map(|a| (a.clone(), YEAR_MIN))
        .chain(conventional.iter().cloned())
        .collect();
    for schedule in &schedules {
        for project in &schedule.projects {
            if project.build_type == BuildType::Newbuild {
                let record = demand_records
                    .get(&project.asset_id)
                    .cloned()
                    .ok_or_else(|| {
                        Error::config(
                            "pathway",
                            format!("no demand record for committed addition {}", project.asset_id),
                        )
                    })?;
                asset_years.push((record, project.online_year));
            }
        }
        for nb in &schedule.conventional_newbuilds {
            asset_years.push((nb.asset.clone(), nb.demand_year));
        }
    }

    let mut emissions = EmissionsTable::new();
    let mut storage_flow: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (asset, from_year) in &asset_years {
        let project = project_by_asset.get(asset.asset_id.as_str()).copied();
        for year in (*from_year).max(YEAR_MIN)..=YEAR_MAX {
            let bundle = project
                .filter(|p| year >= p.online_year)
                .map(|p| &p.bundle);
            let breakdown = asset_emissions(asset, year, scenario, bundle)?;
            emissions.add(asset.region, asset.chemical, year, &breakdown);
            if breakdown.co2_stored > 0.0 {
                let site_id = project
                    .and_then(|p| p.storage_site_id.as_deref())
                    .unwrap_or("unassigned");
                let series = storage_flow
                    .entry(site_id.to_string())
                    .or_insert_with(|| vec![0.0; HORIZON_YEARS]);
                series[(year - YEAR_MIN) as usize] += breakdown.co2_stored;
            }
        }
    }

    let frozen = frozen_reference(&inputs.assets, &production, scenario)?;

    Ok(PathwayResult {
        scenario_id: scenario.scenario_id,
        schedules,
        emissions,
        frozen,
        storage_flow,
        production,
        asset_years,
        commissioning_log: learning.commissioning_log().to_vec(),
    })
}
