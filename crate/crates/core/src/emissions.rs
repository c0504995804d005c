//! Well-to-gate emissions accounting: per-asset-year scope breakdowns,
//! frozen-intensity reference series, and grouped aggregation.
//!
//! Scope 1 is split into combustion and process streams because abatement
//! options treat them differently. Scope 2 prices grid electricity at the
//! scenario's declining regional carbon intensity and is exactly zero for
//! facilities whose load is under a clean-power contract. Scope 3 covers
//! upstream fuel and feedstock supply chains, scaled by the scenario's
//! upstream-decarbonization multiplier. Captured mass routed to storage is
//! tracked alongside the scopes but is not itself an emission.

use crate::catalog::PerformanceBundle;
use crate::dataset::{AssetRecord, AssetTable};
use crate::error::Error;
use crate::projections::ProductionSeries;
use crate::scenario::ScenarioParams;
use crate::types::{Chemical, HeatFuel, Region};
use crate::{Result, HORIZON_YEARS, YEAR_MAX, YEAR_MIN};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Emission scope dimension used in outputs and aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Scope1Combustion,
    Scope1Process,
    Scope2,
    Scope3Upstream,
}

impl Scope {
    pub const ALL: [Scope; 4] = [
        Scope::Scope1Combustion,
        Scope::Scope1Process,
        Scope::Scope2,
        Scope::Scope3Upstream,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scope::Scope1Combustion => "scope1_combustion",
            Scope::Scope1Process => "scope1_process",
            Scope::Scope2 => "scope2",
            Scope::Scope3Upstream => "scope3_upstream",
        }
    }
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One asset-year inventory, tCO₂ per year.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EmissionsBreakdown {
    pub scope1_combustion: f64,
    pub scope1_process: f64,
    pub scope2: f64,
    pub scope3_upstream: f64,
    /// Captured mass sent to storage; not part of the emission total.
    pub co2_stored: f64,
}

impl EmissionsBreakdown {
    pub fn total(&self) -> f64 {
        self.scope1_combustion + self.scope1_process + self.scope2 + self.scope3_upstream
    }

    pub fn scope1(&self) -> f64 {
        self.scope1_combustion + self.scope1_process
    }

    pub fn get(&self, scope: Scope) -> f64 {
        match scope {
            Scope::Scope1Combustion => self.scope1_combustion,
            Scope::Scope1Process => self.scope1_process,
            Scope::Scope2 => self.scope2,
            Scope::Scope3Upstream => self.scope3_upstream,
        }
    }
}

/// Well-to-gate inventory of one asset in one year under an optional
/// abatement state. The abatement bundle, when present, replaces the
/// asset's scope-1 streams with post-abatement residuals, shifts purchased
/// fuel and electricity by its deltas, and routes captured mass to storage.
pub fn asset_emissions(
    asset: &AssetRecord,
    year: i32,
    params: &ScenarioParams,
    abatement: Option<&PerformanceBundle>,
) -> Result<EmissionsBreakdown> {
    if !(YEAR_MIN..=YEAR_MAX).contains(&year) {
        return Err(Error::YearOutOfRange {
            year,
            min: YEAR_MIN,
            max: YEAR_MAX,
        });
    }
    let production = asset.production_t_per_y();
    let heat_fuel = asset.heat_fuel();
    let heat_gj = asset.fuel_intensity + asset.steam_intensity;

    // Per-tonne scope-1 streams and purchased-energy flows.
    let (s1_comb, s1_proc, elec_mwh, mut gas_gj, mut coal_gj, ppa, stored) = match abatement {
        None => {
            let (gas, coal) = match heat_fuel {
                HeatFuel::NaturalGas => (heat_gj, 0.0),
                HeatFuel::Coal => (0.0, heat_gj),
            };
            (
                heat_gj * heat_fuel.ef_t_per_gj(),
                asset.process_co2_intensity,
                asset.electricity_intensity,
                gas,
                coal,
                false,
                0.0,
            )
        }
        Some(bundle) => {
            let (gas, coal) = match heat_fuel {
                HeatFuel::NaturalGas => (heat_gj + bundle.delta_gas_gj_per_t, bundle.delta_coal_gj_per_t),
                HeatFuel::Coal => (bundle.delta_gas_gj_per_t, heat_gj + bundle.delta_coal_gj_per_t),
            };
            (
                bundle.scope1_combustion_after_t_per_t,
                bundle.scope1_process_after_t_per_t,
                asset.electricity_intensity + bundle.delta_electricity_mwh_per_t,
                gas,
                coal,
                bundle.ppa_mwh_per_t > 0.0,
                bundle.co2_stored_t_per_t(),
            )
        }
    };
    // Deltas can cancel a purchased stream exactly; tiny negatives are
    // floating-point residue.
    gas_gj = gas_gj.max(0.0);
    coal_gj = coal_gj.max(0.0);

    let trajectories = &params.trajectories;
    let scope2_per_t = if ppa {
        0.0
    } else {
        elec_mwh * trajectories.grid_ci(asset.region, year)
    };
    let upstream_per_t = (asset.feedstock_intensity
        * trajectories.upstream_ef(&asset.feedstock_type)
        + gas_gj * trajectories.upstream_ef("natural_gas")
        + coal_gj * trajectories.upstream_ef("coal"))
        * trajectories.upstream_multiplier(year);

    // Circular/biogenic feedstock displaces a share of ethylene feedstock;
    // the displaced fossil share drops out of scope 1 and upstream scope 3.
    let fossil_share = if asset.chemical == Chemical::Ethylene {
        match params.circular_ramp(asset.region) {
            Some(ramp) => 1.0 - ramp.share(year),
            None => 1.0,
        }
    } else {
        1.0
    };

    Ok(EmissionsBreakdown {
        scope1_combustion: s1_comb * fossil_share * production,
        scope1_process: s1_proc * fossil_share * production,
        scope2: scope2_per_t * production,
        scope3_upstream: upstream_per_t * fossil_share * production,
        co2_stored: stored * production,
    })
}

/// Year-indexed emissions, tCO₂/y over 2023–2080, keyed by region,
/// chemical, and scope.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmissionsTable {
    cells: BTreeMap<(Region, Chemical, Scope), Vec<f64>>,
}

/// Aggregation dimensions retained by [`EmissionsTable::aggregate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupBy {
    Region,
    Chemical,
    Scope,
}

/// Key of one aggregated group; `None` marks a summed-over dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupKey {
    pub region: Option<Region>,
    pub chemical: Option<Chemical>,
    pub scope: Option<Scope>,
}

impl EmissionsTable {
    pub fn new() -> EmissionsTable {
        EmissionsTable::default()
    }

    /// Accumulate one asset-year inventory into the table.
    pub fn add(&mut self, region: Region, chemical: Chemical, year: i32, e: &EmissionsBreakdown) {
        let idx = (year - YEAR_MIN) as usize;
        for scope in Scope::ALL {
            let series = self
                .cells
                .entry((region, chemical, scope))
                .or_insert_with(|| vec![0.0; HORIZON_YEARS]);
            series[idx] += e.get(scope);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(Region, Chemical, Scope), &Vec<f64>)> {
        self.cells.iter()
    }

    /// Sum cells into groups over the retained dimensions; summing over
    /// everything yields the single world series.
    pub fn aggregate(&self, keys: &[GroupBy]) -> BTreeMap<GroupKey, Vec<f64>> {
        let mut grouped: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
        for ((region, chemical, scope), series) in &self.cells {
            let key = GroupKey {
                region: keys.contains(&GroupBy::Region).then_some(*region),
                chemical: keys.contains(&GroupBy::Chemical).then_some(*chemical),
                scope: keys.contains(&GroupBy::Scope).then_some(*scope),
            };
            let acc = grouped
                .entry(key)
                .or_insert_with(|| vec![0.0; HORIZON_YEARS]);
            for (a, v) in acc.iter_mut().zip(series) {
                *a += v;
            }
        }
        grouped
    }

    /// World total series, tCO₂/y over 2023–2080.
    pub fn total(&self) -> Vec<f64> {
        self.aggregate(&[])
            .into_values()
            .next()
            .unwrap_or_else(|| vec![0.0; HORIZON_YEARS])
    }

    /// Value of the world total in `year`.
    pub fn total_in(&self, year: i32) -> f64 {
        self.total()[(year - YEAR_MIN) as usize]
    }
}

/// Inclusive sum of annual values between `from` and `to`, for a series
/// starting at `start_year`.
pub fn cumulative(series: &[f64], start_year: i32, from: i32, to: i32) -> Result<f64> {
    if from > to {
        return Err(Error::InvertedRange { from, to });
    }
    let end_year = start_year + series.len() as i32 - 1;
    if from < start_year || to > end_year {
        let year = if from < start_year { from } else { to };
        return Err(Error::YearOutOfRange {
            year,
            min: start_year,
            max: end_year,
        });
    }
    let lo = (from - start_year) as usize;
    let hi = (to - start_year) as usize;
    Ok(series[lo..=hi].iter().sum())
}

/// Reference pathway with per-tonne emissions intensity frozen at 2023:
/// each (region, chemical) cell scales its 2023 well-to-gate inventory by
/// production growth, with no abatement and no trajectory declines.
#[derive(Debug, Clone, PartialEq)]
pub struct FrozenReference {
    /// tCO₂/y over 2023–2080 per cell.
    pub by_cell: BTreeMap<(Region, Chemical), Vec<f64>>,
}

impl FrozenReference {
    /// World total series, tCO₂/y over 2023–2080.
    pub fn total(&self) -> Vec<f64> {
        let mut out = vec![0.0; HORIZON_YEARS];
        for series in self.by_cell.values() {
            for (a, v) in out.iter_mut().zip(series) {
                *a += v;
            }
        }
        out
    }

    pub fn total_in(&self, year: i32) -> f64 {
        self.total()[(year - YEAR_MIN) as usize]
    }
}

/// Build the frozen-intensity reference from the 2023 asset base and
/// production series. Trajectory-coupled factors (grid CI, upstream
/// multiplier) are pinned at their 2023 values.
pub fn frozen_reference(
    assets: &AssetTable,
    series: &[ProductionSeries],
    params: &ScenarioParams,
) -> Result<FrozenReference> {
    // 2023 well-to-gate inventory and production per cell.
    let mut inventory_2023: BTreeMap<(Region, Chemical), f64> = BTreeMap::new();
    let mut production_2023: BTreeMap<(Region, Chemical), f64> = BTreeMap::new();
    for asset in assets.iter() {
        let e = asset_emissions(asset, YEAR_MIN, params, None)?;
        let key = (asset.region, asset.chemical);
        *inventory_2023.entry(key).or_insert(0.0) += e.total();
        *production_2023.entry(key).or_insert(0.0) += asset.production_t_per_y();
    }

    let mut by_cell = BTreeMap::new();
    for s in series {
        let region = match s.region {
            Some(r) => r,
            None => continue,
        };
        let key = (region, s.chemical);
        let (base_emissions, base_production) =
            match (inventory_2023.get(&key), production_2023.get(&key)) {
                (Some(e), Some(p)) if *p > 0.0 => (*e, *p),
                _ => continue,
            };
        let mut values = vec![0.0; HORIZON_YEARS];
        for (i, year) in (YEAR_MIN..=YEAR_MAX).enumerate() {
            values[i] = base_emissions * s.value(year) / base_production;
        }
        by_cell.insert(key, values);
    }
    Ok(FrozenReference { by_cell })
}
