//! Run configuration: regional prices, demand growth, and intensity
//! trajectories, loaded from JSON with strict schemas (unknown keys are
//! errors, never silently ignored).
//!
//! North America is the capital-cost reference region, so its location
//! factor must be exactly 1; every other number here is a documented default
//! standing in for unavailable primary data and is meant to be overridden
//! from files.

use crate::costing::{FinanceParams, QuoteContext, LearningParams, TransportParams};
use crate::error::Error;
use crate::projections::GrowthSchedule;
use crate::types::{Chemical, Region};
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })?;
    std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Energy and capital prices for one region, 2024 $.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionPrices {
    /// $ per GJ natural gas / fuel gas.
    pub gas_per_gj: f64,
    /// $ per GJ coal.
    pub coal_per_gj: f64,
    /// $ per MWh grid electricity.
    pub electricity_per_mwh: f64,
    /// $ per MWh of contracted clean generation.
    pub ppa_per_mwh: f64,
    /// $ per kW of contracted generation capacity.
    pub ppa_capex_per_kw: f64,
    /// Fleet capacity factor of the contracted generation mix.
    pub ppa_capacity_factor: f64,
    /// Capital-cost multiplier relative to North America.
    pub location_factor: f64,
}

impl RegionPrices {
    pub fn validate(&self, region: Region) -> Result<()> {
        let nonnegative = [
            ("gas_per_gj", self.gas_per_gj),
            ("coal_per_gj", self.coal_per_gj),
            ("electricity_per_mwh", self.electricity_per_mwh),
            ("ppa_per_mwh", self.ppa_per_mwh),
            ("ppa_capex_per_kw", self.ppa_capex_per_kw),
        ];
        for (name, value) in nonnegative {
            if !(value >= 0.0) {
                return Err(Error::config("prices", format!("{region}: {name} {value} < 0")));
            }
        }
        if !(self.ppa_capacity_factor > 0.0 && self.ppa_capacity_factor <= 1.0) {
            return Err(Error::config(
                "prices",
                format!("{region}: ppa_capacity_factor outside (0, 1]"),
            ));
        }
        if !(self.location_factor > 0.0) {
            return Err(Error::config(
                "prices",
                format!("{region}: location_factor must be > 0"),
            ));
        }
        if region == Region::NorthAmerica && self.location_factor != 1.0 {
            return Err(Error::config(
                "prices",
                "NorthAmerica location_factor must be exactly 1 (reference region)",
            ));
        }
        Ok(())
    }

    /// Assemble the costing context for this region.
    pub fn quote_context(
        &self,
        finance: FinanceParams,
        learning: LearningParams,
        ts_cost_per_t: f64,
    ) -> QuoteContext {
        QuoteContext {
            finance,
            learning,
            location_factor: self.location_factor,
            gas_per_gj: self.gas_per_gj,
            coal_per_gj: self.coal_per_gj,
            electricity_per_mwh: self.electricity_per_mwh,
            ppa_per_mwh: self.ppa_per_mwh,
            ppa_capex_per_kw: self.ppa_capex_per_kw,
            ppa_capacity_factor: self.ppa_capacity_factor,
            ts_cost_per_t,
        }
    }
}

/// `prices.json`: pipeline tariff plus per-region prices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PricesConfig {
    pub transport: TransportParams,
    pub regions: BTreeMap<Region, RegionPrices>,
}

impl PricesConfig {
    pub fn load(path: &Path) -> Result<PricesConfig> {
        let config: PricesConfig = read_json(path)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.transport.validate()?;
        for region in Region::ALL {
            let prices = self
                .regions
                .get(&region)
                .ok_or_else(|| Error::MissingPrices(region.to_string()))?;
            prices.validate(region)?;
        }
        Ok(())
    }

    pub fn region(&self, region: Region) -> Result<&RegionPrices> {
        self.regions
            .get(&region)
            .ok_or_else(|| Error::MissingPrices(region.to_string()))
    }
}

/// `growth.json`: demand growth per (region, chemical) plus the world-scale
/// unit size used for capacity additions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthConfig {
    /// Tonnes product per year of one world-scale new build, per chemical.
    pub world_scale_t_per_y: BTreeMap<Chemical, f64>,
    pub schedules: BTreeMap<Region, BTreeMap<Chemical, GrowthSchedule>>,
}

impl GrowthConfig {
    pub fn load(path: &Path) -> Result<GrowthConfig> {
        let config: GrowthConfig = read_json(path)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        for (chemical, scale) in &self.world_scale_t_per_y {
            if !(*scale > 0.0) {
                return Err(Error::config(
                    "growth",
                    format!("world scale for {chemical} must be > 0"),
                ));
            }
        }
        for by_chemical in self.schedules.values() {
            for schedule in by_chemical.values() {
                schedule.validate()?;
            }
        }
        Ok(())
    }

    pub fn schedule(&self, region: Region, chemical: Chemical) -> Result<&GrowthSchedule> {
        self.schedules
            .get(&region)
            .and_then(|m| m.get(&chemical))
            .ok_or_else(|| {
                Error::config("growth", format!("no schedule for ({region}, {chemical})"))
            })
    }

    pub fn world_scale(&self, chemical: Chemical) -> Result<f64> {
        self.world_scale_t_per_y.get(&chemical).copied().ok_or_else(|| {
            Error::config("growth", format!("no world-scale capacity for {chemical}"))
        })
    }
}

/// Geometric grid-intensity decline toward a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridTrajectory {
    /// Fractional decline per year from the 2023 anchor.
    pub decline_per_y: f64,
    /// tCO₂/MWh floor.
    pub floor_t_per_mwh: f64,
}

/// Linear decline of upstream (scope-3) intensity relative to a 2020 anchor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpstreamTrajectory {
    /// Multiplier lost per year after 2020.
    pub slope_per_y: f64,
    /// Lowest multiplier ever reached.
    pub floor: f64,
}

/// Scope-2/3 intensity trajectories for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoriesConfig {
    /// Grid carbon intensity in 2023, tCO₂ per MWh, per region.
    pub grid_ci_2023_t_per_mwh: BTreeMap<Region, f64>,
    pub grid: GridTrajectory,
    pub upstream: UpstreamTrajectory,
    /// Upstream (production + delivery) emission factors at the 2020 anchor,
    /// tCO₂ per GJ, by fuel or feedstock token.
    pub upstream_ef_t_per_gj: BTreeMap<String, f64>,
}

impl TrajectoriesConfig {
    pub fn validate(&self) -> Result<()> {
        for region in Region::ALL {
            let ci = self.grid_ci_2023_t_per_mwh.get(&region).ok_or_else(|| {
                Error::config("trajectories", format!("missing grid CI for {region}"))
            })?;
            if !(*ci >= 0.0) {
                return Err(Error::config("trajectories", format!("{region}: negative grid CI")));
            }
        }
        if !(0.0..=1.0).contains(&self.grid.decline_per_y) || !(self.grid.floor_t_per_mwh >= 0.0) {
            return Err(Error::config("trajectories", "invalid grid trajectory"));
        }
        if !(self.upstream.slope_per_y >= 0.0) || !(0.0..=1.0).contains(&self.upstream.floor) {
            return Err(Error::config("trajectories", "invalid upstream trajectory"));
        }
        for (token, ef) in &self.upstream_ef_t_per_gj {
            if !(*ef >= 0.0) {
                return Err(Error::config(
                    "trajectories",
                    format!("upstream factor for `{token}` < 0"),
                ));
            }
        }
        Ok(())
    }

    /// Grid carbon intensity, tCO₂/MWh. Anchored at 2023, geometric decline,
    /// floored.
    pub fn grid_ci(&self, region: Region, year: i32) -> f64 {
        let anchor = self
            .grid_ci_2023_t_per_mwh
            .get(&region)
            .copied()
            .unwrap_or(0.0);
        let elapsed = (year - 2023).max(0);
        (anchor * (1.0 - self.grid.decline_per_y).powi(elapsed)).max(self.grid.floor_t_per_mwh)
    }

    /// Upstream intensity multiplier relative to the 2020 anchor; ≤ 1,
    /// declining linearly to the floor.
    pub fn upstream_multiplier(&self, year: i32) -> f64 {
        let elapsed = (year - 2020).max(0) as f64;
        (1.0 - self.upstream.slope_per_y * elapsed).max(self.upstream.floor)
    }

    /// Upstream factor for a fuel/feedstock token; unlisted tokens (brine)
    /// carry no upstream burden.
    pub fn upstream_ef(&self, token: &str) -> f64 {
        self.upstream_ef_t_per_gj.get(token).copied().unwrap_or(0.0)
    }
}

/// Load `finance.json`.
pub fn load_finance(path: &Path) -> Result<FinanceParams> {
    let params: FinanceParams = read_json(path)?;
    params.validate()?;
    Ok(params)
}
