//! Production trajectories to 2080 and derived new-build requirements.
//!
//! Each (region, chemical) pair carries a piecewise-exponential demand path:
//! one annual growth rate through 2050, a second one after. Demand is met by
//! existing assets first; shortfalls trigger world-scale capacity additions
//! in the first year of shortfall.

use crate::error::Error;
use crate::types::{Chemical, Region};
use crate::{Result, YEAR_MAX, YEAR_MIN};
use serde::{Deserialize, Serialize};

/// Piecewise annual growth for one (region, chemical) demand path. The
/// anchor is 2023 production; in `growth.json` it may be omitted (zero) and
/// is then replaced by the dataset's observed 2023 production at run time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthSchedule {
    /// Tonnes product per year in 2023.
    #[serde(default)]
    pub anchor_t_per_y: f64,
    /// Fraction per year applied through the 2049→2050 step.
    pub rate_to_2050: f64,
    /// Fraction per year applied from the 2050→2051 step onward.
    pub rate_after_2050: f64,
}

impl GrowthSchedule {
    pub fn new(anchor_t_per_y: f64, rate_to_2050: f64, rate_after_2050: f64) -> Result<Self> {
        let schedule = GrowthSchedule {
            anchor_t_per_y,
            rate_to_2050,
            rate_after_2050,
        };
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn validate(&self) -> Result<()> {
        for rate in [self.rate_to_2050, self.rate_after_2050] {
            if !(-0.10..=0.10).contains(&rate) || !rate.is_finite() {
                return Err(Error::config(
                    "growth",
                    format!("growth rate {rate} outside [-0.10, 0.10]"),
                ));
            }
        }
        if !(self.anchor_t_per_y >= 0.0) {
            return Err(Error::config(
                "growth",
                format!("anchor {} must be >= 0", self.anchor_t_per_y),
            ));
        }
        Ok(())
    }

    pub fn with_anchor(&self, anchor_t_per_y: f64) -> GrowthSchedule {
        GrowthSchedule {
            anchor_t_per_y,
            ..*self
        }
    }

    /// Rate applied on the y → y+1 step.
    fn rate_in(&self, year: i32) -> f64 {
        if year < 2050 {
            self.rate_to_2050
        } else {
            self.rate_after_2050
        }
    }
}

/// Annual production, tonnes per year, over a contiguous year range.
/// `region = None` marks a cross-region aggregate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductionSeries {
    pub region: Option<Region>,
    pub chemical: Chemical,
    pub start_year: i32,
    pub values: Vec<f64>,
}

impl ProductionSeries {
    pub fn end_year(&self) -> i32 {
        self.start_year + self.values.len() as i32 - 1
    }

    pub fn value(&self, year: i32) -> f64 {
        assert!(
            year >= self.start_year && year <= self.end_year(),
            "year {year} outside series range {}..={}",
            self.start_year,
            self.end_year()
        );
        self.values[(year - self.start_year) as usize]
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        self.start_year..=self.end_year()
    }
}

/// Compound the growth schedule into a 2023–2080 production path.
pub fn production_series(
    region: Option<Region>,
    chemical: Chemical,
    g: &GrowthSchedule,
) -> Result<ProductionSeries> {
    g.validate()?;
    let mut values = Vec::with_capacity((YEAR_MAX - YEAR_MIN + 1) as usize);
    let mut current = g.anchor_t_per_y;
    for year in YEAR_MIN..=YEAR_MAX {
        values.push(current);
        current *= 1.0 + g.rate_in(year);
    }
    Ok(ProductionSeries {
        region,
        chemical,
        start_year: YEAR_MIN,
        values,
    })
}

/// Relative slack used when comparing effective capacity against demand, so
/// that paths meant to sit exactly on the capacity line do not trigger
/// builds through float dust.
const COVERAGE_EPS: f64 = 1e-9;

fn covered(effective_capacity: f64, production: f64) -> bool {
    effective_capacity >= production - COVERAGE_EPS * production.abs().max(1.0)
}

/// Capacity additions needed so that `(existing + built) × utilization`
/// covers production in every year. Builds come in integer multiples of
/// `world_scale`, placed in the first year of shortfall, minimal in count.
pub fn newbuild_requirements(
    p: &ProductionSeries,
    existing_capacity_t_per_y: f64,
    utilization: f64,
    world_scale_t_per_y: f64,
) -> Result<Vec<(i32, f64)>> {
    if !(world_scale_t_per_y > 0.0) {
        return Err(Error::NonpositiveCapacity(world_scale_t_per_y));
    }
    if !(utilization > 0.0 && utilization <= 1.0) {
        return Err(Error::config(
            "projections",
            format!("utilization {utilization} outside (0, 1]"),
        ));
    }
    let mut builds = Vec::new();
    let mut capacity = existing_capacity_t_per_y;
    for year in p.years() {
        let demand = p.value(year);
        while !covered(capacity * utilization, demand) {
            builds.push((year, world_scale_t_per_y));
            capacity += world_scale_t_per_y;
        }
    }
    Ok(builds)
}

/// Elementwise sum of same-chemical series across regions.
pub fn world_production(series: &[ProductionSeries]) -> Result<ProductionSeries> {
    let first = series.first().ok_or(Error::YearRangeMismatch)?;
    let mut values = first.values.clone();
    for s in &series[1..] {
        if s.start_year != first.start_year || s.values.len() != first.values.len() {
            return Err(Error::YearRangeMismatch);
        }
        for (total, v) in values.iter_mut().zip(&s.values) {
            *total += v;
        }
    }
    Ok(ProductionSeries {
        region: None,
        chemical: first.chemical,
        start_year: first.start_year,
        values,
    })
}
