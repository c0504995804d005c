//! Capital and levelized-cost arithmetic: annualization, economies of scale,
//! location factors, experience-curve learning, logistic outlay profiles,
//! CO₂ transport-and-storage pricing, and the per-project cost quote.
//!
//! All money is real 2024 dollars. The quote's levelized cost of abatement
//! divides annualized cost by annual scope-1 tonnes abated — scope-2/3
//! changes never enter the denominator.

use crate::catalog::{AbatementOption, PerformanceBundle, StorageSite};
use crate::error::Error;
use crate::types::Location;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Discounting and annualization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinanceParams {
    /// Real discount rate, fraction per year.
    pub discount_rate: f64,
    /// Capital recovery period, years.
    pub asset_life: u32,
    /// Money basis; fixed at 2024.
    pub dollar_year: i32,
}

impl Default for FinanceParams {
    fn default() -> Self {
        FinanceParams {
            discount_rate: 0.08,
            asset_life: 20,
            dollar_year: 2024,
        }
    }
}

impl FinanceParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.discount_rate > 0.0 && self.discount_rate < 1.0) {
            return Err(Error::config(
                "finance",
                format!("discount_rate {} outside (0, 1)", self.discount_rate),
            ));
        }
        if self.asset_life < 1 {
            return Err(Error::InvalidAssetLife(self.asset_life));
        }
        if self.dollar_year != 2024 {
            return Err(Error::config(
                "finance",
                format!("dollar_year must be 2024, got {}", self.dollar_year),
            ));
        }
        Ok(())
    }

    pub fn crf(&self) -> f64 {
        // Validated at load; the closed form below needs no further guards.
        crf(self.discount_rate, self.asset_life).expect("validated params")
    }
}

/// Scope across which deployment counts accumulate for cost learning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearningPooling {
    Global,
    PerRegion,
}

/// Two-phase experience curve: shallow while a technology is in its early
/// mover phase, steeper once `early_phase_count` projects are online.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearningParams {
    /// Cost reduction per doubling during the early phase.
    pub lr_early: f64,
    /// Cost reduction per doubling afterwards.
    pub lr_mature: f64,
    /// Number of projects that ends the early phase.
    pub early_phase_count: u64,
    pub pooling: LearningPooling,
}

impl LearningParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.lr_early && self.lr_early <= self.lr_mature && self.lr_mature < 1.0) {
            return Err(Error::config(
                "learning",
                format!(
                    "rates must satisfy 0 <= lr_early <= lr_mature < 1, got {} / {}",
                    self.lr_early, self.lr_mature
                ),
            ));
        }
        if self.early_phase_count < 1 {
            return Err(Error::config("learning", "early_phase_count must be >= 1"));
        }
        Ok(())
    }
}

/// CO₂ pipeline tariff and the reference volume for the throughput factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportParams {
    /// $ per tonne CO₂ per kilometre at reference volume.
    pub tariff_per_t_km: f64,
    /// Annual volume at which the tariff applies as-is, tCO₂/y.
    pub ref_volume_t_per_y: f64,
}

impl TransportParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tariff_per_t_km >= 0.0) || !(self.ref_volume_t_per_y > 0.0) {
            return Err(Error::config("prices", "invalid transport parameters"));
        }
        Ok(())
    }
}

/// Capital recovery factor r(1+r)ⁿ/((1+r)ⁿ−1); 1/n in the zero-rate limit.
pub fn crf(r: f64, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidAssetLife(n));
    }
    if !(r >= 0.0) {
        return Err(Error::config("finance", format!("negative rate {r}")));
    }
    if r == 0.0 {
        return Ok(1.0 / n as f64);
    }
    let growth = (1.0 + r).powi(n as i32);
    Ok(r * growth / (growth - 1.0))
}

/// Power-law economies of scale from a reference point.
pub fn scale_capex(ref_capex: f64, ref_capacity: f64, capacity: f64, exponent: f64) -> Result<f64> {
    if !(capacity > 0.0) {
        return Err(Error::NonpositiveCapacity(capacity));
    }
    if !(ref_capex > 0.0) || !(ref_capacity > 0.0) {
        return Err(Error::NonpositiveCapacity(ref_capacity.min(ref_capex)));
    }
    if !(exponent > 0.0 && exponent <= 1.0) {
        return Err(Error::config(
            "catalog",
            format!("scale exponent {exponent} outside (0, 1]"),
        ));
    }
    Ok(ref_capex * (capacity / ref_capacity).powf(exponent))
}

/// Translate reference (North American) capital cost to a region.
pub fn locate_capex(capex: f64, location_factor: f64) -> Result<f64> {
    if !(location_factor > 0.0) {
        return Err(Error::config(
            "prices",
            format!("location factor {location_factor} must be > 0"),
        ));
    }
    Ok(capex * location_factor)
}

/// Capital-cost multiplier after `n_prior` same-technology projects are
/// online within the pooling scope. FOAK (no priors) is exactly 1; the curve
/// follows (n+1)^(−b_early) through the early phase and continues from the
/// phase boundary at the mature slope, so it is continuous and nonincreasing.
pub fn learning_multiplier(n_prior: u64, lp: &LearningParams) -> f64 {
    let b_early = -(1.0 - lp.lr_early).log2();
    let b_mature = -(1.0 - lp.lr_mature).log2();
    let n = (n_prior + 1) as f64;
    let boundary = lp.early_phase_count as f64;
    if n <= boundary {
        n.powf(-b_early)
    } else {
        boundary.powf(-b_early) * (n / boundary).powf(-b_mature)
    }
}

/// Default logistic steepness for capital outlay profiles.
pub const DEFAULT_OUTLAY_STEEPNESS: f64 = 6.0;

/// Spread `total` over `dev_years` annual outlays following a logistic
/// cumulative shape; the final year absorbs rounding so the sum is exact.
pub fn outlay_profile(total: f64, dev_years: u32, steepness: f64) -> Result<Vec<f64>> {
    if dev_years < 1 {
        return Err(Error::InvalidDevYears(dev_years));
    }
    if !(total > 0.0) {
        return Err(Error::config("costing", format!("outlay total {total} must be > 0")));
    }
    let t_max = dev_years as f64;
    let shape = |t: f64| 1.0 / (1.0 + (-steepness * (t / t_max - 0.5)).exp());
    let span = shape(t_max) - shape(0.0);
    let mut outlays = Vec::with_capacity(dev_years as usize);
    let mut running = 0.0;
    for t in 1..=dev_years {
        if t == dev_years {
            outlays.push(total - running);
        } else {
            let share = (shape(t as f64) - shape(t as f64 - 1.0)) / span;
            let y = total * share;
            outlays.push(y);
            running += y;
        }
    }
    Ok(outlays)
}

/// Throughput factor on the pipeline tariff: small flows pay up to 2×, large
/// flows as little as 0.5×.
pub fn volume_factor(annual_co2_t_per_y: f64, ref_volume_t_per_y: f64) -> f64 {
    (annual_co2_t_per_y / ref_volume_t_per_y)
        .powf(-0.25)
        .clamp(0.5, 2.0)
}

/// Cheapest transport-and-storage route for a flow originating at
/// `location`. `headroom` reports each site's remaining injection capacity,
/// t/y; sites without room for the whole flow are skipped.
pub fn ts_unit_cost<'a>(
    location: &Location,
    sites: &'a [StorageSite],
    headroom: impl Fn(&StorageSite) -> f64,
    annual_co2_t_per_y: f64,
    tp: &TransportParams,
) -> Result<(f64, &'a StorageSite)> {
    if sites.is_empty() {
        return Err(Error::NoStorageSites);
    }
    if !(annual_co2_t_per_y > 0.0) {
        return Err(Error::NonpositiveCapacity(annual_co2_t_per_y));
    }
    let vf = volume_factor(annual_co2_t_per_y, tp.ref_volume_t_per_y);
    let mut best: Option<(f64, &StorageSite)> = None;
    for site in sites {
        if headroom(site) < annual_co2_t_per_y {
            continue;
        }
        let km = location.great_circle_km(&site.location());
        let cost = site.unit_storage_cost + tp.tariff_per_t_km * km * vf;
        if best.map_or(true, |(c, _)| cost < c) {
            best = Some((cost, site));
        }
    }
    best.ok_or(Error::StorageExhausted {
        needed_t_per_y: annual_co2_t_per_y,
    })
}

/// Regional inputs a quote needs beyond the option and its performance.
#[derive(Debug, Clone, Copy)]
pub struct QuoteContext {
    pub finance: FinanceParams,
    pub learning: LearningParams,
    /// Regional capex multiplier; exactly 1 for North America.
    pub location_factor: f64,
    /// $ per GJ natural gas / fuel gas.
    pub gas_per_gj: f64,
    /// $ per GJ coal.
    pub coal_per_gj: f64,
    /// $ per MWh grid electricity.
    pub electricity_per_mwh: f64,
    /// $ per MWh under a power purchase agreement.
    pub ppa_per_mwh: f64,
    /// Contracted-generation capital, $ per kW.
    pub ppa_capex_per_kw: f64,
    /// Fleet capacity factor of the contracted generation.
    pub ppa_capacity_factor: f64,
    /// Unit transport-and-storage cost for this facility's CO₂, $/t.
    pub ts_cost_per_t: f64,
}

/// Fully costed option-at-asset quote. `lcoa` is recomputable from the
/// components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostQuote {
    /// Installed capital, $ (abatement plant after scale, location, and
    /// learning adjustments, plus contracted generation where required).
    pub total_capex: f64,
    pub annual_fixed_om: f64,
    pub annual_energy_delta_cost: f64,
    pub annual_ts_cost: f64,
    /// Net scope-1 abatement, tCO₂/y.
    pub abated_scope1: f64,
    /// tCO₂ sent to storage per year.
    pub co2_stored: f64,
    /// $ per tCO₂ of scope-1 abated.
    pub lcoa: f64,
}

/// Price a (option, asset) pairing after `n_prior` same-technology projects.
pub fn quote(
    option: &AbatementOption,
    bundle: &PerformanceBundle,
    n_prior: u64,
    ctx: &QuoteContext,
) -> Result<CostQuote> {
    let abated = bundle.net_abated_t_per_y();
    if !(abated > 0.0) {
        return Err(Error::ZeroAbatement {
            tech: option.tech_id.to_string(),
        });
    }
    let production = bundle.production_t_per_y;

    let scaled = scale_capex(
        option.reference_capex,
        option.reference_capacity,
        bundle.scale_capacity_per_y,
        option.scale_exponent,
    )? * bundle.capex_multiplier;
    let located = locate_capex(scaled, ctx.location_factor)?;
    let learned = located * learning_multiplier(n_prior, &ctx.learning);

    // Contracted generation is mature technology: sized to annual demand,
    // costed at flat $/kW, and exempt from abatement-plant learning.
    let ppa_mwh = bundle.ppa_mwh_per_y();
    let ppa_capex = if ppa_mwh > 0.0 {
        let kw = ppa_mwh * 1000.0 / (8760.0 * ctx.ppa_capacity_factor);
        kw * ctx.ppa_capex_per_kw
    } else {
        0.0
    };
    let total_capex = learned + ppa_capex;

    let annual_fixed_om = option.fixed_om_fraction * total_capex;

    let gas_cost = bundle.delta_gas_gj_per_t * production * ctx.gas_per_gj;
    let coal_cost = bundle.delta_coal_gj_per_t * production * ctx.coal_per_gj;
    let elec_cost = if ppa_mwh > 0.0 {
        // The whole post-abatement load moves onto the contract; the prior
        // grid bill is credited.
        let baseline_mwh = (bundle.ppa_mwh_per_t - bundle.delta_electricity_mwh_per_t) * production;
        ppa_mwh * ctx.ppa_per_mwh - baseline_mwh * ctx.electricity_per_mwh
    } else {
        bundle.delta_electricity_mwh_per_y() * ctx.electricity_per_mwh
    };
    let feedstock_cost = bundle.delta_feedstock_cost_per_t * production;
    let annual_energy_delta_cost = gas_cost + coal_cost + elec_cost + feedstock_cost;

    let co2_stored = bundle.co2_stored_t_per_y();
    let annual_ts_cost = ctx.ts_cost_per_t * co2_stored;

    let annualized = total_capex * ctx.finance.crf()
        + annual_fixed_om
        + annual_energy_delta_cost
        + annual_ts_cost;
    Ok(CostQuote {
        total_capex,
        annual_fixed_om,
        annual_energy_delta_cost,
        annual_ts_cost,
        abated_scope1: abated,
        co2_stored,
        lcoa: annualized / abated,
    })
}
