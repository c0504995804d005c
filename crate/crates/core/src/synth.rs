//! Synthetic asset-table generation: a stand-in for proprietary plant-level
//! production databases.
//!
//! Generation is stratified by (region, chemical, process). Each stratum
//! yields an exact facility count with log-normal capacities, uniform
//! utilizations and intensity bands, and locations rejection-sampled inside
//! a polygon. A stratum may instead attach its assets to facilities created
//! by an earlier stratum, which is how multi-chemical sites (e.g. crackers
//! with co-product recovery) arise. Everything is a pure function of
//! (spec, seed): one ChaCha stream, consumed in listed stratum order.

use crate::dataset::{AssetRecord, AssetTable, FEEDSTOCK_TOKENS, PROCESS_TOKENS};
use crate::error::Error;
use crate::types::{Chemical, Location, Region};
use crate::Result;
use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::LogNormal;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// Owner names are cosmetic; a fixed invented pool keeps output plausible
/// without naming anyone real.
const OWNER_POOL: [&str; 12] = [
    "meridian_chem",
    "northcape_petchem",
    "alto_basin_chemicals",
    "crestline_industries",
    "bluewater_olefins",
    "halcyon_process",
    "terravale_group",
    "southarc_chemical",
    "ironline_petchem",
    "vantage_molecular",
    "clearfork_chemicals",
    "pacifica_synthesis",
];

/// Rejection-sampling attempts per location before the polygon is declared
/// too thin to hit.
const MAX_POLYGON_ATTEMPTS: u32 = 100_000;

/// Symmetric uniform band: samples lie in [mean - spread, mean + spread].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntensityBand {
    pub mean: f64,
    #[serde(default)]
    pub spread: f64,
}

impl IntensityBand {
    pub const fn exact(mean: f64) -> IntensityBand {
        IntensityBand { mean, spread: 0.0 }
    }

    fn validate(&self, stratum: &str, field: &str) -> Result<()> {
        if !self.mean.is_finite() || !self.spread.is_finite() {
            return Err(Error::SynthesisSpec(format!(
                "{stratum}: {field} must be finite"
            )));
        }
        if self.spread < 0.0 || self.mean - self.spread < 0.0 {
            return Err(Error::SynthesisSpec(format!(
                "{stratum}: {field} band extends below zero"
            )));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.spread == 0.0 {
            return self.mean;
        }
        rng.gen_range(self.mean - self.spread..=self.mean + self.spread)
    }
}

/// One (region, chemical, process) generation cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub stratum_id: String,
    pub region: Region,
    pub chemical: Chemical,
    pub process: String,
    pub feedstock_type: String,
    /// Number of facilities (one asset each) this stratum creates.
    pub facility_count: u32,
    /// Attach assets to the first `facility_count` facilities of the named
    /// earlier stratum instead of creating new sites.
    #[serde(default)]
    pub attach_to: Option<String>,
    /// Median of the log-normal capacity distribution, t product per year.
    pub capacity_median_t_per_y: f64,
    /// Standard deviation of ln(capacity).
    pub capacity_dispersion: f64,
    pub utilization_min: f64,
    pub utilization_max: f64,
    /// GJ per tonne product.
    pub feedstock_intensity: IntensityBand,
    /// MWh per tonne product.
    pub electricity_intensity: IntensityBand,
    /// GJ per tonne product.
    pub steam_intensity: IntensityBand,
    /// GJ per tonne product, excluding steam-raising fuel.
    pub fuel_intensity: IntensityBand,
    /// tCO₂ per tonne product.
    pub process_co2_intensity: IntensityBand,
    /// Closed ring of [latitude, longitude] vertices; locations are sampled
    /// uniformly inside. Ignored when `attach_to` is set.
    #[serde(default)]
    pub polygon: Vec<[f64; 2]>,
    pub startup_year_min: i32,
    pub startup_year_max: i32,
}

impl Stratum {
    fn validate(&self) -> Result<()> {
        let id = &self.stratum_id;
        let fail = |msg: String| Err(Error::SynthesisSpec(msg));
        if id.is_empty() {
            return fail("stratum_id must be non-empty".into());
        }
        if !PROCESS_TOKENS.contains(&self.process.as_str()) {
            return fail(format!("{id}: unknown process token {:?}", self.process));
        }
        if !FEEDSTOCK_TOKENS.contains(&self.feedstock_type.as_str()) {
            return fail(format!(
                "{id}: unknown feedstock token {:?}",
                self.feedstock_type
            ));
        }
        if !(self.capacity_median_t_per_y > 0.0) {
            return fail(format!("{id}: capacity median must be > 0"));
        }
        if !(self.capacity_dispersion >= 0.0) || !self.capacity_dispersion.is_finite() {
            return fail(format!("{id}: capacity dispersion must be >= 0"));
        }
        if !(self.utilization_min > 0.0
            && self.utilization_min <= self.utilization_max
            && self.utilization_max <= 1.0)
        {
            return fail(format!("{id}: utilization range outside (0, 1]"));
        }
        self.feedstock_intensity.validate(id, "feedstock_intensity")?;
        self.electricity_intensity.validate(id, "electricity_intensity")?;
        self.steam_intensity.validate(id, "steam_intensity")?;
        self.fuel_intensity.validate(id, "fuel_intensity")?;
        self.process_co2_intensity.validate(id, "process_co2_intensity")?;
        if self.startup_year_min > self.startup_year_max || self.startup_year_max > 2023 {
            return fail(format!("{id}: startup years must be ordered and <= 2023"));
        }
        if self.attach_to.is_none() {
            validate_polygon(id, &self.polygon)?;
        }
        Ok(())
    }
}

/// Full generation recipe: strata are processed in listed order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisSpec {
    pub seed: u64,
    pub strata: Vec<Stratum>,
}

impl SynthesisSpec {
    pub fn load(path: &Path) -> Result<SynthesisSpec> {
        let spec: SynthesisSpec = crate::config::read_json(path)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.strata.iter().map(|s| s.facility_count as u64).sum::<u64>() == 0 {
            return Err(Error::SynthesisSpec("spec generates no assets".into()));
        }
        let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
        for stratum in &self.strata {
            stratum.validate()?;
            if counts.contains_key(stratum.stratum_id.as_str()) {
                return Err(Error::SynthesisSpec(format!(
                    "duplicate stratum_id {:?}",
                    stratum.stratum_id
                )));
            }
            if let Some(host) = &stratum.attach_to {
                let host_count = counts.get(host.as_str()).copied().ok_or_else(|| {
                    Error::SynthesisSpec(format!(
                        "{}: attach_to target {host:?} not defined earlier",
                        stratum.stratum_id
                    ))
                })?;
                if stratum.facility_count > host_count {
                    return Err(Error::SynthesisSpec(format!(
                        "{}: attaches {} assets to {host:?} which has only {host_count} facilities",
                        stratum.stratum_id, stratum.facility_count
                    )));
                }
            }
            counts.insert(&stratum.stratum_id, stratum.facility_count);
        }
        Ok(())
    }

    /// Total asset rows the spec generates.
    pub fn asset_count(&self) -> u64 {
        self.strata.iter().map(|s| s.facility_count as u64).sum()
    }

    /// Total distinct facilities (attached strata reuse host facilities).
    pub fn facility_count(&self) -> u64 {
        self.strata
            .iter()
            .filter(|s| s.attach_to.is_none())
            .map(|s| s.facility_count as u64)
            .sum()
    }
}

fn validate_polygon(stratum: &str, polygon: &[[f64; 2]]) -> Result<()> {
    if polygon.len() < 3 {
        return Err(Error::SynthesisSpec(format!(
            "{stratum}: polygon needs at least 3 vertices"
        )));
    }
    for &[lat, lon] in polygon {
        if !Location::new(lat, lon).is_valid() {
            return Err(Error::SynthesisSpec(format!(
                "{stratum}: polygon vertex ({lat}, {lon}) out of range"
            )));
        }
    }
    let (lat_lo, lat_hi, lon_lo, lon_hi) = bounding_box(polygon);
    if lat_lo >= lat_hi || lon_lo >= lon_hi {
        return Err(Error::SynthesisSpec(format!(
            "{stratum}: polygon has no area"
        )));
    }
    Ok(())
}

fn bounding_box(polygon: &[[f64; 2]]) -> (f64, f64, f64, f64) {
    let mut lat_lo = f64::INFINITY;
    let mut lat_hi = f64::NEG_INFINITY;
    let mut lon_lo = f64::INFINITY;
    let mut lon_hi = f64::NEG_INFINITY;
    for &[lat, lon] in polygon {
        lat_lo = lat_lo.min(lat);
        lat_hi = lat_hi.max(lat);
        lon_lo = lon_lo.min(lon);
        lon_hi = lon_hi.max(lon);
    }
    (lat_lo, lat_hi, lon_lo, lon_hi)
}

/// Even-odd ray casting in plate-carrée coordinates; adequate for the
/// regional, non-antimeridian polygons used here.
fn point_in_polygon(lat: f64, lon: f64, polygon: &[[f64; 2]]) -> bool {
    let mut inside = false;
    let n = polygon.len();
    let mut j = n - 1;
    for i in 0..n {
        let [lat_i, lon_i] = polygon[i];
        let [lat_j, lon_j] = polygon[j];
        if (lat_i > lat) != (lat_j > lat) {
            let lon_cross = lon_j + (lat - lat_j) / (lat_i - lat_j) * (lon_i - lon_j);
            if lon < lon_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn sample_location(
    stratum: &str,
    polygon: &[[f64; 2]],
    rng: &mut ChaCha8Rng,
) -> Result<Location> {
    let (lat_lo, lat_hi, lon_lo, lon_hi) = bounding_box(polygon);
    let lat_dist = Uniform::new_inclusive(lat_lo, lat_hi);
    let lon_dist = Uniform::new_inclusive(lon_lo, lon_hi);
    for _ in 0..MAX_POLYGON_ATTEMPTS {
        let lat = lat_dist.sample(rng);
        let lon = lon_dist.sample(rng);
        if point_in_polygon(lat, lon, polygon) {
            return Ok(Location::new(lat, lon));
        }
    }
    Err(Error::SynthesisSpec(format!(
        "{stratum}: polygon rejection sampling failed to land inside"
    )))
}

/// Generate the asset table the spec describes. Pure in (spec, seed):
/// identical inputs give byte-identical tables.
pub fn synthesize_assets(spec: &SynthesisSpec) -> Result<AssetTable> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut records: Vec<AssetRecord> = Vec::with_capacity(spec.asset_count() as usize);
    // Facilities created by each root stratum, in creation order, for
    // attached strata to reuse.
    let mut hosts: BTreeMap<String, Vec<(String, Location)>> = BTreeMap::new();

    for stratum in &spec.strata {
        let capacity_dist = LogNormal::new(
            stratum.capacity_median_t_per_y.ln(),
            stratum.capacity_dispersion,
        )
        .map_err(|e| {
            Error::SynthesisSpec(format!("{}: capacity distribution: {e}", stratum.stratum_id))
        })?;
        let mut created: Vec<(String, Location)> = Vec::new();
        for i in 0..stratum.facility_count {
            let (facility_id, location) = match &stratum.attach_to {
                Some(host) => hosts[host][i as usize].clone(),
                None => {
                    let facility_id = format!("F_{}_{:04}", stratum.stratum_id, i);
                    let location =
                        sample_location(&stratum.stratum_id, &stratum.polygon, &mut rng)?;
                    (facility_id, location)
                }
            };
            let capacity = capacity_dist.sample(&mut rng);
            let utilization = if stratum.utilization_min == stratum.utilization_max {
                stratum.utilization_min
            } else {
                rng.gen_range(stratum.utilization_min..=stratum.utilization_max)
            };
            let startup_year =
                rng.gen_range(stratum.startup_year_min..=stratum.startup_year_max);
            let owner = OWNER_POOL[rng.gen_range(0..OWNER_POOL.len())].to_string();
            records.push(AssetRecord {
                asset_id: format!("A_{}_{:04}", stratum.stratum_id, i),
                facility_id: facility_id.clone(),
                owner,
                region: stratum.region,
                latitude: location.latitude,
                longitude: location.longitude,
                startup_year,
                chemical: stratum.chemical,
                process: stratum.process.clone(),
                capacity,
                utilization,
                feedstock_type: stratum.feedstock_type.clone(),
                feedstock_intensity: stratum.feedstock_intensity.sample(&mut rng),
                electricity_intensity: stratum.electricity_intensity.sample(&mut rng),
                steam_intensity: stratum.steam_intensity.sample(&mut rng),
                fuel_intensity: stratum.fuel_intensity.sample(&mut rng),
                process_co2_intensity: stratum.process_co2_intensity.sample(&mut rng),
            });
            created.push((facility_id, location));
        }
        if stratum.attach_to.is_none() {
            hosts.insert(stratum.stratum_id.clone(), created);
        }
    }
    Ok(AssetTable { records })
}
