//! Closed vocabularies and small value types shared across the crate.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Modeled world regions. The vocabulary is closed: asset tables, price
/// tables, and scenario caps are all keyed by these four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Region {
    NorthAmerica,
    Europe,
    MiddleEast,
    China,
}

impl Region {
    pub const ALL: [Region; 4] = [
        Region::NorthAmerica,
        Region::Europe,
        Region::MiddleEast,
        Region::China,
    ];

    pub fn parse(token: &str) -> Option<Region> {
        match token {
            "NorthAmerica" => Some(Region::NorthAmerica),
            "Europe" => Some(Region::Europe),
            "MiddleEast" => Some(Region::MiddleEast),
            "China" => Some(Region::China),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Region::NorthAmerica => "NorthAmerica",
            Region::Europe => "Europe",
            Region::MiddleEast => "MiddleEast",
            Region::China => "China",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Building-block chemicals covered by the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chemical {
    Ethylene,
    Propylene,
    Benzene,
    Butadiene,
    Toluene,
    Xylene,
    Ammonia,
    Methanol,
    ChlorAlkali,
}

impl Chemical {
    pub const ALL: [Chemical; 9] = [
        Chemical::Ethylene,
        Chemical::Propylene,
        Chemical::Benzene,
        Chemical::Butadiene,
        Chemical::Toluene,
        Chemical::Xylene,
        Chemical::Ammonia,
        Chemical::Methanol,
        Chemical::ChlorAlkali,
    ];

    pub fn parse(token: &str) -> Option<Chemical> {
        match token {
            "ethylene" => Some(Chemical::Ethylene),
            "propylene" => Some(Chemical::Propylene),
            "benzene" => Some(Chemical::Benzene),
            "butadiene" => Some(Chemical::Butadiene),
            "toluene" => Some(Chemical::Toluene),
            "xylene" => Some(Chemical::Xylene),
            "ammonia" => Some(Chemical::Ammonia),
            "methanol" => Some(Chemical::Methanol),
            "chlor_alkali" => Some(Chemical::ChlorAlkali),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Chemical::Ethylene => "ethylene",
            Chemical::Propylene => "propylene",
            Chemical::Benzene => "benzene",
            Chemical::Butadiene => "butadiene",
            Chemical::Toluene => "toluene",
            Chemical::Xylene => "xylene",
            Chemical::Ammonia => "ammonia",
            Chemical::Methanol => "methanol",
            Chemical::ChlorAlkali => "chlor_alkali",
        }
    }

    /// Capital-planning group for this chemical (table rows in the summary
    /// report and the granularity of per-region capital caps).
    pub fn group(&self) -> ChemicalGroup {
        match self {
            Chemical::Ethylene => ChemicalGroup::SteamCrackers,
            Chemical::Propylene => ChemicalGroup::OnPurposePropylene,
            Chemical::Benzene | Chemical::Butadiene | Chemical::Toluene | Chemical::Xylene => {
                ChemicalGroup::Aromatics
            }
            Chemical::Methanol => ChemicalGroup::Methanol,
            Chemical::Ammonia => ChemicalGroup::Ammonia,
            Chemical::ChlorAlkali => ChemicalGroup::ChlorAlkali,
        }
    }
}

impl fmt::Display for Chemical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rows of the capital summary: the granularity at which annual capital caps
/// apply. Chlor-alkali carries no abatement capital (grid-driven only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChemicalGroup {
    SteamCrackers,
    OnPurposePropylene,
    Aromatics,
    Methanol,
    Ammonia,
    ChlorAlkali,
}

impl ChemicalGroup {
    /// Groups that can carry abatement projects.
    pub const ABATABLE: [ChemicalGroup; 5] = [
        ChemicalGroup::SteamCrackers,
        ChemicalGroup::OnPurposePropylene,
        ChemicalGroup::Aromatics,
        ChemicalGroup::Methanol,
        ChemicalGroup::Ammonia,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ChemicalGroup::SteamCrackers => "steam_crackers",
            ChemicalGroup::OnPurposePropylene => "on_purpose_propylene",
            ChemicalGroup::Aromatics => "aromatics",
            ChemicalGroup::Methanol => "methanol",
            ChemicalGroup::Ammonia => "ammonia",
            ChemicalGroup::ChlorAlkali => "chlor_alkali",
        }
    }

    pub fn parse(token: &str) -> Option<ChemicalGroup> {
        match token {
            "steam_crackers" => Some(ChemicalGroup::SteamCrackers),
            "on_purpose_propylene" => Some(ChemicalGroup::OnPurposePropylene),
            "aromatics" => Some(ChemicalGroup::Aromatics),
            "methanol" => Some(ChemicalGroup::Methanol),
            "ammonia" => Some(ChemicalGroup::Ammonia),
            "chlor_alkali" => Some(ChemicalGroup::ChlorAlkali),
            _ => None,
        }
    }

    /// Scheduling/cap group of a process token. Cracker co-products group
    /// with the cracker, not with on-purpose routes for the same chemical.
    pub fn from_process(process: &str) -> Option<ChemicalGroup> {
        match process {
            "steam_cracker" => Some(ChemicalGroup::SteamCrackers),
            "on_purpose_propylene" => Some(ChemicalGroup::OnPurposePropylene),
            "aromatics_extraction" => Some(ChemicalGroup::Aromatics),
            "smr_ammonia" | "coal_ammonia" => Some(ChemicalGroup::Ammonia),
            "gas_methanol" | "coal_methanol" => Some(ChemicalGroup::Methanol),
            "electrolysis_chlor_alkali" => Some(ChemicalGroup::ChlorAlkali),
            _ => None,
        }
    }
}

impl fmt::Display for ChemicalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a project retrofits an existing facility or equips a new build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildType {
    Retrofit,
    Newbuild,
}

impl BuildType {
    pub fn as_str(&self) -> &'static str {
        match self {
            BuildType::Retrofit => "retrofit",
            BuildType::Newbuild => "newbuild",
        }
    }
}

impl fmt::Display for BuildType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Geographic point in decimal degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub latitude: f64,
    pub longitude: f64,
}

impl Location {
    pub fn new(latitude: f64, longitude: f64) -> Location {
        Location {
            latitude,
            longitude,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.latitude.is_finite()
            && self.longitude.is_finite()
            && (-90.0..=90.0).contains(&self.latitude)
            && (-180.0..=180.0).contains(&self.longitude)
    }

    /// Great-circle distance in kilometres (haversine, mean Earth radius).
    pub fn great_circle_km(&self, other: &Location) -> f64 {
        const EARTH_RADIUS_KM: f64 = 6371.0;
        let phi1 = self.latitude.to_radians();
        let phi2 = other.latitude.to_radians();
        let dphi = (other.latitude - self.latitude).to_radians();
        let dlambda = (other.longitude - self.longitude).to_radians();
        let a = (dphi / 2.0).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda / 2.0).sin().powi(2);
        2.0 * EARTH_RADIUS_KM * a.sqrt().atan2((1.0 - a).sqrt())
    }
}

/// Combustion emission factor of natural gas (and fuel gas accounted at the
/// gas factor), tCO₂ per GJ fired.
pub const EF_GAS_T_PER_GJ: f64 = 0.0561;
/// Combustion emission factor of coal, tCO₂ per GJ fired.
pub const EF_COAL_T_PER_GJ: f64 = 0.0946;

/// Fuel burned for process heat and steam raising. Derived from the asset's
/// feedstock token: coal-based routes fire coal, everything else fires
/// natural gas (or fuel gas accounted at the same factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeatFuel {
    NaturalGas,
    Coal,
}

impl HeatFuel {
    pub fn ef_t_per_gj(self) -> f64 {
        match self {
            HeatFuel::NaturalGas => EF_GAS_T_PER_GJ,
            HeatFuel::Coal => EF_COAL_T_PER_GJ,
        }
    }

    /// Token used for upstream emission-factor lookups.
    pub fn token(self) -> &'static str {
        match self {
            HeatFuel::NaturalGas => "natural_gas",
            HeatFuel::Coal => "coal",
        }
    }
}
