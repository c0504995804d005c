//! Abatement technology catalog: applicability rules, per-asset performance,
//! and reference costs.
//!
//! An [`AbatementOption`] is a technology description loaded from
//! `catalog.json`; [`option_performance`] turns one into a
//! [`PerformanceBundle`] for a concrete asset — capture splits, added
//! combustion from solvent regeneration or reforming, energy-purchase deltas,
//! and CO₂ routed to storage. Capture bookkeeping is conservative: everything
//! sent to storage is either captured asset CO₂ or captured
//! regeneration-cogeneration CO₂.

use crate::dataset::AssetRecord;
use crate::error::Error;
use crate::scenario::ScenarioParams;
use crate::types::{BuildType, Chemical, ChemicalGroup, HeatFuel, Location, Region, EF_GAS_T_PER_GJ};
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

/// Lower heating value of hydrogen, GJ per tonne.
pub const H2_LHV_GJ_PER_T: f64 = 120.0;

/// Process-CO₂ streams at ammonia and methanol plants are high-purity and
/// captured completely by dehydration and compression.
const HIGH_PURITY_CAPTURE: f64 = 1.0;

/// Technology identifiers. Variants are declared in token order so derived
/// ordering matches the lexicographic tie-break used in option selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TechId {
    BioEthylene,
    BioSyngasMethanol,
    BlueH2,
    CcsPostcombustion,
    CcsProcessCo2,
    CcuMethanol,
    CircularPyoil,
    ElectrifiedCracker,
    GreenH2,
}

impl TechId {
    pub const ALL: [TechId; 9] = [
        TechId::BioEthylene,
        TechId::BioSyngasMethanol,
        TechId::BlueH2,
        TechId::CcsPostcombustion,
        TechId::CcsProcessCo2,
        TechId::CcuMethanol,
        TechId::CircularPyoil,
        TechId::ElectrifiedCracker,
        TechId::GreenH2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TechId::BioEthylene => "bio_ethylene",
            TechId::BioSyngasMethanol => "bio_syngas_methanol",
            TechId::BlueH2 => "blue_h2",
            TechId::CcsPostcombustion => "ccs_postcombustion",
            TechId::CcsProcessCo2 => "ccs_process_co2",
            TechId::CcuMethanol => "ccu_methanol",
            TechId::CircularPyoil => "circular_pyoil",
            TechId::ElectrifiedCracker => "electrified_cracker",
            TechId::GreenH2 => "green_h2",
        }
    }

    pub fn parse(token: &str) -> Option<TechId> {
        TechId::ALL.iter().copied().find(|t| t.as_str() == token)
    }
}

impl std::fmt::Display for TechId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What the reference capacity of an option measures, and therefore which
/// per-asset quantity drives the economies-of-scale exponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleBasis {
    /// Tonnes of product per year.
    #[default]
    Product,
    /// Tonnes of CO₂ sent to storage per year (capture-train sizing).
    Co2Captured,
    /// Tonnes of hydrogen per year (reformer/electrolyzer sizing).
    H2Output,
}

/// One catalog entry. The first block mirrors the interchange schema; the
/// trailing knobs parameterize the per-technology performance mechanics and
/// default to zero (inert) so entries stay minimal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbatementOption {
    pub tech_id: TechId,
    pub applicable_chemicals: BTreeSet<Chemical>,
    /// Empty set means any process of an applicable chemical.
    #[serde(default)]
    pub applicable_processes: BTreeSet<String>,
    pub retrofit_allowed: bool,
    pub newbuild_allowed: bool,
    pub earliest_operation_year: i32,
    /// Fraction of pre-abatement scope-1 removed, for options defined as a
    /// flat displacement (bio syngas). Stream-specific options leave this 0
    /// and derive abatement from capture mechanics.
    #[serde(default)]
    pub scope1_abatement_fraction: f64,
    /// Capture rate on low-purity (combustion or reformer) streams.
    #[serde(default)]
    pub capture_fraction: f64,
    /// Constant electricity adder, MWh per tonne product (added +, avoided −).
    #[serde(default)]
    pub delta_electricity: f64,
    /// Constant fuel-gas adder, GJ per tonne product (added +, avoided −).
    #[serde(default)]
    pub delta_fuel_gas: f64,
    /// Net feedstock-cost change, $ per tonne product.
    #[serde(default)]
    pub delta_feedstock_cost: f64,
    /// Constant CO₂-to-storage adder, tCO₂ per tonne product. Stream-derived
    /// storage is computed from capture mechanics; this stays 0 in the
    /// shipped catalog.
    #[serde(default)]
    pub co2_to_storage_per_t: f64,
    /// $ at `reference_capacity`, North America, first of a kind.
    pub reference_capex: f64,
    /// Capacity at which `reference_capex` applies, in `scale_basis` units/y.
    pub reference_capacity: f64,
    pub scale_exponent: f64,
    /// Years from development start to online, in [3, 7].
    pub development_time: u32,
    /// Fixed O&M, fraction of installed capex per year.
    pub fixed_om_fraction: f64,
    #[serde(default)]
    pub scale_basis: ScaleBasis,
    /// Solvent regeneration heat, GJ gas fired per tCO₂ amine-captured; the
    /// cogeneration CO₂ is itself captured at `capture_fraction`.
    #[serde(default)]
    pub regen_fuel_gj_per_tco2: f64,
    /// Capture and compression electricity, MWh per tCO₂ stored.
    #[serde(default)]
    pub elec_mwh_per_tco2_captured: f64,
    /// Capex discount applied in proportion to the high-purity share of
    /// captured CO₂ (dehydration trains are cheaper than amine trains).
    #[serde(default)]
    pub purity_capex_discount: f64,
    /// Reformer natural-gas input per GJ of hydrogen output.
    #[serde(default)]
    pub ng_gj_per_gj_h2: f64,
    /// Electrolyzer electricity per GJ of hydrogen output.
    #[serde(default)]
    pub elec_mwh_per_gj_h2: f64,
    /// Resistive-heating electricity per GJ of displaced fired heat.
    #[serde(default)]
    pub elec_mwh_per_gj_heat: f64,
    /// Stoichiometric hydrogen demand, GJ per tonne product, for routes
    /// where hydrogen is the feedstock rather than a furnace fuel.
    #[serde(default)]
    pub h2_gj_per_t_product: f64,
    /// CO₂ feedstock drawn per tonne product (utilization routes).
    #[serde(default)]
    pub co2_feedstock_t_per_t: f64,
    /// Electricity demand must be met by contracted clean generation whose
    /// capital is part of the project.
    #[serde(default)]
    pub ppa_required: bool,
    /// Carried for emissions-overlay accounting only; never offered as a
    /// competing project.
    #[serde(default)]
    pub overlay_only: bool,
}

impl AbatementOption {
    /// Earliest operation year after scenario availability gates
    /// (electrified cracking waits on scenario-level commercialization).
    pub fn effective_earliest_year(&self, scenario: &ScenarioParams) -> i32 {
        if self.tech_id == TechId::ElectrifiedCracker {
            self.earliest_operation_year
                .max(scenario.electrified_cracker_earliest)
        } else {
            self.earliest_operation_year
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fractions = [
            ("scope1_abatement_fraction", self.scope1_abatement_fraction),
            ("capture_fraction", self.capture_fraction),
            ("fixed_om_fraction", self.fixed_om_fraction),
            ("purity_capex_discount", self.purity_capex_discount),
        ];
        for (name, value) in fractions {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::config(
                    "catalog",
                    format!("{}: {name} {value} outside [0, 1]", self.tech_id),
                ));
            }
        }
        if !(3..=7).contains(&self.development_time) {
            return Err(Error::InvalidDevYears(self.development_time));
        }
        if !(self.reference_capex > 0.0) {
            return Err(Error::config(
                "catalog",
                format!("{}: reference_capex must be > 0", self.tech_id),
            ));
        }
        if !(self.reference_capacity > 0.0) {
            return Err(Error::NonpositiveCapacity(self.reference_capacity));
        }
        if !(self.scale_exponent > 0.0 && self.scale_exponent <= 1.0) {
            return Err(Error::config(
                "catalog",
                format!("{}: scale_exponent {} outside (0, 1]", self.tech_id, self.scale_exponent),
            ));
        }
        if !self.retrofit_allowed && !self.newbuild_allowed {
            return Err(Error::config(
                "catalog",
                format!("{}: neither retrofit nor newbuild allowed", self.tech_id),
            ));
        }
        Ok(())
    }
}

/// A geologic storage site accepting captured CO₂.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StorageSite {
    pub site_id: String,
    pub latitude: f64,
    pub longitude: f64,
    /// $ per tCO₂ injected.
    pub unit_storage_cost: f64,
    /// MtCO₂ per year.
    pub injection_capacity: f64,
}

impl StorageSite {
    pub fn location(&self) -> Location {
        Location::new(self.latitude, self.longitude)
    }

    pub fn injection_capacity_t_per_y(&self) -> f64 {
        self.injection_capacity * 1e6
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.unit_storage_cost >= 0.0) {
            return Err(Error::config(
                "storage_sites",
                format!("{}: unit_storage_cost must be >= 0", self.site_id),
            ));
        }
        if !(self.injection_capacity > 0.0) {
            return Err(Error::NonpositiveCapacity(self.injection_capacity));
        }
        if !self.location().is_valid() {
            return Err(Error::config(
                "storage_sites",
                format!("{}: invalid coordinates", self.site_id),
            ));
        }
        Ok(())
    }
}

/// The loaded technology catalog plus regional storage sites. Immutable
/// after load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub options: Vec<AbatementOption>,
    pub storage: BTreeMap<Region, Vec<StorageSite>>,
}

impl Catalog {
    pub fn load(catalog_path: &Path, storage_path: &Path) -> Result<Catalog> {
        let options: Vec<AbatementOption> = crate::config::read_json(catalog_path)?;
        let storage: BTreeMap<Region, Vec<StorageSite>> = crate::config::read_json(storage_path)?;
        let catalog = Catalog { options, storage };
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for option in &self.options {
            option.validate()?;
            if !seen.insert(option.tech_id) {
                return Err(Error::config(
                    "catalog",
                    format!("duplicate entry for {}", option.tech_id),
                ));
            }
        }
        for sites in self.storage.values() {
            for site in sites {
                site.validate()?;
            }
        }
        Ok(())
    }

    pub fn option(&self, tech: TechId) -> Option<&AbatementOption> {
        self.options.iter().find(|o| o.tech_id == tech)
    }

    pub fn storage_sites(&self, region: Region) -> &[StorageSite] {
        self.storage.get(&region).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Options a given asset could adopt in `year` (its online year).
    ///
    /// Filters: chemical and process membership, build type, availability
    /// year (electrified cracking waits for the scenario's availability
    /// year), and the green-hydrogen rule that existing ammonia plants
    /// cannot be retrofitted to electrolytic hydrogen. Chlor-alkali matches
    /// nothing: its footprint is the grid's, not the plant's. Overlay-only
    /// entries (biogenic and circular feedstock shares) never compete here.
    pub fn applicable_options(
        &self,
        asset: &AssetRecord,
        build_type: BuildType,
        year: i32,
        scenario: &ScenarioParams,
    ) -> Vec<&AbatementOption> {
        self.options
            .iter()
            .filter(|o| !o.overlay_only)
            .filter(|o| o.applicable_chemicals.contains(&asset.chemical))
            .filter(|o| {
                o.applicable_processes.is_empty() || o.applicable_processes.contains(&asset.process)
            })
            .filter(|o| match build_type {
                BuildType::Retrofit => o.retrofit_allowed,
                BuildType::Newbuild => o.newbuild_allowed,
            })
            .filter(|o| year >= o.effective_earliest_year(scenario))
            .filter(|o| {
                !(o.tech_id == TechId::GreenH2
                    && asset.chemical == Chemical::Ammonia
                    && build_type == BuildType::Retrofit)
            })
            .collect()
    }
}

/// Per-asset performance of one option. Quantities are per tonne of product
/// unless suffixed otherwise; annual accessors scale by production.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceBundle {
    pub tech_id: TechId,
    pub production_t_per_y: f64,
    /// Pre-abatement scope-1 streams removed (captured or avoided).
    pub gross_abated_t_per_t: f64,
    /// New on-site combustion CO₂ the option introduces (regeneration
    /// cogeneration residue, reformer residue).
    pub added_scope1_t_per_t: f64,
    /// Capture on the asset's own streams, excluding cogeneration capture.
    pub captured_streams_t_per_t: f64,
    /// Capture on regeneration-cogeneration flue gas.
    pub captured_cogen_t_per_t: f64,
    /// Residual combustion scope-1 after abatement.
    pub scope1_combustion_after_t_per_t: f64,
    /// Residual process scope-1 after abatement.
    pub scope1_process_after_t_per_t: f64,
    /// Net change in purchased natural gas / fuel gas, GJ per tonne.
    pub delta_gas_gj_per_t: f64,
    /// Net change in purchased coal, GJ per tonne.
    pub delta_coal_gj_per_t: f64,
    /// Net change in electricity demand, MWh per tonne.
    pub delta_electricity_mwh_per_t: f64,
    /// Net feedstock-cost change, $ per tonne.
    pub delta_feedstock_cost_per_t: f64,
    /// Total post-abatement electricity covered by contracted clean
    /// generation; 0 when the option carries no PPA.
    pub ppa_mwh_per_t: f64,
    /// Sizing quantity for capex scaling, in the option's scale basis, /y.
    pub scale_capacity_per_y: f64,
    /// Multiplier on scaled capex (purity discount); 1 when inert.
    pub capex_multiplier: f64,
}

impl PerformanceBundle {
    /// CO₂ sent to storage per tonne product (conservation: captured asset
    /// streams + captured cogeneration CO₂ + any constant adder).
    pub fn co2_stored_t_per_t(&self) -> f64 {
        self.captured_streams_t_per_t + self.captured_cogen_t_per_t
    }

    /// Scope-1 reduction credited to the project: gross removal net of the
    /// combustion the option itself adds.
    pub fn net_abated_t_per_t(&self) -> f64 {
        self.gross_abated_t_per_t - self.added_scope1_t_per_t
    }

    pub fn net_abated_t_per_y(&self) -> f64 {
        self.net_abated_t_per_t() * self.production_t_per_y
    }

    pub fn co2_stored_t_per_y(&self) -> f64 {
        self.co2_stored_t_per_t() * self.production_t_per_y
    }

    pub fn delta_electricity_mwh_per_y(&self) -> f64 {
        self.delta_electricity_mwh_per_t * self.production_t_per_y
    }

    pub fn ppa_mwh_per_y(&self) -> f64 {
        self.ppa_mwh_per_t * self.production_t_per_y
    }
}

/// Asset-side quantities every mechanics branch starts from.
struct Streams {
    /// Fired fuel + steam-raising fuel, GJ/t.
    heat_gj: f64,
    /// Combustion scope-1, tCO₂/t.
    comb: f64,
    /// Process scope-1, tCO₂/t.
    proc: f64,
    heat_fuel: HeatFuel,
}

impl Streams {
    fn of(asset: &AssetRecord) -> Streams {
        let heat_fuel = asset.heat_fuel();
        let heat_gj = asset.fuel_intensity + asset.steam_intensity;
        Streams {
            heat_gj,
            comb: heat_gj * heat_fuel.ef_t_per_gj(),
            proc: asset.process_co2_intensity,
            heat_fuel,
        }
    }

    /// Purchased-gas and purchased-coal view of heat plus feedstock, used
    /// when a route displaces the incumbent inputs entirely.
    fn total_input_gj(&self, asset: &AssetRecord) -> f64 {
        self.heat_gj + asset.feedstock_intensity
    }
}

/// Compute what `option` does at `asset`. Fails on a pairing the
/// applicability rules would never produce.
pub fn option_performance(
    option: &AbatementOption,
    asset: &AssetRecord,
) -> Result<PerformanceBundle> {
    if !option.applicable_chemicals.contains(&asset.chemical) || option.overlay_only {
        return Err(Error::InapplicableOption {
            tech: option.tech_id.to_string(),
            asset_id: asset.asset_id.clone(),
        });
    }
    let s = Streams::of(asset);
    let production = asset.production_t_per_y();
    let group = asset.chemical.group();

    // Every arm assigns `gross` and `comb_after`; the rest default.
    let gross;
    let comb_after;
    let mut added = 0.0;
    let mut captured_streams = 0.0;
    let mut captured_cogen = 0.0;
    let mut proc_after = s.proc;
    let mut d_gas = option.delta_fuel_gas;
    let mut d_coal = 0.0;
    let mut d_elec = option.delta_electricity;
    let mut capex_multiplier = 1.0;

    match option.tech_id {
        TechId::CcsPostcombustion => {
            // Amine capture on the combustion stream; solvent regeneration
            // runs on gas cogeneration whose flue is captured at the same
            // rate.
            let captured_base = option.capture_fraction * s.comb;
            let regen_gj = option.regen_fuel_gj_per_tco2 * captured_base;
            let cogen_co2 = regen_gj * EF_GAS_T_PER_GJ;
            captured_cogen = option.capture_fraction * cogen_co2;
            captured_streams = captured_base;
            gross = captured_base;
            added = cogen_co2 - captured_cogen;
            comb_after = s.comb - captured_base + added;
            d_gas += regen_gj;
        }
        TechId::CcsProcessCo2 => {
            // Package for ammonia/methanol plants: dehydration on the
            // high-purity process stream, amine on the combustion stream.
            let captured_proc = HIGH_PURITY_CAPTURE * s.proc;
            let captured_comb = option.capture_fraction * s.comb;
            let regen_gj = option.regen_fuel_gj_per_tco2 * captured_comb;
            let cogen_co2 = regen_gj * EF_GAS_T_PER_GJ;
            captured_cogen = option.capture_fraction * cogen_co2;
            captured_streams = captured_proc + captured_comb;
            gross = captured_streams;
            added = cogen_co2 - captured_cogen;
            comb_after = s.comb - captured_comb + added;
            proc_after = 0.0;
            d_gas += regen_gj;
            let total_captured = captured_streams + captured_cogen;
            if total_captured > 0.0 {
                capex_multiplier =
                    1.0 - option.purity_capex_discount * (captured_proc / total_captured);
            }
        }
        TechId::BlueH2 => match group {
            ChemicalGroup::SteamCrackers => {
                // Furnace fuel switch: fired heat moves to hydrogen from an
                // on-site autothermal reformer with capture; the reformer's
                // uncaptured CO₂ stays on the facility's books.
                let h2_gj = s.heat_gj;
                let ng_gj = option.ng_gj_per_gj_h2 * h2_gj;
                let reformer_co2 = ng_gj * EF_GAS_T_PER_GJ;
                captured_streams = option.capture_fraction * reformer_co2;
                gross = s.comb;
                added = reformer_co2 - captured_streams;
                comb_after = added;
                d_gas += ng_gj - s.heat_gj;
            }
            _ => {
                // Hydrogen-feedstock route (ammonia): the incumbent syngas
                // train is replaced outright by reformed hydrogen with
                // capture; both prior streams vanish.
                let h2_gj = option.h2_gj_per_t_product;
                let ng_gj = option.ng_gj_per_gj_h2 * h2_gj;
                let reformer_co2 = ng_gj * EF_GAS_T_PER_GJ;
                captured_streams = option.capture_fraction * reformer_co2;
                gross = s.comb + s.proc;
                added = reformer_co2 - captured_streams;
                comb_after = added;
                proc_after = 0.0;
                match s.heat_fuel {
                    HeatFuel::NaturalGas => d_gas += ng_gj - s.total_input_gj(asset),
                    HeatFuel::Coal => {
                        d_gas += ng_gj;
                        d_coal -= s.total_input_gj(asset);
                    }
                }
            }
        },
        TechId::GreenH2 => {
            let h2_gj = match group {
                ChemicalGroup::SteamCrackers => s.heat_gj,
                _ => option.h2_gj_per_t_product,
            };
            match group {
                ChemicalGroup::SteamCrackers => {
                    gross = s.comb;
                    comb_after = 0.0;
                    d_gas -= s.heat_gj;
                }
                _ => {
                    gross = s.comb + s.proc;
                    comb_after = 0.0;
                    proc_after = 0.0;
                    match s.heat_fuel {
                        HeatFuel::NaturalGas => d_gas -= s.total_input_gj(asset),
                        HeatFuel::Coal => d_coal -= s.total_input_gj(asset),
                    }
                }
            }
            d_elec += option.elec_mwh_per_gj_h2 * h2_gj;
        }
        TechId::ElectrifiedCracker => {
            gross = s.comb;
            comb_after = 0.0;
            d_gas -= s.heat_gj;
            d_elec += option.elec_mwh_per_gj_heat * s.heat_gj;
        }
        TechId::CcuMethanol => {
            // New-build methanol from captured CO₂ and electrolytic
            // hydrogen, displacing a conventional train's whole scope-1.
            gross = s.comb + s.proc;
            comb_after = 0.0;
            proc_after = 0.0;
            match s.heat_fuel {
                HeatFuel::NaturalGas => d_gas -= s.total_input_gj(asset),
                HeatFuel::Coal => d_coal -= s.total_input_gj(asset),
            }
            d_elec += option.elec_mwh_per_gj_h2 * option.h2_gj_per_t_product;
        }
        TechId::BioSyngasMethanol => {
            // Flat displacement of a fixed share of syngas throughput.
            let f = option.scope1_abatement_fraction;
            gross = f * (s.comb + s.proc);
            comb_after = (1.0 - f) * s.comb;
            proc_after = (1.0 - f) * s.proc;
            match s.heat_fuel {
                HeatFuel::NaturalGas => d_gas -= f * s.total_input_gj(asset),
                HeatFuel::Coal => d_coal -= f * s.total_input_gj(asset),
            }
        }
        TechId::BioEthylene | TechId::CircularPyoil => {
            return Err(Error::InapplicableOption {
                tech: option.tech_id.to_string(),
                asset_id: asset.asset_id.clone(),
            });
        }
    }

    let elec_for_capture =
        option.elec_mwh_per_tco2_captured * (captured_streams + captured_cogen);
    d_elec += elec_for_capture;

    let ppa_mwh_per_t = if option.ppa_required {
        (asset.electricity_intensity + d_elec).max(0.0)
    } else {
        0.0
    };

    let co2_stored_per_t = captured_streams + captured_cogen + option.co2_to_storage_per_t;
    let scale_capacity_per_y = match option.scale_basis {
        ScaleBasis::Product => asset.capacity,
        ScaleBasis::Co2Captured => co2_stored_per_t * asset.capacity,
        ScaleBasis::H2Output => {
            let h2_gj = match (option.tech_id, group) {
                (TechId::BlueH2 | TechId::GreenH2, ChemicalGroup::SteamCrackers) => s.heat_gj,
                _ => option.h2_gj_per_t_product,
            };
            h2_gj / H2_LHV_GJ_PER_T * asset.capacity
        }
    };

    Ok(PerformanceBundle {
        tech_id: option.tech_id,
        production_t_per_y: production,
        gross_abated_t_per_t: gross,
        added_scope1_t_per_t: added,
        captured_streams_t_per_t: captured_streams,
        captured_cogen_t_per_t: captured_cogen,
        scope1_combustion_after_t_per_t: comb_after,
        scope1_process_after_t_per_t: proc_after,
        delta_gas_gj_per_t: d_gas,
        delta_coal_gj_per_t: d_coal,
        delta_electricity_mwh_per_t: d_elec,
        delta_feedstock_cost_per_t: option.delta_feedstock_cost,
        ppa_mwh_per_t,
        scale_capacity_per_y,
        capex_multiplier,
    })
}
