//! Scenario parameter bundles: every scenario-dependent knob in one place,
//! with three shipped presets and strict file loading (preset + overrides).
//!
//! The presets encode three stylized worlds: `SU` retrofits everything by
//! hard deadlines with globally pooled fast learning; `GA` spends under
//! regional capital caps with slower global learning; `GG` spends under
//! tighter caps with slow, region-fragmented learning. Capital caps follow
//! the per-region, per-chemical-group averages the cap columns report.

use crate::config::{read_json, GridTrajectory, TrajectoriesConfig, UpstreamTrajectory};
use crate::costing::{LearningParams, LearningPooling};
use crate::error::Error;
use crate::types::{ChemicalGroup, Region};
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// Scenario identifier; `Custom` marks a preset with overrides applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ScenarioId {
    #[serde(rename = "SU")]
    Su,
    #[serde(rename = "GA")]
    Ga,
    #[serde(rename = "GG")]
    Gg,
    #[serde(rename = "custom")]
    Custom,
}

impl ScenarioId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioId::Su => "SU",
            ScenarioId::Ga => "GA",
            ScenarioId::Gg => "GG",
            ScenarioId::Custom => "custom",
        }
    }

    pub fn parse(token: &str) -> Option<ScenarioId> {
        match token {
            "SU" => Some(ScenarioId::Su),
            "GA" => Some(ScenarioId::Ga),
            "GG" => Some(ScenarioId::Gg),
            "custom" => Some(ScenarioId::Custom),
            _ => None,
        }
    }
}

impl std::fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How capital is rationed in one region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchedulingMode {
    /// Every existing facility must be online-abated by this year.
    Deadline { year: i32 },
    /// Annual capital caps, $ per year, per chemical group.
    CapitalCap { caps: BTreeMap<ChemicalGroup, f64> },
}

/// Feedstock-substitution overlay: the share of olefin feedstock displaced
/// by circular/biogenic sources ramps linearly from 2025 to `target_year`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircularRamp {
    pub target_share: f64,
    pub target_year: i32,
}

impl CircularRamp {
    /// Displaced share in `year`; 0 before 2025, flat after `target_year`.
    pub fn share(&self, year: i32) -> f64 {
        if year <= 2025 {
            return 0.0;
        }
        let span = (self.target_year - 2025).max(1) as f64;
        let progress = ((year - 2025) as f64 / span).clamp(0.0, 1.0);
        self.target_share * progress
    }
}

/// One scenario's full parameter bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioParams {
    pub scenario_id: ScenarioId,
    pub mode: BTreeMap<Region, SchedulingMode>,
    pub learning: LearningParams,
    pub trajectories: TrajectoriesConfig,
    pub circular: BTreeMap<Region, CircularRamp>,
    /// The first abatement project in every region/chemical cell starts
    /// operating in this year.
    pub first_online_year: i32,
    /// Projects developed in parallel for the first online year, sharing
    /// first-of-a-kind costs.
    pub initial_wave: u32,
    /// Electrified cracking is not commercially available before this year.
    pub electrified_cracker_earliest: i32,
}

fn su_ga_gg_trajectories(id: ScenarioId) -> TrajectoriesConfig {
    let mut grid_ci = BTreeMap::new();
    grid_ci.insert(Region::NorthAmerica, 0.37);
    grid_ci.insert(Region::Europe, 0.25);
    grid_ci.insert(Region::MiddleEast, 0.49);
    grid_ci.insert(Region::China, 0.56);
    let (grid, upstream) = match id {
        // Slopes order SU ≥ GA ≥ GG; the SU upstream slope reaches its 0.15
        // floor around 2055.
        ScenarioId::Su => (
            GridTrajectory { decline_per_y: 0.10, floor_t_per_mwh: 0.002 },
            UpstreamTrajectory { slope_per_y: 0.0243, floor: 0.15 },
        ),
        ScenarioId::Ga => (
            GridTrajectory { decline_per_y: 0.06, floor_t_per_mwh: 0.010 },
            UpstreamTrajectory { slope_per_y: 0.016, floor: 0.15 },
        ),
        _ => (
            GridTrajectory { decline_per_y: 0.04, floor_t_per_mwh: 0.020 },
            UpstreamTrajectory { slope_per_y: 0.010, floor: 0.30 },
        ),
    };
    let mut upstream_ef = BTreeMap::new();
    for (token, ef) in [
        ("natural_gas", 0.0135),
        ("ethane", 0.0110),
        ("propane", 0.0110),
        ("naphtha", 0.0095),
        ("coal", 0.0060),
        ("brine", 0.0),
    ] {
        upstream_ef.insert(token.to_string(), ef);
    }
    TrajectoriesConfig {
        grid_ci_2023_t_per_mwh: grid_ci,
        grid,
        upstream,
        upstream_ef_t_per_gj: upstream_ef,
    }
}

/// Capital caps, B$/y, per (region, group), by scenario column.
fn cap_table(id: ScenarioId) -> BTreeMap<Region, BTreeMap<ChemicalGroup, f64>> {
    use ChemicalGroup::*;
    use Region::*;
    let ga: [(Region, [(ChemicalGroup, f64); 5]); 4] = [
        (NorthAmerica, [(SteamCrackers, 2.3), (OnPurposePropylene, 0.26), (Aromatics, 0.11), (Methanol, 0.28), (Ammonia, 0.74)]),
        (Europe, [(SteamCrackers, 1.7), (OnPurposePropylene, 0.19), (Aromatics, 0.06), (Methanol, 0.29), (Ammonia, 0.75)]),
        (MiddleEast, [(SteamCrackers, 0.78), (OnPurposePropylene, 0.10), (Aromatics, 0.05), (Methanol, 0.19), (Ammonia, 0.23)]),
        (China, [(SteamCrackers, 6.40), (OnPurposePropylene, 1.87), (Aromatics, 0.25), (Methanol, 1.34), (Ammonia, 1.50)]),
    ];
    let gg: [(Region, [(ChemicalGroup, f64); 5]); 4] = [
        (NorthAmerica, [(SteamCrackers, 1.9), (OnPurposePropylene, 0.20), (Aromatics, 0.09), (Methanol, 0.21), (Ammonia, 0.57)]),
        (Europe, [(SteamCrackers, 1.4), (OnPurposePropylene, 0.15), (Aromatics, 0.05), (Methanol, 0.24), (Ammonia, 0.62)]),
        (MiddleEast, [(SteamCrackers, 0.84), (OnPurposePropylene, 0.07), (Aromatics, 0.03), (Methanol, 0.16), (Ammonia, 0.19)]),
        (China, [(SteamCrackers, 4.49), (OnPurposePropylene, 1.56), (Aromatics, 0.21), (Methanol, 1.11), (Ammonia, 1.25)]),
    ];
    let table = if id == ScenarioId::Ga { ga } else { gg };
    table
        .into_iter()
        .map(|(region, rows)| {
            let caps = rows.into_iter().map(|(g, b)| (g, b * 1e9)).collect();
            (region, caps)
        })
        .collect()
}

impl ScenarioParams {
    /// The shipped SU / GA / GG parameter bundles.
    pub fn preset(id: ScenarioId) -> ScenarioParams {
        let mode: BTreeMap<Region, SchedulingMode> = match id {
            ScenarioId::Su => {
                let mut m = BTreeMap::new();
                m.insert(Region::NorthAmerica, SchedulingMode::Deadline { year: 2050 });
                m.insert(Region::Europe, SchedulingMode::Deadline { year: 2050 });
                m.insert(Region::MiddleEast, SchedulingMode::Deadline { year: 2060 });
                m.insert(Region::China, SchedulingMode::Deadline { year: 2060 });
                m
            }
            _ => cap_table(id)
                .into_iter()
                .map(|(region, caps)| (region, SchedulingMode::CapitalCap { caps }))
                .collect(),
        };
        let learning = match id {
            ScenarioId::Su => LearningParams {
                lr_early: 0.04,
                lr_mature: 0.10,
                early_phase_count: 5,
                pooling: LearningPooling::Global,
            },
            ScenarioId::Ga => LearningParams {
                lr_early: 0.025,
                lr_mature: 0.07,
                early_phase_count: 5,
                pooling: LearningPooling::Global,
            },
            _ => LearningParams {
                lr_early: 0.015,
                lr_mature: 0.05,
                early_phase_count: 5,
                pooling: LearningPooling::PerRegion,
            },
        };
        let circular_target = match id {
            ScenarioId::Su => 0.20,
            ScenarioId::Ga => 0.15,
            _ => 0.10,
        };
        let mut circular = BTreeMap::new();
        for region in Region::ALL {
            let target_year = match region {
                Region::NorthAmerica | Region::Europe => 2050,
                Region::MiddleEast | Region::China => 2060,
            };
            circular.insert(
                region,
                CircularRamp {
                    target_share: circular_target,
                    target_year,
                },
            );
        }
        let effective = if id == ScenarioId::Custom { ScenarioId::Su } else { id };
        ScenarioParams {
            scenario_id: effective,
            mode,
            learning,
            trajectories: su_ga_gg_trajectories(effective),
            circular,
            first_online_year: 2030,
            initial_wave: 3,
            electrified_cracker_earliest: 2040,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.learning.validate()?;
        self.trajectories.validate()?;
        for region in Region::ALL {
            match self.mode.get(&region) {
                None => {
                    return Err(Error::config(
                        "scenario",
                        format!("no scheduling mode for {region}"),
                    ))
                }
                Some(SchedulingMode::Deadline { year }) => {
                    if *year < self.first_online_year {
                        return Err(Error::config(
                            "scenario",
                            format!("{region}: deadline {year} before first online year"),
                        ));
                    }
                }
                Some(SchedulingMode::CapitalCap { caps }) => {
                    for (group, cap) in caps {
                        if !(*cap > 0.0) {
                            return Err(Error::config(
                                "scenario",
                                format!("{region}/{group}: cap must be > 0"),
                            ));
                        }
                    }
                }
            }
        }
        for (region, ramp) in &self.circular {
            if !(0.0..=1.0).contains(&ramp.target_share) {
                return Err(Error::config(
                    "scenario",
                    format!("{region}: circular share outside [0, 1]"),
                ));
            }
        }
        if self.initial_wave < 1 {
            return Err(Error::config("scenario", "initial_wave must be >= 1"));
        }
        Ok(())
    }

    pub fn scheduling_mode(&self, region: Region) -> &SchedulingMode {
        // Validation guarantees every region has a mode.
        self.mode.get(&region).expect("validated scenario")
    }

    pub fn deadline(&self, region: Region) -> Option<i32> {
        match self.scheduling_mode(region) {
            SchedulingMode::Deadline { year } => Some(*year),
            SchedulingMode::CapitalCap { .. } => None,
        }
    }

    pub fn cap(&self, region: Region, group: ChemicalGroup) -> Option<f64> {
        match self.scheduling_mode(region) {
            SchedulingMode::Deadline { .. } => None,
            SchedulingMode::CapitalCap { caps } => caps.get(&group).copied(),
        }
    }

    pub fn circular_ramp(&self, region: Region) -> Option<&CircularRamp> {
        self.circular.get(&region)
    }
}

/// On-disk scenario file: a preset name plus overrides. Unknown keys are
/// load errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    preset: String,
    #[serde(default)]
    deadlines: Option<DeadlineOverrides>,
    /// $ per year, per region and chemical group.
    #[serde(default)]
    caps: Option<BTreeMap<Region, BTreeMap<ChemicalGroup, f64>>>,
    #[serde(default)]
    learning: Option<LearningParams>,
    #[serde(default)]
    trajectories: Option<TrajectoriesConfig>,
    #[serde(default)]
    circular: Option<BTreeMap<Region, CircularRamp>>,
    #[serde(default)]
    first_online_year: Option<i32>,
    #[serde(default)]
    initial_wave: Option<u32>,
    #[serde(default)]
    electrified_cracker_earliest: Option<i32>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeadlineOverrides {
    #[serde(default)]
    na_eu: Option<i32>,
    #[serde(default)]
    me_china: Option<i32>,
}

/// Load `scenario.json`: start from the named preset, apply overrides,
/// validate the merged result.
pub fn load_scenario(path: &Path) -> Result<ScenarioParams> {
    let file: ScenarioFile = read_json(path)?;
    let id = ScenarioId::parse(&file.preset)
        .filter(|id| *id != ScenarioId::Custom)
        .ok_or_else(|| Error::UnknownPreset(file.preset.clone()))?;
    let mut params = ScenarioParams::preset(id);
    let mut customized = false;

    if let Some(deadlines) = file.deadlines {
        customized = true;
        for region in Region::ALL {
            let new_year = match region {
                Region::NorthAmerica | Region::Europe => deadlines.na_eu,
                Region::MiddleEast | Region::China => deadlines.me_china,
            };
            if let Some(year) = new_year {
                params.mode.insert(region, SchedulingMode::Deadline { year });
            }
        }
    }
    if let Some(caps) = file.caps {
        customized = true;
        for (region, group_caps) in caps {
            let entry = params
                .mode
                .entry(region)
                .or_insert_with(|| SchedulingMode::CapitalCap { caps: BTreeMap::new() });
            match entry {
                SchedulingMode::CapitalCap { caps } => caps.extend(group_caps),
                SchedulingMode::Deadline { .. } => {
                    *entry = SchedulingMode::CapitalCap { caps: group_caps };
                }
            }
        }
    }
    if let Some(learning) = file.learning {
        customized = true;
        params.learning = learning;
    }
    if let Some(trajectories) = file.trajectories {
        customized = true;
        params.trajectories = trajectories;
    }
    if let Some(circular) = file.circular {
        customized = true;
        params.circular.extend(circular);
    }
    if let Some(year) = file.first_online_year {
        customized = true;
        params.first_online_year = year;
    }
    if let Some(wave) = file.initial_wave {
        customized = true;
        params.initial_wave = wave;
    }
    if let Some(year) = file.electrified_cracker_earliest {
        customized = true;
        params.electrified_cracker_earliest = year;
    }

    if customized {
        params.scenario_id = ScenarioId::Custom;
    }
    params.validate()?;
    Ok(params)
}
