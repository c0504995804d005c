//! Facility-level decarbonization pathway simulation for the chemical industry.
//!
//! The crate models the capital-stock turnover problem for heavy chemicals:
//! given an asset database, an abatement-technology catalog, and a scenario
//! parameter bundle, it computes least-cost abatement deployment schedules
//! under either completion deadlines or annual capital caps, then produces
//! capital-expenditure, levelized-cost, CO₂-storage, and scope-disaggregated
//! emissions series to 2080.
//!
//! Modules follow the pipeline order: [`dataset`] loads or synthesizes
//! per-asset production data, [`projections`] extends production to 2080 and
//! derives new-build requirements, [`catalog`] defines abatement technologies
//! and their per-asset performance, [`costing`] turns those into capital and
//! levelized costs, [`scheduler`] commits dated projects under scenario
//! constraints, [`emissions`] produces well-to-gate inventories, and
//! [`pathway`] orchestrates a full scenario run.

pub mod catalog;
pub mod config;
pub mod costing;
pub mod dataset;
pub mod emissions;
pub mod error;
pub mod output;
pub mod pathway;
pub mod projections;
pub mod scenario;
pub mod scheduler;
pub mod synth;
pub mod types;

pub use catalog::{AbatementOption, Catalog, PerformanceBundle, StorageSite, TechId};
pub use config::{GrowthConfig, PricesConfig, RegionPrices, TrajectoriesConfig};
pub use costing::{CostQuote, FinanceParams, LearningParams, LearningPooling};
pub use dataset::{AssetRecord, AssetTable, Facility, ValidationReport};
pub use emissions::{EmissionsBreakdown, EmissionsTable, Scope};
pub use error::Error;
pub use pathway::{PathwayResult, RunInputs};
pub use projections::{GrowthSchedule, ProductionSeries};
pub use scenario::{ScenarioId, ScenarioParams, SchedulingMode};
pub use scheduler::{
    AbatementProject, CellContext, CellPlanner, DeploymentSchedule, LearningState,
    NewbuildDemand, StorageLedger,
};
pub use synth::SynthesisSpec;
pub use types::{BuildType, Chemical, ChemicalGroup, Location, Region};

/// First year of the modeled horizon (database snapshot year).
pub const YEAR_MIN: i32 = 2023;
/// Last year of the modeled horizon.
pub const YEAR_MAX: i32 = 2080;
/// First year capital outlays may be booked.
pub const CAPEX_YEAR_MIN: i32 = 2024;
/// Number of years in the horizon, inclusive.
pub const HORIZON_YEARS: usize = (YEAR_MAX - YEAR_MIN + 1) as usize;

pub type Result<T> = std::result::Result<T, Error>;
