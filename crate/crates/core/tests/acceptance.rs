//! Acceptance gate. Six checks, one summary line each (visible under
//! `cargo test --test acceptance -- --nocapture`):
//!
//! 1. exact oracles on the costing math, including randomized quotes
//!    against a flat re-computation of the cash-flow arithmetic;
//! 2. capital-cap schedules against an independent greedy replay and a
//!    brute-force search over start-year assignments;
//! 3. the shipped North American cracker fixture under the deadline
//!    scenario: completion timing, first-wave economics, the LCOA curve
//!    shape, and the storage ramp;
//! 4. capital-cap runs on the same fixture: completion ordering and the
//!    cumulative-capital calibration bands;
//! 5. the shipped world fixture across all three scenarios plus the
//!    frozen-intensity reference;
//! 6. randomized invariants (outlay conservation, learning-curve shape,
//!    cap feasibility, option argmin, frozen-reference proportionality,
//!    aggregation totals, scheduling determinism).

use proptest::prelude::Strategy;
use proptest::test_runner::{Config as PropConfig, TestCaseError, TestError, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use chemdecarb_core::catalog::ScaleBasis;
use chemdecarb_core::config::{
    load_finance, GridTrajectory, TrajectoriesConfig, UpstreamTrajectory,
};
use chemdecarb_core::costing::{
    crf, learning_multiplier, outlay_profile, quote, QuoteContext, TransportParams,
    DEFAULT_OUTLAY_STEEPNESS,
};
use chemdecarb_core::dataset::load_asset_table;
use chemdecarb_core::emissions::{cumulative, frozen_reference, GroupBy, GroupKey};
use chemdecarb_core::pathway::run_pathway;
use chemdecarb_core::scenario::CircularRamp;
use chemdecarb_core::scheduler::{
    plan_capital_cap, select_option, Timing, CAPEX_YEARS, CAP_EPS,
};
use chemdecarb_core::types::EF_GAS_T_PER_GJ;
use chemdecarb_core::{
    AbatementOption, AbatementProject, AssetRecord, AssetTable, BuildType, Catalog, CellContext,
    Chemical, ChemicalGroup, CostQuote, EmissionsBreakdown, EmissionsTable, FinanceParams,
    GrowthConfig, GrowthSchedule, LearningParams, LearningPooling, LearningState,
    PerformanceBundle, PricesConfig, Region, RegionPrices, RunInputs, ScenarioId, ScenarioParams,
    SchedulingMode, Scope, StorageLedger, StorageSite, TechId, CAPEX_YEAR_MIN, YEAR_MAX, YEAR_MIN,
};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fixture_inputs(asset_file: &str, id: ScenarioId) -> RunInputs {
    RunInputs {
        assets: load_asset_table(&fixture(asset_file)).expect("asset table"),
        catalog: Catalog::load(&fixture("catalog.json"), &fixture("storage_sites.json"))
            .expect("catalog"),
        prices: PricesConfig::load(&fixture("prices.json")).expect("prices"),
        growth: GrowthConfig::load(&fixture("growth.json")).expect("growth"),
        finance: load_finance(&fixture("finance.json")).expect("finance"),
        scenario: ScenarioParams::preset(id),
    }
}

/// Print the one-line verdict and fail the test if anything missed.
fn summarize(name: &str, detail: &str, mut failures: Vec<String>, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    if elapsed > budget_s {
        failures.push(format!("runtime {elapsed:.1} s exceeds the {budget_s:.0} s budget"));
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance | {name}: {verdict} | {detail} | {elapsed:.2} s");
    assert!(failures.is_empty(), "{name}: {}", failures.join("; "));
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn in_band(failures: &mut Vec<String>, label: &str, value: f64, lo: f64, hi: f64) {
    check(failures, (lo..=hi).contains(&value), || {
        format!("{label} = {value:.3} outside [{lo}, {hi}]")
    });
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

// ---------------------------------------------------------------------------
// 1. Costing oracles
// ---------------------------------------------------------------------------

/// Minimal valid option carrying the capital-cost fields a quote reads.
fn quote_option(reference_capex: f64, reference_capacity: f64, alpha: f64, om: f64) -> AbatementOption {
    AbatementOption {
        tech_id: TechId::CcsPostcombustion,
        applicable_chemicals: [Chemical::Ethylene].into_iter().collect(),
        applicable_processes: BTreeSet::new(),
        retrofit_allowed: true,
        newbuild_allowed: true,
        earliest_operation_year: 2027,
        scope1_abatement_fraction: 0.0,
        capture_fraction: 0.9,
        delta_electricity: 0.0,
        delta_fuel_gas: 0.0,
        delta_feedstock_cost: 0.0,
        co2_to_storage_per_t: 0.0,
        reference_capex,
        reference_capacity,
        scale_exponent: alpha,
        development_time: 4,
        fixed_om_fraction: om,
        scale_basis: ScaleBasis::Product,
        regen_fuel_gj_per_tco2: 0.0,
        elec_mwh_per_tco2_captured: 0.0,
        purity_capex_discount: 0.0,
        ng_gj_per_gj_h2: 0.0,
        elec_mwh_per_gj_h2: 0.0,
        elec_mwh_per_gj_heat: 0.0,
        h2_gj_per_t_product: 0.0,
        co2_feedstock_t_per_t: 0.0,
        ppa_required: false,
        overlay_only: false,
    }
}

/// Flat cash-flow recomputation of a quote: every term rebuilt from the raw
/// inputs, spreadsheet style, sharing no code with the library.
fn flat_quote(
    o: &AbatementOption,
    b: &PerformanceBundle,
    n_prior: u64,
    ctx: &QuoteContext,
) -> CostQuote {
    let p = b.production_t_per_y;
    let abated = (b.gross_abated_t_per_t - b.added_scope1_t_per_t) * p;
    let stored = (b.captured_streams_t_per_t + b.captured_cogen_t_per_t) * p;

    let ratio = b.scale_capacity_per_y / o.reference_capacity;
    let mut plant = o.reference_capex * ratio.powf(o.scale_exponent);
    plant *= b.capex_multiplier * ctx.location_factor;
    let b_early = -(1.0 - ctx.learning.lr_early).log2();
    let b_mature = -(1.0 - ctx.learning.lr_mature).log2();
    let boundary = ctx.learning.early_phase_count as f64;
    let unit = (n_prior + 1) as f64;
    plant *= if unit <= boundary {
        unit.powf(-b_early)
    } else {
        boundary.powf(-b_early) * (unit / boundary).powf(-b_mature)
    };
    let ppa_mwh = b.ppa_mwh_per_t * p;
    let generation = if ppa_mwh > 0.0 {
        ppa_mwh / (8.76 * ctx.ppa_capacity_factor) * ctx.ppa_capex_per_kw
    } else {
        0.0
    };
    let total_capex = plant + generation;

    let r = ctx.finance.discount_rate;
    let compounded = (1.0 + r).powi(ctx.finance.asset_life as i32);
    let annuity = if r == 0.0 {
        1.0 / ctx.finance.asset_life as f64
    } else {
        r * compounded / (compounded - 1.0)
    };

    let electricity = if ppa_mwh > 0.0 {
        ppa_mwh * ctx.ppa_per_mwh
            - (b.ppa_mwh_per_t - b.delta_electricity_mwh_per_t) * p * ctx.electricity_per_mwh
    } else {
        b.delta_electricity_mwh_per_t * p * ctx.electricity_per_mwh
    };
    let energy = b.delta_gas_gj_per_t * p * ctx.gas_per_gj
        + b.delta_coal_gj_per_t * p * ctx.coal_per_gj
        + electricity
        + b.delta_feedstock_cost_per_t * p;

    let om = o.fixed_om_fraction * total_capex;
    let ts = ctx.ts_cost_per_t * stored;
    CostQuote {
        total_capex,
        annual_fixed_om: om,
        annual_energy_delta_cost: energy,
        annual_ts_cost: ts,
        abated_scope1: abated,
        co2_stored: stored,
        lcoa: (total_capex * annuity + om + energy + ts) / abated,
    }
}

#[test]
fn costing_oracles() {
    let t0 = Instant::now();
    let mut failures = Vec::new();

    let c = crf(0.08, 20).unwrap();
    check(&mut failures, (c - 0.101852).abs() <= 1e-6, || {
        format!("crf(0.08, 20) = {c:.8}, want 0.101852 ± 1e-6")
    });

    // A uniform 10% learning rate prices the second unit at 90% of the
    // first; the first unit always carries full cost.
    let lp = LearningParams {
        lr_early: 0.10,
        lr_mature: 0.10,
        early_phase_count: 1,
        pooling: LearningPooling::Global,
    };
    let second = learning_multiplier(1, &lp);
    check(&mut failures, (second - 0.900).abs() <= 1e-3, || {
        format!("second-unit multiplier = {second:.6}, want 0.900 ± 1e-3")
    });
    check(&mut failures, learning_multiplier(0, &lp) == 1.0, || {
        "first-of-a-kind multiplier must be exactly 1".into()
    });

    // Outlay profiles conserve capital to the last bit.
    for (total, dev) in [(1.0e9, 1u32), (3.3e9, 4), (7.7e8, 7), (2.45e9, 5)] {
        for steepness in [2.0, DEFAULT_OUTLAY_STEEPNESS, 9.0] {
            let outlays = outlay_profile(total, dev, steepness).unwrap();
            let sum: f64 = outlays.iter().sum();
            check(&mut failures, sum == total, || {
                format!("outlay sum {sum} != total {total} (dev {dev}, steepness {steepness})")
            });
        }
    }

    // Randomized quotes against the flat recomputation.
    let mut rng = StdRng::seed_from_u64(0x5eed_ac01);
    let mut worst = 0.0f64;
    for draw in 0..100 {
        let production = rng.gen_range(1.0e5..3.0e6);
        let gross = rng.gen_range(0.5..3.0);
        let added = gross * rng.gen_range(0.0..0.25);
        let streams = gross * rng.gen_range(0.0..1.0);
        let cogen = rng.gen_range(0.0..0.4);
        let delta_e: f64 = rng.gen_range(-0.3..1.2);
        let ppa_per_t = if draw % 2 == 0 {
            rng.gen_range(0.2..2.5) + delta_e.max(0.0)
        } else {
            0.0
        };
        let bundle = PerformanceBundle {
            tech_id: TechId::CcsPostcombustion,
            production_t_per_y: production,
            gross_abated_t_per_t: gross,
            added_scope1_t_per_t: added,
            captured_streams_t_per_t: streams,
            captured_cogen_t_per_t: cogen,
            scope1_combustion_after_t_per_t: 0.0,
            scope1_process_after_t_per_t: 0.0,
            delta_gas_gj_per_t: rng.gen_range(-30.0..30.0),
            delta_coal_gj_per_t: rng.gen_range(-20.0..20.0),
            delta_electricity_mwh_per_t: delta_e,
            delta_feedstock_cost_per_t: rng.gen_range(-50.0..150.0),
            ppa_mwh_per_t: ppa_per_t,
            scale_capacity_per_y: rng.gen_range(2.0e4..2.5e6),
            capex_multiplier: rng.gen_range(0.6..1.0),
        };
        let option = quote_option(
            rng.gen_range(1.0e8..5.0e9),
            rng.gen_range(1.0e5..2.0e6),
            rng.gen_range(0.5..0.95),
            rng.gen_range(0.02..0.05),
        );
        let lr_early = rng.gen_range(0.0..0.12);
        let ctx = QuoteContext {
            finance: FinanceParams {
                discount_rate: rng.gen_range(0.04..0.12),
                asset_life: rng.gen_range(10..=30),
                dollar_year: 2024,
            },
            learning: LearningParams {
                lr_early,
                lr_mature: lr_early + rng.gen_range(0.0..0.10),
                early_phase_count: rng.gen_range(1..8),
                pooling: LearningPooling::Global,
            },
            location_factor: rng.gen_range(0.8..1.35),
            gas_per_gj: rng.gen_range(2.0..10.0),
            coal_per_gj: rng.gen_range(1.0..4.0),
            electricity_per_mwh: rng.gen_range(40.0..100.0),
            ppa_per_mwh: rng.gen_range(35.0..70.0),
            ppa_capex_per_kw: rng.gen_range(700.0..1100.0),
            ppa_capacity_factor: rng.gen_range(0.35..0.55),
            ts_cost_per_t: rng.gen_range(5.0..40.0),
        };
        let n_prior = rng.gen_range(0..120);

        let got = quote(&option, &bundle, n_prior, &ctx).unwrap();
        let want = flat_quote(&option, &bundle, n_prior, &ctx);
        let deviation = [
            rel(got.lcoa, want.lcoa),
            rel(got.total_capex, want.total_capex),
            rel(got.annual_fixed_om, want.annual_fixed_om),
            rel(got.annual_energy_delta_cost, want.annual_energy_delta_cost),
            rel(got.annual_ts_cost, want.annual_ts_cost),
            rel(got.abated_scope1, want.abated_scope1),
            rel(got.co2_stored, want.co2_stored),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        worst = worst.max(deviation);
        check(&mut failures, deviation <= 1e-9, || {
            format!(
                "draw {draw}: quote deviates by {deviation:.2e} (lcoa {} vs {})",
                got.lcoa, want.lcoa
            )
        });
    }

    let detail = format!(
        "crf(8%, 20 y) {c:.6}; second-unit factor {second:.3}; outlays conserve exactly; worst quote deviation {worst:.1e} over 100 draws"
    );
    summarize("costing oracles", &detail, failures, t0, 1.0);
}

// ---------------------------------------------------------------------------
// 2. Capital-cap scheduling vs. brute force
// ---------------------------------------------------------------------------

fn test_cracker(i: usize, capacity: f64) -> AssetRecord {
    AssetRecord {
        asset_id: format!("a{i:02}"),
        facility_id: format!("f{i:02}"),
        owner: "Test".into(),
        region: Region::NorthAmerica,
        latitude: 29.7 + i as f64 * 0.02,
        longitude: -95.2 - i as f64 * 0.03,
        startup_year: 2001,
        chemical: Chemical::Ethylene,
        process: "steam_cracker".into(),
        capacity,
        utilization: 1.0,
        feedstock_type: "ethane".into(),
        feedstock_intensity: 46.0,
        electricity_intensity: 0.8,
        steam_intensity: 4.0,
        // Combustion scope-1 is exactly 1 tCO₂/t product.
        fuel_intensity: 1.0 / EF_GAS_T_PER_GJ - 4.0,
        process_co2_intensity: 0.0,
    }
}

/// Inert capture option: no energy deltas, so the quote is capital + T&S
/// only and constant over time once learning is disabled.
fn capture_option(tech: TechId, dev: u32, reference_capex: f64, alpha: f64) -> AbatementOption {
    AbatementOption {
        development_time: dev,
        reference_capex,
        scale_exponent: alpha,
        reference_capacity: 1.0e6,
        earliest_operation_year: 2025,
        fixed_om_fraction: 0.03,
        tech_id: tech,
        ..quote_option(reference_capex, 1.0e6, alpha, 0.03)
    }
}

fn flat_scenario() -> ScenarioParams {
    let mut grid_ci = BTreeMap::new();
    let mut mode = BTreeMap::new();
    let mut circular = BTreeMap::new();
    for region in Region::ALL {
        grid_ci.insert(region, 0.4);
        mode.insert(region, SchedulingMode::Deadline { year: 2080 });
        circular.insert(region, CircularRamp { target_share: 0.0, target_year: 2050 });
    }
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
    ScenarioParams {
        scenario_id: ScenarioId::Custom,
        mode,
        learning: LearningParams {
            lr_early: 0.0,
            lr_mature: 0.0,
            early_phase_count: 1,
            pooling: LearningPooling::Global,
        },
        trajectories: TrajectoriesConfig {
            grid_ci_2023_t_per_mwh: grid_ci,
            grid: GridTrajectory { decline_per_y: 0.05, floor_t_per_mwh: 0.01 },
            upstream: UpstreamTrajectory { slope_per_y: 0.01, floor: 0.3 },
            upstream_ef_t_per_gj: upstream_ef,
        },
        circular,
        first_online_year: 2025,
        initial_wave: 1,
        electrified_cracker_earliest: 2040,
    }
}

fn flat_prices() -> PricesConfig {
    let mut regions = BTreeMap::new();
    for region in Region::ALL {
        regions.insert(
            region,
            RegionPrices {
                gas_per_gj: 4.0,
                coal_per_gj: 2.0,
                electricity_per_mwh: 60.0,
                ppa_per_mwh: 45.0,
                ppa_capex_per_kw: 900.0,
                ppa_capacity_factor: 0.45,
                location_factor: 1.0,
            },
        );
    }
    PricesConfig {
        transport: TransportParams { tariff_per_t_km: 0.02, ref_volume_t_per_y: 1.0e6 },
        regions,
    }
}

fn unbounded_storage_catalog(options: Vec<AbatementOption>) -> Catalog {
    let mut storage = BTreeMap::new();
    storage.insert(
        Region::NorthAmerica,
        vec![StorageSite {
            site_id: "test_basin".into(),
            latitude: 29.4,
            longitude: -94.7,
            unit_storage_cost: 10.0,
            injection_capacity: 9000.0,
        }],
    );
    Catalog { options, storage }
}

/// One facility's static costing under a zero learning rate.
#[derive(Debug, Clone)]
struct Job {
    id: String,
    lcoa: f64,
    abated: f64,
    dev: i32,
    outlays: Vec<f64>,
}

fn capex_slot(year: i32) -> usize {
    (year - CAPEX_YEAR_MIN) as usize
}

fn fits(spend: &[f64], start: i32, outlays: &[f64], cap: f64) -> bool {
    outlays
        .iter()
        .enumerate()
        .all(|(k, amount)| spend[capex_slot(start + k as i32)] + amount <= cap + CAP_EPS)
}

fn apply(spend: &mut [f64], start: i32, outlays: &[f64], sign: f64) {
    for (k, amount) in outlays.iter().enumerate() {
        spend[capex_slot(start + k as i32)] += sign * amount;
    }
}

fn ranked(jobs: &[Job]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by(|&i, &j| {
        jobs[i]
            .lcoa
            .total_cmp(&jobs[j].lcoa)
            .then_with(|| jobs[j].abated.total_cmp(&jobs[i].abated))
            .then_with(|| jobs[i].id.cmp(&jobs[j].id))
    });
    order
}

/// Earliest year the job's full outlay profile fits on top of the committed
/// spending, scanning every candidate year to the horizon.
fn earliest_fit(job: &Job, spend: &[f64], cap: f64) -> Option<i32> {
    (CAPEX_YEAR_MIN..=YEAR_MAX - job.dev).find(|&y| fits(spend, y, &job.outlays, cap))
}

/// Certify a schedule by exhaustive year search under the planner's own
/// priority rule, event-driven rather than year-swept: repeatedly commit,
/// among all pending projects, the one achieving the earliest feasible
/// start, better-ranked first on ties. Committing the best-ranked project
/// one at a time reproduces the rule "walk the pending list in (LCOA,
/// abated, id) order and start whatever fits, deferring the rest".
fn certified_starts(jobs: &[Job], cap: f64) -> BTreeMap<String, i32> {
    let mut pending = ranked(jobs);
    let mut spend = vec![0.0; CAPEX_YEARS];
    let mut starts = BTreeMap::new();
    while !pending.is_empty() {
        let mut chosen: Option<(i32, usize)> = None;
        for (pos, &i) in pending.iter().enumerate() {
            if let Some(year) = earliest_fit(&jobs[i], &spend, cap) {
                // Strict `<` keeps the first (best-ranked) achiever on ties.
                if chosen.map_or(true, |(best, _)| year < best) {
                    chosen = Some((year, pos));
                }
            }
        }
        let Some((year, pos)) = chosen else { break };
        let i = pending.remove(pos);
        apply(&mut spend, year, &jobs[i].outlays, 1.0);
        starts.insert(jobs[i].id.clone(), year);
    }
    starts
}

/// Can every job go online by `deadline` under the cap, for ANY start
/// assignment? Depth-first over start years with infeasibility pruning;
/// jobs are placed largest-first to fail fast. This deliberately ignores
/// the priority rule: it bounds what an oracle free of the ordering could
/// still achieve.
fn exists_within(jobs: &[Job], cap: f64, deadline: i32) -> bool {
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by(|&i, &j| {
        let peak = |k: usize| jobs[k].outlays.iter().cloned().fold(0.0, f64::max);
        peak(j).total_cmp(&peak(i))
    });
    let mut spend = vec![0.0; CAPEX_YEARS];
    fn place(
        depth: usize,
        order: &[usize],
        jobs: &[Job],
        cap: f64,
        deadline: i32,
        spend: &mut [f64],
    ) -> bool {
        let Some(&i) = order.get(depth) else {
            return true;
        };
        let job = &jobs[i];
        for start in CAPEX_YEAR_MIN..=deadline - job.dev {
            if !fits(spend, start, &job.outlays, cap) {
                continue;
            }
            apply(spend, start, &job.outlays, 1.0);
            if place(depth + 1, order, jobs, cap, deadline, spend) {
                return true;
            }
            apply(spend, start, &job.outlays, -1.0);
        }
        false
    }
    place(0, &order, jobs, cap, deadline, &mut spend)
}

/// Best completion year over all cap-feasible start assignments, found by
/// walking down from a known-achievable completion.
fn unconstrained_optimum(jobs: &[Job], cap: f64, achieved: i32) -> i32 {
    let mut best = achieved;
    while best > CAPEX_YEAR_MIN && exists_within(jobs, cap, best - 1) {
        best -= 1;
    }
    best
}

/// Run one instance through the planner and both oracles. Returns the
/// completion year and its gap to the unconstrained brute-force optimum.
fn check_cap_instance(
    label: &str,
    capacities: &[f64],
    options: Vec<AbatementOption>,
    cap_multiple: f64,
    failures: &mut Vec<String>,
) -> (Option<i32>, i32) {
    let scenario = flat_scenario();
    let prices = flat_prices();
    let catalog = unbounded_storage_catalog(options);
    let ctx = CellContext {
        scenario: &scenario,
        catalog: &catalog,
        prices: &prices,
        finance: FinanceParams::default(),
    };
    let targets: Vec<AssetRecord> = capacities
        .iter()
        .enumerate()
        .map(|(i, &c)| test_cracker(i, c))
        .collect();

    // Static per-facility quotes: zero learning keeps them time-invariant.
    let probe_learning = LearningState::new(LearningPooling::Global);
    let probe_storage = StorageLedger::new();
    let mut jobs = Vec::new();
    for asset in &targets {
        let sel = select_option(
            asset,
            BuildType::Retrofit,
            Timing::StartIn(CAPEX_YEAR_MIN),
            None,
            &probe_learning,
            &probe_storage,
            &ctx,
        )
        .expect("static quote");
        jobs.push(Job {
            id: asset.asset_id.clone(),
            lcoa: sel.quote.lcoa,
            abated: sel.quote.abated_scope1,
            dev: sel.option.development_time as i32,
            outlays: outlay_profile(
                sel.quote.total_capex,
                sel.option.development_time,
                DEFAULT_OUTLAY_STEEPNESS,
            )
            .unwrap(),
        });
    }
    let peak = jobs
        .iter()
        .flat_map(|j| j.outlays.iter().cloned())
        .fold(0.0, f64::max);
    let cap = peak * cap_multiple;

    let mut learning = LearningState::new(LearningPooling::Global);
    let mut ledger = StorageLedger::new();
    let schedule = plan_capital_cap(
        Region::NorthAmerica,
        ChemicalGroup::SteamCrackers,
        targets.clone(),
        Vec::new(),
        cap,
        &mut learning,
        &mut ledger,
        &ctx,
    )
    .expect("cap plan");

    // Cap feasibility every year, from the schedule's own series.
    for (slot, spent) in schedule.annual_capex.iter().enumerate() {
        check(failures, *spent <= cap + 1e-6, || {
            format!("{label}: year {} spends {spent:.3e} over cap {cap:.3e}", CAPEX_YEAR_MIN + slot as i32)
        });
    }
    let series_total: f64 = schedule.annual_capex.iter().sum();
    let project_total: f64 = schedule.projects.iter().map(|p| p.total_capex).sum();
    check(failures, rel(series_total, project_total) <= 1e-9, || {
        format!("{label}: capital series {series_total} != project capital {project_total}")
    });

    // Start years must match the year-scan certifier exactly.
    let certified = certified_starts(&jobs, cap);
    let planned: BTreeMap<String, i32> = schedule
        .projects
        .iter()
        .map(|p| (p.asset_id.clone(), p.development_start))
        .collect();
    check(failures, planned == certified, || {
        format!("{label}: planner starts {planned:?} differ from certified {certified:?}")
    });

    // Started projects within any one decision year go in ascending LCOA.
    for record in &schedule.decisions {
        let lcoas: Vec<f64> = record.started.iter().map(|s| s.lcoa).collect();
        check(failures, lcoas.windows(2).all(|w| w[0] <= w[1]), || {
            format!("{label}: year {} starts out of LCOA order: {lcoas:?}", record.year)
        });
    }

    let completion = schedule.completion_year();
    let mut gap = 0;
    if let Some(done) = completion {
        // The rule can trail the unconstrained brute-force optimum (it
        // commits cheapest-first without lookahead), but never beat it.
        let optimum = unconstrained_optimum(&jobs, cap, done);
        check(failures, optimum <= done, || {
            format!("{label}: optimum {optimum} later than achieved {done}")
        });
        gap = done - optimum;
    } else {
        check(failures, false, || {
            format!("{label}: cap {cap:.3e} left facilities unabated")
        });
    }
    (completion, gap)
}

/// The classic staggering picture, checked at the job level against the
/// fully unconstrained brute force: three identical projects whose middle
/// outlay year dominates, under a cap below twice that peak. The rule must
/// stagger them two years apart, and no ordering-free schedule does better.
fn check_staggering_example(failures: &mut Vec<String>) {
    let outlays = outlay_profile(1.0, 3, DEFAULT_OUTLAY_STEEPNESS).unwrap();
    let jobs: Vec<Job> = (0..3)
        .map(|i| Job {
            id: format!("p{i}"),
            lcoa: 100.0,
            abated: 1.0,
            dev: 3,
            outlays: outlays.clone(),
        })
        .collect();
    let cap = 0.7;
    let starts = certified_starts(&jobs, cap);
    let want: BTreeMap<String, i32> =
        [("p0", 2024), ("p1", 2026), ("p2", 2028)].map(|(id, y)| (id.into(), y)).into();
    check(failures, starts == want, || {
        format!("staggering example: starts {starts:?}, want two-year stagger {want:?}")
    });
    let mut spend = vec![0.0; CAPEX_YEARS];
    for (id, start) in &starts {
        let job = jobs.iter().find(|j| &j.id == id).unwrap();
        apply(&mut spend, *start, &job.outlays, 1.0);
    }
    check(failures, spend.iter().all(|&s| s <= cap + CAP_EPS), || {
        "staggering example: a year exceeds the 0.7 cap".into()
    });
    let done = starts.values().map(|s| s + 3).max().unwrap();
    let optimum = unconstrained_optimum(&jobs, cap, done);
    check(failures, done == optimum, || {
        format!("staggering example: rule finishes {done}, brute force {optimum}")
    });
}

#[test]
fn capital_cap_matches_exhaustive_search() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    check_staggering_example(&mut failures);

    let mut instances = 0usize;
    let mut optimal = 0usize;
    let mut max_gap = 0i32;
    let mut track = |completion: (Option<i32>, i32)| -> Option<i32> {
        if completion.1 == 0 {
            optimal += 1;
        }
        max_gap = max_gap.max(completion.1);
        instances += 1;
        completion.0
    };

    // Deterministic sweep over fleet size, development time, size mix, and
    // cap headroom. The widest cap admits every project at once, where the
    // unconstrained optimum is provably attained.
    for n in 1..=6usize {
        for dev in [3u32, 4] {
            for (pattern, capacities) in [
                ("equal", (0..n).map(|_| 8.0e5).collect::<Vec<_>>()),
                ("geometric", (0..n).map(|i| 4.0e5 * 1.35f64.powi(i as i32)).collect()),
                ("mixed", (0..n).map(|i| if i % 2 == 0 { 3.0e5 } else { 1.2e6 }).collect()),
            ] {
                let mut completions = Vec::new();
                for cap_multiple in [1.02, 1.35, 2.5, n as f64 + 0.5] {
                    let label = format!("{n}/{dev}y/{pattern}/x{cap_multiple}");
                    let options = vec![capture_option(TechId::CcsPostcombustion, dev, 1.0e9, 0.7)];
                    let (done, gap) =
                        check_cap_instance(&label, &capacities, options, cap_multiple, &mut failures);
                    track((done, gap));
                    completions.push(done.unwrap_or(i32::MAX));
                    if cap_multiple > n as f64 {
                        // Everything fits immediately: starts all at the
                        // first capital year, matching the optimum exactly.
                        check(&mut failures, done == Some(CAPEX_YEAR_MIN + dev as i32), || {
                            format!("{label}: loose cap completes {done:?}")
                        });
                        check(&mut failures, gap == 0, || {
                            format!("{label}: loose cap trails the optimum by {gap}")
                        });
                    }
                }
                // A looser cap never finishes later.
                check(&mut failures, completions.windows(2).all(|w| w[0] >= w[1]), || {
                    format!("{n}/{dev}y/{pattern}: completions {completions:?} not monotone in cap")
                });
            }
        }
    }

    // Randomized instances, including catalogs where two options with
    // different development times compete.
    let mut rng = StdRng::seed_from_u64(0x5eed_ca92);
    for draw in 0..60 {
        let n = rng.gen_range(1..=6);
        let capacities: Vec<f64> = (0..n).map(|_| rng.gen_range(2.0e5..1.6e6)).collect();
        let mut options = vec![capture_option(
            TechId::CcsPostcombustion,
            if rng.gen_bool(0.5) { 3 } else { 4 },
            rng.gen_range(0.6e9..2.2e9),
            rng.gen_range(0.6..0.9),
        )];
        if rng.gen_bool(0.4) {
            options.push(capture_option(
                TechId::BlueH2,
                if options[0].development_time == 3 { 4 } else { 3 },
                rng.gen_range(0.6e9..2.2e9),
                rng.gen_range(0.6..0.9),
            ));
        }
        let tight = rng.gen_range(1.05..5.0);
        let loose = tight + rng.gen_range(0.1..2.0);
        let tight_done = track(check_cap_instance(
            &format!("random {draw} tight"),
            &capacities,
            options.clone(),
            tight,
            &mut failures,
        ));
        let loose_done = track(check_cap_instance(
            &format!("random {draw} loose"),
            &capacities,
            options,
            loose,
            &mut failures,
        ));
        check(&mut failures, loose_done <= tight_done, || {
            format!("random {draw}: loosening {tight:.2}→{loose:.2} delays {tight_done:?}→{loose_done:?}")
        });
    }

    let detail = format!(
        "{instances} instances (≤6 facilities, 3–4 y development): planner = exhaustive year-scan certifier; caps held; monotone in cap; rule at the ordering-free optimum on {optimal}/{instances} (worst gap {max_gap} y)"
    );
    summarize("capital-cap scheduling", &detail, failures, t0, 30.0);
}

// ---------------------------------------------------------------------------
// 3. North American cracker fixture, deadline scenario
// ---------------------------------------------------------------------------

#[test]
fn na_cracker_deadline_run() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let inputs = fixture_inputs("na_crackers_2023.csv", ScenarioId::Su);
    let result = run_pathway(&inputs).expect("deadline run");

    let retrofits: Vec<&AbatementProject> = result
        .projects()
        .filter(|p| p.build_type == BuildType::Retrofit)
        .collect();

    let completion = result.completion_year();
    check(&mut failures, completion == Some(2050), || {
        format!("completion {completion:?}, want exactly 2050")
    });

    let early = retrofits.iter().filter(|p| p.online_year < 2035).count();
    check(&mut failures, early == 3, || {
        format!("{early} facilities online before 2035, want exactly 3")
    });

    let wave: Vec<&&AbatementProject> =
        retrofits.iter().filter(|p| p.online_year == 2030).collect();
    check(&mut failures, !wave.is_empty(), || "no first-wave projects in 2030".into());
    let foak = wave.iter().map(|p| p.lcoa_at_decision).sum::<f64>() / wave.len().max(1) as f64;
    in_band(&mut failures, "first-wave LCOA $/t", foak, 180.0, 220.0);

    // LCOA-vs-online-year curve: down after the first wave, up again
    // through the final fifth of the fleet.
    let mut by_year: BTreeMap<i32, (f64, usize)> = BTreeMap::new();
    for p in &retrofits {
        let cell = by_year.entry(p.online_year).or_insert((0.0, 0));
        cell.0 += p.lcoa_at_decision;
        cell.1 += 1;
    }
    let curve: Vec<(i32, f64)> = by_year
        .into_iter()
        .map(|(year, (sum, n))| (year, sum / n as f64))
        .collect();
    let (first_year, first_mean) = curve[0];
    let &(min_year, min_mean) = curve
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let mut ordered = retrofits.clone();
    ordered.sort_by(|a, b| (a.online_year, &a.asset_id).cmp(&(b.online_year, &b.asset_id)));
    let tail_n = (ordered.len() + 4) / 5;
    let tail = &ordered[ordered.len() - tail_n..];
    let tail_mean = tail.iter().map(|p| p.lcoa_at_decision).sum::<f64>() / tail_n as f64;
    let tail_start = tail[0].online_year;
    check(&mut failures, min_year > first_year, || {
        format!("LCOA minimum at {min_year} does not trail the first wave ({first_year})")
    });
    check(&mut failures, min_mean < first_mean, || {
        format!("no decline after the wave: min {min_mean:.1} vs first {first_mean:.1}")
    });
    check(&mut failures, min_year < tail_start, || {
        format!("LCOA minimum at {min_year} sits inside the final fifth (from {tail_start})")
    });
    check(&mut failures, tail_mean > min_mean, || {
        format!("no closing rise: final fifth {tail_mean:.1} vs min {min_mean:.1}")
    });

    let stored_2050 = result.storage_total_in(2050) / 1e6;
    let stored_2080 = result.storage_total_in(2080) / 1e6;
    in_band(&mut failures, "stored 2050 Mt/y", stored_2050, 60.0, 85.0);
    in_band(&mut failures, "stored 2080 Mt/y", stored_2080, 90.0, 110.0);

    let detail = format!(
        "done {}; {} online pre-2035; wave {foak:.0} $/t; curve {first_mean:.0}→{min_mean:.0} ({min_year})→{tail_mean:.0} $/t; storage {stored_2050:.0}/{stored_2080:.0} Mt/y",
        completion.map_or("never".into(), |y| y.to_string()),
        early,
    );
    summarize("deadline calibration", &detail, failures, t0, 5.0);
}

// ---------------------------------------------------------------------------
// 4. Capital-cap ordering on the cracker fixture
// ---------------------------------------------------------------------------

fn capex_2025_on(result: &chemdecarb_core::PathwayResult) -> f64 {
    result.annual_capex()[1..].iter().sum()
}

fn retrofit_ids(result: &chemdecarb_core::PathwayResult) -> BTreeSet<String> {
    result
        .projects()
        .filter(|p| p.build_type == BuildType::Retrofit)
        .map(|p| p.asset_id.clone())
        .collect()
}

#[test]
fn na_cracker_capital_cap_ordering() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let su = run_pathway(&fixture_inputs("na_crackers_2023.csv", ScenarioId::Su)).expect("SU");
    let ga = run_pathway(&fixture_inputs("na_crackers_2023.csv", ScenarioId::Ga)).expect("GA");
    let gg = run_pathway(&fixture_inputs("na_crackers_2023.csv", ScenarioId::Gg)).expect("GG");

    let done_ga = ga.completion_year();
    let done_gg = gg.completion_year();
    check(&mut failures, done_ga.is_some_and(|y| y > 2050), || {
        format!("looser cap completes {done_ga:?}, want later than 2050")
    });
    check(
        &mut failures,
        done_ga.zip(done_gg).is_some_and(|(a, g)| a < g && g <= 2080),
        || format!("cap completions {done_ga:?} / {done_gg:?} not ordered within the horizon"),
    );

    // All three scenarios retrofit the same stock; spending pace is the
    // only difference being measured.
    check(
        &mut failures,
        retrofit_ids(&su) == retrofit_ids(&ga) && retrofit_ids(&ga) == retrofit_ids(&gg),
        || "scenarios retrofit different facility sets".into(),
    );

    let spend_su = capex_2025_on(&su) / 1e9;
    let spend_ga = capex_2025_on(&ga) / 1e9;
    let spend_gg = capex_2025_on(&gg) / 1e9;
    check(&mut failures, spend_su < spend_ga && spend_ga < spend_gg, || {
        format!("cumulative capital not ordered: {spend_su:.1} / {spend_ga:.1} / {spend_gg:.1} B$")
    });
    in_band(&mut failures, "deadline-run capital B$", spend_su, 73.1, 98.9);
    in_band(&mut failures, "2.3 B$/y-cap capital B$", spend_ga, 78.2, 105.8);
    in_band(&mut failures, "1.9 B$/y-cap capital B$", spend_gg, 82.5, 111.6);

    let detail = format!(
        "completion 2050 < {} < {} ≤ 2080; cumulative capital {spend_su:.1} < {spend_ga:.1} < {spend_gg:.1} B$",
        done_ga.map_or("never".into(), |y| y.to_string()),
        done_gg.map_or("never".into(), |y| y.to_string()),
    );
    summarize("capital-cap calibration", &detail, failures, t0, 10.0);
}

// ---------------------------------------------------------------------------
// 5. World fixture, three scenarios plus the frozen reference
// ---------------------------------------------------------------------------

#[test]
fn world_pathways() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let su = run_pathway(&fixture_inputs("world_2023.csv", ScenarioId::Su)).expect("SU world");
    let ga = run_pathway(&fixture_inputs("world_2023.csv", ScenarioId::Ga)).expect("GA world");
    let gg = run_pathway(&fixture_inputs("world_2023.csv", ScenarioId::Gg)).expect("GG world");

    // 2023 anchor: direct (scope-1) emissions of the starting stock.
    let by_scope = su.emissions.aggregate(&[GroupBy::Scope]);
    let scope_series = |scope: Scope| -> &Vec<f64> {
        by_scope
            .get(&GroupKey { region: None, chemical: None, scope: Some(scope) })
            .expect("scope series")
    };
    let scope1_2023 = (scope_series(Scope::Scope1Combustion)[0]
        + scope_series(Scope::Scope1Process)[0])
        / 1e6;
    in_band(&mut failures, "2023 scope-1 Mt", scope1_2023, 550.0, 670.0);

    let frozen_2050 = su.frozen.total_in(2050) / 1e9;
    in_band(&mut failures, "frozen 2050 Gt/y", frozen_2050, 1.5, 1.9);

    let cumulative_gt = |series: &[f64]| -> f64 {
        cumulative(series, YEAR_MIN, 2025, 2080).expect("cumulative") / 1e9
    };
    let cum_ref = cumulative_gt(&su.frozen.total());
    let cum_su = cumulative_gt(&su.emissions.total());
    let cum_ga = cumulative_gt(&ga.emissions.total());
    let cum_gg = cumulative_gt(&gg.emissions.total());
    check(
        &mut failures,
        cum_su < cum_ga && cum_ga < cum_gg && cum_gg < cum_ref,
        || format!("cumulative ordering broken: {cum_su:.1} / {cum_ga:.1} / {cum_gg:.1} / {cum_ref:.1} Gt"),
    );
    in_band(&mut failures, "frozen cumulative Gt", cum_ref, 85.0, 105.0);
    in_band(&mut failures, "deadline cumulative Gt", cum_su, 22.0, 32.0);

    let ratio = su.emissions.total_in(2060) / su.emissions.total_in(2025);
    in_band(&mut failures, "2060/2025 residual", ratio, 0.11, 0.17);

    let detail = format!(
        "scope-1 2023 {scope1_2023:.0} Mt; frozen 2050 {frozen_2050:.2} Gt/y; cumulative {cum_su:.1} < {cum_ga:.1} < {cum_gg:.1} < {cum_ref:.1} Gt; 2060 residual {:.1}%",
        ratio * 100.0
    );
    summarize("world calibration", &detail, failures, t0, 60.0);
}

// ---------------------------------------------------------------------------
// 6. Randomized invariants
// ---------------------------------------------------------------------------

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn run_suite<S: Strategy>(
    failures: &mut Vec<String>,
    name: &str,
    strategy: S,
    body: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(PropConfig {
        cases: 500,
        failure_persistence: None,
        ..PropConfig::default()
    });
    if let Err(err) = runner.run(&strategy, body) {
        let rendered = match err {
            TestError::Fail(reason, value) => format!("{name}: {reason} (input {value:?})"),
            TestError::Abort(reason) => format!("{name}: aborted: {reason}"),
        };
        failures.push(rendered);
    }
}

#[test]
fn randomized_invariants() {
    let t0 = Instant::now();
    let mut failures = Vec::new();

    run_suite(
        &mut failures,
        "outlay conservation",
        (1.0e6..1.0e10f64, 1..9u32, 1.0..9.0f64),
        |(total, dev, steepness)| {
            let outlays = outlay_profile(total, dev, steepness).map_err(|e| fail(e.to_string()))?;
            let sum: f64 = outlays.iter().sum();
            if rel(sum, total) > 1e-12 {
                return Err(fail(format!("sum {sum} != total {total}")));
            }
            if outlays.iter().any(|o| !(*o > 0.0)) {
                return Err(fail(format!("nonpositive outlay in {outlays:?}")));
            }
            Ok(())
        },
    );

    run_suite(
        &mut failures,
        "learning curve shape",
        (0.0..0.3f64, 0.0..0.25f64, 1..12u64, 0..200u64),
        |(lr_early, mature_gap, early_phase_count, n)| {
            let lp = LearningParams {
                lr_early,
                lr_mature: lr_early + mature_gap,
                early_phase_count,
                pooling: LearningPooling::Global,
            };
            if learning_multiplier(0, &lp) != 1.0 {
                return Err(fail("first unit not at full cost".into()));
            }
            let here = learning_multiplier(n, &lp);
            let next = learning_multiplier(n + 1, &lp);
            if next > here + 1e-15 {
                return Err(fail(format!("multiplier rises: {here} -> {next} at n {n}")));
            }
            // Crossing the phase boundary continues from the early-phase
            // value at the mature slope.
            let b_mature = -(1.0 - lp.lr_mature).log2();
            let k = early_phase_count as f64;
            let at_boundary = learning_multiplier(early_phase_count - 1, &lp);
            let after = learning_multiplier(early_phase_count, &lp);
            let expected = at_boundary * ((k + 1.0) / k).powf(-b_mature);
            if rel(after, expected) > 1e-12 {
                return Err(fail(format!("discontinuity at boundary: {after} vs {expected}")));
            }
            Ok(())
        },
    );

    run_suite(
        &mut failures,
        "cap feasibility",
        (
            proptest::collection::vec(2.0e5..1.6e6f64, 1..5),
            3..5u32,
            1.02..4.0f64,
        ),
        |(capacities, dev, cap_multiple)| {
            let mut local = Vec::new();
            check_cap_instance(
                "prop",
                &capacities,
                vec![capture_option(TechId::CcsPostcombustion, dev, 1.0e9, 0.7)],
                cap_multiple,
                &mut local,
            );
            if local.is_empty() {
                Ok(())
            } else {
                Err(fail(local.join("; ")))
            }
        },
    );

    run_suite(
        &mut failures,
        "option argmin",
        (
            3.0e5..1.5e6f64,
            0.5e9..2.0e9f64,
            0.55..0.95f64,
            0.5e9..2.0e9f64,
            0.55..0.95f64,
            2024..2040i32,
        ),
        |(capacity, ref_a, alpha_a, ref_b, alpha_b, start)| {
            let scenario = flat_scenario();
            let prices = flat_prices();
            let catalog = unbounded_storage_catalog(vec![
                capture_option(TechId::CcsPostcombustion, 3, ref_a, alpha_a),
                capture_option(TechId::BlueH2, 4, ref_b, alpha_b),
            ]);
            let ctx = CellContext {
                scenario: &scenario,
                catalog: &catalog,
                prices: &prices,
                finance: FinanceParams::default(),
            };
            let asset = test_cracker(0, capacity);
            let learning = LearningState::new(LearningPooling::Global);
            let ledger = StorageLedger::new();
            let sel = select_option(
                &asset,
                BuildType::Retrofit,
                Timing::StartIn(start),
                None,
                &learning,
                &ledger,
                &ctx,
            )
            .map_err(|e| fail(e.to_string()))?;
            // Recompute each candidate's levelized cost in isolation.
            let region_prices = prices.region(Region::NorthAmerica).unwrap();
            let site = &catalog.storage[&Region::NorthAmerica][0];
            let mut best = f64::INFINITY;
            for option in &catalog.options {
                let bundle = chemdecarb_core::catalog::option_performance(option, &asset)
                    .map_err(|e| fail(e.to_string()))?;
                let stored = bundle.co2_stored_t_per_y();
                let km = asset.location().great_circle_km(&site.location());
                let ts = site.unit_storage_cost
                    + prices.transport.tariff_per_t_km
                        * km
                        * chemdecarb_core::costing::volume_factor(
                            stored,
                            prices.transport.ref_volume_t_per_y,
                        );
                let q = quote(
                    option,
                    &bundle,
                    0,
                    &region_prices.quote_context(FinanceParams::default(), scenario.learning, ts),
                )
                .map_err(|e| fail(e.to_string()))?;
                best = best.min(q.lcoa);
            }
            if rel(sel.quote.lcoa, best) > 1e-12 {
                return Err(fail(format!("selected {} but the minimum is {best}", sel.quote.lcoa)));
            }
            Ok(())
        },
    );

    run_suite(
        &mut failures,
        "frozen-reference proportionality",
        (2.0e5..2.0e6f64, -0.05..0.08f64, -0.05..0.08f64),
        |(capacity, rate_to_2050, rate_after_2050)| {
            let asset = test_cracker(0, capacity);
            let anchor = asset.production_t_per_y();
            let table = AssetTable { records: vec![asset] };
            let schedule = GrowthSchedule { anchor_t_per_y: anchor, rate_to_2050, rate_after_2050 };
            let series = chemdecarb_core::projections::production_series(
                Some(Region::NorthAmerica),
                Chemical::Ethylene,
                &schedule,
            )
            .map_err(|e| fail(e.to_string()))?;
            let scenario = flat_scenario();
            let frozen = frozen_reference(&table, std::slice::from_ref(&series), &scenario)
                .map_err(|e| fail(e.to_string()))?;
            let values = &frozen.by_cell[&(Region::NorthAmerica, Chemical::Ethylene)];
            for (i, year) in (YEAR_MIN..=YEAR_MAX).enumerate() {
                let want = values[0] * series.value(year) / series.value(YEAR_MIN);
                if rel(values[i], want) > 1e-9 {
                    return Err(fail(format!("year {year}: {} breaks proportionality {want}", values[i])));
                }
            }
            Ok(())
        },
    );

    run_suite(
        &mut failures,
        "aggregation totals",
        proptest::collection::vec(
            (0..4usize, 0..4usize, 0..58usize, 0.0..1.0e7f64, 0.0..1.0e7f64, 0.0..1.0e7f64),
            1..24,
        ),
        |entries| {
            let chemicals = [Chemical::Ethylene, Chemical::Ammonia, Chemical::Methanol, Chemical::Benzene];
            let mut table = EmissionsTable::new();
            for (r, c, y, s1c, s2, s3) in &entries {
                table.add(
                    Region::ALL[*r],
                    chemicals[*c],
                    YEAR_MIN + *y as i32,
                    &EmissionsBreakdown {
                        scope1_combustion: *s1c,
                        scope1_process: 0.3 * s1c,
                        scope2: *s2,
                        scope3_upstream: *s3,
                        co2_stored: 0.0,
                    },
                );
            }
            let total = table.total();
            for keys in [
                vec![GroupBy::Region],
                vec![GroupBy::Chemical],
                vec![GroupBy::Scope],
                vec![GroupBy::Region, GroupBy::Chemical, GroupBy::Scope],
            ] {
                let groups = table.aggregate(&keys);
                for (i, want) in total.iter().enumerate() {
                    let got: f64 = groups.values().map(|series| series[i]).sum();
                    if rel(got, *want) > 1e-12 {
                        return Err(fail(format!("{keys:?} year index {i}: {got} != {want}")));
                    }
                }
            }
            Ok(())
        },
    );

    run_suite(
        &mut failures,
        "scheduling determinism",
        (
            proptest::collection::vec(2.0e5..1.6e6f64, 1..6),
            3..5u32,
            1.05..4.0f64,
        ),
        |(capacities, dev, cap_multiple)| {
            let scenario = flat_scenario();
            let prices = flat_prices();
            let catalog = unbounded_storage_catalog(vec![capture_option(
                TechId::CcsPostcombustion,
                dev,
                1.0e9,
                0.7,
            )]);
            let ctx = CellContext {
                scenario: &scenario,
                catalog: &catalog,
                prices: &prices,
                finance: FinanceParams::default(),
            };
            let targets: Vec<AssetRecord> = capacities
                .iter()
                .enumerate()
                .map(|(i, &c)| test_cracker(i, c))
                .collect();
            let cap = 1.0e9 * cap_multiple;
            let render = || -> Result<String, TestCaseError> {
                let mut learning = LearningState::new(LearningPooling::Global);
                let mut ledger = StorageLedger::new();
                let schedule = plan_capital_cap(
                    Region::NorthAmerica,
                    ChemicalGroup::SteamCrackers,
                    targets.clone(),
                    Vec::new(),
                    cap,
                    &mut learning,
                    &mut ledger,
                    &ctx,
                )
                .map_err(|e| fail(e.to_string()))?;
                Ok(format!("{schedule:?}"))
            };
            let first = render()?;
            let second = render()?;
            if first != second {
                return Err(fail("same inputs produced different schedules".into()));
            }
            Ok(())
        },
    );

    let detail = "7 suites × 500 cases: outlays, learning, caps, argmin, frozen reference, aggregation, determinism".to_string();
    summarize("randomized invariants", &detail, failures, t0, 60.0);
}
