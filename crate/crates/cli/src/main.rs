//! `chemdecarb`: generate synthetic asset tables, simulate decarbonization
//! pathways for the chemical industry, and summarize run directories.
//!
//! Exit codes: 0 on success, 2 for input or validation errors, 3 for
//! filesystem failures.

use anyhow::{anyhow, bail, Result};
use chemdecarb_core::config::load_finance;
use chemdecarb_core::dataset::{load_asset_table, validate_assets, write_asset_table};
use chemdecarb_core::output;
use chemdecarb_core::pathway::{run_pathway, RunInputs};
use chemdecarb_core::scenario::load_scenario;
use chemdecarb_core::synth::synthesize_assets;
use chemdecarb_core::{
    Catalog, FinanceParams, GrowthConfig, PricesConfig, ScenarioId, ScenarioParams, SynthesisSpec,
};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod manifest;
mod report;

use manifest::{RunManifest, MANIFEST_FILE};

#[derive(Parser)]
#[command(
    name = "chemdecarb",
    version,
    about = "Facility-level decarbonization pathways for the chemical industry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic world asset table from a synthesis spec.
    Synth {
        /// Synthesis spec JSON.
        #[arg(long)]
        spec: PathBuf,
        /// Override the spec's RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV path; the manifest lands next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate abatement pathways and write plot-ready tables.
    Run {
        /// Asset table CSV.
        #[arg(long)]
        assets: PathBuf,
        /// Scenario: preset ids (`SU,GA,GG`) or a path to a scenario JSON.
        #[arg(long)]
        scenario: String,
        /// Abatement option catalog JSON.
        #[arg(long)]
        catalog: PathBuf,
        /// Storage site table JSON (default: `storage_sites.json` next to
        /// the catalog).
        #[arg(long)]
        storage: Option<PathBuf>,
        /// Finance parameters JSON (default: 8% discount over 20 years).
        #[arg(long)]
        finance: Option<PathBuf>,
        /// Regional price table JSON.
        #[arg(long)]
        prices: PathBuf,
        /// Demand growth schedule JSON.
        #[arg(long)]
        growth: PathBuf,
        /// Output directory for tables, decision log, and manifest.
        #[arg(long)]
        out: PathBuf,
        /// Also emit the frozen-2023-intensity reference series.
        #[arg(long)]
        frozen_reference: bool,
    },
    /// Summarize a run directory: capital by cell, completion years,
    /// cumulative totals.
    Report {
        /// Run directory written by `chemdecarb run`.
        run: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth { spec, seed, out } => cmd_synth(&spec, seed, &out),
        Command::Run {
            assets,
            scenario,
            catalog,
            storage,
            finance,
            prices,
            growth,
            out,
            frozen_reference,
        } => cmd_run(RunArgs {
            assets,
            scenario,
            catalog,
            storage,
            finance,
            prices,
            growth,
            out,
            frozen_reference,
        }),
        Command::Report { run } => cmd_report(&run),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 3 for filesystem failures, 2 for anything wrong with the inputs.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<chemdecarb_core::Error>() {
        Some(chemdecarb_core::Error::Io { .. }) => 3,
        _ => 2,
    }
}

fn cmd_synth(spec_path: &Path, seed: Option<u64>, out: &Path) -> Result<()> {
    let mut spec = SynthesisSpec::load(spec_path)?;
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    let table = synthesize_assets(&spec)?;
    write_asset_table(out, &table)?;

    let mut manifest = RunManifest::new(Vec::new(), Some(spec.seed));
    manifest.record_input(spec_path)?;
    manifest.record_output(out)?;
    let manifest_path = out
        .parent()
        .map(|dir| dir.join(MANIFEST_FILE))
        .unwrap_or_else(|| PathBuf::from(MANIFEST_FILE));
    manifest.write(&manifest_path)?;
    println!(
        "wrote {} assets across {} facilities to {}",
        table.len(),
        spec.facility_count(),
        out.display()
    );
    Ok(())
}

struct RunArgs {
    assets: PathBuf,
    scenario: String,
    catalog: PathBuf,
    storage: Option<PathBuf>,
    finance: Option<PathBuf>,
    prices: PathBuf,
    growth: PathBuf,
    out: PathBuf,
    frozen_reference: bool,
}

/// Preset id list (`SU,GA,GG`), or a path to a scenario JSON.
fn parse_scenarios(arg: &str) -> Result<Vec<ScenarioParams>> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(vec![load_scenario(path)?]);
    }
    let mut scenarios = Vec::new();
    for token in arg.split(',') {
        let token = token.trim();
        let id = ScenarioId::parse(token)
            .filter(|id| *id != ScenarioId::Custom)
            .ok_or_else(|| anyhow!(chemdecarb_core::Error::UnknownPreset(token.to_string())))?;
        if scenarios
            .iter()
            .any(|s: &ScenarioParams| s.scenario_id == id)
        {
            bail!("scenario `{token}` listed twice");
        }
        scenarios.push(ScenarioParams::preset(id));
    }
    Ok(scenarios)
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let assets = load_asset_table(&args.assets)?;
    let validation = validate_assets(&assets);
    if !validation.is_clean() {
        for v in &validation.violations {
            eprintln!(
                "row {}: asset `{}` field `{}`: {}",
                v.row, v.asset_id, v.field, v.message
            );
        }
        bail!(
            "{}: {} validation violations",
            args.assets.display(),
            validation.violations.len()
        );
    }

    let storage_path = args
        .storage
        .clone()
        .unwrap_or_else(|| args.catalog.with_file_name("storage_sites.json"));
    let catalog = Catalog::load(&args.catalog, &storage_path)?;
    let prices = PricesConfig::load(&args.prices)?;
    let growth = GrowthConfig::load(&args.growth)?;
    let finance = match &args.finance {
        Some(path) => load_finance(path)?,
        None => FinanceParams::default(),
    };
    let scenarios = parse_scenarios(&args.scenario)?;

    let mut results = Vec::with_capacity(scenarios.len());
    for scenario in scenarios {
        let inputs = RunInputs {
            assets: assets.clone(),
            catalog: catalog.clone(),
            prices: prices.clone(),
            growth: growth.clone(),
            finance,
            scenario,
        };
        results.push(run_pathway(&inputs)?);
    }

    let paths = output::write_run_dir(&args.out, &results, &catalog, args.frozen_reference)?;

    let mut manifest = RunManifest::new(
        results
            .iter()
            .map(|r| r.scenario_id.as_str().to_string())
            .collect(),
        None,
    );
    for input in [
        Some(&args.assets),
        Some(&args.catalog),
        Some(&storage_path),
        Some(&args.prices),
        Some(&args.growth),
        args.finance.as_ref(),
    ]
    .into_iter()
    .flatten()
    {
        manifest.record_input(input)?;
    }
    for path in &paths {
        manifest.record_output(path)?;
    }
    manifest.write(&args.out.join(MANIFEST_FILE))?;

    for result in &results {
        let id = result.scenario_id.as_str();
        let unabated: usize = result.schedules.iter().map(|s| s.unabated.len()).sum();
        match result.completion_year() {
            Some(year) => println!("{id}: all targeted facilities abated by {year}"),
            None if unabated > 0 => println!(
                "{id}: {unabated} facilities remain unabated at the horizon"
            ),
            None => println!("{id}: no retrofit targets in scope"),
        }
    }
    println!("wrote {} files to {}", paths.len() + 1, args.out.display());
    Ok(())
}

fn cmd_report(run_dir: &Path) -> Result<()> {
    print!("{}", report::render(run_dir)?);
    Ok(())
}
