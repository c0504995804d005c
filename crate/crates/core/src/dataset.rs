//! Asset-level production data: loading, validation, and facility grouping.
//!
//! The canonical interchange format is a UTF-8 CSV with one asset per row and
//! a fixed header (see [`CSV_COLUMNS`]). An asset is a single production unit
//! (one cracker train, one synthesis loop); a facility is the site grouping
//! of assets sharing a `facility_id`.

use crate::error::Error;
use crate::types::{Chemical, HeatFuel, Location, Region};
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

/// Column names of `assets.csv`, in canonical order.
pub const CSV_COLUMNS: [&str; 17] = [
    "asset_id",
    "facility_id",
    "owner",
    "region",
    "latitude",
    "longitude",
    "startup_year",
    "chemical",
    "process",
    "capacity",
    "utilization",
    "feedstock_type",
    "feedstock_intensity",
    "electricity_intensity",
    "steam_intensity",
    "fuel_intensity",
    "process_co2_intensity",
];

/// Closed vocabulary of process tokens.
pub const PROCESS_TOKENS: [&str; 8] = [
    "steam_cracker",
    "on_purpose_propylene",
    "aromatics_extraction",
    "smr_ammonia",
    "coal_ammonia",
    "gas_methanol",
    "coal_methanol",
    "electrolysis_chlor_alkali",
];

/// Closed vocabulary of feedstock tokens.
pub const FEEDSTOCK_TOKENS: [&str; 6] = [
    "ethane",
    "propane",
    "naphtha",
    "natural_gas",
    "coal",
    "brine",
];

/// One production unit. Intensities are per tonne of product:
/// `feedstock_intensity`, `steam_intensity`, and `fuel_intensity` in GJ/t
/// (fuel excludes steam-raising fuel, which is carried separately),
/// `electricity_intensity` in MWh/t, `process_co2_intensity` in tCO₂/t
/// (process emissions as distinct from fuel combustion).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssetRecord {
    pub asset_id: String,
    pub facility_id: String,
    pub owner: String,
    pub region: Region,
    pub latitude: f64,
    pub longitude: f64,
    pub startup_year: i32,
    pub chemical: Chemical,
    pub process: String,
    /// Tonnes product per year.
    pub capacity: f64,
    /// Fraction in (0, 1].
    pub utilization: f64,
    pub feedstock_type: String,
    pub feedstock_intensity: f64,
    pub electricity_intensity: f64,
    pub steam_intensity: f64,
    pub fuel_intensity: f64,
    pub process_co2_intensity: f64,
}

impl AssetRecord {
    pub fn location(&self) -> Location {
        Location::new(self.latitude, self.longitude)
    }

    /// Annual production in tonnes, at the recorded utilization.
    pub fn production_t_per_y(&self) -> f64 {
        self.capacity * self.utilization
    }

    /// Fuel fired for heat and steam. Coal-based routes fire coal; all other
    /// processes fire natural gas or fuel gas accounted at the gas factor.
    pub fn heat_fuel(&self) -> HeatFuel {
        if self.feedstock_type == "coal" {
            HeatFuel::Coal
        } else {
            HeatFuel::NaturalGas
        }
    }

    /// Combustion-related scope-1 intensity, tCO₂ per tonne product.
    pub fn combustion_co2_intensity(&self, ef_gas: f64, ef_coal: f64) -> f64 {
        let ef = match self.heat_fuel() {
            HeatFuel::NaturalGas => ef_gas,
            HeatFuel::Coal => ef_coal,
        };
        (self.fuel_intensity + self.steam_intensity) * ef
    }
}

/// An ordered, validated collection of asset records.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AssetTable {
    pub records: Vec<AssetRecord>,
}

impl AssetTable {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, AssetRecord> {
        self.records.iter()
    }
}

/// A production site: all assets sharing one `facility_id`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facility {
    pub facility_id: String,
    pub region: Region,
    pub location: Location,
    pub asset_ids: Vec<String>,
    /// Aggregate capacity per chemical, tonnes product per year.
    pub capacity_by_chemical: BTreeMap<Chemical, f64>,
}

/// One invariant violation found by [`validate_assets`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// 1-based data row (header excluded).
    pub row: usize,
    pub asset_id: String,
    pub field: String,
    pub message: String,
}

/// Validation outcome; empty iff the table satisfies every record invariant.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn parse_cell<T: std::str::FromStr>(row: usize, field: &str, raw: &str) -> Result<T> {
    raw.trim().parse::<T>().map_err(|_| Error::Row {
        row,
        message: format!("cannot parse {field} from `{raw}`"),
    })
}

/// Load `assets.csv`. The header must contain exactly the canonical columns
/// in canonical order; rows become validated-shape records (token and number
/// parsing only; range invariants are the business of [`validate_assets`]).
pub fn load_asset_table(path: &Path) -> Result<AssetTable> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Csv {
            path: display.clone(),
            source: e,
        })?;

    {
        let headers = reader.headers().map_err(|e| Error::Csv {
            path: display.clone(),
            source: e,
        })?;
        let got: Vec<&str> = headers.iter().collect();
        for expected in CSV_COLUMNS {
            if !got.contains(&expected) {
                return Err(Error::Schema {
                    column: expected.to_string(),
                });
            }
        }
        for column in &got {
            if !CSV_COLUMNS.contains(column) {
                return Err(Error::Schema {
                    column: column.to_string(),
                });
            }
        }
        if got != CSV_COLUMNS {
            return Err(Error::Schema {
                column: format!("column order must be {:?}", CSV_COLUMNS),
            });
        }
    }

    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| Error::Csv {
            path: display.clone(),
            source: e,
        })?;
        if record.len() != CSV_COLUMNS.len() {
            return Err(Error::Row {
                row,
                message: format!("expected {} cells, got {}", CSV_COLUMNS.len(), record.len()),
            });
        }
        let cell = |i: usize| record.get(i).unwrap_or("");

        let region = Region::parse(cell(3)).ok_or_else(|| Error::Row {
            row,
            message: format!("unknown region `{}`", cell(3)),
        })?;
        let chemical = Chemical::parse(cell(7)).ok_or_else(|| Error::Row {
            row,
            message: format!("unknown chemical `{}`", cell(7)),
        })?;

        let asset = AssetRecord {
            asset_id: cell(0).to_string(),
            facility_id: cell(1).to_string(),
            owner: cell(2).to_string(),
            region,
            latitude: parse_cell(row, "latitude", cell(4))?,
            longitude: parse_cell(row, "longitude", cell(5))?,
            startup_year: parse_cell(row, "startup_year", cell(6))?,
            chemical,
            process: cell(8).to_string(),
            capacity: parse_cell(row, "capacity", cell(9))?,
            utilization: parse_cell(row, "utilization", cell(10))?,
            feedstock_type: cell(11).to_string(),
            feedstock_intensity: parse_cell(row, "feedstock_intensity", cell(12))?,
            electricity_intensity: parse_cell(row, "electricity_intensity", cell(13))?,
            steam_intensity: parse_cell(row, "steam_intensity", cell(14))?,
            fuel_intensity: parse_cell(row, "fuel_intensity", cell(15))?,
            process_co2_intensity: parse_cell(row, "process_co2_intensity", cell(16))?,
        };
        if !seen.insert(asset.asset_id.clone()) {
            return Err(Error::DuplicateAsset {
                asset_id: asset.asset_id,
            });
        }
        records.push(asset);
    }
    Ok(AssetTable { records })
}

/// Write an asset table in the canonical CSV layout. Floats are written with
/// enough precision to round-trip bit-exactly.
pub fn write_asset_table(path: &Path, table: &AssetTable) -> Result<()> {
    let display = path.display().to_string();
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::Csv {
        path: display.clone(),
        source: e,
    })?;
    writer
        .write_record(CSV_COLUMNS)
        .map_err(|e| Error::Csv {
            path: display.clone(),
            source: e,
        })?;
    for a in &table.records {
        let fields = [
            a.asset_id.clone(),
            a.facility_id.clone(),
            a.owner.clone(),
            a.region.as_str().to_string(),
            format_float(a.latitude),
            format_float(a.longitude),
            a.startup_year.to_string(),
            a.chemical.as_str().to_string(),
            a.process.clone(),
            format_float(a.capacity),
            format_float(a.utilization),
            a.feedstock_type.clone(),
            format_float(a.feedstock_intensity),
            format_float(a.electricity_intensity),
            format_float(a.steam_intensity),
            format_float(a.fuel_intensity),
            format_float(a.process_co2_intensity),
        ];
        writer.write_record(&fields).map_err(|e| Error::Csv {
            path: display.clone(),
            source: e,
        })?;
    }
    writer.flush().map_err(|e| Error::io(display, e))?;
    Ok(())
}

/// Shortest decimal representation that parses back to the same f64.
fn format_float(x: f64) -> String {
    let mut s = format!("{x}");
    if s.parse::<f64>() != Ok(x) {
        s = format!("{x:?}");
    }
    s
}

/// Check every record invariant; violations are report content, not errors.
pub fn validate_assets(table: &AssetTable) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |row: usize, asset_id: &str, field: &str, message: String| {
        violations.push(Violation {
            row,
            asset_id: asset_id.to_string(),
            field: field.to_string(),
            message,
        });
    };

    for (idx, a) in table.records.iter().enumerate() {
        let row = idx + 1;
        if !(a.capacity > 0.0) {
            push(row, &a.asset_id, "capacity", format!("must be > 0, got {}", a.capacity));
        }
        if !(a.utilization > 0.0 && a.utilization <= 1.0) {
            push(
                row,
                &a.asset_id,
                "utilization",
                format!("must be in (0, 1], got {}", a.utilization),
            );
        }
        let intensities = [
            ("feedstock_intensity", a.feedstock_intensity),
            ("electricity_intensity", a.electricity_intensity),
            ("steam_intensity", a.steam_intensity),
            ("fuel_intensity", a.fuel_intensity),
            ("process_co2_intensity", a.process_co2_intensity),
        ];
        for (field, value) in intensities {
            if !(value >= 0.0) {
                push(row, &a.asset_id, field, format!("must be >= 0, got {value}"));
            }
        }
        if a.startup_year > 2023 {
            push(
                row,
                &a.asset_id,
                "startup_year",
                format!("must be <= 2023, got {}", a.startup_year),
            );
        }
        if !PROCESS_TOKENS.contains(&a.process.as_str()) {
            push(row, &a.asset_id, "process", format!("unknown token `{}`", a.process));
        }
        if !FEEDSTOCK_TOKENS.contains(&a.feedstock_type.as_str()) {
            push(
                row,
                &a.asset_id,
                "feedstock_type",
                format!("unknown token `{}`", a.feedstock_type),
            );
        }
        if !a.location().is_valid() {
            push(
                row,
                &a.asset_id,
                "latitude/longitude",
                format!("invalid coordinates ({}, {})", a.latitude, a.longitude),
            );
        }
    }
    ValidationReport { violations }
}

/// Partition assets into facilities by `facility_id`, summing capacity per
/// chemical. Member assets must agree on region and coordinates.
pub fn group_facilities(table: &AssetTable) -> Result<Vec<Facility>> {
    let mut facilities: BTreeMap<String, Facility> = BTreeMap::new();
    for a in &table.records {
        match facilities.get_mut(&a.facility_id) {
            None => {
                let mut capacity_by_chemical = BTreeMap::new();
                capacity_by_chemical.insert(a.chemical, a.capacity);
                facilities.insert(
                    a.facility_id.clone(),
                    Facility {
                        facility_id: a.facility_id.clone(),
                        region: a.region,
                        location: a.location(),
                        asset_ids: vec![a.asset_id.clone()],
                        capacity_by_chemical,
                    },
                );
            }
            Some(f) => {
                if f.region != a.region {
                    return Err(Error::FacilityConflict {
                        facility_id: a.facility_id.clone(),
                        field: "region".to_string(),
                    });
                }
                if f.location != a.location() {
                    return Err(Error::FacilityConflict {
                        facility_id: a.facility_id.clone(),
                        field: "location".to_string(),
                    });
                }
                f.asset_ids.push(a.asset_id.clone());
                *f.capacity_by_chemical.entry(a.chemical).or_insert(0.0) += a.capacity;
            }
        }
    }
    Ok(facilities.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn sample_row() -> String {
        "a1,f1,AcmeChem,NorthAmerica,29.7,-95.3,1998,ethylene,steam_cracker,\
         1500000,0.85,ethane,46.0,0.8,7.0,25.0,0.0"
            .to_string()
    }

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "{}", CSV_COLUMNS.join(",")).unwrap();
        write!(f, "{content}").unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn loads_single_valid_row() {
        let f = write_csv(&sample_row());
        let table = load_asset_table(f.path()).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.records[0].chemical, Chemical::Ethylene);
        assert_eq!(table.records[0].capacity, 1_500_000.0);
    }

    #[test]
    fn missing_capacity_column_is_schema_error() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        let headers: Vec<&str> = CSV_COLUMNS
            .iter()
            .copied()
            .filter(|c| *c != "capacity")
            .collect();
        writeln!(f, "{}", headers.join(",")).unwrap();
        f.flush().unwrap();
        match load_asset_table(f.path()) {
            Err(Error::Schema { column }) => assert_eq!(column, "capacity"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_asset_id_rejected() {
        let f = write_csv(&format!("{}\n{}", sample_row(), sample_row()));
        match load_asset_table(f.path()) {
            Err(Error::DuplicateAsset { asset_id }) => assert_eq!(asset_id, "a1"),
            other => panic!("expected duplicate error, got {other:?}"),
        }
    }

    #[test]
    fn unparseable_cell_is_row_addressed() {
        let bad = sample_row().replace("0.85", "eighty-five");
        let f = write_csv(&bad);
        match load_asset_table(f.path()) {
            Err(Error::Row { row, message }) => {
                assert_eq!(row, 1);
                assert!(message.contains("utilization"), "{message}");
            }
            other => panic!("expected row error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let f = write_csv(&sample_row());
        let table = load_asset_table(f.path()).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        write_asset_table(out.path(), &table).unwrap();
        let again = load_asset_table(out.path()).unwrap();
        assert_eq!(table, again);
    }

    #[test]
    fn clean_table_validates_clean() {
        let f = write_csv(&sample_row());
        let table = load_asset_table(f.path()).unwrap();
        assert!(validate_assets(&table).is_clean());
    }

    #[test]
    fn utilization_out_of_range_flagged() {
        let bad = sample_row().replace("0.85", "1.3");
        let f = write_csv(&bad);
        let table = load_asset_table(f.path()).unwrap();
        let report = validate_assets(&table);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].field, "utilization");
        assert_eq!(report.violations[0].row, 1);
    }

    #[test]
    fn negative_intensity_flagged() {
        let bad = sample_row().replace(",0.8,", ",-0.8,");
        let f = write_csv(&bad);
        let table = load_asset_table(f.path()).unwrap();
        let report = validate_assets(&table);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].field, "electricity_intensity");
    }

    #[test]
    fn groups_shared_facility_and_sums_capacity() {
        let row2 = sample_row().replace("a1,", "a2,").replace("1500000", "500000");
        let f = write_csv(&format!("{}\n{}", sample_row(), row2));
        let table = load_asset_table(f.path()).unwrap();
        let facilities = group_facilities(&table).unwrap();
        assert_eq!(facilities.len(), 1);
        let fac = &facilities[0];
        assert_eq!(fac.asset_ids.len(), 2);
        assert_eq!(fac.capacity_by_chemical[&Chemical::Ethylene], 2_000_000.0);
    }

    #[test]
    fn conflicting_region_in_facility_rejected() {
        let row2 = sample_row().replace("a1,", "a2,").replace("NorthAmerica", "Europe");
        let f = write_csv(&format!("{}\n{}", sample_row(), row2));
        let table = load_asset_table(f.path()).unwrap();
        match group_facilities(&table) {
            Err(Error::FacilityConflict { field, .. }) => assert_eq!(field, "region"),
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn single_asset_becomes_single_facility() {
        let f = write_csv(&sample_row());
        let table = load_asset_table(f.path()).unwrap();
        let facilities = group_facilities(&table).unwrap();
        assert_eq!(facilities.len(), 1);
        assert_eq!(facilities[0].asset_ids, vec!["a1".to_string()]);
    }
}
