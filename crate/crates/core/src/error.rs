use thiserror::Error;

/// Crate-wide error type. Variants carry enough context to address the
/// offending file, row, or parameter without re-parsing inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error in {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },

    #[error("json error in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("schema error: missing or unknown column `{column}`")]
    Schema { column: String },

    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("duplicate asset_id `{asset_id}`")]
    DuplicateAsset { asset_id: String },

    #[error("facility `{facility_id}` has conflicting {field} across member assets")]
    FacilityConflict { facility_id: String, field: String },

    #[error("invalid config {file}: {message}")]
    Config { file: String, message: String },

    #[error("invalid synthesis spec: {0}")]
    SynthesisSpec(String),

    #[error("unknown region token `{0}`")]
    UnknownRegion(String),

    #[error("unknown scenario preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown key `{key}` in {file}")]
    UnknownKey { key: String, file: String },

    #[error("year {year} outside modeled horizon {min}..={max}")]
    YearOutOfRange { year: i32, min: i32, max: i32 },

    #[error("mismatched year ranges between series")]
    YearRangeMismatch,

    #[error("inverted range {from}..{to}")]
    InvertedRange { from: i32, to: i32 },

    #[error("capital recovery factor undefined for asset life {0} < 1 year")]
    InvalidAssetLife(u32),

    #[error("nonpositive capacity {0} in capex scaling")]
    NonpositiveCapacity(f64),

    #[error("outlay profile requires at least one development year, got {0}")]
    InvalidDevYears(u32),

    #[error("storage exhausted: no site can accept {needed_t_per_y:.0} t/y more CO2")]
    StorageExhausted { needed_t_per_y: f64 },

    #[error("no storage sites configured")]
    NoStorageSites,

    #[error("option {tech} is not applicable to asset {asset_id}")]
    InapplicableOption { tech: String, asset_id: String },

    #[error("quote with {tech} abates zero scope-1")]
    ZeroAbatement { tech: String },

    #[error("no regional prices configured for {0}")]
    MissingPrices(String),

    #[error("facility {facility_id} has no applicable abatement option in {year}")]
    NoApplicableOption { facility_id: String, year: i32 },

    #[error("deadline {deadline} infeasible: earliest feasible completion year is {earliest}")]
    InfeasibleDeadline { deadline: i32, earliest: i32 },

    #[error(
        "project for {facility_id} permanently blocked: minimal annual outlay \
         {min_outlay:.3e} $/y exceeds cap {cap:.3e} $/y"
    )]
    PermanentlyBlocked {
        facility_id: String,
        min_outlay: f64,
        cap: f64,
    },
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn config(file: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            file: file.into(),
            message: message.into(),
        }
    }
}
