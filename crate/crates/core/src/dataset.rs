//! Embedded reference table of LTE interleavers with their exact minimum
//! distance and multiplicity under dual termination, and a regression runner.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::convcode::TerminationMode;
use crate::dmin::{estimate_dmin, exact_dmin, EstimateConfig, ExactConfig};
use crate::error::{Error, Result};
use crate::permpoly::Qpp;
use crate::turbo::TurboCode;

const TABLE: &str = include_str!("../data/lte_table_iv.txt");

pub const TABLE_VERSION: u32 = 1;
pub const TABLE_ROWS: usize = 188;
pub const TABLE_SHA256: &str = "77c271ece085d28bf1d72bbf90258d6df7ae68e899cb92e6547d16fd5c1152b7";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LteRow {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
    pub dmin: u32,
    pub multiplicity: u64,
}

impl LteRow {
    pub fn qpp(&self) -> Result<Qpp> {
        Qpp::new(self.n, self.f1, self.f2)
    }
}

/// The table exactly as embedded, for export.
pub fn raw_table() -> &'static str {
    TABLE
}

pub fn table_checksum() -> String {
    Sha256::digest(TABLE.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize) -> Result<T> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::Dataset(format!("malformed row on line {line}")))
}

/// Parses the embedded table after checking its checksum and row count.
pub fn lte_table() -> Result<Vec<LteRow>> {
    let sum = table_checksum();
    if sum != TABLE_SHA256 {
        return Err(Error::Dataset(format!("checksum mismatch: {sum}")));
    }
    let mut rows = Vec::with_capacity(TABLE_ROWS);
    for (i, line) in TABLE.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let row = LteRow {
            n: parse_field(fields.next(), i + 1)?,
            f1: parse_field(fields.next(), i + 1)?,
            f2: parse_field(fields.next(), i + 1)?,
            dmin: parse_field(fields.next(), i + 1)?,
            multiplicity: parse_field(fields.next(), i + 1)?,
        };
        if fields.next().is_some() {
            return Err(Error::Dataset(format!("extra fields on line {}", i + 1)));
        }
        rows.push(row);
    }
    if rows.len() != TABLE_ROWS {
        return Err(Error::Dataset(format!("expected {TABLE_ROWS} rows, found {}", rows.len())));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Estimate,
}

#[derive(Debug, Clone)]
pub struct RegressionConfig {
    /// Rows with `min_n <= N <= max_n` are checked.
    pub min_n: u64,
    pub max_n: u64,
    /// Rows up to this length use the exact search; longer ones the estimator.
    pub exact_max_n: u64,
    pub exact: ExactConfig,
    pub estimate: EstimateConfig,
}

impl Default for RegressionConfig {
    fn default() -> Self {
        Self {
            min_n: 0,
            max_n: 128,
            exact_max_n: 128,
            exact: ExactConfig::default(),
            estimate: EstimateConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionRow {
    pub expected: LteRow,
    pub method: Method,
    pub dmin: Option<u32>,
    pub multiplicity: u64,
    /// Exact rows must match distance and multiplicity; estimated rows the distance.
    pub pass: bool,
    pub budget_exhausted: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub dataset_version: u32,
    pub dataset_sha256: String,
    pub rows: Vec<RegressionRow>,
}

impl RegressionReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.rows.len() - self.passed()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.rows.iter().any(|r| r.budget_exhausted)
    }
}

fn check_row(row: &LteRow, config: &RegressionConfig) -> RegressionRow {
    let method = if row.n <= config.exact_max_n {
        Method::Exact
    } else {
        Method::Estimate
    };
    let result = row.qpp().and_then(TurboCode::lte).and_then(|code| match method {
        Method::Exact => exact_dmin(&code, TerminationMode::Dual, &config.exact),
        Method::Estimate => estimate_dmin(&code, TerminationMode::Dual, &config.estimate),
    });
    match result {
        Ok(r) => {
            let pass = r.dmin == Some(row.dmin) && (method == Method::Estimate || r.multiplicity == row.multiplicity);
            RegressionRow {
                expected: *row,
                method,
                dmin: r.dmin,
                multiplicity: r.multiplicity,
                pass,
                budget_exhausted: false,
                error: None,
            }
        }
        Err(e) => RegressionRow {
            expected: *row,
            method,
            dmin: match e {
                Error::BudgetExhausted { best_upper, .. } => best_upper,
                _ => None,
            },
            multiplicity: 0,
            pass: false,
            budget_exhausted: matches!(e, Error::BudgetExhausted { .. }),
            error: Some(e.to_string()),
        },
    }
}

/// Recomputes every selected row and compares it with the table.
pub fn lte_regression(config: &RegressionConfig) -> Result<RegressionReport> {
    let rows = lte_table()?
        .iter()
        .filter(|r| (config.min_n..=config.max_n).contains(&r.n))
        .map(|r| {
            let checked = check_row(r, config);
            log::info!(
                "regress N={} {:?}: got {:?}/{} expected {}/{} -> {}",
                r.n,
                checked.method,
                checked.dmin,
                checked.multiplicity,
                r.dmin,
                r.multiplicity,
                if checked.pass { "pass" } else { "fail" }
            );
            checked
        })
        .collect();
    Ok(RegressionReport {
        dataset_version: TABLE_VERSION,
        dataset_sha256: TABLE_SHA256.to_string(),
        rows,
    })
}
