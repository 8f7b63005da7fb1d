//! Coefficient files (JSON) and check reports (CSV).

use std::fs;
use std::path::{Path, PathBuf};

use boettcher_core::{CheckReport, CoefficientTable, FamilyParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub k: usize,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub format_version: u32,
    pub p: u64,
    pub r: u32,
    pub max_k: usize,
    pub coefficients: Vec<CoefficientRecord>,
}

impl TableFile {
    pub fn from_table(table: &CoefficientTable) -> Self {
        let params = table.params();
        TableFile {
            format_version: FORMAT_VERSION,
            p: params.p(),
            r: params.r(),
            max_k: table.max_k(),
            coefficients: table
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, a)| CoefficientRecord {
                    k,
                    numerator: a.numer().to_string(),
                    denominator: a.denom().to_string(),
                })
                .collect(),
        }
    }

    /// Rebuilds the table, rejecting anything a solver could not have produced
    /// in shape: wrong version, gaps in `k`, zero denominators.
    pub fn into_table(self) -> Result<CoefficientTable, String> {
        if self.format_version != FORMAT_VERSION {
            return Err(format!("unsupported format_version {}", self.format_version));
        }
        if self.coefficients.len() != self.max_k + 1 {
            return Err(format!(
                "max_k = {} but {} coefficient records",
                self.max_k,
                self.coefficients.len()
            ));
        }
        let params = FamilyParams::new(self.p, self.r).map_err(|e| e.to_string())?;
        let mut a = Vec::with_capacity(self.coefficients.len());
        for (expected_k, rec) in self.coefficients.into_iter().enumerate() {
            if rec.k != expected_k {
                return Err(format!("record {expected_k} has k = {}", rec.k));
            }
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| format!("k = {}: `{s}` is not a decimal integer", rec.k))
            };
            let (num, den) = (parse(&rec.numerator)?, parse(&rec.denominator)?);
            if den == BigInt::from(0) {
                return Err(format!("k = {}: zero denominator", rec.k));
            }
            a.push(BigRational::new(num, den));
        }
        CoefficientTable::from_coefficients(params, a).map_err(|e| e.to_string())
    }
}

pub fn table_file_name(p: u64, r: u32) -> String {
    format!("coeffs_p{p}_r{r}.json")
}

pub fn report_file_name(p: u64, r: u32) -> String {
    format!("report_p{p}_r{r}.csv")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

/// Canonical serialization: pretty JSON with a trailing newline.
pub fn table_to_json(table: &CoefficientTable) -> String {
    let mut text = serde_json::to_string_pretty(&TableFile::from_table(table)).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn save_table(table: &CoefficientTable, dir: &Path) -> Result<PathBuf, CliError> {
    let params = table.params();
    let path = dir.join(table_file_name(params.p(), params.r()));
    fs::write(&path, table_to_json(table)).map_err(io_err(&path))?;
    Ok(path)
}

pub fn load_table(path: &Path) -> Result<CoefficientTable, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let file: TableFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    file.into_table().map_err(|reason| CliError::TableFormat {
        path: path.to_path_buf(),
        reason,
    })
}

pub const REPORT_HEADER: [&str; 7] = ["check_name", "p", "r", "index", "expected", "actual", "pass"];

pub fn write_reports(path: &Path, reports: &[CheckReport]) -> Result<(), CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(csv_err)?;
    writer.write_record(REPORT_HEADER).map_err(csv_err)?;
    for report in reports {
        let p = report.p().to_string();
        let r = report.r().map(|r| r.to_string()).unwrap_or_default();
        for w in report.witnesses() {
            let pass = if w.pass { "true" } else { "false" };
            writer
                .write_record([report.check_name(), &p, &r, &w.index, &w.expected, &w.actual, pass])
                .map_err(csv_err)?;
        }
    }
    writer.flush().map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use boettcher_core::boettcher::solve_coefficients;

    #[test]
    fn json_round_trip_is_exact() {
        let table = solve_coefficients(FamilyParams::new(3, 2).unwrap(), 40).unwrap();
        let text = table_to_json(&table);
        let file: TableFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.coefficients.len(), 41);
        let back = file.into_table().unwrap();
        assert_eq!(back, table);
        assert_eq!(table_to_json(&back), text);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let table = solve_coefficients(FamilyParams::new(3, 0).unwrap(), 5).unwrap();
        let good = TableFile::from_table(&table);

        let mut gap = good.clone();
        gap.coefficients.remove(2);
        assert!(gap.into_table().is_err());

        let mut zero = good.clone();
        zero.coefficients[1].denominator = "0".into();
        assert!(zero.into_table().is_err());

        let mut version = good.clone();
        version.format_version = 9;
        assert!(version.into_table().is_err());

        let mut even = good;
        even.p = 2;
        assert!(even.into_table().is_err());
    }
}
