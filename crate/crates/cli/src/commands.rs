use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use boettcher_core::boettcher::solve_coefficients;
use boettcher_core::verify::run_checks;
use boettcher_core::{CheckReport, CoefficientTable, FamilyParams};
use rayon::prelude::*;

use crate::config::{CheckSelection, RunConfig};
use crate::error::CliError;
use crate::io::{ensure_dir, report_file_name, save_table, write_reports};

/// Reports for one `(p, r)` cell.
#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub p: u64,
    pub r: u32,
    pub max_k: usize,
    pub reports: Vec<CheckReport>,
}

impl CellOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn label(&self) -> String {
        format!("p{}_r{}", self.p, self.r)
    }

    fn metric(&self, check: &str, key: &str) -> Option<&str> {
        self.reports
            .iter()
            .find(|r| r.check_name() == check)
            .and_then(|r| r.metric(key))
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Pool(e.to_string()))?;
    Ok(pool.install(work))
}

fn solve_cell(p: u64, r: u32, max_k: usize) -> Result<CoefficientTable, CliError> {
    Ok(solve_coefficients(FamilyParams::new(p, r)?, max_k)?)
}

/// Solves every cell and writes one coefficient file per cell.
pub fn compute(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    ensure_dir(&config.out)?;
    let cells = config.cells();
    let tables = with_pool(config.jobs, || {
        cells
            .par_iter()
            .map(|&(p, r, k)| solve_cell(p, r, k))
            .collect::<Result<Vec<_>, _>>()
    })??;
    tables.iter().map(|t| save_table(t, &config.out)).collect()
}

fn verify_table(table: &CoefficientTable, checks: &CheckSelection) -> Result<CellOutcome, CliError> {
    let params = table.params();
    let names = checks.resolve(params.p(), params.r(), table.max_k())?;
    let reports = run_checks(&names, table)?;
    Ok(CellOutcome {
        p: params.p(),
        r: params.r(),
        max_k: table.max_k(),
        reports,
    })
}

fn verify_cells(config: &RunConfig) -> Result<Vec<CellOutcome>, CliError> {
    // resolve every selection up front so usage errors surface before any work
    for (p, r, k) in config.cells() {
        config.checks.resolve(p, r, k)?;
    }
    let cells = config.cells();
    with_pool(config.jobs, || {
        cells
            .par_iter()
            .map(|&(p, r, k)| verify_table(&solve_cell(p, r, k)?, &config.checks))
            .collect::<Result<Vec<_>, _>>()
    })?
}

fn write_cell_reports(outcomes: &[CellOutcome], out: &Path) -> Result<(), CliError> {
    ensure_dir(out)?;
    for cell in outcomes {
        write_reports(&out.join(report_file_name(cell.p, cell.r)), &cell.reports)?;
    }
    Ok(())
}

/// One line per report, then a tally.
pub fn render_outcomes(outcomes: &[CellOutcome]) -> String {
    let mut text = String::new();
    let (mut total, mut passed) = (0usize, 0usize);
    for cell in outcomes {
        for report in &cell.reports {
            total += 1;
            passed += usize::from(report.passed());
            let _ = writeln!(text, "{report}");
        }
    }
    let _ = writeln!(text, "{passed}/{total} checks passed");
    text
}

/// Runs the selected checks on every cell (or on a loaded table) and writes
/// one CSV report per cell.
pub fn verify(config: &RunConfig, table: Option<&CoefficientTable>) -> Result<Vec<CellOutcome>, CliError> {
    let outcomes = match table {
        Some(t) => vec![verify_table(t, &config.checks)?],
        None => verify_cells(config)?,
    };
    write_cell_reports(&outcomes, &config.out)?;
    Ok(outcomes)
}

/// Every check on every cell, plus `summary.csv` (check by cell pass
/// matrix) and `cells.csv` (per-cell v-sequence and deviation bound).
pub fn sweep(config: &RunConfig) -> Result<Vec<CellOutcome>, CliError> {
    let all = RunConfig {
        checks: CheckSelection::All,
        ..config.clone()
    };
    let outcomes = verify_cells(&all)?;
    write_cell_reports(&outcomes, &config.out)?;
    write_summary(&outcomes, &config.out.join("summary.csv"))?;
    write_cells(&outcomes, &config.out.join("cells.csv"))?;
    Ok(outcomes)
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    csv::Writer::from_path(path).map_err(|source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    })
}

fn write_summary(outcomes: &[CellOutcome], path: &Path) -> Result<(), CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut names: Vec<&str> = Vec::new();
    for cell in outcomes {
        for report in &cell.reports {
            if !names.contains(&report.check_name()) {
                names.push(report.check_name());
            }
        }
    }
    let mut writer = csv_writer(path)?;
    let mut header = vec!["check_name".to_string()];
    header.extend(outcomes.iter().map(CellOutcome::label));
    writer.write_record(&header).map_err(csv_err)?;
    for name in names {
        let mut row = vec![name.to_string()];
        for cell in outcomes {
            let verdict = cell
                .reports
                .iter()
                .find(|r| r.check_name() == name)
                .map_or("-".to_string(), |r| r.verdict().to_string());
            row.push(verdict);
        }
        writer.write_record(&row).map_err(csv_err)?;
    }
    writer.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_cells(outcomes: &[CellOutcome], path: &Path) -> Result<(), CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv_writer(path)?;
    writer
        .write_record([
            "p",
            "r",
            "max_k",
            "checks_run",
            "checks_failed",
            "v_sequence",
            "deviation_bound",
            "deviation_argmax",
            "min_deviation",
        ])
        .map_err(csv_err)?;
    for cell in outcomes {
        let failed = cell.reports.iter().filter(|r| !r.passed()).count();
        let field = |check, key| cell.metric(check, key).unwrap_or("-").to_string();
        writer
            .write_record([
                cell.p.to_string(),
                cell.r.to_string(),
                cell.max_k.to_string(),
                cell.reports.len().to_string(),
                failed.to_string(),
                field("v_table", "v"),
                field("slope_deviation", "deviation_bound"),
                field("slope_deviation", "deviation_argmax"),
                field("slope_deviation", "min_deviation"),
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
