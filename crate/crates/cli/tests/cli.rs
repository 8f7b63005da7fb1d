use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use boettcher_cli::io::{load_table, save_table, table_to_json, TableFile};
use boettcher_core::boettcher::solve_coefficients;
use boettcher_core::{CoefficientTable, FamilyParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn boettcher(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boettcher"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(path: &Path) -> &str {
    path.to_str().expect("utf-8 temp path")
}

#[test]
fn compute_writes_one_record_per_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let out = boettcher(&[
        "compute",
        "--p",
        "3",
        "--r",
        "0",
        "--max-k",
        "30",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let text = fs::read_to_string(dir.path().join("coeffs_p3_r0.json")).unwrap();
    let file: TableFile = serde_json::from_str(&text).unwrap();
    assert_eq!((file.p, file.r, file.max_k, file.format_version), (3, 0, 30, 1));
    assert_eq!(file.coefficients.len(), 31);
    assert_eq!(file.coefficients[1].numerator, "-1");
    assert_eq!(file.coefficients[1].denominator, "1");
}

#[test]
fn recomputation_is_byte_identical() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    for dir in [&first, &second] {
        let out = boettcher(&[
            "compute",
            "--p",
            "5",
            "--r",
            "1,2",
            "--max-k",
            "25",
            "--out",
            path_str(dir.path()),
        ]);
        assert_eq!(code(&out), 0);
        let out = boettcher(&[
            "verify",
            "--p",
            "5",
            "--r",
            "1",
            "--max-k",
            "25",
            "--out",
            path_str(dir.path()),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    }
    for name in ["coeffs_p5_r1.json", "coeffs_p5_r2.json", "report_p5_r1.csv"] {
        let a = fs::read(first.path().join(name)).unwrap();
        let b = fs::read(second.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = path_str(dir.path());
    let cases: &[&[&str]] = &[
        &["compute", "--p", "2", "--out", out_dir],
        &["compute", "--p", "9", "--out", out_dir],
        &["compute", "--out", out_dir],
        &["compute", "--p", "3", "--r", "5", "--out", out_dir],
        &["compute", "--p", "3", "--max-k", "251", "--out", out_dir],
        &["compute", "--p", "7", "--max-k", "3:20", "--out", out_dir],
        &["verify", "--p", "3", "--checks", "no_such_check", "--out", out_dir],
        &[
            "verify", "--p", "3", "--r", "0", "--checks", "v_table", "--out", out_dir,
        ],
        &[
            "verify",
            "--p",
            "3",
            "--r",
            "1",
            "--checks",
            "digit_sum",
            "--out",
            out_dir,
        ],
        &[
            "verify",
            "--p",
            "3",
            "--r",
            "3",
            "--max-k",
            "20",
            "--checks",
            "slope_deviation",
            "--out",
            out_dir,
        ],
        &["sweep", "--p", "3", "--config", "/nonexistent/boettcher.toml"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = boettcher(args);
        assert_eq!(code(&out), 2, "boettcher {}", args.join(" "));
        assert!(!out.stderr.is_empty(), "no diagnostic for {}", args.join(" "));
    }
}

#[test]
fn verify_passes_on_a_fresh_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = boettcher(&["verify", "--p", "3", "--max-k", "100", "--out", path_str(dir.path())]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = fs::read_to_string(dir.path().join("report_p3_r0.csv")).unwrap();
    let mut lines = report.lines();
    assert_eq!(lines.next(), Some("check_name,p,r,index,expected,actual,pass"));
    assert!(lines.all(|line| line.ends_with(",true")));
}

#[test]
fn corrupted_table_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let table = solve_coefficients(FamilyParams::new(3, 0).unwrap(), 40).unwrap();
    let bad = table.perturbed(12, 1).unwrap();
    let path = save_table(&bad, dir.path()).unwrap();
    let out = boettcher(&["verify", "--table", path_str(&path), "--out", path_str(dir.path())]);
    assert_eq!(code(&out), 1);

    let report = fs::read_to_string(dir.path().join("report_p3_r0.csv")).unwrap();
    assert!(report
        .lines()
        .any(|l| l.starts_with("residual,3,0,") && l.ends_with(",false")));
    assert!(report
        .lines()
        .any(|l| l.starts_with("digit_sum,3,0,12:") && l.ends_with(",false")));
}

#[test]
fn malformed_table_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let table = solve_coefficients(FamilyParams::new(5, 0).unwrap(), 10).unwrap();
    let good = table_to_json(&table);
    let broken = [
        "{ not json".to_string(),
        good.replace("\"format_version\": 1", "\"format_version\": 99"),
        good.replace("\"denominator\": \"1\"", "\"denominator\": \"0\""),
        good.replace("\"max_k\": 10", "\"max_k\": 11"),
        good.replace("\"p\": 5", "\"p\": 4"),
    ];
    for (i, text) in broken.iter().enumerate() {
        assert_ne!(text, &good, "case {i} did not change the file");
        let path = dir.path().join(format!("broken{i}.json"));
        fs::write(&path, text).unwrap();
        let out = boettcher(&["verify", "--table", path_str(&path), "--out", path_str(dir.path())]);
        assert_eq!(code(&out), 2, "case {i}");
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let from_file = dir.path().join("from-file");
    let from_flag = dir.path().join("from-flag");
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        format!("p = [5]\nr = [1]\nmax_k = [\"12\"]\nout = {:?}\n", path_str(&from_file)),
    )
    .unwrap();

    let out = boettcher(&[
        "compute",
        "--config",
        path_str(&config),
        "--p",
        "3",
        "--out",
        path_str(&from_flag),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!from_file.exists());
    let table = load_table(&from_flag.join("coeffs_p3_r1.json")).unwrap();
    assert_eq!((table.params().p(), table.params().r(), table.max_k()), (3, 1, 12));

    fs::write(dir.path().join("bad.toml"), "p = [3]\ncolour = \"blue\"\n").unwrap();
    let out = boettcher(&["compute", "--config", path_str(&dir.path().join("bad.toml"))]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_writes_summary_and_cells() {
    let dir = tempfile::tempdir().unwrap();
    let out = boettcher(&[
        "sweep",
        "--p",
        "3",
        "--r",
        "0,1",
        "--max-k",
        "30",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));

    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut rows = summary.lines();
    assert_eq!(rows.next(), Some("check_name,p3_r0,p3_r1"));
    assert!(rows.clone().any(|row| row == "digit_sum,pass,-"));
    assert!(rows.any(|row| row == "v_table,-,pass"));

    let cells = fs::read_to_string(dir.path().join("cells.csv")).unwrap();
    let r1 = cells.lines().find(|l| l.starts_with("3,1,30,")).unwrap();
    assert!(r1.ends_with(",\"(1,3,3,9)\",4,6,0"), "{r1}");
    for name in ["report_p3_r0.csv", "report_p3_r1.csv"] {
        assert!(dir.path().join(name).exists());
    }
}

fn arbitrary_table() -> impl Strategy<Value = CoefficientTable> {
    let big = prop_oneof![
        any::<i64>().prop_map(BigInt::from),
        (any::<i128>(), any::<u64>()).prop_map(|(a, b)| BigInt::from(a) * BigInt::from(b) * BigInt::from(b)),
    ];
    let denom = (1u64..u64::MAX).prop_map(BigInt::from);
    let coefficient = (big, denom).prop_map(|(n, d)| BigRational::new(n, d));
    (
        prop::sample::select(vec![3u64, 5, 7, 11]),
        0u32..=4,
        prop::collection::vec(coefficient, 1..24),
    )
        .prop_map(|(p, r, a)| CoefficientTable::from_coefficients(FamilyParams::new(p, r).unwrap(), a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip_is_exact(table in arbitrary_table()) {
        let dir = tempfile::tempdir().unwrap();
        let path = save_table(&table, dir.path()).unwrap();
        let loaded = load_table(&path).unwrap();
        prop_assert_eq!(&loaded, &table);
        prop_assert_eq!(table_to_json(&loaded), fs::read_to_string(&path).unwrap());
    }
}
