use std::collections::HashMap;

use boettcher_core::boettcher::solve_coefficients;
use boettcher_core::padic::{digit_sum, mod_p_reduce, mul_mod, pow_mod, sign_mod};
use boettcher_core::verify::{
    build_v_table, check_digit_sum, check_first_block, check_lambda_lower_bound, check_leading_term, predicted_v,
    run_check, VerifyError, CHECK_NAMES,
};
use boettcher_core::{CoefficientTable, FamilyParams, Prime};

fn cell(p: u64, r: u32, max_k: usize) -> CoefficientTable {
    solve_coefficients(FamilyParams::new(p, r).unwrap(), max_k).unwrap()
}

#[test]
fn both_digit_sum_forms_agree_with_the_first_block() {
    for (p, max_k) in [(3, 120), (5, 80), (7, 60)] {
        let table = cell(p, 0, max_k);
        let first = check_first_block(&table).unwrap();
        assert!(first.passed());
        let report = check_digit_sum(&table).unwrap();
        let expected: HashMap<&str, &str> = report
            .witnesses()
            .iter()
            .map(|w| (w.index.as_str(), w.expected.as_str()))
            .collect();
        for k in 1..=max_k {
            assert_eq!(
                expected[format!("{k}:eq1").as_str()],
                expected[format!("{k}:eq2").as_str()],
                "p={p} k={k}"
            );
        }
    }
}

#[test]
fn nonzero_residues_are_exactly_the_predicted_ones() {
    for (p, max_k) in [(3, 120), (5, 80), (7, 60)] {
        let prime = Prime::new(p).unwrap();
        let table = cell(p, 0, max_k);
        for k in 1..=max_k as u64 {
            let a = k % p;
            let s = digit_sum(k, prime) - a;
            let predicted = mul_mod(sign_mod(a + s, p), pow_mod(a + 1, a + s - 1, p), p);
            let residue = mod_p_reduce(table.a(k as usize), prime).unwrap();
            assert_eq!(residue != 0, predicted != 0, "p={p} k={k}");
        }
    }
}

#[test]
fn measured_valuations_follow_the_recursion() {
    for (p, max_k, n_max) in [(3, 90, 4), (5, 130, 3)] {
        for r in 1..=4 {
            let table = cell(p, r, max_k);
            let (vt, report) = build_v_table(&table, n_max).unwrap();
            assert!(report.passed(), "p={p} r={r}");
            assert_eq!(vt.v(), predicted_v(Prime::new(p).unwrap(), r, n_max).as_slice());
        }
    }
}

#[test]
fn leading_term_implies_equality_in_the_lower_bound() {
    for r in 1..=3 {
        let table = cell(3, r, 81);
        let (vt, _) = build_v_table(&table, 4).unwrap();
        let bound = check_lambda_lower_bound(&table, &vt).unwrap();
        let leading = check_leading_term(&table, &vt).unwrap();
        assert!(bound.passed() && leading.passed());
        let tight: HashMap<&str, bool> = bound
            .witnesses()
            .iter()
            .map(|w| (w.index.as_str(), w.expected.trim_start_matches(">= ") == w.actual))
            .collect();
        for w in leading.witnesses().iter().filter(|w| w.index.ends_with(":unit")) {
            let k = w.index.trim_end_matches(":unit");
            assert!(tight[k], "r={r} k={k}");
        }
    }
}

#[test]
fn checks_refuse_tables_they_do_not_apply_to() {
    let special = cell(3, 0, 30);
    let deformed = cell(3, 1, 30);
    for name in CHECK_NAMES {
        let a = run_check(name, &special);
        let b = run_check(name, &deformed);
        assert!(a.is_ok() || b.is_ok(), "{name} runs nowhere");
        for result in [a, b] {
            if let Err(e) = result {
                assert!(
                    matches!(e, VerifyError::WrongFiber { .. } | VerifyError::Coverage { .. }),
                    "{name}: {e}"
                );
            }
        }
    }
    assert!(matches!(run_check("nope", &special), Err(VerifyError::UnknownCheck(_))));
}
