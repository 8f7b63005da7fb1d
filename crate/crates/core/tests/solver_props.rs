use boettcher_core::boettcher::{abc_decompose, abc_decompose_all, residual_check, solve_coefficients};
use boettcher_core::{CoefficientTable, FamilyParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CELLS: [(u64, usize); 3] = [(3, 90), (5, 60), (7, 55)];

fn cell(p: u64, r: u32, max_k: usize) -> CoefficientTable {
    solve_coefficients(FamilyParams::new(p, r).unwrap(), max_k).unwrap()
}

#[test]
fn triangular_recomputation_and_integrality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a1e);
    for (p, max_k) in CELLS {
        for r in 0..=4 {
            let table = cell(p, r, max_k);
            let params = table.params();
            for k in 0..=max_k {
                assert!(table.valuation(k) >= 0, "a_{k} not {p}-integral at r={r}");
            }
            for _ in 0..20 {
                let k = rng.gen_range(1..=max_k);
                let fresh = abc_decompose(&table, k).unwrap();
                assert_eq!(&fresh.reassemble(&params), table.a(k), "p={p} r={r} k={k}");
            }
            let prefix = cell(p, r, max_k / 2);
            assert_eq!(prefix, table.truncated(max_k / 2).unwrap());
            assert!(residual_check(&table).passed(), "p={p} r={r}");
        }
    }
}

#[test]
fn incremental_and_direct_decompositions_agree() {
    for (p, r) in [(3, 0), (3, 2), (5, 1), (7, 0)] {
        let table = cell(p, r, 60);
        let params = table.params();
        for dec in abc_decompose_all(&table) {
            assert_eq!(dec, abc_decompose(&table, dec.k).unwrap());
            assert_eq!(&dec.reassemble(&params), table.a(dec.k));
        }
    }
}

#[test]
fn any_single_perturbation_breaks_the_residual() {
    let table = cell(5, 1, 30);
    for k in 0..=30 {
        for delta in [-1, 1] {
            let report = residual_check(&table.perturbed(k, delta).unwrap());
            assert!(!report.passed(), "a_{k} {delta:+}");
        }
    }
}
