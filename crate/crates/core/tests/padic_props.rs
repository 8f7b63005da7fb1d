use boettcher_core::padic::{
    carry_defect, digit_sum, factorial, factorial_valuation, mod_p_reduce, ord_p, ord_p_int,
    prime_part_factorial_mod_p, unit_part_mod_p, DigitExpansion, PadicError,
};
use boettcher_core::{Prime, Valuation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn primes() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![3u64, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

#[test]
fn legendre_matches_brute_force() {
    for p in [3u64, 5, 7] {
        let prime = Prime::new(p).unwrap();
        for n in 1..10_000u64 {
            let mut brute = 0;
            let mut pk = p;
            while pk <= n {
                brute += n / pk;
                pk *= p;
            }
            assert_eq!(factorial_valuation(n, prime), brute, "n={n} p={p}");
        }
    }
}

#[test]
fn unit_part_of_factorial_matches_exact_division() {
    for p in [3u64, 5, 7] {
        let prime = Prime::new(p).unwrap();
        for n in 0..300u64 {
            let f = BigRational::from_integer(factorial(n));
            let v = factorial_valuation(n, prime) as i64;
            assert_eq!(
                prime_part_factorial_mod_p(n, prime),
                unit_part_mod_p(&f, prime, v).unwrap(),
                "n={n}"
            );
        }
    }
}

#[test]
fn zero_has_infinite_valuation() {
    let p = Prime::new(5).unwrap();
    assert_eq!(ord_p(&BigRational::zero(), p), Valuation::Infinite);
    assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
    assert_eq!(
        unit_part_mod_p(&BigRational::zero(), p, 0),
        Err(PadicError::ZeroUnitPart)
    );
}

proptest! {
    #[test]
    fn digit_sum_is_subadditive(p in primes(), u in 0u64..10_000, v in 0u64..10_000) {
        prop_assert!(digit_sum(u + v, p) <= digit_sum(u, p) + digit_sum(v, p));
        let defect = carry_defect(&[u, v], p).unwrap();
        prop_assert_eq!(defect * (p.get() - 1), digit_sum(u, p) + digit_sum(v, p) - digit_sum(u + v, p));
    }

    #[test]
    fn digit_sum_is_congruent_to_n(p in primes(), n in 0u64..1_000_000) {
        prop_assert_eq!(digit_sum(n, p) % (p.get() - 1), n % (p.get() - 1));
        let e = DigitExpansion::new(n, p);
        prop_assert_eq!(e.value(), n);
        prop_assert!(e.digits().iter().all(|&d| d < p.get()));
    }

    #[test]
    fn valuation_is_additive(p in primes(), a in 1i64..1_000_000, b in 1i64..1_000_000, c in 1i64..1_000, d in 1i64..1_000) {
        let x = BigRational::new(BigInt::from(a), BigInt::from(c));
        let y = BigRational::new(BigInt::from(-b), BigInt::from(d));
        prop_assert_eq!(ord_p(&(&x * &y), p), ord_p(&x, p) + ord_p(&y, p));
        prop_assert_eq!(ord_p_int(&BigInt::from(a), p), ord_p(&BigRational::from_integer(BigInt::from(a)), p));
    }

    #[test]
    fn unit_part_ignores_powers_of_p(p in primes(), a in 1i64..100_000, c in 1i64..100_000, t in 0u32..12) {
        let x = BigRational::new(BigInt::from(a), BigInt::from(c));
        let v = ord_p(&x, p).finite().unwrap();
        let shifted = &x * BigRational::from_integer(p.pow_big(t));
        prop_assert_eq!(unit_part_mod_p(&shifted, p, v + t as i64).unwrap(), unit_part_mod_p(&x, p, v).unwrap());
        if v >= 0 {
            prop_assert_eq!(mod_p_reduce(&shifted, p).unwrap() == 0, v + (t as i64) > 0);
        }
    }
}
