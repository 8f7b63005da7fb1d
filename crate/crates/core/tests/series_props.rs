use boettcher_core::padic::{factorial, inv_mod, mul_mod, Prime};
use boettcher_core::series::{MVPolynomial, PowerSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(max_len: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), 1..=max_len).prop_map(|c| PowerSeries::new(c).unwrap())
}

fn with_constant(max_len: usize, constant: i64) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), 0..max_len).prop_map(move |mut c| {
        c.insert(0, BigRational::from_integer(BigInt::from(constant)));
        PowerSeries::new(c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pow_agrees_with_repeated_mul(s in series(21), e in 1u64..=6) {
        let folded = (1..e).fold(s.clone(), |acc, _| acc.mul(&s));
        prop_assert_eq!(s.pow(e).unwrap(), folded);
    }

    #[test]
    fn exp_inverts_log(s in with_constant(13, 1)) {
        let back = s.log().unwrap().exp().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn log_inverts_exp(s in with_constant(13, 0)) {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn substitution_is_multiplicative(a in series(12), b in series(12), q in 1usize..=5) {
        let k = a.truncation_order().min(b.truncation_order());
        let order = q * k;
        let lhs = a.mul(&b).substitute_power(q, order).unwrap();
        let rhs = a.substitute_power(q, order).unwrap().mul(&b.substitute_power(q, order).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_never_extends(a in series(10), b in series(10)) {
        let product = a.mul(&b);
        prop_assert_eq!(product.truncation_order(), a.truncation_order().min(b.truncation_order()));
        prop_assert!(product.coeff(product.truncation_order() + 1).is_err());
    }
}

fn factorial_mod(n: u32, p: u64) -> u64 {
    (factorial(n as u64) % BigInt::from(p)).to_u64().unwrap()
}

/// Every exponent vector of length `len` with entries summing to `total`.
fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(len - 1, total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `P(T, y)` as a polynomial in one `t`, and the same `P` with `T = t_1 + ... + t_r`.
fn collapse_pair(p: Prime, r: usize, s: u32, a: u32, coeffs: &[u64]) -> (MVPolynomial, MVPolynomial) {
    let p_u = p.get();
    let mut one_var = MVPolynomial::one(p, 1, s, a);
    let mut many = MVPolynomial::one(p, r, s, a);
    let mut it = coeffs.iter();
    for n in 1..=s {
        for j in 0..=a {
            let c = *it.next().unwrap() % p_u;
            one_var.add_term(vec![n, j], c).unwrap();
            // T^n = sum_d n!/d! t^d
            for d in compositions(r, n) {
                let d_fact = d.iter().fold(1, |acc, &x| mul_mod(acc, factorial_mod(x, p_u), p_u));
                let multinomial = mul_mod(factorial_mod(n, p_u), inv_mod(d_fact, p_u), p_u);
                let mut exps = d;
                exps.push(j);
                many.add_term(exps, mul_mod(c, multinomial, p_u)).unwrap();
            }
        }
    }
    (one_var, many)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn log_of_a_series_in_t_sum_depends_only_on_the_sum(
        p in prop::sample::select(vec![5u64, 7]),
        r in 1usize..=3,
        a in 0u32..=3,
        coeffs in prop::collection::vec(0u64..7, 64),
    ) {
        let prime = Prime::new(p).unwrap();
        let s = (p - 1) as u32 - 1;
        let (one_var, many) = collapse_pair(prime, r, s, a, &coeffs);
        let log_one = one_var.log().unwrap();
        let log_many = many.log().unwrap();
        for n in 1..=s {
            for j in 0..=a {
                let collapsed = mul_mod(log_one.coeff(&[n, j]), factorial_mod(n, p), p);
                for d in compositions(r, n) {
                    let d_fact = d.iter().fold(1, |acc, &x| mul_mod(acc, factorial_mod(x, p), p));
                    let mut exps = d.clone();
                    exps.push(j);
                    let direct = mul_mod(log_many.coeff(&exps), d_fact, p);
                    prop_assert_eq!(direct, collapsed, "d={:?} y^{}", d, j);
                }
            }
        }
    }
}
