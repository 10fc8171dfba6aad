use num_bigint::BigInt;
use proptest::prelude::*;
use qdvol_core::exact::{
    bernoulli_number, bernoulli_polynomial, binomial, double_factorial, factorial, gamma_k, int, rat, Rational,
};
use qdvol_core::series::TruncatedSeries;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..10).prop_map(|(n, d)| rat(n, d))
}

fn series(low: i64, len: usize, order: i64) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rat(), len).prop_map(move |c| TruncatedSeries::new(low, c, order))
}

proptest! {
    #[test]
    fn bernoulli_polynomial_shift(n in 1usize..14, x in small_rat()) {
        // B_n(x + 1) - B_n(x) = n x^{n-1}
        let lhs = bernoulli_polynomial(n, &(&x + int(1))) - bernoulli_polynomial(n, &x);
        let rhs = int(n as i64) * (0..n - 1).fold(int(1), |acc, _| acc * &x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernoulli_polynomial_addition(n in 0usize..12, x in small_rat(), y in small_rat()) {
        // B_n(x + y) = sum_k C(n,k) B_k(x) y^{n-k}
        let lhs = bernoulli_polynomial(n, &(&x + &y));
        let mut rhs = int(0);
        for k in 0..=n {
            let ypow = (0..n - k).fold(int(1), |acc, _| acc * &y);
            rhs += Rational::from_integer(binomial(n as i64, k as i64)) * bernoulli_polynomial(k, &x) * ypow;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_factorial_pairs(k in 1i64..60) {
        let prod = double_factorial(k).unwrap() * double_factorial(k - 1).unwrap();
        prop_assert_eq!(prod, Rational::from_integer(factorial(k as u64)));
    }

    #[test]
    fn gamma_times_power_of_four_is_integer(k in 0i64..80) {
        let v = gamma_k(k).unwrap() * Rational::from_integer(BigInt::from(4).pow(k as u32));
        prop_assert!(v.is_integer());
        prop_assert_eq!(v.to_integer(), binomial(2 * k, k));
    }

    #[test]
    fn mul_commutes_and_distributes(a in series(0, 6, 6), b in series(1, 5, 6), c in series(0, 4, 6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn division_inverts_multiplication(a in series(0, 6, 8), mut b in series(0, 6, 8)) {
        if b.coeff(0).unwrap() == int(0) {
            b = b.add(&TruncatedSeries::constant(int(1), 8));
        }
        let q = a.mul(&b).div(&b).unwrap();
        prop_assert_eq!(q.truncate(8), a);
    }

    #[test]
    fn chain_rule(f in series(0, 6, 7), g in series(1, 6, 7)) {
        let lhs = f.compose(&g).unwrap().derivative();
        let rhs = f.derivative().compose(&g).unwrap().mul(&g.derivative());
        let o = lhs.order().min(rhs.order());
        prop_assert_eq!(lhs.truncate(o), rhs.truncate(o));
    }

    #[test]
    fn derivatives_have_no_residue(f in series(-5, 10, 6)) {
        prop_assert_eq!(f.derivative().residue().unwrap(), int(0));
    }

    #[test]
    fn reversion_is_compositional_inverse(mut f in series(1, 7, 8)) {
        if f.coeff(1).unwrap() == int(0) {
            f = f.add(&TruncatedSeries::monomial(int(1), 1, 8));
        }
        let r = f.reversion().unwrap();
        let id = f.compose(&r).unwrap();
        prop_assert_eq!(id.truncate(8), TruncatedSeries::var(8));
    }
}

#[test]
fn bernoulli_small_values() {
    assert_eq!(bernoulli_number(1), rat(-1, 2));
    assert_eq!(bernoulli_number(12), rat(-691, 2730));
    assert_eq!(bernoulli_number(13), int(0));
}
