use lctlab::polyring::binomial;
use lctlab::randgen::{random_poly, taylor_case, taylor_identity_holds};
use lctlab::{parse_poly, Monomial, Polynomial, Rational, TruncatedSeries};
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn taylor_formula_on_100_seeded_instances() {
    let mut r = rng(2024);
    for i in 0..100 {
        let (f, u, v) = taylor_case(&mut r);
        assert!(taylor_identity_holds(&f, &u, &v), "instance {i}: f={f}");
    }
}

fn random_alpha(r: &mut ChaCha8Rng, n: usize, max: u32) -> Monomial {
    Monomial::new((0..n).map(|_| r.gen_range(0..=max)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divided_power_leibniz_rule(seed in any::<u64>()) {
        // D^a (fg) = sum_{b <= a} D^b f D^(a-b) g
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let f = random_poly(&mut r, n, 0, 4, 4, 5);
        let g = random_poly(&mut r, n, 0, 4, 4, 5);
        let alpha = random_alpha(&mut r, n, 3);
        let lhs = (&f * &g).divided_power(&alpha).unwrap();
        let mut rhs = Polynomial::zero(n);
        for d in 0..=alpha.degree() {
            for beta in Monomial::all_of_degree(n, d) {
                let Some(rest) = alpha.checked_div(&beta) else { continue };
                rhs = &rhs + &(&f.divided_power(&beta).unwrap() * &g.divided_power(&rest).unwrap());
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_powers_compose_with_binomials(seed in any::<u64>()) {
        // D^a D^b = prod binom(a_i + b_i, a_i) D^(a+b)
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let f = random_poly(&mut r, n, 0, 6, 6, 5);
        let a = random_alpha(&mut r, n, 2);
        let b = random_alpha(&mut r, n, 2);
        let lhs = f.divided_power(&b).unwrap().divided_power(&a).unwrap();
        let factor: num_bigint::BigInt = a
            .exponents()
            .iter()
            .zip(b.exponents())
            .map(|(&x, &y)| binomial(x + y, x))
            .product();
        let rhs = f.divided_power(&a.mul(&b)).unwrap().scale(&Rational::from_integer(factor));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sqrt_and_inverse_of_units(seed in any::<u64>(), order in 1u32..8) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let tail = random_poly(&mut r, n, 1, 4, 4, 3);
        let unit = &Polynomial::constant(n, Rational::one()) + &tail;
        let u = TruncatedSeries::new(unit, order);
        let inv = u.inverse().unwrap();
        prop_assert_eq!(u.mul(&inv), TruncatedSeries::one(n, order));
        let s = u.sqrt().unwrap();
        prop_assert_eq!(s.mul(&s), u.clone());
        prop_assert_eq!(s.poly().constant_term(), Rational::one());
    }

    #[test]
    fn printing_then_parsing_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let mut f = random_poly(&mut r, n, 0, 5, 6, 9);
        f = f.scale(&Rational::new(1.into(), r.gen_range(1..=7i64).into()));
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, n).unwrap(), f);
    }

    #[test]
    fn substitution_agrees_with_exact_composition(seed in any::<u64>(), order in 1u32..9) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let f = random_poly(&mut r, n, 0, 5, 5, 4);
        let images: Vec<Polynomial> = (0..n).map(|_| random_poly(&mut r, n, 1, 3, 3, 3)).collect();
        let fast = f.substitute(&images, order).unwrap();
        let exact = f.compose(&images).unwrap().truncate(order);
        prop_assert_eq!(fast.poly(), &exact);
    }
}
