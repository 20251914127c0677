use lctlab::arcs::{count_contact_jets, JetPoint};
use lctlab::budget::DEFAULT_BUDGET;
use lctlab::jacobian::IdealGens;
use lctlab::randgen::random_poly;
use lctlab::{parse_poly, Execution};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force(gens: &IdealGens, p: u64, m: u32, e: u32) -> u64 {
    let n = gens.nvars();
    let len = (m + 1) as usize;
    let total = p.pow((len * n) as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut rest = idx;
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|_| {
                (0..len)
                    .map(|_| {
                        let d = rest % p;
                        rest /= p;
                        d
                    })
                    .collect()
            })
            .collect();
        let orders = JetPoint::new(p, m, coords).contact_orders(gens).unwrap();
        if orders.iter().all(|o| o.is_none_or(|o| o >= e)) {
            count += 1;
        }
    }
    count
}

#[test]
fn power_of_one_coordinate_factorizes() {
    // ord x1^a >= e iff ord x1 >= ceil(e/a)
    for (text, a) in [("x1", 1u32), ("x1^2", 2), ("x1^3", 3)] {
        for n in 1..=2usize {
            let gens = IdealGens::new(vec![parse_poly(text, n).unwrap()]).unwrap();
            for p in [2u64, 3, 5] {
                let m = 2;
                for e in 0..=m + 1 {
                    let got = count_contact_jets(&gens, p, m, e, DEFAULT_BUDGET, Execution::Sequential).unwrap();
                    let want = p.pow((m + 1) * (n as u32 - 1)) * p.pow(m + 1 - e.div_ceil(a));
                    assert_eq!(got, want, "{text} n={n} p={p} e={e}");
                }
            }
        }
    }
}

#[test]
fn determinantal_two_by_two_at_level_one() {
    let det = IdealGens::new(vec![parse_poly("x1*x4 - x2*x3", 4).unwrap()]).unwrap();
    for p in [3u64, 5] {
        let c = count_contact_jets(&det, p, 1, 1, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        // level-1 coefficients are free; level 0 is a singular 2x2 matrix
        assert_eq!(c, p.pow(4) * (p.pow(3) + p.pow(2) - p));
        assert_eq!(c / p.pow(4), p.pow(3) + p.pow(2) - p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pruned_count_matches_brute_force(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=2);
        let k = r.gen_range(1..=2);
        let gens = IdealGens::new((0..k).map(|_| random_poly(&mut r, n, 1, 3, 2, 4)).collect()).unwrap();
        let p = [2u64, 3][r.gen_range(0..2)];
        let m = r.gen_range(0..=2);
        let mut last = u64::MAX;
        for e in 0..=m + 1 {
            let got = count_contact_jets(&gens, p, m, e, DEFAULT_BUDGET, Execution::Sequential).unwrap();
            prop_assert_eq!(got, brute_force(&gens, p, m, e));
            prop_assert!(got <= last);
            last = got;
            let par = count_contact_jets(&gens, p, m, e, DEFAULT_BUDGET, Execution::Parallel).unwrap();
            prop_assert_eq!(par, got);
        }
    }
}
