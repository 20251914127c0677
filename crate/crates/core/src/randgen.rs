//! Seeded random instances for the property drivers.
//!
//! Coefficients are small integers so the exact arithmetic stays cheap.
//! Every generator is a pure function of the `Rng` state.

use rand::Rng;

use crate::jacobian::{jacobian_ideal, jacobian_square, jacobian_square_pairs, quadratic_rank, MembershipWitness};
use crate::polyring::{Monomial, Polynomial, Rational, TruncatedSeries};

fn small(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return Rational::from_integer(c.into());
        }
    }
}

/// Sum of `terms` random monomials with degrees in `[min_deg, max_deg]` and
/// nonzero integer coefficients in `[-bound, bound]`.
pub fn random_poly(
    rng: &mut impl Rng,
    nvars: usize,
    min_deg: u32,
    max_deg: u32,
    terms: usize,
    bound: i64,
) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let d = rng.gen_range(min_deg..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(Monomial::new(e), small(rng, bound));
    }
    p
}

/// A polynomial with nonzero degree-`d` part and random terms up to
/// `d + extra`.
fn with_leading(rng: &mut impl Rng, nvars: usize, d: u32, extra: u32) -> Polynomial {
    loop {
        let lead = random_poly(rng, nvars, d, d, nvars + 1, 3);
        if lead.is_zero() {
            continue;
        }
        return &lead + &random_poly(rng, nvars, d + 1, d + extra, 2, 3);
    }
}

/// Input to the Tougeron and rank-2 drivers: `g = sum h_ij df/dx_i df/dx_j`.
#[derive(Clone, Debug)]
pub struct EquivCase {
    pub f: Polynomial,
    pub witness: MembershipWitness,
    pub order: u32,
}

impl EquivCase {
    pub fn g(&self) -> &Polynomial {
        &self.witness.target
    }
}

/// Random `h_ij` (degree <= 2, some zero) and `g = sum h_ij df/dx_i df/dx_j`.
/// Without `allow_constants` every `h_ij` lies in the maximal ideal.
pub fn random_witness(rng: &mut impl Rng, f: &Polynomial, order: u32, allow_constants: bool) -> MembershipWitness {
    let n = f.nvars();
    let ideal = jacobian_square(f).expect("nonzero f");
    let min_deg = if allow_constants { 0 } else { 1 };
    let coefficients: Vec<TruncatedSeries> = jacobian_square_pairs(n)
        .iter()
        .map(|_| {
            let h = if rng.gen_bool(0.3) { Polynomial::zero(n) } else { random_poly(rng, n, min_deg, 2, 2, 2) };
            TruncatedSeries::new(h, order)
        })
        .collect();
    let mut w = MembershipWitness { target: Polynomial::zero(n), coefficients, order };
    w.target = w.combination(&ideal);
    w
}

/// `f` of multiplicity 3 in 1 to 3 variables and a certified `g` in `J_f^2`.
pub fn tougeron_case(rng: &mut impl Rng, order: u32) -> EquivCase {
    let nvars = rng.gen_range(1..=3);
    let f = with_leading(rng, nvars, 3, 2);
    let witness = random_witness(rng, &f, order, true);
    EquivCase { f, witness, order }
}

/// `f` of multiplicity 2 in 1 to 3 variables with `rank((f+g)_2) = rank(f_2)`.
pub fn rank2_case(rng: &mut impl Rng, order: u32) -> EquivCase {
    loop {
        let nvars = rng.gen_range(1..=3);
        // quadratic part of rank r from r random linear forms
        let r = rng.gen_range(1..=nvars);
        let mut quad = Polynomial::zero(nvars);
        for _ in 0..r {
            let l = random_poly(rng, nvars, 1, 1, 2, 2);
            quad = &quad + &(&l * &l).scale(&small(rng, 2));
        }
        if quad.is_zero() {
            continue;
        }
        let f = &quad + &random_poly(rng, nvars, 3, 4, 3, 3);
        let constants = rng.gen_bool(0.5);
        let witness = random_witness(rng, &f, order, constants);
        let rank_f = quadratic_rank(&f).expect("nonzero");
        let rank_fg = quadratic_rank(&(&f + &witness.target)).expect("nonzero");
        if rank_f == rank_fg && jacobian_ideal(&f).is_ok() {
            return EquivCase { f, witness, order };
        }
    }
}

/// Random `(f, u, v)` for the divided-power Taylor formula
/// `f(u + v) = sum_alpha D^alpha f(u) v^alpha`.
pub fn taylor_case(rng: &mut impl Rng) -> (Polynomial, Vec<Polynomial>, Vec<Polynomial>) {
    let nvars = rng.gen_range(1..=3);
    let f = random_poly(rng, nvars, 0, 4, 4, 5);
    let u = (0..nvars).map(|_| random_poly(rng, nvars, 0, 2, 2, 3)).collect();
    let v = (0..nvars).map(|_| random_poly(rng, nvars, 0, 2, 2, 3)).collect();
    (f, u, v)
}

/// Checks the divided-power Taylor formula exactly.
pub fn taylor_identity_holds(f: &Polynomial, u: &[Polynomial], v: &[Polynomial]) -> bool {
    let n = f.nvars();
    let sum: Vec<Polynomial> = u.iter().zip(v).map(|(a, b)| a + b).collect();
    let lhs = f.compose(&sum).expect("matching shapes");
    let deg = f.degree().unwrap_or(0);
    let mut rhs = Polynomial::zero(n);
    for d in 0..=deg {
        for alpha in Monomial::all_of_degree(n, d) {
            let d_alpha = f.divided_power(&alpha).expect("in range");
            let mut term = d_alpha.compose(u).expect("matching shapes");
            for (vi, &e) in v.iter().zip(alpha.exponents()) {
                term = &term * &vi.pow(e);
            }
            rhs = &rhs + &term;
        }
    }
    lhs == rhs
}
