//! Jets over finite fields and contact-locus counts.
//!
//! An `m`-jet over `F_p` is an `n`-tuple of polynomials in `t` of degree at
//! most `m`. [`count_contact_jets`] counts jets along which every generator of
//! an ideal vanishes to order at least `e`; only the first `e` coefficients of
//! each coordinate matter, the rest contribute a factor `p^((m+1-e) n)`.

use crate::budget::{self, BudgetExceeded};
use crate::exec::Execution;
use crate::jacobian::IdealGens;
use crate::modular::{digits, mulmod, ModPoly, NonIntegerCoefficients};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArcsError {
    #[error("partition {0:?} is not weakly decreasing")]
    NotDecreasing(Vec<u32>),
    #[error("contact order {e} exceeds jet order + 1 = {}", m + 1)]
    ContactTooLarge { e: u32, m: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("need counts at two or more distinct primes")]
    InsufficientData,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    NonInteger(#[from] NonIntegerCoefficients),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An `m`-jet over `F_p`: `coords[i][k]` is the `t^k` coefficient of `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPoint {
    pub p: u64,
    pub m: u32,
    pub coords: Vec<Vec<u64>>,
}

impl JetPoint {
    /// Reduces every coefficient mod `p`; pads or cuts coordinates to `m + 1`
    /// coefficients.
    pub fn new(p: u64, m: u32, coords: Vec<Vec<u64>>) -> Self {
        let coords = coords
            .into_iter()
            .map(|mut c| {
                c.resize(m as usize + 1, 0);
                c.iter_mut().for_each(|x| *x %= p);
                c
            })
            .collect();
        JetPoint { p, m, coords }
    }

    /// `ord_t g(gamma(t))` for each generator, `None` when it vanishes mod
    /// `t^(m+1)`.
    pub fn contact_orders(&self, gens: &IdealGens) -> Result<Vec<Option<u32>>, NonIntegerCoefficients> {
        let len = self.m as usize + 1;
        gens.gens()
            .iter()
            .map(|g| {
                let mp = ModPoly::new(g, self.p)?;
                let s = eval_series(&mp, &self.coords, len);
                Ok(s.iter().position(|&c| c != 0).map(|k| k as u32))
            })
            .collect()
    }
}

/// Truncated product of two series mod `p`.
fn series_mul(a: &[u64], b: &[u64], len: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    out
}

/// `g(gamma) mod (p, t^len)`.
fn eval_series(g: &ModPoly, coords: &[Vec<u64>], len: usize) -> Vec<u64> {
    let p = g.modulus;
    let mut acc = vec![0u64; len];
    for (c, e) in &g.terms {
        let mut term = vec![0u64; len];
        term[0] = *c;
        for (x, &k) in coords.iter().zip(e) {
            for _ in 0..k {
                term = series_mul(&term, x, len, p);
            }
        }
        for (a, t) in acc.iter_mut().zip(&term) {
            *a = (*a + t) % p;
        }
    }
    acc
}

/// Closed-form orbit data of a determinantal arc with invariant factors
/// `t^lambda_1, ..., t^lambda_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInvariants {
    pub lambda: Vec<u32>,
    /// `sum lambda_i (2i - 1)`.
    pub codim: u64,
    /// `sum lambda_i`.
    pub ord_f: u64,
    /// `sum_{i >= 2} lambda_i`.
    pub ord_j: u64,
}

pub fn orbit_invariants(lambda: &[u32]) -> Result<OrbitInvariants, ArcsError> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(ArcsError::NotDecreasing(lambda.to_vec()));
    }
    let codim = lambda.iter().enumerate().map(|(i, &l)| l as u64 * (2 * i as u64 + 1)).sum();
    let ord_f = lambda.iter().map(|&l| l as u64).sum();
    let ord_j = lambda.iter().skip(1).map(|&l| l as u64).sum();
    Ok(OrbitInvariants { lambda: lambda.to_vec(), codim, ord_f, ord_j })
}

/// Number of `m`-jets over `F_p` with `ord_t g(gamma) >= e` for every
/// generator `g`. Enumerates `t`-coefficients level by level and prunes a
/// branch as soon as some generator has a nonzero coefficient below `t^e`.
pub fn count_contact_jets(
    gens: &IdealGens,
    p: u64,
    m: u32,
    e: u32,
    budget: u64,
    exec: Execution,
) -> Result<u64, ArcsError> {
    if !is_prime(p) {
        return Err(ArcsError::NotPrime(p));
    }
    if e > m + 1 {
        return Err(ArcsError::ContactTooLarge { e, m });
    }
    let n = gens.nvars();
    let total = budget::saturating_pow(p, (m as u64 + 1) * n as u64);
    budget::check(total, budget)?;
    let polys = gens.gens().iter().map(|g| ModPoly::new(g, p)).collect::<Result<Vec<_>, _>>()?;
    let free = budget::saturating_pow(p, (m + 1 - e) as u64 * n as u64) as u64;
    if e == 0 {
        return Ok(total as u64);
    }
    let level_size = p.pow(n as u32);
    let e = e as usize;
    let truncated = exec.map_reduce(
        0..level_size,
        || 0u64,
        |idx| {
            let mut coords = vec![vec![0u64; e]; n];
            let mut level = vec![0u64; n];
            digits(idx, p, &mut level);
            for (c, v) in coords.iter_mut().zip(&level) {
                c[0] = *v;
            }
            if !level_passes(&polys, &coords, 0) {
                return 0;
            }
            extend(&polys, &mut coords, 1, e, p, level_size)
        },
        |a, b| a + b,
    );
    Ok(truncated * free)
}

/// True if the `t^k` coefficient of every generator vanishes.
fn level_passes(polys: &[ModPoly], coords: &[Vec<u64>], k: usize) -> bool {
    polys.iter().all(|g| eval_series(g, coords, k + 1)[k] == 0)
}

fn extend(polys: &[ModPoly], coords: &mut Vec<Vec<u64>>, k: usize, e: usize, p: u64, level_size: u64) -> u64 {
    if k == e {
        return 1;
    }
    let n = coords.len();
    let mut level = vec![0u64; n];
    let mut count = 0;
    for idx in 0..level_size {
        digits(idx, p, &mut level);
        for (c, v) in coords.iter_mut().zip(&level) {
            c[k] = *v;
        }
        if level_passes(polys, coords, k) {
            count += extend(polys, coords, k + 1, e, p, level_size);
        }
    }
    for c in coords.iter_mut() {
        c[k] = 0;
    }
    count
}

/// Least-squares fit of `log(density) = c - codim * log p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodimEstimate {
    pub estimate: f64,
    /// Root-mean-square deviation of the fit in `log` space.
    pub residual: f64,
    /// `(p, count / p^((m+1) n))` per input point.
    pub densities: Vec<(u64, f64)>,
}

/// Estimates the codimension of a contact locus from counts `(p, count)` at
/// fixed `(m, e)` in `n` variables.
pub fn empirical_codim(counts: &[(u64, u64)], m: u32, n: usize) -> Result<CodimEstimate, ArcsError> {
    let mut primes: Vec<u64> = counts.iter().map(|c| c.0).collect();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() < 2 {
        return Err(ArcsError::InsufficientData);
    }
    let dim = (m as f64 + 1.0) * n as f64;
    let densities: Vec<(u64, f64)> = counts.iter().map(|&(p, c)| (p, c as f64 / (p as f64).powf(dim))).collect();
    let pts: Vec<(f64, f64)> = densities.iter().map(|&(p, d)| ((p as f64).ln(), d.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|q| q.0).sum::<f64>() / k;
    let my = pts.iter().map(|q| q.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|q| (q.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let residual = (pts.iter().map(|q| (q.1 - my - slope * (q.0 - mx)).powi(2)).sum::<f64>() / k).sqrt();
    Ok(CodimEstimate { estimate: -slope, residual, densities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn ideal(gens: &[&str], n: usize) -> IdealGens {
        IdealGens::new(gens.iter().map(|g| parse_poly(g, n).unwrap()).collect()).unwrap()
    }

    fn count(gens: &IdealGens, p: u64, m: u32, e: u32) -> u64 {
        count_contact_jets(gens, p, m, e, budget::DEFAULT_BUDGET, Execution::Sequential).unwrap()
    }

    /// Every jet, no pruning.
    fn brute_force(gens: &IdealGens, p: u64, m: u32, e: u32) -> u64 {
        let n = gens.nvars();
        let len = m as usize + 1;
        let total = p.pow((len * n) as u32);
        let mut flat = vec![0u64; len * n];
        (0..total)
            .filter(|&idx| {
                digits(idx, p, &mut flat);
                let jet = JetPoint::new(p, m, flat.chunks(len).map(|c| c.to_vec()).collect());
                jet.contact_orders(gens).unwrap().iter().all(|o| o.is_none_or(|k| k >= e))
            })
            .count() as u64
    }

    #[test]
    fn orbit_examples() {
        let o = orbit_invariants(&[1, 1]).unwrap();
        assert_eq!((o.codim, o.ord_f, o.ord_j), (4, 2, 1));
        let o = orbit_invariants(&[1, 0]).unwrap();
        assert_eq!((o.codim, o.ord_f, o.ord_j), (1, 1, 0));
        let o = orbit_invariants(&[2, 1, 0]).unwrap();
        assert_eq!((o.codim, o.ord_f, o.ord_j), (5, 3, 1));
        assert!(orbit_invariants(&[0, 1]).is_err());
    }

    #[test]
    fn coordinate_function() {
        let g = ideal(&["x"], 1);
        for p in [2, 3, 5] {
            for m in 0..4 {
                for e in 0..=m + 1 {
                    assert_eq!(count(&g, p, m, e), p.pow(m + 1 - e));
                }
            }
        }
        assert_eq!(count(&ideal(&["x1", "x2"], 2), 5, 1, 1), 25);
    }

    #[test]
    fn determinantal_matches_singular_matrix_count() {
        let g = ideal(&["x1*x4 - x2*x3"], 4);
        assert_eq!(count(&g, 3, 1, 1), 81 * 33);
        for p in [3u64, 5] {
            assert_eq!(count(&g, p, 1, 1), p.pow(4) * (p.pow(3) + p * p - p));
        }
        assert_eq!(count(&g, 3, 1, 1), brute_force(&g, 3, 1, 1));
        assert_eq!(count(&g, 3, 1, 2), brute_force(&g, 3, 1, 2));
    }

    #[test]
    fn pruned_count_matches_brute_force() {
        let g = ideal(&["x^3 + y^3"], 2);
        for e in 0..=3 {
            assert_eq!(count(&g, 3, 2, e), brute_force(&g, 3, 2, e));
        }
        let g = ideal(&["x^2", "x*y^2"], 2);
        for e in 0..=3 {
            assert_eq!(count(&g, 2, 2, e), brute_force(&g, 2, 2, e));
        }
    }

    #[test]
    fn strategies_agree() {
        let g = ideal(&["x1*x4 - x2*x3"], 4);
        let seq = count_contact_jets(&g, 5, 1, 2, 1 << 30, Execution::Sequential).unwrap();
        let par = count_contact_jets(&g, 5, 1, 2, 1 << 30, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn preconditions() {
        let g = ideal(&["x"], 1);
        assert!(matches!(
            count_contact_jets(&g, 3, 1, 3, 100, Execution::Sequential),
            Err(ArcsError::ContactTooLarge { .. })
        ));
        assert!(matches!(count_contact_jets(&g, 4, 1, 1, 100, Execution::Sequential), Err(ArcsError::NotPrime(4))));
        assert!(matches!(count_contact_jets(&g, 7, 9, 1, 100, Execution::Sequential), Err(ArcsError::Budget(_))));
        let h = ideal(&["1/2*x"], 1);
        assert!(matches!(count_contact_jets(&h, 3, 1, 1, 100, Execution::Sequential), Err(ArcsError::NonInteger(_))));
    }

    #[test]
    fn codim_estimates() {
        let g = ideal(&["x"], 1);
        let data: Vec<(u64, u64)> = [3, 5, 7].iter().map(|&p| (p, count(&g, p, 2, 2))).collect();
        let est = empirical_codim(&data, 2, 1).unwrap();
        assert!((est.estimate - 2.0).abs() < 1e-12);
        assert!(est.residual < 1e-12);

        let det = ideal(&["x1*x4 - x2*x3"], 4);
        let data: Vec<(u64, u64)> = [3, 5, 7].iter().map(|&p| (p, count(&det, p, 1, 1))).collect();
        let est = empirical_codim(&data, 1, 4).unwrap();
        assert!((est.estimate - 1.0).abs() < 0.2, "{est:?}");

        assert_eq!(empirical_codim(&[(3, 1), (3, 2)], 1, 1).unwrap_err(), ArcsError::InsufficientData);
    }
}
