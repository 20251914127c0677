//! Exponential sums `E(p^m) = p^(-mn) sum_x exp(2 pi i f(x) / p^m)` over
//! `(Z/p^m)^n`, their restrictions, and decay exponents.
//!
//! Everything is first reduced to an exact histogram of the values `f(x) mod
//! p^m`; floating point enters only when the at most `p^m` distinct residues
//! are summed against roots of unity. A histogram sums to zero exactly iff
//! its counts are constant on every coset `r + p^(m-1) Z`, which is tested
//! before any float is formed.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::arcs::is_prime;
use crate::budget::{self, BudgetExceeded};
use crate::exec::Execution;
use crate::jacobian::{f_plus_jacobian_square, jacobian_square, IdealGens, JacobianError};
use crate::modular::{digits, horner, ModPoly, NonIntegerCoefficients};
use crate::polyring::{Polynomial, Rational};

/// Absolute tolerance of the identity checks.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Default slack in `sigma_m >= lct - epsilon`.
pub const DEFAULT_EPSILON: f64 = 0.15;
/// Cosets sampled by the orthogonality check.
pub const ORTH_SAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExpSumError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("level m must be at least {min}, got {m}")]
    Level { m: u32, min: u32 },
    #[error("f is constant")]
    Constant,
    #[error("restriction has {found} variables, f has {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    NonInteger(#[from] NonIntegerCoefficients),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
}

/// Counts of `f(x) mod p^m` over a domain in `(Z/p^m)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueHistogram {
    pub p: u64,
    pub m: u32,
    pub nvars: usize,
    /// Indexed by residue, length `p^m`.
    pub counts: Vec<u64>,
}

impl ResidueHistogram {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// True iff `sum counts[c] zeta^c = 0` for a primitive `p^m`-th root of
    /// unity `zeta`.
    pub fn sums_to_zero(&self) -> bool {
        let step = self.p.pow(self.m - 1) as usize;
        (0..step).all(|r| {
            let first = self.counts[r];
            self.counts[r..].iter().step_by(step).all(|&c| c == first)
        })
    }

    /// Histogram of `f + c`.
    pub fn shifted(&self, c: u64) -> ResidueHistogram {
        let mut counts = self.counts.clone();
        let len = counts.len();
        counts.rotate_right((c % len as u64) as usize);
        ResidueHistogram { counts, ..self.clone() }
    }

    /// Entry-wise difference; panics if `other` is not dominated by `self`.
    pub fn minus(&self, other: &ResidueHistogram) -> ResidueHistogram {
        let counts =
            self.counts.iter().zip(&other.counts).map(|(a, b)| a.checked_sub(*b).expect("sub-histogram")).collect();
        ResidueHistogram { counts, ..self.clone() }
    }

    /// Keeps only residues divisible by `p^k`.
    pub fn divisible_by_power(&self, k: u32) -> ResidueHistogram {
        let q = self.p.pow(k) as usize;
        let counts = self.counts.iter().enumerate().map(|(c, &n)| if c % q == 0 { n } else { 0 }).collect();
        ResidueHistogram { counts, ..self.clone() }
    }
}

fn validate(f: &Polynomial, p: u64, m: u32, min_m: u32) -> Result<(), ExpSumError> {
    if !is_prime(p) {
        return Err(ExpSumError::NotPrime(p));
    }
    if m < min_m {
        return Err(ExpSumError::Level { m, min: min_m });
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(ExpSumError::Constant);
    }
    if !f.has_integer_coefficients() {
        return Err(NonIntegerCoefficients.into());
    }
    Ok(())
}

/// Exact histogram of `f` over all of `(Z/p^m)^n`.
pub fn residue_histogram(
    f: &Polynomial,
    p: u64,
    m: u32,
    budget: u64,
    exec: Execution,
) -> Result<ResidueHistogram, ExpSumError> {
    validate(f, p, m, 1)?;
    let n = f.nvars();
    budget::check(budget::saturating_pow(p, m as u64 * n as u64), budget)?;
    let modulus = p.pow(m);
    let mp = ModPoly::new(f, modulus)?;
    let len = modulus as usize;
    // split on the first variable; the last one is swept by Horner
    let (outer, inner_prefixes) = if n >= 2 { (modulus, modulus.pow(n as u32 - 2)) } else { (1, 1) };
    let counts = exec.map_reduce(
        0..outer,
        || vec![0u64; len],
        |x0| {
            let mut hist = vec![0u64; len];
            let mut prefix = vec![0u64; n.saturating_sub(1)];
            let mut coeffs = Vec::new();
            for idx in 0..inner_prefixes {
                if n >= 2 {
                    prefix[0] = x0;
                    digits(idx, modulus, &mut prefix[1..]);
                }
                mp.last_var_coeffs(&prefix, &mut coeffs);
                for y in 0..modulus {
                    hist[horner(&coeffs, y, modulus) as usize] += 1;
                }
            }
            hist
        },
        add_hists,
    );
    Ok(ResidueHistogram { p, m, nvars: n, counts })
}

fn add_hists(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `p^(-mn) sum_c counts[c] exp(2 pi i c / p^m)`; exactly zero when the
/// histogram is.
pub fn exp_sum(hist: &ResidueHistogram) -> Complex64 {
    if hist.sums_to_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let modulus = hist.modulus() as f64;
    let mut re = KahanSum::default();
    let mut im = KahanSum::default();
    for (c, &n) in hist.counts.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let (s, co) = (TAU * c as f64 / modulus).sin_cos();
        re.add(n as f64 * co);
        im.add(n as f64 * s);
    }
    let norm = (hist.p as f64).powf(-(hist.m as f64) * hist.nvars as f64);
    Complex64::new(re.value() * norm, im.value() * norm)
}

/// Points of `Z(F_p)`: common zeros of the generators mod `p`.
fn zero_set_mod_p(z: Option<&IdealGens>, n: usize, p: u64) -> Result<Vec<Vec<u64>>, ExpSumError> {
    let gens = match z {
        Some(z) => {
            if z.nvars() != n {
                return Err(ExpSumError::ShapeMismatch { expected: n, found: z.nvars() });
            }
            z.gens().iter().map(|g| ModPoly::new(g, p)).collect::<Result<Vec<_>, _>>()?
        }
        None => Vec::new(),
    };
    let mut out = Vec::new();
    let mut x = vec![0u64; n];
    for idx in 0..p.pow(n as u32) {
        digits(idx, p, &mut x);
        if gens.iter().all(|g| g.eval(&x) == 0) {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Histogram over `{ x : x mod p in base }`, optionally keeping only points
/// where every `filter` polynomial vanishes mod its own modulus.
fn lifted_histogram(
    mp: &ModPoly,
    p: u64,
    m: u32,
    base: &[Vec<u64>],
    filter: &[ModPoly],
    exec: Execution,
) -> ResidueHistogram {
    let n = mp.nvars;
    let modulus = p.pow(m);
    let lifts = p.pow(m - 1).pow(n as u32);
    let len = modulus as usize;
    let counts = exec.map_reduce(
        0..base.len() as u64,
        || vec![0u64; len],
        |b| {
            let x0 = &base[b as usize];
            let mut hist = vec![0u64; len];
            let mut y = vec![0u64; n];
            let mut x = vec![0u64; n];
            for idx in 0..lifts {
                digits(idx, p.pow(m - 1), &mut y);
                for i in 0..n {
                    x[i] = x0[i] + p * y[i];
                }
                if filter.iter().all(|g| g.eval(&x) == 0) {
                    hist[mp.eval(&x) as usize] += 1;
                }
            }
            hist
        },
        add_hists,
    );
    ResidueHistogram { p, m, nvars: n, counts }
}

fn restricted_budget(base: usize, p: u64, m: u32, n: usize, budget: u64) -> Result<(), BudgetExceeded> {
    let needed = (base as u128).saturating_mul(budget::saturating_pow(p, (m as u64 - 1) * n as u64));
    budget::check(needed.saturating_add(budget::saturating_pow(p, n as u64)), budget)
}

/// Histogram of `f` over `x` with `x mod p` in `Z(F_p)`; `None` means the
/// whole space.
pub fn restricted_histogram(
    f: &Polynomial,
    p: u64,
    m: u32,
    z: Option<&IdealGens>,
    budget: u64,
    exec: Execution,
) -> Result<ResidueHistogram, ExpSumError> {
    validate(f, p, m, 1)?;
    let n = f.nvars();
    budget::check(budget::saturating_pow(p, n as u64), budget)?;
    let base = zero_set_mod_p(z, n, p)?;
    restricted_budget(base.len(), p, m, n, budget)?;
    let mp = ModPoly::new(f, p.pow(m))?;
    Ok(lifted_histogram(&mp, p, m, &base, &[], exec))
}

/// `E(p^m)` restricted to `x mod p` in `Z(F_p)`, still normalized by
/// `p^(-mn)`.
pub fn exp_sum_restricted(
    f: &Polynomial,
    p: u64,
    m: u32,
    z: Option<&IdealGens>,
    budget: u64,
    exec: Execution,
) -> Result<Complex64, ExpSumError> {
    Ok(exp_sum(&restricted_histogram(f, p, m, z, budget, exec)?))
}

/// Number of solutions of `f = 0` in `(Z/p^k)^n`.
pub fn count_solutions(f: &Polynomial, p: u64, k: u32, budget: u64, exec: Execution) -> Result<u64, ExpSumError> {
    Ok(residue_histogram(f, p, k, budget, exec)?.counts[0])
}

/// One side-by-side comparison of two restricted sums.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub delta: f64,
    /// The points in the difference sum to zero exactly.
    pub exact: bool,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: &ResidueHistogram, rhs: &ResidueHistogram) -> Self {
        let (l, r) = (exp_sum(lhs), exp_sum(rhs));
        let delta = (l - r).norm();
        let exact = lhs.minus(rhs).sums_to_zero();
        IdentityCheck { lhs: l, rhs: r, delta, exact, holds: delta < IDENTITY_TOLERANCE }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrthCheck {
    /// Every sampled coset sum vanished.
    Holds {
        cosets: usize,
    },
    Fails {
        x0: Vec<u64>,
        magnitude: f64,
    },
    /// No point with `ord f >= m - 1` and `ord J_f^2 < m - 1` was found.
    Vacuous,
}

impl OrthCheck {
    pub fn ok(&self) -> bool {
        !matches!(self, OrthCheck::Fails { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IgusaReport {
    pub p: u64,
    pub m: u32,
    /// Sum over `x mod p in Z` versus the same with `f(x) = 0 mod p^(m-1)`.
    pub efz1: IdentityCheck,
    /// Sum over `x mod p in Z` versus the same with every generator of
    /// `(f) + J_f^2` vanishing mod `p^(m-1)`.
    pub efzj: IdentityCheck,
    pub orth: OrthCheck,
    /// The prime is at or below the largeness threshold; failures are then
    /// warnings.
    pub below_min_p: bool,
    pub min_p: u64,
}

impl IgusaReport {
    pub fn passed(&self) -> bool {
        self.efz1.holds && self.efzj.holds && self.orth.ok()
    }
}

/// Default largeness threshold `2 deg(f) n`.
pub fn default_min_p(f: &Polynomial) -> u64 {
    2 * f.degree().unwrap_or(0) as u64 * f.nvars() as u64
}

/// Checks the restricted-sum identities at level `m >= 2`. `z` defaults to
/// the origin.
pub fn igusa_identity_check(
    f: &Polynomial,
    p: u64,
    m: u32,
    z: Option<&IdealGens>,
    min_p: Option<u64>,
    budget: u64,
    exec: Execution,
) -> Result<IgusaReport, ExpSumError> {
    validate(f, p, m, 2)?;
    let n = f.nvars();
    let origin;
    let z = match z {
        Some(z) => z,
        None => {
            origin = IdealGens::new((0..n).map(|i| Polynomial::var(n, i)).collect())?;
            &origin
        }
    };
    budget::check(budget::saturating_pow(p, n as u64), budget)?;
    let base = zero_set_mod_p(Some(z), n, p)?;
    restricted_budget(base.len(), p, m, n, budget)?;
    let modulus = p.pow(m);
    let lower = p.pow(m - 1);
    let mp = ModPoly::new(f, modulus)?;

    let full = lifted_histogram(&mp, p, m, &base, &[], exec);
    let efz1 = IdentityCheck::new(&full, &full.divisible_by_power(m - 1));

    let gens = f_plus_jacobian_square(f)?;
    let filter = gens.gens().iter().map(|g| ModPoly::new(g, lower)).collect::<Result<Vec<_>, _>>()?;
    let efzj = IdentityCheck::new(&full, &lifted_histogram(&mp, p, m, &base, &filter, exec));

    let orth = orth_check(f, &mp, p, m, budget)?;
    let min_p = min_p.unwrap_or_else(|| default_min_p(f));
    Ok(IgusaReport { p, m, efz1, efzj, orth, below_min_p: p <= min_p, min_p })
}

/// Scans `(Z/p^m)^n` in index order for points with `f = 0 mod p^(m-1)` and
/// `J_f^2` not in `p^(m-1)`, and sums over their cosets
/// `x0 + p^ceil(m/2) (Z/p^m)^n`.
fn orth_check(f: &Polynomial, mp: &ModPoly, p: u64, m: u32, budget: u64) -> Result<OrthCheck, ExpSumError> {
    let n = f.nvars();
    let modulus = p.pow(m);
    let lower = p.pow(m - 1);
    let c = m.div_ceil(2);
    let coset_step = p.pow(c);
    let j2 = jacobian_square(f)?.gens().iter().map(|g| ModPoly::new(g, lower)).collect::<Result<Vec<_>, _>>()?;
    let scan = budget::saturating_pow(modulus, n as u64).min(budget as u128) as u64;
    let inner = p.pow(m - c);
    let inner_points = inner.pow(n as u32);
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut x0 = vec![0u64; n];
    for idx in 0..scan {
        digits(idx, modulus, &mut x0);
        if !mp.eval(&x0).is_multiple_of(lower) || j2.iter().all(|g| g.eval(&x0) == 0) {
            continue;
        }
        let rep: Vec<u64> = x0.iter().map(|x| x % coset_step).collect();
        if seen.contains(&rep) {
            continue;
        }
        let mut hist = ResidueHistogram { p, m, nvars: n, counts: vec![0; modulus as usize] };
        let mut y = vec![0u64; n];
        let mut x = vec![0u64; n];
        for j in 0..inner_points {
            digits(j, inner, &mut y);
            for i in 0..n {
                x[i] = (x0[i] + coset_step * y[i]) % modulus;
            }
            hist.counts[mp.eval(&x) as usize] += 1;
        }
        let magnitude = exp_sum(&hist).norm();
        if !hist.sums_to_zero() || magnitude >= IDENTITY_TOLERANCE {
            return Ok(OrthCheck::Fails { x0: x0.clone(), magnitude });
        }
        seen.push(rep);
        if seen.len() >= ORTH_SAMPLES {
            break;
        }
    }
    Ok(if seen.is_empty() { OrthCheck::Vacuous } else { OrthCheck::Holds { cosets: seen.len() } })
}

/// `sigma_m = -ln|E(p^m)| / (m ln p)`, or `+inf` for an exactly vanishing sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Sigma {
    Finite(f64),
    Infinite,
}

impl Sigma {
    pub fn at_least(&self, bound: f64) -> bool {
        match self {
            Sigma::Finite(s) => *s >= bound,
            Sigma::Infinite => true,
        }
    }
}

impl std::fmt::Display for Sigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sigma::Finite(s) => write!(f, "{s}"),
            Sigma::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelSum {
    pub m: u32,
    pub value: Complex64,
    pub abs: f64,
    pub exact_zero: bool,
    /// Only for `m >= 2`.
    pub sigma: Option<Sigma>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpSumProfile {
    pub p: u64,
    pub levels: Vec<LevelSum>,
    pub lct_ref: Option<Rational>,
    pub epsilon: f64,
    /// Levels with `sigma_m < lct_ref - epsilon`.
    pub violations: Vec<u32>,
}

/// `E(p^m)` and `sigma_m` for `1 <= m <= mmax`. Violations of
/// `sigma_m >= lct_ref - epsilon` are recorded, never raised.
pub fn decay_profile(
    f: &Polynomial,
    p: u64,
    mmax: u32,
    lct_ref: Option<Rational>,
    epsilon: f64,
    budget: u64,
    exec: Execution,
) -> Result<ExpSumProfile, ExpSumError> {
    validate(f, p, mmax, 1)?;
    budget::check(budget::saturating_pow(p, mmax as u64 * f.nvars() as u64), budget)?;
    let bound = lct_ref.as_ref().map(|q| rational_to_f64(q) - epsilon);
    let mut levels = Vec::new();
    let mut violations = Vec::new();
    for m in 1..=mmax {
        let hist = residue_histogram(f, p, m, budget, exec)?;
        let exact_zero = hist.sums_to_zero();
        let value = exp_sum(&hist);
        let abs = value.norm();
        let sigma = (m >= 2).then(|| {
            if exact_zero {
                Sigma::Infinite
            } else {
                Sigma::Finite(-abs.ln() / (m as f64 * (p as f64).ln()))
            }
        });
        if let (Some(s), Some(b)) = (sigma, bound) {
            if !s.at_least(b) {
                violations.push(m);
            }
        }
        levels.push(LevelSum { m, value, abs, exact_zero, sigma });
    }
    Ok(ExpSumProfile { p, levels, lct_ref, epsilon, violations })
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
