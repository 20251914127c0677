//! Log canonical thresholds that can be computed exactly.
//!
//! * Monomial ideals, from the Newton polyhedron ([`newton_lct`]).
//! * `(f) + J_f^2` for the diagonal hypersurface `x_1^d + ... + x_n^d`
//!   ([`lct_diag_fj2`]) and for the generic determinant ([`lct_det_fj2`]),
//!   each a scale-invariant fractional minimization solved in closed form and
//!   certified by enumeration.
//! * Bernstein-Sato roots and minimal exponents for the same two families.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arcs::orbit_invariants;
use crate::exec::Execution;
use crate::jacobian::{ideal_d, ideal_product, ideal_sum, IdealGens, JacobianError};
use crate::polyring::{Monomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LctError {
    #[error("ideal is not monomial; general log canonical thresholds need a log resolution and are not computed")]
    NotMonomial,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("{name} = {value} is below the minimum {min}")]
    Parameter { name: &'static str, value: u32, min: u32 },
    #[error("weight vector is zero")]
    ZeroRay,
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
}

fn rat(n: u64, d: u64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn param(name: &'static str, value: u32, min: u32) -> Result<(), LctError> {
    if value < min {
        Err(LctError::Parameter { name, value, min })
    } else {
        Ok(())
    }
}

/// An lct value; the unit ideal has threshold `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Threshold {
    Finite(Rational),
    Infinite,
}

impl Threshold {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Threshold::Finite(q) => Some(q),
            Threshold::Infinite => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(q) => write!(f, "{q}"),
            Threshold::Infinite => write!(f, "+inf"),
        }
    }
}

/// Monomial valuation with a primitive non-negative weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayValuation {
    weights: Vec<u64>,
}

impl RayValuation {
    /// Divides by the gcd of the entries.
    pub fn new(weights: Vec<u64>) -> Result<Self, LctError> {
        let g = weights.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g == 0 {
            return Err(LctError::ZeroRay);
        }
        Ok(RayValuation { weights: weights.into_iter().map(|w| w / g).collect() })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `A(v) = sum w_i`.
    pub fn log_discrepancy(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn of_monomial(&self, m: &Monomial) -> u64 {
        self.weights.iter().zip(m.exponents()).map(|(&w, &e)| w * e as u64).sum()
    }

    /// Minimum over terms; `None` for the zero polynomial.
    pub fn of_poly(&self, p: &Polynomial) -> Option<u64> {
        p.terms().keys().map(|m| self.of_monomial(m)).min()
    }

    /// Minimum over generators.
    pub fn of_ideal(&self, a: &IdealGens) -> Option<u64> {
        a.gens().iter().filter_map(|g| self.of_poly(g)).min()
    }

    /// `A(v) / v(a)`.
    pub fn ratio(&self, a: &IdealGens) -> Option<Threshold> {
        let v = self.of_ideal(a)?;
        Some(if v == 0 { Threshold::Infinite } else { Threshold::Finite(rat(self.log_discrepancy(), v)) })
    }
}

/// What the certified value is a ratio of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateWitness {
    Ray {
        ideal: IdealGens,
        ray: RayValuation,
    },
    /// `(n b + a) / min(d b + a, (2d - 2) b)` for `f = x_1^d + ... + x_n^d`.
    Diagonal {
        n: u32,
        d: u32,
        a: u64,
        b: u64,
    },
    /// `sum (2i - 1) lambda_i / min(sum lambda_i, 2 sum_{i >= 2} lambda_i)`.
    Partition(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LctCertificate {
    pub value: Rational,
    pub witness: CertificateWitness,
    /// Human-readable description of the search that shows minimality.
    pub bound_proof: String,
}

impl LctCertificate {
    /// Recomputes the witness ratio.
    pub fn witness_value(&self) -> Option<Rational> {
        match &self.witness {
            CertificateWitness::Ray { ideal, ray } => ray.ratio(ideal)?.finite().cloned(),
            &CertificateWitness::Diagonal { n, d, a, b } => diagonal_ratio(n, d, a, b),
            CertificateWitness::Partition(lambda) => partition_ratio(lambda),
        }
    }

    pub fn verify(&self) -> bool {
        self.witness_value().as_ref() == Some(&self.value)
    }
}

/// Exact LP: `t* = min { t : t (1,...,1) in conv(v_j) + R_{>=0}^n }`,
/// by Fourier-Motzkin elimination of the convex weights.
fn newton_diagonal_point(exps: &[Vec<u64>]) -> Rational {
    let k = exps.len();
    let n = exps[0].len();
    // constraint: coef . mu + tcoef * t <= rhs, with mu_{k-1} = 1 - sum mu_j
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct Row {
        coef: Vec<Rational>,
        t: Rational,
        rhs: Rational,
    }
    let vars = k - 1;
    let q = |x: u64| Rational::from_integer(x.into());
    let last = &exps[k - 1];
    let mut rows: Vec<Row> = Vec::new();
    for i in 0..n {
        rows.push(Row {
            coef: (0..vars).map(|j| q(exps[j][i]) - q(last[i])).collect(),
            t: -Rational::one(),
            rhs: -q(last[i]),
        });
    }
    for j in 0..vars {
        let mut coef = vec![Rational::zero(); vars];
        coef[j] = -Rational::one();
        rows.push(Row { coef, t: Rational::zero(), rhs: Rational::zero() });
    }
    if vars > 0 {
        rows.push(Row { coef: vec![Rational::one(); vars], t: Rational::zero(), rhs: Rational::one() });
    }

    let normalize = |mut r: Row| -> Option<Row> {
        let scale = r.coef.iter().chain(std::iter::once(&r.t)).find(|c| !c.is_zero()).map(|c| c.abs());
        match scale {
            None => {
                assert!(!r.rhs.is_negative(), "Newton polyhedron LP infeasible");
                None
            }
            Some(s) => {
                r.coef.iter_mut().for_each(|c| *c /= &s);
                r.t /= &s;
                r.rhs /= &s;
                Some(r)
            }
        }
    };

    let mut remaining: Vec<usize> = (0..vars).collect();
    while !remaining.is_empty() {
        // eliminate the variable producing the fewest new rows
        let (pos_idx, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = rows.iter().filter(|r| r.coef[v].is_positive()).count();
                let m = rows.iter().filter(|r| r.coef[v].is_negative()).count();
                p * m
            })
            .expect("nonempty");
        remaining.remove(pos_idx);
        let (pos, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| r.coef[var].is_positive());
        let (neg, zero): (Vec<Row>, Vec<Row>) = rest.into_iter().partition(|r| r.coef[var].is_negative());
        let mut seen: HashSet<Row> = HashSet::new();
        let mut next = Vec::new();
        let mut push = |r: Row, next: &mut Vec<Row>| {
            if let Some(r) = normalize(r) {
                if seen.insert(r.clone()) {
                    next.push(r);
                }
            }
        };
        for r in zero {
            push(r, &mut next);
        }
        for a in &pos {
            for b in &neg {
                let ca = a.coef[var].clone();
                let cb = -b.coef[var].clone();
                let coef = a.coef.iter().zip(&b.coef).map(|(x, y)| x * &cb + y * &ca).collect();
                let row = Row { coef, t: &a.t * &cb + &b.t * &ca, rhs: &a.rhs * &cb + &b.rhs * &ca };
                push(row, &mut next);
            }
        }
        rows = next;
    }
    // rows now read t_coef * t <= rhs; lower bounds come from t_coef < 0
    rows.iter().filter(|r| r.t.is_negative()).map(|r| &r.rhs / &r.t).max().unwrap_or_else(Rational::zero)
}

/// lct of a monomial ideal: `1 / t*` where `t* (1, ..., 1)` is where the
/// diagonal enters the Newton polyhedron.
pub fn newton_lct(a: &IdealGens) -> Result<Threshold, LctError> {
    if a.is_zero() {
        return Err(LctError::ZeroIdeal);
    }
    let pruned = a.pruned();
    let monos = pruned.monomials().ok_or(LctError::NotMonomial)?;
    if monos.iter().any(Monomial::is_one) {
        return Ok(Threshold::Infinite);
    }
    let exps: Vec<Vec<u64>> = monos.iter().map(|m| m.exponents().iter().map(|&e| e as u64).collect()).collect();
    let t = newton_diagonal_point(&exps);
    Ok(Threshold::Finite(t.recip()))
}

/// `(n b + a) / min(d b + a, (2d - 2) b)`; `None` for `b = 0`.
pub fn diagonal_ratio(n: u32, d: u32, a: u64, b: u64) -> Option<Rational> {
    if b == 0 {
        return None;
    }
    let (n, d) = (n as u64, d as u64);
    Some(rat(n * b + a, (d * b + a).min((2 * d - 2) * b)))
}

/// lct of `(f) + J_f^2` for `f = x_1^d + ... + x_n^d`.
///
/// With `b = 1` the objective is `(n + a) / (d + a)` for `a <= d - 2`
/// (monotone in `a`) and `(n + a) / (2d - 2)` beyond (increasing), so the
/// minimum sits at `a = 0` or `a = d - 2`. Ties go to the smaller `a`.
pub fn lct_diag_fj2(n: u32, d: u32) -> Result<LctCertificate, LctError> {
    param("n", n, 2)?;
    param("d", d, 2)?;
    let mut best: Option<(Rational, u64)> = None;
    for a in [0, d as u64 - 2] {
        let r = diagonal_ratio(n, d, a, 1).expect("b = 1");
        if best.as_ref().is_none_or(|(v, _)| r < *v) {
            best = Some((r, a));
        }
    }
    let (value, a) = best.expect("two candidates");
    Ok(LctCertificate {
        value,
        witness: CertificateWitness::Diagonal { n, d, a, b: 1 },
        bound_proof: format!("b = 1 by scale invariance; objective monotone on [0, {}] and increasing beyond", d - 2),
    })
}

/// `min { (n+d-2)/(2d-2), n/d }`.
pub fn lct_diag_closed_form(n: u32, d: u32) -> Rational {
    let (n, d) = (n as u64, d as u64);
    rat(n + d - 2, 2 * d - 2).min(rat(n, d))
}

/// Minimum of [`diagonal_ratio`] over integers `0 <= a <= limit`,
/// `1 <= b <= limit`, with the first minimizing pair.
pub fn diag_brute_force(n: u32, d: u32, limit: u64) -> (Rational, (u64, u64)) {
    let mut best: Option<(Rational, (u64, u64))> = None;
    for b in 1..=limit {
        for a in 0..=limit {
            let r = diagonal_ratio(n, d, a, b).expect("b > 0");
            if best.as_ref().is_none_or(|(v, _)| r < *v) {
                best = Some((r, (a, b)));
            }
        }
    }
    best.expect("nonempty range")
}

/// `codim / min(ord_f, 2 ord_J)` for a determinantal orbit; `None` if the
/// partition is not weakly decreasing or has `lambda_2 = 0`.
pub fn partition_ratio(lambda: &[u32]) -> Option<Rational> {
    let o = orbit_invariants(lambda).ok()?;
    let den = o.ord_f.min(2 * o.ord_j);
    (den > 0).then(|| rat(o.codim, den))
}

/// Weakly decreasing partitions with `n` parts (zeros allowed) of `total`.
fn partitions(total: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=rem.min(max)).rev() {
            if v as u64 * slots as u64 >= rem as u64 {
                cur.push(v);
                go(rem - v, v, slots - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(total, total, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// lct of `(f) + J_f^2` for the `n x n` generic determinant, by enumerating
/// orbit partitions with `lambda_2 > 0` and `sum lambda <= 4n`.
///
/// Each partition is also checked against
/// `sum (2i-1) lambda_i >= 4 sum_{i>=2} lambda_i`, which bounds every ratio
/// below by 2 and makes the slice bound sufficient.
pub fn lct_det_fj2(n: u32) -> Result<LctCertificate, LctError> {
    param("n", n, 2)?;
    let bound = 4 * n;
    let mut best: Option<(Rational, Vec<u32>)> = None;
    for total in 2..=bound {
        for lambda in partitions(total, n as usize) {
            if lambda[1] == 0 {
                continue;
            }
            let o = orbit_invariants(&lambda).expect("generated decreasing");
            assert!(o.codim >= 4 * o.ord_j, "lower bound fails for {lambda:?}");
            let r = partition_ratio(&lambda).expect("lambda_2 > 0");
            if best.as_ref().is_none_or(|(v, _)| r < *v) {
                best = Some((r, lambda));
            }
        }
    }
    let (value, lambda) = best.expect("(1,1,0,...) is enumerated");
    Ok(LctCertificate {
        value,
        witness: CertificateWitness::Partition(lambda),
        bound_proof: format!(
            "partitions with sum <= {bound}; every ratio >= 2 since sum (2i-1) lambda_i >= 4 sum_(i>=2) lambda_i"
        ),
    })
}

/// Negated roots of `b_f(s) / (s + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsRootTable {
    /// Distinct roots, ascending, with multiplicities.
    pub roots: Vec<(Rational, u64)>,
    pub min_exponent: Rational,
}

impl BsRootTable {
    fn from_sorted(roots: Vec<(Rational, u64)>) -> Self {
        debug_assert!(roots.windows(2).all(|w| w[0].0 < w[1].0));
        let min_exponent = roots.first().map(|r| r.0.clone()).expect("nonempty root list");
        BsRootTable { roots, min_exponent }
    }

    /// Total count with multiplicity.
    pub fn degree(&self) -> u64 {
        self.roots.iter().map(|r| r.1).sum()
    }
}

/// `{ (b_1 + ... + b_n) / d : 1 <= b_i <= d - 1 }` for `x_1^d + ... + x_n^d`.
pub fn yano_roots(n: u32, d: u32) -> Result<BsRootTable, LctError> {
    param("n", n, 1)?;
    param("d", d, 2)?;
    // number of tuples with each digit sum, by convolution
    let mut ways: Vec<u64> = vec![1];
    for _ in 0..n {
        let mut next = vec![0u64; ways.len() + d as usize - 1];
        for (s, &w) in ways.iter().enumerate() {
            for b in 1..d as usize {
                next[s + b] += w;
            }
        }
        ways = next;
    }
    let roots = ways.iter().enumerate().filter(|(_, &w)| w > 0).map(|(s, &w)| (rat(s as u64, d as u64), w)).collect();
    Ok(BsRootTable::from_sorted(roots))
}

/// `{2, ..., n}` for the `n x n` generic determinant.
pub fn det_roots(n: u32) -> Result<BsRootTable, LctError> {
    param("n", n, 2)?;
    Ok(BsRootTable::from_sorted((2..=n as u64).map(|i| (rat(i, 1), 1)).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x_1^d + ... + x_n^d`.
    Diagonal { n: u32, d: u32 },
    /// Determinant of the generic `n x n` matrix.
    Determinantal { n: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Diagonal { n, d } => write!(f, "diagonal(n={n}, d={d})"),
            Family::Determinantal { n } => write!(f, "determinantal(n={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub family: Family,
    /// Minimal exponent.
    pub alpha: Rational,
    /// `min(alpha, 1)`.
    pub lct_f: Rational,
    pub lct_fj2: Rational,
    pub strict: bool,
    /// `lct(f, J_f^2) > 1`.
    pub rational: bool,
    pub checks: Vec<(&'static str, bool)>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

/// Evaluates the relations between `alpha`, `lct(f)` and `lct(f, J_f^2)` on
/// one family member.
pub fn check_theorems(family: Family) -> Result<TheoremReport, LctError> {
    let one = Rational::one();
    match family {
        Family::Diagonal { n, d } => {
            let alpha = yano_roots(n, d)?.min_exponent;
            let cert = lct_diag_fj2(n, d)?;
            let lct_fj2 = cert.value.clone();
            let lct_f = alpha.clone().min(one.clone());
            // lct(f) of a nondegenerate f agrees with its term ideal's, capped at 1
            let terms = IdealGens::new((0..n as usize).map(|i| Polynomial::var(n as usize, i).pow(d)).collect())?;
            let newton = newton_lct(&terms)?.finite().cloned().expect("proper ideal").min(one.clone());
            let strict = alpha > lct_fj2;
            let rational = lct_fj2 > one;
            let checks = vec![
                ("certificate", cert.verify()),
                ("closed_form", lct_fj2 == lct_diag_closed_form(n, d)),
                ("alpha_is_n_over_d", alpha == rat(n as u64, d as u64)),
                ("lct_f_matches_newton", lct_f == newton),
                ("alpha_ge_lct_fj2", alpha >= lct_fj2),
                ("strict_iff_3_le_d_lt_n", strict == (3 <= d && d < n)),
                ("rational_iff_d_lt_n", rational == (d < n)),
                ("rational_iff_alpha_gt_1", rational == (alpha > one)),
                ("lct_fj2_eq_lct_f_if_d_ge_n", d < n || lct_fj2 == lct_f),
            ];
            Ok(TheoremReport { family, alpha, lct_f, lct_fj2, strict, rational, checks })
        }
        Family::Determinantal { n } => {
            let alpha = det_roots(n)?.min_exponent;
            let cert = lct_det_fj2(n)?;
            let lct_fj2 = cert.value.clone();
            let lct_f = alpha.clone().min(one.clone());
            let strict = alpha > lct_fj2;
            let rational = lct_fj2 > one;
            let mut witness = vec![0u32; n as usize];
            witness[0] = 1;
            witness[1] = 1;
            let checks = vec![
                ("certificate", cert.verify()),
                ("witness_is_1_1_0", cert.witness == CertificateWitness::Partition(witness)),
                ("alpha_is_2", alpha == rat(2, 1)),
                ("alpha_eq_lct_fj2", alpha == lct_fj2),
                ("rational", rational),
            ];
            Ok(TheoremReport { family, alpha, lct_f, lct_fj2, strict, rational, checks })
        }
    }
}

/// [`check_theorems`] over `2 <= n <= n_max`, `2 <= d <= d_max`, in `(n, d)`
/// order.
pub fn check_diagonal_grid(n_max: u32, d_max: u32, exec: Execution) -> Result<Vec<TheoremReport>, LctError> {
    let families: Vec<Family> = (2..=n_max).flat_map(|n| (2..=d_max).map(move |d| Family::Diagonal { n, d })).collect();
    exec.map_collect(&families, |&f| check_theorems(f)).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorDStatus {
    Equal,
    Differ,
    /// `lct(a) >= 1`: outside the hypothesis.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorDReport {
    pub lct_a: Threshold,
    /// `a + D(a)^2`.
    pub enlarged: IdealGens,
    pub lct_enlarged: Threshold,
    pub status: CorDStatus,
}

/// Compares `lct(a)` with `lct(a + D(a)^2)` for a monomial ideal.
pub fn check_cor_d(a: &IdealGens) -> Result<CorDReport, LctError> {
    let lct_a = newton_lct(a)?;
    let d = ideal_d(a);
    let enlarged = ideal_sum(a, &ideal_product(&d, &d)?)?;
    let lct_enlarged = newton_lct(&enlarged)?;
    let status = if lct_a >= Threshold::Finite(Rational::one()) {
        CorDStatus::Skipped
    } else if lct_a == lct_enlarged {
        CorDStatus::Equal
    } else {
        CorDStatus::Differ
    };
    Ok(CorDReport { lct_a, enlarged, lct_enlarged, status })
}

/// Fixed corpus of monomial ideals with lct below 1.
pub fn cor_d_corpus() -> Vec<IdealGens> {
    let ideal = |gens: &[&[u32]]| {
        IdealGens::new(gens.iter().map(|e| Polynomial::monomial(Monomial::new(e.to_vec()), Rational::one())).collect())
            .expect("nonempty")
    };
    vec![
        ideal(&[&[3, 0], &[0, 3]]),
        ideal(&[&[2, 2]]),
        ideal(&[&[4]]),
        ideal(&[&[5, 0], &[0, 2]]),
        ideal(&[&[5, 0], &[2, 2], &[0, 7]]),
        ideal(&[&[3, 1], &[1, 3]]),
        ideal(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4]]),
        ideal(&[&[2, 2, 0], &[0, 2, 2], &[2, 0, 2]]),
        ideal(&[&[2, 1, 1]]),
        ideal(&[&[6, 0], &[2, 1], &[0, 3]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono_ideal(gens: &[&[u32]]) -> IdealGens {
        IdealGens::new(gens.iter().map(|e| Polynomial::monomial(Monomial::new(e.to_vec()), Rational::one())).collect())
            .unwrap()
    }

    /// `min over w in [0, k]^n \ 0 of sum w / min <w, v>`, an upper bound for
    /// the lct that is attained once `k` reaches the facet normals.
    fn ray_oracle(a: &IdealGens, k: u64) -> Rational {
        let n = a.nvars();
        let mut best: Option<Rational> = None;
        let mut w = vec![0u64; n];
        let total = (k + 1).pow(n as u32);
        for idx in 1..total {
            let mut i = idx;
            for x in w.iter_mut() {
                *x = i % (k + 1);
                i /= k + 1;
            }
            let ray = RayValuation::new(w.clone()).unwrap();
            if let Some(Threshold::Finite(r)) = ray.ratio(a) {
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn newton_examples() {
        let max = mono_ideal(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(newton_lct(&max).unwrap(), Threshold::Finite(rat(3, 1)));
        assert_eq!(newton_lct(&mono_ideal(&[&[5]])).unwrap(), Threshold::Finite(rat(1, 5)));
        let a = mono_ideal(&[&[3, 0], &[0, 3], &[2, 2]]);
        assert_eq!(newton_lct(&a).unwrap(), Threshold::Finite(rat(2, 3)));
        assert_eq!(newton_lct(&mono_ideal(&[&[0, 0]])).unwrap(), Threshold::Infinite);
        assert_eq!(newton_lct(&mono_ideal(&[&[1, 0]])).unwrap(), Threshold::Finite(rat(1, 1)));
    }

    #[test]
    fn newton_errors() {
        let z = IdealGens::new(vec![Polynomial::zero(2)]).unwrap();
        assert_eq!(newton_lct(&z).unwrap_err(), LctError::ZeroIdeal);
        let f = IdealGens::new(vec![crate::parse_poly("x + y^2", 2).unwrap()]).unwrap();
        assert_eq!(newton_lct(&f).unwrap_err(), LctError::NotMonomial);
    }

    #[test]
    fn newton_agrees_with_ray_oracle() {
        for a in cor_d_corpus() {
            let Threshold::Finite(v) = newton_lct(&a).unwrap() else { panic!() };
            let k = if a.nvars() == 3 { 6 } else { 12 };
            assert_eq!(v, ray_oracle(&a, k), "{a}");
        }
    }

    #[test]
    fn diagonal_examples() {
        let c = lct_diag_fj2(2, 5).unwrap();
        assert_eq!(c.value, rat(2, 5));
        assert_eq!(c.witness, CertificateWitness::Diagonal { n: 2, d: 5, a: 0, b: 1 });
        assert_eq!(lct_diag_fj2(3, 2).unwrap().value, rat(3, 2));
        let c = lct_diag_fj2(5, 3).unwrap();
        assert_eq!(c.value, rat(3, 2));
        assert_eq!(c.witness, CertificateWitness::Diagonal { n: 5, d: 3, a: 1, b: 1 });
        assert!(c.verify());
        assert!(lct_diag_fj2(1, 3).is_err());
    }

    #[test]
    fn diagonal_minimizer_matches_closed_form_and_brute_force() {
        for n in 2..=12 {
            for d in 2..=12 {
                let c = lct_diag_fj2(n, d).unwrap();
                assert!(c.verify());
                assert_eq!(c.value, lct_diag_closed_form(n, d));
                if n <= 8 && d <= 8 {
                    assert_eq!(diag_brute_force(n, d, 50).0, c.value, "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn determinantal() {
        for n in 2..=6 {
            let c = lct_det_fj2(n).unwrap();
            assert_eq!(c.value, rat(2, 1));
            let mut w = vec![0; n as usize];
            w[0] = 1;
            w[1] = 1;
            assert_eq!(c.witness, CertificateWitness::Partition(w));
            assert!(c.verify());
        }
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions(3, 2), vec![vec![3, 0], vec![2, 1]]);
        assert_eq!(partitions(4, 3).len(), 4);
        assert!(partition_ratio(&[1, 0]).is_none());
    }

    #[test]
    fn root_tables() {
        let t = yano_roots(1, 3).unwrap();
        assert_eq!(t.roots, vec![(rat(1, 3), 1), (rat(2, 3), 1)]);
        assert_eq!(yano_roots(2, 2).unwrap().roots, vec![(rat(1, 1), 1)]);
        let t = yano_roots(2, 3).unwrap();
        assert_eq!(t.roots, vec![(rat(2, 3), 1), (rat(1, 1), 2), (rat(4, 3), 1)]);
        assert_eq!(t.min_exponent, rat(2, 3));
        assert_eq!(yano_roots(3, 4).unwrap().degree(), 27);
        assert_eq!(yano_roots(8, 8).unwrap().degree(), 7u64.pow(8));
        assert_eq!(det_roots(3).unwrap().roots, vec![(rat(2, 1), 1), (rat(3, 1), 1)]);
        assert_eq!(det_roots(5).unwrap().min_exponent, rat(2, 1));
    }

    #[test]
    fn theorem_examples() {
        let r = check_theorems(Family::Diagonal { n: 4, d: 4 }).unwrap();
        assert_eq!((r.alpha.clone(), r.lct_f.clone(), r.lct_fj2.clone()), (rat(1, 1), rat(1, 1), rat(1, 1)));
        assert!(!r.strict && !r.rational && r.passed());
        let r = check_theorems(Family::Diagonal { n: 4, d: 3 }).unwrap();
        assert_eq!((r.alpha.clone(), r.lct_fj2.clone()), (rat(4, 3), rat(5, 4)));
        assert!(r.strict && r.passed());
        let r = check_theorems(Family::Determinantal { n: 3 }).unwrap();
        assert_eq!(r.alpha, rat(2, 1));
        assert_eq!(r.lct_fj2, rat(2, 1));
        assert!(r.passed());
    }

    #[test]
    fn grid_strategies_agree() {
        let seq = check_diagonal_grid(8, 8, Execution::Sequential).unwrap();
        let par = check_diagonal_grid(8, 8, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(seq.iter().all(TheoremReport::passed));
    }

    #[test]
    fn cor_d_examples() {
        let r = check_cor_d(&mono_ideal(&[&[3, 0], &[0, 3]])).unwrap();
        assert_eq!(r.lct_a, Threshold::Finite(rat(2, 3)));
        assert!(r.enlarged.same_generators(&mono_ideal(&[&[3, 0], &[0, 3], &[2, 2]])));
        assert_eq!(r.status, CorDStatus::Equal);
        let r = check_cor_d(&mono_ideal(&[&[4]])).unwrap();
        assert!(r.enlarged.same_generators(&mono_ideal(&[&[4]])));
        assert_eq!(r.status, CorDStatus::Equal);
        let r = check_cor_d(&mono_ideal(&[&[2, 2]])).unwrap();
        assert_eq!(r.lct_a, Threshold::Finite(rat(1, 2)));
        assert!(r.enlarged.same_generators(&mono_ideal(&[&[2, 2]])));
        let r = check_cor_d(&mono_ideal(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(r.status, CorDStatus::Skipped);
        for a in cor_d_corpus() {
            let r = check_cor_d(&a).unwrap();
            assert!(r.lct_a < Threshold::Finite(rat(1, 1)), "{a}");
            assert_eq!(r.status, CorDStatus::Equal, "{a}");
        }
    }
}
