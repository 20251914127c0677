//! Jacobian ideals, the derived ideal `D(a)`, truncated ideal membership,
//! quadratic rank, and Milnor numbers by colength stabilization.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::{self, SpanSolver, SparseVec};
use crate::polyring::{Monomial, Multiplicity, PolyError, Polynomial, Rational, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JacobianError {
    #[error("the zero polynomial has no Jacobian ideal")]
    ZeroPolynomial,
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generators live in different numbers of variables")]
    MixedNvars,
    #[error("f has terms of degree < 2 (multiplicity {0})")]
    MultiplicityBelowTwo(Multiplicity),
    #[error("f does not vanish at the origin")]
    NonzeroAtOrigin,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Ordered generator list of an ideal. The order is part of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl IdealGens {
    pub fn new(gens: Vec<Polynomial>) -> Result<Self, JacobianError> {
        let first = gens.first().ok_or(JacobianError::NoGenerators)?;
        let nvars = first.nvars();
        if gens.iter().any(|g| g.nvars() != nvars) {
            return Err(JacobianError::MixedNvars);
        }
        Ok(IdealGens { nvars, gens })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Polynomial::is_zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.as_monomial().is_some())
    }

    /// Exponent vectors of a monomial ideal, `None` otherwise.
    pub fn monomials(&self) -> Option<Vec<Monomial>> {
        self.gens.iter().map(|g| g.as_monomial().map(|(m, _)| m.clone())).collect()
    }

    /// Drops zero and duplicate generators. For monomial ideals also scales
    /// generators to coefficient 1 and removes every generator divisible by
    /// an earlier-kept or smaller one.
    pub fn pruned(&self) -> IdealGens {
        let nonzero: Vec<&Polynomial> = self.gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return IdealGens { nvars: self.nvars, gens: vec![Polynomial::zero(self.nvars)] };
        }
        if nonzero.iter().all(|g| g.as_monomial().is_some()) {
            let monos: Vec<Monomial> = nonzero.iter().map(|g| g.as_monomial().unwrap().0.clone()).collect();
            let mut kept: Vec<Monomial> = Vec::new();
            for (i, m) in monos.iter().enumerate() {
                let redundant = monos
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && m.is_divisible_by(other) && (other != m || j < i));
                if !redundant {
                    kept.push(m.clone());
                }
            }
            let gens = kept.into_iter().map(|m| Polynomial::monomial(m, Rational::one())).collect();
            return IdealGens { nvars: self.nvars, gens };
        }
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in nonzero {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        IdealGens { nvars: self.nvars, gens }
    }

    /// Generator-set equality after pruning (order ignored).
    pub fn same_generators(&self, other: &IdealGens) -> bool {
        let a = self.pruned();
        let b = other.pruned();
        a.gens.len() == b.gens.len() && a.gens.iter().all(|g| b.gens.contains(g))
    }
}

impl std::fmt::Display for IdealGens {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// `(df/dx1, ..., df/dxn)` in variable order.
pub fn jacobian_ideal(f: &Polynomial) -> Result<IdealGens, JacobianError> {
    if f.is_zero() {
        return Err(JacobianError::ZeroPolynomial);
    }
    let gens = (0..f.nvars()).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>, _>>()?;
    IdealGens::new(gens)
}

/// Generators `df/dxi * df/dxj` for `i <= j`, in lexicographic `(i, j)` order.
/// [`MembershipWitness`]es for `J_f^2` refer to this list.
pub fn jacobian_square(f: &Polynomial) -> Result<IdealGens, JacobianError> {
    let j = jacobian_ideal(f)?;
    let n = j.len();
    let mut gens = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            gens.push(&j.gens[a] * &j.gens[b]);
        }
    }
    IdealGens::new(gens)
}

/// Index pairs matching [`jacobian_square`]'s generator order.
pub fn jacobian_square_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
}

/// `D(a)`: the generators of `a` together with all their partial derivatives.
pub fn ideal_d(a: &IdealGens) -> IdealGens {
    let mut gens = a.gens.clone();
    for g in &a.gens {
        for i in 0..a.nvars {
            gens.push(g.partial_derivative(i).expect("index in range"));
        }
    }
    IdealGens { nvars: a.nvars, gens }.pruned()
}

/// Pairwise products in `(i, j)` order, pruned.
pub fn ideal_product(a: &IdealGens, b: &IdealGens) -> Result<IdealGens, JacobianError> {
    if a.nvars != b.nvars {
        return Err(JacobianError::MixedNvars);
    }
    let gens = a.gens.iter().flat_map(|x| b.gens.iter().map(move |y| x * y)).collect();
    Ok(IdealGens { nvars: a.nvars, gens }.pruned())
}

/// Concatenation, pruned.
pub fn ideal_sum(a: &IdealGens, b: &IdealGens) -> Result<IdealGens, JacobianError> {
    if a.nvars != b.nvars {
        return Err(JacobianError::MixedNvars);
    }
    let gens = a.gens.iter().chain(&b.gens).cloned().collect();
    Ok(IdealGens { nvars: a.nvars, gens }.pruned())
}

/// `(f) + J_f^2`.
pub fn f_plus_jacobian_square(f: &Polynomial) -> Result<IdealGens, JacobianError> {
    let principal = IdealGens::new(vec![f.clone()])?;
    ideal_sum(&principal, &jacobian_square(f)?)
}

/// Certificate that `sum coefficients[i] * gens[i] == target mod m^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub target: Polynomial,
    pub coefficients: Vec<TruncatedSeries>,
    pub order: u32,
}

impl MembershipWitness {
    /// Expands the combination and compares with the target modulo `m^order`.
    pub fn verify(&self, ideal: &IdealGens) -> bool {
        if ideal.len() != self.coefficients.len() {
            return false;
        }
        let mut acc = Polynomial::zero(ideal.nvars);
        for (h, g) in self.coefficients.iter().zip(&ideal.gens) {
            acc = &acc + &h.poly().mul_truncated(g, self.order);
        }
        acc == self.target.truncate(self.order)
    }

    /// The expanded combination `sum h_i g_i mod m^order`.
    pub fn combination(&self, ideal: &IdealGens) -> Polynomial {
        let mut acc = Polynomial::zero(ideal.nvars);
        for (h, g) in self.coefficients.iter().zip(&ideal.gens) {
            acc = &acc + &h.poly().mul_truncated(g, self.order);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(MembershipWitness),
    /// No combination matches `g` modulo `m^order`.
    NotMember {
        order: u32,
    },
}

impl Membership {
    pub fn witness(self) -> Option<MembershipWitness> {
        match self {
            Membership::Member(w) => Some(w),
            Membership::NotMember { .. } => None,
        }
    }
}

/// Column index of every monomial of degree `< order`.
struct MonomialIndex(HashMap<Monomial, usize>);

impl MonomialIndex {
    fn new(nvars: usize, order: u32) -> Self {
        MonomialIndex(Monomial::all_below_degree(nvars, order).into_iter().enumerate().map(|(i, m)| (m, i)).collect())
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn vector(&self, p: &Polynomial, order: u32) -> SparseVec {
        p.terms().iter().filter(|(m, _)| m.degree() < order).map(|(m, c)| (self.0[m], c.clone())).collect()
    }
}

/// Solves `sum h_i * gens[i] == g mod m^order` for series `h_i`.
pub fn membership_truncated(g: &Polynomial, a: &IdealGens, order: u32) -> Membership {
    membership_truncated_from(g, a, order, 0)
}

/// Like [`membership_truncated`] but only allows coefficient monomials of
/// degree `>= min_coeff_degree`, i.e. solves in `m^k * a`.
///
/// Solves degree by degree. When the degree-`t` part of the remainder is
/// not reached by the initial forms, the window `[t - s, t]` grows and lower
/// coefficient degrees are re-opened under the constraint that they leave the
/// already matched degrees untouched. At `s = t` this is the whole truncated
/// problem, so failure there proves non-membership.
pub fn membership_truncated_from(g: &Polynomial, a: &IdealGens, order: u32, min_coeff_degree: u32) -> Membership {
    assert!(order >= 1, "order must be positive");
    let nvars = a.nvars;
    let index = MonomialIndex::new(nvars, order);
    let mut coeffs = vec![Polynomial::zero(nvars); a.gens.len()];
    let mut rest = g.truncate(order);
    let mults: Vec<Option<u32>> = a.gens.iter().map(|p| p.min_degree()).collect();
    for t in 0..order {
        let part = rest.homogeneous_part(t);
        if part.is_zero() {
            continue;
        }
        let target = index.vector(&part, order);
        let mut solver = SpanSolver::new(true);
        // label -> (generator, coefficient monomial)
        let mut labels: Vec<(usize, Monomial)> = Vec::new();
        let mut solved = None;
        for s in 0..=t {
            let before = labels.len();
            for (gi, mult) in mults.iter().enumerate() {
                let Some(d) = *mult else { continue };
                if d > t || t - d < min_coeff_degree {
                    continue;
                }
                // coefficient degree t - d - s, the layer this width opens
                let Some(e) = (t - d).checked_sub(s) else { continue };
                if e < min_coeff_degree {
                    continue;
                }
                for m in Monomial::all_of_degree(nvars, e) {
                    let label = labels.len();
                    solver.insert(index.vector(&a.gens[gi].mul_monomial(&m).truncate(t + 1), order), label);
                    labels.push((gi, m));
                }
            }
            if s > 0 && labels.len() == before {
                continue;
            }
            if let Some(combo) = solver.express(target.clone()) {
                solved = Some(combo);
                break;
            }
        }
        let Some(combo) = solved else {
            return Membership::NotMember { order };
        };
        let mut step = Polynomial::zero(nvars);
        for (label, c) in combo {
            let (gi, m) = &labels[label];
            coeffs[*gi].add_term(m.clone(), c.clone());
            step = &step + &a.gens[*gi].mul_truncated(&Polynomial::monomial(m.clone(), c), order);
        }
        rest = &rest - &step;
    }
    Membership::Member(MembershipWitness {
        target: g.truncate(order),
        coefficients: coeffs.into_iter().map(|p| TruncatedSeries::new(p, order)).collect(),
        order,
    })
}

/// Symmetric matrix of the degree-2 part: `[i][i]` is the coefficient of
/// `xi^2`, `[i][j]` half the coefficient of `xi*xj`.
pub fn quadratic_form_matrix(f: &Polynomial) -> Vec<Vec<Rational>> {
    let n = f.nvars();
    let half = Rational::new(1.into(), 2.into());
    let mut q = vec![vec![Rational::zero(); n]; n];
    for (m, c) in f.homogeneous_part(2).terms() {
        let e = m.exponents();
        let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match vars.as_slice() {
            [i] => q[*i][*i] = c.clone(),
            [i, j] => {
                q[*i][*j] = c * &half;
                q[*j][*i] = c * &half;
            }
            _ => unreachable!("degree-2 monomial"),
        }
    }
    q
}

/// Rank of the quadratic part of `f`; `f` must lie in `m^2`.
pub fn quadratic_rank(f: &Polynomial) -> Result<usize, JacobianError> {
    let mult = f.multiplicity();
    if mult.lower_bound() < 2 {
        return Err(JacobianError::MultiplicityBelowTwo(mult));
    }
    Ok(linalg::rank(&quadratic_form_matrix(f)))
}

/// Outcome of [`milnor_number`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilnorNumber {
    /// `dim O/J_f`, certified by `c_N == c_{N+1}` at `stabilized_at = N`.
    Isolated {
        mu: u64,
        stabilized_at: u32,
    },
    /// Heuristic: the truncated colength kept growing past `2 deg f`.
    NonIsolated {
        last_order: u32,
        colengths: Vec<u64>,
    },
    Inconclusive {
        max_order: u32,
        colengths: Vec<u64>,
    },
}

impl MilnorNumber {
    pub fn mu(&self) -> Option<u64> {
        match self {
            MilnorNumber::Isolated { mu, .. } => Some(*mu),
            _ => None,
        }
    }
}

/// Number of consecutive colength increases, beyond order `2 deg f`, after
/// which the singularity is declared non-isolated.
pub const NON_ISOLATED_RUN: u32 = 5;

/// `dim (O / (J_f + m^order))`.
pub fn truncated_colength(f: &Polynomial, order: u32) -> Result<u64, JacobianError> {
    let j = jacobian_ideal(f)?;
    let index = MonomialIndex::new(f.nvars(), order);
    let mut solver = SpanSolver::new(false);
    let mut label = 0;
    for gen in j.gens() {
        let Some(mult) = gen.min_degree() else { continue };
        if mult >= order {
            continue;
        }
        for m in Monomial::all_below_degree(f.nvars(), order - mult) {
            let v = index.vector(&gen.mul_monomial(&m), order);
            if !v.is_empty() {
                solver.insert(v, label);
                label += 1;
            }
        }
    }
    Ok((index.len() - solver.rank()) as u64)
}

/// Milnor number at the origin, computed as the stable value of the
/// truncated colength `c_N = dim O/(J_f + m^N)`.
///
/// `c_N == c_{N+1}` gives `m^N` inside `J_f + m^(N+1)`, hence inside `J_f`
/// by Nakayama, so the first repeat is final.
pub fn milnor_number(f: &Polynomial, max_order: u32) -> Result<MilnorNumber, JacobianError> {
    if f.is_zero() {
        return Err(JacobianError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(JacobianError::NonzeroAtOrigin);
    }
    let mult = f.multiplicity();
    if mult.lower_bound() < 2 {
        return Err(JacobianError::MultiplicityBelowTwo(mult));
    }
    let deg = f.degree().unwrap_or(0);
    let mut colengths = vec![truncated_colength(f, 1)?];
    let mut run = 0;
    for order in 2..=max_order {
        let c = truncated_colength(f, order)?;
        let prev = *colengths.last().unwrap();
        colengths.push(c);
        if c == prev {
            return Ok(MilnorNumber::Isolated { mu: c, stabilized_at: order - 1 });
        }
        if order > 2 * deg && c > prev {
            run += 1;
            if run >= NON_ISOLATED_RUN {
                return Ok(MilnorNumber::NonIsolated { last_order: order, colengths });
            }
        } else {
            run = 0;
        }
    }
    Ok(MilnorNumber::Inconclusive { max_order, colengths })
}

/// `alpha^n * mu` against `(n/2)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorInequality {
    pub n: usize,
    pub mu: u64,
    pub alpha: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

pub fn milnor_inequality(n: usize, mu: u64, alpha: &Rational) -> MilnorInequality {
    let lhs = num_traits::pow(alpha.clone(), n) * Rational::from_integer(mu.into());
    let rhs = num_traits::pow(Rational::new((n as i64).into(), 2.into()), n);
    MilnorInequality { n, mu, alpha: alpha.clone(), holds: lhs >= rhs, equality: lhs == rhs, lhs, rhs }
}

/// Computes `mu(f)` and checks `alpha^n * mu >= (n/2)^n` with the supplied
/// minimal exponent.
pub fn check_milnor_inequality(
    f: &Polynomial,
    alpha: &Rational,
    max_order: u32,
) -> Result<Option<MilnorInequality>, JacobianError> {
    Ok(milnor_number(f, max_order)?.mu().map(|mu| milnor_inequality(f.nvars(), mu, alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_poly(s, n).unwrap()
    }

    fn ideal(gs: &[&str], n: usize) -> IdealGens {
        IdealGens::new(gs.iter().map(|g| p(g, n)).collect()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian_ideal(&p("x1^3 + x2^3 + x3^3", 3)).unwrap();
        assert_eq!(j, ideal(&["3*x1^2", "3*x2^2", "3*x3^2"], 3));
        let j = jacobian_ideal(&p("x1*x4 - x2*x3", 4)).unwrap();
        assert_eq!(j, ideal(&["x4", "-x3", "-x2", "x1"], 4));
        let j = jacobian_ideal(&p("x1", 2)).unwrap();
        assert_eq!(j, ideal(&["1", "0"], 2));
        assert_eq!(jacobian_ideal(&Polynomial::zero(2)), Err(JacobianError::ZeroPolynomial));
    }

    #[test]
    fn derived_ideal_examples() {
        let f = p("x^2*y + y^3", 2);
        let d = ideal_d(&ideal(&["x^2*y + y^3"], 2));
        let expected = ideal_sum(&ideal(&["x^2*y + y^3"], 2), &jacobian_ideal(&f).unwrap()).unwrap();
        assert!(d.same_generators(&expected));
        assert_eq!(ideal_d(&ideal(&["x^3", "y^3"], 2)), ideal(&["x^2", "y^2"], 2));
        assert_eq!(ideal_d(&ideal(&["x*y"], 2)), ideal(&["y", "x"], 2));
    }

    #[test]
    fn products_and_sums() {
        assert_eq!(ideal_product(&ideal(&["x"], 2), &ideal(&["y"], 2)).unwrap(), ideal(&["x*y"], 2));
        let j = jacobian_ideal(&p("x^3 + y^3", 2)).unwrap();
        let j2 = ideal_product(&j, &j).unwrap();
        assert!(j2.same_generators(&ideal(&["x^4", "x^2*y^2", "y^4"], 2)));
        let s = ideal_sum(&ideal(&["x^3", "y^3"], 2), &ideal(&["x^2*y^2"], 2)).unwrap();
        assert_eq!(s, ideal(&["x^3", "y^3", "x^2*y^2"], 2));
        assert_eq!(jacobian_square(&p("x^3 + y^3", 2)).unwrap(), ideal(&["9*x^4", "9*x^2*y^2", "9*y^4"], 2));
    }

    #[test]
    fn membership_examples() {
        let w = membership_truncated(&p("x^4", 1), &ideal(&["x^2"], 1), 8).witness().unwrap();
        assert_eq!(w.coefficients[0].poly(), &p("x^2", 1));
        assert!(w.verify(&ideal(&["x^2"], 1)));
        assert_eq!(membership_truncated(&p("x", 1), &ideal(&["x^2"], 1), 4), Membership::NotMember { order: 4 });

        let j2 = jacobian_square(&p("x^3 + y^3", 2)).unwrap();
        let w = membership_truncated(&p("x^2*y^2", 2), &j2, 10).witness().unwrap();
        assert!(w.verify(&j2));
        let ninth = Rational::new(1.into(), 9.into());
        assert_eq!(w.coefficients[1].poly(), &Polynomial::constant(2, ninth));
        assert!(w.coefficients[0].is_zero() && w.coefficients[2].is_zero());
    }

    #[test]
    fn membership_with_degree_floor() {
        // x^4 is in (x^2) but not in m^3 (x^2)
        let a = ideal(&["x^2"], 1);
        assert!(membership_truncated_from(&p("x^4", 1), &a, 8, 2).witness().is_some());
        assert!(membership_truncated_from(&p("x^4", 1), &a, 8, 3).witness().is_none());
    }

    #[test]
    fn quadratic_ranks() {
        assert_eq!(quadratic_rank(&p("x1^2 + x2^2", 2)), Ok(2));
        assert_eq!(quadratic_rank(&p("x1*x2", 2)), Ok(2));
        assert_eq!(quadratic_rank(&p("x1^3", 2)), Ok(0));
        assert!(matches!(quadratic_rank(&p("x1 + x1^2", 1)), Err(JacobianError::MultiplicityBelowTwo(_))));
        assert_eq!(quadratic_rank(&Polynomial::zero(2)), Ok(0));
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&p("x^2 + y^2", 2), 20).unwrap().mu(), Some(1));
        assert_eq!(milnor_number(&p("x^3 + y^3", 2), 20).unwrap().mu(), Some(4));
        assert_eq!(milnor_number(&p("x^2 + y^3", 2), 20).unwrap().mu(), Some(2));
        assert_eq!(milnor_number(&p("x^2 + y^5", 2), 20).unwrap().mu(), Some(4));
        assert!(matches!(milnor_number(&p("x^2", 2), 40).unwrap(), MilnorNumber::NonIsolated { .. }));
        assert!(matches!(milnor_number(&p("x^2", 2), 6).unwrap(), MilnorNumber::Inconclusive { .. }));
        assert!(milnor_number(&p("x + y^2", 2), 10).is_err());
        assert!(milnor_number(&p("1 + x^2", 1), 10).is_err());
    }

    #[test]
    fn milnor_inequality_examples() {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let r = milnor_inequality(2, 1, &q(1, 1));
        assert!(r.holds && r.equality);
        let r = milnor_inequality(2, 4, &q(2, 3));
        assert_eq!(r.lhs, q(16, 9));
        assert!(r.holds && !r.equality);
        let r = milnor_inequality(3, 27, &q(3, 4));
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (q(729, 64), q(27, 8)));
        assert!(r.holds);
    }
}
