//! Formal equivalence at finite truncation order.
//!
//! * [`morsify`] splits off a nondegenerate quadratic part by repeatedly
//!   completing the square.
//! * [`tougeron`] builds an automorphism `psi` with `psi(f) = f + g` for
//!   `g` in `J_f^2` and `mult(f) >= 3`, by the doubling iteration
//!   `phi_j(x_i) - x_i` in `m^(2^(j-1)-1) J_f`.
//! * [`formal_equiv_rank2`] chains both for `mult(f) = 2`.
//!
//! Every statement is certified modulo `m^N` only.

use num_traits::{One, Signed, Zero};

use crate::jacobian::{
    self, jacobian_ideal, jacobian_square, jacobian_square_pairs, membership_truncated, membership_truncated_from,
    IdealGens, JacobianError, MembershipWitness,
};
use crate::polyring::{CoordinateMap, Monomial, Multiplicity, PolyError, Polynomial, Rational, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivError {
    #[error("expected multiplicity {expected}, found {found}")]
    Multiplicity { expected: &'static str, found: Multiplicity },
    #[error("f does not vanish at the origin")]
    NonzeroAtOrigin,
    #[error("witness does not certify its target against the Jacobian square")]
    InvalidWitness,
    #[error("witness known to order {have}, need at least {need}")]
    WitnessOrderTooSmall { have: u32, need: u32 },
    #[error("rank of the quadratic part drops from {before} to {after}")]
    RankDrop { before: usize, after: usize },
    #[error("no progress while completing the square in x{var}")]
    NoProgress { var: usize },
    #[error("residual is not in m^{floor} J_f^2 at order {order}")]
    ResidualNotInIdeal { floor: u32, order: u32 },
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Result of splitting off the quadratic part.
#[derive(Clone, Debug)]
pub struct MorsifyResult {
    pub map: CoordinateMap,
    /// `a_1, ..., a_r`, all nonzero.
    pub diag_coeffs: Vec<Rational>,
    /// Series in `x_{r+1}, ..., x_n` of multiplicity at least 3.
    pub residual: TruncatedSeries,
}

impl MorsifyResult {
    pub fn rank(&self) -> usize {
        self.diag_coeffs.len()
    }

    /// `sum a_i x_i^2 + residual`.
    pub fn normal_form(&self) -> TruncatedSeries {
        let n = self.residual.nvars();
        let order = self.residual.order();
        let mut p = self.residual.poly().clone();
        for (i, a) in self.diag_coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i).pow(2), a.clone());
        }
        TruncatedSeries::new(p, order)
    }
}

/// Outcome of [`verify_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub equal: bool,
    /// Lowest degree where `f(map)` and the target differ.
    pub first_difference: Option<u32>,
}

/// Exact check of `f(map) == target mod m^order`.
pub fn verify_map(f: &Polynomial, target: &TruncatedSeries, map: &CoordinateMap, order: u32) -> MapCheck {
    let order = order.min(map.order()).min(target.order());
    let image = f.substitute(&map.images().iter().map(|s| s.poly().clone()).collect::<Vec<_>>(), order);
    let Ok(image) = image else {
        return MapCheck { equal: false, first_difference: Some(0) };
    };
    let diff = (image.poly() - target.poly()).truncate(order);
    MapCheck { equal: diff.is_zero(), first_difference: diff.terms().keys().map(Monomial::degree).min() }
}

/// Linear change of variables bringing the quadratic part of `f` to
/// `sum_{i<r} c_i x_i^2`, with the `n - r` kernel variables moved, in index
/// order, to the last positions and left untouched.
///
/// Pivots: largest diagonal entry in absolute value, lowest index on ties;
/// with an all-zero diagonal, `x_j -> x_j + x_i` on the first nonzero
/// off-diagonal entry.
pub fn diagonalize_quadratic(f: &Polynomial, order: u32) -> (CoordinateMap, Vec<Rational>) {
    let n = f.nvars();
    let mut q = jacobian::quadratic_form_matrix(f);
    // x = s * y
    let mut s: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut diag = Vec::new();

    // q <- t^T q t, s <- s t
    let apply = |q: &mut Vec<Vec<Rational>>, s: &mut Vec<Vec<Rational>>, t: &Vec<Vec<Rational>>| {
        let mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
            (0..n)
                .map(|i| {
                    (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).fold(Rational::zero(), |x, y| x + y)).collect()
                })
                .collect()
        };
        let tt: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| t[j][i].clone()).collect()).collect();
        *q = mul(&mul(&tt, q), t);
        *s = mul(s, t);
    };
    let identity = |n: usize| -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
    };

    loop {
        let mut best: Option<usize> = None;
        for &i in &remaining {
            if q[i][i].is_zero() {
                continue;
            }
            match best {
                Some(b) if q[b][b].abs() >= q[i][i].abs() => {}
                _ => best = Some(i),
            }
        }
        let pivot = match best {
            Some(i) => i,
            None => {
                let pair = remaining
                    .iter()
                    .flat_map(|&i| remaining.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !q[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                let mut t = identity(n);
                t[j][i] = Rational::one();
                apply(&mut q, &mut s, &t);
                i
            }
        };
        let piv = q[pivot][pivot].clone();
        let mut t = identity(n);
        for &j in &remaining {
            if j != pivot && !q[pivot][j].is_zero() {
                t[pivot][j] = -(&q[pivot][j] / &piv);
            }
        }
        apply(&mut q, &mut s, &t);
        remaining.retain(|&j| j != pivot);
        pivots.push(pivot);
        diag.push(piv);
    }

    // new variable k is old variable perm[k]
    let perm: Vec<usize> = pivots.iter().copied().chain(remaining.iter().copied()).collect();
    let mut total = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for (k, &old) in perm.iter().enumerate() {
            total[i][k] = s[i][old].clone();
        }
    }
    (CoordinateMap::linear(&total, order), diag)
}

/// Splits `f` as `x_k^2 a + x_k b + h` with `b, h` free of `x_k`.
fn split_in_var(f: &Polynomial, k: usize) -> (Polynomial, Polynomial, Polynomial) {
    let n = f.nvars();
    let mut a = Polynomial::zero(n);
    let mut b = Polynomial::zero(n);
    let mut h = Polynomial::zero(n);
    for (m, c) in f.terms() {
        let e = m.exponents()[k];
        let mut reduced = m.exponents().to_vec();
        match e {
            0 => h.add_term(m.clone(), c.clone()),
            1 => {
                reduced[k] = 0;
                b.add_term(Monomial::new(reduced), c.clone());
            }
            _ => {
                reduced[k] -= 2;
                a.add_term(Monomial::new(reduced), c.clone());
            }
        }
    }
    (a, b, h)
}

/// Morsification with respect to `x_k`, assuming `f = sum_{i<k} a_i x_i^2 +
/// F(x_k, ..., x_n)` and `F_2 = a_k x_k^2 + (terms free of x_k)`.
/// Returns a map fixing every other variable with
/// `map(f) = sum_{i<=k} a_i x_i^2 + h(x_{k+1}, ..., x_n)`.
fn morsify_var(f: &TruncatedSeries, k: usize, a_k: &Rational) -> Result<CoordinateMap, EquivError> {
    let n = f.nvars();
    let order = f.order();
    let xk = Polynomial::var(n, k);
    let mut total = CoordinateMap::identity(n, order);
    let mut cur = f.clone();
    let mut last_mult = 1u32;
    // substitute x_k -> x_k - b / (2 a_k) until b vanishes mod m^(order-1)
    loop {
        let (_, b, _) = split_in_var(cur.poly(), k);
        let b = b.truncate(order.saturating_sub(1));
        if b.is_zero() {
            break;
        }
        let mult = b.min_degree().expect("nonzero");
        if mult <= last_mult {
            return Err(EquivError::NoProgress { var: k });
        }
        last_mult = mult;
        let shift = b.scale(&(Rational::from_integer(2.into()) * a_k).recip());
        let step = CoordinateMap::identity(n, order).with_image(k, &xk - &shift)?;
        let next = step.apply(cur.poly());
        debug_assert_eq!(next.poly().homogeneous_part(2), cur.poly().homogeneous_part(2));
        cur = next;
        total = total.then(&step);
    }
    // now cur = x_k^2 A + H; find a unit u with u^2 A(x_k u, ...) = a_k
    let (a, _, _) = split_in_var(cur.poly(), k);
    let inner = order.saturating_sub(2).max(1);
    let inv_ak = a_k.recip();
    // u = s(x_k u, ...) with s = (A / a_k)^(-1/2)
    let s = TruncatedSeries::new(a.scale(&inv_ak), inner).sqrt()?.inverse()?;
    let mut u = TruncatedSeries::one(n, inner);
    for _ in 0..=inner {
        let scale_map = CoordinateMap::identity(n, inner).with_image(k, xk.mul_truncated(u.poly(), inner))?;
        let next = scale_map.apply(s.poly());
        if next == u {
            break;
        }
        u = next;
    }
    let step = CoordinateMap::identity(n, order).with_image(k, xk.mul_truncated(u.poly(), order))?;
    Ok(total.then(&step))
}

/// Splits off the quadratic part of `f` (which must have multiplicity 2):
/// returns `phi` with `phi(f) = sum a_i x_i^2 + h(x_{r+1}, ..., x_n)` mod
/// `m^order`, `mult(h) >= 3`.
pub fn morsify(f: &Polynomial, order: u32) -> Result<MorsifyResult, EquivError> {
    if !f.constant_term().is_zero() {
        return Err(EquivError::NonzeroAtOrigin);
    }
    let mult = f.multiplicity();
    if mult != Multiplicity::Finite(2) {
        return Err(EquivError::Multiplicity { expected: "2", found: mult });
    }
    let n = f.nvars();
    let (linear, diag) = diagonalize_quadratic(f, order);
    let mut cur = linear.apply(f);
    let mut total = linear;
    for (k, a_k) in diag.iter().enumerate() {
        let step = morsify_var(&cur, k, a_k)?;
        cur = step.apply(cur.poly());
        total = total.then(&step);
    }
    let r = diag.len();
    let mut residual = cur.poly().clone();
    for (i, a) in diag.iter().enumerate() {
        residual.add_term(Monomial::var(n, i).pow(2), -a.clone());
    }
    debug_assert!(residual.terms().keys().all(|m| m.exponents()[..r].iter().all(|&e| e == 0)));
    debug_assert!(residual.min_degree().is_none_or(|d| d >= 3));
    Ok(MorsifyResult { map: total, diag_coeffs: diag, residual: TruncatedSeries::new(residual, order) })
}

/// Diagnostics of one [`tougeron`] run.
#[derive(Clone, Debug)]
pub struct TougeronResult {
    /// `psi` with `psi(f) = f + g` mod `m^order`.
    pub map: CoordinateMap,
    /// Number of elementary maps `phi_j` composed.
    pub iterations: u32,
    /// Multiplicity of `phi_j o ... o phi_1 (f) - (f + g)` after each step.
    pub residual_multiplicities: Vec<Multiplicity>,
}

/// Upper bound on the number of doubling steps needed for `order`.
pub fn tougeron_iteration_bound(order: u32) -> u32 {
    (32 - (order).leading_zeros()) + 1 // ceil(log2(order + 1)) + 1
}

/// Builds `psi` with `psi(f) == f + g mod m^order`, where `g` is certified
/// by `witness` against [`jacobian_square`]`(f)` and `mult(f) >= 3`.
pub fn tougeron(f: &Polynomial, witness: &MembershipWitness, order: u32) -> Result<TougeronResult, EquivError> {
    let mult = f.multiplicity();
    let d = match mult {
        Multiplicity::Finite(d) if d >= 3 => d,
        _ => return Err(EquivError::Multiplicity { expected: ">= 3", found: mult }),
    };
    if witness.order < order {
        return Err(EquivError::WitnessOrderTooSmall { have: witness.order, need: order });
    }
    let n = f.nvars();
    let jf = jacobian_ideal(f)?;
    let j2 = jacobian_square(f)?;
    if !witness.verify(&j2) {
        return Err(EquivError::InvalidWitness);
    }
    let goal = TruncatedSeries::new(f + &witness.target, order);
    let partials = jf.gens();

    // Step 2 with a = 0: g = sum_i g_i df/dx_i, g_i = sum_j h_ij df/dx_j.
    let mut shifts = vec![Polynomial::zero(n); n];
    for ((a, b), h) in jacobian_square_pairs(n).into_iter().zip(&witness.coefficients) {
        shifts[a] = &shifts[a] + &h.poly().mul_truncated(&partials[b], order);
    }
    let mut total = shift_map(n, &shifts, order)?;
    let mut cur = total.apply(f);
    let mut mults = Vec::new();
    let mut iterations = 1;
    let bound = tougeron_iteration_bound(order);
    let jf_mult = d - 1;
    loop {
        let residual = cur.sub(&goal);
        let rm = residual.multiplicity();
        // residual lies in m^(2^j - 1) J_f^2
        let floor = (1u32 << iterations.min(31)) - 1;
        debug_assert!(rm.lower_bound() >= (floor + 2 * jf_mult).min(order), "residual bound violated");
        if let Some(prev) = mults.last().map(|m: &Multiplicity| m.lower_bound()) {
            debug_assert!(rm.lower_bound() > prev || rm.lower_bound() >= order);
        }
        mults.push(rm);
        if residual.is_zero() {
            break;
        }
        assert!(iterations < bound, "Tougeron iteration exceeded {bound} steps");
        // -residual = sum_{i,k} h_ik df/dx_k dF/dx_i with h_ik in m^floor
        let cur_j = jacobian_ideal(cur.poly())?;
        let mut gens = Vec::with_capacity(n * n);
        for dfi in cur_j.gens() {
            for dk in partials {
                gens.push(dk.mul_truncated(dfi, order));
            }
        }
        let ideal = IdealGens::new(gens)?;
        let neg = -residual.poly();
        let w = membership_truncated_from(&neg, &ideal, order, floor)
            .witness()
            .ok_or(EquivError::ResidualNotInIdeal { floor, order })?;
        let shifts: Vec<Polynomial> = w
            .coefficients
            .chunks(n)
            .map(|row| {
                row.iter()
                    .zip(partials)
                    .fold(Polynomial::zero(n), |acc, (h, dk)| &acc + &h.poly().mul_truncated(dk, order))
            })
            .collect();
        let step = shift_map(n, &shifts, order)?;
        cur = step.apply(cur.poly());
        total = total.then(&step);
        iterations += 1;
    }
    Ok(TougeronResult { map: total, iterations, residual_multiplicities: mults })
}

fn shift_map(n: usize, shifts: &[Polynomial], order: u32) -> Result<CoordinateMap, PolyError> {
    CoordinateMap::new((0..n).map(|i| &Polynomial::var(n, i) + &shifts[i]).collect(), order)
}

/// Output of [`formal_equiv_rank2`].
#[derive(Clone, Debug)]
pub struct Rank2Result {
    /// `psi` with `psi(f + g) = sum c_i x_i^2 + h` mod `m^order`.
    pub map: CoordinateMap,
    pub coeffs: Vec<Rational>,
    /// Morse residual of `f` itself, in `x_{r+1}, ..., x_n`.
    pub h: TruncatedSeries,
    /// `q` in `J_h^2` absorbed by the Tougeron step.
    pub q: TruncatedSeries,
    pub tougeron_iterations: u32,
    pub target: TruncatedSeries,
}

/// Brings `f + g` (with `g` certified in `J_f^2`, `mult(f) = 2`) to
/// `sum c_i x_i^2 + h`, where `h` is the Morse residual of `f`.
///
/// Fails with [`EquivError::RankDrop`] when `rank((f+g)_2) != rank(f_2)`.
pub fn formal_equiv_rank2(f: &Polynomial, witness: &MembershipWitness, order: u32) -> Result<Rank2Result, EquivError> {
    let mult = f.multiplicity();
    if mult != Multiplicity::Finite(2) {
        return Err(EquivError::Multiplicity { expected: "2", found: mult });
    }
    if witness.order < order {
        return Err(EquivError::WitnessOrderTooSmall { have: witness.order, need: order });
    }
    if !witness.verify(&jacobian_square(f)?) {
        return Err(EquivError::InvalidWitness);
    }
    let n = f.nvars();
    let fg = (f + &witness.target).truncate(order);
    let before = jacobian::quadratic_rank(f)?;
    let after = jacobian::quadratic_rank(&fg)?;
    if before != after {
        return Err(EquivError::RankDrop { before, after });
    }
    let r = before;

    let mf = morsify(f, order)?;
    let h = mf.residual.clone();
    let g_moved = mf.map.apply(&fg);
    let mg = morsify(g_moved.poly(), order)?;
    debug_assert_eq!(mg.rank(), r);
    let h_prime = mg.residual.clone();
    let q = h_prime.sub(&h);

    let mut tougeron_iterations = 0;
    let mut total = mf.map.then(&mg.map);
    if !q.is_zero() {
        // work in the residual variables x_{r+1..n} only
        let m = n - r;
        let down: Vec<usize> = (0..n).map(|i| i.saturating_sub(r)).collect();
        let hp = h_prime.poly().rename_vars(m, &down);
        let neg_q = (-q.poly()).rename_vars(m, &down);
        let j2 = jacobian_square(&hp)?;
        let w = membership_truncated(&neg_q, &j2, order)
            .witness()
            .ok_or(EquivError::ResidualNotInIdeal { floor: 0, order })?;
        let t = tougeron(&hp, &w, order)?;
        tougeron_iterations = t.iterations;
        let up: Vec<usize> = (0..m).map(|i| i + r).collect();
        let mut images: Vec<Polynomial> = (0..r).map(|i| Polynomial::var(n, i)).collect();
        images.extend(t.map.images().iter().map(|s| s.poly().rename_vars(n, &up)));
        total = total.then(&CoordinateMap::new(images, order)?);
    }
    let mut target = h.poly().clone();
    for (i, c) in mg.diag_coeffs.iter().enumerate() {
        target.add_term(Monomial::var(n, i).pow(2), c.clone());
    }
    Ok(Rank2Result {
        map: total,
        coeffs: mg.diag_coeffs,
        h,
        q,
        tougeron_iterations,
        target: TruncatedSeries::new(target, order),
    })
}
