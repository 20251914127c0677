use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{binomial, Monomial, Multiplicity, PolyError, Rational, TruncatedSeries};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored and every monomial has exactly
/// `nvars` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// `x_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(Monomial::var(nvars, var), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(nvars: usize, terms: I) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from `(exponents, numerator, denominator)`.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64, i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, n, d)| (Monomial::new(e.to_vec()), Rational::new(BigInt::from(*n), BigInt::from(*d)))),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest `q` with `self` in `m^q`; infinite for zero.
    pub fn multiplicity(&self) -> Multiplicity {
        match self.terms.keys().map(Monomial::degree).min() {
            Some(d) => Multiplicity::Finite(d),
            None => Multiplicity::Infinite,
        }
    }

    pub(crate) fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        self.filter(|m| m.degree() == d)
    }

    /// Terms of degree `< order`.
    pub fn truncate(&self, order: u32) -> Polynomial {
        self.filter(|m| m.degree() < order)
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The single term, if `self` is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect() }
    }

    /// Product restricted to degrees `< order`.
    pub fn mul_truncated(&self, other: &Polynomial, order: u32) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da >= order {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() < order {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange { var, nvars: self.nvars });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[var] -= 1;
            out.add_term(Monomial::new(ex), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Divided-power operator: `x^b` maps to `prod binom(b_i, a_i) x^(b - a)`,
    /// and to zero when some `b_i < a_i`.
    pub fn divided_power(&self, alpha: &Monomial) -> Result<Polynomial, PolyError> {
        if alpha.nvars() != self.nvars {
            return Err(PolyError::ShapeMismatch { expected: self.nvars, found: alpha.nvars() });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let Some(rest) = m.checked_div(alpha) else { continue };
            let factor: BigInt = m.exponents().iter().zip(alpha.exponents()).map(|(&b, &a)| binomial(b, a)).product();
            out.add_term(rest, c * Rational::from_integer(factor));
        }
        Ok(out)
    }

    /// `self(images)`, i.e. `x_i` replaced by `images[i]`, truncated to
    /// degrees `< order`. Every image must lie in the maximal ideal.
    pub fn substitute(&self, images: &[Polynomial], order: u32) -> Result<TruncatedSeries, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ShapeMismatch { expected: self.nvars, found: images.len() });
        }
        let target_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        for (i, img) in images.iter().enumerate() {
            if img.nvars != target_nvars {
                return Err(PolyError::ShapeMismatch { expected: target_nvars, found: img.nvars });
            }
            if !img.constant_term().is_zero() {
                return Err(PolyError::NonzeroConstantImage { var: i });
            }
        }
        let imgs: Vec<Polynomial> = images.iter().map(|p| p.truncate(order)).collect();
        if self.nvars == 0 {
            return Ok(TruncatedSeries::new(Polynomial::constant(target_nvars, self.constant_term()), order));
        }
        // powers[i][k] = imgs[i]^k mod m^order
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.nvars);
        for (i, img) in imgs.iter().enumerate() {
            let maxe = self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0).min(order);
            let mut row = vec![Polynomial::constant(target_nvars, Rational::one())];
            for k in 1..=maxe {
                let next = times(&row[k as usize - 1], img, order);
                row.push(next);
            }
            powers.push(row);
        }
        let terms: Vec<(&[u32], &Rational)> =
            self.terms.iter().filter(|(m, _)| m.degree() < order).map(|(m, c)| (m.exponents(), c)).collect();
        let out = horner(&terms, 0, order, &imgs, &powers, target_nvars);
        Ok(TruncatedSeries::new(out, order))
    }

    /// Exact composition `self(images)` without truncation; images may have
    /// constant terms.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ShapeMismatch { expected: self.nvars, found: images.len() });
        }
        let target_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target_nvars) {
            return Err(PolyError::ShapeMismatch { expected: target_nvars, found: bad.nvars });
        }
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target_nvars, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    acc = &acc * &img.pow(e);
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Re-embeds into `nvars` variables, sending `x_i` to `x_{map[i]}`.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &ex) in m.exponents().iter().enumerate() {
                e[map[i]] += ex;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }
}

/// `a * b` truncated, with a shortcut for single-term factors.
fn times(a: &Polynomial, b: &Polynomial, order: u32) -> Polynomial {
    match b.as_monomial() {
        Some((m, c)) => {
            let mut out = Polynomial::zero(a.nvars);
            for (ma, ca) in &a.terms {
                if ma.degree() + m.degree() < order {
                    out.terms.insert(ma.mul(m), ca * c);
                }
            }
            out
        }
        None => a.mul_truncated(b, order),
    }
}

fn add_scaled_into(out: &mut Polynomial, p: &Polynomial, c: &Rational, order: u32) {
    for (m, a) in &p.terms {
        if m.degree() < order {
            out.add_term(m.clone(), a * c);
        }
    }
}

/// Nested Horner evaluation of `sum c x^e` at `imgs`, where every term shares
/// its exponents in the variables before `var`.
fn horner(
    terms: &[(&[u32], &Rational)],
    var: usize,
    order: u32,
    imgs: &[Polynomial],
    powers: &[Vec<Polynomial>],
    nvars: usize,
) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    if order == 0 {
        return out;
    }
    if var + 1 == imgs.len() {
        for (e, c) in terms {
            if e[var] < order {
                add_scaled_into(&mut out, &powers[var][e[var] as usize], c, order);
            }
        }
        return out;
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Rational)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(*t);
    }
    let mut prev: Option<u32> = None;
    for (&e, group) in groups.iter().rev() {
        if let Some(p) = prev {
            out = times(&out, &powers[var][(p - e) as usize], order - e);
        }
        let sub = horner(group, var + 1, order - e, imgs, powers, nvars);
        add_scaled_into(&mut out, &sub, &Rational::one(), order - e);
        prev = Some(e);
    }
    if let Some(p) = prev {
        if p > 0 {
            out = times(&out, &powers[var][p as usize], order);
        }
    }
    out
}

fn add_poly(a: &Polynomial, b: &Polynomial, sign: bool) -> Polynomial {
    assert_eq!(a.nvars, b.nvars, "nvars mismatch");
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), if sign { c.clone() } else { -c.clone() });
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add_poly(self, rhs, true)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        add_poly(self, rhs, false)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Prints highest graded-reverse-lex term first, in the same grammar that
/// [`parse_poly`](super::parse_poly) accepts.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}
