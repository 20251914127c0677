use std::fmt;

use num_traits::{One, Zero};

use super::{Multiplicity, PolyError, Polynomial, Rational};

/// A power series known modulo `m^order`, stored as its polynomial
/// representative of degree `< order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    poly: Polynomial,
    order: u32,
}

impl TruncatedSeries {
    /// Truncates `poly` to degrees `< order`.
    pub fn new(poly: Polynomial, order: u32) -> Self {
        assert!(order > 0, "truncation order must be positive");
        TruncatedSeries { poly: poly.truncate(order), order }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::new(Polynomial::constant(nvars, Rational::one()), order)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Known part vanishes; the true series lies in `m^order`.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Like [`Polynomial::multiplicity`], but a vanishing representative only
    /// certifies membership in `m^order`.
    pub fn multiplicity(&self) -> Multiplicity {
        match self.poly.min_degree() {
            Some(d) => Multiplicity::Finite(d),
            None => Multiplicity::AtLeast(self.order),
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        TruncatedSeries::new(&self.poly + &other.poly, order)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        TruncatedSeries::new(&self.poly - &other.poly, order)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        TruncatedSeries { poly: self.poly.mul_truncated(&other.poly, order), order }
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries { poly: self.poly.scale(c), order: self.order }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<TruncatedSeries, PolyError> {
        let c0 = self.poly.constant_term();
        if c0.is_zero() {
            return Err(PolyError::NotAUnit);
        }
        // self = c0 (1 - u), inverse = c0^-1 (1 + u + u^2 + ...)
        let inv_c0 = c0.recip();
        let u = TruncatedSeries::new(
            &Polynomial::constant(self.nvars(), Rational::one()) - &self.poly.scale(&inv_c0),
            self.order,
        );
        let mut acc = TruncatedSeries::one(self.nvars(), self.order);
        let mut term = acc.clone();
        for _ in 1..self.order {
            term = term.mul(&u);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.scale(&inv_c0))
    }

    /// The square root with constant term 1 of a series with constant term 1.
    pub fn sqrt(&self) -> Result<TruncatedSeries, PolyError> {
        let nvars = self.nvars();
        if self.poly.constant_term() != Rational::one() {
            return Err(PolyError::SqrtConstantTerm);
        }
        // t = 1 + u with 2u = (s - 1) - u^2; each pass fixes one more degree.
        let s_minus_one = TruncatedSeries::new(&self.poly - &Polynomial::constant(nvars, Rational::one()), self.order);
        let half = Rational::new(1.into(), 2.into());
        let mut u = TruncatedSeries::new(Polynomial::zero(nvars), self.order);
        for _ in 0..self.order {
            let next = s_minus_one.sub(&u.mul(&u)).scale(&half);
            if next == u {
                break;
            }
            u = next;
        }
        Ok(TruncatedSeries::one(nvars, self.order).add(&u))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(m^{})", self.poly, self.order)
    }
}
