//! Integer polynomials reduced modulo `M`, for the enumeration kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::polyring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("polynomial has a non-integer coefficient")]
pub struct NonIntegerCoefficients;

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn reduce(c: &BigInt, m: u64) -> u64 {
    c.mod_floor(&BigInt::from(m)).to_u64().expect("reduced below modulus")
}

/// `f mod M` as a list of `(coefficient, exponents)`.
#[derive(Clone, Debug)]
pub(crate) struct ModPoly {
    pub nvars: usize,
    pub modulus: u64,
    pub terms: Vec<(u64, Vec<u32>)>,
}

impl ModPoly {
    pub fn new(f: &Polynomial, modulus: u64) -> Result<Self, NonIntegerCoefficients> {
        if !f.has_integer_coefficients() {
            return Err(NonIntegerCoefficients);
        }
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| (reduce(c.numer(), modulus), m.exponents().to_vec()))
            .filter(|(c, _)| *c != 0)
            .collect();
        Ok(ModPoly { nvars: f.nvars(), modulus, terms })
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let m = self.modulus;
        let mut acc = 0u64;
        for (c, e) in &self.terms {
            let mut v = *c;
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    v = mulmod(v, *xi, m);
                }
            }
            acc = (acc + v) % m;
        }
        acc
    }

    /// Coefficients in the last variable once the others are fixed to
    /// `prefix`: `result[k]` multiplies `x_n^k`.
    pub fn last_var_coeffs(&self, prefix: &[u64], out: &mut Vec<u64>) {
        let m = self.modulus;
        let last = self.nvars - 1;
        out.iter_mut().for_each(|c| *c = 0);
        for (c, e) in &self.terms {
            let mut v = *c;
            for (xi, &k) in prefix.iter().zip(&e[..last]) {
                for _ in 0..k {
                    v = mulmod(v, *xi, m);
                }
            }
            let k = e[last] as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = (out[k] + v) % m;
        }
    }
}

/// Horner evaluation of `sum coeffs[k] x^k mod m`.
#[inline]
pub(crate) fn horner(coeffs: &[u64], x: u64, m: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| (mulmod(acc, x, m) + c) % m)
}

/// Decodes `index` as base-`radix` digits, least significant last.
pub(crate) fn digits(mut index: u64, radix: u64, out: &mut [u64]) {
    for d in out.iter_mut().rev() {
        *d = index % radix;
        index /= radix;
    }
}
