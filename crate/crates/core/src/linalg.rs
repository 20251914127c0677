//! Exact linear algebra over the rationals.
//!
//! [`SpanSolver`] keeps a row-echelon basis of the span of inserted
//! sparse vectors, together with each basis vector's expression in terms of
//! the inserted ones, so membership questions come with a witness.
//!
//! Elimination order is fixed by insertion order; the pivot of a new vector
//! is its entry of smallest bit size (numerator plus denominator), lowest
//! column on ties. Results are therefore reproducible bit for bit.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::polyring::Rational;

/// Sparse vector: column index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// `dst += c * src`, dropping cancelled entries.
fn axpy(dst: &mut SparseVec, c: &Rational, src: &SparseVec) {
    for (&k, v) in src {
        let e = dst.entry(k).or_insert_with(Rational::zero);
        *e += c * v;
        if e.is_zero() {
            dst.remove(&k);
        }
    }
}

struct BasisRow {
    pivot: usize,
    vec: SparseVec,
    /// Expression of `vec` as a combination of inserted labels.
    combo: SparseVec,
}

#[derive(Default)]
pub struct SpanSolver {
    rows: Vec<BasisRow>,
    track: bool,
}

impl SpanSolver {
    /// `track_combinations` enables witnesses from [`SpanSolver::express`].
    pub fn new(track_combinations: bool) -> Self {
        SpanSolver { rows: Vec::new(), track: track_combinations }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// combination of basis rows (in label space) that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut used = SparseVec::new();
        // rows only carry zeros in the pivots of earlier rows
        for row in &self.rows {
            let Some(c) = v.get(&row.pivot).cloned() else { continue };
            axpy(&mut v, &-c.clone(), &row.vec);
            if self.track {
                axpy(&mut used, &c, &row.combo);
            }
        }
        (v, used)
    }

    /// Adds `v` (tagged `label`) to the spanning set. Returns true if it was
    /// independent of the previous vectors.
    pub fn insert(&mut self, v: SparseVec, label: usize) -> bool {
        let (rem, used) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        let pivot = *rem
            .iter()
            .min_by(|(ca, a), (cb, b)| bit_size(a).cmp(&bit_size(b)).then(ca.cmp(cb)))
            .map(|(c, _)| c)
            .expect("nonzero remainder");
        let inv = rem[&pivot].recip();
        let vec: SparseVec = rem.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        let combo = if self.track {
            // rem = e_label - used
            let mut c = SparseVec::new();
            c.insert(label, Rational::one());
            axpy(&mut c, &-Rational::one(), &used);
            c.into_iter().map(|(k, x)| (k, x * &inv)).collect()
        } else {
            SparseVec::new()
        };
        self.rows.push(BasisRow { pivot, vec, combo });
        true
    }

    /// Coefficients `c` with `target = sum c[label] * inserted[label]`, if
    /// `target` is in the span. Requires combination tracking.
    pub fn express(&self, target: SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express needs combination tracking");
        let (rem, used) = self.reduce(target);
        if rem.is_empty() {
            Some(used)
        } else {
            None
        }
    }

    pub fn contains(&self, target: SparseVec) -> bool {
        self.reduce(target).0.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }
}

/// Rank of a dense matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut s = SpanSolver::new(false);
    for (i, r) in rows.iter().enumerate() {
        let v: SparseVec = r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect();
        s.insert(v, i);
    }
    s.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, v)| (k, q(v))).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(&[vec![q(0), q(1)], vec![q(1), q(0)], vec![q(1), q(1)]]), 2);
        assert_eq!(rank(&[vec![q(0), q(0)]]), 0);
    }

    #[test]
    fn express_gives_witness() {
        let mut s = SpanSolver::new(true);
        let a = sv(&[(0, 1), (1, 1)]);
        let b = sv(&[(1, 2), (2, 3)]);
        let c = sv(&[(0, 1), (1, 3), (2, 3)]); // a + b
        assert!(s.insert(a.clone(), 0));
        assert!(s.insert(b.clone(), 1));
        assert!(!s.insert(c, 2));
        let target = sv(&[(0, 2), (1, -2), (2, -6)]); // 2a - 2b
        let w = s.express(target.clone()).unwrap();
        let mut rebuilt = SparseVec::new();
        axpy(&mut rebuilt, w.get(&0).unwrap_or(&q(0)), &a);
        axpy(&mut rebuilt, w.get(&1).unwrap_or(&q(0)), &b);
        assert_eq!(rebuilt, target);
        assert!(s.express(sv(&[(3, 1)])).is_none());
    }
}
