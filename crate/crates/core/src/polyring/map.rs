use num_traits::{One, Zero};

use super::{PolyError, Polynomial, Rational, TruncatedSeries};

/// A substitution `x_i -> images[i]` known modulo `m^order`.
///
/// Acts as a ring homomorphism: applying it to `f` gives `f(images)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMap {
    images: Vec<TruncatedSeries>,
    order: u32,
}

impl CoordinateMap {
    pub fn identity(nvars: usize, order: u32) -> Self {
        let images = (0..nvars).map(|i| TruncatedSeries::new(Polynomial::var(nvars, i), order)).collect();
        CoordinateMap { images, order }
    }

    /// Rejects images with a nonzero constant term.
    pub fn new(images: Vec<Polynomial>, order: u32) -> Result<Self, PolyError> {
        let nvars = images.len();
        for (i, img) in images.iter().enumerate() {
            if img.nvars() != nvars {
                return Err(PolyError::ShapeMismatch { expected: nvars, found: img.nvars() });
            }
            if !img.constant_term().is_zero() {
                return Err(PolyError::NonzeroConstantImage { var: i });
            }
        }
        Ok(CoordinateMap { images: images.into_iter().map(|p| TruncatedSeries::new(p, order)).collect(), order })
    }

    /// Linear map `x_i -> sum_j matrix[i][j] x_j`.
    pub fn linear(matrix: &[Vec<Rational>], order: u32) -> Self {
        let n = matrix.len();
        let images = matrix
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(n);
                for (j, c) in row.iter().enumerate() {
                    p = &p + &Polynomial::var(n, j).scale(c);
                }
                p
            })
            .collect();
        CoordinateMap::new(images, order).expect("linear images have no constant term")
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn images(&self) -> &[TruncatedSeries] {
        &self.images
    }

    /// Replaces the image of one variable.
    pub fn with_image(mut self, var: usize, image: Polynomial) -> Result<Self, PolyError> {
        if !image.constant_term().is_zero() {
            return Err(PolyError::NonzeroConstantImage { var });
        }
        self.images[var] = TruncatedSeries::new(image, self.order);
        Ok(self)
    }

    pub fn apply(&self, f: &Polynomial) -> TruncatedSeries {
        let images: Vec<Polynomial> = self.images.iter().map(|s| s.poly().clone()).collect();
        f.substitute(&images, self.order).expect("map images are validated on construction")
    }

    /// The map that applies `self` first and `next` second:
    /// `(self.then(next)).apply(f) == next.apply(self.apply(f))`.
    pub fn then(&self, next: &CoordinateMap) -> CoordinateMap {
        let order = self.order.min(next.order);
        let images = self.images.iter().map(|img| next.apply(img.poly()).into_poly()).collect();
        CoordinateMap::new(images, order).expect("composition of maps fixing the origin")
    }

    /// Matrix of linear coefficients: `[i][j]` is the coefficient of `x_j` in image `i`.
    pub fn linear_part(&self) -> Vec<Vec<Rational>> {
        let n = self.nvars();
        self.images.iter().map(|img| (0..n).map(|j| img.poly().coeff(&super::Monomial::var(n, j))).collect()).collect()
    }

    /// Determinant of the Jacobian matrix at the origin.
    pub fn jacobian_det_at_origin(&self) -> Rational {
        determinant(self.linear_part())
    }

    /// Automorphism criterion: images in `m` and invertible linear part.
    pub fn is_automorphism(&self) -> bool {
        !self.jacobian_det_at_origin().is_zero()
    }
}

/// Exact determinant by Gaussian elimination.
pub(crate) fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::super::parse_poly;
    use super::*;

    #[test]
    fn composition_order() {
        let a = CoordinateMap::new(vec![parse_poly("x1 + x2^2", 2).unwrap(), parse_poly("x2", 2).unwrap()], 6).unwrap();
        let b = CoordinateMap::new(vec![parse_poly("x1", 2).unwrap(), parse_poly("x2 + x1^2", 2).unwrap()], 6).unwrap();
        let f = parse_poly("x1^2 + x1*x2^3", 2).unwrap();
        let lhs = a.then(&b).apply(&f);
        let rhs = b.apply(a.apply(&f).poly());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphism_criterion() {
        assert!(CoordinateMap::identity(3, 5).is_automorphism());
        let m = CoordinateMap::new(vec![parse_poly("x1^2", 1).unwrap()], 5).unwrap();
        assert!(!m.is_automorphism());
        let h =
            CoordinateMap::new(vec![parse_poly("x1 + x2", 2).unwrap(), parse_poly("x1 - x2", 2).unwrap()], 5).unwrap();
        assert_eq!(h.jacobian_det_at_origin(), Rational::from_integer((-2).into()));
        assert!(CoordinateMap::new(vec![parse_poly("1 + x1", 1).unwrap()], 5).is_err());
    }
}
