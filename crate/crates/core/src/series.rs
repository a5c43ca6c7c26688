//! Truncated formal power series with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{to_f64, Rational};

/// `Σ_{i ≤ N} a_i wⁱ`, known exactly up to the truncation order `N`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    #[serde(with = "crate::rational::serde_rational_vec")]
    coefficients: Vec<Rational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        RationalSeries {
            coefficients: vec![Rational::zero(); order + 1],
        }
    }

    /// `c` as a series of the given order.
    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = c;
        s
    }

    /// The series variable `w`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coefficients[1] = Rational::one();
        }
        s
    }

    /// Takes `coefficients[0..=order]`; panics if the vector is empty.
    pub fn from_coefficients(coefficients: Vec<Rational>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs at least one coefficient");
        RationalSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coefficients[i]
    }

    pub fn coefficient_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.coefficients[i]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn first_nonzero_degree(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients.resize(order + 1, Rational::zero());
        RationalSeries { coefficients }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalSeries {
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `w^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coefficients[i + k] = self.coefficients[i].clone();
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact value of the truncated sum at a rational point.
    pub fn evaluate(&self, w: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * w + c)
    }

    /// Value of the truncated sum at a floating-point point (Horner).
    pub fn evaluate_f64(&self, w: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * w + to_f64(c))
    }

    /// Partial sums `Σ_{i ≤ n} a_i wⁱ` for `n = 0..=order`.
    pub fn partial_sums_f64(&self, w: f64) -> Vec<f64> {
        let mut power = 1.0;
        let mut acc = 0.0;
        self.coefficients
            .iter()
            .map(|c| {
                acc += to_f64(c) * power;
                power *= w;
                acc
            })
            .collect()
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let n = self.order().min(rhs.order());
        RationalSeries {
            coefficients: (0..=n)
                .map(|i| &self.coefficients[i] + &rhs.coefficients[i])
                .collect(),
        }
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        self + &(-rhs)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        RationalSeries {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let n = self.order().min(rhs.order());
        let mut out = RationalSeries::zero(n);
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coefficients[i + j] += a * b;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn series(coeffs: &[i64]) -> RationalSeries {
        RationalSeries::from_coefficients(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn products_truncate_to_the_shorter_order() {
        let a = series(&[1, 1, 1, 1]);
        let b = series(&[1, -1, 0]);
        let p = &a * &b;
        assert_eq!(p, series(&[1, 0, 0]));
    }

    #[test]
    fn shift_and_variable() {
        let w = RationalSeries::variable(4);
        assert_eq!(w.shift(2), series(&[0, 0, 0, 1, 0]));
        assert_eq!(series(&[1, 2, 3]).shift(5), RationalSeries::zero(2));
    }

    #[test]
    fn evaluation_paths_agree() {
        let s = RationalSeries::from_coefficients(vec![ratio(1, 2), int(-1), ratio(3, 4)]);
        assert_eq!(s.evaluate(&ratio(1, 3)), ratio(1, 2) - ratio(1, 3) + ratio(3, 4) * ratio(1, 9));
        let f = s.evaluate_f64(1.0 / 3.0);
        assert!((f - to_f64(&s.evaluate(&ratio(1, 3)))).abs() < 1e-15);
        assert_eq!(*s.partial_sums_f64(2.0).last().unwrap(), s.evaluate_f64(2.0));
    }

    proptest! {
        #[test]
        fn ring_laws_under_truncation(a in proptest::collection::vec(-9i64..9, 1..8),
                                      b in proptest::collection::vec(-9i64..9, 1..8),
                                      c in proptest::collection::vec(-9i64..9, 1..8)) {
            let (a, b, c) = (series(&a), series(&b), series(&c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
