//! Truncated power series in `t` and orders of vanishing of Padé remainders.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::scalar::{factorial, RationalAlgebra};
use crate::{Error, Result};

/// `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T: RationalAlgebra> TruncSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series keeps at least the constant term"
        );
        TruncSeries { coeffs }
    }

    pub fn zero(truncation_order: usize) -> Self {
        TruncSeries {
            coeffs: vec![T::zero(); truncation_order + 1],
        }
    }

    /// Index of the last coefficient kept.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncSeries {
            coeffs: (0..n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    /// Subtracts a polynomial in `t` (coefficients beyond the truncation are ignored).
    pub fn sub_poly(&self, poly: &[T]) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (i, c) in poly.iter().enumerate().take(coeffs.len()) {
            coeffs[i] = coeffs[i].clone() - c.clone();
        }
        TruncSeries { coeffs }
    }

    /// Index of the first nonzero coefficient within the truncation window.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// Coefficients of `B(t) e^{alpha t}` up to `t^{n_max}`:
/// `r_N = sum_{h+n=N} b_h alpha^n / n!`.
pub fn exp_product<T: RationalAlgebra>(b: &[T], alpha: &T, n_max: usize) -> TruncSeries<T> {
    let mut exp_terms: Vec<T> = Vec::with_capacity(n_max + 1);
    let mut power = T::one();
    for n in 0..=n_max {
        let inv = BigRational::new(BigInt::one(), factorial(n as u64));
        exp_terms.push(power.scale(&inv));
        power = power * alpha.clone();
    }
    let coeffs = (0..=n_max)
        .map(|big_n| {
            b.iter()
                .enumerate()
                .take(big_n + 1)
                .filter(|(_, bh)| !bh.is_zero())
                .fold(T::zero(), |acc, (h, bh)| {
                    acc + bh.clone() * exp_terms[big_n - h].clone()
                })
        })
        .collect();
    TruncSeries { coeffs }
}

/// Numerator `B_j` (truncation of `B_0 e^{alpha t}` at `numerator_degree`)
/// and the remainder `B_0 e^{alpha t} - B_j` up to `t^{n_max}`.
pub fn pade_remainder<T: RationalAlgebra>(
    b0: &[T],
    alpha: &T,
    numerator_degree: usize,
    n_max: usize,
) -> (Vec<T>, TruncSeries<T>) {
    let full = exp_product(b0, alpha, n_max.max(numerator_degree));
    let numerator: Vec<T> = full.coeffs[..=numerator_degree].to_vec();
    let mut remainder = full.sub_poly(&numerator);
    remainder.coeffs.truncate(n_max + 1);
    (numerator, remainder)
}

/// Result of checking `ord_{t=0} S >= claimed_min` on a truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCertificate {
    pub claimed_min: usize,
    pub truncation_order: usize,
    /// Exact order when a nonzero coefficient appears in the window;
    /// `None` means the order is at least `truncation_order + 1`.
    pub order: Option<usize>,
}

impl OrderCertificate {
    pub fn describe(&self) -> String {
        match self.order {
            Some(k) => format!("ord = {k} (claimed >= {})", self.claimed_min),
            None => format!(
                "ord >= {} (claimed >= {})",
                self.truncation_order + 1,
                self.claimed_min
            ),
        }
    }
}

/// Verifies that coefficients `0 .. claimed_min - 1` of `s` vanish.
pub fn order_at_zero<T: RationalAlgebra>(
    s: &TruncSeries<T>,
    claimed_min: usize,
) -> Result<OrderCertificate> {
    if claimed_min > s.truncation_order() {
        return Err(Error::InvalidProblem(format!(
            "claimed order {claimed_min} beyond truncation {}",
            s.truncation_order()
        )));
    }
    let order = s.first_nonzero();
    if let Some(k) = order {
        if k < claimed_min {
            return Err(Error::CoefficientNonZero { index: k });
        }
    }
    Ok(OrderCertificate {
        claimed_min,
        truncation_order: s.truncation_order(),
        order,
    })
}

/// Extra coefficients examined beyond a claimed order.
pub fn certificate_window(claimed_min: usize, l: usize) -> usize {
    claimed_min + l.max(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QPoly;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exponential_series() {
        let s = exp_product(&[BigRational::one()], &q(1, 1), 4);
        let expected: Vec<_> = [1, 1, 2, 6, 24].iter().map(|&f| q(1, f)).collect();
        assert_eq!(s.coeffs(), &expected[..]);
    }

    #[test]
    fn symbolic_exponential() {
        let a: QPoly = "a1".parse().unwrap();
        let s = exp_product(&[QPoly::one()], &a, 3);
        assert_eq!(s.coeff(3).to_string(), "1/6*a1^3");
    }

    #[test]
    fn worked_tame_example() {
        // (t - 2) e^t = -2 - t + 0 t^2 + t^3/6 + ...
        let b = [q(-2, 1), q(1, 1)];
        let s = exp_product(&b, &q(1, 1), 3);
        assert_eq!(s.coeffs(), &[q(-2, 1), q(-1, 1), q(0, 1), q(1, 6)]);
        let (num, rem) = pade_remainder(&b, &q(1, 1), 1, 5);
        assert_eq!(num, vec![q(-2, 1), q(-1, 1)]);
        let cert = order_at_zero(&rem, 3).unwrap();
        assert_eq!(cert.order, Some(3));
        assert_eq!(
            order_at_zero(&rem, 4),
            Err(Error::CoefficientNonZero { index: 3 })
        );
    }

    #[test]
    fn zero_series_vanishes_everywhere() {
        let s: TruncSeries<BigRational> = TruncSeries::zero(6);
        let cert = order_at_zero(&s, 6).unwrap();
        assert_eq!(cert.order, None);
        assert!(order_at_zero(&s, 7).is_err());
    }

    #[test]
    fn linear_in_the_polynomial() {
        let a = q(3, 2);
        let b1 = [q(1, 1), q(-2, 1), q(5, 3)];
        let b2 = [q(7, 1), q(0, 1), q(-1, 4)];
        let sum: Vec<_> = b1.iter().zip(&b2).map(|(x, y)| x + y).collect();
        assert_eq!(
            exp_product(&sum, &a, 8),
            exp_product(&b1, &a, 8).add(&exp_product(&b2, &a, 8))
        );
    }
}
