//! Sparse multivariate polynomials with exact coefficients.

mod gcd;
mod monomial;
mod parse;
mod rat;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Coefficient, ExactDiv, RationalAlgebra};
use crate::{Error, Result};

pub use gcd::{normalize_projective, poly_gcd, IntegerPoint};
pub use monomial::Monomial;
pub use rat::RatPoly;

/// A polynomial in `a1, a2, ...` with coefficients in `C`.
///
/// Terms live in a map keyed by monomial, so two polynomials are equal iff
/// they have the same terms; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// The variable `a{index+1}`.
    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index, 1), C::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from(BigInt::from(n)))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Largest term under the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<C> {
        self.is_constant().then(|| self.coeff(&Monomial::one()))
    }

    /// Total degree; `None` for the zero polynomial (degree minus infinity).
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Number of variable slots any term uses.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `a{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let coeff = c.clone() * C::from(BigInt::from(e));
            out.add_term(m.with_exponent(var, e - 1), coeff);
        }
        out
    }

    /// `k`-th partial derivative.
    pub fn nth_derivative(&self, var: usize, k: u32) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative(var))
    }

    /// Evaluates at `point`, which must cover every variable in use.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if self.width() > point.len() {
            return Err(Error::Arity {
                needed: self.width(),
                given: point.len(),
            });
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t * num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Replaces `a{var+1}` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Poly<C>) -> Self {
        let mut powers: Vec<Poly<C>> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = m.with_exponent(var, 0);
            out += &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Renames variables: `a{i+1}` becomes `a{map[i]+1}`.
    pub fn remap_vars(&self, map: &[usize]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let width = map.iter().copied().max().map_or(0, |w| w + 1);
            let mut e = vec![0u32; width];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| c.to_rational())
    }

    /// Exact division by leading terms under the lexicographic order.
    pub fn try_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&dm).ok_or(Error::NotDivisible)?;
            let qc = c.exact_div(&dc).ok_or(Error::NotDivisible)?;
            rem -= &divisor.mul_monomial(&qm, &qc);
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// `true` when `divisor` divides `self` exactly.
    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        self.try_div(divisor).is_ok()
    }
}

/// Polynomial over the integers.
pub type IntPoly = Poly<BigInt>;
/// Polynomial over the rationals, used for intermediate arithmetic in `Q[a]`.
pub type QPoly = Poly<BigRational>;

impl QPoly {
    /// Converts to an integer polynomial if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), BigInt::from_rational(c)?);
        }
        Some(out)
    }
}

impl RationalAlgebra for QPoly {
    fn from_rational(q: &BigRational) -> Self {
        QPoly::constant(q.clone())
    }

    fn scale(&self, q: &BigRational) -> Self {
        Poly::scale(self, q)
    }
}

impl<C: Coefficient> ExactDiv for Poly<C> {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.try_div(divisor).ok()
    }
}

impl<C: Coefficient> Zero for Poly<C> {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for Poly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coefficient> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Coefficient> SubAssign<&Poly<C>> for Poly<C> {
    fn sub_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Coefficient> Add<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Sub<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    /// Canonical form: terms in decreasing lexicographic order, e.g.
    /// `3*a1^2*a2 - a2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> serde::Serialize for Poly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// `a{i+1} - a{j+1}`.
pub fn var_difference(i: usize, j: usize) -> IntPoly {
    &IntPoly::var(i) - &IntPoly::var(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplicative_identity() {
        let q = p("3*a1^2*a2 - a2 + 7");
        assert_eq!(&q * &IntPoly::one(), q);
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("a1 + a2") * p("a1 - a2"), p("a1^2 - a2^2"));
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(
            p("a1^2 - a2^2").try_div(&p("a1 - a2")).unwrap(),
            p("a1 + a2")
        );
        let q = p("5*a1^3 - a2*a3 + 2");
        assert_eq!(q.try_div(&q).unwrap(), IntPoly::one());
        assert_eq!(
            p("18*a1 - 18*a2").try_div(&p("a1*a2")),
            Err(Error::NotDivisible)
        );
        assert_eq!(q.try_div(&IntPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_needs_integral_quotient() {
        assert_eq!(p("3*a1").try_div(&p("2*a1")), Err(Error::NotDivisible));
        let q = p("3*a1").to_rational().try_div(&p("2*a1").to_rational());
        assert_eq!(q.unwrap().to_string(), "3/2");
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("a1^3").derivative(0), p("3*a1^2"));
        assert!(p("a1^3").derivative(1).is_zero());
        assert_eq!(p("a1^2*a2 + a2^3").nth_derivative(1, 2), p("6*a2"));
    }

    #[test]
    fn evaluation() {
        let pt = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(p("a1 - a2").eval(&pt(&[2, 1])).unwrap(), BigInt::from(1));
        assert_eq!(IntPoly::zero().eval(&pt(&[3, 4])).unwrap(), BigInt::from(0));
        assert_eq!(
            p("a1^2 + 3*a1*a2").eval(&pt(&[2, 5])).unwrap(),
            BigInt::from(34)
        );
        assert!(matches!(
            p("a3").eval(&pt(&[1, 2])),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn canonical_display() {
        assert_eq!(p("-1 + 3*a2*a1^2").to_string(), "3*a1^2*a2 - 1");
        assert_eq!(p("a2 - a1").to_string(), "-a1 + a2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn substitution_and_remap() {
        let q = p("a1^2 + a1");
        assert_eq!(q.substitute(0, &p("a2 + 1")), p("a2^2 + 3*a2 + 2"));
        assert_eq!(q.remap_vars(&[2]), p("a3^2 + a3"));
    }
}
