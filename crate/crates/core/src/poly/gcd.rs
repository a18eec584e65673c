//! Content, primitive parts and greatest common divisors in `Z[a1, ..., am]`.
//!
//! The gcd recurses on the smallest variable index present: split off the
//! content with respect to that variable (a gcd in fewer variables), then run
//! a primitive pseudo-remainder sequence on the primitive parts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;

use super::{IntPoly, Monomial};
use crate::{Error, Result};

impl IntPoly {
    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in self.terms() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        let c = if self.leading_coeff().unwrap().is_negative() {
            -c
        } else {
            c
        };
        self.try_div(&IntPoly::constant(c))
            .expect("content divides")
    }

    /// Sign-normalized copy: leading coefficient positive.
    pub fn normalized(&self) -> IntPoly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// `content * primitive_part` split, useful for display as `c*(p)`.
    pub fn content_and_primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), IntPoly::zero());
        }
        let prim = self.primitive_part();
        let c = self.try_div(&prim).unwrap().constant_value().unwrap();
        (c, prim)
    }

    /// Content-factored display: `3*(a1 - a2)`, `a1*a2`, `-2*(a1 + a2)`.
    pub fn factored_string(&self) -> String {
        let (c, prim) = self.content_and_primitive();
        if prim.is_constant() || c.is_one() {
            return self.to_string();
        }
        if c == -BigInt::one() {
            return if prim.num_terms() == 1 {
                format!("-{prim}")
            } else {
                format!("-({prim})")
            };
        }
        if prim.num_terms() == 1 {
            format!("{c}*{prim}")
        } else {
            format!("{c}*({prim})")
        }
    }
}

fn smallest_var(p: &IntPoly, q: &IntPoly) -> Option<usize> {
    p.terms()
        .chain(q.terms())
        .filter_map(|(m, _)| m.exponents().iter().position(|&e| e > 0))
        .min()
}

/// Coefficients of `p` viewed as a univariate polynomial in `a{var+1}`.
fn coeffs_in(p: &IntPoly, var: usize) -> BTreeMap<u32, IntPoly> {
    let mut out: BTreeMap<u32, IntPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponent(var);
        out.entry(e)
            .or_insert_with(IntPoly::zero)
            .add_term(m.with_exponent(var, 0), c.clone());
    }
    out
}

fn degree_in(p: &IntPoly, var: usize) -> u32 {
    p.degree_in(var).unwrap_or(0)
}

fn leading_coeff_in(p: &IntPoly, var: usize) -> IntPoly {
    let d = degree_in(p, var);
    let mut out = IntPoly::zero();
    for (m, c) in p.terms() {
        if m.exponent(var) == d {
            out.add_term(m.with_exponent(var, 0), c.clone());
        }
    }
    out
}

/// Gcd of the coefficients of `p` with respect to `a{var+1}`, normalized.
fn content_in(p: &IntPoly, var: usize) -> IntPoly {
    let mut g = IntPoly::zero();
    for (_, c) in coeffs_in(p, var) {
        g = gcd2(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(p: &IntPoly, var: usize) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let c = content_in(p, var);
    p.try_div(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` in `a{var+1}`, up to a factor that is a
/// power of the leading coefficient of `b`.
fn pseudo_rem(a: &IntPoly, b: &IntPoly, var: usize) -> IntPoly {
    let db = degree_in(b, var);
    let lb = leading_coeff_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, var) >= db {
        let dr = degree_in(&r, var);
        let lr = leading_coeff_in(&r, var);
        let shift = IntPoly::term(Monomial::var(var, dr - db), BigInt::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

fn gcd2(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    let Some(var) = smallest_var(p, q) else {
        let g = p
            .constant_value()
            .unwrap()
            .gcd(&q.constant_value().unwrap());
        return IntPoly::constant(g);
    };
    let cp = content_in(p, var);
    let cq = content_in(q, var);
    let c = gcd2(&cp, &cq);
    let mut a = p.try_div(&cp).expect("content divides");
    let mut b = q.try_div(&cq).expect("content divides");
    if degree_in(&a, var) < degree_in(&b, var) {
        std::mem::swap(&mut a, &mut b);
    }
    let g = loop {
        if b.is_zero() {
            break primitive_in(&a, var);
        }
        if degree_in(&b, var) == 0 {
            break IntPoly::one();
        }
        let r = pseudo_rem(&a, &b, var);
        a = b;
        b = primitive_in(&r, var);
    };
    (&c * &g).normalized()
}

/// Greatest common divisor of a nonempty family, integer content included.
///
/// The result is `gcd(contents) * gcd(primitive parts)` with positive
/// leading coefficient.
pub fn poly_gcd(ps: &[IntPoly]) -> Result<IntPoly> {
    if ps.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    let mut g = IntPoly::zero();
    for p in ps {
        g = gcd2(&g, p);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Projective normal form of a coefficient vector: divided by the gcd of its
/// entries and signed so the first nonzero entry has positive leading coefficient.
pub fn normalize_projective(v: &[IntPoly]) -> Result<Vec<IntPoly>> {
    let g = poly_gcd(v)?;
    let first = v.iter().find(|p| !p.is_zero()).expect("not all zero");
    let g = if first.leading_coeff().unwrap().is_negative() {
        -g
    } else {
        g
    };
    v.iter().map(|p| p.try_div(&g)).collect()
}

/// Point `(a1, ..., am)` of pairwise distinct nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPoint(Vec<BigInt>);

impl IntegerPoint {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::InvalidProblem(format!("a{} is zero", i + 1)));
            }
            if values[..i].contains(v) {
                return Err(Error::InvalidProblem(format!("a{} is repeated", i + 1)));
            }
        }
        Ok(IntegerPoint(values))
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `m` distinct nonzero values in `[-bound, bound]`; needs `2 bound >= m`.
    pub fn random<R: rand::Rng + ?Sized>(m: usize, bound: i64, rng: &mut R) -> Result<Self> {
        if bound < 1 || 2 * bound < m as i64 {
            return Err(Error::InvalidProblem(format!(
                "{m} distinct nonzero values do not fit in [-{bound}, {bound}]"
            )));
        }
        let mut pool: Vec<i64> = (-bound..=bound).filter(|&v| v != 0).collect();
        let (picked, _) = pool.partial_shuffle(rng, m);
        Self::from_i64(picked)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl serde::Serialize for IntegerPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

impl std::fmt::Display for IntegerPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl IntPoly {
    /// Evaluation at an [`IntegerPoint`].
    pub fn eval_at(&self, point: &IntegerPoint) -> Result<BigInt> {
        self.eval(point.values())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn table_gcd_with_content() {
        let g = poly_gcd(&[p("18*(a1-a2)"), p("6*(a1^2-a2^2)"), p("3*a1*a2*(a1-a2)")]).unwrap();
        assert_eq!(g, p("3*(a1-a2)"));
        assert_eq!(g.factored_string(), "3*(a1 - a2)");
    }

    #[test]
    fn single_input_is_normalized() {
        assert_eq!(poly_gcd(&[p("-2*a1 + 4")]).unwrap(), p("2*a1 - 4"));
    }

    #[test]
    fn coprime_pair() {
        assert_eq!(poly_gcd(&[p("a1-a2"), p("a1*a2")]).unwrap(), IntPoly::one());
    }

    #[test]
    fn all_zero_is_an_error() {
        assert_eq!(poly_gcd(&[IntPoly::zero()]), Err(Error::AllZero));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = p("(a1 - a3)^2*(a2 + a3)");
        let a = &f * &p("a1*a2 + 7");
        let b = &f * &p("a3^2 - a1 + 2*a2");
        assert_eq!(poly_gcd(&[a, b]).unwrap(), f.normalized());
    }

    #[test]
    fn content_and_primitive() {
        let q = p("-6*a1^2 + 4*a2");
        assert_eq!(q.content(), BigInt::from(2));
        assert_eq!(q.primitive_part(), p("3*a1^2 - 2*a2"));
        assert_eq!(q.content_and_primitive().0, BigInt::from(-2));
        assert_eq!(q.factored_string(), "-2*(3*a1^2 - 2*a2)");
        assert_eq!(p("5*a1*a2").factored_string(), "5*a1*a2");
    }

    #[test]
    fn integer_points_reject_degenerate_values() {
        assert!(IntegerPoint::from_i64(&[1, 2]).is_ok());
        assert!(IntegerPoint::from_i64(&[1, 0]).is_err());
        assert!(IntegerPoint::from_i64(&[3, 3]).is_err());
    }

    #[test]
    fn random_points() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let pt = IntegerPoint::random(3, 2, &mut rng).unwrap();
            assert!(pt.values().iter().all(|v| v.magnitude() <= &2u32.into()));
        }
        assert!(IntegerPoint::random(3, 1, &mut rng).is_err());
        assert_eq!(
            IntegerPoint::from_i64(&[1, -2]).unwrap().to_string(),
            "(1, -2)"
        );
    }
}
