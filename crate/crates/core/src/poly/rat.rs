use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, QPoly};

/// Polynomial in `Q[a1, ..., am]` stored as an integer polynomial over one
/// shared positive denominator, reduced so `gcd(content(numer), denom) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    numer: IntPoly,
    denom: BigInt,
}

impl RatPoly {
    pub fn new(numer: IntPoly, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let (numer, denom) = if denom.is_negative() {
            (-numer, -denom)
        } else {
            (numer, denom)
        };
        if numer.is_zero() {
            return RatPoly {
                numer,
                denom: BigInt::one(),
            };
        }
        let g = numer.content().gcd(&denom);
        if g.is_one() {
            return RatPoly { numer, denom };
        }
        let gc = IntPoly::constant(g.clone());
        RatPoly {
            numer: numer.try_div(&gc).expect("gcd divides"),
            denom: denom / g,
        }
    }

    pub fn from_int(p: IntPoly) -> Self {
        RatPoly {
            numer: p,
            denom: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn to_qpoly(&self) -> QPoly {
        let inv = BigRational::new(BigInt::one(), self.denom.clone());
        self.numer.to_rational().scale(&inv)
    }

    /// The polynomial itself when the denominator is one.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.denom.is_one().then(|| self.numer.clone())
    }
}

impl From<&QPoly> for RatPoly {
    fn from(q: &QPoly) -> Self {
        let denom = q
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let numer = q
            .scale(&BigRational::from_integer(denom.clone()))
            .to_integer()
            .expect("denominator cleared");
        RatPoly::new(numer, denom)
    }
}

impl From<IntPoly> for RatPoly {
    fn from(p: IntPoly) -> Self {
        RatPoly::from_int(p)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_qpoly(), f)
    }
}

impl serde::Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}
