use std::cmp::Ordering;
use std::fmt;

/// Exponent vector over the variables `a1, a2, ...`.
///
/// Trailing zero exponents are never stored, so the arity of a monomial is
/// contextual: `a1` in two variables and `a1` in five variables are the same
/// value. Ordering is lexicographic with `a1 > a2 > ...`, which for trimmed
/// vectors coincides with `Vec`'s own lexicographic comparison.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    /// The single variable `a{index+1}` to the given power.
    pub fn var(index: usize, power: u32) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = power;
        Monomial::new(e)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of variable slots in use (index of the last variable present + 1).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        Monomial(e)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            e.push(self.0[i].checked_sub(other.exponent(i))?);
        }
        Some(Monomial::new(e))
    }

    /// Same monomial with the exponent of `var` replaced.
    pub fn with_exponent(&self, var: usize, power: u32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() <= var {
            e.resize(var + 1, 0);
        }
        e[var] = power;
        Monomial::new(e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "a{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}
