//! Confluent Vandermonde-type block matrices built from an arbitrary
//! sequence of univariate polynomials.
//!
//! Block `j` evaluates `p_0, ..., p_{n-1}` and some of their derivatives at
//! the variable `x_j` (written `a{j}` in serialized form). Two layouts:
//!
//! * case A: derivative orders `0, 1, ..., n_j - 1` top to bottom, whose
//!   determinant is divisible by `prod_{i<j} (x_i - x_j)^{n_i n_j}`;
//! * case B: orders `n_max - 1, ..., n_max - n_j`, divisible by
//!   `prod_{i<j} (x_i - x_j)^{min(n_i^2, n_j^2)}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::DetAlgorithm;
use crate::poly::var_difference;
use crate::{Error, IntPoly, Matrix, PolyMatrix, Result};

/// `p_0(x), ..., p_{n-1}(x)`, univariate in the first variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySequence(Vec<IntPoly>);

impl PolySequence {
    pub fn new(polys: Vec<IntPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidProblem("empty polynomial sequence".into()));
        }
        if polys.iter().any(|p| p.width() > 1) {
            return Err(Error::InvalidProblem(
                "sequence polynomials must be univariate".into(),
            ));
        }
        Ok(PolySequence(polys))
    }

    /// `1, x, x^2, ..., x^{n-1}`.
    pub fn monomials(n: usize) -> Self {
        PolySequence((0..n).map(|i| IntPoly::var(0).pow(i as u32)).collect())
    }

    /// `(x]_0, (x]_1, ..., (x]_{n-1}`.
    pub fn falling_factorials(n: usize) -> Self {
        let x = IntPoly::var(0);
        let mut polys = vec![IntPoly::one()];
        for k in 1..n {
            let prev = polys.last().unwrap();
            polys.push(prev * &(&x - &IntPoly::from_int(k as i64 - 1)));
        }
        PolySequence(polys)
    }

    /// Random `p_i` of exact degree `i` with coefficients in `[-bound, bound]`.
    pub fn random_staircase<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Self {
        let bound = bound.max(1);
        let polys = (0..n)
            .map(|i| {
                let mut p = IntPoly::zero();
                for k in 0..=i {
                    let mut c = rng.gen_range(-bound..=bound);
                    if k == i && c == 0 {
                        c = 1;
                    }
                    p = &p + &IntPoly::var(0).pow(k as u32).scale(&BigInt::from(c));
                }
                p
            })
            .collect();
        PolySequence(polys)
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `deg p_i = i` for every `i`.
    pub fn has_staircase_degrees(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, p)| p.degree_in(0) == Some(i as u32) && !p.is_zero())
    }
}

/// Block sizes `n_1, ..., n_m`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec(Vec<usize>);

impl BlockSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidProblem("block sizes must be positive".into()));
        }
        Ok(BlockSpec(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

fn check(seq: &PolySequence, spec: &BlockSpec) -> Result<()> {
    if seq.len() != spec.total() {
        return Err(Error::InvalidProblem(format!(
            "{} polynomials for blocks summing to {}",
            seq.len(),
            spec.total()
        )));
    }
    Ok(())
}

fn build(seq: &PolySequence, spec: &BlockSpec, orders: impl Fn(usize, usize) -> u32) -> PolyMatrix {
    let n = seq.len();
    let mut rows = Vec::with_capacity(n);
    for (j, &nj) in spec.sizes().iter().enumerate() {
        for r in 0..nj {
            let k = orders(j, r);
            rows.push(
                seq.polys()
                    .iter()
                    .map(|p| p.nth_derivative(0, k).remap_vars(&[j]))
                    .collect(),
            );
        }
    }
    Matrix::from_rows(rows).expect("square by construction")
}

/// Case A matrix: block `j` has rows `p_i^{(k)}(x_j)`, `k = 0..n_j-1`.
pub fn build_case_a(seq: &PolySequence, spec: &BlockSpec) -> Result<PolyMatrix> {
    check(seq, spec)?;
    Ok(build(seq, spec, |_, r| r as u32))
}

/// Case B matrix: block `j` has rows `p_i^{(n_max-1)}(x_j), ..., p_i^{(n_max-n_j)}(x_j)`.
pub fn build_case_b(seq: &PolySequence, spec: &BlockSpec) -> Result<PolyMatrix> {
    check(seq, spec)?;
    let n_max = spec.max();
    Ok(build(seq, spec, |_, r| (n_max - 1 - r) as u32))
}

/// `prod_{i<j} (x_i - x_j)^{exponent(n_i, n_j)}`.
pub fn difference_product(sizes: &[usize], exponent: impl Fn(usize, usize) -> u32) -> IntPoly {
    let mut out = IntPoly::one();
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            let e = exponent(sizes[i], sizes[j]);
            if e > 0 {
                out = &out * &var_difference(i, j).pow(e);
            }
        }
    }
    out
}

pub fn case_a_factor(spec: &BlockSpec) -> IntPoly {
    difference_product(spec.sizes(), |a, b| (a * b) as u32)
}

pub fn case_b_factor(spec: &BlockSpec) -> IntPoly {
    difference_product(spec.sizes(), |a, b| (a * a).min(b * b) as u32)
}

/// `det A / prod (x_i - x_j)^{n_i n_j}`; `NotDivisible` would falsify the factorization.
pub fn certify_case_a_factor(seq: &PolySequence, spec: &BlockSpec) -> Result<IntPoly> {
    let det = build_case_a(seq, spec)?.det(DetAlgorithm::FractionFree)?;
    det.try_div(&case_a_factor(spec))
}

/// `det B / prod (x_i - x_j)^{min(n_i^2, n_j^2)}`.
pub fn certify_case_b_factor(seq: &PolySequence, spec: &BlockSpec) -> Result<IntPoly> {
    let det = build_case_b(seq, spec)?.det(DetAlgorithm::FractionFree)?;
    det.try_div(&case_b_factor(spec))
}

/// Closed form for unit blocks and `deg p_i = i`:
/// `lc(p_0) ... lc(p_{n-1}) prod_{i<j} (x_j - x_i)` over `n` points.
pub fn kratt_closed_form(seq: &PolySequence) -> Result<IntPoly> {
    if !seq.has_staircase_degrees() {
        return Err(Error::InvalidProblem(
            "closed form needs deg p_i = i".into(),
        ));
    }
    let n = seq.len();
    let lead = seq.polys().iter().fold(BigInt::one(), |acc, p| {
        let d = p.degree_in(0).unwrap();
        let lc = p
            .terms()
            .filter(|(m, _)| m.exponent(0) == d)
            .map(|(_, c)| c.clone())
            .next()
            .unwrap();
        acc * lc
    });
    let mut out = IntPoly::constant(lead);
    for i in 0..n {
        for j in i + 1..n {
            out = &out * &var_difference(j, i);
        }
    }
    Ok(out)
}

/// The constant `F` in `det A = F prod (x_i - x_j)^{n_i n_j}` when `deg p_i = i`.
pub fn constant_f(seq: &PolySequence, spec: &BlockSpec) -> Result<BigInt> {
    if !seq.has_staircase_degrees() {
        return Err(Error::InvalidProblem("constant F needs deg p_i = i".into()));
    }
    let q = certify_case_a_factor(seq, spec)?;
    q.constant_value()
        .filter(|c| !c.is_zero() || q.is_zero())
        .ok_or_else(|| Error::NonConstantQuotient(q.to_string()))
}
