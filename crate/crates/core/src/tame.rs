//! Approximants with free numerator degrees and equal remainder orders.
//!
//! For `l0 >= 0` and `l = (l1, ..., lm)` with `L = sum lj`, `L0 = l0 + L`,
//! the denominator `A0(t) = sum_h (L0 - h)! sigma_{L0-h} t^h` makes every
//! `A0(t) e^{aj t}` agree with a polynomial of degree `L0 - lj` up to
//! `O(t^{L0+1})`, where `w^{l0} prod (aj - w)^{lj} = sum sigma_i w^i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::{normalize_projective, var_difference};
use crate::scalar::factorial;
use crate::series::{certificate_window, order_at_zero, pade_remainder, OrderCertificate};
use crate::{
    Error, IntPoly, IntegerPoint, Matrix, PolyMatrix, QPoly, QPolyMatrix, RatPoly, Result,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameProblem {
    l0: usize,
    l: Vec<usize>,
}

impl TameProblem {
    pub fn new(l0: usize, l: Vec<usize>) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::InvalidProblem(
                "need at least one exponential".into(),
            ));
        }
        if l.contains(&0) {
            return Err(Error::InvalidProblem("every lj must be positive".into()));
        }
        Ok(TameProblem { l0, l })
    }

    pub fn l0(&self) -> usize {
        self.l0
    }

    pub fn l(&self) -> &[usize] {
        &self.l
    }

    pub fn m(&self) -> usize {
        self.l.len()
    }

    pub fn big_l(&self) -> usize {
        self.l.iter().sum()
    }

    pub fn big_l0(&self) -> usize {
        self.l0 + self.big_l()
    }

    fn require_positive_l0(&self) -> Result<()> {
        if self.l0 == 0 {
            return Err(Error::InvalidProblem("this formula needs l0 >= 1".into()));
        }
        Ok(())
    }

    /// `(row index, j, k)` for each equation, blocks in order of `j`.
    fn equations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.l
            .iter()
            .enumerate()
            .flat_map(|(j, &lj)| (0..lj).map(move |k| (j, k)))
    }
}

/// `sigma_0, ..., sigma_{L0}` from `w^{l0} prod_j (aj - w)^{lj}`.
pub fn sigma_coefficients(p: &TameProblem) -> Vec<IntPoly> {
    // Coefficients of the product as a polynomial in w.
    let mut coeffs = vec![IntPoly::zero(); p.l0];
    coeffs.push(IntPoly::one());
    for (j, &lj) in p.l.iter().enumerate() {
        let aj = IntPoly::var(j);
        for _ in 0..lj {
            let mut next = vec![IntPoly::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += &(c * &aj);
                next[i + 1] -= c;
            }
            coeffs = next;
        }
    }
    coeffs
}

/// `b_h = (L0 - h)! sigma_{L0-h}` for `h = 0..L`.
pub fn denominator_coefficients(p: &TameProblem) -> Vec<IntPoly> {
    let sigma = sigma_coefficients(p);
    let l0 = p.big_l0();
    (0..=p.big_l())
        .map(|h| sigma[l0 - h].scale(&factorial((l0 - h) as u64)))
        .collect()
}

fn exponent_entry(p: &TameProblem, k: usize, h: usize) -> Option<usize> {
    (p.big_l0() - k).checked_sub(h)
}

/// The `L x (L+1)` system: row `(j, k)`, column `h` holds
/// `aj^{L0-k-h} / (L0-k-h)!`, or zero when the exponent is negative.
pub fn build_u(p: &TameProblem) -> QPolyMatrix {
    let rows: Vec<_> = p.equations().collect();
    Matrix::from_fn(rows.len(), p.big_l() + 1, |r, h| {
        let (j, k) = rows[r];
        match exponent_entry(p, k, h) {
            Some(e) => QPoly::var(j)
                .pow(e as u32)
                .scale(&BigRational::new(BigInt::one(), factorial(e as u64))),
            None => QPoly::zero(),
        }
    })
}

/// Row `(j, k)` of the system multiplied by `(L0 - k)!`, and the product of
/// those multipliers.
fn integral_u(p: &TameProblem) -> (PolyMatrix, BigInt) {
    let rows: Vec<_> = p.equations().collect();
    let l0 = p.big_l0();
    let scale = rows.iter().fold(BigInt::one(), |acc, &(_, k)| {
        acc * factorial((l0 - k) as u64)
    });
    let m = Matrix::from_fn(rows.len(), p.big_l() + 1, |r, h| {
        let (j, k) = rows[r];
        match exponent_entry(p, k, h) {
            Some(e) => IntPoly::var(j)
                .pow(e as u32)
                .scale(&(factorial((l0 - k) as u64) / factorial(e as u64))),
            None => IntPoly::zero(),
        }
    });
    (m, scale)
}

/// `U[0], ..., U[L]`: `U[h]` deletes column `h`.
pub fn tame_minors(p: &TameProblem) -> Result<Vec<RatPoly>> {
    let (m, scale) = integral_u(p);
    (0..=p.big_l())
        .map(|h| Ok(RatPoly::new(m.column_deleted_minor(h)?, scale.clone())))
        .collect()
}

/// `F_m = prod_j [prod_k 1/(L0 - c_{j,k})!] prod_{h<k<=lj} (h - k)` with
/// `c_{j,k} = l1 + ... + l_{j-1} + k`.
pub fn f_m_product(p: &TameProblem) -> Result<BigRational> {
    p.require_positive_l0()?;
    let l0 = p.big_l0();
    let mut out = BigRational::one();
    let mut offset = 0;
    for &lj in &p.l {
        for k in 1..=lj {
            out /= BigRational::from_integer(factorial((l0 - offset - k) as u64));
            for h in 1..k {
                out *= BigRational::from_integer(BigInt::from(h as i64 - k as i64));
            }
        }
        offset += lj;
    }
    Ok(out)
}

/// `prod aj^{l0 lj} prod_{i<j} (ai - aj)^{li lj}`.
pub fn alpha_factor(p: &TameProblem) -> IntPoly {
    let mut out = IntPoly::one();
    for (j, &lj) in p.l.iter().enumerate() {
        out = &out * &IntPoly::var(j).pow((p.l0 * lj) as u32);
        for (i, &li) in p.l[..j].iter().enumerate() {
            out = &out * &var_difference(i, j).pow((li * lj) as u32);
        }
    }
    out
}

/// Predicted `U[h] = (-1)^h (L0-h)! sigma_{L0-h} (-1)^L F_{m+1} alpha_factor`,
/// with `F_{m+1}` taken for `l` extended by a trailing 1.
pub fn predicted_minors(p: &TameProblem) -> Result<Vec<QPoly>> {
    let mut extended = p.l.clone();
    extended.push(1);
    let f = f_m_product(&TameProblem::new(p.l0, extended)?)?;
    let common = alpha_factor(p).to_rational().scale(&f);
    let big_l = p.big_l();
    Ok(denominator_coefficients(p)
        .iter()
        .enumerate()
        .map(|(h, b)| {
            let v = &b.to_rational() * &common;
            if (h + big_l) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect())
}

/// Checks the complete factorization of every minor.
pub fn certify_tame_minors(p: &TameProblem) -> Result<bool> {
    let predicted = predicted_minors(p)?;
    let minors = tame_minors(p)?;
    for (h, (u, q)) in minors.iter().zip(&predicted).enumerate() {
        if u.to_qpoly() != *q {
            return Err(Error::IdentityFalsified(format!(
                "U[{h}] = {u} but the factorization gives {q}"
            )));
        }
    }
    Ok(true)
}

/// `U[0] / alpha_factor`, asserted to be a rational constant.
pub fn leading_minor_constant(p: &TameProblem) -> Result<BigRational> {
    p.require_positive_l0()?;
    let u0 = tame_minors(p)?.swap_remove(0);
    let q = u0.numer().try_div(&alpha_factor(p))?;
    let c = q
        .constant_value()
        .ok_or_else(|| Error::NonConstantQuotient(q.to_string()))?;
    Ok(BigRational::new(c, u0.denom().clone()))
}

#[derive(Clone, Debug, Serialize)]
pub struct TameSolution {
    pub problem: TameProblem,
    /// `sigma_0 .. sigma_{L0}`.
    pub sigma: Vec<IntPoly>,
    /// Coefficients of `A0` in `t`, lowest first.
    pub denominator: Vec<IntPoly>,
    /// `A0` divided by the gcd of its coefficients, `t^0` coefficient positive.
    pub normalized: Vec<IntPoly>,
    /// `A1, ..., Am`, coefficients in `t`.
    pub numerators: Vec<Vec<QPoly>>,
    pub certificates: Vec<OrderCertificate>,
    /// Values substituted for `a1, ..., am`, if any.
    pub point: Option<IntegerPoint>,
}

fn specialize(p: &IntPoly, point: Option<&IntegerPoint>) -> Result<IntPoly> {
    match point {
        Some(pt) => Ok(IntPoly::constant(p.eval_at(pt)?)),
        None => Ok(p.clone()),
    }
}

/// Denominator, numerators and certified remainder orders, symbolically or
/// at an integer point.
pub fn tame_solve(p: &TameProblem, point: Option<&IntegerPoint>) -> Result<TameSolution> {
    if let Some(pt) = point {
        if pt.len() != p.m() {
            return Err(Error::Arity {
                needed: p.m(),
                given: pt.len(),
            });
        }
    }
    let sigma = sigma_coefficients(p)
        .iter()
        .map(|s| specialize(s, point))
        .collect::<Result<Vec<_>>>()?;
    let denominator = denominator_coefficients(p)
        .iter()
        .map(|b| specialize(b, point))
        .collect::<Result<Vec<_>>>()?;
    let normalized = normalize_projective(&denominator)?;
    let b0: Vec<QPoly> = denominator.iter().map(IntPoly::to_rational).collect();
    let claimed = p.big_l0() + 1;
    let n_max = certificate_window(claimed, p.big_l());
    let mut numerators = Vec::with_capacity(p.m());
    let mut certificates = Vec::with_capacity(p.m());
    for (j, &lj) in p.l.iter().enumerate() {
        let alpha = match point {
            Some(pt) => QPoly::constant(BigRational::from_integer(pt.values()[j].clone())),
            None => QPoly::var(j),
        };
        let (num, rem) = pade_remainder(&b0, &alpha, p.big_l0() - lj, n_max);
        certificates.push(order_at_zero(&rem, claimed)?);
        numerators.push(num);
    }
    Ok(TameSolution {
        problem: p.clone(),
        sigma,
        denominator,
        normalized,
        numerators,
        certificates,
        point: point.cloned(),
    })
}

/// Ratio between the Cramer vector `((-1)^h U[h])_h` and the explicit
/// denominator coefficients, checked to be the same for every `h`.
pub fn cramer_ratio(p: &TameProblem) -> Result<QPoly> {
    let minors = tame_minors(p)?;
    let b = denominator_coefficients(p);
    let cramer: Vec<QPoly> = minors
        .iter()
        .enumerate()
        .map(|(h, u)| {
            if h % 2 == 0 {
                u.to_qpoly()
            } else {
                -u.to_qpoly()
            }
        })
        .collect();
    let h0 = b
        .iter()
        .position(|x| !x.is_zero())
        .expect("b_0 or b_L is nonzero");
    let ratio = cramer[h0].try_div(&b[h0].to_rational())?;
    for (h, (c, bh)) in cramer.iter().zip(&b).enumerate() {
        if *c != &ratio * &bh.to_rational() {
            return Err(Error::IdentityFalsified(format!(
                "Cramer entry {h} is not proportional"
            )));
        }
    }
    Ok(ratio)
}
