//! Approximants with equal degrees and free remainder orders.
//!
//! For `1 <= nu_j <= l_j`, `L = sum l_j`, `M = sum nu_j`, the denominator
//! coefficients solve the `M x (L+1)` system `V`, whose row `(j, i)` for
//! `i = 1..nu_j` holds `C(L+i, h) a_j^{L-h}` in column `h`. Every maximal
//! minor of `V` is divisible by
//! `prod a_j^{C(nu_j, 2)} prod_{i<j} (a_i - a_j)^{min(nu_i^2, nu_j^2)}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::binomial_count;
use crate::poly::{normalize_projective, var_difference};
use crate::scalar::{binomial, factorial, falling_factorial};
use crate::series::{certificate_window, order_at_zero, pade_remainder, OrderCertificate};
use crate::{
    poly_gcd, ColumnSelection, Error, IntMatrix, IntPoly, IntegerPoint, Matrix, PolyMatrix, QPoly,
    Result,
};

/// Entry convention for `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `C(L+i, h) a^{L-h}`.
    Binomial,
    /// `(L+i]_h a^{L-h}`: column `h` of the binomial matrix times `h!`.
    Falling,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Binomial => "binomial",
            Convention::Falling => "falling",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binomial" => Ok(Convention::Binomial),
            "falling" | "falling_factorial" | "falling-factorial" => Ok(Convention::Falling),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WildProblem {
    l: Vec<usize>,
    nu: Vec<usize>,
    convention: Convention,
}

impl WildProblem {
    pub fn new(l: Vec<usize>, nu: Vec<usize>, convention: Convention) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::InvalidProblem(
                "need at least one exponential".into(),
            ));
        }
        if l.len() != nu.len() {
            return Err(Error::InvalidProblem(format!(
                "{} degrees but {} orders",
                l.len(),
                nu.len()
            )));
        }
        for (j, (&lj, &nj)) in l.iter().zip(&nu).enumerate() {
            if nj == 0 || nj > lj {
                return Err(Error::InvalidProblem(format!(
                    "need 1 <= nu{0} <= l{0}, got nu{0} = {nj}, l{0} = {lj}",
                    j + 1
                )));
            }
        }
        Ok(WildProblem { l, nu, convention })
    }

    /// The twin case `nu = l`.
    pub fn twin(l: Vec<usize>, convention: Convention) -> Result<Self> {
        Self::new(l.clone(), l, convention)
    }

    pub fn l(&self) -> &[usize] {
        &self.l
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(&self, convention: Convention) -> Self {
        WildProblem {
            convention,
            ..self.clone()
        }
    }

    pub fn m(&self) -> usize {
        self.l.len()
    }

    pub fn big_l(&self) -> usize {
        self.l.iter().sum()
    }

    pub fn big_m(&self) -> usize {
        self.nu.iter().sum()
    }

    pub fn is_twin(&self) -> bool {
        self.l == self.nu
    }

    fn require_twin(&self) -> Result<()> {
        if !self.is_twin() {
            return Err(Error::InvalidProblem("this operation needs nu = l".into()));
        }
        Ok(())
    }

    fn check_point(&self, point: &IntegerPoint) -> Result<()> {
        if point.len() != self.m() {
            return Err(Error::Arity {
                needed: self.m(),
                given: point.len(),
            });
        }
        Ok(())
    }

    /// Integer weight of row `(j, i)`, column `h`.
    fn weight(&self, i: usize, h: usize) -> BigInt {
        let n = (self.big_l() + i) as u64;
        match self.convention {
            Convention::Binomial => binomial(n, h as u64),
            Convention::Falling => falling_factorial(n as i64, h as u64),
        }
    }

    fn rows(&self) -> Vec<(usize, usize)> {
        self.nu
            .iter()
            .enumerate()
            .flat_map(|(j, &nj)| (1..=nj).map(move |i| (j, i)))
            .collect()
    }
}

/// Symbolic `M x (L+1)` matrix over `Z[a1, ..., am]`.
pub fn build_v(p: &WildProblem) -> PolyMatrix {
    let rows = p.rows();
    let big_l = p.big_l();
    Matrix::from_fn(rows.len(), big_l + 1, |r, h| {
        let (j, i) = rows[r];
        IntPoly::var(j)
            .pow((big_l - h) as u32)
            .scale(&p.weight(i, h))
    })
}

/// `V` with `a_j` replaced by the integers of `point`.
pub fn build_v_at(p: &WildProblem, point: &IntegerPoint) -> Result<IntMatrix> {
    p.check_point(point)?;
    let rows = p.rows();
    let big_l = p.big_l();
    Ok(Matrix::from_fn(rows.len(), big_l + 1, |r, h| {
        let (j, i) = rows[r];
        p.weight(i, h) * num_traits::pow(point.values()[j].clone(), big_l - h)
    }))
}

/// `prod a_j^{C(nu_j, 2)} prod_{i<j} (a_i - a_j)^{min(nu_i^2, nu_j^2)}`.
pub fn claimed_factor(p: &WildProblem) -> IntPoly {
    let mut out = IntPoly::one();
    for (j, &nj) in p.nu.iter().enumerate() {
        out = &out * &IntPoly::var(j).pow((nj * (nj - 1) / 2) as u32);
        for (i, &ni) in p.nu[..j].iter().enumerate() {
            out = &out * &var_difference(i, j).pow((ni * ni).min(nj * nj) as u32);
        }
    }
    out
}

/// The claimed factor written as a product of powers, e.g. `a2*(a1 - a2)^4`.
pub fn claimed_factor_string(p: &WildProblem) -> String {
    let power = |base: String, e: usize| if e == 1 { base } else { format!("{base}^{e}") };
    let mut parts = Vec::new();
    for (j, &nj) in p.nu.iter().enumerate() {
        let e = nj * (nj - 1) / 2;
        if e > 0 {
            parts.push(power(format!("a{}", j + 1), e));
        }
    }
    for j in 0..p.nu.len() {
        for i in 0..j {
            let e = (p.nu[i] * p.nu[i]).min(p.nu[j] * p.nu[j]);
            parts.push(power(format!("(a{} - a{})", i + 1, j + 1), e));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `gcd` as integer content, claimed factor and the remaining primitive part.
fn factored_gcd(p: &WildProblem, gcd: &IntPoly, claimed: &IntPoly) -> String {
    let (content, primitive) = gcd.content_and_primitive();
    let Ok(rest) = primitive.try_div(claimed) else {
        return gcd.factored_string();
    };
    let mut parts = Vec::new();
    if !content.is_one() {
        parts.push(content.to_string());
    }
    if !claimed.is_one() {
        parts.push(claimed_factor_string(p));
    }
    if !rest.is_one() {
        parts.push(if rest.num_terms() == 1 {
            rest.to_string()
        } else {
            format!("({rest})")
        });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The claimed factor evaluated at an integer point.
pub fn claimed_factor_at(p: &WildProblem, point: &IntegerPoint) -> Result<BigInt> {
    p.check_point(point)?;
    claimed_factor(p).eval_at(point)
}

/// `T(l, a)` of the twin case.
pub fn common_factor_t(p: &WildProblem) -> Result<IntPoly> {
    p.require_twin()?;
    Ok(claimed_factor(p))
}

/// Maximal minors of `V`. In the twin case they are ordered as
/// `V[0], ..., V[L]` (`V[i]` deletes column `i`); otherwise by column
/// selection in lexicographic order.
pub fn wild_minors(p: &WildProblem) -> Result<Vec<(ColumnSelection, IntPoly)>> {
    let v = build_v(p);
    let mut minors = v.all_maximal_minors()?;
    if p.is_twin() {
        minors.reverse();
    }
    Ok(minors)
}

/// Divides every minor by the claimed factor, then folds the gcd of the
/// cofactors. The claimed factor is a common divisor, so the result is the
/// full gcd.
fn gcd_through_factor(minors: &[IntPoly], factor: &IntPoly) -> Result<IntPoly> {
    let cofactors = minors
        .par_iter()
        .map(|m| {
            m.try_div(factor).map_err(|_| {
                Error::DivisibilityFalsified(format!("{factor} does not divide the minor {m}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(factor * &poly_gcd(&cofactors)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct GcdReport {
    pub schema: u32,
    pub l: Vec<usize>,
    pub nu: Vec<usize>,
    pub convention: Convention,
    pub gcd: IntPoly,
    /// `gcd` as integer content, claimed factor and any remaining factor.
    pub gcd_factored: String,
    /// Deleted-column order in the twin case, column selections otherwise.
    pub columns: Vec<Vec<usize>>,
    pub quotients: Vec<IntPoly>,
    pub claimed_factor: IntPoly,
    pub divisibility_ok: bool,
}

/// Gcd of all maximal minors and the cofactors, with the claimed factor
/// checked to divide the gcd.
pub fn minor_gcd_report(p: &WildProblem) -> Result<GcdReport> {
    let minors = wild_minors(p)?;
    let claimed = claimed_factor(p);
    let values: Vec<IntPoly> = minors.iter().map(|(_, m)| m.clone()).collect();
    let gcd = gcd_through_factor(&values, &claimed)?;
    let quotients = values
        .par_iter()
        .map(|m| m.try_div(&gcd))
        .collect::<Result<Vec<_>>>()?;
    let columns = minors
        .iter()
        .map(|(sel, _)| {
            if p.is_twin() {
                let n = p.big_l() + 1;
                (0..n).filter(|c| !sel.indices().contains(c)).collect()
            } else {
                sel.indices().to_vec()
            }
        })
        .collect();
    Ok(GcdReport {
        schema: 1,
        l: p.l.clone(),
        nu: p.nu.clone(),
        convention: p.convention,
        gcd_factored: factored_gcd(p, &gcd, &claimed),
        gcd,
        columns,
        quotients,
        claimed_factor: claimed,
        divisibility_ok: true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WildSolution {
    pub problem: WildProblem,
    /// `V[0], ..., V[L]` in the binomial convention.
    pub minors: Vec<IntPoly>,
    pub common_factor: IntPoly,
    /// `tau_i = (-1)^i V[i] / T`.
    pub tau: Vec<IntPoly>,
    /// `B0` coefficients `(L!/i!) tau_i`.
    pub denominator: Vec<IntPoly>,
    /// `B0` divided by the gcd of its coefficients, `t^0` coefficient positive.
    pub normalized: Vec<IntPoly>,
    /// `B1, ..., Bm`: degree-`L` truncations of `B0 e^{a_j t}`.
    pub numerators: Vec<Vec<QPoly>>,
    pub certificates: Vec<OrderCertificate>,
}

/// Symbolic twin approximant from Cramer's rule on the binomial system.
pub fn twin_solve(p: &WildProblem) -> Result<WildSolution> {
    p.require_twin()?;
    let p = p.with_convention(Convention::Binomial);
    let minors: Vec<IntPoly> = wild_minors(&p)?.into_iter().map(|(_, m)| m).collect();
    let t = claimed_factor(&p);
    let tau = minors
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let q = m.try_div(&t)?;
            Ok(if i % 2 == 1 { -q } else { q })
        })
        .collect::<Result<Vec<_>>>()?;
    let big_l = p.big_l();
    let denominator: Vec<IntPoly> = tau
        .iter()
        .enumerate()
        .map(|(i, ti)| ti.scale(&(factorial(big_l as u64) / factorial(i as u64))))
        .collect();
    let normalized = normalize_projective(&denominator)?;
    let b0: Vec<QPoly> = denominator.iter().map(IntPoly::to_rational).collect();
    let mut numerators = Vec::with_capacity(p.m());
    let mut certificates = Vec::with_capacity(p.m());
    for (j, &lj) in p.l.iter().enumerate() {
        let claimed = big_l + lj + 1;
        let (num, rem) = pade_remainder(
            &b0,
            &QPoly::var(j),
            big_l,
            certificate_window(claimed, big_l),
        );
        certificates.push(order_at_zero(&rem, claimed)?);
        numerators.push(num);
    }
    Ok(WildSolution {
        problem: p.clone(),
        minors,
        common_factor: t,
        tau,
        denominator,
        normalized,
        numerators,
        certificates,
    })
}

/// The column `(-1)^i (L!/i!) V[i] / gcd` of binomial-convention minors,
/// signed so the `i = 0` entry is positive.
pub fn table1_column(l: &[usize]) -> Result<Vec<IntPoly>> {
    let p = WildProblem::twin(l.to_vec(), Convention::Binomial)?;
    let report = minor_gcd_report(&p)?;
    let big_l = p.big_l() as u64;
    let mut column: Vec<IntPoly> = report
        .quotients
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let w = factorial(big_l) / factorial(i as u64);
            q.scale(&if i % 2 == 1 { -w } else { w })
        })
        .collect();
    if let Some(first) = column.iter().find(|c| !c.is_zero()) {
        if first.leading_coeff().unwrap().is_negative() {
            column = column.into_iter().map(|c| -c).collect();
        }
    }
    Ok(column)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommonFactorCertificate {
    pub claimed_factor: IntPoly,
    pub total_minors: u128,
    pub checked: Vec<Vec<usize>>,
}

/// Checks that the claimed factor divides `trials` randomly chosen maximal
/// minors, or all of them when there are at most 64.
pub fn certify_common_factor(
    p: &WildProblem,
    trials: usize,
    seed: u64,
) -> Result<CommonFactorCertificate> {
    let n = p.big_l() + 1;
    let k = p.big_m();
    let total = binomial_count(n, k);
    let selections: Vec<ColumnSelection> = if total <= 64 {
        ColumnSelection::all(n, k)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials)
            .map(|_| {
                let mut idx = sample(&mut rng, n, k).into_vec();
                idx.sort_unstable();
                ColumnSelection::new(idx, n)
            })
            .collect::<Result<_>>()?
    };
    let v = build_v(p);
    let factor = claimed_factor(p);
    selections.par_iter().try_for_each(|sel| {
        let minor = v.maximal_minor(sel)?;
        if minor.is_divisible_by(&factor) {
            Ok(())
        } else {
            Err(Error::DivisibilityFalsified(format!(
                "{factor} does not divide the minor on columns {:?}",
                sel.indices()
            )))
        }
    })?;
    Ok(CommonFactorCertificate {
        claimed_factor: factor,
        total_minors: total,
        checked: selections.iter().map(|s| s.indices().to_vec()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub rows: usize,
    /// Minor on the last `M` columns.
    pub rightmost_minor_nonzero: bool,
}

/// Rank of `V` over the fraction field, symbolically or at a point.
pub fn rank_check(p: &WildProblem, point: Option<&IntegerPoint>) -> Result<RankReport> {
    let n = p.big_l() + 1;
    let k = p.big_m();
    let right = ColumnSelection::new((n - k..n).collect(), n)?;
    match point {
        None => {
            let v = build_v(p);
            Ok(RankReport {
                rank: v.rank_over_fractions(),
                rows: k,
                rightmost_minor_nonzero: !v.maximal_minor(&right)?.is_zero(),
            })
        }
        Some(pt) => {
            let v = build_v_at(p, pt)?;
            Ok(RankReport {
                rank: v.rank_over_fractions(),
                rows: k,
                rightmost_minor_nonzero: !v.maximal_minor(&right)?.is_zero(),
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationCheck {
    pub point: IntegerPoint,
    pub d: String,
    pub claimed_value: String,
    pub divides: bool,
}

/// Whether the claimed factor evaluated at `point` divides `D(point)`.
pub fn certify_specialization(
    p: &WildProblem,
    point: &IntegerPoint,
) -> Result<SpecializationCheck> {
    let d = build_v_at(p, point)?.minor_gcd()?;
    let c = claimed_factor_at(p, point)?;
    let divides = if c.is_zero() {
        d.is_zero()
    } else {
        (&d % &c).is_zero()
    };
    if !divides {
        return Err(Error::DivisibilityFalsified(format!(
            "{c} does not divide D = {d}"
        )));
    }
    Ok(SpecializationCheck {
        point: point.clone(),
        d: d.to_string(),
        claimed_value: c.to_string(),
        divides,
    })
}

/// `Some((x, y))` when `a` and `b` are proportional, `y a = x b` entrywise.
pub fn projective_ratio(a: &[IntPoly], b: &[IntPoly]) -> Option<(IntPoly, IntPoly)> {
    let h = a.iter().position(|x| !x.is_zero())?;
    let (num, den) = (a[h].clone(), b[h].clone());
    a.iter()
        .zip(b)
        .all(|(x, y)| x * &den == y * &num)
        .then_some((num, den))
}
