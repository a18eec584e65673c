//! Small integer kernel vectors of underdetermined integer systems and the
//! bounds that guarantee them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::{ceil_root, factorial, floor_root};
use crate::series::{certificate_window, order_at_zero, pade_remainder, OrderCertificate};
use crate::wild::{build_v_at, claimed_factor_at, Convention, WildProblem};
use crate::{Error, IntMatrix, IntegerPoint, Result};

/// Candidate evaluations allowed in one kernel search.
pub const CANDIDATE_BUDGET: u64 = 10_000_000;

/// Significant digits of rounded bounds.
pub const BOUND_DIGITS: usize = 12;

fn require_wide(v: &IntMatrix) -> Result<()> {
    if v.rows() >= v.cols() {
        return Err(Error::InvalidProblem(format!(
            "{} equations in {} unknowns",
            v.rows(),
            v.cols()
        )));
    }
    Ok(())
}

/// `floor((prod_m |v_m|_1)^{1/(N-M)})`.
pub fn mahler_bound(v: &IntMatrix) -> Result<BigInt> {
    require_wide(v)?;
    let mut product = BigInt::one();
    for i in 0..v.rows() {
        let norm: BigInt = v.row(i).iter().map(BigInt::abs).sum();
        if norm.is_zero() {
            return Err(Error::InvalidProblem(format!("row {} is zero", i + 1)));
        }
        product *= norm;
    }
    Ok(floor_root(&product, (v.cols() - v.rows()) as u32))
}

/// A positive rational `radicand^{1/index}` with a rounded-up decimal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootBound {
    pub radicand: String,
    pub index: u32,
    /// Largest integer not exceeding the bound.
    pub floor: String,
    /// Decimal upper bound with `BOUND_DIGITS` significant digits.
    pub decimal: String,
}

impl RootBound {
    pub fn new(radicand: &BigRational, index: u32) -> Self {
        RootBound {
            radicand: radicand.to_string(),
            index,
            floor: floor_root(&radicand.to_integer(), index).to_string(),
            decimal: root_upper_decimal(radicand, index, BOUND_DIGITS),
        }
    }

    pub fn floor_value(&self) -> BigInt {
        self.floor.parse().expect("decimal integer")
    }
}

/// Smallest decimal with `digits` significant digits that is `>= q^{1/k}`,
/// trailing zeros removed.
pub fn root_upper_decimal(q: &BigRational, k: u32, digits: usize) -> String {
    assert!(!q.is_negative(), "root of a negative number");
    if q.is_zero() {
        return "0".into();
    }
    let int_digits = floor_root(&q.to_integer(), k).to_string().len() as i64;
    // Scale so the root has exactly `digits` digits before the point.
    let shift = digits as i64
        - if q >= &BigRational::one() {
            int_digits
        } else {
            0
        };
    let ten = BigInt::from(10);
    let (num, den) = if shift >= 0 {
        (
            q.numer() * num_traits::pow(ten.clone(), shift as usize * k as usize),
            q.denom().clone(),
        )
    } else {
        (
            q.numer().clone(),
            q.denom() * num_traits::pow(ten.clone(), (-shift) as usize * k as usize),
        )
    };
    let scaled = ceil_root(&Integer::div_ceil(&num, &den), k);
    place_decimal_point(&scaled, shift)
}

fn place_decimal_point(n: &BigInt, shift: i64) -> String {
    if shift <= 0 {
        return format!("{n}{}", "0".repeat((-shift) as usize));
    }
    let s = format!("{:0>width$}", n.to_string(), width = shift as usize + 1);
    let (int, frac) = s.split_at(s.len() - shift as usize);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

/// `f = max(|a_j| + 1)` and `g = max(1 + 1/|a_j|)`.
pub fn f_and_g(point: &IntegerPoint) -> (BigInt, BigRational) {
    let f = point
        .values()
        .iter()
        .map(|a| a.abs() + 1)
        .max()
        .expect("nonempty point");
    let smallest = point
        .values()
        .iter()
        .map(BigInt::abs)
        .min()
        .expect("nonempty point");
    let g = BigRational::one() + BigRational::new(BigInt::one(), smallest);
    (f, g)
}

/// `(f^{ML} g^{M^2/2})^{1/(L+1-M)}`, as the `2(L+1-M)`-th root of
/// `f^{2ML} g^{M^2}`.
pub fn fg_bound(p: &WildProblem, point: &IntegerPoint) -> Result<RootBound> {
    let (big_l, big_m) = (p.big_l(), p.big_m());
    if big_m > big_l {
        return Err(Error::InvalidProblem("the bound needs M < L + 1".into()));
    }
    if point.len() != p.m() {
        return Err(Error::Arity {
            needed: p.m(),
            given: point.len(),
        });
    }
    let (f, g) = f_and_g(point);
    let radicand = BigRational::from_integer(num_traits::pow(f, 2 * big_m * big_l))
        * num_traits::pow(g, big_m * big_m);
    Ok(RootBound::new(&radicand, 2 * (big_l + 1 - big_m) as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BvBound {
    pub gram_det: String,
    pub d: String,
    /// `sqrt(det(V V^T)) / D`.
    pub product_bound: RootBound,
    /// `(sqrt(det(V V^T)) / D)^{1/(N-M)}`, a bound on the sup norm.
    pub sup_bound: RootBound,
}

/// Bombieri-Vaaler bound; the matrix must have full row rank over `Q`.
pub fn bombieri_vaaler_bound(v: &IntMatrix) -> Result<BvBound> {
    require_wide(v)?;
    if v.rank_over_fractions() != v.rows() {
        return Err(Error::RankDeficient);
    }
    let gram = v.gram_det()?;
    let d = v.minor_gcd()?;
    let radicand = BigRational::new(gram.clone(), &d * &d);
    let free = (v.cols() - v.rows()) as u32;
    Ok(BvBound {
        gram_det: gram.to_string(),
        d: d.to_string(),
        product_bound: RootBound::new(&radicand, 2),
        sup_bound: RootBound::new(&radicand, 2 * free),
    })
}

/// Reduced row echelon data: pivot columns, free columns, and integer
/// numerators with a common denominator such that
/// `den * x_pivot[r] = -sum_f num[r][f] * x_free[f]`.
struct Echelon {
    pivots: Vec<usize>,
    free: Vec<usize>,
    num: Vec<Vec<BigInt>>,
    den: BigInt,
}

fn echelon(v: &IntMatrix) -> Echelon {
    let (rows, cols) = (v.rows(), v.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            v.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let den = (0..pivots.len())
        .flat_map(|i| free.iter().map(move |&f| (i, f)))
        .fold(BigInt::one(), |acc, (i, f)| acc.lcm(a[i][f].denom()));
    let num = (0..pivots.len())
        .map(|i| {
            free.iter()
                .map(|&f| (&a[i][f] * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    Echelon {
        pivots,
        free,
        num,
        den,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVector {
    pub vector: Vec<BigInt>,
    pub norm: BigInt,
    /// Candidates examined.
    pub candidates: u64,
}

/// Integer solutions with sup norm at most `s`; the last free coordinate is
/// solved as an interval instead of enumerated.
fn solutions_within(e: &Echelon, s: i64, budget: u64) -> (Vec<Vec<BigInt>>, u64) {
    let k = e.free.len();
    let cols = e.pivots.len() + k;
    let bound = &e.den * s;
    let prefixes: Vec<Vec<i64>> = (0..k - 1).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|p| {
                (-s..=s).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect()
    });
    if prefixes.len() as u64 > budget {
        return (vec![], budget + 1);
    }
    let results: Vec<(Vec<Vec<BigInt>>, u64)> = prefixes
        .par_iter()
        .map(|prefix| {
            // den * x_p = c_p - num[p][k-1] * t for the last free value t.
            let c: Vec<BigInt> = e
                .num
                .iter()
                .map(|row| {
                    -row[..k - 1]
                        .iter()
                        .zip(prefix)
                        .map(|(n, &f)| n * f)
                        .sum::<BigInt>()
                })
                .collect();
            let (mut lo, mut hi) = (BigInt::from(-s), BigInt::from(s));
            for (cp, row) in c.iter().zip(&e.num) {
                let n = &row[k - 1];
                if n.is_zero() {
                    if cp.abs() > bound {
                        return (vec![], 1);
                    }
                    continue;
                }
                // |cp - n t| <= bound.
                let (a, b) = (cp - &bound, cp + &bound);
                let (l, h) = if n.is_positive() {
                    (Integer::div_ceil(&a, n), Integer::div_floor(&b, n))
                } else {
                    (Integer::div_ceil(&b, n), Integer::div_floor(&a, n))
                };
                lo = lo.max(l);
                hi = hi.min(h);
            }
            let Some((residue, modulus)) = solve_congruences(&c, &e.num, k - 1, &e.den) else {
                return (vec![], 1);
            };
            let mut found = Vec::new();
            let mut count = 1u64;
            let mut t = &lo + (&residue - &lo).mod_floor(&modulus);
            while t <= hi {
                count += 1;
                let mut x = vec![BigInt::zero(); cols];
                let mut ok = true;
                for (r, (cp, row)) in c.iter().zip(&e.num).enumerate() {
                    let (q, rem) = (cp - &row[k - 1] * &t).div_rem(&e.den);
                    if !rem.is_zero() {
                        ok = false;
                        break;
                    }
                    x[e.pivots[r]] = q;
                }
                if ok {
                    for (&fc, &fv) in e.free[..k - 1].iter().zip(prefix) {
                        x[fc] = BigInt::from(fv);
                    }
                    x[e.free[k - 1]] = t.clone();
                    if x.iter().any(|v| !v.is_zero()) {
                        found.push(x);
                    }
                }
                t += &modulus;
            }
            (found, count)
        })
        .collect();
    let count = results.iter().map(|(_, c)| c).sum();
    (results.into_iter().flat_map(|(f, _)| f).collect(), count)
}

/// All `t` with `den | c_p - num[p][col] t` for every `p`, as `t = residue
/// (mod modulus)`; `None` when there is no such `t`.
fn solve_congruences(
    c: &[BigInt],
    num: &[Vec<BigInt>],
    col: usize,
    den: &BigInt,
) -> Option<(BigInt, BigInt)> {
    let (mut r, mut q) = (BigInt::zero(), BigInt::one());
    for (cp, row) in c.iter().zip(num) {
        // t = r + q u, so (n q) u = cp - n r (mod den).
        let n = &row[col];
        let a = (n * &q).mod_floor(den);
        let b = (cp - n * &r).mod_floor(den);
        let ext = a.extended_gcd(den);
        if !(&b % &ext.gcd).is_zero() {
            return None;
        }
        let step = den / &ext.gcd;
        let u = ((&b / &ext.gcd) * ext.x).mod_floor(&step);
        r += &q * u;
        q *= step;
    }
    Some((r, q))
}

fn sup_norm(x: &[BigInt]) -> BigInt {
    x.iter().map(BigInt::abs).max().unwrap_or_default()
}

/// Nonzero `x` with `V x = 0` and the least sup norm at most
/// `min(norm_budget, mahler_bound)`; among minimal vectors the
/// lexicographically least is returned.
///
/// Boxes of radius `1, 2, 4, ...` (capped at the limit) are searched in
/// full. Every minimal vector lies in the first box holding any solution,
/// so its minimum is the global one.
pub fn find_small_kernel(v: &IntMatrix, norm_budget: Option<u64>) -> Result<KernelVector> {
    let mahler = mahler_bound(v)?;
    let mahler_small = mahler.to_u64().unwrap_or(u64::MAX);
    let limit = norm_budget.map_or(mahler_small, |b| b.min(mahler_small));
    let e = echelon(v);
    let mut candidates = 0u64;
    let mut s = 1u64.min(limit);
    while s >= 1 {
        let (found, count) = solutions_within(&e, s as i64, CANDIDATE_BUDGET - candidates);
        candidates += count;
        if candidates > CANDIDATE_BUDGET {
            return Err(Error::BudgetExceeded(s));
        }
        if let Some(best) = found
            .into_iter()
            .min_by(|a, b| sup_norm(a).cmp(&sup_norm(b)).then(a.cmp(b)))
        {
            return Ok(KernelVector {
                norm: sup_norm(&best),
                vector: best,
                candidates,
            });
        }
        if s == limit {
            break;
        }
        s = s.saturating_mul(2).min(limit);
    }
    if limit < mahler_small {
        Err(Error::BudgetExceeded(limit))
    } else {
        Err(Error::IdentityFalsified(format!(
            "no kernel vector within the Mahler bound {mahler}"
        )))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SiegelReport {
    pub schema: u32,
    pub problem: WildProblem,
    pub point: IntegerPoint,
    pub mahler_bound: String,
    pub fg_bound: String,
    pub fg: RootBound,
    pub bv_bound: Option<String>,
    pub bv: Option<BvBound>,
    pub f: String,
    pub g: String,
    #[serde(rename = "D")]
    pub d: String,
    /// Claimed factor evaluated at the point; it divides `D`.
    pub claimed_factor_value: String,
    pub solution: Vec<String>,
    pub norm: String,
    pub rank_ok: bool,
    /// `B0 = sum c_h (L!/h!) t^h`.
    pub denominator: Vec<String>,
    /// `B1, ..., Bm`.
    pub numerators: Vec<Vec<String>>,
    pub certificates: Vec<OrderCertificate>,
}

/// Small-coefficient approximant at an integer point for `M < L`.
pub fn siegel_pade_solve(p: &WildProblem, point: &IntegerPoint) -> Result<SiegelReport> {
    let (big_l, big_m) = (p.big_l(), p.big_m());
    if big_m >= big_l {
        return Err(Error::InvalidProblem(
            "M = L has a unique solution; use the twin solver".into(),
        ));
    }
    let p = p.with_convention(Convention::Binomial);
    let v = build_v_at(&p, point)?;
    let mahler = mahler_bound(&v)?;
    let fg = fg_bound(&p, point)?;
    let rank_ok = v.rank_over_fractions() == v.rows();
    let bv = if rank_ok {
        Some(bombieri_vaaler_bound(&v)?)
    } else {
        None
    };
    let kernel = find_small_kernel(&v, None)?;
    let d = v.minor_gcd()?;
    let claimed = claimed_factor_at(&p, point)?;
    if !claimed.is_zero() && !(&d % &claimed).is_zero() {
        return Err(Error::DivisibilityFalsified(format!(
            "{claimed} does not divide D = {d}"
        )));
    }
    if kernel.norm > fg.floor_value() {
        return Err(Error::IdentityFalsified(format!(
            "minimal solution norm {} exceeds the bound {}",
            kernel.norm, fg.decimal
        )));
    }
    let lf = factorial(big_l as u64);
    let b0: Vec<BigRational> = kernel
        .vector
        .iter()
        .enumerate()
        .map(|(h, c)| BigRational::from_integer(c * &lf / factorial(h as u64)))
        .collect();
    let mut numerators = Vec::with_capacity(p.m());
    let mut certificates = Vec::with_capacity(p.m());
    for (j, &nj) in p.nu().iter().enumerate() {
        let alpha = BigRational::from_integer(point.values()[j].clone());
        let claimed_order = big_l + nj + 1;
        let (num, rem) =
            pade_remainder(&b0, &alpha, big_l, certificate_window(claimed_order, big_l));
        certificates.push(order_at_zero(&rem, claimed_order)?);
        numerators.push(num.iter().map(ToString::to_string).collect());
    }
    let (f, g) = f_and_g(point);
    Ok(SiegelReport {
        schema: 1,
        problem: p.clone(),
        point: point.clone(),
        mahler_bound: mahler.to_string(),
        fg_bound: fg.decimal.clone(),
        fg,
        bv_bound: bv.as_ref().map(|b| b.product_bound.decimal.clone()),
        bv,
        f: f.to_string(),
        g: g.to_string(),
        d: d.to_string(),
        claimed_factor_value: claimed.to_string(),
        solution: kernel.vector.iter().map(ToString::to_string).collect(),
        norm: kernel.norm.to_string(),
        rank_ok,
        denominator: b0.iter().map(ToString::to_string).collect(),
        numerators,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn mahler_examples() {
        assert_eq!(mahler_bound(&im(&[&[1, 1]])).unwrap(), BigInt::from(2));
        assert_eq!(mahler_bound(&im(&[&[1, 2, 3]])).unwrap(), BigInt::from(2));
        assert!(mahler_bound(&im(&[&[0, 0, 0]])).is_err());
        assert!(mahler_bound(&im(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn decimal_rounding() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(root_upper_decimal(&q(2916, 1), 2, 12), "54");
        assert_eq!(root_upper_decimal(&q(14, 1), 2, 12), "3.74165738678");
        assert_eq!(root_upper_decimal(&q(2, 1), 2, 3), "1.42");
        assert_eq!(root_upper_decimal(&q(1, 4), 2, 12), "0.5");
        assert_eq!(root_upper_decimal(&q(1, 3), 1, 4), "0.3334");
        assert_eq!(
            root_upper_decimal(&q(10i64.pow(15), 1), 1, 12),
            "1000000000000000"
        );
        assert_eq!(
            root_upper_decimal(&q(10i64.pow(15) + 1, 1), 1, 12),
            "1000000000010000"
        );
    }

    #[test]
    fn fg_examples() {
        let pt = IntegerPoint::from_i64(&[1, 2]).unwrap();
        let p = WildProblem::new(vec![1, 2], vec![1, 1], Convention::Binomial).unwrap();
        let b = fg_bound(&p, &pt).unwrap();
        assert_eq!(b.decimal, "54");
        assert_eq!(b.floor, "54");
        assert_eq!(b.index, 4);
        let twin = WildProblem::twin(vec![1, 1], Convention::Binomial).unwrap();
        assert!(fg_bound(&twin, &pt).is_ok());
        let square = WildProblem::twin(vec![1], Convention::Binomial).unwrap();
        assert!(fg_bound(&square, &IntegerPoint::from_i64(&[1]).unwrap()).is_ok());
        let (f, g) = f_and_g(&IntegerPoint::from_i64(&[1, -1]).unwrap());
        assert_eq!(f, BigInt::from(2));
        assert_eq!(g, BigRational::from_integer(2.into()));
    }

    #[test]
    fn bv_examples() {
        let b = bombieri_vaaler_bound(&im(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!((b.gram_det.as_str(), b.d.as_str()), ("1", "1"));
        assert_eq!(b.product_bound.decimal, "1");
        let b = bombieri_vaaler_bound(&im(&[&[2, 4, 6]])).unwrap();
        assert_eq!((b.gram_det.as_str(), b.d.as_str()), ("56", "2"));
        assert_eq!(b.product_bound.decimal, "3.74165738678");
        assert_eq!(
            bombieri_vaaler_bound(&im(&[&[1, 2, 3], &[2, 4, 6]])),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn kernel_examples() {
        let k = find_small_kernel(&im(&[&[1, 1]]), None).unwrap();
        assert_eq!(k.vector, ints(&[-1, 1]));
        assert_eq!(k.norm, BigInt::one());
        let k = find_small_kernel(&im(&[&[1, 2, 3]]), None).unwrap();
        assert_eq!(k.norm, BigInt::one());
        assert_eq!(k.vector, ints(&[-1, -1, 1]));
        let k = find_small_kernel(&im(&[&[3, 5, 0], &[0, 0, 1]]), None).unwrap();
        assert_eq!(k.vector, ints(&[-5, 3, 0]));
    }

    #[test]
    fn kernel_budget() {
        let v = im(&[&[3, 5, 0], &[0, 0, 1]]);
        assert_eq!(
            find_small_kernel(&v, Some(2)),
            Err(Error::BudgetExceeded(2))
        );
    }

    #[test]
    fn worked_instance() {
        let p = WildProblem::new(vec![1, 2], vec![1, 1], Convention::Binomial).unwrap();
        let pt = IntegerPoint::from_i64(&[1, 2]).unwrap();
        let r = siegel_pade_solve(&p, &pt).unwrap();
        assert_eq!(r.fg_bound, "54");
        assert!(r.rank_ok);
        let norm: BigInt = r.norm.parse().unwrap();
        assert!(norm <= BigInt::from(54));
        assert!(norm <= r.mahler_bound.parse().unwrap());
        for (c, &nj) in r.certificates.iter().zip(p.nu()) {
            assert!(c.order.is_none_or(|k| k > 3 + nj));
        }
        let twin = WildProblem::twin(vec![1, 1], Convention::Binomial).unwrap();
        assert!(siegel_pade_solve(&twin, &pt).is_err());
    }

    #[test]
    fn second_worked_instance() {
        let p = WildProblem::new(vec![2, 2], vec![1, 1], Convention::Binomial).unwrap();
        let pt = IntegerPoint::from_i64(&[1, -1]).unwrap();
        let r = siegel_pade_solve(&p, &pt).unwrap();
        assert_eq!((r.f.as_str(), r.g.as_str()), ("2", "2"));
        assert_eq!(r.certificates.len(), 2);
    }
}
