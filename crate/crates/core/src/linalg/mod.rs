//! Exact determinants, minors and ranks.

mod matrix;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::scalar::{ExactDiv, Ring};
use crate::{Error, Result};

pub use matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetAlgorithm {
    /// Laplace expansion along the first row. Exponential; kept as an oracle.
    Cofactor,
    /// Bareiss elimination with exact divisions.
    FractionFree,
}

/// Strictly increasing column indices `e1 < e2 < ... < eM`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSelection(Vec<usize>);

impl ColumnSelection {
    pub fn new(indices: Vec<usize>, cols: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Dimension(
                "selection is not strictly increasing".into(),
            ));
        }
        if indices.last().is_some_and(|&e| e >= cols) {
            return Err(Error::Dimension("selection out of range".into()));
        }
        Ok(ColumnSelection(indices))
    }

    /// All columns except `removed`.
    pub fn without(removed: usize, cols: usize) -> Result<Self> {
        Self::new((0..cols).filter(|&c| c != removed).collect(), cols)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every `k`-subset of `0..n` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<ColumnSelection> {
        combinations(n, k)
            .into_iter()
            .map(ColumnSelection)
            .collect()
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of binomial combinations, saturating.
pub fn binomial_count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn permutation_sign(seq: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

impl<T: Ring + ExactDiv> Matrix<T> {
    pub fn det(&self, algorithm: DetAlgorithm) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        match algorithm {
            DetAlgorithm::Cofactor => Ok(self.det_cofactor()),
            DetAlgorithm::FractionFree => self.det_bareiss(),
        }
    }

    fn det_cofactor(&self) -> T {
        fn rec<T: Ring>(m: &Matrix<T>, row: usize, cols: &mut Vec<usize>) -> T {
            if cols.is_empty() {
                return T::one();
            }
            let mut acc = T::zero();
            for pos in 0..cols.len() {
                let c = cols[pos];
                let entry = m.get(row, c);
                if entry.is_zero() {
                    continue;
                }
                cols.remove(pos);
                let sub = rec(m, row + 1, cols);
                cols.insert(pos, c);
                let term = entry.clone() * sub;
                acc = if pos % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let mut cols: Vec<usize> = (0..self.cols()).collect();
        rec(self, 0, &mut cols)
    }

    fn det_bareiss(&self) -> Result<T> {
        let n = self.rows();
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let lead = a.get(i, k).clone();
                for j in k + 1..n {
                    let num =
                        pivot.clone() * a.get(i, j).clone() - lead.clone() * a.get(k, j).clone();
                    let v = num.exact_div(&prev).ok_or(Error::NotDivisible)?;
                    a.set(i, j, v);
                }
                a.set(i, k, T::zero());
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Determinant of the columns picked by `cols`; needs `|cols| = rows`.
    pub fn maximal_minor(&self, cols: &ColumnSelection) -> Result<T> {
        if cols.len() != self.rows() {
            return Err(Error::Dimension(format!(
                "selected {} columns of a matrix with {} rows",
                cols.len(),
                self.rows()
            )));
        }
        self.select_columns(cols.indices())
            .det(DetAlgorithm::FractionFree)
    }

    /// All `rows x rows` minors in lexicographic selection order.
    ///
    /// Minors are computed in parallel; the output order does not depend on
    /// scheduling.
    pub fn all_maximal_minors(&self) -> Result<Vec<(ColumnSelection, T)>> {
        if self.rows() > self.cols() {
            return Err(Error::Dimension("more rows than columns".into()));
        }
        ColumnSelection::all(self.cols(), self.rows())
            .into_par_iter()
            .map(|sel| {
                let d = self.maximal_minor(&sel)?;
                Ok((sel, d))
            })
            .collect()
    }

    /// Minor obtained by deleting column `removed` (an `M x (M+1)` matrix).
    pub fn column_deleted_minor(&self, removed: usize) -> Result<T> {
        self.maximal_minor(&ColumnSelection::without(removed, self.cols())?)
    }

    /// Determinant as a signed sum over products of block minors.
    ///
    /// `row_blocks` must partition the rows of a square matrix. Each block
    /// `I_k` is paired with a column set `H_k` of the same size, the `H_k`
    /// pairwise disjoint, and each product is signed by the parities of the
    /// concatenations `I_1 * ... * I_m` and `H_1 * ... * H_m`.
    pub fn block_minor_expansion(&self, row_blocks: &[Vec<usize>]) -> Result<T> {
        let n = self.rows();
        if !self.is_square() {
            return Err(Error::Dimension(
                "block expansion needs a square matrix".into(),
            ));
        }
        let mut seen = HashSet::new();
        for block in row_blocks {
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Dimension("row blocks must be increasing".into()));
            }
            for &r in block {
                if r >= n || !seen.insert(r) {
                    return Err(Error::Dimension(
                        "row blocks do not partition the rows".into(),
                    ));
                }
            }
        }
        if seen.len() != n {
            return Err(Error::Dimension(
                "row blocks do not partition the rows".into(),
            ));
        }
        let row_order: Vec<usize> = row_blocks.iter().flatten().copied().collect();
        let row_sign = permutation_sign(&row_order);

        let mut acc = T::zero();
        let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(row_blocks.len());
        self.expand_blocks(row_blocks, &mut vec![false; n], &mut chosen, &mut acc)?;
        Ok(if row_sign { -acc } else { acc })
    }

    fn expand_blocks(
        &self,
        row_blocks: &[Vec<usize>],
        used: &mut Vec<bool>,
        chosen: &mut Vec<Vec<usize>>,
        acc: &mut T,
    ) -> Result<()> {
        let depth = chosen.len();
        if depth == row_blocks.len() {
            let col_order: Vec<usize> = chosen.iter().flatten().copied().collect();
            let mut term = T::one();
            for (rows, cols) in row_blocks.iter().zip(chosen.iter()) {
                let d = self.submatrix(rows, cols).det(DetAlgorithm::FractionFree)?;
                if d.is_zero() {
                    return Ok(());
                }
                term = term * d;
            }
            let next = if permutation_sign(&col_order) {
                acc.clone() - term
            } else {
                acc.clone() + term
            };
            *acc = next;
            return Ok(());
        }
        let free: Vec<usize> = (0..self.cols()).filter(|&c| !used[c]).collect();
        for pick in combinations(free.len(), row_blocks[depth].len()) {
            let cols: Vec<usize> = pick.iter().map(|&i| free[i]).collect();
            for &c in &cols {
                used[c] = true;
            }
            chosen.push(cols);
            self.expand_blocks(row_blocks, used, chosen, acc)?;
            let cols = chosen.pop().unwrap();
            for c in cols {
                used[c] = false;
            }
        }
        Ok(())
    }

    /// Rank over the fraction field, by fraction-free row echelon form.
    pub fn rank_over_fractions(&self) -> usize {
        let mut a = self.clone();
        let (rows, cols) = (a.rows(), a.cols());
        let mut rank = 0;
        let mut prev = T::one();
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let pivot = a.get(rank, c).clone();
            for i in rank + 1..rows {
                let lead = a.get(i, c).clone();
                for j in c + 1..cols {
                    let num =
                        pivot.clone() * a.get(i, j).clone() - lead.clone() * a.get(rank, j).clone();
                    let v = num
                        .exact_div(&prev)
                        .expect("fraction-free elimination divides exactly");
                    a.set(i, j, v);
                }
                a.set(i, c, T::zero());
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }
}

impl Matrix<BigInt> {
    /// `det(M M^T)`, a non-negative integer for `rows <= cols`.
    pub fn gram_det(&self) -> Result<BigInt> {
        self.matmul(&self.transpose())?
            .det(DetAlgorithm::FractionFree)
    }

    /// Non-negative gcd of all maximal minors; zero when they all vanish.
    pub fn minor_gcd(&self) -> Result<BigInt> {
        Ok(self
            .all_maximal_minors()?
            .iter()
            .fold(BigInt::zero(), |acc, (_, m)| acc.gcd(m)))
    }
}
