//! Dense exact matrices over the rationals.
//!
//! Elimination runs fraction-free on integer rows: each row is scaled to a
//! primitive integer vector and combined as `p * row - e * pivot_row`, then
//! divided through by its content again. Results are the same as rational
//! Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integer_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flatten()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn echelon(&self) -> IntegerEchelon {
        let mut echelon = IntegerEchelon::new(self.cols);
        for r in 0..self.rows {
            echelon.insert(clear_denominators(self.row(r)));
        }
        echelon
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Column rank profile: the columns not in the span of the columns to
    /// their left, ascending.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivot_columns()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut echelon = self.echelon();
        echelon.reduce();
        let pivots = echelon.pivot_columns();
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for (r, row) in echelon.rows.iter().enumerate() {
            let lead = &row.entries[row.pivot];
            for (c, x) in row.entries.iter().enumerate() {
                if !x.is_zero() {
                    out.set(r, c, BigRational::new(x.clone(), lead.clone()));
                }
            }
        }
        (out, pivots)
    }

    /// A basis of the right kernel, one vector per non-pivot column, each
    /// with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut echelon = self.echelon();
        echelon.reduce();
        echelon
            .kernel_vectors()
            .into_iter()
            .map(|(free, v)| {
                let scale = v[free].clone();
                v.into_iter()
                    .map(|x| BigRational::new(x, scale.clone()))
                    .collect()
            })
            .collect()
    }
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let mut content = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            content = content.gcd(x);
            if content.is_one() {
                return;
            }
        }
    }
    if content.is_zero() || content.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &content;
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct EchelonRow {
    pub pivot: usize,
    pub entries: Vec<BigInt>,
}

/// Rows in echelon form, kept sorted by pivot column, with positive
/// primitive integer entries at the pivots.
#[derive(Debug, Clone)]
pub(crate) struct IntegerEchelon {
    cols: usize,
    rows: Vec<EchelonRow>,
}

impl IntegerEchelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    /// Reduces `row` against the current rows; keeps it if it is independent.
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        make_primitive(&mut row);
        for basis in &self.rows {
            let e = &row[basis.pivot];
            if e.is_zero() {
                continue;
            }
            let p = &basis.entries[basis.pivot];
            let g = p.gcd(e);
            let (scale_row, scale_basis) = (p / &g, e / &g);
            for (x, b) in row.iter_mut().zip(&basis.entries) {
                if b.is_zero() {
                    if !x.is_zero() {
                        *x *= &scale_row;
                    }
                } else {
                    *x = &*x * &scale_row - b * &scale_basis;
                }
            }
            make_primitive(&mut row);
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if row[pivot].is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(
            at,
            EchelonRow {
                pivot,
                entries: row,
            },
        );
        true
    }

    /// Clears every entry above each pivot, giving a scaled reduced form.
    pub fn reduce(&mut self) {
        for i in (0..self.rows.len()).rev() {
            let (above, rest) = self.rows.split_at_mut(i);
            let lower = &rest[0];
            let p = &lower.entries[lower.pivot];
            for upper in above.iter_mut() {
                let e = upper.entries[lower.pivot].clone();
                if e.is_zero() {
                    continue;
                }
                let g = p.gcd(&e);
                let (scale_upper, scale_lower) = (p / &g, &e / &g);
                for (x, b) in upper.entries.iter_mut().zip(&lower.entries) {
                    if b.is_zero() {
                        if !x.is_zero() {
                            *x *= &scale_upper;
                        }
                    } else {
                        *x = &*x * &scale_upper - b * &scale_lower;
                    }
                }
                make_primitive(&mut upper.entries);
            }
        }
    }

    /// Primitive integer kernel vectors of a reduced echelon form, paired
    /// with the free column each one is attached to. Call [`Self::reduce`] first.
    pub fn kernel_vectors(&self) -> Vec<(usize, Vec<BigInt>)> {
        let mut is_pivot = vec![false; self.cols];
        for r in &self.rows {
            is_pivot[r.pivot] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                // row r reads p_r x_{pivot_r} + c_r x_free = 0 once x_free is
                // the only free variable set.
                let scale = self
                    .rows
                    .iter()
                    .filter(|r| !r.entries[free].is_zero())
                    .fold(BigInt::one(), |acc, r| acc.lcm(&r.entries[r.pivot]));
                let mut v = vec![BigInt::zero(); self.cols];
                v[free] = scale.clone();
                for r in &self.rows {
                    let c = &r.entries[free];
                    if !c.is_zero() {
                        v[r.pivot] = -(c * (&scale / &r.entries[r.pivot]));
                    }
                }
                make_primitive(&mut v);
                (free, v)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn matrix(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn mul_vec(a: &RationalMatrix, v: &[BigRational]) -> Vec<BigRational> {
        (0..a.rows())
            .map(|r| a.row(r).iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// Textbook rational Gauss-Jordan, kept deliberately naive.
    fn naive_rref(a: &RationalMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let mut m: Vec<Vec<BigRational>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols() {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            m[r].iter_mut().for_each(|x| *x *= &inv);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
        assert_eq!(matrix(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 4).rank(), 0);
        assert_eq!(matrix(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]).rank(), 3);
    }

    #[test]
    fn pivot_columns_are_rank_profile() {
        let a = matrix(&[&[0, 1, 2, 0], &[0, 2, 4, 1]]);
        assert_eq!(a.pivot_columns(), [1, 3]);
    }

    #[test]
    fn rational_entries() {
        let a = RationalMatrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 4), q(1, 2)]])
            .unwrap();
        assert_eq!(a.rank(), 1);
        assert!(RationalMatrix::from_rows(vec![vec![q(1, 1)], vec![]]).is_err());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = matrix(&[&[1, 2, 3, 4], &[2, 4, 7, 9], &[3, 6, 10, 13]]);
        let kernel = a.kernel_basis();
        assert_eq!(kernel.len(), a.cols() - a.rank());
        for v in &kernel {
            assert!(mul_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rref_matches_naive_elimination() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..40 {
            let rows = 1 + (next().unsigned_abs() as usize % 5);
            let cols = 1 + (next().unsigned_abs() as usize % 6);
            let data: Vec<Vec<BigRational>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| q(next(), 1 + next().unsigned_abs() as i64))
                        .collect()
                })
                .collect();
            let a = RationalMatrix::from_rows(data).unwrap();
            let (rref, pivots) = a.rref();
            let (expected, expected_pivots) = naive_rref(&a);
            assert_eq!(pivots, expected_pivots);
            for (r, row) in expected.iter().enumerate().take(pivots.len()) {
                assert_eq!(rref.row(r), &row[..]);
            }
            assert_eq!(a.kernel_basis().len(), cols - pivots.len());
            for v in a.kernel_basis() {
                assert!(mul_vec(&a, &v).iter().all(Zero::is_zero));
            }
        }
    }
}
