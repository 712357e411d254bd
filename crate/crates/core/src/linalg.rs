//! Dense exact integer matrices: fraction-free determinant and rank, and
//! Smith normal form invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Bareiss elimination in place. Returns the rank and the sign of the
    /// row permutation; for a square matrix of full rank the determinant is
    /// `sign * self[(n-1, n-1)]` afterwards.
    fn bareiss(&mut self) -> (usize, i32) {
        let mut sign = 1;
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            if pivot != rank {
                self.swap_rows(pivot, rank);
                sign = -sign;
            }
            let p = self[(rank, col)].clone();
            for i in rank + 1..self.rows {
                let lead = self[(i, col)].clone();
                for j in col..self.cols {
                    let v = (&p * &self[(i, j)] - &lead * &self[(rank, j)]) / &prev;
                    self[(i, j)] = v;
                }
            }
            prev = p;
            rank += 1;
        }
        (rank, sign)
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let (rank, sign) = m.bareiss();
        if rank < self.rows {
            return BigInt::zero();
        }
        let n = self.rows - 1;
        if sign < 0 {
            -m[(n, n)].clone()
        } else {
            m[(n, n)].clone()
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss().0
    }

    /// Non-zero diagonal entries of the Smith normal form, each dividing the next.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let mut out = Vec::new();
        let mut t = 0;
        while t < m.rows.min(m.cols) {
            // pivot: smallest non-zero absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    let v = &m[(i, j)];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                let p = m[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..m.rows {
                    let q = m[(i, t)].div_floor(&p);
                    if !q.is_zero() {
                        for j in t..m.cols {
                            let v = &m[(t, j)] * &q;
                            m[(i, j)] -= v;
                        }
                    }
                    if !m[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..m.cols {
                    let q = m[(t, j)].div_floor(&p);
                    if !q.is_zero() {
                        for i in t..m.rows {
                            let v = &m[(i, t)] * &q;
                            m[(i, j)] -= v;
                        }
                    }
                    if !m[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    // divisibility of the rest of the block by the pivot
                    let bad = (t + 1..m.rows)
                        .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                        .find(|&(i, j)| !m[(i, j)].is_multiple_of(&p));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            for j in t..m.cols {
                                let v = m[(i, j)].clone();
                                m[(t, j)] += v;
                            }
                            continue;
                        }
                    }
                }
                // move the smallest remainder in row/column t into the pivot slot
                let mut best = (t, t);
                for i in t + 1..m.rows {
                    if !m[(i, t)].is_zero() && m[(i, t)].abs() < m[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..m.cols {
                    if !m[(t, j)].is_zero() && m[(t, j)].abs() < m[best].abs() {
                        best = (t, j);
                    }
                }
                m.swap_rows(t, best.0);
                m.swap_cols(t, best.1);
            }
            out.push(m[(t, t)].abs());
            t += 1;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Laplace expansion along the first row.
    fn det_by_cofactors(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = BigInt::from(m[0][j]) * det_by_cofactors(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn small_determinants() {
        assert_eq!(
            IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]).determinant(),
            BigInt::from(1)
        );
        assert_eq!(
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(),
            BigInt::from(-1)
        );
        assert_eq!(
            IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).determinant(),
            BigInt::zero()
        );
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn smith_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(
            m.smith_invariants(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.smith_invariants(), vec![BigInt::from(1), BigInt::from(6)]);
        let m = IntMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(m.smith_invariants(), vec![BigInt::one(), BigInt::one()]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(n in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            prop_assert_eq!(IntMatrix::from_rows(&rows).determinant(), det_by_cofactors(&rows));
        }

        #[test]
        fn smith_product_is_abs_determinant(seed in proptest::collection::vec(-5i64..6, 9)) {
            let rows: Vec<Vec<i64>> = (0..3).map(|i| seed[i * 3..i * 3 + 3].to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            let inv = m.smith_invariants();
            prop_assert_eq!(inv.len(), m.rank());
            prop_assert!(inv.windows(2).all(|p| p[1].is_multiple_of(&p[0])));
            if inv.len() == 3 {
                let prod: BigInt = inv.iter().product();
                prop_assert_eq!(prod, m.determinant().abs());
            }
        }
    }
}
