use std::fmt;

use num_bigint::BigUint;

use super::vector::{words_for, F2Vector};
use crate::error::{Error, Result};

/// Dense matrix over GF(2), rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    /// # Panics
    ///
    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "F2Matrix dimensions must be positive");
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose row `i` is `rows[i]`.
    pub fn from_rows(rows: &[F2Vector]) -> Result<Self> {
        let first = rows.first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let mut m = Self::zeros(rows.len(), first.dim());
        for (i, r) in rows.iter().enumerate() {
            if r.dim() != m.cols {
                return Err(Error::DimensionMismatch {
                    expected: m.cols,
                    got: r.dim(),
                });
            }
            m.row_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix whose column `j` is `cols[j]`.
    pub fn from_columns(cols: &[F2Vector]) -> Result<Self> {
        let first = cols.first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let mut m = Self::zeros(first.dim(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_column(j, c)?;
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) outside {}x{}", self.rows, self.cols);
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) outside {}x{}", self.rows, self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let v = self.get(i, j);
        self.set(i, j, !v);
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector::from_words(self.cols, self.row_words(i).to_vec()).expect("row width matches")
    }

    pub fn column(&self, j: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn set_column(&mut self, j: usize, c: &F2Vector) -> Result<()> {
        if c.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: c.dim(),
            });
        }
        for i in 0..self.rows {
            self.set(i, j, c.get(i));
        }
        Ok(())
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `A x`: bit `i` of the result is the parity of `row_i & x`.
    pub fn mat_vec(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.dim(),
            });
        }
        let xw = x.words();
        let mut out = F2Vector::zeros(self.rows);
        let ow = out.words_mut();
        for i in 0..self.rows {
            let acc = self
                .row_words(i)
                .iter()
                .zip(xw)
                .fold(0u64, |acc, (r, x)| acc ^ (r & x));
            ow[i / 64] |= ((acc.count_ones() & 1) as u64) << (i % 64);
        }
        Ok(out)
    }

    /// `A B`, accumulating rows of `B` selected by the bits of each row of `A`.
    pub fn mat_mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        let stride = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * stride..(i + 1) * stride];
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let k = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    for (d, s) in dst.iter_mut().zip(other.row_words(k)) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A^e` by square-and-multiply.
    pub fn mat_pow(&self, e: &BigUint) -> Result<F2Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let mut result = F2Matrix::identity(self.rows);
        let mut base = self.clone();
        let bits = e.bits();
        for b in 0..bits {
            if e.bit(b) {
                result = result.mat_mul(&base)?;
            }
            if b + 1 < bits {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let j = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let (wi, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + wi] & bit != 0) else {
                continue;
            };
            if p != rank {
                for w in 0..m.stride {
                    m.data.swap(p * m.stride + w, rank * m.stride + w);
                }
            }
            let pivot: Vec<u64> = m.row_words(rank).to_vec();
            for r in 0..m.rows {
                if r != rank && m.data[r * m.stride + wi] & bit != 0 {
                    for (d, s) in m.row_mut(r).iter_mut().zip(&pivot) {
                        *d ^= s;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows <= 16 && self.cols <= 64 {
            writeln!(f, "F2Matrix {}x{} [", self.rows, self.cols)?;
            for i in 0..self.rows {
                writeln!(f, "  {}", self.row(i).to_bit_string())?;
            }
            write!(f, "]")
        } else {
            write!(f, "F2Matrix {}x{} (ones={})", self.rows, self.cols, self.count_ones())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> F2Matrix {
        let rows: Vec<F2Vector> = (0..n).map(|_| F2Vector::random(n, rng)).collect();
        F2Matrix::from_rows(&rows).unwrap()
    }

    /// Entry-by-entry product, independent of the packed kernel.
    fn naive_mul(a: &F2Matrix, b: &F2Matrix) -> F2Matrix {
        let mut c = F2Matrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let v = (0..a.cols()).fold(false, |acc, k| acc ^ (a.get(i, k) & b.get(k, j)));
                c.set(i, j, v);
            }
        }
        c
    }

    #[test]
    fn small_hand_product() {
        let mut a = F2Matrix::zeros(2, 2);
        a.set(0, 0, true);
        a.set(0, 1, true);
        a.set(1, 1, true);
        let x = F2Vector::from_bits(&[true, true]);
        assert_eq!(a.mat_vec(&x).unwrap().to_bit_string(), "01");
    }

    #[test]
    fn identity_and_zero_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = F2Vector::random(100, &mut rng);
        assert_eq!(F2Matrix::identity(100).mat_vec(&x).unwrap(), x);
        assert!(F2Matrix::zeros(7, 100).mat_vec(&x).unwrap().is_zero());
        assert!(matches!(
            F2Matrix::identity(99).mat_vec(&x),
            Err(Error::DimensionMismatch { expected: 99, got: 100 })
        ));
    }

    #[test]
    fn packed_product_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [1, 5, 64, 65, 130] {
            let a = random_matrix(n, &mut rng);
            let b = random_matrix(n, &mut rng);
            assert_eq!(a.mat_mul(&b).unwrap(), naive_mul(&a, &b), "n = {n}");
        }
    }

    #[test]
    fn pow_small_exponents() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(16, &mut rng);
        assert_eq!(a.mat_pow(&BigUint::from(0u32)).unwrap(), F2Matrix::identity(16));
        assert_eq!(a.mat_pow(&BigUint::from(1u32)).unwrap(), a);
        let mut sq = a.clone();
        for k in 1..=8u32 {
            sq = sq.mat_mul(&sq).unwrap();
            assert_eq!(a.mat_pow(&(BigUint::from(1u32) << k)).unwrap(), sq, "2^{k}");
        }
        let mut rep = F2Matrix::identity(16);
        for e in 0..40u32 {
            assert_eq!(a.mat_pow(&BigUint::from(e)).unwrap(), rep, "e = {e}");
            rep = rep.mat_mul(&a).unwrap();
        }
    }

    #[test]
    fn pow_rejects_rectangles() {
        assert!(F2Matrix::zeros(2, 3).mat_pow(&BigUint::from(2u32)).is_err());
    }

    #[test]
    fn transpose_and_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_matrix(70, &mut rng);
        let t = a.transpose();
        for j in 0..70 {
            assert_eq!(a.column(j), t.row(j));
        }
        let cols: Vec<F2Vector> = (0..70).map(|j| a.column(j)).collect();
        assert_eq!(F2Matrix::from_columns(&cols).unwrap(), a);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::identity(77).rank(), 77);
        assert_eq!(F2Matrix::zeros(5, 5).rank(), 0);
        let mut m = F2Matrix::zeros(3, 3);
        for j in 0..3 {
            m.set(0, j, true);
            m.set(1, j, true);
        }
        m.set(2, 2, true);
        assert_eq!(m.rank(), 2);
    }
}
