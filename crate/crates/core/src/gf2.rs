//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words, least significant bit first. Every
//! operation that eliminates works on a private copy; inputs are never
//! mutated.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// A bit-packed vector over GF(2). Padding bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![!0; words_for(len)],
        };
        v.clear_padding();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones exactly at `support`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_ones());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let tz = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + tz);
                w &= w - 1;
            }
        }
        out
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

/// A dense row-major bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
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

    /// Builds a matrix from rows given as boolean slices of equal length.
    pub fn from_bool_rows(rows: &[Vec<bool>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has wrong length");
            for (c, &b) in row.iter().enumerate() {
                if b {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from the column supports of each row.
    pub fn from_row_supports<S: AsRef<[usize]>>(cols: usize, rows: &[S]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, support) in rows.iter().enumerate() {
            for &c in support.as_ref() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols);
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let idx = r * self.stride + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// The matrix with `col` appended as a last column.
    pub fn augment(&self, col: &BitVector) -> Result<BitMatrix, Gf2Error> {
        self.check_rhs(col)?;
        let mut out = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).support() {
                out.set(r, c, true);
            }
            if col.get(r) {
                out.set(r, self.cols, true);
            }
        }
        Ok(out)
    }

    /// The sub-matrix formed by the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    /// The sub-matrix with row `skip` removed.
    pub fn without_row(&self, skip: usize) -> BitMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| r != skip).collect();
        self.select_rows(&keep)
    }

    /// Horizontal concatenation `(self, other)`.
    pub fn hconcat(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row(r).support() {
                out.set(r, c, true);
            }
            for c in other.row(r).support() {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// `self · x` over GF(2).
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(x.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            if parity == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `y · self` over GF(2), i.e. the sum of the rows selected by `y`.
    pub fn left_mul_vec(&self, y: &BitVector) -> Result<BitVector, Gf2Error> {
        if y.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows,
                actual: y.len(),
            });
        }
        let mut out = BitVector::zeros(self.cols);
        for r in y.support() {
            for (a, b) in out.words.iter_mut().zip(self.row_words(r)) {
                *a ^= *b;
            }
        }
        Ok(out)
    }

    /// Sum of all rows.
    pub fn row_sum(&self) -> BitVector {
        self.left_mul_vec(&BitVector::ones(self.rows))
            .expect("length matches by construction")
    }

    fn check_rhs(&self, b: &BitVector) -> Result<(), Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows,
                actual: b.len(),
            });
        }
        Ok(())
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        Echelon::reduce(self, None).pivots.len()
    }

    pub fn nullspace_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution of `self · x = b`, with every free variable set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        self.check_rhs(b)?;
        let ech = Echelon::reduce(self, Some(b));
        if !ech.consistent {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in ech.pivots.iter().enumerate() {
            if ech.rhs.get(i) {
                x.set(p, true);
            }
        }
        debug_assert_eq!(self.mul_vec(&x).as_ref(), Ok(b));
        Ok(Some(x))
    }

    /// Number of solutions of `self · x = b`: `2^(cols - rank)` when
    /// consistent, zero otherwise.
    pub fn solution_count(&self, b: &BitVector) -> Result<BigUint, Gf2Error> {
        self.check_rhs(b)?;
        let ech = Echelon::reduce(self, Some(b));
        if !ech.consistent {
            return Ok(BigUint::zero());
        }
        Ok(BigUint::one() << (self.cols - ech.pivots.len()))
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<BitVector> {
        let ech = Echelon::reduce(self, None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (i, &p) in ech.pivots.iter().enumerate() {
                    if ech.matrix.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// A basis of the row dependencies `{y : y · self = 0}`.
    pub fn left_nullspace_basis(&self) -> Vec<BitVector> {
        self.transpose().nullspace_basis()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a working copy, optionally carrying a
/// right-hand side through the same row operations.
struct Echelon {
    matrix: BitMatrix,
    pivots: Vec<usize>,
    rhs: BitVector,
    consistent: bool,
}

impl Echelon {
    fn reduce(m: &BitMatrix, b: Option<&BitVector>) -> Self {
        let mut a = m.clone();
        let mut rhs = b.cloned().unwrap_or_else(|| BitVector::zeros(m.rows));
        let mut pivots = Vec::new();
        let stride = a.stride;
        let mut next = 0;
        for col in 0..a.cols {
            if next == a.rows {
                break;
            }
            let (w, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (next..a.rows).find(|&r| a.data[r * stride + w] & mask != 0) else {
                continue;
            };
            if p != next {
                for i in 0..stride {
                    a.data.swap(p * stride + i, next * stride + i);
                }
                let (bp, bn) = (rhs.get(p), rhs.get(next));
                rhs.set(p, bn);
                rhs.set(next, bp);
            }
            let pivot_row: Vec<u64> = a.row_words(next)[w..].to_vec();
            let pivot_rhs = rhs.get(next);
            for r in 0..a.rows {
                if r != next && a.data[r * stride + w] & mask != 0 {
                    let row = &mut a.data[r * stride + w..(r + 1) * stride];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x ^= *y;
                    }
                    if pivot_rhs {
                        rhs.set(r, !rhs.get(r));
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        let consistent = (next..a.rows).all(|r| !rhs.get(r));
        Echelon {
            matrix: a,
            pivots,
            rhs,
            consistent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Bit-by-bit elimination on `Vec<Vec<bool>>`, independent of the packed path.
    fn naive_rank(rows: &[Vec<bool>]) -> usize {
        let mut a: Vec<Vec<bool>> = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..a.len()).find(|&r| a[r][c]) {
                a.swap(rank, p);
                for r in 0..a.len() {
                    if r != rank && a[r][c] {
                        let pivot = a[rank].clone();
                        for (x, p) in a[r].iter_mut().zip(pivot) {
                            *x ^= p;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn brute_count(rows: &[Vec<bool>], cols: usize, b: &[bool]) -> u64 {
        (0u64..1 << cols)
            .filter(|mask| {
                rows.iter().zip(b).all(|(row, &bi)| {
                    let dot = row
                        .iter()
                        .enumerate()
                        .filter(|&(j, &v)| v && (mask >> j) & 1 == 1)
                        .count();
                    (dot % 2 == 1) == bi
                })
            })
            .count() as u64
    }

    fn random_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<bool>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(0.5)).collect())
            .collect()
    }

    fn c3_pow42() -> BitMatrix {
        BitMatrix::from_row_supports(6, &[vec![0, 1, 2, 3], vec![2, 3, 4, 5], vec![4, 5, 0, 1]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(c3_pow42().rank(), 2);
        assert_eq!(BitMatrix::from_row_supports(2, &[vec![0, 1]]).rank(), 1);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(BitMatrix::identity(130).rank(), 130);
    }

    #[test]
    fn rank_seed_42_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rows = random_rows(&mut rng, 5, 7);
        // frozen from naive_rank on the same draw
        assert_eq!(naive_rank(&rows), 5);
        assert_eq!(BitMatrix::from_bool_rows(&rows, 7).rank(), 5);
    }

    #[test]
    fn rank_does_not_mutate() {
        let m = c3_pow42();
        let copy = m.clone();
        let _ = m.rank();
        let _ = m.solve(&BitVector::ones(3));
        assert_eq!(m, copy);
    }

    #[test]
    fn solve_examples() {
        let edge = BitMatrix::from_row_supports(4, &[vec![0, 1, 2, 3]]);
        let x = edge.solve(&BitVector::ones(1)).unwrap().unwrap();
        assert_eq!(x.support(), vec![0]);

        assert_eq!(c3_pow42().solve(&BitVector::ones(3)).unwrap(), None);

        let genexm1 = BitMatrix::from_row_supports(5, &[vec![0, 1, 2, 3], vec![1, 2, 3, 4], vec![0, 4]]);
        assert_eq!(genexm1.solve(&BitVector::ones(3)).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let err = c3_pow42().solve(&BitVector::ones(2)).unwrap_err();
        assert_eq!(err, Gf2Error::DimensionMismatch { expected: 3, actual: 2 });
        assert!(c3_pow42().solution_count(&BitVector::ones(4)).is_err());
    }

    #[test]
    fn solution_count_examples() {
        let edge = BitMatrix::from_row_supports(4, &[vec![0, 1, 2, 3]]);
        let brute = brute_count(&[vec![true; 4]], 4, &[true]);
        assert_eq!(brute, 8);
        assert_eq!(edge.solution_count(&BitVector::ones(1)).unwrap(), BigUint::from(brute));
        assert_eq!(c3_pow42().solution_count(&BitVector::ones(3)).unwrap(), BigUint::zero());
        let full = BitMatrix::identity(5);
        assert_eq!(full.solution_count(&BitVector::ones(5)).unwrap(), BigUint::one());
    }

    #[test]
    fn solution_count_is_big() {
        let wide = BitMatrix::from_row_supports(200, &[vec![0]]);
        let count = wide.solution_count(&BitVector::ones(1)).unwrap();
        assert_eq!(count, BigUint::one() << 199usize);
    }

    #[test]
    fn nullspace_examples() {
        let zero = BitMatrix::zeros(2, 5);
        assert_eq!(zero.nullspace_dim(), 5);
        assert_eq!(naive_rank(&[vec![true, true, true, true, false, false]; 1]), 1);
        assert_eq!(c3_pow42().nullspace_dim(), 4);
        for v in c3_pow42().nullspace_basis() {
            assert!(c3_pow42().mul_vec(&v).unwrap().is_zero());
        }
        let deps = c3_pow42().left_nullspace_basis();
        assert_eq!(deps.len(), 1);
        assert_eq!(deps[0].support(), vec![0, 1, 2]);
    }

    #[test]
    fn padding_stays_zero() {
        let v = BitVector::ones(70);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
        let m = BitMatrix::from_row_supports(70, &[vec![69]]).transpose().transpose();
        assert_eq!(m.row_words(0)[1], 1 << 5);
    }

    #[test]
    fn random_rank_matches_naive_500() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let r = rng.gen_range(0..=16);
            let c = rng.gen_range(0..=16);
            let rows = random_rows(&mut rng, r, c);
            let m = BitMatrix::from_bool_rows(&rows, c);
            assert_eq!(m.rank(), naive_rank(&rows), "{m:?}");
        }
    }

    #[test]
    fn random_count_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = rng.gen_range(1..=10);
            let c = rng.gen_range(0..=12);
            let rows = random_rows(&mut rng, r, c);
            let b: Vec<bool> = (0..r).map(|_| rng.gen_bool(0.5)).collect();
            let m = BitMatrix::from_bool_rows(&rows, c);
            let count = m.solution_count(&BitVector::from_bools(&b)).unwrap();
            assert_eq!(count, BigUint::from(brute_count(&rows, c, &b)));
        }
    }

    fn matrix_strategy() -> impl Strategy<Value = (Vec<Vec<bool>>, usize)> {
        (0usize..=16, 0usize..=16).prop_flat_map(|(r, c)| {
            (prop::collection::vec(prop::collection::vec(any::<bool>(), c), r), Just(c))
        })
    }

    proptest! {
        #[test]
        fn solve_solution_satisfies_system((rows, c) in matrix_strategy(), seed in any::<u64>()) {
            let m = BitMatrix::from_bool_rows(&rows, c);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b: Vec<bool> = (0..rows.len()).map(|_| rng.gen_bool(0.5)).collect();
            let b = BitVector::from_bools(&b);
            match m.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
                None => prop_assert!(m.rank() < m.augment(&b).unwrap().rank()),
            }
        }

        #[test]
        fn rank_invariant_under_row_operations((rows, c) in matrix_strategy(), seed in any::<u64>()) {
            prop_assume!(rows.len() >= 2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = BitMatrix::from_bool_rows(&rows, c).rank();
            let mut shuffled = rows.clone();
            let (i, j) = (rng.gen_range(0..rows.len()), rng.gen_range(0..rows.len()));
            shuffled.swap(i, j);
            let (src, dst) = (rng.gen_range(0..rows.len()), rng.gen_range(0..rows.len()));
            if src != dst {
                let from = shuffled[src].clone();
                for (x, f) in shuffled[dst].iter_mut().zip(from) {
                    *x ^= f;
                }
            }
            prop_assert_eq!(BitMatrix::from_bool_rows(&shuffled, c).rank(), base);
        }
    }
}
