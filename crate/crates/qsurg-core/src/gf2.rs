//! Dense bit-packed vectors and matrices over GF(2).
//!
//! Rows are stored as contiguous runs of `u64` words. Row reduction follows a
//! fixed convention (columns left to right, pivot = first nonzero row at or
//! below the current row) so that kernels and echelon forms are reproducible.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// The zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with ones exactly at `indices`.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Vector from a sequence of booleans.
    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a string of `0`/`1` characters; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for (pos, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("unexpected character {c:?} in bit string"),
                    })
                }
            }
        }
        Ok(Self::from_bools(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Sorted indices of the set bits.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut x = w;
            while x != 0 {
                out.push(wi * WORD + x.trailing_zeros() as usize);
                x &= x - 1;
            }
        }
        out
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot product length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Componentwise product (the Hadamard product `u ⊙ v`).
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "and length mismatch");
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// True when the supports of the two vectors intersect.
    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Restrict to the listed coordinates, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self::from_bools(indices.iter().map(|&i| self.get(i)))
    }

    /// Concatenate two vectors.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits as `0`/`1` values.
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    /// Lexicographic comparison of the bit sequences (index 0 most significant).
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for i in 0..self.len.min(other.len) {
            match (self.get(i), other.get(i)) {
                (true, false) => return std::cmp::Ordering::Greater,
                (false, true) => return std::cmp::Ordering::Less,
                _ => {}
            }
        }
        self.len.cmp(&other.len)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from rows; all rows must share the length `cols`.
    ///
    /// # Panics
    /// Panics on a row of the wrong length.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {} not {cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Build from nested 0/1 values.
    ///
    /// # Panics
    /// Panics if the rows are ragged.
    pub fn from_dense<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row {i} has length {} not {cols}", r.len());
            for (j, &b) in r.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parse rows written as strings of `0`/`1` (whitespace inside a row is ignored).
    ///
    /// # Panics
    /// Panics if the rows are ragged or contain other characters; intended for fixtures.
    pub fn from_strs(rows: &[&str]) -> Self {
        let vecs: Vec<BitVector> = rows
            .iter()
            .map(|r| BitVector::parse(r).expect("fixture row must be a bit string"))
            .collect();
        let cols = vecs.first().map_or(0, BitVector::len);
        Self::from_rows(cols, &vecs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let mask = 1u64 << (j % WORD);
        let w = &mut self.words[i * self.stride + j / WORD];
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

    /// Copy of row `i`.
    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    /// All rows as vectors.
    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Copy of column `j`.
    pub fn col(&self, j: usize) -> BitVector {
        BitVector::from_bools((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn set_row(&mut self, i: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    /// Row `dst` ^= row `src`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.words.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.words.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Weight of every column.
    pub fn col_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for i in 0..self.rows {
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut x = w;
                while x != 0 {
                    out[wi * WORD + x.trailing_zeros() as usize] += 1;
                    x &= x - 1;
                }
            }
        }
        out
    }

    /// Weight of every row.
    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_weight(i)).collect()
    }

    /// Maximum row weight (0 for an empty matrix).
    pub fn max_row_weight(&self) -> usize {
        self.row_weights().into_iter().max().unwrap_or(0)
    }

    /// Maximum column weight (0 for an empty matrix).
    pub fn max_col_weight(&self) -> usize {
        self.col_weights().into_iter().max().unwrap_or(0)
    }

    /// Total number of ones.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut x = w;
                while x != 0 {
                    let j = wi * WORD + x.trailing_zeros() as usize;
                    t.set(j, i, true);
                    x &= x - 1;
                }
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut x = w;
                while x != 0 {
                    let k = wi * WORD + x.trailing_zeros() as usize;
                    let (o, src) = (i * out.stride, k * other.stride);
                    for t in 0..out.stride {
                        out.words[o + t] ^= other.words[src + t];
                    }
                    x &= x - 1;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(BitVector::from_bools((0..self.rows).map(|i| {
            let ones: u32 = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            ones & 1 == 1
        })))
    }

    /// Row vector times matrix, `v · self`: the XOR of the rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if self.rows != v.len() {
            return Err(Error::Shape(format!(
                "cannot multiply vector of length {} by {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = BitVector::zeros(self.cols);
        for i in v.support() {
            for (a, b) in out.words.iter_mut().zip(self.row_words(i)) {
                *a ^= b;
            }
        }
        Ok(out)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j) {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        if other.get(p, q) {
                            out.set(i * other.rows + p, j * other.cols + q, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "hstack row mismatch: {} vs {}",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.row(i).support() {
                out.set(i, j, true);
            }
            for j in other.row(i).support() {
                out.set(i, self.cols + j, true);
            }
        }
        Ok(out)
    }

    /// Vertical concatenation of `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "vstack column mismatch: {} vs {}",
                self.cols, other.cols
            )));
        }
        let mut words = self.words.clone();
        words.extend_from_slice(&other.words);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            words,
        })
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.row(i).support() {
                out.set(i, j, true);
            }
        }
        for i in 0..other.rows {
            for j in other.row(i).support() {
                out.set(self.rows + i, self.cols + j, true);
            }
        }
        out
    }

    /// Submatrix with the listed rows, in order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut out = Self::zeros(indices.len(), self.cols);
        for (k, &i) in indices.iter().enumerate() {
            out.row_words_mut(k).copy_from_slice(self.row_words(i));
        }
        out
    }

    /// Submatrix with the listed columns, in order.
    pub fn select_cols(&self, indices: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, indices.len());
        for i in 0..self.rows {
            for (k, &j) in indices.iter().enumerate() {
                if self.get(i, j) {
                    out.set(i, k, true);
                }
            }
        }
        out
    }

    /// Reduce to reduced row echelon form in place and return the pivot columns.
    ///
    /// Columns are processed left to right; the pivot row is the first row at
    /// or below the current position with a one in the column.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    /// Reduced row echelon form with columns visited in `order`.
    ///
    /// Returns the pivot columns in the order they were found; pivot `i` lives
    /// in row `i`. Columns not listed in `order` are never pivots.
    pub fn rref_with_order(&mut self, order: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut cur = 0;
        for &c in order {
            if cur == self.rows {
                break;
            }
            let (wi, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (cur..self.rows).find(|&i| self.words[i * self.stride + wi] & mask != 0) else {
                continue;
            };
            self.swap_rows(p, cur);
            for i in 0..self.rows {
                if i != cur && self.words[i * self.stride + wi] & mask != 0 {
                    self.xor_row_into(cur, i);
                }
            }
            pivots.push(c);
            cur += 1;
        }
        pivots
    }

    /// Reduced row echelon form (zero rows kept at the bottom) and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self·v = 0}` in free-column form.
    ///
    /// One vector per non-pivot column `f`, ordered by `f`; the vector has a
    /// one at `f` and copies column `f` of the echelon form onto the pivots.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.cols);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Kernel basis stacked as the rows of a matrix.
    pub fn kernel_matrix(&self) -> Self {
        Self::from_rows(self.cols, &self.kernel_basis())
    }

    /// True iff `v` is a GF(2) combination of the rows.
    pub fn in_span(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against rows of length {}",
                v.len(),
                self.cols
            )));
        }
        Ok(RowReducer::from_matrix(self).contains(v))
    }

    /// Find `x` with `x · self = v` (a row combination), if one exists.
    pub fn solve_left(&self, v: &BitVector) -> Result<Option<BitVector>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against rows of length {}",
                v.len(),
                self.cols
            )));
        }
        let mut red = RowReducer::with_tracking(self.cols, self.rows);
        for i in 0..self.rows {
            red.insert_tracked(self.row(i), i);
        }
        Ok(red.express(v))
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n)).ok()?;
        let mut aug = aug;
        let order: Vec<usize> = (0..n).collect();
        let pivots = aug.rref_with_order(&order);
        if pivots.len() < n {
            return None;
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_cols(&right))
    }

    /// Rows of the matrix rendered as `0`/`1` strings.
    pub fn to_strings(&self) -> Vec<String> {
        (0..self.rows).map(|i| self.row(i).to_string()).collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// An incrementally built echelon basis of a row space.
///
/// Each stored vector has a distinct leading (lowest) set bit. Reducing a
/// vector clears every pivot position, which gives a canonical representative
/// of its coset modulo the span.
#[derive(Clone, Debug)]
pub struct RowReducer {
    len: usize,
    basis: Vec<BitVector>,
    pivot_of: Vec<Option<usize>>,
    combos: Option<Vec<BitVector>>,
    sources: usize,
}

impl RowReducer {
    /// Empty reducer for vectors of length `len`.
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
            pivot_of: vec![None; len],
            combos: None,
            sources: 0,
        }
    }

    /// Reducer that also records how each basis vector combines the inserted inputs.
    pub fn with_tracking(len: usize, sources: usize) -> Self {
        Self {
            combos: Some(Vec::new()),
            sources,
            ..Self::new(len)
        }
    }

    /// Reducer spanning the rows of `m`.
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut r = Self::new(m.cols());
        for i in 0..m.rows() {
            r.insert(m.row(i));
        }
        r
    }

    /// Reducer spanning the given vectors.
    pub fn from_vectors(len: usize, vs: &[BitVector]) -> Self {
        let mut r = Self::new(len);
        for v in vs {
            r.insert(v.clone());
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vec_len(&self) -> usize {
        self.len
    }

    /// Basis vectors in insertion order.
    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    fn reduce_inner(&self, v: &mut BitVector, mut combo: Option<&mut BitVector>) {
        let nw = v.words.len();
        for wi in 0..nw {
            let mut done = 0u64;
            loop {
                let x = v.words[wi] & !done;
                if x == 0 {
                    break;
                }
                let b = x.trailing_zeros() as usize;
                let p = wi * WORD + b;
                if let Some(r) = self.pivot_of[p] {
                    let row = &self.basis[r];
                    for t in wi..nw {
                        v.words[t] ^= row.words[t];
                    }
                    if let (Some(c), Some(combos)) = (combo.as_deref_mut(), &self.combos) {
                        c.xor_assign(&combos[r]);
                    }
                } else {
                    done |= 1u64 << b;
                }
            }
        }
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.len, "reducer length mismatch");
        let mut out = v.clone();
        self.reduce_inner(&mut out, None);
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add `v` to the span; returns true when it was independent.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len, "reducer length mismatch");
        let mut r = v;
        self.reduce_inner(&mut r, None);
        self.push_reduced(r, None)
    }

    /// Add input number `source` (tracked mode); returns true when independent.
    pub fn insert_tracked(&mut self, v: BitVector, source: usize) -> bool {
        let mut combo = BitVector::from_indices(self.sources, &[source]);
        let mut r = v;
        self.reduce_inner(&mut r, Some(&mut combo));
        self.push_reduced(r, Some(combo))
    }

    fn push_reduced(&mut self, r: BitVector, combo: Option<BitVector>) -> bool {
        match r.first_one() {
            None => false,
            Some(p) => {
                self.pivot_of[p] = Some(self.basis.len());
                self.basis.push(r);
                if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo) {
                    combos.push(c);
                }
                true
            }
        }
    }

    /// In tracked mode, express `v` as a combination of the inserted inputs.
    pub fn express(&self, v: &BitVector) -> Option<BitVector> {
        self.combos.as_ref()?;
        let mut r = v.clone();
        let mut c = BitVector::zeros(self.sources);
        self.reduce_inner(&mut r, Some(&mut c));
        r.is_zero().then_some(c)
    }
}
