//! Bit-packed linear algebra over GF(2).
//!
//! Rows are stored as runs of `u64` words, bit `j` of a row living in word
//! `j / 64` at position `j % 64`. Bits past the last column are always zero,
//! so word-level XOR, AND and popcount can be used without masking.
//!
//! Everything here is a pure function of its inputs; matrices are plain
//! values and can be shared freely across threads.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

fn parity(words: impl Iterator<Item = u64>) -> bool {
    words.fold(0u32, |acc, w| acc ^ (w.count_ones() & 1)) == 1
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: &[u64]) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVector {
            len,
            words: words.to_vec(),
        }
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
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "inner product of vectors of different length");
        parity(self.words.iter().zip(&other.words).map(|(a, b)| a & b))
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
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
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    /// A matrix with no rows; the basis of the zero subspace of GF(2)^cols.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let mut m = Self::empty(cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    /// Builds a matrix with at most 64 columns from one word per row.
    pub fn from_word_rows(cols: usize, rows: &[u64]) -> Self {
        assert!(cols <= WORD_BITS, "from_word_rows supports at most 64 columns");
        let mask = low_mask(cols);
        let mut m = Self::zeros(rows.len(), cols);
        if cols > 0 {
            for (i, &w) in rows.iter().enumerate() {
                m.data[i] = w & mask;
            }
        }
        m
    }

    /// Parses rows written as strings of '0'/'1'. All rows must have equal length.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.trim().len());
        let mut m = Self::empty(cols);
        for (i, r) in rows.iter().enumerate() {
            let v: BitVector = r.parse().map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line: i + 1,
                    column,
                    message,
                },
                other => other,
            })?;
            if v.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} columns, expected {cols}",
                    i + 1,
                    v.len()
                )));
            }
            m.push_row(&v);
        }
        Ok(m)
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

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// The single word holding row `r`; only valid for matrices with at most 64 columns.
    pub fn word_row(&self, r: usize) -> u64 {
        debug_assert!(self.stride <= 1);
        if self.stride == 0 {
            0
        } else {
            self.data[r]
        }
    }

    pub fn row_vector(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row(r))
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.rows).map(|r| self.row_vector(r))
    }

    pub fn push_row(&mut self, v: &BitVector) {
        assert_eq!(v.len(), self.cols, "row length does not match column count");
        self.data.extend_from_slice(v.words());
        self.rows += 1;
    }

    pub(crate) fn push_words(&mut self, words: &[u64]) {
        debug_assert_eq!(words.len(), self.stride);
        self.data.extend_from_slice(words);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.data.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// New matrix whose column `i` is column `columns[i]` of `self`.
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, columns.len());
        for r in 0..self.rows {
            for (i, &c) in columns.iter().enumerate() {
                if self.get(r, c) {
                    m.set(r, i, true);
                }
            }
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        Ok(m)
    }

    /// `[self | other]` side by side.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot join {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    m.set(r, self.cols + c, true);
                }
            }
        }
        Ok(m)
    }

    /// Parses the `GF2 <rows> <cols>` text format.
    pub fn parse_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing header".into(),
        })?;
        let (rows, cols) = parse_header(header, "GF2", hline + 1)?;
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            let (lno, line) = lines.next().ok_or(Error::Parse {
                line: hline + 2 + r,
                column: 1,
                message: format!("expected {rows} rows, found {r}"),
            })?;
            let mut c = 0;
            for (pos, ch) in line.char_indices() {
                if ch.is_whitespace() {
                    continue;
                }
                let bit = match ch {
                    '0' => false,
                    '1' => true,
                    other => {
                        return Err(Error::Parse {
                            line: lno + 1,
                            column: pos + 1,
                            message: format!("expected '0' or '1', found {other:?}"),
                        })
                    }
                };
                if c >= cols {
                    return Err(Error::Parse {
                        line: lno + 1,
                        column: pos + 1,
                        message: format!("row longer than {cols} columns"),
                    });
                }
                m.set(r, c, bit);
                c += 1;
            }
            if c != cols {
                return Err(Error::Parse {
                    line: lno + 1,
                    column: line.len() + 1,
                    message: format!("row has {c} columns, expected {cols}"),
                });
            }
        }
        if let Some((lno, _)) = lines.next() {
            return Err(Error::Parse {
                line: lno + 1,
                column: 1,
                message: format!("more than {rows} rows"),
            });
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn parse_header(line: &str, tag: &str, line_no: usize) -> Result<(usize, usize)> {
    let bad = |message: String| Error::Parse {
        line: line_no,
        column: 1,
        message,
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(bad(format!("expected header \"{tag} <rows> <cols>\"")));
    }
    let mut num = |what: &str| -> Result<usize> {
        parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| bad(format!("header is missing a valid {what} count")))
    };
    let rows = num("row")?;
    let cols = num("column")?;
    if parts.next().is_some() {
        return Err(bad("trailing tokens after header".into()));
    }
    Ok((rows, cols))
}

pub(crate) fn low_mask(bits: usize) -> u64 {
    if bits >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2 {} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_vector(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}](", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row_vector(r))?;
        }
        f.write_str(")")
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitMatrix::parse_text(s)
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination with leftmost pivots; zero rows are dropped.
pub fn rref(m: &BitMatrix) -> Rref {
    let mut a = m.clone();
    let stride = a.stride;
    let mut pivots = Vec::new();
    let mut pivot_row = vec![0u64; stride];
    let mut next = 0;
    for c in 0..a.cols {
        if next == a.rows {
            break;
        }
        let Some(p) = (next..a.rows).find(|&r| a.get(r, c)) else {
            continue;
        };
        a.swap_rows(p, next);
        pivot_row.copy_from_slice(a.row(next));
        let (word, bit) = (c / WORD_BITS, 1u64 << (c % WORD_BITS));
        for r in 0..a.rows {
            if r != next && a.data[r * stride + word] & bit != 0 {
                for (x, y) in a.row_mut(r).iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    a.data.truncate(next * stride);
    a.rows = next;
    Rref {
        reduced: a,
        rank: next,
        pivots,
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    rref(m).rank
}

/// `a · bᵀ`: entry `(i, j)` is the inner product of row `i` of `a` with row `j` of `b`.
pub fn mul_transpose(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "mul_transpose of {} and {} columns",
            a.cols, b.cols
        )));
    }
    let mut out = BitMatrix::zeros(a.rows, b.rows);
    for i in 0..a.rows {
        let ra = a.row(i);
        for j in 0..b.rows {
            if parity(ra.iter().zip(b.row(j)).map(|(x, y)| x & y)) {
                out.set(i, j, true);
            }
        }
    }
    Ok(out)
}

/// Basis of `{v : m·vᵀ = 0}`, one row per non-pivot column of `rref(m)`.
pub fn nullspace(m: &BitMatrix) -> BitMatrix {
    let Rref { reduced, pivots, .. } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = BitMatrix::empty(m.cols);
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVector::zeros(m.cols);
        v.set(free, true);
        for (i, &p) in pivots.iter().enumerate() {
            if reduced.get(i, free) {
                v.set(p, true);
            }
        }
        basis.push_row(&v);
    }
    basis
}

/// Orthogonal complement of the row space, returned in RREF.
pub fn dual_space(m: &BitMatrix) -> BitMatrix {
    rref(&nullspace(m)).reduced
}

/// Basis (in RREF) of `rowspace(a) ∩ rowspace(b)`.
///
/// Zassenhaus: reduce the stacked rows `(a_i | a_i)` and `(b_j | 0)`; the rows
/// whose left half vanishes carry a basis of the intersection on the right.
pub fn intersect_row_spaces(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "intersection of {} and {} columns",
            a.cols, b.cols
        )));
    }
    let n = a.cols;
    let left = a.vstack(b)?;
    let right = a.vstack(&BitMatrix::zeros(b.rows, n))?;
    let stacked = left.hstack(&right)?;
    let Rref { reduced, pivots, .. } = rref(&stacked);
    let mut out = BitMatrix::empty(n);
    for (i, &p) in pivots.iter().enumerate() {
        if p >= n {
            let mut v = BitVector::zeros(n);
            for c in 0..n {
                if reduced.get(i, n + c) {
                    v.set(c, true);
                }
            }
            out.push_row(&v);
        }
    }
    // rows with pivots on the right are already in echelon form, but their
    // right halves need not be fully reduced against each other
    Ok(rref(&out).reduced)
}

/// Basis (in RREF) of `rowspace(a) + rowspace(b)`.
pub fn sum_row_spaces(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    Ok(rref(&a.vstack(b)?).reduced)
}

pub fn row_space_equal(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "comparing row spaces of {} and {} columns",
            a.cols, b.cols
        )));
    }
    Ok(rref(a).reduced == rref(b).reduced)
}

/// Whether `rowspace(a) ⊆ rowspace(b)`.
pub fn row_space_contains(b: &BitMatrix, a: &BitMatrix) -> Result<bool> {
    Ok(rank(&b.vstack(a)?) == rank(b))
}

/// Minimum Hamming weight over the nonzero vectors of the row space.
///
/// Walks all `2^rank - 1` nonzero messages in Gray-code order so each step is
/// a single row XOR.
pub fn min_weight_rowspace(g: &BitMatrix) -> Result<usize> {
    let basis = rref(g).reduced;
    if basis.rows == 0 {
        return Err(Error::ZeroCode);
    }
    let mut best = usize::MAX;
    for_each_codeword(&basis, |word| {
        let w: usize = word.iter().map(|x| x.count_ones() as usize).sum();
        if w > 0 && w < best {
            best = w;
        }
    });
    Ok(best)
}

/// Calls `f` on every nonzero combination of the rows of `basis`, in Gray-code order.
pub(crate) fn for_each_codeword(basis: &BitMatrix, mut f: impl FnMut(&[u64])) {
    let k = basis.rows;
    assert!(k < 64, "too many basis rows to enumerate");
    let mut cur = vec![0u64; basis.stride];
    for i in 1u64..(1u64 << k) {
        let flip = i.trailing_zeros() as usize;
        for (x, y) in cur.iter_mut().zip(basis.row(flip)) {
            *x ^= y;
        }
        f(&cur);
    }
}
