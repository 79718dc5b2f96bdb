//! The ring E = ⟨κ, τ | 2κ = 2τ = 0, κ² = κ, τ² = τ, κτ = κ, τκ = τ⟩.
//!
//! Every element is written as `uκ + vζ` with `ζ = κ + τ` and `u, v ∈ GF(2)`.
//! In these coordinates addition is XOR of the pairs and multiplication is
//! `(u₁, v₁)·(u₂, v₂) = (u₁u₂, v₁u₂)`, which is what lets codes over E be handled
//! with two binary planes. The literal multiplication table is kept in
//! [`MULTIPLICATION_TABLE`] as a reference for checking that formula.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{parse_header, BitMatrix, BitVector};

/// An element `uκ + vζ` of E.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EElem {
    u: bool,
    v: bool,
}

impl EElem {
    pub const ZERO: EElem = EElem { u: false, v: false };
    pub const KAPPA: EElem = EElem { u: true, v: false };
    pub const TAU: EElem = EElem { u: true, v: true };
    pub const ZETA: EElem = EElem { u: false, v: true };

    /// All four elements in symbol order 0 < κ < τ < ζ.
    pub const ALL: [EElem; 4] = [EElem::ZERO, EElem::KAPPA, EElem::TAU, EElem::ZETA];

    pub const fn new(u: bool, v: bool) -> Self {
        EElem { u, v }
    }

    /// Coefficient of κ in the ζ-adic decomposition.
    pub const fn u(self) -> bool {
        self.u
    }

    /// Coefficient of ζ in the ζ-adic decomposition.
    pub const fn v(self) -> bool {
        self.v
    }

    /// Reduction modulo the maximal ideal J = {0, ζ}.
    pub const fn pi(self) -> bool {
        self.u
    }

    pub fn is_zero(self) -> bool {
        self == EElem::ZERO
    }

    /// Position in the symbol order 0 < κ < τ < ζ.
    pub fn index(self) -> usize {
        match (self.u, self.v) {
            (false, false) => 0,
            (true, false) => 1,
            (true, true) => 2,
            (false, true) => 3,
        }
    }

    pub fn from_index(i: usize) -> EElem {
        EElem::ALL[i]
    }

    pub fn symbol(self) -> char {
        ['0', 'k', 't', 'z'][self.index()]
    }

    pub fn from_symbol(c: char) -> Result<EElem> {
        match c {
            '0' => Ok(EElem::ZERO),
            'k' => Ok(EElem::KAPPA),
            't' => Ok(EElem::TAU),
            'z' => Ok(EElem::ZETA),
            other => Err(Error::UnknownSymbol(other)),
        }
    }
}

impl Add for EElem {
    type Output = EElem;

    fn add(self, rhs: EElem) -> EElem {
        EElem::new(self.u ^ rhs.u, self.v ^ rhs.v)
    }
}

impl AddAssign for EElem {
    fn add_assign(&mut self, rhs: EElem) {
        *self = *self + rhs;
    }
}

impl Mul for EElem {
    type Output = EElem;

    fn mul(self, rhs: EElem) -> EElem {
        EElem::new(self.u & rhs.u, self.v & rhs.u)
    }
}

impl fmt::Display for EElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Debug for EElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = ["0", "κ", "τ", "ζ"][self.index()];
        f.write_str(name)
    }
}

pub fn e_add(x: EElem, y: EElem) -> EElem {
    x + y
}

pub fn e_mul(x: EElem, y: EElem) -> EElem {
    x * y
}

pub fn pi(x: EElem) -> bool {
    x.pi()
}

const O: EElem = EElem::ZERO;
const K: EElem = EElem::KAPPA;
const T: EElem = EElem::TAU;
const Z: EElem = EElem::ZETA;

/// The multiplication table of E, row = left factor, column = right factor,
/// both indexed in the order 0, κ, τ, ζ.
pub const MULTIPLICATION_TABLE: [[EElem; 4]; 4] = [[O, O, O, O], [O, K, K, O], [O, T, T, O], [O, Z, Z, O]];

/// Product read from [`MULTIPLICATION_TABLE`] instead of the closed form.
pub fn table_mul(x: EElem, y: EElem) -> EElem {
    MULTIPLICATION_TABLE[x.index()][y.index()]
}

/// A vector in Eⁿ stored as its u-plane and v-plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EVector {
    u: BitVector,
    v: BitVector,
}

impl EVector {
    pub fn zeros(n: usize) -> Self {
        EVector {
            u: BitVector::zeros(n),
            v: BitVector::zeros(n),
        }
    }

    pub fn from_planes(u: BitVector, v: BitVector) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "planes of length {} and {}",
                u.len(),
                v.len()
            )));
        }
        Ok(EVector { u, v })
    }

    pub fn from_elems(elems: &[EElem]) -> Self {
        let mut x = EVector::zeros(elems.len());
        for (i, &e) in elems.iter().enumerate() {
            x.set(i, e);
        }
        x
    }

    /// κ·b for a binary vector b.
    pub fn kappa(b: &BitVector) -> Self {
        EVector {
            u: b.clone(),
            v: BitVector::zeros(b.len()),
        }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn get(&self, i: usize) -> EElem {
        EElem::new(self.u.get(i), self.v.get(i))
    }

    pub fn set(&mut self, i: usize, e: EElem) {
        self.u.set(i, e.u());
        self.v.set(i, e.v());
    }

    pub fn u_plane(&self) -> &BitVector {
        &self.u
    }

    pub fn v_plane(&self) -> &BitVector {
        &self.v
    }

    /// π applied coordinatewise.
    pub fn residue(&self) -> BitVector {
        self.u.clone()
    }

    pub fn elems(&self) -> Vec<EElem> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.u
            .words()
            .iter()
            .zip(self.v.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Componentwise left multiplication `a·x`.
    pub fn scale_left(&self, a: EElem) -> EVector {
        let n = self.len();
        let pick = |bit: bool| {
            if bit {
                self.u.clone()
            } else {
                BitVector::zeros(n)
            }
        };
        EVector {
            u: pick(a.u()),
            v: pick(a.v()),
        }
    }
}

impl Add for &EVector {
    type Output = EVector;

    fn add(self, rhs: &EVector) -> EVector {
        let mut out = self.clone();
        out.u.xor_assign(&rhs.u);
        out.v.xor_assign(&rhs.v);
        out
    }
}

impl fmt::Display for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EVector({self})")
    }
}

impl FromStr for EVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elems = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(EElem::from_symbol)
            .collect::<Result<Vec<_>>>()?;
        Ok(EVector::from_elems(&elems))
    }
}

/// `⟨w, z⟩ = Σ w_j z_j`, evaluated as `(Σ u_w u_z, Σ v_w u_z)` over GF(2).
pub fn e_inner(w: &EVector, z: &EVector) -> Result<EElem> {
    if w.len() != z.len() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of lengths {} and {}",
            w.len(),
            z.len()
        )));
    }
    Ok(EElem::new(w.u.dot(&z.u), w.v.dot(&z.u)))
}

/// A matrix over E stored as its u-plane and v-plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EMatrix {
    u: BitMatrix,
    v: BitMatrix,
}

impl EMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        EMatrix {
            u: BitMatrix::zeros(rows, cols),
            v: BitMatrix::zeros(rows, cols),
        }
    }

    pub fn from_planes(u: BitMatrix, v: BitMatrix) -> Result<Self> {
        if u.rows() != v.rows() || u.cols() != v.cols() {
            return Err(Error::DimensionMismatch(format!(
                "planes {}x{} and {}x{}",
                u.rows(),
                u.cols(),
                v.rows(),
                v.cols()
            )));
        }
        Ok(EMatrix { u, v })
    }

    /// `κ·g`: every 1 of the binary matrix becomes κ.
    pub fn kappa(g: &BitMatrix) -> Self {
        EMatrix {
            u: g.clone(),
            v: BitMatrix::zeros(g.rows(), g.cols()),
        }
    }

    pub fn from_rows(cols: usize, rows: &[EVector]) -> Result<Self> {
        let mut m = EMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {cols}",
                    r + 1,
                    row.len()
                )));
            }
            for c in 0..cols {
                m.set(r, c, row.get(c));
            }
        }
        Ok(m)
    }

    /// Parses rows written as symbol strings such as `"k0k0"`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let vecs = rows.iter().map(|r| r.parse::<EVector>()).collect::<Result<Vec<_>>>()?;
        let cols = vecs.first().map_or(0, EVector::len);
        EMatrix::from_rows(cols, &vecs)
    }

    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.u.cols()
    }

    pub fn get(&self, r: usize, c: usize) -> EElem {
        EElem::new(self.u.get(r, c), self.v.get(r, c))
    }

    pub fn set(&mut self, r: usize, c: usize, e: EElem) {
        self.u.set(r, c, e.u());
        self.v.set(r, c, e.v());
    }

    pub fn row(&self, r: usize) -> EVector {
        EVector {
            u: self.u.row_vector(r),
            v: self.v.row_vector(r),
        }
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = EVector> + '_ {
        (0..self.rows()).map(|r| self.row(r))
    }

    pub fn u_plane(&self) -> &BitMatrix {
        &self.u
    }

    pub fn v_plane(&self) -> &BitMatrix {
        &self.v
    }

    /// π applied entrywise.
    pub fn residue(&self) -> BitMatrix {
        self.u.clone()
    }

    /// True when every entry is 0 or κ.
    pub fn is_kappa_matrix(&self) -> bool {
        self.v.is_zero()
    }

    /// Parses the `E <rows> <cols>` text format. Symbols may be separated by spaces.
    pub fn parse_text(text: &str) -> Result<EMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing header".into(),
        })?;
        let (rows, cols) = parse_header(header, "E", hline + 1)?;
        let mut m = EMatrix::zeros(rows, cols);
        for r in 0..rows {
            let (lno, line) = lines.next().ok_or(Error::Parse {
                line: hline + 2 + r,
                column: 1,
                message: format!("expected {rows} rows, found {r}"),
            })?;
            parse_row_into(&mut m, r, lno + 1, line)?;
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

    /// Emits the `E <rows> <cols>` text format with space-separated symbols.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Fills row `r` of `m` from one line of symbols; `line_no` is 1-based for diagnostics.
pub(crate) fn parse_row_into(m: &mut EMatrix, r: usize, line_no: usize, line: &str) -> Result<()> {
    let cols = m.cols();
    let mut c = 0;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            continue;
        }
        let e = EElem::from_symbol(ch).map_err(|_| Error::Parse {
            line: line_no,
            column: pos + 1,
            message: format!("unknown symbol {ch:?} (expected one of 0, k, t, z)"),
        })?;
        if c >= cols {
            return Err(Error::Parse {
                line: line_no,
                column: pos + 1,
                message: format!("row longer than {cols} columns"),
            });
        }
        m.set(r, c, e);
        c += 1;
    }
    if c != cols {
        return Err(Error::Parse {
            line: line_no,
            column: line.len() + 1,
            message: format!("row has {c} columns, expected {cols}"),
        });
    }
    Ok(())
}

impl fmt::Display for EMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "E {} {}", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|c| self.get(r, c).symbol().to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EMatrix[{}x{}](", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        f.write_str(")")
    }
}

/// Serialized as a list of row strings such as `"k0k0"`.
impl Serialize for EMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<String> = self.row_vectors().map(|r| r.to_string()).collect();
        rows.serialize(s)
    }
}

impl FromStr for EMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EMatrix::parse_text(s)
    }
}
