//! Linear codes over E (left E-submodules of Eⁿ).
//!
//! A code is stored as a GF(2) subspace of the doubled space GF(2)^(2n):
//! a codeword `uκ + vζ` becomes the row `(u | v)`, u-plane in columns
//! `0..n` and v-plane in columns `n..2n`. The basis is kept in reduced row
//! echelon form, so equality of codes is equality of bases, and because the
//! u-plane comes first the rows whose pivot lies in the v-plane span exactly
//! the torsion part `{(0 | v)} ∩ C`.
//!
//! The inner product only looks at the u-plane of its right argument:
//! `⟨w, z⟩ = (Σ u_w u_z, Σ v_w u_z)`. From this the duals have closed forms:
//!
//! * left dual  `{(s | t) : s, t ∈ C_Res^⊥}`
//! * right dual `{(s | t) : s ∈ C_Tor^⊥, t arbitrary}`
//! * dual       the intersection of the two.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, low_mask, BitMatrix, BitVector};
use crate::ring::{EMatrix, EVector};

/// Longest supported code; keeps a doubled codeword inside one machine word.
pub const MAX_LEN: usize = 32;

/// A left E-submodule of Eⁿ.
#[derive(Clone)]
pub struct ECode {
    n: usize,
    basis: BitMatrix,
    generators: Option<EMatrix>,
}

impl PartialEq for ECode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl Eq for ECode {}

impl fmt::Debug for ECode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ECode(n={}, basis={:?})", self.n, self.basis)
    }
}

pub(crate) fn pack(n: usize, u: u64, v: u64) -> u64 {
    u | (v << n)
}

pub(crate) fn unpack(n: usize, w: u64) -> (u64, u64) {
    let mask = low_mask(n);
    (w & mask, (w >> n) & mask)
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_LEN {
        Err(Error::TooLong { n, max: MAX_LEN })
    } else {
        Ok(())
    }
}

impl ECode {
    /// Smallest left submodule whose additive group contains the given
    /// doubled rows. For a row `x = (u | v)` this adds `κ∘x = (u | 0)` and
    /// `ζ∘x = (0 | u)`; `τ∘x` is their sum.
    pub(crate) fn span_words(n: usize, rows: impl IntoIterator<Item = u64>) -> ECode {
        let mut m = BitMatrix::empty(2 * n);
        for w in rows {
            let (u, _) = unpack(n, w);
            for x in [w, pack(n, u, 0), pack(n, 0, u)] {
                if x != 0 {
                    m.push_words(&[x]);
                }
            }
        }
        ECode {
            n,
            basis: gf2::rref(&m).reduced,
            generators: None,
        }
    }

    /// Code whose additive group is already `basis` (must be closed under
    /// left multiplication).
    fn from_closed_basis(n: usize, basis: &BitMatrix) -> ECode {
        debug_assert_eq!(basis.cols(), 2 * n);
        ECode {
            n,
            basis: gf2::rref(basis).reduced,
            generators: None,
        }
    }

    /// The code generated by the rows of `g`: the smallest left E-submodule
    /// of Eⁿ containing every row.
    pub fn from_generators(g: &EMatrix) -> Result<ECode> {
        let n = g.cols();
        check_len(n)?;
        let rows = (0..g.rows()).map(|r| pack(n, g.u_plane().word_row(r), g.v_plane().word_row(r)));
        let mut code = ECode::span_words(n, rows);
        code.generators = Some(g.clone());
        Ok(code)
    }

    /// Submodule closure of arbitrary rows in doubled coordinates (`2n` columns).
    pub fn from_doubled(n: usize, rows: &BitMatrix) -> Result<ECode> {
        check_len(n)?;
        if rows.cols() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "doubled rows need {} columns, got {}",
                2 * n,
                rows.cols()
            )));
        }
        Ok(ECode::span_words(n, (0..rows.rows()).map(|r| rows.word_row(r))))
    }

    /// The free code generated by `κ·g`.
    pub fn free_from_residue(g: &BitMatrix) -> Result<ECode> {
        ECode::from_generators(&EMatrix::kappa(g))
    }

    pub fn zero(n: usize) -> Result<ECode> {
        check_len(n)?;
        Ok(ECode {
            n,
            basis: BitMatrix::empty(2 * n),
            generators: None,
        })
    }

    /// The whole space Eⁿ.
    pub fn full(n: usize) -> Result<ECode> {
        check_len(n)?;
        Ok(ECode {
            n,
            basis: BitMatrix::identity(2 * n),
            generators: None,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension of the additive group over GF(2); `|C| = 2^dim`.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    /// RREF basis in doubled coordinates.
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    /// The matrix this code was built from, if any.
    pub fn source_generators(&self) -> Option<&EMatrix> {
        self.generators.as_ref()
    }

    fn word(&self, r: usize) -> u64 {
        self.basis.word_row(r)
    }

    pub fn contains(&self, x: &EVector) -> bool {
        if x.len() != self.n {
            return false;
        }
        self.contains_word(vector_to_word(x))
    }

    pub(crate) fn contains_word(&self, mut w: u64) -> bool {
        for r in 0..self.basis.rows() {
            let row = self.word(r);
            let pivot = row.trailing_zeros();
            if (w >> pivot) & 1 == 1 {
                w ^= row;
            }
        }
        w == 0
    }

    /// Every codeword as a packed doubled word, zero first, then Gray-code order.
    pub(crate) fn packed_codewords(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(1 << self.dim());
        out.push(0);
        gf2::for_each_codeword(&self.basis, |w| out.push(w[0]));
        out
    }

    pub fn codewords(&self) -> impl Iterator<Item = EVector> + '_ {
        self.packed_codewords()
            .into_iter()
            .map(move |w| word_to_vector(self.n, w))
    }

    /// Residue code `π(C)`, as an RREF basis.
    pub fn residue(&self) -> BitMatrix {
        let n = self.n;
        let rows: Vec<u64> = (0..self.dim())
            .map(|r| self.word(r))
            .filter(|w| w & low_mask(n) != 0)
            .map(|w| unpack(n, w).0)
            .collect();
        gf2::rref(&BitMatrix::from_word_rows(n, &rows)).reduced
    }

    /// Torsion code `{v : vζ ∈ C}`, as an RREF basis.
    pub fn torsion(&self) -> BitMatrix {
        let n = self.n;
        let rows: Vec<u64> = (0..self.dim())
            .map(|r| self.word(r))
            .filter(|w| w & low_mask(n) == 0)
            .map(|w| unpack(n, w).1)
            .collect();
        gf2::rref(&BitMatrix::from_word_rows(n, &rows)).reduced
    }

    /// `C_Res = C_Tor`.
    pub fn is_free(&self) -> bool {
        self.residue() == self.torsion()
    }

    /// Size of a minimal generating set, defined for free codes.
    pub fn rank(&self) -> Option<usize> {
        self.is_free().then(|| self.residue().rows())
    }

    fn from_planes_of(n: usize, s: &BitMatrix, t: &BitMatrix) -> ECode {
        let mut m = BitMatrix::empty(2 * n);
        for r in 0..s.rows() {
            m.push_words(&[pack(n, s.word_row(r), 0)]);
        }
        for r in 0..t.rows() {
            m.push_words(&[pack(n, 0, t.word_row(r))]);
        }
        ECode::from_closed_basis(n, &m)
    }

    /// `{z : ⟨z, w⟩ = 0 for all w ∈ C}`.
    pub fn left_dual(&self) -> ECode {
        let perp = gf2::nullspace(&self.residue());
        ECode::from_planes_of(self.n, &perp, &perp)
    }

    /// `{z : ⟨w, z⟩ = 0 for all w ∈ C}`.
    pub fn right_dual(&self) -> ECode {
        let n = self.n;
        let mut planes = BitMatrix::empty(n);
        for r in 0..self.dim() {
            let (u, v) = unpack(n, self.word(r));
            planes.push_words(&[u]);
            planes.push_words(&[v]);
        }
        let perp = gf2::nullspace(&planes);
        ECode::from_planes_of(n, &perp, &BitMatrix::identity(n))
    }

    /// Two-sided dual, the intersection of the left and right duals.
    pub fn dual(&self) -> ECode {
        self.left_dual().intersect(&self.right_dual())
    }

    /// `C ∩ D`.
    pub fn intersect(&self, other: &ECode) -> ECode {
        assert_eq!(self.n, other.n, "intersecting codes of different length");
        let basis = gf2::intersect_row_spaces(&self.basis, &other.basis).expect("column counts agree");
        ECode {
            n: self.n,
            basis,
            generators: None,
        }
    }

    /// `C + D`.
    pub fn sum(&self, other: &ECode) -> ECode {
        assert_eq!(self.n, other.n, "adding codes of different length");
        let basis = gf2::sum_row_spaces(&self.basis, &other.basis).expect("column counts agree");
        ECode {
            n: self.n,
            basis,
            generators: None,
        }
    }

    /// `C ⊆ D`.
    pub fn is_subcode_of(&self, other: &ECode) -> bool {
        self.n == other.n && (0..self.dim()).all(|r| other.contains_word(self.word(r)))
    }

    pub fn lhull(&self) -> ECode {
        self.intersect(&self.left_dual())
    }

    pub fn rhull(&self) -> ECode {
        self.intersect(&self.right_dual())
    }

    pub fn hull(&self) -> ECode {
        self.intersect(&self.dual())
    }

    /// `κG` for `G` a basis of `Hull(C_Res)`; generates `Hull(C)` when C is free.
    pub fn hull_generator_free(&self) -> Result<EMatrix> {
        if !self.is_free() {
            return Err(Error::NotFree);
        }
        let res = self.residue();
        let hull = gf2::intersect_row_spaces(&res, &gf2::nullspace(&res))?;
        Ok(EMatrix::kappa(&hull))
    }

    /// Rank of the hull of a free code, computed as `k - rank(G·Gᵀ)` on a
    /// residue generator matrix `G`.
    pub fn hull_rank(&self) -> Result<usize> {
        if !self.is_free() {
            return Err(Error::NotFree);
        }
        let g = self.residue();
        let gram = gf2::mul_transpose(&g, &g)?;
        Ok(g.rows() - gf2::rank(&gram))
    }

    /// Minimum number of nonzero coordinates over nonzero codewords.
    ///
    /// Free codes use the residue: a codeword `κa + ζb` with `a, b ∈ C_Res`
    /// has support `supp(a) ∪ supp(b)`, so the minimum is reached with `b = 0`.
    pub fn min_distance(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        if self.is_free() {
            gf2::min_weight_rowspace(&self.residue())
        } else {
            self.min_distance_enumerated()
        }
    }

    /// Minimum distance by scanning every codeword in doubled coordinates.
    pub fn min_distance_enumerated(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let n = self.n;
        let mut best = usize::MAX;
        gf2::for_each_codeword(&self.basis, |w| {
            let (u, v) = unpack(n, w[0]);
            let wt = (u | v).count_ones() as usize;
            if wt > 0 && wt < best {
                best = wt;
            }
        });
        Ok(best)
    }

    /// A small E-generator matrix for this code.
    ///
    /// Free codes get `κ·G_Res`. Otherwise the rows of the basis with a pivot
    /// in the u-plane are kept as they are and completed by `ζt` for torsion
    /// vectors `t` not already reached.
    pub fn generator_matrix(&self) -> EMatrix {
        let n = self.n;
        if self.is_free() {
            return EMatrix::kappa(&self.residue());
        }
        let mut gens: Vec<u64> = (0..self.dim())
            .map(|r| self.word(r))
            .filter(|w| w & low_mask(n) != 0)
            .collect();
        let mut spanned = ECode::span_words(n, gens.iter().copied());
        let tor = self.torsion();
        for r in 0..tor.rows() {
            let z = pack(n, 0, tor.word_row(r));
            if !spanned.contains_word(z) {
                gens.push(z);
                spanned = ECode::span_words(n, gens.iter().copied());
            }
        }
        let rows: Vec<EVector> = gens.iter().map(|&w| word_to_vector(n, w)).collect();
        EMatrix::from_rows(n, &rows).expect("rows have length n")
    }

    pub fn summarize(&self) -> CodeSummary {
        let free = self.is_free();
        CodeSummary {
            n: self.n,
            k: if free { self.residue().rows() } else { self.dim() },
            d: self.min_distance().ok(),
            hull_rank: self.hull_rank().ok(),
            free,
        }
    }
}

pub(crate) fn word_to_vector(n: usize, w: u64) -> EVector {
    let (u, v) = unpack(n, w);
    let ub = BitVector::from_words(n, &words_of(n, u));
    let vb = BitVector::from_words(n, &words_of(n, v));
    EVector::from_planes(ub, vb).expect("planes have equal length")
}

fn words_of(n: usize, w: u64) -> Vec<u64> {
    if n == 0 {
        Vec::new()
    } else {
        vec![w]
    }
}

pub(crate) fn vector_to_word(x: &EVector) -> u64 {
    let first = |b: &BitVector| b.words().first().copied().unwrap_or(0);
    pack(x.len(), first(x.u_plane()), first(x.v_plane()))
}

/// The parameters reported for a code: `[n, k, d]`, hull-rank and freeness.
///
/// `k` is the rank for free codes and the GF(2) dimension of the additive
/// group otherwise. `d` is absent for the zero code and `hull_rank` for
/// non-free codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub hull_rank: Option<usize>,
    pub free: bool,
}

impl fmt::Display for CodeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.map_or("-".to_string(), |d| d.to_string());
        write!(f, "[{}, {}, {}]", self.n, self.k, d)?;
        match self.hull_rank {
            Some(l) => write!(f, " hull-rank {l}")?,
            None => f.write_str(" hull-rank -")?,
        }
        f.write_str(if self.free { " free" } else { " not free" })
    }
}
