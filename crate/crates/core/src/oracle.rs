//! Definition-level computations over Eⁿ by exhaustive scan.
//!
//! Nothing here uses the closed forms from [`crate::code`]: products come from
//! the literal multiplication table, duals are collected by testing every one
//! of the 4ⁿ vectors against every codeword, and distances are pairwise.
//! This is the ground truth the structural formulas are checked against.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{pack, ECode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::ring::{table_mul, EElem, EMatrix};

/// Largest length the oracle will scan (4⁸ = 65536 vectors).
pub const MAX_ORACLE_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// Every vector of Eⁿ in lexicographic symbol order (0 < κ < τ < ζ).
#[derive(Clone, Debug)]
pub struct VectorIterator {
    n: usize,
    next: u64,
    end: u64,
}

impl VectorIterator {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ORACLE_LEN {
            return Err(Error::TooLong { n, max: MAX_ORACLE_LEN });
        }
        Ok(VectorIterator {
            n,
            next: 0,
            end: 1u64 << (2 * n),
        })
    }

    fn decode(n: usize, index: u64) -> Vec<EElem> {
        // first coordinate is the most significant base-4 digit
        (0..n)
            .map(|j| EElem::from_index(((index >> (2 * (n - 1 - j))) & 3) as usize))
            .collect()
    }
}

impl Iterator for VectorIterator {
    type Item = Vec<EElem>;

    fn next(&mut self) -> Option<Vec<EElem>> {
        if self.next == self.end {
            return None;
        }
        let v = VectorIterator::decode(self.n, self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for VectorIterator {}

/// `Σ w_j z_j` with each product read from the multiplication table.
pub fn inner_by_table(w: &[EElem], z: &[EElem]) -> EElem {
    w.iter().zip(z).fold(EElem::ZERO, |acc, (&a, &b)| acc + table_mul(a, b))
}

fn check_len(c: &ECode) -> Result<()> {
    if c.len() > MAX_ORACLE_LEN {
        Err(Error::TooLong {
            n: c.len(),
            max: MAX_ORACLE_LEN,
        })
    } else {
        Ok(())
    }
}

/// All codewords of `c` as symbol vectors.
pub fn enumerate_codewords(c: &ECode) -> Vec<Vec<EElem>> {
    c.codewords().map(|x| x.elems()).collect()
}

fn to_word(x: &[EElem]) -> u64 {
    let n = x.len();
    let (mut u, mut v) = (0u64, 0u64);
    for (j, e) in x.iter().enumerate() {
        u |= (e.u() as u64) << j;
        v |= (e.v() as u64) << j;
    }
    pack(n, u, v)
}

/// Builds a code from an explicit set of vectors and checks that the set is
/// a left submodule, i.e. that the generated code has exactly these elements.
fn code_from_set(n: usize, set: &HashSet<Vec<EElem>>) -> Result<ECode> {
    for x in set {
        for a in EElem::ALL {
            let ax: Vec<EElem> = x.iter().map(|&e| table_mul(a, e)).collect();
            if !set.contains(&ax) {
                return Err(Error::Oracle(format!(
                    "collected set is not closed under left multiplication by {a:?}"
                )));
            }
        }
    }
    let words: Vec<u64> = set.iter().map(|x| to_word(x)).collect();
    let code = ECode::from_doubled(n, &BitMatrix::from_word_rows(2 * n, &words))?;
    if code.dim() >= 64 || (1usize << code.dim()) != set.len() {
        return Err(Error::Oracle(format!(
            "collected {} vectors, which span {} elements",
            set.len(),
            1u128 << code.dim()
        )));
    }
    Ok(code)
}

fn annihilates(side: Side, codewords: &[Vec<EElem>], z: &[EElem]) -> bool {
    codewords.iter().all(|w| {
        let left = || inner_by_table(z, w).is_zero();
        let right = || inner_by_table(w, z).is_zero();
        match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::TwoSided => left() && right(),
        }
    })
}

/// The left, right or two-sided dual collected by scanning all of Eⁿ.
pub fn dual_by_definition(c: &ECode, side: Side) -> Result<ECode> {
    check_len(c)?;
    let n = c.len();
    let codewords = enumerate_codewords(c);
    let total = 1u64 << (2 * n);
    let found: HashSet<Vec<EElem>> = (0..total)
        .into_par_iter()
        .map(|i| VectorIterator::decode(n, i))
        .filter(|z| annihilates(side, &codewords, z))
        .collect();
    code_from_set(n, &found)
}

/// `C ∩ C^⊥` for the chosen dual, by intersecting enumerated sets.
pub fn hull_by_definition(c: &ECode, side: Side) -> Result<ECode> {
    let dual = dual_by_definition(c, side)?;
    let ours: HashSet<Vec<EElem>> = enumerate_codewords(c).into_iter().collect();
    let common: HashSet<Vec<EElem>> = enumerate_codewords(&dual)
        .into_iter()
        .filter(|x| ours.contains(x))
        .collect();
    code_from_set(c.len(), &common)
}

/// Number of coordinates in which `w` and `z` differ.
pub fn distance(w: &[EElem], z: &[EElem]) -> usize {
    w.iter().zip(z).filter(|(a, b)| a != b).count()
}

/// Minimum pairwise distance between distinct codewords.
pub fn min_distance_by_definition(c: &ECode) -> Result<usize> {
    check_len(c)?;
    let words = enumerate_codewords(c);
    if words.len() < 2 {
        return Err(Error::ZeroCode);
    }
    let best = (0..words.len())
        .into_par_iter()
        .filter_map(|i| words[i + 1..].iter().map(|z| distance(&words[i], z)).min())
        .min()
        .expect("at least one pair");
    Ok(best)
}

/// A code generated by up to three random rows of length `n`. About half of
/// the draws use only 0 and κ, so the result is free.
pub fn random_code<R: Rng>(rng: &mut R, n: usize) -> ECode {
    let rows = rng.gen_range(0..=3usize);
    let kappa_only = rng.gen_bool(0.5);
    let mut g = EMatrix::zeros(rows, n);
    for r in 0..rows {
        for c in 0..n {
            let e = if kappa_only {
                if rng.gen_bool(0.5) {
                    EElem::KAPPA
                } else {
                    EElem::ZERO
                }
            } else {
                EElem::from_index(rng.gen_range(0..4))
            };
            g.set(r, c, e);
        }
    }
    ECode::from_generators(&g).expect("n is within range")
}

/// Every disagreement between the closed forms and the definition scans for `c`.
pub fn cross_check(c: &ECode) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let sides = [
        (Side::Left, "left dual", c.left_dual(), "left hull", c.lhull()),
        (Side::Right, "right dual", c.right_dual(), "right hull", c.rhull()),
        (Side::TwoSided, "dual", c.dual(), "hull", c.hull()),
    ];
    for (side, dname, dual, hname, hull) in sides {
        if dual_by_definition(c, side)? != dual {
            out.push(format!("{dname} differs for {:?}", c.basis()));
        }
        if hull_by_definition(c, side)? != hull {
            out.push(format!("{hname} differs for {:?}", c.basis()));
        }
    }
    let closed = c.min_distance();
    let scanned = min_distance_by_definition(c);
    if closed != scanned {
        out.push(format!("min distance {closed:?} vs {scanned:?} for {:?}", c.basis()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub checked: usize,
    pub free: usize,
    pub mismatches: Vec<String>,
}

/// Cross-checks `count` random codes with lengths `1..=max_n`; deterministic in `seed`.
pub fn sweep(seed: u64, count: usize, max_n: usize) -> Result<SweepReport> {
    if max_n == 0 || max_n > MAX_ORACLE_LEN {
        return Err(Error::OutOfRange(format!(
            "oracle length must be in 1..={MAX_ORACLE_LEN}, got {max_n}"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let codes: Vec<ECode> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_code(&mut rng, n)
        })
        .collect();
    let results = codes.par_iter().map(cross_check).collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        seed,
        checked: codes.len(),
        free: codes.iter().filter(|c| c.is_free()).count(),
        mismatches: results.into_iter().flatten().collect(),
    })
}
