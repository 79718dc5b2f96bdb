//! Permutation equivalence of binary codes and of free E-codes.
//!
//! Two binary codes are compared by cheap invariants first (dimension,
//! weight enumerator, hull dimension, column signatures) and then by an
//! exhaustive backtracking search over column assignments. A column's
//! signature counts, for every weight `w`, the codewords of weight `w` that
//! are nonzero in that column; only columns with equal signatures can be
//! matched. Partial assignments are pruned by comparing the punctured and the
//! shortened codes on the columns assigned so far.
//!
//! Free E-codes are equivalent exactly when their residue codes are, and a
//! witness for the residues is a witness for the E-codes.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::code::ECode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};
use crate::ring::EMatrix;

/// A coordinate permutation. Applying it sends a vector `x` to `y` with
/// `y[i] = x[mapping[i]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Permutation> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(Error::InvalidPermutation(format!(
                    "{mapping:?} is not a bijection on 0..{n}"
                )));
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { mapping: inv }
    }

    /// Applying `self.then(other)` is applying `self` and then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "composing permutations of {} and {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            mapping: other.mapping.iter().map(|&j| self.mapping[j]).collect(),
        })
    }

    /// Nontrivial cycles of `i ↦ mapping[i]`, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.mapping[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.mapping[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Reads cycle notation with 1-based points, e.g. `(1 3)(2 4 5)`; `()` is the identity.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation> {
        let bad = |msg: String| Error::InvalidPermutation(msg);
        let mut mapping: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected '(' in {s:?}")))?;
            let close = body.find(')').ok_or_else(|| bad(format!("unclosed cycle in {s:?}")))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if (1..=n).contains(&p) => Ok(p - 1),
                    _ => Err(bad(format!("bad point {t:?} for {n} coordinates"))),
                })
                .collect::<Result<Vec<_>>>()?;
            for (i, &p) in points.iter().enumerate() {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(bad(format!("point {} repeated", p + 1)));
                }
                mapping[p] = points[(i + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::new(mapping)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

fn check_perm(n: usize, p: &Permutation) -> Result<()> {
    if p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation on {} points applied to length {n}",
            p.len()
        )));
    }
    Ok(())
}

/// Permutes the columns of a binary matrix.
pub fn permute_columns(m: &BitMatrix, p: &Permutation) -> Result<BitMatrix> {
    check_perm(m.cols(), p)?;
    Ok(m.select_columns(p.mapping()))
}

/// Permutes the columns of an E-matrix.
pub fn permute_ematrix(m: &EMatrix, p: &Permutation) -> Result<EMatrix> {
    check_perm(m.cols(), p)?;
    EMatrix::from_planes(
        m.u_plane().select_columns(p.mapping()),
        m.v_plane().select_columns(p.mapping()),
    )
}

/// `α(C)`: the same permutation applied to the u-plane and the v-plane.
pub fn apply_permutation(c: &ECode, p: &Permutation) -> Result<ECode> {
    let n = c.len();
    check_perm(n, p)?;
    if let Some(g) = c.source_generators() {
        return ECode::from_generators(&permute_ematrix(g, p)?);
    }
    let cols: Vec<usize> = p
        .mapping()
        .iter()
        .copied()
        .chain(p.mapping().iter().map(|&j| n + j))
        .collect();
    ECode::from_doubled(n, &c.basis().select_columns(&cols))
}

/// Number of codewords of each Hamming weight `0..=n` in the row space of `g`.
pub fn weight_enumerator(g: &BitMatrix) -> Vec<u64> {
    let mut counts = vec![0u64; g.cols() + 1];
    counts[0] = 1;
    let basis = gf2::rref(g).reduced;
    gf2::for_each_codeword(&basis, |w| {
        let wt: u32 = w.iter().map(|x| x.count_ones()).sum();
        counts[wt as usize] += 1;
    });
    counts
}

/// Dimension of `C ∩ C^⊥` for the binary code spanned by `g`.
pub fn binary_hull_dimension(g: &BitMatrix) -> usize {
    let basis = gf2::rref(g).reduced;
    let gram = gf2::mul_transpose(&basis, &basis).expect("same column count");
    basis.rows() - gf2::rank(&gram)
}

/// Permutation-invariant data of a binary code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub n: usize,
    pub dim: usize,
    pub weight_enumerator: Vec<u64>,
    pub hull_dim: usize,
    /// Column signatures, sorted.
    pub signatures: Vec<Vec<u32>>,
}

/// A binary code with everything the search needs precomputed. At most 64 columns.
#[derive(Clone, Debug)]
pub struct Prepared {
    basis: BitMatrix,
    words: Vec<u64>,
    column_signature: Vec<Vec<u32>>,
    invariants: Invariants,
}

impl Prepared {
    pub fn new(g: &BitMatrix) -> Prepared {
        let n = g.cols();
        assert!(n <= 64, "equivalence search supports at most 64 columns");
        let basis = gf2::rref(g).reduced;
        let mut words = vec![0u64];
        gf2::for_each_codeword(&basis, |w| words.push(w.first().copied().unwrap_or(0)));
        let mut column_signature = vec![vec![0u32; n + 1]; n];
        let mut weight_enumerator = vec![0u64; n + 1];
        for &w in &words {
            let wt = w.count_ones() as usize;
            weight_enumerator[wt] += 1;
            let mut bits = w;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                column_signature[j][wt] += 1;
                bits &= bits - 1;
            }
        }
        let mut signatures = column_signature.clone();
        signatures.sort();
        let invariants = Invariants {
            n,
            dim: basis.rows(),
            weight_enumerator,
            hull_dim: binary_hull_dimension(&basis),
            signatures,
        };
        Prepared {
            basis,
            words,
            column_signature,
            invariants,
        }
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }
}

/// Codewords supported inside `cols`, rewritten with bit `t` for `cols[t]`, sorted.
fn shortened(words: &[u64], cols: &[usize]) -> Vec<u64> {
    let mask: u64 = cols.iter().fold(0, |m, &c| m | (1u64 << c));
    let mut out: Vec<u64> = words
        .iter()
        .filter(|&&w| w & !mask == 0)
        .map(|&w| {
            cols.iter()
                .enumerate()
                .fold(0u64, |acc, (t, &c)| acc | (((w >> c) & 1) << t))
        })
        .collect();
    out.sort_unstable();
    out
}

fn consistent(a: &Prepared, b: &Prepared, a_cols: &[usize], b_cols: &[usize]) -> bool {
    let pa = gf2::rref(&a.basis.select_columns(a_cols)).reduced;
    let pb = gf2::rref(&b.basis.select_columns(b_cols)).reduced;
    pa == pb && shortened(&a.words, a_cols) == shortened(&b.words, b_cols)
}

struct Search<'a> {
    a: &'a Prepared,
    b: &'a Prepared,
    order: Vec<usize>,
    a_cols: Vec<usize>,
    b_cols: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let bc = self.order[depth];
        let want = &self.b.column_signature[bc];
        for ac in 0..self.used.len() {
            if self.used[ac] || &self.a.column_signature[ac] != want {
                continue;
            }
            self.used[ac] = true;
            self.a_cols.push(ac);
            self.b_cols.push(bc);
            if consistent(self.a, self.b, &self.a_cols, &self.b_cols) && self.run(depth + 1) {
                return true;
            }
            self.a_cols.pop();
            self.b_cols.pop();
            self.used[ac] = false;
        }
        false
    }
}

/// A permutation `σ` with `σ(rowspace(a)) = rowspace(b)` for prepared codes.
pub fn prepared_equivalent(a: &Prepared, b: &Prepared) -> Option<Permutation> {
    if a.invariants != b.invariants {
        return None;
    }
    let n = a.invariants.n;
    let mut class_size: HashMap<&[u32], usize> = HashMap::new();
    for s in &b.column_signature {
        *class_size.entry(s.as_slice()).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| {
        (
            class_size[b.column_signature[c].as_slice()],
            b.column_signature[c].clone(),
            c,
        )
    });
    let mut search = Search {
        a,
        b,
        order,
        a_cols: Vec::with_capacity(n),
        b_cols: Vec::with_capacity(n),
        used: vec![false; n],
    };
    if !search.run(0) {
        return None;
    }
    let mut mapping = vec![0; n];
    for (&bc, &ac) in search.b_cols.iter().zip(&search.a_cols) {
        mapping[bc] = ac;
    }
    let sigma = Permutation::new(mapping).expect("search assigns a bijection");
    let image = gf2::rref(&a.basis.select_columns(sigma.mapping())).reduced;
    assert!(image == b.basis, "equivalence witness failed verification");
    Some(sigma)
}

/// A column permutation taking the row space of `a` onto that of `b`, if one exists.
/// Both matrices need the same number (at most 64) of columns.
pub fn binary_equivalent(a: &BitMatrix, b: &BitMatrix) -> Option<Permutation> {
    if a.cols() != b.cols() {
        return None;
    }
    prepared_equivalent(&Prepared::new(a), &Prepared::new(b))
}

/// A permutation `α` with `α(c) = d` for free codes, found on the residues.
pub fn e_equivalent(c: &ECode, d: &ECode) -> Result<Option<Permutation>> {
    if !c.is_free() || !d.is_free() {
        return Err(Error::NotFree);
    }
    if c.len() != d.len() {
        return Ok(None);
    }
    let Some(sigma) = binary_equivalent(&c.residue(), &d.residue()) else {
        return Ok(None);
    };
    if apply_permutation(c, &sigma)? != *d {
        return Err(Error::Oracle(format!(
            "residue witness {sigma} does not carry the E-code"
        )));
    }
    Ok(Some(sigma))
}
