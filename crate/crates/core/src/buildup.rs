//! Build-up constructions: a free `[n, k]` code with hull-rank `l` and a
//! vector `u ∈ GF(2)ⁿ` give a free `[n+2, k+1]` code together with its
//! parity-check matrix.
//!
//! With `r_i` the rows of a residue generator matrix `G`, `s_j` the rows of a
//! residue parity-check matrix `H`, `v_i = ⟨u, r_i⟩` and `w_j = ⟨u, s_j⟩`, the
//! new generator matrix is `κ` times
//!
//! ```text
//!            first row      row i + 1
//!   I     (1, 0 | u)     (v_i, v_i | r_i)     hull-rank l + 1,   ⟨u,u⟩ = 1
//!   II    (1, 1 | u)     (0,   0   | r_i)     hull-rank l + 1,   ⟨u,u⟩ = 0, all v_i = 0
//!   III   (1, 1 | u)     (v_i, 0   | r_i)     hull-rank l, l+1 or l+2, ⟨u,u⟩ = 0, some v_i = 1
//!   IV    (1, 0 | u)     (v_i, v_i | r_i)     hull-rank l,       ⟨u,u⟩ = 0
//! ```
//!
//! and the parity-check matrix is `κ` times
//!
//! ```text
//!   I     (1, 0 | u)     (w_j, w_j | s_j)
//!   II    (1, 1 | u)     (0,   w_j | s_j)
//!   III   (1, 1 | u)     (0,   w_j | s_j)
//!   IV    (0, 1 | u)     (w_j, w_j | s_j)
//! ```
//!
//! The hull-rank of every output is recomputed from scratch and compared with
//! the predicted value; a disagreement is an error.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::code::ECode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};
use crate::ring::EMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    I,
    II,
    III,
    IV,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::I, Method::II, Method::III, Method::IV];

    fn name(self) -> &'static str {
        match self {
            Method::I => "I",
            Method::II => "II",
            Method::III => "III",
            Method::IV => "IV",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Method::I),
            "II" | "2" => Ok(Method::II),
            "III" | "3" => Ok(Method::III),
            "IV" | "4" => Ok(Method::IV),
            other => Err(Error::OutOfRange(format!(
                "unknown construction {other:?} (expected I, II, III or IV)"
            ))),
        }
    }
}

/// A free code, the auxiliary vector `u` and the construction to apply.
#[derive(Clone, Debug)]
pub struct BuildInput {
    pub code: ECode,
    pub u: BitVector,
    pub method: Method,
}

impl BuildInput {
    pub fn build(&self) -> Result<BuildOutput> {
        construct(self.method, &self.code, &self.u)
    }
}

#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub method: Method,
    /// The code generated by `generator`.
    pub code: ECode,
    pub generator: EMatrix,
    pub parity_check: EMatrix,
    pub input_hull_rank: usize,
    /// Hull-rank of `code`, recomputed.
    pub hull_rank: usize,
    /// Hull-ranks allowed by the construction.
    pub predicted_hull_ranks: Vec<usize>,
    /// `v_i = ⟨u, r_i⟩`.
    pub v: Vec<bool>,
    /// `w_j = ⟨u, s_j⟩`.
    pub w: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildSummary {
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub input_hull_rank: usize,
    pub hull_rank: usize,
    pub predicted_hull_ranks: Vec<usize>,
    pub v: Vec<u8>,
    pub w: Vec<u8>,
    pub parity_check_valid: bool,
}

impl BuildOutput {
    pub fn summary(&self) -> BuildSummary {
        let bits = |xs: &[bool]| xs.iter().map(|&b| b as u8).collect();
        BuildSummary {
            method: self.method,
            n: self.code.len(),
            k: self.code.residue().rows(),
            d: self.code.min_distance().ok(),
            input_hull_rank: self.input_hull_rank,
            hull_rank: self.hull_rank,
            predicted_hull_ranks: self.predicted_hull_ranks.clone(),
            v: bits(&self.v),
            w: bits(&self.w),
            parity_check_valid: validate_parity_check(self),
        }
    }
}

/// Rows `r_i` used for the construction: the residue of the matrix the code
/// was built from when that is a κ-matrix with independent rows, otherwise
/// the RREF basis of the residue code.
pub fn residue_generator(c: &ECode) -> BitMatrix {
    let res = c.residue();
    if let Some(g) = c.source_generators() {
        let rows = g.residue();
        if g.is_kappa_matrix() && rows.rows() == res.rows() && gf2::rank(&rows) == res.rows() {
            return rows;
        }
    }
    res
}

fn dots(u: &BitVector, m: &BitMatrix) -> Vec<bool> {
    m.row_vectors().map(|r| u.dot(&r)).collect()
}

/// `(a, b | row)` as a binary row of length `n + 2`.
fn extended(a: bool, b: bool, row: &BitVector) -> BitVector {
    let n = row.len();
    let mut out = BitVector::zeros(n + 2);
    out.set(0, a);
    out.set(1, b);
    for j in 0..n {
        out.set(j + 2, row.get(j));
    }
    out
}

struct Layout {
    first_g: (bool, bool),
    g_prefix: Box<dyn Fn(usize) -> (bool, bool)>,
    first_h: (bool, bool),
    h_prefix: Box<dyn Fn(usize) -> (bool, bool)>,
}

struct Prepared {
    g: BitMatrix,
    h: BitMatrix,
    v: Vec<bool>,
    w: Vec<bool>,
    l: usize,
}

fn prepare(c: &ECode, u: &BitVector) -> Result<Prepared> {
    if !c.is_free() {
        return Err(Error::NotFree);
    }
    if u.len() != c.len() {
        return Err(Error::DimensionMismatch(format!(
            "u has length {}, code has length {}",
            u.len(),
            c.len()
        )));
    }
    let g = residue_generator(c);
    let h = gf2::nullspace(&g);
    let v = dots(u, &g);
    let w = dots(u, &h);
    let l = c.hull_rank()?;
    Ok(Prepared { g, h, v, w, l })
}

fn assemble(method: Method, p: Prepared, u: &BitVector, layout: Layout, predicted: Vec<usize>) -> Result<BuildOutput> {
    let n = u.len();
    let mut g1 = BitMatrix::empty(n + 2);
    g1.push_row(&extended(layout.first_g.0, layout.first_g.1, u));
    for (i, r) in p.g.row_vectors().enumerate() {
        let (a, b) = (layout.g_prefix)(i);
        g1.push_row(&extended(a, b, &r));
    }
    let mut h1 = BitMatrix::empty(n + 2);
    h1.push_row(&extended(layout.first_h.0, layout.first_h.1, u));
    for (j, s) in p.h.row_vectors().enumerate() {
        let (a, b) = (layout.h_prefix)(j);
        h1.push_row(&extended(a, b, &s));
    }
    let generator = EMatrix::kappa(&g1);
    let parity_check = EMatrix::kappa(&h1);
    let code = ECode::from_generators(&generator)?;
    let k = p.g.rows();
    if !code.is_free() || code.residue().rows() != k + 1 {
        return Err(Error::ConstructionInvariant(format!(
            "Construction {method} did not produce a free [{}, {}] code",
            n + 2,
            k + 1
        )));
    }
    let hull_rank = code.hull_rank()?;
    Ok(BuildOutput {
        method,
        code,
        generator,
        parity_check,
        input_hull_rank: p.l,
        hull_rank,
        predicted_hull_ranks: predicted,
        v: p.v,
        w: p.w,
    })
}

fn enforce(out: BuildOutput) -> Result<BuildOutput> {
    if out.predicted_hull_ranks.contains(&out.hull_rank) {
        Ok(out)
    } else {
        Err(Error::PredictionViolated {
            construction: out.method.name(),
            actual: out.hull_rank,
            predicted: out.predicted_hull_ranks,
        })
    }
}

pub fn construct(method: Method, c: &ECode, u: &BitVector) -> Result<BuildOutput> {
    match method {
        Method::I => construct_i(c, u),
        Method::II => construct_ii(c, u),
        Method::III => construct_iii(c, u),
        Method::IV => construct_iv(c, u),
    }
}

/// Requires `⟨u,u⟩ = 1`; hull-rank goes from `l` to `l + 1`.
pub fn construct_i(c: &ECode, u: &BitVector) -> Result<BuildOutput> {
    let p = prepare(c, u)?;
    if !u.dot(u) {
        return Err(Error::Precondition {
            construction: "I",
            condition: "⟨u,u⟩=1",
        });
    }
    let (v, w) = (p.v.clone(), p.w.clone());
    let l = p.l;
    let layout = Layout {
        first_g: (true, false),
        g_prefix: Box::new(move |i| (v[i], v[i])),
        first_h: (true, false),
        h_prefix: Box::new(move |j| (w[j], w[j])),
    };
    enforce(assemble(Method::I, p, u, layout, vec![l + 1])?)
}

/// Requires `⟨u,u⟩ = 0` and `⟨u, r_i⟩ = 0` for all `i`; hull-rank `l + 1`.
pub fn construct_ii(c: &ECode, u: &BitVector) -> Result<BuildOutput> {
    let p = prepare(c, u)?;
    if u.dot(u) {
        return Err(Error::Precondition {
            construction: "II",
            condition: "⟨u,u⟩=0",
        });
    }
    if p.v.iter().any(|&b| b) {
        return Err(Error::Precondition {
            construction: "II",
            condition: "⟨u,r_i⟩=0 for every row r_i of G",
        });
    }
    let w = p.w.clone();
    let l = p.l;
    let layout = Layout {
        first_g: (true, true),
        g_prefix: Box::new(|_| (false, false)),
        first_h: (true, true),
        h_prefix: Box::new(move |j| (false, w[j])),
    };
    enforce(assemble(Method::II, p, u, layout, vec![l + 1])?)
}

fn check_iii(p: &Prepared, u: &BitVector) -> Result<()> {
    if u.dot(u) {
        return Err(Error::Precondition {
            construction: "III",
            condition: "⟨u,u⟩=0",
        });
    }
    if !p.v.iter().any(|&b| b) {
        return Err(Error::Precondition {
            construction: "III",
            condition: "not all v_i = 0",
        });
    }
    Ok(())
}

/// Requires `⟨u,u⟩ = 0` and some `v_i = 1`; hull-rank is `l`, `l + 1` or `l + 2`.
///
/// Row `i + 1` carries `κv_i` in the first new coordinate.
pub fn construct_iii(c: &ECode, u: &BitVector) -> Result<BuildOutput> {
    let p = prepare(c, u)?;
    check_iii(&p, u)?;
    let (v, w) = (p.v.clone(), p.w.clone());
    let l = p.l;
    let layout = Layout {
        first_g: (true, true),
        g_prefix: Box::new(move |i| (v[i], false)),
        first_h: (true, true),
        h_prefix: Box::new(move |j| (false, w[j])),
    };
    enforce(assemble(Method::III, p, u, layout, vec![l, l + 1, l + 2])?)
}

/// Construction III with `κv_1` repeated in every row below the first, as the
/// block matrix is literally printed. The hull-rank prediction is reported but
/// not enforced, and the parity-check matrix is generally not valid for it.
pub fn construct_iii_literal(c: &ECode, u: &BitVector) -> Result<BuildOutput> {
    let p = prepare(c, u)?;
    check_iii(&p, u)?;
    let v1 = p.v[0];
    let w = p.w.clone();
    let l = p.l;
    let layout = Layout {
        first_g: (true, true),
        g_prefix: Box::new(move |_| (v1, false)),
        first_h: (true, true),
        h_prefix: Box::new(move |j| (false, w[j])),
    };
    assemble(Method::III, p, u, layout, vec![l, l + 1, l + 2])
}

/// Requires `⟨u,u⟩ = 0`; hull-rank stays `l`.
pub fn construct_iv(c: &ECode, u: &BitVector) -> Result<BuildOutput> {
    let p = prepare(c, u)?;
    if u.dot(u) {
        return Err(Error::Precondition {
            construction: "IV",
            condition: "⟨u,u⟩=0",
        });
    }
    let (v, w) = (p.v.clone(), p.w.clone());
    let l = p.l;
    let layout = Layout {
        first_g: (true, false),
        g_prefix: Box::new(move |i| (v[i], v[i])),
        first_h: (false, true),
        h_prefix: Box::new(move |j| (w[j], w[j])),
    };
    enforce(assemble(Method::IV, p, u, layout, vec![l])?)
}

/// True iff the parity-check matrix generates the two-sided dual of the output code.
pub fn validate_parity_check(out: &BuildOutput) -> bool {
    match ECode::from_generators(&out.parity_check) {
        Ok(h) => h == out.code.dual(),
        Err(_) => false,
    }
}
