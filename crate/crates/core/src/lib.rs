//! Linear codes over the non-unital ring `E = ⟨κ, τ | 2κ = 2τ = 0, κ² = κ, τ² = τ, κτ = κ, τκ = τ⟩`.
//!
//! An element is written `uκ + vζ` with `ζ = κ + τ`; a code of length `n` is
//! stored as a GF(2) subspace of `GF(2)²ⁿ` (the `κ`-plane followed by the
//! `ζ`-plane). See [`code::ECode`].

pub mod buildup;
pub mod classify;
pub mod cli;
pub mod code;
pub mod equivalence;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod ring;

pub use code::{CodeSummary, ECode};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use ring::{EElem, EMatrix, EVector};
