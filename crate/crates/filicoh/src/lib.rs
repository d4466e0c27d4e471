//! Exact-arithmetic toolkit for Filippov (n-Lie) algebras.
//!
//! A Filippov algebra is a vector space with a totally antisymmetric
//! n-linear bracket whose `(n-1)`-slot partial evaluations act as
//! derivations (the Filippov identity). This crate builds such algebras
//! over the rationals, realizes the two cohomology complexes that govern
//! their central extensions (trivial action) and Gerstenhaber deformations
//! (adjoint action) as finite exact linear algebra, and machine-checks the
//! n-ary analogue of Whitehead's lemma at concrete small dimensions:
//! semisimple algebras admit no non-trivial central extensions and are
//! rigid.
//!
//! Everything is exact: scalars are [`Rational`]s, identities are verified
//! to be literally zero, and cohomology dimensions come from exact ranks.
//!
//! ```
//! use filicoh::algebra::NLieAlgebra;
//! use filicoh::cohomology::{cohomology_dims, Action};
//!
//! // the euclidean simple 3-Lie algebra on four generators
//! let a4 = NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap();
//! assert!(a4.check_fi().passed);
//!
//! // rigidity: every infinitesimal deformation is trivial
//! let (z, b, h) = cohomology_dims(&a4, Action::Adjoint, 1).unwrap();
//! assert_eq!((z, b, h), (10, 10, 0));
//! ```
//!
//! The `filicoh` binary exposes the same operations on a JSON interchange
//! format; `filicoh whitehead-suite` runs the full verification battery.

// index loops over matrices and coefficient tensors stay as loops; iterator
// rewrites fight the borrow checker without getting clearer
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cohomology;
pub mod deformation;
pub mod extension;
pub mod fundamental;
pub mod json;
pub mod killing;
pub mod leibniz;
pub mod matrix;
pub mod multiindex;
pub mod rational;
pub mod suite;

pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("fundamental vectors must share algebra shape and mode")]
    ModeMismatch,

    #[error("signature must have length n+1 with entries +1 or -1")]
    InvalidSignature,

    #[error("structure constants: {0}")]
    InvalidStructure(String),

    #[error("declared ideal blocks must partition 1..=dim")]
    InvalidIdealDecomposition,

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("solvability order must lie in 2..=n")]
    InvalidSolvabilityOrder,

    #[error("cohomology degree {0} is not supported (degrees 0..=2)")]
    UnsupportedDegree(usize),

    #[error("algebra has no declared ideal decomposition")]
    NoIdealDecomposition,

    #[error("block {0:?} is not a simple algebra of the epsilon family")]
    BlockNotSimple((usize, usize)),

    #[error("algebra is not a simple epsilon-family algebra with a recorded signature")]
    NotSimple,

    #[error("cochain is not a cocycle")]
    NotACocycle,

    #[error("cochain has wrong degree or action for this operation")]
    WrongCochain,

    #[error(
        "trivializer self-check failed for both sign conventions; \
         this indicates a bug, not a data condition"
    )]
    TrivializerSelfCheck,

    #[error("coboundary image violates the declared cochain symmetry class: {0}")]
    SymmetryClassViolation(String),

    #[error("deformation must have order {expected} for this operation")]
    WrongDeformationOrder { expected: usize },

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

// Book chapters double as doc-tests so the guide can never drift from the
// library. mdBook cannot run snippets itself; including the markdown here
// lets `cargo test --doc` do it.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(algebras, "../../../book/src/algebras.md");
    chapter!(fundamental_objects, "../../../book/src/fundamental-objects.md");
    chapter!(killing_form, "../../../book/src/killing-form.md");
    chapter!(cohomology, "../../../book/src/cohomology.md");
    chapter!(extensions, "../../../book/src/extensions.md");
    chapter!(deformations, "../../../book/src/deformations.md");
    chapter!(leibniz, "../../../book/src/leibniz.md");
}
