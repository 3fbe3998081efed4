//! Exact-arithmetic computer algebra for coloured non-symmetric dg-operads,
//! operadic modules, their free resolutions, and the cohomology of diagrams of
//! associative algebras.
//!
//! Everything is computed over the rationals with arbitrary precision; no
//! floating point appears in any algebraic path. The crate is organised
//! bottom-up:
//!
//! * [`linalg`] — exact rational scalars, sparse matrices, rank/kernel, Betti
//!   numbers.
//! * [`trees`] — planar rooted trees, grafting, Koszul signs, tree
//!   composition.
//! * [`freeop`] — free coloured dg-operads on finite generator collections,
//!   derivation differentials, the resolutions `Ass∞` and `DR`.
//! * [`freeprod`] — free products of based operads with reducing operations
//!   and the Künneth dimension check.
//! * [`diagram`] — small categories, nerves, the diagram operad with its
//!   closed-form basis, evaluation against a diagram of algebras, bar-cobar.
//! * [`modules`] — free operadic modules, the differentials of `olMDR` and
//!   `MR`, the augmentation, and the brute-force dimension oracle.
//! * [`cohomology`] — cochain complexes from the independent pipelines, Betti
//!   tables, and chain-level comparison.

pub mod cohomology;
pub mod diagram;
pub mod freeop;
pub mod freeprod;
pub mod linalg;
pub mod modules;
pub mod trees;
