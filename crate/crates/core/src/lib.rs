//! Exact knot-theoretic machinery for measuring how well link invariants
//! separate knots.
//!
//! The crate is `no_std` with `alloc`. It contains
//!
//! * [`diagram`]: PD / DT encodings, DT realization, mirrors;
//! * [`laurent`]: Laurent polynomials with big-integer coefficients;
//! * [`invariants`]: Kauffman bracket, Jones, HOMFLYPT, `SL_N`, Alexander,
//!   Goeritz data (signature, determinant, double branched cover);
//! * [`khovanov`]: Khovanov homology over the two-element field;
//! * [`tangle`]: rational tangles, Conway regions and (oriented) mutation;
//! * [`growth`]: exact power series for template counting and the
//!   growth-rate constants behind the exponential decay bound.
//!
//! IO, corpora, caching and the command line live in the `knot-detect` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagram;
pub mod growth;
pub mod invariants;
pub mod khovanov;
pub mod laurent;
pub mod tangle;

mod planar;

pub use diagram::{DiagramError, DtCode, LinkDiagram, PdCrossing, Sign};
pub use laurent::{AlgebraError, LaurentPoly1, LaurentPoly2};
