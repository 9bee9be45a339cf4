//! Polynomial and classical link invariants.
//!
//! Conventions used throughout:
//!
//! * Kauffman bracket in `A` with loop value `-A^2 - A^-2`, A-smoothing of
//!   `X(a,b,c,d)` joining `a,b` and `c,d`.
//! * Jones `V = (-A)^(-3w) <D>` with `t = A^-4`. Links with an even number of
//!   components have half-integral powers of `t`; their Jones polynomial is
//!   returned in `s = t^(1/2)`.
//! * HOMFLYPT `a P(L+) - a^-1 P(L-) = (q - q^-1) P(L0)`, `P(unknot) = 1`.
//!   A `c`-component link is returned multiplied by `(q - q^-1)^(c-1)`, which
//!   clears every denominator.
//! * `SL_N`: `a ↦ q^N`. For knots `sl_n(K, 2)` equals the Jones polynomial
//!   with `t ↦ q^-2`.
//! * Signature anchored so that the positive trefoil has signature `-2`.

mod alexander;
mod bracket;
mod goeritz;
mod homfly;
pub(crate) mod linalg;

pub use alexander::{alexander, alexander_with};
pub use bracket::{jones, jones_with, kauffman_bracket, kauffman_bracket_with, unnormalized_jones};
pub use goeritz::{dbc_homology, determinant, goeritz, signature, GoeritzData};
pub use homfly::{homflypt, homflypt_az, homflypt_az_with, homflypt_with, sl_n, sl_n_with};

use crate::laurent::LaurentPoly1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("{crossings} crossings exceed the cap of {cap}")]
    CrossingCapExceeded { crossings: usize, cap: usize },
    #[error("skein recursion exceeded its budget of {0} nodes")]
    RecursionBudgetExceeded(usize),
    #[error("invariant is only implemented for knots; diagram has {0} components")]
    MultiComponentUnsupported(usize),
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
}

/// Crossing caps and recursion budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Bracket, Jones, Alexander and Goeritz.
    pub bracket: usize,
    pub homflypt: usize,
    pub khovanov: usize,
    /// Maximum number of skein-tree nodes expanded per HOMFLYPT evaluation.
    pub skein_budget: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { bracket: 16, homflypt: 14, khovanov: 13, skein_budget: 20_000_000 }
    }
}

pub(crate) fn check_cap(crossings: usize, cap: usize) -> Result<(), InvariantError> {
    if crossings > cap {
        Err(InvariantError::CrossingCapExceeded { crossings, cap })
    } else {
        Ok(())
    }
}

/// The variable map under which `sl_n(K, 2)` equals `jones(K)`: `t ↦ q^-2`,
/// or `s ↦ -q^-1` for a polynomial in `s = t^(1/2)`.
pub fn jones_to_sl2(v: &LaurentPoly1) -> LaurentPoly1 {
    match v.var() {
        's' => v.substitute_monomial('q', -1, -1),
        _ => v.substitute_monomial('q', 1, -2),
    }
}
