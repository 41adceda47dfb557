//! Exact verification of symmetry identities for `q`-Bernoulli polynomials.
//!
//! The value ring is `Q(q)[L]` with `L` a formal `log q`; identity sides are
//! polynomials in `x, y, y1, y2, y3` over that ring, compared by canonical
//! form. Generating-function derivations are checked as truncated series and
//! the underlying Volkenborn integrals are witnessed in `p`-adic arithmetic.

pub mod algebra;
pub mod error;
pub mod identities;
pub mod padic;
pub mod qbernoulli;
pub mod series;

pub use error::{QsymError, Result};
