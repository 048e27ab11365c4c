//! Exact computations around module categories over quantum SL(2).
//!
//! Everything here runs over exact fields (rationals, prime fields,
//! cyclotomic fields and the rational function field in `q`), with no
//! floating point anywhere. The crate is `no_std` and only needs `alloc`.
//!
//! - [`exactnum`]: scalars, dense matrices, polynomials, sparse echelon forms.
//! - [`chebpoly`]: the Chebyshev polynomials `P_n`, `Q_l` and quantum integers.
//! - [`modgraph`]: modulated graphs and ADET classification.
//! - [`tlcat`]: Temperley-Lieb diagram calculus and its graded realization.
//! - [`starcls`]: the trace equation, rescaling and the full classification datum.
//! - [`preproj`]: preprojective algebras, Hilbert series and quadratic duals.
//! - [`hopfe`]: the universal Hopf algebras `H(E)`.

#![no_std]

extern crate alloc;

pub mod chebpoly;
pub mod error;
pub mod exactnum;
pub mod hopfe;
pub mod modgraph;
pub mod preproj;
pub mod quiver;
pub mod random;
pub mod starcls;
pub mod tlcat;

pub use error::{Error, Result};
pub use exactnum::{Field, Matrix, Poly, Scalar};
pub use modgraph::{GraphType, ModulatedGraph};

/// Limits on the size of truncated quotient computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of paths in a single degree of a path algebra.
    pub max_paths: usize,
    /// Maximum number of words in a filtered word space.
    pub max_words: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_paths: 200_000,
            max_words: 200_000,
        }
    }
}
