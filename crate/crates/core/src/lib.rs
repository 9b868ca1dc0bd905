//! Steklov eigenvalues of finite trees whose boundary is the leaf set.
//!
//! The crate computes the Dirichlet-to-Neumann spectrum of a tree three ways
//! (Laplacian Schur complement, leaf distance matrix, scalar root equations for
//! spiders and double spiders), classifies the trees of given order and odd
//! diameter that maximize the first nonzero eigenvalue λ₂, and certifies that
//! classification against brute-force enumeration of all unlabeled trees.
//!
//! Module map:
//!
//! | module       | contents                                                    |
//! |--------------|-------------------------------------------------------------|
//! | [`tree`]     | trees, named families, canonical codes, enumeration         |
//! | [`spectral`] | harmonic extension, DtN matrix, Steklov spectrum            |
//! | [`flux`]     | boundary fluxes, cut sums, inverse form, distance route     |
//! | [`roots`]    | spider / balanced / double-spider root equations, threshold |
//! | [`classify`] | candidate extremizers and winners for `(n, D)`, D odd       |
//! | [`reduce`]   | domination, arm transfer, balancing moves, greedy ascent    |
//! | [`verify`]   | brute-force certification harness                           |

pub mod classify;
pub mod error;
pub mod flux;
pub mod linalg;
pub mod reduce;
pub mod roots;
pub mod spectral;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use tree::{
    canonical_code, ASParams, CanonicalCode, DoubleSpiderProfile, SpiderProfile, Tree,
};

/// Relative tolerance under which two λ₂ values are treated as numerically tied.
pub const TIE_RTOL: f64 = 1e-9;

/// `true` when `a` and `b` agree within `rtol` relative to the larger magnitude.
pub fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}
