//! Exact combinatorial and symbolic models of spin structures on nodal curves.
//!
//! The library works with stable curves given as genus-weighted dual graphs.
//! It enumerates the supports of limit square roots of the dualizing sheaf,
//! counts isomorphism classes and scheme multiplicities, builds the explicit
//! local model of the spin moduli space at its singular points together with
//! the blow-up desingularizing it, and realizes the stratification of
//! enriched spin curves as exact bijections that can be checked exhaustively
//! over small finite fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalars`] — exact rationals, odd prime fields `F_q` and the quadratic
//!   extension `F_{q^2}` with square-root extraction;
//! * [`dualgraph`] — dual graphs, blow-ups at node subsets, the graph
//!   `Sigma_X` and Betti numbers;
//! * [`spinenum`] — enumeration of spin supports, root counts,
//!   multiplicities and the degree identity;
//! * [`localalgebra`] — the singular local model as an explicit ideal, its
//!   blow-up charts, smoothness certificates and line limits on the
//!   exceptional projective space;
//! * [`enriched`] — torsor labels for enriched spin curves and the
//!   stratum-by-stratum correspondence onto the exceptional space;
//! * [`cli`] — the report pipeline behind the `spin` binary.

pub mod cli;
pub mod dualgraph;
pub mod enriched;
pub mod localalgebra;
pub mod scalars;
pub mod spinenum;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
