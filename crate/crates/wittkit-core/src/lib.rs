//! Exact symbolic kernels for polynomial vector fields on the line and in
//! several variables.
//!
//! The crate is organized around a few layers:
//!
//! * [`rat`], [`unipoly`], [`multipoly`], [`laurent`] — exact rational,
//!   polynomial, and truncated-Laurent-series arithmetic. Every value is
//!   immutable and every operation is a pure function; there is no floating
//!   point anywhere below the growth-slope estimate.
//! * [`witt1`] — elements and finitely generated subalgebras of `k[t]∂`:
//!   brackets, degree-echelonized spanning sets, bracket closure up to a
//!   degree bound, membership.
//! * [`hensel`] — the series engine: writing a monic field `g∂` as `s^d ∂_s`
//!   for a truncated series `s = t + lower order terms`, change of basis into
//!   powers of `s`, Veronese membership, and the two-element coefficient law.
//! * [`classifier`] — the classification pipeline: from generators of an
//!   infinite-dimensional subalgebra `L ⊆ k[t]∂` to the canonical polynomial
//!   `f`, the minimal pair `(g_f, h_f)`, the minimal `g` with
//!   `k[f]g∂ ⊆ L`, and the codimension of `L` in `k[f]g_f∂`.
//! * [`wn`] — diagnostics for subalgebras of `Der(k[x_1..x_n])`: the
//!   `x_1`-divisibility filtration, iterated-bracket growth, abelianization
//!   codimension, and component-space dimensions.
//!
//! The crate is `no_std` (with `alloc`); IO, parsing entry points for the
//! command line, and report formats live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classifier;
pub mod error;
pub mod hensel;
pub mod laurent;
pub mod linalg;
pub mod multipoly;
pub mod rat;
mod text;
pub mod unipoly;
pub mod witt1;
pub mod wn;

pub use error::{Error, Result};
pub use laurent::LaurentSeries;
pub use multipoly::{Monomial, MultiPoly};
pub use rat::Rat;
pub use unipoly::UniPoly;
pub use witt1::{SubalgebraBasis1, WittElement1};
pub use wn::WittElementN;
