//! Symbolic engine for the automorphism group of a parabolic Inoue
//! surface `S(m, alpha)` and for the quotients of the surface by the
//! typical cyclic subgroups of that group.
//!
//! The engine works from the explicit chart atlas of the universal cover:
//! all coefficients are exact elements of a finitely generated abelian
//! group ([`scalar`]), all maps are Laurent-monomial maps between charts
//! ([`cover`]), cover automorphisms carry a unique normal form whose
//! composition law is validated against chart-level composition
//! ([`autgroup`]), and the structure theorems for the induced group on
//! the surface are checked relation by relation ([`surface`]).  The
//! quotient bookkeeping is done twice, through a toric lattice model
//! ([`fan`]) and through divisor degree rules ([`quotient`]), and the two
//! routes are compared on every report.

pub mod autgroup;
pub mod cover;
pub mod fan;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod surface;

pub mod cli;

pub use autgroup::{AutContext, CoverAut};
pub use cover::{Chart, ChartMap, CurveLabel};
pub use quotient::{QuotientKind, QuotientReport};
pub use scalar::{Scalar, ScalarContext};
pub use surface::{Surface, SurfaceAut};
