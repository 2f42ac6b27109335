//! Left-invariant orthogonal almost complex structures on SU(2)×SU(2).
//!
//! The twistor space `Z ≅ SO(6)/U(3) ≅ ℂP³` of structures compatible with
//! the bi-invariant metric is handled through three lenses: matrices
//! ([`acs`]), fundamental 2-forms ([`exterior`]) and homogeneous points of
//! ℂP³ ([`cp3`]). On top of these sit the Nijenhuis functional and its
//! extremal sets ([`nijenhuis`], [`nearly_kaehler`], [`search`]), the
//! projective geometry of edges and polar sets ([`geometry`]), and the
//! verification / export layer used by the `twistor` binary ([`report`],
//! [`io`]).

// Negated comparisons reject NaN on purpose; index loops mirror tensor indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod acs;
pub mod algebra;
pub mod cp3;
pub mod error;
pub mod exterior;
pub mod geometry;
pub mod io;
pub mod nearly_kaehler;
pub mod nijenhuis;
pub mod report;
pub mod search;

pub use acs::{Acs, Blocks};
pub use cp3::{Cp3Point, TetraCoords};
pub use error::{Result, TwistorError};
pub use exterior::{AlgebraVector, ComplexBivector, Covector, TwoForm};
