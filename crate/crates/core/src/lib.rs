//! Distance geometry over the classical division algebras.
//!
//! The crate is organized around squared-distance data for finite point
//! configurations and the low-rank matrix loci that realizable data sweeps
//! out:
//!
//! - [`distances`]: Cayley and Gram coordinates for point configurations,
//!   conversions between them, realizability tests, and embedding.
//! - [`varieties`]: dimension, degree, and genus invariants of the symmetric,
//!   general, and skew determinantal families, plus defining minor systems.
//! - [`algebras`]: quaternion and octonion arithmetic, Gram forms over the
//!   division algebras, and complex matrix models for quaternionic data.
//! - [`lorentz`]: the trace form `Tr(AB) - Tr(A)Tr(B)` and its Hermitian and
//!   quaternionic analogues, with cone classification of Gram forms.
//! - [`rigidity`]: Laman counts, linkage sections, realization bounds, and a
//!   multi-start enumerator for planar linkage realizations.
//! - [`polygons`]: edge-length vectors of closed planar polygons, wall
//!   structure of the length simplex, and an octic invariant with a torus
//!   family of roots.

pub mod algebras;
pub mod distances;
pub mod exact;
pub mod linalg;
pub mod lorentz;
pub mod polygons;
pub mod rigidity;
pub mod varieties;

/// Default relative tolerance for rank decisions and residual checks.
pub const DEFAULT_TOL: f64 = 1e-9;
