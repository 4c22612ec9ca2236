//! Computational matroid theory over exact fields.
//!
//! * [`matroid`]: bases, rank, flats, circuits, minors, isomorphisms.
//! * [`algebra`]: rationals and finite fields, polynomials, exact matrices.
//! * [`groebner`]: Buchberger bases, normal forms, saturation, elimination.
//! * [`realization`]: realization spaces and realizability per characteristic.
//! * [`invariants`]: Tutte, characteristic and chromatic polynomials.
//! * [`chow`]: Chow rings, volumes, and the Kähler-package checks.
//! * [`io`]: JSON formats for matroids, corpora and reports.

pub mod algebra;
pub mod chow;
pub mod groebner;
pub mod invariants;
pub mod io;
pub mod matroid;
pub mod par;
pub mod realization;

pub use matroid::{catalog, CatalogName, Matroid, MatroidError, Subset, SubsetFamily};
pub use par::Exec;
