//! Exact computations on central hyperplane arrangements over ℚ: lattices,
//! characteristic polynomials, logarithmic derivation modules, freeness and
//! plus-one generation.

pub mod algebra;
pub mod arrangement;
pub mod catalog;
pub mod classify;
pub mod combinatorics;
pub mod derivations;
pub mod error;
pub mod theorems;

pub use arrangement::{
    make_arrangement, Arrangement, Hyperplane, Multiplicity, Restriction, ZieglerRestriction,
};
pub use classify::{
    classify, classify_any, classify_with, free_exponents, is_free, is_locally_free,
    ClassificationReport, ClassifyOptions, FreenessCertificate, POGCertificate, Verdict,
};
pub use combinatorics::{char_poly, intersection_lattice, CharPoly, Flat, IntersectionLattice};
pub use error::{Error, Result};
