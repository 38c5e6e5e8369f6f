//! Exact combinatorics of partitioned weight polytopes P_W(K) in the classical
//! types A, B, C and D.
//!
//! The polytope P_W is the convex hull of the Weyl-group orbit of a generic
//! point; P_W(K) cuts it by the half-spaces `α_k^∨(x) ≤ 0` for k in a subset K
//! of simple-root indices. Everything here is computed in exact rational
//! arithmetic: the facet families, their intersection graph, f-vectors and
//! h-polynomials (by three independent formulas), Stanley–Reisner-style
//! cohomology presentations with machine-checked lemmas, and a brute-force
//! geometric oracle that validates the combinatorics against actual vertex
//! enumeration.

pub mod error;
pub mod linalg;
pub mod poly;
pub mod rootsys;
pub mod weyl;
pub mod facetcomb;
pub mod facecount;
pub mod hesspoly;
pub mod cohomcheck;
pub mod geomoracle;

pub use error::{Error, Result};
pub use poly::GradedIntPolynomial;
pub use rootsys::{Family, RSType, RVec, Rat, RootSystem};
pub use weyl::{Subset, SignedPermutation, ParabolicK, OrbitDecomposition};
pub use facetcomb::{FacetLabel, FacetFamily, IntersectionGraph};
pub use facecount::FVector;
pub use cohomcheck::{Monomial, MonomialCombination, Presentation, CheckReport};
