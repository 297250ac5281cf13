//! p-local homotopy decompositions of the loop spaces of compact,
//! simply-connected, irreducible Riemannian symmetric spaces `G/H` at
//! quasi-regular primes `p >= 5`, with p-primary homotopy exponent bounds.
//!
//! The pipeline:
//!
//! 1. [`catalog`] decomposes `G` and `H` into spheres and sphere bundles
//!    over spheres via the Mimura-Toda tables and Harris splittings, and
//!    stores one record per symmetric-space case: parameters, prime
//!    condition, the degrees where the induced map of indecomposables is
//!    nonzero (data with citations), and an assembly recipe.
//! 2. [`fibre`] matches subgroup-side skeleta against group-side atoms
//!    slot by slot, classifies each matching map, identifies its homotopy
//!    fibre, and multiplies the fibres into `Ω(G/H)`.
//! 3. [`exponent`] turns a decomposition into an exponent interval
//!    `p^lo <= exp_p(G/H) <= p^hi` from the sphere and bundle exponent
//!    theorems.
//! 4. [`tables`] answers the homotopy group queries in the Toda range that
//!    justify the slot discipline, and [`weyl`] verifies the `E_7`
//!    Weyl-invariant computation and the `F_5` non-splitting check by
//!    exact polynomial arithmetic.

pub mod catalog;
pub mod exponent;
pub mod fibre;
pub mod space;
pub mod tables;
pub mod weyl;

pub use catalog::{
    case_record, qr_decomposition, slot_index, BdiVariant, CaseId, CaseRecord, CatalogError,
    GroupId, Recipe, RecipeKind,
};
pub use exponent::{case_exponent, exponent, exponent_atom, exponent_report, ExponentInterval};
pub use fibre::{
    classify_q, consumed_degrees, decompose_case, fibre as slot_fibre, loop_decomposition,
    rational_homotopy_degrees, verify_rational_balance, CaseResult, FibreError, LoopSpace, QClass,
    SlotAssignment,
};
pub use space::{Atom, Factor, Prime, SpaceError, SpaceExpr, TypeList};
pub use tables::{maps_vanish, pi_b, pi_sphere, GroupDesc, RangeQuery, TableError};
