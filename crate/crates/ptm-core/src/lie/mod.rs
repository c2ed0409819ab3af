//! Matrix Lie algebra and Lie group arithmetic: brackets, adjoint maps,
//! exponentials, reductive decompositions, connection functions, catalog.

pub mod algebra;
pub mod catalog;
pub mod expm;
pub mod reductive;

pub use algebra::{AlgebraJson, LieAlgebraBasis};
pub use catalog::{load as load_catalog, CatalogEntry, CatalogEntryJson, CATALOG_NAMES};
pub use expm::{dexp, matrix_exp, matrix_log, phi1};
pub use reductive::{ConnectionKind, GroupElement, GroupRelations, ReductivePair, ReductiveReport};
