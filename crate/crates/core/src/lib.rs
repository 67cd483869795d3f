//! Reduced E-Fountain semigroups, their associated categories, and the
//! comparison between semigroup algebras and category algebras over ℚ.
//!
//! A [`FiniteSemigroup`] is a validated multiplication table. Choosing a set
//! `E` of idempotents gives an [`EStructure`] with the maps `a ↦ a*` and
//! `a ↦ a⁺`; from it come the associated category, the map
//! `φ: ℚS → ℚC(S)`, and the checks relating them.

pub mod algebra;
pub mod analysis;
pub mod category;
pub mod corpus;
pub mod error;
pub mod families;
pub mod fountain;
pub mod green;
pub mod linalg;
pub mod partial_map;
pub mod relation;
pub mod semigroup;
pub mod verdict;
pub mod verify;

pub use algebra::{AlgebraElement, BasisAlgebra, BasisTag, CategoryAlgebra, SemigroupAlgebra};
pub use analysis::{analyze, AnalysisOptions, AnalysisReport, Status};
pub use category::{FiniteCategory, Functor, Variance};
pub use error::{Error, Result};
pub use families::{Family, FamilyKind, FamilySpec, SubsetPair};
pub use fountain::EStructure;
pub use green::GreenData;
pub use linalg::{LinearMap, Rational};
pub use partial_map::PartialMap;
pub use relation::{BitRelation, Partition};
pub use semigroup::{parse_index_set, parse_table, BuildOptions, FiniteSemigroup};
pub use verdict::{Verdict, Witness};
