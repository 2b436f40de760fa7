//! Fuzzy ideals of finite AG-groupoids: exact evaluation of ideal
//! predicates, theorem checks over enumerated fuzzy subsets, and a catalog
//! of small AG-groupoids.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod fixtures;
pub mod fuzzy;
pub mod ideals;
pub mod lab;
pub mod set;

pub use algebra::{Groupoid, IdealKind, Law};
pub use error::{Error, Result};
pub use fuzzy::{FuzzyPoint, FuzzySubset, Grade, KParam, LevelPiece, Relation};
pub use ideals::{Verdict, Witness};
pub use set::ElementSet;
