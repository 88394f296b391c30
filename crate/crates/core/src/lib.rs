//! Bicrossed-product Hopf algebras from exact group factorizations, their Drinfeld doubles,
//! fusion subcategories of `Rep D^ω(G)` and obstructions to quasitriangular structures.

pub mod cyclotomic;
pub mod error;
pub mod factorization;
pub mod formats;
pub mod fusion;
pub mod hopf;
pub mod linalg;
pub mod obstruction;
pub mod perm;
pub mod rep;
pub mod report;

pub use cyclotomic::CycScalar;
pub use error::{Error, Result};
pub use factorization::{CocyclePair, ExactFactorization, MatchedPair};
pub use fusion::{Bicharacter, FusionSubcategory, Triple};
pub use hopf::HopfAlgebra;
pub use obstruction::{ObstructionReport, Verdict};
pub use perm::{FiniteGroup, GroupHom, Permutation, Subgroup};
pub use rep::{DoubleCatalog, IrrepCatalog, ThreeCocycle};
pub use report::AxiomReport;
