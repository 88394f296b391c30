mod group;
mod lattice;
mod permutation;
mod subgroup;

pub use group::{ConjugacyClass, FiniteGroup, DEFAULT_ELEMENT_CAP};
pub use lattice::SocleInfo;
pub use permutation::Permutation;
pub use subgroup::{GroupHom, Subgroup};
