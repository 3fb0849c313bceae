//! Arithmetic in the mod-2 Steenrod algebra and its subalgebras A(n).

pub mod adem;
pub mod algebra;
pub mod antipode;
pub mod milnor;
pub mod profile;
pub mod transition;

pub use adem::{
    adem_expand, adem_reduce, admissible_words, binom2, decompose_sq, is_admissible, Word,
};
pub use algebra::Algebra;
pub use antipode::{antipode, antipode_sq};
pub use milnor::{milnor_basis, milnor_product, MilnorElt, SteenrodElt};
pub use profile::SubalgebraProfile;
pub use transition::{admissible_to_milnor, milnor_to_admissible, TransitionTable};
