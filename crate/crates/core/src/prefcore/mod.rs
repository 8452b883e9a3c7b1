//! Alternatives, strict orders, profiles over variable societies,
//! permutation actions, and separable preferences over `2^O`.

mod alternative;
pub mod codec;
mod domain;
mod permutation;
mod preference;
mod profile;
mod separable;

pub use alternative::{default_object_names, Alternative, ObjectSet, Universe, MAX_ALTERNATIVES, MAX_OBJECTS};
pub use domain::{DomainKind, DomainSpec};
pub use permutation::{permute_alternatives, permute_objects, AltPermutation, ObjectPermutation, VoterPermutation};
pub use preference::{enumerate_linear_orders, Preference, DEFAULT_ENUMERATION_CAP};
pub use profile::{Profile, VoterId};
pub use separable::{
    canonical_separable, enumerate_separable, is_separable, is_separable_by_definition, is_separable_by_top,
    separability_breach,
};
