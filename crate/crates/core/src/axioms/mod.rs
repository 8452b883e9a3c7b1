//! Bounded exhaustive checkers for the eight axioms, each returning a pass
//! within bounds or a replayable witness.

mod axiom;
mod bounds;
mod checks;
pub(crate) mod explorer;
mod witness;

pub use axiom::Axiom;
pub use bounds::CheckBounds;
pub use checks::{
    check, check_anonymity, check_fnp, check_neutrality, check_object_neutrality, check_ontoness, check_participation,
    check_strong_fnp, check_tops_onliness, CheckResult, Verdict,
};
pub use witness::{Relabeling, Witness};
