//! Bounded verification of voting-rule axioms under variable electorates.

pub mod axioms;
pub mod error;
pub mod prefcore;
pub mod rules;
pub mod verify;

pub use error::{Error, Result};

#[cfg(test)]
mod proptests;
