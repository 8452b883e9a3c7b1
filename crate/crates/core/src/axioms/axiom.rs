use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The eight axioms the checkers know about.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Ontoness,
    TopsOnliness,
    Fnp,
    StrongFnp,
    Participation,
    Anonymity,
    Neutrality,
    ObjectNeutrality,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Ontoness,
        Axiom::TopsOnliness,
        Axiom::Fnp,
        Axiom::StrongFnp,
        Axiom::Participation,
        Axiom::Anonymity,
        Axiom::Neutrality,
        Axiom::ObjectNeutrality,
    ];

    /// The five axioms of the impossibility over `2^O`, in table order.
    pub const IMPOSSIBILITY: [Axiom; 5] =
        [Axiom::Ontoness, Axiom::TopsOnliness, Axiom::Fnp, Axiom::Participation, Axiom::ObjectNeutrality];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Ontoness => "ontoness",
            Axiom::TopsOnliness => "tops-onliness",
            Axiom::Fnp => "fnp",
            Axiom::StrongFnp => "strong-fnp",
            Axiom::Participation => "participation",
            Axiom::Anonymity => "anonymity",
            Axiom::Neutrality => "neutrality",
            Axiom::ObjectNeutrality => "object-neutrality",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match key.as_str() {
            "ontoness" | "onto" => Axiom::Ontoness,
            "tops-onliness" | "tops-only" => Axiom::TopsOnliness,
            "fnp" | "false-name-proofness" => Axiom::Fnp,
            "strong-fnp" => Axiom::StrongFnp,
            "participation" => Axiom::Participation,
            "anonymity" => Axiom::Anonymity,
            "neutrality" => Axiom::Neutrality,
            "object-neutrality" => Axiom::ObjectNeutrality,
            _ => return Err(Error::UnknownAxiom(s.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
            assert_eq!(serde_json::to_value(a).unwrap(), serde_json::Value::String(a.name().into()));
        }
        assert_eq!("tops_only".parse::<Axiom>().unwrap(), Axiom::TopsOnliness);
        assert!("monotonicity".parse::<Axiom>().is_err());
    }
}
