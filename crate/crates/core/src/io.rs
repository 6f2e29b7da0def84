//! JSON documents for complexes, actions and linear systems of parameters.
//! Vertex labels in documents are 1-based.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::CyclicAction;
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::sr::Lsop;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub p: u32,
    pub perm: Vec<usize>,
    /// Must be set to accept the identity permutation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trivial: bool,
}

impl ComplexDoc {
    pub fn of(k: &SimplicialComplex) -> Self {
        Self {
            n: k.n(),
            facets: k.facets_one_based(),
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_one_based(self.n, &self.facets)
    }
}

impl ActionDoc {
    pub fn of(a: &CyclicAction) -> Self {
        Self {
            p: a.p(),
            perm: a.images_one_based(),
            trivial: a.is_identity(),
        }
    }

    pub fn build(&self) -> Result<CyclicAction> {
        CyclicAction::from_one_based(self.p, &self.perm, self.trivial)
    }
}

pub fn parse_complex(json: &str) -> Result<SimplicialComplex> {
    serde_json::from_str::<ComplexDoc>(json)?.build()
}

pub fn parse_action(json: &str) -> Result<CyclicAction> {
    serde_json::from_str::<ActionDoc>(json)?.build()
}

pub fn parse_lsop(json: &str) -> Result<Lsop> {
    Ok(serde_json::from_str(json)?)
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

pub fn read_action(path: impl AsRef<Path>) -> Result<CyclicAction> {
    parse_action(&std::fs::read_to_string(path)?)
}

pub fn read_lsop(path: impl AsRef<Path>) -> Result<Lsop> {
    parse_lsop(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_roundtrip() {
        let k = parse_complex(r#"{"n":4,"facets":[[1,2,3],[2,4],[3,2]]}"#).unwrap();
        assert_eq!(k.facets_one_based(), vec![vec![2, 4], vec![1, 2, 3]]);
        let back = serde_json::to_string(&ComplexDoc::of(&k)).unwrap();
        assert_eq!(parse_complex(&back).unwrap().facets(), k.facets());
    }

    #[test]
    fn identity_needs_flag() {
        assert!(parse_action(r#"{"p":2,"perm":[1,2]}"#).is_err());
        let a = parse_action(r#"{"p":2,"perm":[1,2],"trivial":true}"#).unwrap();
        assert!(a.is_identity());
        assert_eq!(ActionDoc::of(&a).build().unwrap(), a);
    }

    #[test]
    fn malformed_documents_error() {
        assert!(parse_complex("{").is_err());
        assert!(parse_complex(r#"{"n":2,"facets":[[3]]}"#).is_err());
        assert!(parse_action(r#"{"p":4,"perm":[2,1]}"#).is_err());
    }
}
