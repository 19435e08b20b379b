//! Flat JSON documents for posets, groups and simplicial complexes.
//!
//! A poset document lists point ids (see [`PointLabel`]) and covering pairs
//! by id:
//!
//! ```json
//! { "points": ["base:g0:lv-1", "base:g0:lv0"], "hasse": [["base:g0:lv-1", "base:g0:lv0"]] }
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{FormatError, PosetError};
use crate::group::FiniteGroup;
use crate::mccord::SimplicialComplex;
use crate::poset::{FinitePoset, PointLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub points: Vec<String>,
    pub hasse: Vec<[String; 2]>,
}

impl PosetDocument {
    pub fn from_poset(p: &FinitePoset) -> Self {
        let points: Vec<String> = p.labels().iter().map(ToString::to_string).collect();
        let hasse = p.hasse_edges().iter().map(|&(a, b)| [points[a].clone(), points[b].clone()]).collect();
        PosetDocument { points, hasse }
    }

    /// Rebuilds the poset; the edges must be exactly the covering relation.
    pub fn to_poset(&self) -> Result<FinitePoset, FormatError> {
        let labels = self.points.iter().map(|s| s.parse::<PointLabel>()).collect::<Result<Vec<_>, _>>()?;
        let index: HashMap<&str, usize> = self.points.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| PosetError::UnknownPoint(s.clone()));
        let mut edges = Vec::with_capacity(self.hasse.len());
        for [a, b] in &self.hasse {
            edges.push((lookup(a)?, lookup(b)?));
        }
        Ok(FinitePoset::from_hasse(labels, &edges)?)
    }
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    serde_json::to_string_pretty(&PosetDocument::from_poset(p)).expect("document serializes")
}

pub fn poset_from_json(text: &str) -> Result<FinitePoset, FormatError> {
    let doc: PosetDocument = serde_json::from_str(text)?;
    doc.to_poset()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub order: usize,
    pub identity: usize,
    pub labels: Vec<String>,
    pub cayley: Vec<Vec<usize>>,
}

impl GroupDocument {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDocument {
            order: g.order(),
            identity: g.identity(),
            labels: g.labels().to_vec(),
            cayley: g.cayley().to_vec(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, FormatError> {
        if self.cayley.len() != self.order {
            return Err(FormatError::Invalid(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.cayley.len()
            )));
        }
        Ok(FiniteGroup::new(self.cayley.clone(), self.identity, self.labels.clone())?)
    }
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    serde_json::to_string_pretty(&GroupDocument::from_group(g)).expect("document serializes")
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup, FormatError> {
    let doc: GroupDocument = serde_json::from_str(text)?;
    doc.to_group()
}

/// A simplicial complex with vertices named by point ids; `simplices[k]`
/// holds the `k`-simplices as lists of vertex positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl ComplexDocument {
    pub fn from_complex(k: &SimplicialComplex, p: &FinitePoset) -> Self {
        ComplexDocument {
            vertices: p.labels().iter().map(ToString::to_string).collect(),
            simplices: k.simplices_by_dim().to_vec(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, FormatError> {
        SimplicialComplex::from_simplices(self.vertices.len(), self.simplices.clone())
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

pub fn complex_to_json(k: &SimplicialComplex, p: &FinitePoset) -> String {
    serde_json::to_string_pretty(&ComplexDocument::from_complex(k, p)).expect("document serializes")
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex, FormatError> {
    let doc: ComplexDocument = serde_json::from_str(text)?;
    doc.to_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dihedral;

    #[test]
    fn poset_round_trip_is_exact() {
        let p = FinitePoset::from_named(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let text = poset_to_json(&p);
        let q = poset_from_json(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(poset_to_json(&q), text);
    }

    #[test]
    fn redundant_edges_in_documents_are_rejected() {
        let text = r#"{"points":["pt:a","pt:b","pt:c"],"hasse":[["pt:a","pt:b"],["pt:b","pt:c"],["pt:a","pt:c"]]}"#;
        assert!(matches!(poset_from_json(text), Err(FormatError::Poset(PosetError::RedundantEdge { .. }))));
        let text = r#"{"points":["pt:a"],"hasse":[["pt:a","pt:z"]]}"#;
        assert!(matches!(poset_from_json(text), Err(FormatError::Poset(PosetError::UnknownPoint(_)))));
    }

    #[test]
    fn group_round_trip() {
        let g = dihedral(4).unwrap();
        assert_eq!(group_from_json(&group_to_json(&g)).unwrap(), g);
        let bad = r#"{"order":2,"identity":0,"labels":["e","x"],"cayley":[[0,1],[1,1]]}"#;
        assert!(matches!(group_from_json(bad), Err(FormatError::Group(_))));
    }
}
