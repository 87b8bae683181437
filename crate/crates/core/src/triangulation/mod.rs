//! Triangulations, regular subdivisions and their combinatorics.

mod build;
mod check;
mod complex;
mod regular;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernel::{ConfigJson, PointConfiguration};
use crate::rational::{slash, Rational};
use crate::Label;

pub use build::{link, placing, placing_triangulation, pulling_faces, pulling_triangulation};
pub use check::{is_triangulation, Checker, Violation};
pub use complex::{
    boundary_complex, f_vector, faces_of, h_vector, mcmullen_walkup_holds, min_cells_bound,
    HVector,
};
pub use regular::{
    height_inequalities, is_regular, regular_subdivision, regularity, CertificateTerm,
    HeightInequality, NonRegularity, Regularity,
};
pub(crate) use regular::boxed;

/// A set of cells, each a sorted label set. Canonical: equal iff same cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    cells: BTreeSet<Vec<Label>>,
}

impl Triangulation {
    pub fn new<I, C>(cells: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = Label>,
    {
        Triangulation {
            cells: cells
                .into_iter()
                .map(|c| {
                    let mut v: Vec<Label> = c.into_iter().collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect(),
        }
    }

    pub fn cells(&self) -> &BTreeSet<Vec<Label>> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &[Label]) -> bool {
        self.cells.contains(cell)
    }

    /// Labels appearing in some cell.
    pub fn used_labels(&self) -> BTreeSet<Label> {
        self.cells.iter().flatten().copied().collect()
    }

    pub fn relabel(&self, map: impl Fn(Label) -> Label) -> Self {
        Triangulation::new(self.cells.iter().map(|c| c.iter().map(|&l| map(l)).collect::<Vec<_>>()))
    }

    /// Canonical one-line text form, e.g. `1-2-4|2-3-4`.
    pub fn key(&self) -> String {
        self.cells
            .iter()
            .map(|c| c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("-"))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn to_json(&self, config: Option<&PointConfiguration>) -> TriangulationJson {
        TriangulationJson {
            config: config.map(|c| c.to_json()),
            config_id: config.map(config_id),
            cells: self.cells.iter().cloned().collect(),
        }
    }
}

impl FromIterator<Vec<Label>> for Triangulation {
    fn from_iter<T: IntoIterator<Item = Vec<Label>>>(iter: T) -> Self {
        Triangulation::new(iter)
    }
}

/// Cells of a polyhedral subdivision, possibly non-simplicial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subdivision {
    pub dim: usize,
    pub cells: BTreeSet<Vec<Label>>,
}

impl Subdivision {
    pub fn is_simplicial(&self) -> bool {
        self.cells.iter().all(|c| c.len() == self.dim + 1)
    }

    pub fn non_simplicial_cells(&self) -> Vec<&Vec<Label>> {
        self.cells.iter().filter(|c| c.len() > self.dim + 1).collect()
    }

    pub fn to_triangulation(&self) -> Option<Triangulation> {
        self.is_simplicial()
            .then(|| Triangulation::new(self.cells.iter().cloned()))
    }
}

/// Heights indexed by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingVector {
    #[serde(with = "height_map")]
    pub heights: BTreeMap<Label, Rational>,
}

impl LiftingVector {
    /// Heights listed in configuration order.
    pub fn from_values(config: &PointConfiguration, values: Vec<Rational>) -> Result<Self> {
        if values.len() != config.len() {
            return Err(Error::DimensionMismatch {
                expected: config.len(),
                found: values.len(),
            });
        }
        Ok(LiftingVector {
            heights: config.labels().iter().copied().zip(values).collect(),
        })
    }

    pub fn zero(config: &PointConfiguration) -> Self {
        LiftingVector {
            heights: config
                .labels()
                .iter()
                .map(|&l| (l, Rational::from_integer(0.into())))
                .collect(),
        }
    }

    pub fn get(&self, label: Label) -> Result<&Rational> {
        self.heights.get(&label).ok_or(Error::UnknownLabel(label))
    }

    pub fn set(&mut self, label: Label, h: Rational) {
        self.heights.insert(label, h);
    }

    /// Heights in configuration order.
    pub fn values(&self, config: &PointConfiguration) -> Result<Vec<Rational>> {
        config.labels().iter().map(|&l| self.get(l).cloned()).collect()
    }

    pub fn restrict(&self, labels: &[Label]) -> Self {
        LiftingVector {
            heights: self
                .heights
                .iter()
                .filter(|(l, _)| labels.contains(l))
                .map(|(&l, h)| (l, h.clone()))
                .collect(),
        }
    }
}

mod height_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct H(#[serde(with = "slash")] Rational);

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<Label, Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: BTreeMap<String, H> = m.iter().map(|(l, h)| (l.to_string(), H(h.clone()))).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<Label, Rational>, D::Error> {
        let v = BTreeMap::<String, H>::deserialize(d)?;
        v.into_iter()
            .map(|(k, H(h))| {
                k.parse::<Label>()
                    .map(|l| (l, h))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

/// `{"config": ..., "cells": [[labels], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_id: Option<String>,
    pub cells: Vec<Vec<Label>>,
}

impl TriangulationJson {
    pub fn triangulation(&self) -> Triangulation {
        Triangulation::new(self.cells.iter().cloned())
    }
}

/// Short digest of the canonical JSON form of a configuration.
pub fn config_id(config: &PointConfiguration) -> String {
    let json = serde_json::to_vec(&config.to_json()).expect("configuration serializes");
    hex::encode(&Sha256::digest(json)[..8])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn cells_are_canonical() {
        let a = Triangulation::new(vec![vec![3, 1, 2], vec![4, 2, 3]]);
        let b = Triangulation::new(vec![vec![2, 3, 4], vec![1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.key(), "1-2-3|2-3-4");
    }

    #[test]
    fn lifting_vector_json() {
        let w = LiftingVector {
            heights: [(1, rat(1, 2)), (2, rat(-3, 1))].into_iter().collect(),
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"heights":{"1":"1/2","2":"-3"}}"#);
        let back: LiftingVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
