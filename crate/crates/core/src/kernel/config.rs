use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, pair, Rational};
use crate::Label;

/// An ordered, labeled sequence of points in `R^dim`.
///
/// Labels are the permanent identity of a point: deleting, contracting or
/// lifting keeps the labels of the surviving points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Vec<Rational>>,
    labels: Vec<Label>,
}

impl PointConfiguration {
    /// Points labeled `1..=n` in the given order.
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = (1..=points.len()).collect();
        Self::with_labels(dim, points, labels)
    }

    pub fn with_labels(dim: usize, points: Vec<Vec<Rational>>, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: labels.len(),
            });
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let mut seen = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            if seen.insert(l, i).is_some() {
                return Err(Error::RepeatedLabel(l));
            }
        }
        // In dimension zero every point is the origin; the configuration is a
        // multiset distinguished only by labels.
        if dim > 0 {
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    if points[i] == points[j] {
                        return Err(Error::CoincidentPoints(labels[i], labels[j]));
                    }
                }
            }
        }
        Ok(PointConfiguration {
            dim,
            points,
            labels,
        })
    }

    /// Integer coordinates, labels `1..=n`.
    pub fn from_ints(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            dim,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    /// Constructor for configurations derived from valid ones, where repeated
    /// points can legitimately occur (contractions of non-convex inputs).
    pub(crate) fn derived(dim: usize, points: Vec<Vec<Rational>>, labels: Vec<Label>) -> Self {
        debug_assert_eq!(points.len(), labels.len());
        debug_assert!(points.iter().all(|p| p.len() == dim));
        PointConfiguration {
            dim,
            points,
            labels,
        }
    }

    /// `n` labeled copies of the single point of `R^0`.
    pub fn degenerate(n: usize) -> Self {
        PointConfiguration {
            dim: 0,
            points: vec![Vec::new(); n],
            labels: (1..=n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &[Rational] {
        &self.points[index]
    }

    pub fn label(&self, index: usize) -> Label {
        self.labels[index]
    }

    pub fn max_label(&self) -> Label {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn require_index(&self, label: Label) -> Result<usize> {
        self.index_of(label).ok_or(Error::UnknownLabel(label))
    }

    pub fn coords(&self, label: Label) -> Result<&[Rational]> {
        Ok(&self.points[self.require_index(label)?])
    }

    /// Point `index` with a trailing `1`.
    pub fn homogenized(&self, index: usize) -> Vec<Rational> {
        let mut v = self.points[index].clone();
        v.push(int(1));
        v
    }

    pub fn indices_of(&self, labels: &[Label]) -> Result<Vec<usize>> {
        labels.iter().map(|&l| self.require_index(l)).collect()
    }

    pub fn labels_of(&self, indices: &[usize]) -> Vec<Label> {
        let mut v: Vec<Label> = indices.iter().map(|&i| self.labels[i]).collect();
        v.sort_unstable();
        v
    }

    /// Configuration without the point `label`, order preserved.
    pub fn delete(&self, label: Label) -> Result<Self> {
        let i = self.require_index(label)?;
        let mut c = self.clone();
        c.points.remove(i);
        c.labels.remove(i);
        Ok(c)
    }

    /// Keeps only the given labels, in configuration order.
    pub fn restrict(&self, keep: &[Label]) -> Result<Self> {
        for &l in keep {
            self.require_index(l)?;
        }
        let (points, labels) = self
            .points
            .iter()
            .zip(&self.labels)
            .filter(|(_, l)| keep.contains(l))
            .map(|(p, &l)| (p.clone(), l))
            .unzip();
        Ok(PointConfiguration::derived(self.dim, points, labels))
    }

    /// Appends a point with a fresh label.
    pub fn push(&self, label: Label, point: Vec<Rational>) -> Result<Self> {
        let mut points = self.points.clone();
        let mut labels = self.labels.clone();
        points.push(point);
        labels.push(label);
        Self::with_labels(self.dim, points, labels)
    }

    /// Same points, labels replaced through `map`.
    pub fn relabel(&self, map: impl Fn(Label) -> Label) -> Result<Self> {
        let labels = self.labels.iter().map(|&l| map(l)).collect();
        Self::with_labels(self.dim, self.points.clone(), labels)
    }

    /// Reorders the points so that `order` lists their labels.
    pub fn reorder(&self, order: &[Label]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::Precondition(format!(
                "order has {} labels, configuration has {}",
                order.len(),
                self.len()
            )));
        }
        let idx = self.indices_of(order)?;
        let mut seen = vec![false; self.len()];
        for &i in &idx {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::RepeatedLabel(self.labels[i]));
            }
        }
        Ok(PointConfiguration::derived(
            self.dim,
            idx.iter().map(|&i| self.points[i].clone()).collect(),
            order.to_vec(),
        ))
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(pair::to_pair).collect())
                .collect(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn from_json(json: &ConfigJson) -> Result<Self> {
        let points = json
            .points
            .iter()
            .map(|p| p.iter().map(pair::from_pair).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        match &json.labels {
            Some(labels) => Self::with_labels(json.dim, points, labels.clone()),
            None => Self::new(json.dim, points),
        }
    }
}

/// `{"dim": d, "points": [[["num","den"], ...], ...]}` with optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub dim: usize,
    pub points: Vec<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rejects_coincident_points_and_bad_labels() {
        let e = PointConfiguration::from_ints(2, &[vec![0, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(e, Error::CoincidentPoints(1, 2));
        let e = PointConfiguration::with_labels(1, vec![vec![int(0)], vec![int(1)]], vec![3, 3])
            .unwrap_err();
        assert_eq!(e, Error::RepeatedLabel(3));
        assert!(PointConfiguration::from_ints(2, &[vec![0]]).is_err());
    }

    #[test]
    fn labels_survive_deletion() {
        let c = PointConfiguration::from_ints(1, &[vec![0], vec![1], vec![3]]).unwrap();
        let d = c.delete(2).unwrap();
        assert_eq!(d.labels(), &[1, 3]);
        assert_eq!(d.coords(3).unwrap(), &[int(3)]);
        assert_eq!(d.coords(2), Err(Error::UnknownLabel(2)));
    }

    #[test]
    fn json_uses_string_pairs() {
        let c = PointConfiguration::new(2, vec![vec![rat(1, 2), int(-3)], vec![int(0), int(1)]])
            .unwrap();
        let s = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"dim":2,"points":[[["1","2"],["-3","1"]],[["0","1"],["1","1"]]],"labels":[1,2]}"#
        );
        let back: ConfigJson = serde_json::from_str(r#"{"dim":1,"points":[[["2","4"]]]}"#).unwrap();
        let c2 = PointConfiguration::from_json(&back).unwrap();
        assert_eq!(c2.point(0), &[rat(1, 2)]);
        assert_eq!(c2.labels(), &[1]);
    }
}
