use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{bits, is_full_dimensional, Mask, PointConfiguration};
use crate::linalg::{dot, inverse, solve, transpose};
use crate::lp::{gordan, Gordan};
use crate::rational::Rational;
use crate::triangulation::check::{require_triangulation, Checker};
use crate::triangulation::{LiftingVector, Subdivision, Triangulation};
use crate::Label;

/// Projection of the lower faces of the lifted configuration
/// `{(p_i, w(i))}`.
pub fn regular_subdivision(config: &PointConfiguration, w: &LiftingVector) -> Result<Subdivision> {
    let d = config.dim();
    if !is_full_dimensional(config) {
        return Err(Error::NotFullDimensional);
    }
    let n = config.len();
    let heights = w.values(config)?;
    let mut found: Vec<Mask> = Vec::new();
    let mut cells = BTreeSet::new();
    for subset in (0..n).combinations(d + 1) {
        let m: Mask = subset.iter().fold(0, |m, &i| m | 1 << i);
        if found.iter().any(|&f| m & !f == 0) {
            continue;
        }
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| config.homogenized(i)).collect();
        let rhs: Vec<Rational> = subset.iter().map(|&i| heights[i].clone()).collect();
        let Some(affine) = solve(&rows, &rhs) else {
            continue;
        };
        let mut cell = 0;
        let mut lower = true;
        for k in 0..n {
            let gap = &heights[k] - dot(&affine, &config.homogenized(k));
            if gap.is_negative() {
                lower = false;
                break;
            }
            if gap.is_zero() {
                cell |= 1 << k;
            }
        }
        if lower {
            found.push(cell);
            cells.insert(config.labels_of(&bits(cell).collect::<Vec<_>>()));
        }
    }
    Ok(Subdivision { dim: d, cells })
}

/// Outcome of the regularity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// Heights in `[-1, 1]` inducing the triangulation.
    Regular(LiftingVector),
    /// A nonnegative combination of the required strict inequalities that
    /// sums to zero, so no heights can satisfy all of them.
    NonRegular(NonRegularity),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular(_))
    }

    pub fn witness(&self) -> Option<&LiftingVector> {
        match self {
            Regularity::Regular(w) => Some(w),
            Regularity::NonRegular(_) => None,
        }
    }
}

/// `w(point) > sum_i coefficients_i * w(i)`: the lifted `point` lies strictly
/// above the hyperplane through the lifted `cell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightInequality {
    pub cell: Vec<Label>,
    pub point: Label,
    pub coefficients: Vec<(Label, Rational)>,
}

impl HeightInequality {
    /// Dense row `e_point - sum coefficients_i e_i` over `labels`.
    pub fn row(&self, labels: &[Label]) -> Vec<Rational> {
        let pos = |l: Label| labels.iter().position(|&x| x == l).expect("label in row space");
        let mut row = vec![Rational::zero(); labels.len()];
        row[pos(self.point)] += Rational::one();
        for (l, c) in &self.coefficients {
            row[pos(*l)] -= c;
        }
        row
    }

    pub fn holds(&self, w: &LiftingVector) -> Result<bool> {
        let mut rhs = Rational::zero();
        for (l, c) in &self.coefficients {
            rhs += c * w.get(*l)?;
        }
        Ok(*w.get(self.point)? > rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub inequality: HeightInequality,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonRegularity {
    pub terms: Vec<CertificateTerm>,
}

impl NonRegularity {
    /// The weighted sum of the inequalities' left minus right sides.
    pub fn combination(&self) -> BTreeMap<Label, Rational> {
        let mut acc: BTreeMap<Label, Rational> = BTreeMap::new();
        for t in &self.terms {
            let q = &t.inequality;
            *acc.entry(q.point).or_insert_with(Rational::zero) += &t.weight;
            for (l, c) in &q.coefficients {
                *acc.entry(*l).or_insert_with(Rational::zero) -= &t.weight * c;
            }
        }
        acc
    }

    /// Positive weights whose combination vanishes identically.
    pub fn verify(&self) -> bool {
        !self.terms.is_empty()
            && self.terms.iter().all(|t| t.weight.is_positive())
            && self.combination().values().all(|v| v.is_zero())
    }
}

/// Every inequality a lifting vector must satisfy to induce `t`: each point
/// outside a cell is lifted strictly above that cell's hyperplane.
pub fn height_inequalities(config: &PointConfiguration, masks: &[Mask]) -> Vec<HeightInequality> {
    let mut out = Vec::new();
    for &cell in masks {
        let idx: Vec<usize> = bits(cell).collect();
        let m: Vec<Vec<Rational>> = idx.iter().map(|&i| config.homogenized(i)).collect();
        let inv_t = inverse(&transpose(&m)).expect("cells are independent");
        let labels = config.labels_of(&idx);
        for j in (0..config.len()).filter(|j| cell >> j & 1 == 0) {
            let h = config.homogenized(j);
            out.push(HeightInequality {
                cell: labels.clone(),
                point: config.label(j),
                coefficients: idx
                    .iter()
                    .zip(&inv_t)
                    .map(|(&i, row)| (config.label(i), dot(row, &h)))
                    .collect(),
            });
        }
    }
    out
}

/// Heights in `[-1, 1]` from a strict solution.
pub(crate) fn boxed(x: Vec<Rational>) -> Vec<Rational> {
    let scale = x.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero);
    if scale.is_zero() {
        x
    } else {
        x.into_iter().map(|v| v / &scale).collect()
    }
}

/// Regularity of an already validated triangulation.
pub fn regularity(checker: &Checker, t: &Triangulation) -> Result<Regularity> {
    let config = checker.config();
    let n = config.len();
    let ineqs = height_inequalities(config, &checker.masks(t)?);
    let rows: Vec<Vec<Rational>> = ineqs.iter().map(|q| q.row(config.labels())).collect();
    match gordan(&rows, n) {
        Gordan::Strict(x) => Ok(Regularity::Regular(LiftingVector::from_values(
            config,
            boxed(x),
        )?)),
        Gordan::Certificate(y) => {
            let terms = y
                .into_iter()
                .zip(ineqs)
                .filter(|(w, _)| !w.is_zero())
                .map(|(weight, inequality)| CertificateTerm { inequality, weight })
                .collect();
            Ok(Regularity::NonRegular(NonRegularity { terms }))
        }
    }
}

/// Decides whether `t` is induced by some lifting vector.
pub fn is_regular(t: &Triangulation, config: &PointConfiguration) -> Result<Regularity> {
    let checker = Checker::new(config)?;
    require_triangulation(&checker, t)?;
    regularity(&checker, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::square;
    use crate::rational::int;

    #[test]
    fn square_with_one_raised_corner() {
        let sq = square();
        let w = LiftingVector::from_values(&sq, vec![int(0), int(0), int(0), int(1)]).unwrap();
        let s = regular_subdivision(&sq, &w).unwrap();
        assert_eq!(
            s.cells,
            [vec![1, 2, 3], vec![1, 3, 4]].into_iter().collect::<BTreeSet<_>>()
        );
        // Raising a corner on the other diagonal flips the split.
        let w = LiftingVector::from_values(&sq, vec![int(1), int(0), int(0), int(0)]).unwrap();
        let s = regular_subdivision(&sq, &w).unwrap();
        assert_eq!(
            s.cells,
            [vec![1, 2, 4], vec![2, 3, 4]].into_iter().collect::<BTreeSet<_>>()
        );
        let flat = regular_subdivision(&sq, &LiftingVector::zero(&sq)).unwrap();
        assert_eq!(flat.cells.len(), 1);
        assert!(!flat.is_simplicial());
    }

    #[test]
    fn witness_round_trips() {
        let sq = square();
        let t = Triangulation::new(vec![vec![1, 2, 3], vec![1, 3, 4]]);
        let r = is_regular(&t, &sq).unwrap();
        let w = r.witness().unwrap();
        assert!(w.heights.values().all(|h| h.abs() <= int(1)));
        let back = regular_subdivision(&sq, w).unwrap().to_triangulation().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_non_triangulations() {
        let sq = square();
        let t = Triangulation::new(vec![vec![1, 2, 3]]);
        assert!(matches!(is_regular(&t, &sq), Err(Error::NotATriangulation(_))));
    }
}
