use std::collections::{BTreeSet, HashSet, VecDeque};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::PointConfiguration;
use crate::linalg::{det_sign, dot, nullspace, rank};
use crate::lp::{gordan, Gordan};
use crate::rational::{int, sign, Rational};
use crate::Label;

/// A face together with a certified supporting functional
/// `x -> normal . x - offset`, zero on the face and negative elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub labels: Vec<Label>,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl FaceRecord {
    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }
}

/// Sign of `det [p_i 1]` over the given labels, in the given order.
pub fn orientation(config: &PointConfiguration, labels: &[Label]) -> Result<i8> {
    if labels.len() != config.dim() + 1 {
        return Err(Error::OutOfRange(format!(
            "orientation needs {} labels, got {}",
            config.dim() + 1,
            labels.len()
        )));
    }
    let rows: Vec<Vec<Rational>> = labels
        .iter()
        .map(|&l| config.require_index(l).map(|i| config.homogenized(i)))
        .collect::<Result<_>>()?;
    Ok(det_sign(&rows))
}

/// Orientation of raw points (`d + 1` points in `R^d`).
pub fn orientation_of(points: &[&[Rational]]) -> i8 {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r = p.to_vec();
            r.push(int(1));
            r
        })
        .collect();
    det_sign(&rows)
}

/// Dimension of the affine span of the given points (`-1` for none).
pub fn affine_dimension(points: &[&[Rational]]) -> isize {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r = p.to_vec();
            r.push(int(1));
            r
        })
        .collect();
    rank(&rows) as isize - 1
}

pub fn is_full_dimensional(config: &PointConfiguration) -> bool {
    let pts: Vec<&[Rational]> = config.points().iter().map(|p| p.as_slice()).collect();
    affine_dimension(&pts) == config.dim() as isize
}

/// Hyperplane through `d` affinely independent points as `(a, c)` with
/// `a . x + c = 0` on them; `None` when they do not span a hyperplane.
pub(crate) fn hyperplane_through(points: &[&[Rational]]) -> Option<(Vec<Rational>, Rational)> {
    let d = points.first().map(|p| p.len())?;
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r = p.to_vec();
            r.push(int(1));
            r
        })
        .collect();
    let ker = nullspace(&rows, d + 1);
    if ker.len() != 1 {
        return None;
    }
    let mut h = ker.into_iter().next().unwrap();
    let c = h.pop().unwrap();
    Some((h, c))
}

/// All facets of `conv(config)`, each with a certified supporting functional.
///
/// Brute force over `d`-subsets. Points that are coplanar with a facet are
/// merged into its label set, so non-simplicial facets come back as maximal
/// coplanar label sets.
pub fn facets(config: &PointConfiguration) -> Result<Vec<FaceRecord>> {
    let d = config.dim();
    if d == 0 || !is_full_dimensional(config) {
        return Err(Error::NotFullDimensional);
    }
    let n = config.len();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for subset in (0..n).combinations(d) {
        if let Some(first) = seen.iter().find(|f| subset.iter().all(|i| f.contains(i))) {
            let _ = first;
            continue;
        }
        let pts: Vec<&[Rational]> = subset.iter().map(|&i| config.point(i)).collect();
        let Some((a, c)) = hyperplane_through(&pts) else {
            continue;
        };
        let values: Vec<Rational> = (0..n).map(|i| dot(&a, config.point(i)) + &c).collect();
        let pos = values.iter().any(|v| v.is_positive());
        let neg = values.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        let on: Vec<usize> = (0..n).filter(|&i| values[i].is_zero()).collect();
        if !seen.insert(on.clone()) {
            continue;
        }
        // Orient so the functional is negative off the facet.
        let (normal, offset) = if pos {
            (a.iter().map(|x| -x.clone()).collect(), c)
        } else {
            (a, -c)
        };
        out.push(FaceRecord {
            labels: config.labels_of(&on),
            normal,
            offset,
        });
    }
    out.sort_by(|x, y| x.labels.cmp(&y.labels));
    Ok(out)
}

/// Smallest face containing `labels`, as the intersection of the facets that
/// contain it; `None` if no facet contains them.
fn closure(facet_sets: &[BTreeSet<Label>], labels: &BTreeSet<Label>) -> Option<BTreeSet<Label>> {
    let mut acc: Option<BTreeSet<Label>> = None;
    for f in facet_sets.iter().filter(|f| labels.is_subset(f)) {
        acc = Some(match acc {
            None => f.clone(),
            Some(a) => a.intersection(f).copied().collect(),
        });
    }
    acc
}

/// Precomputed facet sets for repeated face membership queries.
#[derive(Clone, Debug)]
pub struct FaceOracle {
    facet_sets: Vec<BTreeSet<Label>>,
}

impl FaceOracle {
    pub fn new(config: &PointConfiguration) -> Result<Self> {
        Ok(FaceOracle {
            facet_sets: facets(config)?
                .into_iter()
                .map(|f| f.labels.into_iter().collect())
                .collect(),
        })
    }

    /// True iff `labels` is exactly the point set of a proper face.
    pub fn is_face(&self, labels: &[Label]) -> bool {
        let s: BTreeSet<Label> = labels.iter().copied().collect();
        if s.is_empty() {
            return true;
        }
        closure(&self.facet_sets, &s).is_some_and(|c| c == s)
    }

    pub fn facet_sets(&self) -> &[BTreeSet<Label>] {
        &self.facet_sets
    }
}

/// True iff `labels` is the point set of a proper face of `conv(config)`.
pub fn is_face(config: &PointConfiguration, labels: &[Label]) -> Result<bool> {
    Ok(FaceOracle::new(config)?.is_face(labels))
}

/// All proper nonempty faces grouped by dimension `0..d-1`, as label sets.
pub fn face_lattice(config: &PointConfiguration) -> Result<Vec<BTreeSet<Vec<Label>>>> {
    let d = config.dim();
    let facet_sets: Vec<BTreeSet<Label>> = facets(config)?
        .into_iter()
        .map(|f| f.labels.into_iter().collect())
        .collect();
    let mut all: HashSet<BTreeSet<Label>> = facet_sets.iter().cloned().collect();
    let mut queue: VecDeque<BTreeSet<Label>> = facet_sets.iter().cloned().collect();
    while let Some(face) = queue.pop_front() {
        for f in &facet_sets {
            let meet: BTreeSet<Label> = face.intersection(f).copied().collect();
            if !meet.is_empty() && meet != face && all.insert(meet.clone()) {
                queue.push_back(meet);
            }
        }
    }
    let mut by_dim = vec![BTreeSet::new(); d];
    for face in all {
        let labels: Vec<Label> = face.into_iter().collect();
        let pts: Vec<&[Rational]> = labels
            .iter()
            .map(|&l| config.coords(l))
            .collect::<Result<_>>()?;
        let k = affine_dimension(&pts);
        debug_assert!(k >= 0 && (k as usize) < d);
        by_dim[k as usize].insert(labels);
    }
    Ok(by_dim)
}

/// Label sets of the `k`-dimensional faces.
pub fn face_lattice_faces(config: &PointConfiguration, k: usize) -> Result<BTreeSet<Vec<Label>>> {
    if k >= config.dim() {
        return Err(Error::OutOfRange(format!(
            "face dimension {k} outside [0, {}]",
            config.dim().saturating_sub(1)
        )));
    }
    Ok(face_lattice(config)?.swap_remove(k))
}

/// Which supporting functionals of a face exist relative to an outside point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visibility {
    /// Zero on the face, positive at the point, negative on the rest.
    pub visible: bool,
    /// Zero on the face, negative at the point and on the rest.
    pub hidden: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VisibilityKind {
    Visible,
    Hidden,
    Both,
    Neither,
}

impl Visibility {
    pub fn kind(&self) -> VisibilityKind {
        match (self.visible, self.hidden) {
            (true, false) => VisibilityKind::Visible,
            (false, true) => VisibilityKind::Hidden,
            (true, true) => VisibilityKind::Both,
            (false, false) => VisibilityKind::Neither,
        }
    }
}

/// Decides visibility of `face` from `p` by two exact feasibility problems.
pub fn classify_visibility(
    config: &PointConfiguration,
    face: &[Label],
    p: &[Rational],
) -> Result<Visibility> {
    let d = config.dim();
    if p.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.len(),
        });
    }
    let on = config.indices_of(face)?;
    // Functionals f(x) = a . x + c vanishing on the face: f = N z.
    let eq: Vec<Vec<Rational>> = on.iter().map(|&i| config.homogenized(i)).collect();
    let basis = if eq.is_empty() {
        (0..=d)
            .map(|k| (0..=d).map(|j| int((j == k) as i64)).collect())
            .collect()
    } else {
        nullspace(&eq, d + 1)
    };
    let k = basis.len();
    let project = |x: &[Rational]| -> Vec<Rational> {
        let mut h = x.to_vec();
        h.push(int(1));
        basis.iter().map(|b| dot(b, &h)).collect()
    };
    let rest: Vec<Vec<Rational>> = (0..config.len())
        .filter(|i| !on.contains(i))
        .map(|i| project(config.point(i)).into_iter().map(|v| -v).collect())
        .collect();
    if k == 0 || matches!(gordan(&rest, k), Gordan::Certificate(_)) {
        return Err(Error::NotAFace(face.to_vec()));
    }
    let at_p = project(p);
    let with = |s: i64| {
        let mut rows = rest.clone();
        rows.push(at_p.iter().map(|v| v * int(s)).collect());
        matches!(gordan(&rows, k), Gordan::Strict(_))
    };
    Ok(Visibility {
        visible: with(1),
        hidden: with(-1),
    })
}

/// Visibility read off the facets containing the face; used as an
/// independent cross-check of [`classify_visibility`].
pub fn visibility_from_facets(
    facets: &[FaceRecord],
    face: &[Label],
    p: &[Rational],
) -> Visibility {
    let containing = facets
        .iter()
        .filter(|f| face.iter().all(|l| f.labels.contains(l)));
    let mut v = Visibility {
        visible: false,
        hidden: false,
    };
    for f in containing {
        match sign(&f.value(p)) {
            1 => v.visible = true,
            -1 => v.hidden = true,
            _ => {}
        }
    }
    v
}

/// True iff `q` lies on no hyperplane spanned by points of `config`
/// (and in particular is not one of them).
pub fn is_general_position(config: &PointConfiguration, q: &[Rational]) -> bool {
    let d = config.dim();
    if config.points().iter().any(|p| p.as_slice() == q) {
        return false;
    }
    for subset in (0..config.len()).combinations(d) {
        let mut pts: Vec<&[Rational]> = subset.iter().map(|&i| config.point(i)).collect();
        if affine_dimension(&pts) != d as isize - 1 {
            continue;
        }
        pts.push(q);
        if orientation_of(&pts) == 0 {
            return false;
        }
    }
    true
}

/// Every point is a vertex of the convex hull.
pub fn convex_position_violation(config: &PointConfiguration) -> Result<Option<Label>> {
    if config.dim() == 0 {
        return Ok(if config.len() <= 1 {
            None
        } else {
            Some(config.label(1))
        });
    }
    let oracle = FaceOracle::new(config)?;
    Ok(config
        .labels()
        .iter()
        .copied()
        .find(|&l| !oracle.is_face(&[l])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, simplex, square};
    use crate::rational::rat;

    #[test]
    fn orientation_examples() {
        let tri = PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(orientation(&tri, &[1, 2, 3]).unwrap(), 1);
        assert_eq!(orientation(&tri, &[1, 1, 3]).unwrap(), 0);
        let line = PointConfiguration::from_ints(1, &[vec![0], vec![1]]).unwrap();
        let a = orientation(&line, &[1, 2]).unwrap();
        let b = orientation(&line, &[2, 1]).unwrap();
        assert_eq!(a, -b);
        assert_ne!(a, 0);
        assert_eq!(orientation(&tri, &[1, 2, 9]), Err(Error::UnknownLabel(9)));
    }

    #[test]
    fn facets_of_small_polytopes() {
        for d in 1..=4 {
            assert_eq!(facets(&simplex(d)).unwrap().len(), d + 1);
        }
        let sq = facets(&square()).unwrap();
        let sets: Vec<Vec<Label>> = sq.iter().map(|f| f.labels.clone()).collect();
        assert_eq!(sets, vec![vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]);
        let flat = PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 0], vec![2, 0]]).unwrap();
        assert_eq!(facets(&flat), Err(Error::NotFullDimensional));
    }

    #[test]
    fn coplanar_points_merge_into_one_facet() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]])
            .unwrap();
        let sets: Vec<Vec<Label>> = facets(&c).unwrap().into_iter().map(|f| f.labels).collect();
        assert_eq!(sets, vec![vec![1, 2, 3], vec![1, 4], vec![3, 4]]);
    }

    #[test]
    fn supporting_functionals_are_certified() {
        let c = cyclic(3, 6);
        for f in facets(&c).unwrap() {
            for (i, p) in c.points().iter().enumerate() {
                let s = sign(&f.value(p));
                if f.labels.contains(&c.label(i)) {
                    assert_eq!(s, 0);
                } else {
                    assert_eq!(s, -1);
                }
            }
        }
    }

    #[test]
    fn face_lattice_of_square_and_simplex() {
        let v = face_lattice_faces(&square(), 0).unwrap();
        assert_eq!(v.len(), 4);
        let s = simplex(3);
        for k in 0..3 {
            let faces = face_lattice_faces(&s, k).unwrap();
            let expected: BTreeSet<Vec<Label>> = (1..=4).combinations(k + 1).collect();
            assert_eq!(faces, expected);
        }
        assert!(face_lattice_faces(&s, 3).is_err());
    }

    #[test]
    fn visibility_of_square_edge() {
        let sq = square();
        let below = classify_visibility(&sq, &[1, 2], &[rat(1, 2), int(-1)]).unwrap();
        assert_eq!(below.kind(), VisibilityKind::Visible);
        let above = classify_visibility(&sq, &[1, 2], &[rat(1, 2), int(2)]).unwrap();
        assert_eq!(above.kind(), VisibilityKind::Hidden);
        // A vertex between a visible and a hidden edge admits both functionals.
        let corner = classify_visibility(&sq, &[2], &[rat(1, 2), int(-1)]).unwrap();
        assert_eq!(corner.kind(), VisibilityKind::Both);
        assert_eq!(
            classify_visibility(&sq, &[1, 3], &[int(5), int(5)]),
            Err(Error::NotAFace(vec![1, 3]))
        );
    }

    #[test]
    fn general_position_examples() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 1], vec![2, 2], vec![0, 3]])
            .unwrap();
        assert!(!is_general_position(&c, &[int(5), int(5)]));
        assert!(!is_general_position(&c, &[int(0), int(3)]));
        assert!(is_general_position(&c, &[rat(1, 7), rat(3, 11)]));
    }
}
