//! Point configurations and exact convex-geometry predicates.

mod config;
mod hull;
mod matroid;

pub use config::{ConfigJson, PointConfiguration};
pub use hull::{
    affine_dimension, classify_visibility, convex_position_violation, face_lattice,
    face_lattice_faces, facets, is_face, is_full_dimensional, is_general_position, orientation,
    orientation_of, visibility_from_facets, FaceOracle, FaceRecord, Visibility, VisibilityKind,
};
pub(crate) use hull::hyperplane_through;
pub use matroid::{bits, Circuit, Mask, Matroid};

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rational::Rational;
use crate::Label;

/// Fails with `NotConvexPosition` unless every point is a hull vertex.
pub fn require_convex_position(config: &PointConfiguration) -> Result<()> {
    match convex_position_violation(config)? {
        Some(l) => Err(Error::NotConvexPosition(l)),
        None => Ok(()),
    }
}

/// Coordinates of the points in an affine chart of their own affine span:
/// keeps a set of coordinate axes on which the span projects bijectively.
pub fn intrinsic_chart(points: &[&[Rational]]) -> (usize, Vec<Vec<Rational>>) {
    let Some(first) = points.first() else {
        return (0, Vec::new());
    };
    let d = first.len();
    let diffs: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    let k = rank(&diffs);
    let mut axes: Vec<usize> = Vec::new();
    for c in 0..d {
        if axes.len() == k {
            break;
        }
        let mut trial = axes.clone();
        trial.push(c);
        let proj: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|v| trial.iter().map(|&a| v[a].clone()).collect())
            .collect();
        if rank(&proj) == trial.len() {
            axes = trial;
        }
    }
    let coords = points
        .iter()
        .map(|p| axes.iter().map(|&a| p[a].clone()).collect())
        .collect();
    (k, coords)
}

/// Restriction of `config` to `labels`, re-expressed in an intrinsic chart.
pub fn subconfiguration_chart(
    config: &PointConfiguration,
    labels: &[Label],
) -> Result<PointConfiguration> {
    let idx = config.indices_of(labels)?;
    let pts: Vec<&[Rational]> = idx.iter().map(|&i| config.point(i)).collect();
    let (k, coords) = intrinsic_chart(&pts);
    Ok(PointConfiguration::derived(
        k,
        coords,
        idx.iter().map(|&i| config.label(i)).collect(),
    ))
}
