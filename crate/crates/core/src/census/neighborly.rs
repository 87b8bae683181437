use itertools::Itertools;
use serde::Serialize;

use crate::error::Result;
use crate::kernel::{FaceOracle, PointConfiguration};
use crate::Label;

/// Outcome of a neighborliness test; `refuting` is the first `k`-subset
/// that is not the vertex set of a face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborlyCheck {
    pub k: usize,
    pub holds: bool,
    pub refuting: Option<Vec<Label>>,
}

/// Whether every `k`-subset of the points is the vertex set of a face.
///
/// `k = 0` always holds. Subsets of size at least `d` are never proper
/// faces of a full-dimensional hull unless `k = d` and they span a facet.
pub fn is_k_neighborly(config: &PointConfiguration, k: usize) -> Result<NeighborlyCheck> {
    if k == 0 {
        return Ok(NeighborlyCheck {
            k,
            holds: true,
            refuting: None,
        });
    }
    if config.dim() == 0 {
        let holds = k == 1 && config.len() == 1;
        return Ok(NeighborlyCheck {
            k,
            holds,
            refuting: (!holds).then(|| config.labels().iter().take(k).copied().collect()),
        });
    }
    let oracle = FaceOracle::new(config)?;
    let refuting = config
        .labels()
        .iter()
        .copied()
        .combinations(k)
        .find(|s| !oracle.is_face(s));
    Ok(NeighborlyCheck {
        k,
        holds: refuting.is_none(),
        refuting,
    })
}

/// The largest `k` with `is_k_neighborly(config, k)`, capped at `dim / 2`
/// (a polytope that is not a simplex is at most that neighborly).
pub fn neighborliness(config: &PointConfiguration) -> Result<usize> {
    let mut k = 0;
    while k < config.dim() / 2 && is_k_neighborly(config, k + 1)?.holds {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{convex_polygon, cyclic, square};

    #[test]
    fn vertices_are_faces() {
        assert!(is_k_neighborly(&convex_polygon(7), 1).unwrap().holds);
    }

    #[test]
    fn square_diagonal_refutes() {
        let c = is_k_neighborly(&square(), 2).unwrap();
        assert!(!c.holds);
        assert_eq!(c.refuting, Some(vec![1, 3]));
    }

    #[test]
    fn cyclic_four_eight_is_two_neighborly() {
        let c = cyclic(4, 8);
        assert!(is_k_neighborly(&c, 2).unwrap().holds);
        assert!(!is_k_neighborly(&c, 3).unwrap().holds);
        assert_eq!(neighborliness(&c).unwrap(), 2);
    }
}
