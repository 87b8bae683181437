use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{facets, PointConfiguration};
use crate::Label;

/// `h_0, ..., h_{D+1}` of a pure `D`-dimensional simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn get(&self, j: isize) -> i64 {
        if j < 0 {
            0
        } else {
            self.0.get(j as usize).copied().unwrap_or(0)
        }
    }

    pub fn csv_row(&self) -> String {
        self.0.iter().join(",")
    }
}

/// All nonempty faces of the given cells.
pub fn faces_of<'a>(cells: impl IntoIterator<Item = &'a Vec<Label>>) -> BTreeSet<Vec<Label>> {
    let mut out = BTreeSet::new();
    for c in cells {
        for k in 1..=c.len() {
            for f in c.iter().copied().combinations(k) {
                out.insert(f);
            }
        }
    }
    out
}

fn pure_dimension(cells: &[Vec<Label>]) -> Result<usize> {
    let size = cells.first().ok_or(Error::NonPureComplex)?.len();
    if size == 0 || cells.iter().any(|c| c.len() != size) {
        return Err(Error::NonPureComplex);
    }
    Ok(size - 1)
}

/// `f_{-1}, f_0, ..., f_D` (the leading entry counts the empty face).
pub fn f_vector(cells: &[Vec<Label>]) -> Result<Vec<i64>> {
    let dim = pure_dimension(cells)?;
    let mut f = vec![0i64; dim + 2];
    f[0] = 1;
    for face in faces_of(cells) {
        f[face.len()] += 1;
    }
    Ok(f)
}

/// `h_j = sum_{k=0}^{j} (-1)^{j-k} C(D+1-k, D+1-j) f_{k-1}`.
pub fn h_vector(cells: &[Vec<Label>]) -> Result<HVector> {
    let f = f_vector(cells)?;
    let top = f.len() - 1;
    let h = (0..=top)
        .map(|j| {
            (0..=j)
                .map(|k| {
                    let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                    sign * binomial((top - k) as i64, (top - j) as i64) * f[k]
                })
                .sum()
        })
        .collect();
    Ok(HVector(h))
}

/// Facets of a simplicial polytope, as the cells of its boundary complex.
pub fn boundary_complex(config: &PointConfiguration) -> Result<Vec<Vec<Label>>> {
    let d = config.dim();
    let fs = facets(config)?;
    if let Some(f) = fs.iter().find(|f| f.labels.len() != d) {
        return Err(Error::Precondition(format!(
            "facet {:?} is not a simplex",
            f.labels
        )));
    }
    Ok(fs.into_iter().map(|f| f.labels).collect())
}

/// `h_j(dQ) - h_{j-1}(dQ) = h_j(T) - h_{d+1-j}(T)` for every `0 <= j <= d`.
pub fn mcmullen_walkup_holds(boundary: &HVector, t: &HVector, d: usize) -> bool {
    (0..=d as isize).all(|j| {
        boundary.get(j) - boundary.get(j - 1) == t.get(j) - t.get(d as isize + 1 - j)
    })
}

/// `C(n - d - 1 + k, k)`, the minimum cell count for triangulations of a
/// `k`-neighborly simplicial `d`-polytope with `n` vertices.
pub fn min_cells_bound(n: usize, d: usize, k: usize) -> Result<u64> {
    if k < 1 || k > d / 2 || n <= d {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= floor(d/2) and n > d, got n={n}, d={d}, k={k}"
        )));
    }
    Ok(binomial((n - d - 1 + k) as u64, k as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplex;

    #[test]
    fn simplex_and_its_boundary() {
        for d in 1..=5 {
            let cell: Vec<Label> = (1..=d + 1).collect();
            let mut h = vec![0; d + 2];
            h[0] = 1;
            assert_eq!(h_vector(&[cell]).unwrap(), HVector(h));
            let b = boundary_complex(&simplex(d)).unwrap();
            assert_eq!(h_vector(&b).unwrap(), HVector(vec![1; d + 1]));
        }
    }

    #[test]
    fn rejects_mixed_sizes() {
        assert_eq!(
            h_vector(&[vec![1, 2], vec![1, 2, 3]]),
            Err(Error::NonPureComplex)
        );
    }

    #[test]
    fn bound_values() {
        assert_eq!(min_cells_bound(8, 4, 2).unwrap(), 10);
        assert_eq!(min_cells_bound(6, 3, 1).unwrap(), 3);
        assert_eq!(min_cells_bound(5, 4, 2).unwrap(), 1);
        assert!(min_cells_bound(6, 3, 2).is_err());
    }
}
