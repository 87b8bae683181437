use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernel::{bits, facets, Circuit, Mask, Matroid, PointConfiguration};
use crate::triangulation::Triangulation;
use crate::Label;

/// Why a set of cells fails to be a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A cell that is not a full-dimensional simplex.
    Degenerate(Vec<Label>),
    /// Two cells meeting outside a common face, with the separating circuit
    /// as `(part in first, part in second)`.
    Overlap {
        cells: (Vec<Label>, Vec<Label>),
        circuit: (Vec<Label>, Vec<Label>),
    },
    /// An interior ridge with a cell on one side only: the cells miss volume
    /// beyond it.
    Uncovered(Vec<Label>),
    /// An interior ridge claimed by more than two cells.
    Crowded(Vec<Label>),
    Empty,
}

/// Precomputed circuits and hull facets for repeated triangulation queries.
#[derive(Clone, Debug)]
pub struct Checker {
    matroid: Matroid,
    facet_masks: Vec<Mask>,
}

impl Checker {
    pub fn new(config: &PointConfiguration) -> Result<Self> {
        let matroid = Matroid::new(config)?;
        let facet_masks = facets(config)?
            .iter()
            .map(|f| matroid.mask(&f.labels))
            .collect::<Result<_>>()?;
        Ok(Checker {
            matroid,
            facet_masks,
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn config(&self) -> &PointConfiguration {
        self.matroid.config()
    }

    pub fn circuits(&self) -> &[Circuit] {
        self.matroid.circuits()
    }

    pub fn on_boundary(&self, ridge: Mask) -> bool {
        self.facet_masks.iter().any(|&f| ridge & !f == 0)
    }

    pub fn masks(&self, t: &Triangulation) -> Result<Vec<Mask>> {
        t.cells().iter().map(|c| self.matroid.mask(c)).collect()
    }

    pub fn check(&self, t: &Triangulation) -> Result<Option<Violation>> {
        let masks = self.masks(t)?;
        Ok(self.check_masks(&masks))
    }

    pub fn check_masks(&self, cells: &[Mask]) -> Option<Violation> {
        let d = self.config().dim();
        let labels = |m: Mask| self.matroid.labels(m);
        if cells.is_empty() {
            return Some(Violation::Empty);
        }
        for &c in cells {
            if c.count_ones() as usize != d + 1 || !self.matroid.is_independent(c) {
                return Some(Violation::Degenerate(labels(c)));
            }
        }
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                if let Some(z) = self.matroid.improper_witness(a, b) {
                    return Some(Violation::Overlap {
                        cells: (labels(a), labels(b)),
                        circuit: (labels(z.pos), labels(z.neg)),
                    });
                }
            }
        }
        let mut ridges: HashMap<Mask, usize> = HashMap::new();
        for &c in cells {
            for v in bits(c) {
                *ridges.entry(c & !(1 << v)).or_default() += 1;
            }
        }
        let mut sorted: Vec<(Mask, usize)> = ridges.into_iter().collect();
        sorted.sort_unstable();
        for (r, k) in sorted {
            let boundary = self.on_boundary(r);
            if boundary && k == 1 {
                continue;
            }
            if !boundary && k == 2 {
                continue;
            }
            return Some(if k == 1 {
                Violation::Uncovered(labels(r))
            } else {
                Violation::Crowded(labels(r))
            });
        }
        None
    }
}

/// `Ok(None)` if the cells triangulate `conv(config)`, otherwise a witness.
pub fn is_triangulation(t: &Triangulation, config: &PointConfiguration) -> Result<Option<Violation>> {
    Checker::new(config)?.check(t)
}

pub(crate) fn require_triangulation(checker: &Checker, t: &Triangulation) -> Result<()> {
    match checker.check(t)? {
        None => Ok(()),
        Some(v) => Err(Error::NotATriangulation(format!("{v:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::square;

    #[test]
    fn square_triangulations() {
        let sq = square();
        let good = Triangulation::new(vec![vec![1, 2, 4], vec![2, 3, 4]]);
        assert_eq!(is_triangulation(&good, &sq).unwrap(), None);
        let both = Triangulation::new(vec![
            vec![1, 2, 4],
            vec![2, 3, 4],
            vec![1, 2, 3],
            vec![1, 3, 4],
        ]);
        assert!(matches!(
            is_triangulation(&both, &sq).unwrap(),
            Some(Violation::Overlap { .. })
        ));
        let half = Triangulation::new(vec![vec![1, 2, 4]]);
        assert_eq!(
            is_triangulation(&half, &sq).unwrap(),
            Some(Violation::Uncovered(vec![2, 4]))
        );
    }
}
