use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::PointConfiguration;
use crate::linalg::{nullspace, rank};
use crate::rational::Rational;
use crate::Label;

/// Bitmask over point indices (not labels) of a configuration.
pub type Mask = u64;

/// A signed minimal affine dependence: `sum_{pos} l_i p_i = sum_{neg} l_j p_j`
/// with positive coefficients summing to the same total on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub pos: Mask,
    pub neg: Mask,
}

impl Circuit {
    pub fn support(&self) -> Mask {
        self.pos | self.neg
    }

    pub fn reversed(&self) -> Circuit {
        Circuit {
            pos: self.neg,
            neg: self.pos,
        }
    }
}

/// The oriented circuits of a configuration, indexed for fast cell queries.
#[derive(Clone, Debug)]
pub struct Matroid {
    config: PointConfiguration,
    circuits: Vec<Circuit>,
    index: HashMap<Label, usize>,
}

pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

impl Matroid {
    pub fn new(config: &PointConfiguration) -> Result<Self> {
        let n = config.len();
        if n > 64 {
            return Err(Error::OutOfRange(format!("{n} points exceed the 64 point limit")));
        }
        let d = config.dim();
        let mut circuits = Vec::new();
        for k in 2..=(d + 2).min(n) {
            for subset in (0..n).combinations(k) {
                // Columns are the homogenized points of the subset.
                let rows: Vec<Vec<Rational>> = (0..=d)
                    .map(|r| {
                        subset
                            .iter()
                            .map(|&i| {
                                if r < d {
                                    config.point(i)[r].clone()
                                } else {
                                    Rational::from_integer(1.into())
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = nullspace(&rows, k);
                if ker.len() != 1 || ker[0].iter().any(|x| x.is_zero()) {
                    continue;
                }
                let mut c = Circuit { pos: 0, neg: 0 };
                for (j, &i) in subset.iter().enumerate() {
                    if ker[0][j].is_positive() {
                        c.pos |= 1 << i;
                    } else {
                        c.neg |= 1 << i;
                    }
                }
                circuits.push(c);
            }
        }
        let index = config
            .labels()
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i))
            .collect();
        Ok(Matroid {
            config: config.clone(),
            circuits,
            index,
        })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn mask(&self, labels: &[Label]) -> Result<Mask> {
        labels.iter().try_fold(0, |m, l| {
            self.index
                .get(l)
                .map(|&i| m | 1 << i)
                .ok_or(Error::UnknownLabel(*l))
        })
    }

    pub fn labels(&self, mask: Mask) -> Vec<Label> {
        self.config.labels_of(&bits(mask).collect::<Vec<_>>())
    }

    /// Affinely independent point sets contain no circuit.
    pub fn is_independent(&self, mask: Mask) -> bool {
        let rows: Vec<Vec<Rational>> = bits(mask).map(|i| self.config.homogenized(i)).collect();
        rank(&rows) == rows.len()
    }

    /// Whether the simplices `a` and `b` intersect in their common face.
    ///
    /// For independent sets this fails exactly when some circuit has its
    /// positive part in one and its negative part in the other.
    pub fn proper(&self, a: Mask, b: Mask) -> bool {
        !self.circuits.iter().any(|c| {
            (c.pos & !a == 0 && c.neg & !b == 0) || (c.neg & !a == 0 && c.pos & !b == 0)
        })
    }

    /// Circuit witnessing an improper intersection, if any.
    pub fn improper_witness(&self, a: Mask, b: Mask) -> Option<Circuit> {
        self.circuits.iter().find_map(|c| {
            if c.pos & !a == 0 && c.neg & !b == 0 {
                Some(*c)
            } else if c.neg & !a == 0 && c.pos & !b == 0 {
                Some(c.reversed())
            } else {
                None
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::square;

    #[test]
    fn square_has_one_full_circuit() {
        let m = Matroid::new(&square()).unwrap();
        assert_eq!(m.circuits().len(), 1);
        let c = m.circuits()[0];
        // The diagonals {1,3} and {2,4} are the two sides.
        let sides = [m.labels(c.pos), m.labels(c.neg)];
        assert!(sides.contains(&vec![1, 3]) && sides.contains(&vec![2, 4]));
        let t1 = m.mask(&[1, 2, 3]).unwrap();
        let t2 = m.mask(&[1, 3, 4]).unwrap();
        let t3 = m.mask(&[1, 2, 4]).unwrap();
        assert!(m.proper(t1, t2));
        assert!(!m.proper(t1, t3));
        assert!(m.improper_witness(t1, t3).is_some());
    }

    #[test]
    fn collinear_triple_is_a_circuit() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]])
            .unwrap();
        let m = Matroid::new(&c).unwrap();
        let line = m.mask(&[1, 2, 3]).unwrap();
        assert!(m.circuits().iter().any(|c| c.support() == line));
        assert!(!m.is_independent(line));
        assert!(m.is_independent(m.mask(&[1, 2, 4]).unwrap()));
    }
}
