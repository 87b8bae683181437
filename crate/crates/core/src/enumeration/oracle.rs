use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumeration::Enumeration;
use crate::error::{Error, Result};
use crate::kernel::{bits, is_general_position, Mask, PointConfiguration};
use crate::linalg::{dot, inverse, transpose};
use crate::rational::{int, Rational};
use crate::triangulation::{regularity, Checker, Triangulation};

/// Brute-force search over all triangulations, independent of flips.
///
/// Every triangulation has exactly one cell containing a fixed generic
/// interior point; from there the search repeatedly picks the smallest
/// interior ridge with a cell on one side only and branches over the cells
/// that could sit on its other side.
struct Oracle<'a> {
    checker: &'a Checker,
    simplices: Vec<Mask>,
    /// `compatible[a]` has bit `b` set iff simplices `a` and `b` meet properly.
    compatible: Vec<Vec<u64>>,
    by_ridge: HashMap<Mask, Vec<usize>>,
    budget: Option<usize>,
    found: BTreeSet<Vec<Mask>>,
}

fn test_bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

impl Oracle<'_> {
    fn search(&mut self, chosen: &mut Vec<usize>) -> Result<()> {
        let mut ridges: HashMap<Mask, (usize, usize)> = HashMap::new();
        for &c in chosen.iter() {
            let cell = self.simplices[c];
            for v in bits(cell) {
                let e = ridges.entry(cell & !(1 << v)).or_insert((0, c));
                e.0 += 1;
            }
        }
        let open = ridges
            .iter()
            .filter(|(&r, &(k, _))| k == 1 && !self.checker.on_boundary(r))
            .map(|(&r, &(_, c))| (r, c))
            .min();
        let Some((ridge, owner)) = open else {
            let mut cells: Vec<Mask> = chosen.iter().map(|&c| self.simplices[c]).collect();
            cells.sort_unstable();
            self.found.insert(cells);
            if self.budget.is_some_and(|b| self.found.len() > b) {
                return Err(Error::BudgetExceeded {
                    count: self.found.len(),
                    frontier: 0,
                });
            }
            return Ok(());
        };
        let options: Vec<usize> = self.by_ridge[&ridge]
            .iter()
            .copied()
            .filter(|&s| s != owner && chosen.iter().all(|&c| test_bit(&self.compatible[s], c)))
            .collect();
        for s in options {
            chosen.push(s);
            self.search(chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// A rational point in the interior of `conv(config)` lying on no hyperplane
/// spanned by configuration points.
fn generic_interior_point(config: &PointConfiguration, simplex: &[usize]) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11);
    loop {
        let weights: Vec<Rational> = simplex
            .iter()
            .map(|_| int(rng.gen_range(1..1_000_000)))
            .collect();
        let total: Rational = weights.iter().sum();
        let d = config.dim();
        let x: Vec<Rational> = (0..d)
            .map(|k| {
                simplex
                    .iter()
                    .zip(&weights)
                    .map(|(&i, w)| &config.point(i)[k] * w)
                    .sum::<Rational>()
                    / &total
            })
            .collect();
        if is_general_position(config, &x) {
            return x;
        }
    }
}

fn contains_strictly(config: &PointConfiguration, cell: Mask, x: &[Rational]) -> bool {
    let idx: Vec<usize> = bits(cell).collect();
    let m: Vec<Vec<Rational>> = idx.iter().map(|&i| config.homogenized(i)).collect();
    let inv_t = inverse(&transpose(&m)).expect("independent");
    let mut h = x.to_vec();
    h.push(int(1));
    inv_t.iter().all(|row| dot(row, &h).is_positive())
}

/// Every triangulation of `config`, regular or not.
///
/// With a budget the search stops after more than `budget` triangulations
/// and the partial result is flagged.
pub fn enumerate_all_oracle_with(
    config: &PointConfiguration,
    budget: Option<usize>,
) -> Result<Enumeration> {
    let checker = Checker::new(config)?;
    let d = config.dim();
    let m = checker.matroid();
    let simplices: Vec<Mask> = (0..config.len())
        .combinations(d + 1)
        .map(|s| s.iter().fold(0, |acc, &i| acc | 1 << i))
        .filter(|&s| m.is_independent(s))
        .collect();
    let words = simplices.len().div_ceil(64);
    let compatible: Vec<Vec<u64>> = simplices
        .iter()
        .map(|&a| {
            let mut row = vec![0u64; words];
            for (j, &b) in simplices.iter().enumerate() {
                if m.proper(a, b) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut by_ridge: HashMap<Mask, Vec<usize>> = HashMap::new();
    for (i, &s) in simplices.iter().enumerate() {
        for v in bits(s) {
            by_ridge.entry(s & !(1 << v)).or_default().push(i);
        }
    }
    let first: Vec<usize> = bits(simplices[0]).collect();
    let x = generic_interior_point(config, &first);
    let roots: Vec<usize> = (0..simplices.len())
        .filter(|&i| contains_strictly(config, simplices[i], &x))
        .collect();
    let mut oracle = Oracle {
        checker: &checker,
        simplices,
        compatible,
        by_ridge,
        budget,
        found: BTreeSet::new(),
    };
    let mut budget_hit = false;
    for r in roots {
        match oracle.search(&mut vec![r]) {
            Ok(()) => {}
            Err(Error::BudgetExceeded { .. }) => {
                budget_hit = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Enumeration {
        triangulations: oracle
            .found
            .iter()
            .map(|cells| Triangulation::new(cells.iter().map(|&c| m.labels(c))))
            .collect(),
        budget_hit,
        frontier: 0,
    })
}

pub fn enumerate_all_oracle(config: &PointConfiguration) -> Result<BTreeSet<Triangulation>> {
    enumerate_all_oracle_with(config, None)?.complete()
}

/// The regular members of a set of triangulations.
pub fn regular_subset(
    config: &PointConfiguration,
    all: &BTreeSet<Triangulation>,
) -> Result<BTreeSet<Triangulation>> {
    let checker = Checker::new(config)?;
    let mut out = BTreeSet::new();
    for t in all {
        if regularity(&checker, t)?.is_regular() {
            out.insert(t.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{convex_polygon, square};

    #[test]
    fn catalan_counts_for_polygons() {
        assert_eq!(enumerate_all_oracle(&square()).unwrap().len(), 2);
        let catalan = [1, 2, 5, 14, 42];
        for (k, &c) in catalan.iter().enumerate() {
            let n = k + 3;
            assert_eq!(enumerate_all_oracle(&convex_polygon(n)).unwrap().len(), c);
        }
    }

    #[test]
    fn budget_keeps_partial_results() {
        let e = enumerate_all_oracle_with(&convex_polygon(7), Some(10)).unwrap();
        assert!(e.budget_hit);
        assert!(e.count() > 10);
    }

    #[test]
    fn every_result_is_a_triangulation() {
        let c = PointConfiguration::from_ints(
            2,
            &[vec![0, 0], vec![6, 0], vec![0, 6], vec![1, 2], vec![2, 1]],
        )
        .unwrap();
        let checker = Checker::new(&c).unwrap();
        let all = enumerate_all_oracle(&c).unwrap();
        assert!(!all.is_empty());
        for t in &all {
            assert_eq!(checker.check(t).unwrap(), None);
        }
    }
}
