use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{bits, Mask, PointConfiguration};
use crate::rational::Rational;
use crate::triangulation::{
    placing, regular_subdivision, regularity, Checker, LiftingVector, Triangulation,
};

/// Result of a (possibly truncated) enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub triangulations: BTreeSet<Triangulation>,
    /// Set when the budget stopped the search; the result is then only a
    /// lower bound.
    pub budget_hit: bool,
    /// Discovered but unexplored triangulations at the time of stopping.
    pub frontier: usize,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.triangulations.len()
    }

    /// The complete set, or `BudgetExceeded` for truncated runs.
    pub fn complete(self) -> Result<BTreeSet<Triangulation>> {
        if self.budget_hit {
            Err(Error::BudgetExceeded {
                count: self.triangulations.len(),
                frontier: self.frontier,
            })
        } else {
            Ok(self.triangulations)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub budget: Option<usize>,
    /// Worker threads; `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: None,
            jobs: 1,
        }
    }
}

/// All triangulations one bistellar flip away from `cells`.
///
/// A circuit `Z = Z+ ∪ Z-` is flippable when every `Z \ {z}` with `z ∈ Z+`
/// is a face of `T` with one common nonempty link `L`; the flip replaces
/// `(Z \ z) * L` for `z ∈ Z+` by `(Z \ z) * L` for `z ∈ Z-`.
pub fn flip_neighbors(checker: &Checker, cells: &[Mask]) -> Vec<Vec<Mask>> {
    let mut out = Vec::new();
    for c in checker.circuits() {
        for (pos, neg) in [(c.pos, c.neg), (c.neg, c.pos)] {
            let z = pos | neg;
            let mut link: Option<Vec<Mask>> = None;
            let mut ok = true;
            for v in bits(pos) {
                let sigma = z & !(1 << v);
                let mut l: Vec<Mask> = cells
                    .iter()
                    .filter(|&&cell| cell & sigma == sigma)
                    .map(|&cell| cell & !sigma)
                    .collect();
                l.sort_unstable();
                if l.is_empty() || link.as_ref().is_some_and(|prev| *prev != l) {
                    ok = false;
                    break;
                }
                link = Some(l);
            }
            let Some(link) = link.filter(|_| ok) else {
                continue;
            };
            let removed: HashSet<Mask> = bits(pos)
                .flat_map(|v| link.iter().map(move |&r| (z & !(1 << v)) | r))
                .collect();
            let mut next: Vec<Mask> = cells
                .iter()
                .copied()
                .filter(|m| !removed.contains(m))
                .collect();
            next.extend(bits(neg).flat_map(|v| link.iter().map(move |&r| (z & !(1 << v)) | r)));
            next.sort_unstable();
            out.push(next);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn to_triangulation(checker: &Checker, cells: &[Mask]) -> Triangulation {
    Triangulation::new(cells.iter().map(|&m| checker.matroid().labels(m)))
}

/// A regular triangulation to start from: the placing triangulation, or
/// for degenerate inputs one induced by seeded random heights.
pub fn initial_triangulation(config: &PointConfiguration) -> Result<Triangulation> {
    match placing(config) {
        Ok(t) => return Ok(t),
        Err(Error::DegenerateStep(_)) => {}
        Err(e) => return Err(e),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    loop {
        let values: Vec<Rational> = (0..config.len())
            .map(|_| Rational::new(rng.gen_range(0..1_000_000i64).into(), 1_000_000i64.into()))
            .collect();
        let w = LiftingVector::from_values(config, values)?;
        if let Some(t) = regular_subdivision(config, &w)?.to_triangulation() {
            return Ok(t);
        }
    }
}

pub(crate) fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    Ok(pool.install(f))
}

/// Regular triangulations reachable by flips through regular ones from the
/// placing triangulation, explored level by level.
pub fn enumerate_regular_with(config: &PointConfiguration, opts: &EnumOptions) -> Result<Enumeration> {
    let checker = Checker::new(config)?;
    let start = initial_triangulation(config)?;
    let start_masks = checker.masks(&start)?;
    with_jobs(opts.jobs, || {
        let mut seen: BTreeSet<Vec<Mask>> = BTreeSet::new();
        let mut rejected: HashSet<Vec<Mask>> = HashSet::new();
        seen.insert(start_masks.clone());
        let mut frontier = vec![start_masks];
        while !frontier.is_empty() {
            if opts.budget.is_some_and(|b| seen.len() >= b) {
                let triangulations = seen.iter().map(|m| to_triangulation(&checker, m)).collect();
                return Ok(Enumeration {
                    triangulations,
                    budget_hit: true,
                    frontier: frontier.len(),
                });
            }
            let candidates: BTreeSet<Vec<Mask>> = frontier
                .par_iter()
                .flat_map_iter(|cells| flip_neighbors(&checker, cells))
                .collect::<Vec<_>>()
                .into_iter()
                .filter(|c| !seen.contains(c) && !rejected.contains(c))
                .collect();
            let verdicts: Vec<(Vec<Mask>, bool)> = candidates
                .into_par_iter()
                .map(|cells| {
                    let t = to_triangulation(&checker, &cells);
                    let ok = regularity(&checker, &t).map(|r| r.is_regular());
                    ok.map(|ok| (cells, ok))
                })
                .collect::<Result<_>>()?;
            frontier = Vec::new();
            for (cells, ok) in verdicts {
                if ok {
                    seen.insert(cells.clone());
                    frontier.push(cells);
                } else {
                    rejected.insert(cells);
                }
            }
        }
        let triangulations = seen.iter().map(|m| to_triangulation(&checker, m)).collect();
        Ok(Enumeration {
            triangulations,
            budget_hit: false,
            frontier: 0,
        })
    })?
}

/// The complete set of regular triangulations.
pub fn enumerate_regular(config: &PointConfiguration) -> Result<BTreeSet<Triangulation>> {
    enumerate_regular_with(config, &EnumOptions::default())?.complete()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{convex_polygon, simplex, square};

    #[test]
    fn square_has_one_flip() {
        let sq = square();
        let checker = Checker::new(&sq).unwrap();
        let t = Triangulation::new(vec![vec![1, 2, 3], vec![1, 3, 4]]);
        let n = flip_neighbors(&checker, &checker.masks(&t).unwrap());
        assert_eq!(n.len(), 1);
        assert_eq!(
            to_triangulation(&checker, &n[0]),
            Triangulation::new(vec![vec![1, 2, 4], vec![2, 3, 4]])
        );
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_regular(&simplex(3)).unwrap().len(), 1);
        assert_eq!(enumerate_regular(&square()).unwrap().len(), 2);
        assert_eq!(enumerate_regular(&convex_polygon(6)).unwrap().len(), 14);
    }

    #[test]
    fn interior_point_can_be_skipped() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![4, 0], vec![0, 4], vec![1, 1]])
            .unwrap();
        // The triangle alone, and the triangle subdivided at the interior point.
        assert_eq!(enumerate_regular(&c).unwrap().len(), 2);
    }

    #[test]
    fn budget_truncates() {
        let e = enumerate_regular_with(
            &convex_polygon(7),
            &EnumOptions {
                budget: Some(5),
                jobs: 2,
            },
        )
        .unwrap();
        assert!(e.budget_hit);
        assert!(e.count() >= 5);
        assert!(matches!(e.complete(), Err(Error::BudgetExceeded { .. })));
    }
}
