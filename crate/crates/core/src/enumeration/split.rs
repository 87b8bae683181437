use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::moment_point;
use crate::enumeration::flips::enumerate_regular;
use crate::error::{Error, Result};
use crate::kernel::{hyperplane_through, is_general_position, Mask, PointConfiguration};
use crate::lifting::is_vertex;
use crate::linalg::dot;
use crate::lp::strict_solution;
use crate::rational::{int, Rational};
use crate::triangulation::{boxed, height_inequalities, LiftingVector, Triangulation};
use crate::Label;

/// A configuration containing a point `p` and a nearby copy `p_prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair {
    pub config: PointConfiguration,
    pub p: Label,
    pub p_prime: Label,
    /// Bound on every coordinate sum `|p - p'|_1`, hence on the distance.
    pub epsilon: Rational,
}

impl SplitPair {
    /// `P`: the configuration without `p'`.
    pub fn with_p(&self) -> PointConfiguration {
        self.config.delete(self.p_prime).expect("p' present")
    }

    /// `P'`: the configuration without `p`.
    pub fn with_p_prime(&self) -> PointConfiguration {
        self.config.delete(self.p).expect("p present")
    }

    /// Renames `p` to `p'` in a triangulation of `P`.
    pub fn to_prime(&self, t: &Triangulation) -> Triangulation {
        t.relabel(|l| if l == self.p { self.p_prime } else { l })
    }
}

/// Samples `p'` with `|p - p'|_1 <= epsilon`, in general position with
/// respect to the whole configuration, labeled `max_label + 1`.
pub fn split_point(
    config: &PointConfiguration,
    p: Label,
    epsilon: &Rational,
    seed: u64,
) -> Result<SplitPair> {
    if !is_vertex(config, p)? {
        return Err(Error::NotAVertex(p));
    }
    if !epsilon.is_positive() {
        return Err(Error::OutOfRange("epsilon must be positive".into()));
    }
    let d = config.dim();
    let base = config.coords(p)?.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const DEN: i64 = 1_000_003;
    let step = epsilon / int(d as i64);
    loop {
        let q: Vec<Rational> = base
            .iter()
            .map(|x| x + &step * Rational::new(rng.gen_range(-DEN..=DEN).into(), DEN.into()))
            .collect();
        if is_general_position(config, &q) {
            let label = config.max_label() + 1;
            return Ok(SplitPair {
                config: config.push(label, q)?,
                p,
                p_prime: label,
                epsilon: epsilon.clone(),
            });
        }
    }
}

/// Squared distance from `p` to the nearest hyperplane spanned by the
/// other points.
pub fn hyperplane_distance_sq(config: &PointConfiguration, p: Label) -> Result<Option<Rational>> {
    let d = config.dim();
    let x = config.coords(p)?;
    let others: Vec<usize> = (0..config.len()).filter(|&i| config.label(i) != p).collect();
    let mut best: Option<Rational> = None;
    for s in others.iter().combinations(d) {
        let pts: Vec<&[Rational]> = s.iter().map(|&&i| config.point(i)).collect();
        let Some((a, c)) = hyperplane_through(&pts) else {
            continue;
        };
        let v = dot(&a, x) + c;
        let dist = &v * &v / dot(&a, &a);
        if best.as_ref().map_or(true, |b| dist < *b) {
            best = Some(dist);
        }
    }
    Ok(best)
}

/// A power of two at most half the distance from `p` to the nearest
/// hyperplane spanned by the other points.
pub fn initial_split_epsilon(config: &PointConfiguration, p: Label) -> Result<Rational> {
    let mut eps = Rational::one();
    let Some(dist_sq) = hyperplane_distance_sq(config, p)? else {
        return Ok(eps);
    };
    while &eps * &eps * int(4) > dist_sq {
        eps /= int(2);
    }
    Ok(eps)
}

/// The outcome of the inseparability check with one shared lifting vector
/// per regular triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inseparability {
    pub holds: bool,
    pub witnesses: BTreeMap<Triangulation, LiftingVector>,
    /// First failing condition, if any.
    pub failure: Option<String>,
}

pub(crate) fn cell_masks(config: &PointConfiguration, t: &Triangulation) -> Result<Vec<Mask>> {
    t.cells()
        .iter()
        .map(|c| {
            Ok(config
                .indices_of(c)?
                .into_iter()
                .fold(0, |m: Mask, i| m | 1 << i))
        })
        .collect()
}

/// The strict system for a lifting vector on `config` inducing `t` on
/// `config \ j` and `t` relabeled `i -> j` on `config \ i`.
fn shared_rows(
    config: &PointConfiguration,
    i: Label,
    j: Label,
    t: &Triangulation,
) -> Result<Vec<Vec<Rational>>> {
    let without_j = config.delete(j)?;
    let without_i = config.delete(i)?;
    let t2 = t.relabel(|l| if l == i { j } else { l });
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (sub, tri) in [(&without_j, t), (&without_i, &t2)] {
        for q in height_inequalities(sub, &cell_masks(sub, tri)?) {
            rows.push(q.row(config.labels()));
        }
    }
    Ok(rows)
}

/// A lifting vector inducing `t` on both deletions, if one exists.
pub fn shared_witness(
    config: &PointConfiguration,
    i: Label,
    j: Label,
    t: &Triangulation,
) -> Result<Option<LiftingVector>> {
    let rows = shared_rows(config, i, j, t)?;
    match strict_solution(&rows, config.len()) {
        Some(x) => Ok(Some(LiftingVector::from_values(config, boxed(x))?)),
        None => Ok(None),
    }
}

/// A shared witness moved by a seeded random offset small enough to keep
/// every strict inequality; used to make sweep breakpoints distinct.
pub fn generic_shared_witness(
    config: &PointConfiguration,
    i: Label,
    j: Label,
    t: &Triangulation,
    seed: u64,
) -> Result<Option<LiftingVector>> {
    let rows = shared_rows(config, i, j, t)?;
    let Some(x) = strict_solution(&rows, config.len()) else {
        return Ok(None);
    };
    let x = boxed(x);
    let margin = rows
        .iter()
        .map(|r| dot(r, &x))
        .min()
        .unwrap_or_else(Rational::one);
    let widest = rows
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::one);
    let eta = margin / (int(2) * widest);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const DEN: i64 = 1_000_003;
    let w: Vec<Rational> = x
        .into_iter()
        .map(|v| v + &eta * Rational::new(rng.gen_range(-DEN..=DEN).into(), DEN.into()))
        .collect();
    debug_assert!(rows.iter().all(|r| dot(r, &w).is_positive()));
    Ok(Some(LiftingVector::from_values(config, w)?))
}

/// Checks both defining conditions: equal regular triangulation sets after
/// renaming `j` to `i`, and one lifting vector inducing each of them on both
/// deletions.
pub fn check_inseparable(config: &PointConfiguration, i: Label, j: Label) -> Result<Inseparability> {
    if i == j {
        return Err(Error::Precondition("inseparability needs two distinct labels".into()));
    }
    config.require_index(i)?;
    config.require_index(j)?;
    let a = enumerate_regular(&config.delete(j)?)?;
    let b: BTreeSet<Triangulation> = enumerate_regular(&config.delete(i)?)?
        .iter()
        .map(|t| t.relabel(|l| if l == j { i } else { l }))
        .collect();
    if a != b {
        return Ok(Inseparability {
            holds: false,
            witnesses: BTreeMap::new(),
            failure: Some(format!(
                "{} regular triangulations without {j}, {} without {i}",
                a.len(),
                b.len()
            )),
        });
    }
    let mut witnesses = BTreeMap::new();
    for t in a {
        match shared_witness(config, i, j, &t)? {
            Some(w) => {
                witnesses.insert(t, w);
            }
            None => {
                return Ok(Inseparability {
                    holds: false,
                    witnesses,
                    failure: Some(format!("no shared lifting vector for {}", t.key())),
                })
            }
        }
    }
    Ok(Inseparability {
        holds: true,
        witnesses,
        failure: None,
    })
}

/// Splits `p` starting from [`initial_split_epsilon`] and halving until
/// the pair is certified inseparable.
pub fn split_inseparable(
    config: &PointConfiguration,
    p: Label,
    seed: u64,
    max_halvings: usize,
) -> Result<(SplitPair, Inseparability)> {
    let mut eps = initial_split_epsilon(config, p)?;
    for attempt in 0..=max_halvings {
        let pair = split_point(config, p, &eps, seed.wrapping_add(attempt as u64))?;
        let ins = check_inseparable(&pair.config, pair.p, pair.p_prime)?;
        if ins.holds {
            return Ok((pair, ins));
        }
        eps /= int(2);
    }
    Err(Error::Precondition(format!(
        "no inseparable split of {p} after {max_halvings} halvings"
    )))
}

/// A cyclic polytope realized along the moment curve so that each
/// successive point is inseparable from the last one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicRealization {
    #[serde(skip)]
    pub config: PointConfiguration,
    /// Moment curve parameters of points `1..n` (the last is `0`).
    #[serde(with = "crate::rational::slash_vec")]
    pub parameters: Vec<Rational>,
    /// For each `i` from `d + 1` to `n - 1`: the number of halvings needed
    /// and the number of regular triangulations of `(p_1..p_i, q)` without q.
    pub stages: Vec<(usize, usize)>,
}

/// Places `q` at parameter `0` and `p_1..p_d` at `-d..-1`; each later
/// `p_i` starts halfway between `p_{i-1}` and `q` and keeps sliding towards
/// `q` until `p_i` and `q` are certified inseparable in `(p_1..p_i, q)`.
pub fn cyclic_inseparable_realization(d: usize, n: usize) -> Result<CyclicRealization> {
    if n < d + 2 {
        return Err(Error::OutOfRange(format!("need n >= d + 2, got n={n}, d={d}")));
    }
    let q = moment_point(d, &Rational::zero());
    let mut params: Vec<Rational> = (1..=d).map(|k| int(k as i64 - d as i64 - 1)).collect();
    let mut stages = Vec::new();
    let build = |params: &[Rational]| -> Result<PointConfiguration> {
        let mut pts: Vec<Vec<Rational>> = params.iter().map(|t| moment_point(d, t)).collect();
        pts.push(q.clone());
        let mut labels: Vec<Label> = (1..=params.len()).collect();
        labels.push(n);
        PointConfiguration::with_labels(d, pts, labels)
    };
    for i in d + 1..n {
        let mut t = params.last().expect("d >= 1") / int(2);
        let mut halvings = 0;
        loop {
            let mut trial = params.clone();
            trial.push(t.clone());
            let config = build(&trial)?;
            let ins = check_inseparable(&config, i, n)?;
            if ins.holds {
                stages.push((halvings, ins.witnesses.len()));
                params = trial;
                break;
            }
            halvings += 1;
            if halvings > 60 {
                return Err(Error::Precondition(format!("point {i} never became inseparable")));
            }
            t /= int(2);
        }
    }
    let config = build(&params)?;
    params.push(Rational::zero());
    Ok(CyclicRealization {
        config,
        parameters: params,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{convex_polygon, simplex, square};
    use crate::rational::rat;

    #[test]
    fn simplex_vertex_split() {
        let pair = split_point(&simplex(2), 1, &rat(1, 10), 3).unwrap();
        assert_eq!(pair.config.len(), 4);
        assert!(is_vertex(&pair.config, 1).unwrap());
        assert!(is_vertex(&pair.config, 4).unwrap());
    }

    #[test]
    fn same_label_is_rejected() {
        assert!(matches!(
            check_inseparable(&square(), 1, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_adjacent_pentagon_vertices_are_separable() {
        // Deleting vertex 1 or vertex 3 leaves quadrilaterals whose
        // triangulation sets differ after renaming 3 to 1.
        let ins = check_inseparable(&convex_polygon(5), 1, 3).unwrap();
        assert!(!ins.holds);
    }

    #[test]
    fn nearby_split_is_inseparable() {
        let (pair, ins) = split_inseparable(&convex_polygon(5), 5, 11, 20).unwrap();
        assert!(ins.holds);
        assert_eq!(ins.witnesses.len(), 5);
        assert_eq!(pair.p_prime, 6);
    }

    #[test]
    fn cyclic_realization_in_dimension_three() {
        let r = cyclic_inseparable_realization(3, 7).unwrap();
        assert_eq!(r.config.len(), 7);
        assert_eq!(r.stages.len(), 3);
        // Prefixes `(p_1..p_i, q)` of a cyclic 3-polytope: 1, 2, 6, 25.
        let counts: Vec<usize> = (4..=6)
            .map(|i| {
                let mut keep: Vec<Label> = (1..=i).collect();
                keep.push(7);
                enumerate_regular(&r.config.restrict(&keep).unwrap()).unwrap().len()
            })
            .collect();
        assert_eq!(counts, vec![2, 6, 25]);
        assert!(r.parameters.windows(2).all(|w| w[0] < w[1]));
    }
}
