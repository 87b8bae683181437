use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::census::neighborly::is_k_neighborly;
use crate::error::{Error, Result};
use crate::kernel::{facets, PointConfiguration};
use crate::lifting::{auto_epsilons_from, default_apex, double_contraction, is_vertex, lex_lift, LiftSpec};
use crate::rational::{rat, Rational};
use crate::Label;

/// Canonical encoding of a labeled facet set: the facets as sorted label
/// lists, in sorted order, each written as a length followed by its labels
/// (all little-endian `u32`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetFingerprint(Vec<u8>);

impl FacetFingerprint {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }

    /// Decodes the facet label sets back out of the encoding.
    pub fn facets(&self) -> Vec<Vec<Label>> {
        let words: Vec<u32> = self
            .0
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let len = words[i] as usize;
            out.push(words[i + 1..i + 1 + len].iter().map(|&w| w as Label).collect());
            i += 1 + len;
        }
        out
    }
}

impl fmt::Debug for FacetFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FacetFingerprint({})", &self.digest()[..16])
    }
}

pub fn fingerprint(config: &PointConfiguration) -> Result<FacetFingerprint> {
    let mut sets: Vec<Vec<Label>> = facets(config)?.into_iter().map(|f| f.labels).collect();
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    let mut bytes = Vec::new();
    for s in sets {
        bytes.extend_from_slice(&(s.len() as u32).to_le_bytes());
        for l in s {
            bytes.extend_from_slice(&(l as u32).to_le_bytes());
        }
    }
    Ok(FacetFingerprint(bytes))
}

/// Two positive lexicographic liftings with the same order `sigma` (a list
/// of all labels), the second one also lifting the first apex last.
///
/// Labels are preserved, so the result lists `1..=n` followed by the apexes
/// `n + 1` and `n + 2`. `beta` seeds the epsilon chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleLift {
    pub config: PointConfiguration,
    pub specs: [LiftSpec; 2],
}

pub fn double_lift_with(config: &PointConfiguration, sigma: &[Label], beta: &Rational) -> Result<DoubleLift> {
    let d = config.dim();
    if d % 2 == 1 {
        return Err(Error::Precondition(format!("double lift needs even dimension, got {d}")));
    }
    let check = is_k_neighborly(config, d / 2)?;
    if !check.holds {
        return Err(Error::NotNeighborly(check.refuting.unwrap_or_default()));
    }
    let ordered = config.reorder(sigma)?;
    let s1 = auto_epsilons_from(&ordered, &default_apex(d), beta)?;
    let first = lex_lift(&ordered, &s1)?.lifted;
    let s2 = auto_epsilons_from(&first, &default_apex(d + 1), beta)?;
    let second = lex_lift(&first, &s2)?.lifted;
    let mut order: Vec<Label> = config.labels().to_vec();
    order.sort_unstable();
    order.push(second.label(second.len() - 2));
    order.push(second.label(second.len() - 1));
    Ok(DoubleLift {
        config: second.reorder(&order)?,
        specs: [s1, s2],
    })
}

pub fn double_lift(config: &PointConfiguration, sigma: &[Label]) -> Result<PointConfiguration> {
    Ok(double_lift_with(config, sigma, &rat(1, 2))?.config)
}

/// The base labels `1..=n` of a double lift in dimension `2r + 2` whose
/// apexes carry the two largest labels.
fn split_labels(config: &PointConfiguration) -> (Vec<Label>, Label) {
    let mut labels = config.labels().to_vec();
    labels.sort_unstable();
    labels.pop();
    let first_apex = labels.pop().expect("two apexes");
    (labels, first_apex)
}

/// Base labels `k` for which `config / {n + 1, k}` is defined and
/// `r`-neighborly.
pub fn neighborly_contractions(config: &PointConfiguration, r: usize) -> Result<Vec<Label>> {
    let (base, apex) = split_labels(config);
    let contracted = crate::lifting::contraction(config, apex)?;
    let mut out = Vec::new();
    for k in base {
        if !is_vertex(&contracted, k)? {
            continue;
        }
        let dc = double_contraction(config, apex, k)?;
        if is_k_neighborly(&dc, r)?.holds {
            out.push(k);
        }
    }
    Ok(out)
}

/// Recovers `sigma(n), sigma(n-1), ...` from a double lift of an
/// `r`-neighborly configuration in dimension `2r`, stripping one point at a
/// time while more than `2r + 2` base points remain.
pub fn recover_sigma_suffix(config: &PointConfiguration, r: usize) -> Result<Vec<Label>> {
    let d = 2 * r;
    if config.dim() != d + 2 {
        return Err(Error::DimensionMismatch {
            expected: d + 2,
            found: config.dim(),
        });
    }
    let n = config.len().saturating_sub(2);
    if n <= d + 2 {
        return Err(Error::TooFewPoints { points: n, dim: d });
    }
    let mut current = config.clone();
    let mut suffix = Vec::new();
    while current.len() - 2 > d + 2 {
        let found = neighborly_contractions(&current, r)?;
        let [k] = found[..] else {
            return Err(Error::NonUniqueIndex(found));
        };
        suffix.push(k);
        current = current.delete(k)?;
    }
    Ok(suffix)
}

/// A sewing pipeline run: `P_0` is `n - d` copies of the point of `R^0`,
/// each stage is a double lift, and odd `d` ends with one more lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SewingRun {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub permutations: Vec<Vec<Label>>,
    #[serde(skip)]
    pub stage_configs: Vec<PointConfiguration>,
    pub specs: Vec<LiftSpec>,
}

impl SewingRun {
    pub fn result(&self) -> &PointConfiguration {
        self.stage_configs.last().expect("P_0 is always present")
    }

    /// Hex digest of the lift specs, identifying the realization.
    pub fn spec_digest(&self) -> String {
        let json = serde_json::to_vec(&self.specs).expect("serializable");
        hex::encode(Sha256::digest(json))
    }
}

/// Epsilon chain start in `{1/2, ..., 1/5}`, drawn from the seed.
fn beta_for(rng: &mut ChaCha8Rng) -> Rational {
    rat(1, rng.gen_range(2..=5))
}

/// Runs the pipeline. Missing permutations are drawn uniformly from `seed`,
/// which also picks the epsilon chains.
pub fn sew(n: usize, d: usize, permutations: &[Vec<Label>], seed: u64) -> Result<SewingRun> {
    if n <= d {
        return Err(Error::OutOfRange(format!("sewing needs n > d, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = PointConfiguration::degenerate(n - d);
    let mut stage_configs = vec![config.clone()];
    let mut perms = Vec::new();
    let mut specs = Vec::new();
    let stages = d / 2 + d % 2;
    for stage in 0..stages {
        let sigma = match permutations.get(stage) {
            Some(p) => p.clone(),
            None => {
                let mut p: Vec<Label> = config.labels().to_vec();
                p.shuffle(&mut rng);
                p
            }
        };
        let beta = beta_for(&mut rng);
        if stage < d / 2 {
            let lift = double_lift_with(&config, &sigma, &beta)?;
            config = lift.config;
            specs.extend(lift.specs);
        } else {
            let ordered = config.reorder(&sigma)?;
            let spec = auto_epsilons_from(&ordered, &default_apex(config.dim()), &beta)?;
            let lifted = lex_lift(&ordered, &spec)?.lifted;
            let mut order: Vec<Label> = lifted.labels().to_vec();
            order.sort_unstable();
            config = lifted.reorder(&order)?;
            specs.push(spec);
        }
        let k = config.dim() / 2;
        let check = is_k_neighborly(&config, k)?;
        if !check.holds {
            return Err(Error::NotNeighborly(check.refuting.unwrap_or_default()));
        }
        perms.push(sigma);
        stage_configs.push(config.clone());
    }
    Ok(SewingRun {
        n,
        d,
        seed,
        permutations: perms,
        stage_configs,
        specs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::neighborly::neighborliness;
    use crate::constructions::{convex_polygon, square};
    use crate::lifting::contraction;

    #[test]
    fn degenerate_four_points_give_a_quadrilateral() {
        let q = double_lift(&PointConfiguration::degenerate(4), &[1, 2, 3, 4]).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.labels(), &[1, 2, 3, 4, 5, 6]);
        assert!(is_k_neighborly(&q, 1).unwrap().holds);
    }

    #[test]
    fn hexagon_double_lift_is_two_neighborly() {
        let h = convex_polygon(6);
        for sigma in [vec![1, 2, 3, 4, 5, 6], vec![4, 2, 6, 1, 5, 3]] {
            let p = double_lift(&h, &sigma).unwrap();
            assert_eq!((p.dim(), p.len()), (4, 8));
            assert!(is_k_neighborly(&p, 2).unwrap().holds);
        }
    }

    #[test]
    fn apex_contraction_recovers_the_base_type() {
        let h = convex_polygon(6);
        let p = double_lift(&h, &[3, 1, 4, 6, 5, 2]).unwrap();
        let back = double_contraction(&p, 8, 7).unwrap();
        assert_eq!(fingerprint(&back).unwrap(), fingerprint(&h).unwrap());
    }

    #[test]
    fn recovery_on_the_hexagon() {
        let h = convex_polygon(6);
        let id = double_lift(&h, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(recover_sigma_suffix(&id, 1).unwrap(), vec![6, 5]);
        let p = double_lift(&h, &[2, 6, 1, 3, 5, 4]).unwrap();
        assert_eq!(recover_sigma_suffix(&p, 1).unwrap(), vec![4, 5]);
    }

    #[test]
    fn recovery_needs_enough_points() {
        let p = double_lift(&square(), &[1, 2, 3, 4]).unwrap();
        assert!(matches!(
            recover_sigma_suffix(&p, 1),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn fingerprints_are_labeled() {
        let h = convex_polygon(6);
        let a = double_lift(&h, &[1, 2, 3, 4, 5, 6]).unwrap();
        let b = a.relabel(|l| if l <= 6 { l % 6 + 1 } else { l }).unwrap();
        assert_ne!(fingerprint(&a).unwrap(), fingerprint(&b).unwrap());
        let fp = fingerprint(&a).unwrap();
        assert_eq!(fp.facets().len(), facets(&a).unwrap().len());
    }

    #[test]
    fn sewing_stages() {
        let simplex = sew(4, 3, &[], 1).unwrap();
        assert_eq!(simplex.result().len(), 4);
        let run = sew(8, 4, &[], 7).unwrap();
        let p = run.result();
        assert_eq!((p.dim(), p.len()), (4, 8));
        assert_eq!(neighborliness(p).unwrap(), 2);
        assert_eq!(run.stage_configs.len(), 3);
    }

    #[test]
    fn seed_does_not_change_the_type() {
        let perms = vec![vec![2, 1, 4, 3], vec![5, 1, 6, 2, 4, 3]];
        let a = sew(8, 4, &perms, 1).unwrap();
        let b = sew(8, 4, &perms, 99).unwrap();
        assert_ne!(a.spec_digest(), b.spec_digest());
        assert_eq!(fingerprint(a.result()).unwrap(), fingerprint(b.result()).unwrap());
    }

    #[test]
    fn odd_dimension_vertex_figure_recovers_previous_stage() {
        let run = sew(7, 3, &[], 5).unwrap();
        let p = run.result();
        assert_eq!((p.dim(), p.len()), (3, 7));
        let last = *p.labels().iter().max().unwrap();
        let vf = contraction(p, last).unwrap();
        assert_eq!(fingerprint(&vf).unwrap(), fingerprint(&run.stage_configs[1]).unwrap());
    }
}
