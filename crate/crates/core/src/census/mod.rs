//! Gale sewing, neighborliness, sigma recovery and the labeled-type census.

mod neighborly;
mod sewing;
mod store;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::Digest;

pub use neighborly::{is_k_neighborly, neighborliness, NeighborlyCheck};
pub use sewing::{
    double_lift, double_lift_with, fingerprint, neighborly_contractions, recover_sigma_suffix, sew,
    DoubleLift, FacetFingerprint, SewingRun,
};
pub use store::{Store, StoreRecord, STORE_ENV};

use crate::bounds::{census_bound, factorial};
use crate::enumeration::with_jobs;
use crate::error::{Error, Result};
use crate::rational::rat;
use crate::Label;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Points of the base configuration.
    pub n: usize,
    /// Target dimension (even); the base is a sewn neighborly
    /// `(d-2)`-polytope.
    pub d: usize,
    /// Run every permutation of the base labels, in lexicographic order.
    pub exhaustive: bool,
    /// Maximum number of permutations to run.
    pub budget: usize,
    pub seed: u64,
    pub jobs: usize,
    /// Also check that the planted suffix is recovered from every result.
    pub verify_recovery: bool,
}

impl CensusOptions {
    pub fn new(n: usize, d: usize) -> Self {
        CensusOptions {
            n,
            d,
            exhaustive: false,
            budget: 1000,
            seed: 0,
            jobs: 1,
            verify_recovery: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub n: usize,
    pub d: usize,
    pub base_dim: usize,
    pub formula: &'static str,
}

/// Summary written by [`census`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    /// Distinct fingerprints among this run's results.
    pub distinct: usize,
    pub attempted: usize,
    pub bound: u128,
    pub bound_params: BoundParams,
    /// Records that were not yet in the store.
    pub new_in_store: usize,
    pub store_size: usize,
    pub budget_hit: bool,
    /// Runs whose recovered suffix matched the planted one, if checked.
    pub recovered: Option<usize>,
}

fn permutations(opts: &CensusOptions, labels: &[Label]) -> (Vec<Vec<Label>>, bool) {
    let total = factorial(labels.len());
    if opts.exhaustive || total <= opts.budget as u128 {
        let all: Vec<Vec<Label>> = labels
            .iter()
            .copied()
            .permutations(labels.len())
            .take(opts.budget)
            .collect();
        let hit = (all.len() as u128) < total;
        (all, hit)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let sample = (0..opts.budget)
            .map(|_| {
                let mut p = labels.to_vec();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        (sample, false)
    }
}

/// Double-lifts a fixed sewn base under many relabelings and counts the
/// distinct labeled facet sets, deduplicating into `store`.
pub fn census(opts: &CensusOptions, store: &mut Store) -> Result<CensusReport> {
    if opts.d < 2 || opts.d % 2 == 1 {
        return Err(Error::OutOfRange(format!("census needs an even target dimension >= 2, got {}", opts.d)));
    }
    let base_dim = opts.d - 2;
    let base_run = sew(opts.n, base_dim, &[], opts.seed)?;
    let base = base_run.result().clone();
    let r = base_dim / 2;
    let (perms, budget_hit) = permutations(opts, base.labels());
    let results: Vec<(Vec<Label>, FacetFingerprint, String, bool)> = with_jobs(opts.jobs, || {
        perms
            .par_iter()
            .map(|sigma| {
                let lift = double_lift_with(&base, sigma, &rat(1, 2))?;
                let fp = fingerprint(&lift.config)?;
                let digest = hex::encode(sha2::Sha256::digest(
                    serde_json::to_vec(&lift.specs).expect("serializable"),
                ));
                let ok = if opts.verify_recovery && opts.n > base_dim + 2 {
                    let planted: Vec<Label> =
                        sigma.iter().rev().take(opts.n - base_dim - 2).copied().collect();
                    recover_sigma_suffix(&lift.config, r)? == planted
                } else {
                    true
                };
                Ok((sigma.clone(), fp, digest, ok))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut distinct = std::collections::BTreeSet::new();
    let mut new_in_store = 0;
    let mut recovered = 0;
    for (sigma, fp, spec_digest, ok) in results {
        recovered += ok as usize;
        let mut all_perms = base_run.permutations.clone();
        all_perms.push(sigma);
        let record = StoreRecord {
            fingerprint: fp.digest(),
            facets: fp.facets(),
            permutations: all_perms,
            seed: opts.seed,
            lift_spec_digest: spec_digest,
        };
        distinct.insert(fp);
        new_in_store += store.insert(record)? as usize;
    }
    Ok(CensusReport {
        distinct: distinct.len(),
        attempted: perms.len(),
        bound: census_bound(opts.n, base_dim),
        bound_params: BoundParams {
            n: opts.n,
            d: opts.d,
            base_dim,
            formula: "n!/(base_dim+2)!",
        },
        new_in_store,
        store_size: store.len(),
        budget_hit,
        recovered: opts.verify_recovery.then_some(recovered),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_permutation_budget() {
        let mut store = Store::in_memory();
        let mut opts = CensusOptions::new(6, 4);
        opts.budget = 1;
        let rep = census(&opts, &mut store).unwrap();
        assert_eq!((rep.distinct, rep.attempted), (1, 1));
        assert_eq!(rep.bound, 30);
        // The same permutation again leaves the store unchanged.
        let rep = census(&opts, &mut store).unwrap();
        assert_eq!((rep.new_in_store, rep.store_size), (0, 1));
    }

    #[test]
    fn exhaustive_budget_is_flagged() {
        let mut opts = CensusOptions::new(6, 4);
        opts.exhaustive = true;
        opts.budget = 10;
        let rep = census(&opts, &mut Store::in_memory()).unwrap();
        assert!(rep.budget_hit);
        assert_eq!(rep.attempted, 10);
    }
}
