use std::collections::BTreeSet;

use serde::Serialize;

use crate::enumeration::split::SplitPair;
use crate::error::{Error, Result};
use crate::kernel::PointConfiguration;
use crate::linalg::{dot, solve};
use crate::rational::{format_rational, int, Rational};
use crate::triangulation::{regular_subdivision, LiftingVector, Triangulation};
use crate::Label;

/// A value of `t` where the cell `tau ∪ {p, p'}` is flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Breakpoint {
    #[serde(with = "crate::rational::slash")]
    pub t: Rational,
    pub cell: Vec<Label>,
}

/// The triangulation on an open interval of `t`, with the link split
/// `L_t = {tau : tau ∪ {p} ∈ T_t}` and `L'_t = {tau : tau ∪ {p'} ∈ T_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snapshot {
    #[serde(with = "crate::rational::slash")]
    pub t: Rational,
    #[serde(serialize_with = "cells_ser")]
    pub triangulation: Triangulation,
    pub l: BTreeSet<Vec<Label>>,
    pub l_prime: BTreeSet<Vec<Label>>,
}

fn cells_ser<S: serde::Serializer>(t: &Triangulation, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    t.cells().serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepTrace {
    pub base_w: LiftingVector,
    /// Cells of `T/p`.
    pub link: BTreeSet<Vec<Label>>,
    pub breakpoints: Vec<Breakpoint>,
    pub snapshots: Vec<Snapshot>,
}

impl SweepTrace {
    pub fn distinct_triangulations(&self) -> BTreeSet<&Triangulation> {
        self.snapshots.iter().map(|s| &s.triangulation).collect()
    }
}

/// Heights of the family: for `t <= 0` the copy `p'` is raised by `-t`,
/// for `t >= 0` the original `p` is raised by `t`.
pub fn w_t(w: &LiftingVector, p: Label, p_prime: Label, t: &Rational) -> Result<LiftingVector> {
    let mut out = w.clone();
    if *t <= int(0) {
        out.set(p_prime, w.get(p_prime)? - t);
    } else {
        out.set(p, w.get(p)? + t);
    }
    Ok(out)
}

/// Height at `x` of the affine function interpolating `w` on `cell`.
fn height_at(config: &PointConfiguration, w: &LiftingVector, cell: &[Label], x: &[Rational]) -> Result<Option<Rational>> {
    let rows: Vec<Vec<Rational>> = cell
        .iter()
        .map(|&l| config.require_index(l).map(|i| config.homogenized(i)))
        .collect::<Result<_>>()?;
    let rhs: Vec<Rational> = cell.iter().map(|&l| w.get(l).cloned()).collect::<Result<_>>()?;
    let Some(affine) = solve(&rows, &rhs) else {
        return Ok(None);
    };
    let mut h = x.to_vec();
    h.push(int(1));
    Ok(Some(dot(&affine, &h)))
}

fn induced(config: &PointConfiguration, w: &LiftingVector) -> Result<Option<Triangulation>> {
    let labels: Vec<Label> = config.labels().to_vec();
    Ok(regular_subdivision(config, &w.restrict(&labels))?.to_triangulation())
}

/// Sweeps `t` over the real line and records every triangulation `T_t`.
///
/// `w` must induce `t_base` on `P` and its renamed copy on `P'`. Breakpoint
/// candidates are computed in closed form, one per link cell and side, and
/// each is confirmed against the actual subdivision at that `t`.
pub fn t_sweep(pair: &SplitPair, t_base: &Triangulation, w: &LiftingVector) -> Result<SweepTrace> {
    let (p, pp) = (pair.p, pair.p_prime);
    let config = &pair.config;
    if induced(&pair.with_p(), w)?.as_ref() != Some(t_base) {
        return Err(Error::Precondition("w does not induce T on P".into()));
    }
    if induced(&pair.with_p_prime(), w)? != Some(pair.to_prime(t_base)) {
        return Err(Error::Precondition("w does not induce T' on P'".into()));
    }
    let link: BTreeSet<Vec<Label>> = t_base
        .cells()
        .iter()
        .filter(|c| c.contains(&p))
        .map(|c| c.iter().copied().filter(|&l| l != p).collect())
        .collect();
    let xp = config.coords(p)?;
    let xpp = config.coords(pp)?;
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    for tau in &link {
        let mut with_p = tau.clone();
        with_p.push(p);
        if let Some(h) = height_at(config, w, &with_p, xpp)? {
            let t = w.get(pp)? - h;
            if t <= int(0) {
                candidates.insert(t);
            }
        }
        let mut with_pp = tau.clone();
        with_pp.push(pp);
        if let Some(h) = height_at(config, w, &with_pp, xp)? {
            let t = h - w.get(p)?;
            if t >= int(0) {
                candidates.insert(t);
            }
        }
    }
    let mut breakpoints = Vec::new();
    for t in candidates {
        let sub = regular_subdivision(config, &w_t(w, p, pp, &t)?)?;
        let flat = sub.non_simplicial_cells();
        match flat.len() {
            0 => continue,
            1 => breakpoints.push(Breakpoint {
                t,
                cell: flat[0].clone(),
            }),
            _ => return Err(Error::GenericityFailure(format_rational(&t))),
        }
    }
    let mut samples: Vec<Rational> = Vec::new();
    match (breakpoints.first(), breakpoints.last()) {
        (Some(first), Some(last)) => {
            samples.push(&first.t - int(1));
            for pair in breakpoints.windows(2) {
                samples.push((&pair[0].t + &pair[1].t) / int(2));
            }
            samples.push(&last.t + int(1));
        }
        _ => samples.push(int(0)),
    }
    let mut snapshots = Vec::new();
    for t in samples {
        let sub = regular_subdivision(config, &w_t(w, p, pp, &t)?)?;
        let tri = sub
            .to_triangulation()
            .ok_or_else(|| Error::NonTriangulationSnapshot(format_rational(&t)))?;
        let side = |keep: Label, drop: Label| -> BTreeSet<Vec<Label>> {
            tri.cells()
                .iter()
                .filter(|c| c.contains(&keep) && !c.contains(&drop))
                .map(|c| c.iter().copied().filter(|&l| l != keep).collect())
                .collect()
        };
        snapshots.push(Snapshot {
            l: side(p, pp),
            l_prime: side(pp, p),
            t,
            triangulation: tri,
        });
    }
    Ok(SweepTrace {
        base_w: w.clone(),
        link,
        breakpoints,
        snapshots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::split_hexagon;
    use crate::enumeration::{check_inseparable, generic_shared_witness};
    use crate::triangulation::is_triangulation;

    fn restricted(t: &Triangulation, drop: &[Label]) -> BTreeSet<Vec<Label>> {
        t.cells()
            .iter()
            .filter(|c| c.iter().all(|l| !drop.contains(l)))
            .cloned()
            .collect()
    }

    #[test]
    fn split_hexagon_is_inseparable() {
        let (pair, t) = split_hexagon();
        let ins = check_inseparable(&pair.config, 6, 7).unwrap();
        assert!(ins.holds, "{:?}", ins.failure);
        assert_eq!(ins.witnesses.len(), 14);
        assert!(ins.witnesses.contains_key(&t));
    }

    #[test]
    fn split_hexagon_sweep() {
        let (pair, t) = split_hexagon();
        let w = generic_shared_witness(&pair.config, 6, 7, &t, 1).unwrap().unwrap();
        let trace = t_sweep(&pair, &t, &w).unwrap();
        assert_eq!(trace.link.len(), 3);
        assert_eq!(trace.breakpoints.len(), 3);
        assert_eq!(trace.distinct_triangulations().len(), 4);
        let first = trace.snapshots.first().unwrap();
        let last = trace.snapshots.last().unwrap();
        assert_eq!(first.l, trace.link);
        assert!(first.l_prime.is_empty());
        assert_eq!(last.l_prime, trace.link);
        assert!(last.l.is_empty());
        for s in &trace.snapshots {
            assert_eq!(is_triangulation(&s.triangulation, &pair.config).unwrap(), None);
            assert_eq!(restricted(&s.triangulation, &[6, 7]), restricted(&t, &[6]));
            assert_eq!(s.l.len() + s.l_prime.len(), 3);
        }
        for w in trace.snapshots.windows(2) {
            let moved: Vec<_> = w[0].l.difference(&w[1].l).collect();
            assert_eq!(moved.len(), 1);
            assert!(w[1].l_prime.contains(moved[0]));
        }
    }

    #[test]
    fn wrong_base_triangulation_is_rejected() {
        let (pair, t) = split_hexagon();
        let w = generic_shared_witness(&pair.config, 6, 7, &t, 1).unwrap().unwrap();
        let other = Triangulation::new(vec![vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![1, 5, 6]]);
        assert!(matches!(t_sweep(&pair, &other, &w), Err(Error::Precondition(_))));
    }
}
