//! Positive lexicographic liftings, contractions and general-position
//! perturbations.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{is_general_position, orientation_of, FaceOracle, PointConfiguration};
use crate::linalg::{dot, rank};
use crate::lp::strict_solution;
use crate::rational::{int, slash_vec, Rational};
use crate::Label;

/// Apex `q` and the chain `1 > eps_1 > eps_2 > ... > eps_n > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSpec {
    #[serde(with = "slash_vec")]
    pub apex: Vec<Rational>,
    #[serde(with = "slash_vec")]
    pub epsilons: Vec<Rational>,
}

impl LiftSpec {
    pub fn new(apex: Vec<Rational>, epsilons: Vec<Rational>) -> Result<Self> {
        let spec = LiftSpec { apex, epsilons };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<()> {
        match self.apex.last() {
            Some(h) if h.is_positive() => {}
            _ => {
                return Err(Error::InvalidLiftSpec(
                    "apex must have positive last coordinate".into(),
                ))
            }
        }
        let mut prev = Rational::one();
        for (i, e) in self.epsilons.iter().enumerate() {
            if !e.is_positive() || *e >= prev {
                return Err(Error::InvalidLiftSpec(format!(
                    "epsilon {} must lie strictly between 0 and its predecessor",
                    i + 1
                )));
            }
            prev = e.clone();
        }
        Ok(())
    }

    /// `eps_i = beta^i`.
    pub fn geometric(apex: Vec<Rational>, beta: &Rational, n: usize) -> Result<Self> {
        let mut eps = Vec::with_capacity(n);
        let mut e = beta.clone();
        for _ in 0..n {
            eps.push(e.clone());
            e *= beta;
        }
        Self::new(apex, eps)
    }
}

/// A base configuration and its lifting; the apex is the last point of
/// `lifted` and carries the label `base.max_label() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedConfiguration {
    pub base: PointConfiguration,
    pub lifted: PointConfiguration,
    pub spec: LiftSpec,
}

impl LiftedConfiguration {
    pub fn apex_label(&self) -> Label {
        self.lifted.label(self.lifted.len() - 1)
    }

    /// The lifted copies of the base points, without the apex.
    pub fn without_apex(&self) -> PointConfiguration {
        self.lifted
            .delete(self.apex_label())
            .expect("apex is present")
    }
}

/// Default apex `(0, ..., 0, 1)`.
pub fn default_apex(d: usize) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); d + 1];
    a[d] = Rational::one();
    a
}

fn lifted_points(base: &PointConfiguration, spec: &LiftSpec) -> Vec<Vec<Rational>> {
    base.points()
        .iter()
        .zip(&spec.epsilons)
        .map(|(p, e)| {
            let one_minus = Rational::one() - e;
            spec.apex
                .iter()
                .enumerate()
                .map(|(k, q)| {
                    let base_coord = p.get(k).cloned().unwrap_or_else(Rational::zero);
                    &one_minus * q + e * base_coord
                })
                .collect()
        })
        .collect()
}

/// Checks the same-side condition for every position `i >= d + 2`.
fn validate(base: &PointConfiguration, lifted: &[Vec<Rational>], apex: &[Rational]) -> Result<()> {
    let d = base.dim();
    for i in d + 1..lifted.len() {
        for h in (0..i).combinations(d + 1) {
            let mut pts: Vec<&[Rational]> = h.iter().map(|&j| lifted[j].as_slice()).collect();
            pts.push(apex);
            let sq = orientation_of(&pts);
            *pts.last_mut().unwrap() = &lifted[i];
            let sp = orientation_of(&pts);
            if sq == sp && sq != 0 {
                continue;
            }
            let hyperplane = h.iter().map(|&j| base.label(j)).collect();
            let spans = {
                let rows: Vec<Vec<Rational>> = h
                    .iter()
                    .map(|&j| {
                        let mut r = lifted[j].clone();
                        r.push(int(1));
                        r
                    })
                    .collect();
                rank(&rows) == d + 1
            };
            if !spans {
                // Not a hyperplane; the condition does not apply.
                continue;
            }
            if sq == 0 {
                return Err(Error::DegenerateBase(hyperplane));
            }
            return Err(Error::ValidationFailed {
                position: i + 1,
                hyperplane,
            });
        }
    }
    Ok(())
}

/// `p_i -> (1 - eps_i) q + eps_i (p_i, 0)` followed by the apex, validated.
pub fn lex_lift(base: &PointConfiguration, spec: &LiftSpec) -> Result<LiftedConfiguration> {
    spec.check()?;
    if spec.apex.len() != base.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: base.dim() + 1,
            found: spec.apex.len(),
        });
    }
    if spec.epsilons.len() != base.len() {
        return Err(Error::InvalidLiftSpec(format!(
            "{} epsilons for {} points",
            spec.epsilons.len(),
            base.len()
        )));
    }
    let pts = lifted_points(base, spec);
    validate(base, &pts, &spec.apex)?;
    let mut points = pts;
    points.push(spec.apex.clone());
    let mut labels = base.labels().to_vec();
    labels.push(base.max_label() + 1);
    let lifted = PointConfiguration::with_labels(base.dim() + 1, points, labels)?;
    Ok(LiftedConfiguration {
        base: base.clone(),
        lifted,
        spec: spec.clone(),
    })
}

const MAX_HALVINGS: usize = 200;

/// Finds `eps_i = beta^i`, starting at `beta = start` and halving until the
/// lifting validates.
pub fn auto_epsilons_from(
    base: &PointConfiguration,
    apex: &[Rational],
    start: &Rational,
) -> Result<LiftSpec> {
    let mut beta = start.clone();
    for _ in 0..MAX_HALVINGS {
        let spec = LiftSpec::geometric(apex.to_vec(), &beta, base.len())?;
        match lex_lift(base, &spec) {
            Ok(_) => return Ok(spec),
            Err(Error::ValidationFailed { .. }) => beta /= int(2),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition("epsilon back-off did not converge".into()))
}

pub fn auto_epsilons(base: &PointConfiguration, apex: &[Rational]) -> Result<LiftSpec> {
    auto_epsilons_from(base, apex, &Rational::new(1.into(), 2.into()))
}

/// `auto_epsilons` followed by the lift itself.
pub fn auto_lift(base: &PointConfiguration) -> Result<LiftedConfiguration> {
    let spec = auto_epsilons(base, &default_apex(base.dim()))?;
    lex_lift(base, &spec)
}

/// Vertex figure at `p`: every other point is pushed along its ray from `p`
/// onto a hyperplane cutting all rays, and expressed in coordinates of that
/// hyperplane.
///
/// The chart drops one coordinate and is reflected if needed so that
/// `orient(chart(S)) = -orient(S, p)` for every `d`-subset `S`.
pub fn contraction(config: &PointConfiguration, p: Label) -> Result<PointConfiguration> {
    let d = config.dim();
    let pi = config.require_index(p)?;
    if d == 0 {
        return Err(Error::OutOfRange("cannot contract a 0-dimensional configuration".into()));
    }
    let base = config.point(pi).to_vec();
    let others: Vec<usize> = (0..config.len()).filter(|&i| i != pi).collect();
    let diffs: Vec<Vec<Rational>> = others
        .iter()
        .map(|&i| config.point(i).iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    let normal = if diffs.is_empty() {
        default_apex(d - 1)
    } else {
        strict_solution(&diffs, d).ok_or(Error::NotAVertex(p))?
    };
    if diffs.iter().any(|v| v.iter().all(|x| x.is_zero())) {
        return Err(Error::NotAVertex(p));
    }
    let c = normal
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::NoSeparatingChart(p))?;
    let mut pts: Vec<Vec<Rational>> = diffs
        .iter()
        .map(|v| {
            let s = dot(&normal, v);
            v.iter()
                .enumerate()
                .filter(|&(k, _)| k != c)
                .map(|(k, x)| &base[k] + x / &s)
                .collect()
        })
        .collect();
    if d >= 2 {
        // orient(S, p) = sign(n_c) * (-1)^(d-1-c) * orient(chart(S)).
        let s = normal[c].is_positive() == ((d - 1 - c) % 2 == 0);
        if s {
            for q in pts.iter_mut() {
                q[0] = -q[0].clone();
            }
        }
    }
    let labels = others.iter().map(|&i| config.label(i)).collect();
    Ok(PointConfiguration::derived(d - 1, pts, labels))
}

/// Contraction at `a` followed by contraction at `b`.
pub fn double_contraction(config: &PointConfiguration, a: Label, b: Label) -> Result<PointConfiguration> {
    contraction(&contraction(config, a)?, b)
}

/// Moves `p` by at most `bound` in each coordinate until it lies on no
/// hyperplane spanned by the other points. Deterministic in `seed`.
pub fn perturb_general(
    config: &PointConfiguration,
    p: Label,
    bound: &Rational,
    seed: u64,
) -> Result<PointConfiguration> {
    let i = config.require_index(p)?;
    let rest = config.delete(p)?;
    let current = config.point(i).to_vec();
    if is_general_position(&rest, &current) {
        return Ok(config.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const DEN: i64 = 1_000_003;
    loop {
        let q: Vec<Rational> = current
            .iter()
            .map(|x| {
                let k: i64 = rng.gen_range(-DEN..=DEN);
                x + bound * Rational::new(k.into(), DEN.into())
            })
            .collect();
        if is_general_position(&rest, &q) {
            let mut points = config.points().to_vec();
            points[i] = q;
            return PointConfiguration::with_labels(config.dim(), points, config.labels().to_vec());
        }
    }
}

/// Whether `p` is a vertex of the hull.
pub fn is_vertex(config: &PointConfiguration, p: Label) -> Result<bool> {
    if config.dim() == 0 {
        return Ok(config.len() == 1);
    }
    Ok(FaceOracle::new(config)?.is_face(&[p]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{convex_polygon, simplex};
    use crate::kernel::{facets, orientation};
    use crate::rational::rat;

    #[test]
    fn spec_rejects_non_decreasing_chain() {
        let e = LiftSpec::new(default_apex(2), vec![rat(1, 2); 5]).unwrap_err();
        assert!(matches!(e, Error::InvalidLiftSpec(_)));
        assert!(LiftSpec::new(vec![int(0), int(0)], vec![rat(1, 2)]).is_err());
    }

    #[test]
    fn slow_chain_fails_validation() {
        // Lifted points (0, 1/10), (4/5, 1/5), (7/2, 3/10): the third lies
        // below the line y = 1/10 + x/8 through the first two, the apex
        // (0, 1) above it.
        let base = PointConfiguration::from_ints(1, &[vec![0], vec![1], vec![5]]).unwrap();
        let spec = LiftSpec::new(default_apex(1), vec![rat(9, 10), rat(8, 10), rat(7, 10)]).unwrap();
        assert_eq!(
            lex_lift(&base, &spec),
            Err(Error::ValidationFailed {
                position: 3,
                hyperplane: vec![1, 2]
            })
        );
        assert!(auto_lift(&base).is_ok());
    }

    #[test]
    fn simplex_lifts_at_first_try() {
        for d in 1..=3 {
            let s = simplex(d);
            let spec = auto_epsilons(&s, &default_apex(d)).unwrap();
            assert_eq!(spec.epsilons[0], rat(1, 2));
            let l = lex_lift(&s, &spec).unwrap();
            assert_eq!(facets(&l.lifted).unwrap().len(), d + 2);
        }
    }

    #[test]
    fn segment_points_lie_between_apex_and_base() {
        let base = PointConfiguration::from_ints(1, &[vec![0], vec![1], vec![2]]).unwrap();
        let apex = vec![int(1), int(1)];
        let spec = auto_epsilons(&base, &apex).unwrap();
        let l = lex_lift(&base, &spec).unwrap();
        assert_eq!(l.apex_label(), 4);
        for (i, e) in spec.epsilons.iter().enumerate() {
            let p = l.lifted.point(i);
            assert_eq!(p[1], int(1) - e);
        }
    }

    #[test]
    fn contraction_of_a_triangle_vertex() {
        let t = simplex(2);
        let c = contraction(&t, 1).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.labels(), &[2, 3]);
        assert_ne!(c.point(0), c.point(1));
    }

    #[test]
    fn contraction_at_apex_reproduces_base_orientations() {
        let base = convex_polygon(5);
        let l = auto_lift(&base).unwrap();
        let back = contraction(&l.lifted, l.apex_label()).unwrap();
        for s in (1..=5).combinations(3) {
            assert_eq!(orientation(&back, &s).unwrap(), orientation(&base, &s).unwrap());
        }
    }

    #[test]
    fn perturbation_leaves_generic_points_alone() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 0]])
            .unwrap();
        let moved = perturb_general(&c, 4, &rat(1, 10), 7).unwrap();
        let rest = moved.delete(4).unwrap();
        assert!(is_general_position(&rest, moved.coords(4).unwrap()));
        let again = perturb_general(&moved, 4, &rat(1, 10), 7).unwrap();
        assert_eq!(again, moved);
    }
}
