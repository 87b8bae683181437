use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::kernel::{
    face_lattice, facets, intrinsic_chart, orientation_of, require_convex_position,
    subconfiguration_chart, PointConfiguration,
};
use crate::lifting::contraction;
use crate::linalg::rank;
use crate::rational::Rational;
use crate::triangulation::Triangulation;
use crate::Label;

/// Incremental placing state over point indices.
struct Placer<'a> {
    config: &'a PointConfiguration,
    used: Vec<usize>,
    cells: Vec<Vec<usize>>,
    span: usize,
}

impl<'a> Placer<'a> {
    fn homogenized_rank(&self, extra: Option<usize>) -> usize {
        let rows: Vec<Vec<Rational>> = self
            .used
            .iter()
            .chain(extra.iter())
            .map(|&i| self.config.homogenized(i))
            .collect();
        rank(&rows)
    }

    /// Adds point `i`: cones over everything when it leaves the current
    /// affine span, otherwise over the boundary ridges it sees.
    fn place(&mut self, i: usize) -> Result<()> {
        if self.used.is_empty() {
            self.used.push(i);
            self.cells.push(vec![i]);
            return Ok(());
        }
        let label = self.config.label(i);
        if self.homogenized_rank(Some(i)) > self.span + 1 {
            for c in self.cells.iter_mut() {
                c.push(i);
            }
            self.used.push(i);
            self.span += 1;
            return Ok(());
        }
        if self.span == 0 {
            return Err(Error::DegenerateStep(label));
        }
        // Work in a chart of the current span, where it is full-dimensional.
        let mut order: Vec<usize> = self.used.clone();
        order.push(i);
        let pts: Vec<&[Rational]> = order.iter().map(|&k| self.config.point(k)).collect();
        let (_, coords) = intrinsic_chart(&pts);
        let chart: HashMap<usize, &Vec<Rational>> = order.iter().copied().zip(coords.iter()).collect();
        let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for c in &self.cells {
            for (k, &v) in c.iter().enumerate() {
                let mut r = c.clone();
                r.remove(k);
                r.sort_unstable();
                ridges.entry(r).or_default().push(v);
            }
        }
        let mut boundary: Vec<(Vec<usize>, usize)> = ridges
            .into_iter()
            .filter(|(_, opp)| opp.len() == 1)
            .map(|(r, opp)| (r, opp[0]))
            .collect();
        boundary.sort_unstable();
        let mut new_cells = Vec::new();
        for (r, opp) in boundary {
            let mut pts: Vec<&[Rational]> = r.iter().map(|k| chart[k].as_slice()).collect();
            pts.push(chart[&opp]);
            let so = orientation_of(&pts);
            *pts.last_mut().unwrap() = chart[&i];
            let sp = orientation_of(&pts);
            if sp == 0 {
                return Err(Error::DegenerateStep(label));
            }
            if sp == -so {
                let mut c = r.clone();
                c.push(i);
                new_cells.push(c);
            }
        }
        if !new_cells.is_empty() {
            self.used.push(i);
            self.cells.extend(new_cells);
        }
        Ok(())
    }
}

/// Placing triangulation for the insertion order `order` (a permutation of
/// the labels).
pub fn placing_triangulation(config: &PointConfiguration, order: &[Label]) -> Result<Triangulation> {
    let idx = config.reorder(order).and_then(|c| {
        c.labels()
            .iter()
            .map(|&l| config.require_index(l))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut placer = Placer {
        config,
        used: Vec::new(),
        cells: Vec::new(),
        span: 0,
    };
    for i in idx {
        if config.dim() == 0 && !placer.used.is_empty() {
            break;
        }
        placer.place(i)?;
    }
    Ok(Triangulation::new(placer.cells.iter().map(|c| {
        c.iter().map(|&k| config.label(k)).collect::<Vec<_>>()
    })))
}

/// Placing triangulation in configuration order.
pub fn placing(config: &PointConfiguration) -> Result<Triangulation> {
    placing_triangulation(config, config.labels())
}

fn pull(config: &PointConfiguration, labels: &[Label], k: usize) -> Result<Vec<Vec<Label>>> {
    if labels.len() == k + 1 {
        return Ok(vec![labels.to_vec()]);
    }
    let sub = subconfiguration_chart(config, labels)?;
    let last = *labels.last().expect("nonempty");
    let mut out = Vec::new();
    for f in facets(&sub)? {
        if f.labels.contains(&last) {
            continue;
        }
        let ordered: Vec<Label> = labels.iter().copied().filter(|l| f.labels.contains(l)).collect();
        for mut c in pull(config, &ordered, k - 1)? {
            c.push(last);
            out.push(c);
        }
    }
    Ok(out)
}

/// Pulling triangulation: the last point coned over every facet avoiding it;
/// non-simplicial facets are pulled recursively at their own last point.
pub fn pulling_triangulation(config: &PointConfiguration) -> Result<Triangulation> {
    require_convex_position(config)?;
    Ok(Triangulation::new(pull(config, config.labels(), config.dim())?))
}

/// The pulling complex as a set of faces: all proper faces of the hull and
/// every proper face avoiding the last point joined with it.
pub fn pulling_faces(config: &PointConfiguration) -> Result<BTreeSet<Vec<Label>>> {
    let last = config.label(config.len() - 1);
    let mut proper: BTreeSet<Vec<Label>> = face_lattice(config)?.into_iter().flatten().collect();
    proper.insert(Vec::new());
    let mut out = proper.clone();
    for f in &proper {
        if !f.contains(&last) {
            let mut g = f.clone();
            g.push(last);
            g.sort_unstable();
            out.insert(g);
        }
    }
    out.remove(&Vec::new());
    Ok(out)
}

/// `T/p = {F \ p : p in F in T}` together with the contraction it lives on.
pub fn link(
    t: &Triangulation,
    config: &PointConfiguration,
    p: Label,
) -> Result<(PointConfiguration, Triangulation)> {
    if !t.used_labels().contains(&p) {
        return Err(Error::PointUnused(p));
    }
    let cells = t
        .cells()
        .iter()
        .filter(|c| c.contains(&p))
        .map(|c| c.iter().copied().filter(|&l| l != p).collect::<Vec<_>>());
    Ok((contraction(config, p)?, Triangulation::new(cells)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{convex_polygon, simplex};
    use crate::triangulation::is_triangulation;

    fn fan(n: usize, apex: Label) -> Triangulation {
        let others: Vec<Label> = (1..=n).filter(|&l| l != apex).collect();
        Triangulation::new(others.windows(2).map(|w| vec![apex, w[0], w[1]]))
    }

    #[test]
    fn placing_a_polygon_in_boundary_order_fans_from_the_first_vertex() {
        for n in 3..=8 {
            let p = convex_polygon(n);
            assert_eq!(placing(&p).unwrap(), fan(n, 1));
        }
    }

    #[test]
    fn pulling_a_polygon_fans_from_the_last_vertex() {
        for n in 3..=8 {
            let p = convex_polygon(n);
            assert_eq!(pulling_triangulation(&p).unwrap(), fan(n, n));
        }
        let s = simplex(3);
        assert_eq!(pulling_triangulation(&s).unwrap(), Triangulation::new(vec![vec![1, 2, 3, 4]]));
    }

    #[test]
    fn placing_outside_one_edge_gives_two_cells() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]])
            .unwrap();
        let t = placing(&c).unwrap();
        assert_eq!(t, Triangulation::new(vec![vec![1, 2, 3], vec![2, 3, 4]]));
        assert_eq!(is_triangulation(&t, &c).unwrap(), None);
    }

    #[test]
    fn interior_point_stays_unused() {
        let c = PointConfiguration::from_ints(2, &[vec![0, 0], vec![4, 0], vec![0, 4], vec![1, 1]])
            .unwrap();
        assert_eq!(placing(&c).unwrap().len(), 1);
        let collinear =
            PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0]])
                .unwrap();
        assert_eq!(placing(&collinear), Err(Error::DegenerateStep(4)));
    }

    #[test]
    fn link_of_a_fan_is_the_boundary_path() {
        let p = convex_polygon(6);
        let (c, l) = link(&fan(6, 1), &p, 1).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(l.len(), 4);
        assert_eq!(link(&fan(6, 1), &PointConfiguration::degenerate(0), 9), Err(Error::PointUnused(9)));
    }
}
