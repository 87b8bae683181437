//! Standard configurations used throughout tests and examples.

use crate::enumeration::SplitPair;
use crate::kernel::PointConfiguration;
use crate::rational::{int, rat, Rational};
use crate::triangulation::Triangulation;

/// Point `(t, t^2, ..., t^d)` on the moment curve.
pub fn moment_point(d: usize, t: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(d);
    let mut x = t.clone();
    for _ in 0..d {
        out.push(x.clone());
        x *= t;
    }
    out
}

/// Cyclic configuration: moment curve at `t = 1..=n`.
pub fn cyclic(d: usize, n: usize) -> PointConfiguration {
    let pts = (1..=n as i64).map(|t| moment_point(d, &int(t))).collect();
    PointConfiguration::new(d, pts).expect("moment curve points are distinct")
}

/// The vertices `0, e_1, ..., e_d`.
pub fn simplex(d: usize) -> PointConfiguration {
    let pts = (0..=d)
        .map(|k| (0..d).map(|j| int((k == j + 1) as i64)).collect())
        .collect();
    PointConfiguration::new(d, pts).expect("simplex vertices are distinct")
}

/// `(0,0), (1,0), (1,1), (0,1)`.
pub fn square() -> PointConfiguration {
    PointConfiguration::from_ints(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]])
        .expect("square")
}

/// Convex `n`-gon with rational vertices on the unit circle, in boundary order.
///
/// Uses the rational parametrization `s -> ((1-s^2)/(1+s^2), 2s/(1+s^2))`
/// at increasing parameters, which walks the circle counterclockwise.
pub fn convex_polygon(n: usize) -> PointConfiguration {
    let pts = (0..n)
        .map(|k| {
            // Parameters spread over (-3, 3), giving a fairly round polygon.
            let s = Rational::new(
                (6 * k as i64 - 3 * (n as i64 - 1)).into(),
                (n as i64).into(),
            );
            let q = int(1) + &s * &s;
            vec![(int(1) - &s * &s) / &q, (int(2) * &s) / &q]
        })
        .collect();
    PointConfiguration::new(2, pts).expect("distinct circle points")
}

/// Outer triangle `1, 2, 3` and a homothetic inner triangle `4, 5, 6`
/// (point `3 + i` near point `i`), scaled by `1/3` about the centroid.
pub fn nested_triangles() -> PointConfiguration {
    let pts = [
        (int(0), int(0)),
        (int(6), int(0)),
        (int(3), int(6)),
        (int(2), rat(4, 3)),
        (int(4), rat(4, 3)),
        (int(3), rat(10, 3)),
    ];
    PointConfiguration::new(2, pts.into_iter().map(|(x, y)| vec![x, y]).collect())
        .expect("distinct points")
}

/// The triangulation of [`nested_triangles`] joining each outer edge
/// `{i, i+1}` to the inner point next to `i + 1`; no heights induce it.
pub fn twisted_triangulation() -> Triangulation {
    Triangulation::new(vec![
        vec![4, 5, 6],
        vec![1, 2, 5],
        vec![2, 3, 6],
        vec![1, 3, 4],
        vec![1, 4, 5],
        vec![2, 5, 6],
        vec![3, 4, 6],
    ])
}

/// A hexagon `1..=6` with its vertex `p = 6` split off as `p' = 7`, and a
/// triangulation of the hexagon in which `p` has three link cells.
pub fn split_hexagon() -> (SplitPair, Triangulation) {
    let coords = [
        (rat(3, 10), rat(188, 100)),
        (rat(-76, 100), rat(154, 100)),
        (rat(-76, 100), rat(69, 100)),
        (rat(-1, 10), rat(16, 100)),
        (rat(73, 100), rat(35, 100)),
        (rat(11, 10), rat(111, 100)),
        (int(1), rat(3, 2)),
    ];
    let pts = coords.into_iter().map(|(x, y)| vec![x, y]).collect();
    let config = PointConfiguration::new(2, pts).expect("distinct points");
    let t = Triangulation::new(vec![vec![1, 2, 6], vec![2, 3, 6], vec![3, 5, 6], vec![3, 4, 5]]);
    let pair = SplitPair {
        config,
        p: 6,
        p_prime: 7,
        epsilon: rat(1, 2),
    };
    (pair, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{facets, require_convex_position};

    #[test]
    fn polygons_are_convex() {
        for n in 3..=9 {
            let p = convex_polygon(n);
            require_convex_position(&p).unwrap();
            assert_eq!(facets(&p).unwrap().len(), n);
        }
    }

    #[test]
    fn cyclic_points() {
        let c = cyclic(3, 5);
        assert_eq!(c.point(1), &[int(2), int(4), int(8)]);
        require_convex_position(&c).unwrap();
    }

    #[test]
    fn twisted_triangulation_is_not_regular() {
        use crate::triangulation::{is_regular, is_triangulation};
        let c = nested_triangles();
        let t = twisted_triangulation();
        assert_eq!(is_triangulation(&t, &c).unwrap(), None);
        let r = is_regular(&t, &c).unwrap();
        assert!(!r.is_regular());
        let crate::triangulation::Regularity::NonRegular(cert) = r else { unreachable!() };
        assert!(cert.verify());
    }
}
