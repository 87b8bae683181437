#![allow(dead_code)]

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trisweep::kernel::orientation;
use trisweep::rational::{int, rat};
use trisweep::{PointConfiguration, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// No `d + 1` points on a common hyperplane.
pub fn in_general_position(c: &PointConfiguration) -> bool {
    c.labels()
        .iter()
        .copied()
        .combinations(c.dim() + 1)
        .all(|s| orientation(c, &s).unwrap() != 0)
}

/// `n` integer points in `[-20, 20]^d` in general position.
pub fn random_config(d: usize, n: usize, rng: &mut ChaCha8Rng) -> PointConfiguration {
    loop {
        let pts: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..d).map(|_| int(rng.gen_range(-20..=20))).collect())
            .collect();
        if let Ok(c) = PointConfiguration::new(d, pts) {
            if in_general_position(&c) {
                return c;
            }
        }
    }
}

/// `n` points in convex and general position: on the unit circle for
/// `d = 2`, on the paraboloid `z = x^2 + y^2` for `d = 3`, on the moment
/// curve otherwise.
pub fn random_convex(d: usize, n: usize, rng: &mut ChaCha8Rng) -> PointConfiguration {
    loop {
        let pts: Vec<Vec<Rational>> = (0..n)
            .map(|_| match d {
                2 => {
                    let s = rat(rng.gen_range(-400..=400), 100);
                    let q = int(1) + &s * &s;
                    vec![(int(1) - &s * &s) / &q, int(2) * &s / &q]
                }
                3 => {
                    let x = int(rng.gen_range(-12..=12));
                    let y = int(rng.gen_range(-12..=12));
                    let z = &x * &x + &y * &y;
                    vec![x, y, z]
                }
                _ => trisweep::constructions::moment_point(d, &rat(rng.gen_range(-300..=300), 100)),
            })
            .collect();
        if let Ok(c) = PointConfiguration::new(d, pts) {
            if in_general_position(&c) {
                return c;
            }
        }
    }
}
