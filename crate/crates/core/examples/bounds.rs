//! Closed-form lower bounds against enumerated counts, and h-vectors of
//! cyclic polytope boundaries.

use num_integer::binomial;
use trisweep::bounds::{census_bound, verify_cyclic};
use trisweep::constructions::cyclic;
use trisweep::enumeration::EnumOptions;
use trisweep::triangulation::{boundary_complex, h_vector};

fn main() -> trisweep::Result<()> {
    for n in [6, 7] {
        let r = verify_cyclic(3, n, &EnumOptions::default())?;
        println!("cyclic d=3 n={n}: bound {} count {} {}", r.bound, r.count, r.status);
    }
    println!("census bound n=6, d=2: {}", census_bound(6, 2));
    for (d, n) in [(4, 8), (5, 9), (6, 10)] {
        let h = h_vector(&boundary_complex(&cyclic(d, n))?)?;
        let expected: Vec<i64> = (0..=d / 2).map(|k| binomial((n - d - 1 + k) as i64, k as i64)).collect();
        println!("h(cyclic({d},{n})) = {:?}, lower half expected {expected:?}", h.0);
    }
    Ok(())
}
