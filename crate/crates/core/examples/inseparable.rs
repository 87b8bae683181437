//! Splitting a vertex into an inseparable pair, and the cyclic 3-polytope
//! built one inseparable point at a time along the moment curve.

use trisweep::bounds::product_bound;
use trisweep::constructions::convex_polygon;
use trisweep::enumeration::{cyclic_inseparable_realization, enumerate_regular, split_inseparable};

fn main() -> trisweep::Result<()> {
    let pentagon = convex_polygon(5);
    let (pair, ins) = split_inseparable(&pentagon, 5, 1, 30)?;
    println!(
        "split 5 -> {} at distance <= {}: inseparable = {}",
        pair.p_prime, pair.epsilon, ins.holds
    );
    println!(
        "regular triangulations: {} before, {} after",
        enumerate_regular(&pentagon)?.len(),
        enumerate_regular(&pair.config)?.len()
    );

    for n in [6, 7] {
        let r = cyclic_inseparable_realization(3, n)?;
        let params: Vec<String> = r.parameters.iter().map(|t| t.to_string()).collect();
        let count = enumerate_regular(&r.config)?.len();
        println!(
            "n = {n}: parameters {params:?}, {count} regular triangulations, bound {}",
            product_bound(3, n, 1)
        );
    }
    Ok(())
}
