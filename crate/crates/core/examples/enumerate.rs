//! Flip-graph enumeration of regular triangulations against the exhaustive
//! oracle over all triangulations.

use trisweep::constructions::{convex_polygon, cyclic, nested_triangles};
use trisweep::enumeration::{enumerate_all_oracle, enumerate_regular_with, regular_subset, EnumOptions};

fn main() -> trisweep::Result<()> {
    let cases = [
        ("hexagon", convex_polygon(6)),
        ("nested triangles", nested_triangles()),
        ("cyclic(3,7)", cyclic(3, 7)),
        ("cyclic(4,8)", cyclic(4, 8)),
    ];
    for (name, c) in cases {
        let opts = EnumOptions { budget: None, jobs: 2 };
        let flips = enumerate_regular_with(&c, &opts)?.complete()?;
        let all = enumerate_all_oracle(&c)?;
        let regular = regular_subset(&c, &all)?;
        println!(
            "{name:>16}: {} triangulations, {} regular, flips found {} (agree: {})",
            all.len(),
            regular.len(),
            flips.len(),
            flips == regular
        );
    }
    Ok(())
}
