//! Placing, pulling and height-induced triangulations of a small
//! configuration, with links and f/h-vectors.

use trisweep::constructions::cyclic;
use trisweep::kernel::PointConfiguration;
use trisweep::rational::int;
use trisweep::triangulation::{
    h_vector, link, placing, pulling_triangulation, regular_subdivision, LiftingVector,
};

fn main() -> trisweep::Result<()> {
    let c = cyclic(3, 6);
    let place = placing(&c)?;
    let pull = pulling_triangulation(&c)?;
    println!("placing: {}", place.key());
    println!("pulling: {}", pull.key());
    println!("h-vector of placing: {:?}", h_vector(&place.cells().iter().cloned().collect::<Vec<_>>())?.0);

    let (figure, lk) = link(&place, &c, 6)?;
    println!("link of 6 lives in R^{}: {}", figure.dim(), lk.key());

    // Heights t^2 on the points of a line segment configuration give the
    // finest subdivision; equal heights give one big cell.
    let seg = PointConfiguration::from_ints(1, &[vec![0], vec![1], vec![2], vec![3]])?;
    let convex = LiftingVector::from_values(&seg, (0..4).map(|t| int(t * t)).collect())?;
    let flat = LiftingVector::zero(&seg);
    println!("convex heights: {:?}", regular_subdivision(&seg, &convex)?.cells);
    println!("flat heights:   {:?}", regular_subdivision(&seg, &flat)?.cells);
    Ok(())
}
