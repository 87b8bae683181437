//! Positive lexicographic lifting of a pentagon, the contraction at the
//! apex giving the pentagon back, and a chain rejected by validation.

use trisweep::constructions::convex_polygon;
use trisweep::kernel::{classify_visibility, facets, VisibilityKind};
use trisweep::lifting::{auto_lift, contraction, default_apex, lex_lift, LiftSpec};
use trisweep::PointConfiguration;
use trisweep::rational::rat;
use trisweep::Error;

fn main() -> trisweep::Result<()> {
    let base = convex_polygon(5);
    let lift = auto_lift(&base)?;
    println!("epsilons: {:?}", lift.spec.epsilons.iter().map(|e| e.to_string()).collect::<Vec<_>>());
    let lifted = &lift.lifted;
    let apex = lift.apex_label();
    println!("lifted {} points into R^{}, apex label {apex}", lifted.len(), lifted.dim());

    // Facets of the lifted polytope and whether the apex sees them.
    let without = lift.without_apex();
    for f in facets(&without)? {
        let v = classify_visibility(&without, &f.labels, lifted.coords(apex)?)?;
        let tag = match v.kind() {
            VisibilityKind::Visible => "visible",
            VisibilityKind::Hidden => "hidden",
            _ => "degenerate",
        };
        println!("  facet {:?} {tag}", f.labels);
    }

    let back = contraction(lifted, apex)?;
    println!("contraction at the apex: {} points in R^{}", back.len(), back.dim());

    // A chain that decays too slowly violates the same-side condition.
    let segment = PointConfiguration::from_ints(1, &[vec![0], vec![1], vec![5]])?;
    let slow = LiftSpec::new(default_apex(1), vec![rat(9, 10), rat(8, 10), rat(7, 10)])?;
    match lex_lift(&segment, &slow) {
        Err(Error::ValidationFailed { position, hyperplane }) => {
            println!("slow chain rejected at position {position}, hyperplane {hyperplane:?}")
        }
        other => println!("slow chain accepted: {}", other.is_ok()),
    }
    Ok(())
}
