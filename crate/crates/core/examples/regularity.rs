//! Regularity certificates: a lifting vector for a regular triangulation,
//! and a vanishing combination of inequalities for the twisted triangulation
//! of two nested triangles.

use trisweep::constructions::{nested_triangles, twisted_triangulation};
use trisweep::triangulation::{is_regular, placing, regular_subdivision, Regularity};

fn main() -> trisweep::Result<()> {
    let c = nested_triangles();
    let t = placing(&c)?;
    if let Regularity::Regular(w) = is_regular(&t, &c)? {
        let back = regular_subdivision(&c, &w)?.to_triangulation();
        println!("placing {} is regular; witness reproduces it: {}", t.key(), back.as_ref() == Some(&t));
    }
    let twisted = twisted_triangulation();
    match is_regular(&twisted, &c)? {
        Regularity::NonRegular(cert) => {
            println!("twisted {} is not regular", twisted.key());
            for term in &cert.terms {
                println!(
                    "  {} x [point {} above cell {:?}]",
                    term.weight, term.inequality.point, term.inequality.cell
                );
            }
            println!("certificate verifies: {}", cert.verify());
        }
        Regularity::Regular(_) => println!("unexpectedly regular"),
    }
    Ok(())
}
