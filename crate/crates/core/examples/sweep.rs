//! The t-sweep on a hexagon whose vertex 6 is split into 6 and 7: one good
//! triangulation per step as the link cells move from 6 to 7.

use trisweep::constructions::split_hexagon;
use trisweep::enumeration::{check_inseparable, generic_shared_witness, t_sweep};

fn main() -> trisweep::Result<()> {
    let (pair, t) = split_hexagon();
    let ins = check_inseparable(&pair.config, pair.p, pair.p_prime)?;
    println!("6 and 7 inseparable: {} ({} shared witnesses)", ins.holds, ins.witnesses.len());
    let w = generic_shared_witness(&pair.config, pair.p, pair.p_prime, &t, 7)?
        .expect("inseparable pairs have shared witnesses");
    let trace = t_sweep(&pair, &t, &w)?;
    for b in &trace.breakpoints {
        println!("flip at t = {} in cell {:?}", b.t, b.cell);
    }
    for s in &trace.snapshots {
        println!("t = {:>12}: L = {:?}, L' = {:?}", s.t.to_string(), s.l, s.l_prime);
    }
    println!("{} distinct triangulations for |T/p| = {}", trace.distinct_triangulations().len(), trace.link.len());
    Ok(())
}
