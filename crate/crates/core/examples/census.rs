//! Exhaustive census of labeled 4-polytope types double-lifted from a
//! sewn hexagon, with sigma recovery on every run.

use trisweep::census::{census, CensusOptions, Store};

fn main() -> trisweep::Result<()> {
    let mut opts = CensusOptions::new(6, 4);
    opts.exhaustive = true;
    opts.verify_recovery = true;
    opts.jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = census(&opts, &mut Store::in_memory())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
