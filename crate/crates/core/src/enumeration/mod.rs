//! Enumeration of regular triangulations, point splitting and the t-sweep.

mod flips;
mod oracle;
mod split;
mod sweep;

use serde::Serialize;

pub use flips::{
    enumerate_regular, enumerate_regular_with, flip_neighbors, initial_triangulation, EnumOptions,
    Enumeration,
};
pub(crate) use flips::with_jobs;
pub use oracle::{enumerate_all_oracle, enumerate_all_oracle_with, regular_subset};
pub use split::{
    check_inseparable, cyclic_inseparable_realization, generic_shared_witness,
    hyperplane_distance_sq, initial_split_epsilon, shared_witness, split_inseparable, split_point,
    CyclicRealization, Inseparability, SplitPair,
};
pub use sweep::{t_sweep, w_t, Breakpoint, Snapshot, SweepTrace};

use crate::triangulation::Triangulation;
use crate::Label;

/// One JSON line per triangulation.
#[derive(Clone, Debug, Serialize)]
pub struct TriangulationLine<'a> {
    pub index: usize,
    pub cells: &'a std::collections::BTreeSet<Vec<Label>>,
    pub regular: bool,
}

/// Trailing summary record of a JSON-lines enumeration stream.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationSummary {
    pub count: usize,
    pub certified_regular: usize,
    pub budget_hit: bool,
}

/// Renders triangulations as JSON lines followed by the summary record.
pub fn json_lines<'a>(
    triangulations: impl IntoIterator<Item = (&'a Triangulation, bool)>,
    budget_hit: bool,
) -> String {
    let mut out = String::new();
    let mut count = 0;
    let mut regular = 0;
    for (i, (t, r)) in triangulations.into_iter().enumerate() {
        let line = TriangulationLine {
            index: i,
            cells: t.cells(),
            regular: r,
        };
        out.push_str(&serde_json::to_string(&line).expect("serializable"));
        out.push('\n');
        count += 1;
        regular += r as usize;
    }
    let summary = EnumerationSummary {
        count,
        certified_regular: regular,
        budget_hit,
    };
    out.push_str(&serde_json::to_string(&summary).expect("serializable"));
    out.push('\n');
    out
}
