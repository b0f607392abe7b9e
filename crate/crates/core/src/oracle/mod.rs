//! Brute-force reference algorithms: witness search inside one coloring,
//! avoidance search over all colorings, and threshold scans.

mod avoid;
mod candidates;
mod spec;
mod threshold;
mod witness;

pub use avoid::{
    exists_avoiding_coloring, exists_avoiding_coloring_with, naive_avoiding_coloring, search_table,
    Avoidance, AvoidanceReport, Budget, SearchOptions,
};
pub use candidates::{
    side_values, Candidate, CandidateSide, CandidateTable, DEFAULT_CANDIDATE_CAP,
};
pub use spec::{SideKind, StructureKind, StructureSpec};
pub use threshold::{
    minimal_box_threshold, smallest_nonempty, PointVerdict, ThresholdOutcome, ThresholdReport,
};
pub use witness::{find_witness, find_witness_in, validate_witness, Witness};
