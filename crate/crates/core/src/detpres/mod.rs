//! Multiplication matrices `Ω(E, E')`, their minors, and the decision
//! whether the 2-minors generate the ideal of the embedding.

mod omega;
mod quadratic;
mod report;
pub mod sweep;
mod witness;

pub use omega::{build_omega, build_omega_with_bases, minors, zero_entries, Factorization, MultiplicationMatrix};
pub use quadratic::{accumulate_two_minors, minor_span_dim, quadratic_part, sym_index, QuadraticPart, SpanAccumulator};
pub use report::{
    check_presentation, enumerate_splits, homogeneous_ideal, nontrivial_classes, theorem_hypothesis, theorem_split,
    Certificate, CertificateStatus, CheckOptions, OmegaSummary, PresentationReport, SplitSummary, VarietySummary,
    Verdict, WitnessSummary,
};
pub use sweep::{sweep, SweepBounds, SweepRow, SweepSummary};
pub use witness::{one_generic_witness_search, WitnessBudget, WitnessOutcome};
