//! Degeneracy verdicts and formal linearization of Nijenhuis operators at
//! singular points of scalar type.

pub mod brjuno;
pub mod counterexample;
pub mod homological;
pub mod morse;
pub mod report;
pub mod sigma;
pub mod vector_field;

pub use brjuno::{brjuno, partial_sum, BrjunoOutcome, CFrac};
pub use counterexample::{
    counterexample_suite, gen_counterexample, gen_counterexample_irrational, separating_invariant,
    SeparatingInvariant,
};
pub use homological::{
    formal_linearize, obstruction_is_sound, pushforward, torsion_defect, LinearizeOutcome, Linearization,
    ResonanceObstruction,
};
pub use morse::{linearize_by_invariants, morse_split, trace_normalize, InvariantLinearization, MorseSplit};
pub use report::{LinearizationReport, LinearizationStatus};
pub use sigma::{sigma_membership, verdict, verdict_irrational, Category, SigmaSet, Verdict, VerdictValue};
pub use vector_field::{
    eigenfunction_kernel, is_resonant, tridiagonal_reduce, tridiagonal_unreduce, vf_normal_form, Table5Row,
    VectorField, VfNormalForm,
};
