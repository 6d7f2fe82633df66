//! Ground truth for the solver and decision procedures: exhaustive
//! enumeration, witness replay, random diagrams and batch theorem checks.

mod enumerate;
mod generate;
mod report;
mod verify;

pub use enumerate::{enumerate_targets, Achievable, Enumeration, MAX_FACES};
pub use generate::{braid_closure, pendant, pinch, random_closure, random_diagram, random_diagram_sized, Profile};
pub use report::{check_theorems, corpus_cases, generated_cases, Case, Claim, DiagramReport, EnumerationSummary, OracleReport};
pub use verify::{verify_witness, Verification};
