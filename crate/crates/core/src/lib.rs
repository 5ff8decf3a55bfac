pub mod c1p;
pub mod detection;
pub mod error;
pub mod format;
pub mod generate;
pub mod profile;
pub mod refine;
pub mod rules;
pub mod set;

pub use error::{Error, Result};
pub use profile::{ApprovalProfile, CandidateSet, Committee, Rational, WeightScheme};
