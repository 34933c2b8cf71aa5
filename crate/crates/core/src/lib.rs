//! Trace-defined linear codes over prime fields.
//!
//! The crate builds the codes `C_D1`, `C_D1bar` and `C_D2` from defining
//! sets in F_{p^{2m}}, computes their weight distributions by exhaustive
//! enumeration, finds minimum distances of their duals, checks the results
//! against the Griesmer and sphere-packing bounds, and evaluates the
//! underlying additive character sums exactly.

pub mod bounds;
pub mod charsum;
pub mod code;
pub mod dual;
pub mod field;
pub mod harness;
pub mod linalg;
pub mod parallel;
pub mod poly;
pub mod weights;

pub use bounds::{bound_verdict, BoundVerdict, BoundsError, Label};
pub use charsum::{CharSumError, CyclotomicInteger, QuadraticTrace};
pub use code::{build_family, CodeError, DefiningSet, Family, LinearCode, Provenance};
pub use dual::{dual_min_distance, DualDistance, DualError, DualReport, Witness};
pub use field::{Field, FieldDescriptor, FieldElement, FieldError};
pub use harness::{verify_paper_claims, VerificationReport, VerifyOptions};
pub use weights::{weight_distribution, WeightDistribution, WeightError};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
}
