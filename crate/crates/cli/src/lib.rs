//! Report machinery behind the `nilgeo` binary: the cross-validation
//! harness, the errata tables, and the loop output formats. Living in a
//! library keeps the acceptance suite able to run everything in-process.

pub mod errata;
pub mod output;
pub mod verify;

pub use errata::{build_errata, ErrataReport};
pub use verify::{run_verification, VerificationReport};
