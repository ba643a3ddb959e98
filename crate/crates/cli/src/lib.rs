//! Front end for `fredholm-core`: curve and loop documents, command
//! dispatch and the exit-code contract.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | malformed document, flag or argument |
//! | 3 | input outside the domain of the computation |
//! | 4 | two computations that must agree did not |

pub mod args;
pub mod commands;
pub mod documents;
pub mod error;

pub use commands::{run, Outcome, Report};
pub use documents::{CurveDocument, LoopDocument, SegmentDocument};
pub use error::CliError;
