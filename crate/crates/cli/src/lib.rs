//! Library side of the `bibundle` command: identity suite, certificates,
//! reports, golden expectations and command dispatch.

pub mod certificate;
pub mod commands;
pub mod golden;
pub mod identities;
pub mod report;

pub use commands::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
