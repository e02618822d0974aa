//! Library side of the `tvcat` binary: definition-file schema, check
//! reports, and command implementations. Kept as a library so the formats
//! and commands are directly testable.

pub mod commands;
pub mod error;
pub mod report;
pub mod schema;
