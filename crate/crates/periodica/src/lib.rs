//! Command-line and HTTP front ends for `periodica-core`.

pub mod cli;
pub mod input;
pub mod ops;
pub mod server;
pub mod session;
