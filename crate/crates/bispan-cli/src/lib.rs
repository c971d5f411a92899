//! Command line frontend and HTTP game service.

pub mod cli;
pub mod server;
