//! Command implementations behind the `abelianfft` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod io;
