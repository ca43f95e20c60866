//! Library surface behind the `tga` binary: config parsing, the element
//! expression language, the sweep runner, and the command implementations.

pub mod commands;
pub mod config;
pub mod exprs;
pub mod sweep;
