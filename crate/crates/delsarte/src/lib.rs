//! File formats, JSON documents and the command-line interface built on
//! `delsarte-core`.

pub mod cli;
pub mod dto;
pub mod formats;
pub mod shorthand;

pub use delsarte_core;
