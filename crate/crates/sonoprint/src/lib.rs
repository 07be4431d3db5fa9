//! File formats, corpora on disk, reports and the command-line front end
//! for `sonoprint-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod corpus_dir;
pub mod error;
pub mod model;
pub mod pipeline;
pub mod plot;
pub mod report;
pub mod table;
pub mod wav;

pub use config::ExperimentConfig;
pub use error::{AppError, AppResult};
