//! Quantum error-correcting codes from weighted graph states over `Z_p`,
//! with noisy, half-noisy and noiseless channels handled by one model.
//!
//! The pieces, bottom up: [`zp`] arithmetic, [`graph_state`] algebra and its
//! [`dense`] state-vector oracle, [`noise`] channel layouts, [`code_space`]
//! coding-clique conditions, [`search`] for cliques, [`kl`] verification,
//! [`bounds`] on code size, the [`catalog`] of published codes, JSON
//! [`formats`], randomized [`oracle`] suites and the [`workbench`] CLI.

pub mod bounds;
pub mod catalog;
pub mod code_space;
pub mod dense;
pub mod error;
pub mod formats;
pub mod graph_state;
pub mod kl;
pub mod noise;
pub mod oracle;
pub mod search;
pub mod workbench;
pub mod zp;

pub use error::{Error, Result};
