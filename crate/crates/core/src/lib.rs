//! Exact arithmetic over dyadic Galois rings for Iwahori filtrations,
//! Kloosterman-sum character formulas and conductor bookkeeping.

pub mod charsums;
pub mod cli;
pub mod conductor;
pub mod dring;
pub mod error;
pub mod gf2;
pub mod matgrp;
pub mod matrix_io;
pub mod report;
pub mod rng;
pub mod suites;

pub use error::{Error, Result};
