//! Schubert calculus in algebraic cobordism of complete flag varieties.

#![allow(clippy::len_without_is_empty)]

pub mod error;
pub mod fgl;
pub mod flagring;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod ringcore;
pub mod sample;
pub mod schubert;
pub mod selftest;
pub mod theory;
pub mod weylops;

pub use error::{Error, Result};
