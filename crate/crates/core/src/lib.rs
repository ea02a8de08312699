//! Exact cluster-algebra mutations and the periodicity machinery built on them.
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod dilog;
pub mod error;
pub mod matrix;
pub mod periodicity;
pub mod permutation;
pub mod quiver;
pub mod seed;
pub mod semifield;
pub mod tysystem;

pub use error::{Error, Result};
pub use matrix::ExchangeMatrix;
pub use permutation::Permutation;
pub use quiver::Quiver;
