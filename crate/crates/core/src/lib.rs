#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod coxeter;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod polytope;
pub mod project;
pub mod tessellate;
pub mod volume;

pub use error::Error;
