pub mod error;
pub mod ring;
pub mod groebner;
pub mod linalg;
pub mod singularity;
pub mod mfcore;
pub mod functors;
pub mod cohomology;
pub mod library;

pub use error::{Error, Result};
