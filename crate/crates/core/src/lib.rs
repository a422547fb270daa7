//! Tube algebras of concrete rigid C*-tensor categories and C*-2-categories.

pub mod category;
pub mod double;
pub mod error;
pub mod io;
pub mod morita;
pub mod numerics;
pub mod tube;

pub use error::{Error, Result};
