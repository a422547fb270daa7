//! The Drinfeld double of a finite group and its identification with the tube algebra.

pub mod algebra;
pub mod tubg;

pub use algebra::{build_double, double_irreps, DoubleAlgebra, DoubleIrrep};
pub use tubg::{build_tub_g, tube_to_double, verify_full_corner, CornerReport, IsomorphismReport, TubG};
