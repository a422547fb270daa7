pub mod algebra;
pub mod decompose;
pub mod linalg;

pub use algebra::{gram_positivity, StarAlgebra};
pub use decompose::{decompose_star_algebra, Block, BlockDecomposition};
pub use linalg::{ComplexMatrix, ComplexVector, C64};
