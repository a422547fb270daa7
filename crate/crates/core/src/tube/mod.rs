//! Tube algebras: structure constants, traces, the ∨ map, gauges, corners and
//! representations from half-braidings.

pub mod annular;
pub mod halfbraiding;
pub mod ops;
pub mod table;

pub use annular::{annular_corner, AnnularCorner};
pub use halfbraiding::{coefficient_residual, represent_half_braiding, HalfBraiding, HalfBraidingRep};
pub use ops::{
    decompose, fusion_corner, gauge, projection_residual, trace_residual, vee_anti, FusionCorner, GaugeVector, VeeMap,
};
pub use table::{build_tube, LabelInfo, TubeBasisElement, TubeComponent, TubeTable};
pub(crate) use table::coordinates;
