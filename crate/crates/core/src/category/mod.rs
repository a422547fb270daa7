pub mod carrier;
pub mod engine;
pub mod group;
pub mod quantum;

pub use carrier::{Carrier, Coproduct};
pub use engine::{AlgebraObject, Atom, Engine, Morphism, SimpleLabel, Word};
