//! Q-systems in `Rep G`, their module 2-category and its tube algebra.

mod modules;
mod qsystem;
mod twocat;
mod zreg;

pub use modules::{simple_modules, QModule, Side};
pub use qsystem::{qsystem_from_gset, QSystem, QSystemResiduals};
pub use twocat::*;
pub use zreg::*;
