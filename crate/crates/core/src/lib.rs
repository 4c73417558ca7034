pub mod cli;
pub mod error;
pub mod exactalg;
pub mod foxcalc;
pub mod freegroup;
pub mod replift;
pub mod repsolve;
pub mod torsioncore;

pub use error::{Error, Result};
pub mod tables;
