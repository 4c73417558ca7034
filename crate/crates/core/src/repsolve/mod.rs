//! Exact SL(2) representations of a knot group with a parabolic meridian,
//! found by solving the relator equations.

mod groebner;
mod lift;
mod modp;
mod mpoly;
mod solve;
mod system;

pub use mpoly::IntPoly;
pub use solve::{
    eliminate, export_representation, root_in_field, solve, SolutionBranch, SolveOptions,
    SolveOutcome,
};
pub use system::{build_system, presubstitute, Entry, PolySystem, Presubstituted, SolveSpec};
