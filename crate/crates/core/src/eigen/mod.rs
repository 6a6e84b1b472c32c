//! Tensor eigenvalue machinery: the bracketing power method and the
//! Gerschgorin-type region it is checked against.

mod gerschgorin;
mod power;

pub use gerschgorin::{bound_check, gerschgorin_bound, BoundCheck, Disk, GerschgorinRegion};
pub use power::{power_method, EigenEstimate, InitialVector, PowerConfig};
