//! Higgs oscillator on the sphere, the generalized CRS oscillator, the map
//! between them, and a finite-difference oracle to check all of it.

pub mod crs;
pub mod error;
pub mod higgs;
pub mod numerics;
pub mod params;
pub mod special_functions;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use params::{PhysParams, QuantumNumbers};
