//! Independent finite-difference oracle for both model operators.
//!
//! Nothing here evaluates a closed-form energy or wavefunction; the models
//! only supply operator coefficients and potentials.

pub mod analysis;
pub mod derivative;
pub mod eigen;
pub mod grid;
pub mod indicial;
pub mod models;
pub mod problem;

pub use analysis::{
    normalize, observed_order, rayleigh_quotient, rayleigh_quotient_at, residual_norm, residual_norm_at,
    richardson, solve_refined, RayleighEstimate, RefinedSpectrum,
};
pub use derivative::{derivatives, Derivatives};
pub use eigen::{lowest_eigenvalues, EigenResult};
pub use grid::{Boundary, BoundaryConditions, Grid1D};
pub use indicial::{end_exponent, frobenius_exponent, inverse_square_strength, IndicialExponent, Side};
pub use models::{
    crs_form, half_line_problem, higgs_channel_problem, higgs_form, interval_problem, oscillator_potential,
    radial_scale, EndAnalysis, EndKind,
};
pub use problem::{assemble, Assembled, Coordinate, FrobeniusEnvelope, ScalarFn, SlForm, SturmLiouvilleProblem};
