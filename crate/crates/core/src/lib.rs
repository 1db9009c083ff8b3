//! Single-lobe sine-Gordon kink states on a tadpole graph.
//!
//! The graph is a loop `[-L, L]` whose endpoints are glued to the origin of a
//! half-line `[0, ∞)`. Along each edge the field obeys `u_tt - c_j² u_xx +
//! sin u = 0`. At the vertex the field is continuous, and a δ-type flux
//! condition with strength `Z` couples the edges.
//!
//! The crate is organised bottom-up:
//!
//! - [`elliptic`]: complete integral `K(k)` and the Jacobi functions `sn, cn, dn`.
//! - [`profiles`]: closed-form loop and tail profiles and the glued stationary state.
//! - [`existence`]: the gluing equation `H(k) = Z`, its thresholds and case table.
//! - [`spectral`]: discretised linearisation, Morse index, kernel and stability verdict.
//! - [`dynamics`]: symplectic time stepping and instability growth experiments.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! reports and the command-line tool use.

pub mod dynamics;
pub mod elliptic;
mod error;
pub mod existence;
pub mod profiles;
mod roots;
mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

/// Graph parameters in double precision.
pub type Params = profiles::GraphParams<f64>;
/// Stationary state in double precision.
pub type State = profiles::StationaryState<f64>;
/// Elliptic modulus in double precision.
pub type Modulus = elliptic::EllipticModulus<f64>;
/// Discretization in double precision.
pub type Grid = spectral::Discretization<f64>;
/// Direct spectrum report in double precision.
pub type Spectrum = spectral::SpectrumReport<f64>;
/// Evolution trace in double precision.
pub type Trace = dynamics::EvolutionTrace<f64>;
