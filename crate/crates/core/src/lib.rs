//! Hardy nonlocality for two spin-j particles.
//!
//! The numerical kernels are generic over the scalar type ([`Real`], i.e.
//! `f32` or `f64`); the search drivers in [`optimize`] and [`nogo`] work in
//! `f64`. Aliases for the common `f64` instantiations live at the crate root.

pub mod entanglement;
pub mod error;
pub mod gram_schmidt;
pub mod hardy;
pub mod linalg;
pub mod nelder_mead;
pub mod nogo;
pub mod optimize;
pub mod scalar;
pub mod spin;
pub mod tables;
pub mod unitary;

pub use error::{HardyError, Result};
pub use hardy::{
    condition_states, hardy_family, hardy_state_max, q_value, verify_hardy_conditions, Q_MAX,
};
pub use scalar::{Real, C};
pub use spin::SpinJ;

pub type Complex64 = C<f64>;
pub type Direction = spin::Direction<f64>;
pub type EigenBasis = spin::EigenBasis<f64>;
pub type Scenario = hardy::HardyScenario<f64>;
pub type State = hardy::BipartiteState<f64>;
pub type Family = hardy::HardyFamily<f64>;
pub type Matrix = linalg::CMatrix<f64>;
