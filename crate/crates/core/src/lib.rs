//! Gaussian continuous-variable toolkit.

pub mod cm;
pub mod consts;
pub mod error;
pub mod scalar;
pub mod state;

pub use cm::{CovarianceMatrix, SymplecticSpectrum, ValidationReport};
pub use error::{Error, Result};
pub use scalar::Real;
pub use state::{ChannelParams, GaussianState, Mode, SignalStage, TmsParams, TwoModeState};

/// Concrete double-precision aliases.
pub type CovarianceMatrix64 = CovarianceMatrix<f64>;
pub type GaussianState64 = GaussianState<f64>;
pub type TwoModeState64 = TwoModeState<f64>;
pub type TmsParams64 = TmsParams<f64>;
pub type ChannelParams64 = ChannelParams<f64>;

/// Concrete single-precision aliases.
pub type CovarianceMatrix32 = CovarianceMatrix<f32>;
pub type GaussianState32 = GaussianState<f32>;
pub type TwoModeState32 = TwoModeState<f32>;
