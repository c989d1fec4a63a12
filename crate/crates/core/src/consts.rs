//! Physical constants (CODATA 2018), kept in one place so every
//! temperature-to-occupation conversion agrees bit for bit.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J / K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
