//! Scalar abstraction: every quantity in this crate is generic over a real
//! floating-point type, instantiated as `f64` (default) or `f32`.

use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar for state and protocol computations: `f32` or `f64`.
pub trait Real: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {
    /// Vacuum quadrature variance under this crate's convention.
    fn vacuum_variance() -> Self {
        Self::from_f64(0.5).unwrap()
    }

    /// Shorthand for `0.5`.
    fn half() -> Self {
        Self::from_f64(0.5).unwrap()
    }

    /// Lossy conversion for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

/// Converts an `f64` literal into the working scalar.
pub(crate) fn lit<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in scalar type")
}
