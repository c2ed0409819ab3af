//! Scalar abstraction: the whole library is generic over the working
//! floating-point type.

/// Real scalar the numerical kernels are written against: f32 or f64.
///
/// All tolerances in the library are stated for f64; f32 is supported for the
/// algebraic layers but the tight spectral identities only hold at f64.
pub trait Real: nalgebra::RealField + num_traits::FromPrimitive + Copy + Default {}

impl<T> Real for T where T: nalgebra::RealField + num_traits::FromPrimitive + Copy + Default {}

/// Shorthand conversion from an f64 literal into the working scalar.
#[inline]
pub fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must convert into the scalar type")
}

/// Conversion from usize (mode indices, grid sizes) into the working scalar.
#[inline]
pub fn ru<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize must convert into the scalar type")
}
