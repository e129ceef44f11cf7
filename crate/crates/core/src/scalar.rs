//! Scalar abstraction shared by every solver.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftPlanner;

/// In-place complex transform of a fixed length.
pub type Transform<T> = Arc<dyn Fn(&mut [Complex<T>]) + Send + Sync>;

/// Forward and inverse unnormalised transforms for one length.
#[derive(Clone)]
pub struct FftPlan<T> {
    pub forward: Transform<T>,
    pub inverse: Transform<T>,
}

/// Floating-point scalar (`f32` or `f64`).
///
/// FFT support is reached through [`Real::fft_plan`] so that generic code
/// never sees `rustfft`'s `Signed` bound, which would make `abs` ambiguous.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    fn fft_plan(len: usize) -> FftPlan<Self>;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn fft_plan(len: usize) -> FftPlan<Self> {
                let mut planner = FftPlanner::<$t>::new();
                let f = planner.plan_fft_forward(len);
                let i = planner.plan_fft_inverse(len);
                FftPlan {
                    forward: Arc::new(move |buf: &mut [Complex<$t>]| f.process(buf)),
                    inverse: Arc::new(move |buf: &mut [Complex<$t>]| i.process(buf)),
                }
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).unwrap_or_else(T::nan)
}

/// Converts a count into `T`.
#[inline]
pub fn count<T: Real>(n: usize) -> T {
    T::from_usize(n).unwrap_or_else(T::nan)
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub fn complex_from_f64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(lit(z.re), lit(z.im))
}

pub fn complex_to_f64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(to_f64(z.re), to_f64(z.im))
}

#[inline]
pub fn is_finite_c<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
