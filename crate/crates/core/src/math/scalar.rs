//! Float math shim: inherent `std` methods when available, `libm` otherwise.
//!
//! All transcendental calls in the crate go through [`Real`] (by UFCS, e.g.
//! `Real::sqrt(x)`) so that `no_std` builds only need the `libm` feature.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("equisplat-core requires either the `std` or the `libm` feature");

macro_rules! forward {
    ($self:ident, $std_name:ident, $libm_name:ident $(, $arg:ident)*) => {{
        #[cfg(feature = "std")]
        {
            $self.$std_name($($arg),*)
        }
        #[cfg(all(not(feature = "std"), feature = "libm"))]
        {
            libm::$libm_name($self $(, $arg)*)
        }
    }};
}

/// Scalar float operations used throughout the crate.
pub trait Real: Copy {
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn log10(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn asin(self) -> Self;
    fn acos(self) -> Self;
    fn atan2(self, other: Self) -> Self;
    fn tanh(self) -> Self;
    fn powf(self, e: Self) -> Self;
    fn powi(self, e: i32) -> Self;
    fn floor(self) -> Self;
    fn round(self) -> Self;
    fn abs(self) -> Self;
    fn hypot(self, other: Self) -> Self;
    fn max_val(self, other: Self) -> Self;
    fn min_val(self, other: Self) -> Self;
}

impl Real for f64 {
    fn sqrt(self) -> f64 {
        forward!(self, sqrt, sqrt)
    }
    fn exp(self) -> f64 {
        forward!(self, exp, exp)
    }
    fn ln(self) -> f64 {
        forward!(self, ln, log)
    }
    fn log10(self) -> f64 {
        forward!(self, log10, log10)
    }
    fn sin(self) -> f64 {
        forward!(self, sin, sin)
    }
    fn cos(self) -> f64 {
        forward!(self, cos, cos)
    }
    fn tan(self) -> f64 {
        forward!(self, tan, tan)
    }
    fn asin(self) -> f64 {
        forward!(self, asin, asin)
    }
    fn acos(self) -> f64 {
        forward!(self, acos, acos)
    }
    fn atan2(self, other: f64) -> f64 {
        forward!(self, atan2, atan2, other)
    }
    fn tanh(self) -> f64 {
        forward!(self, tanh, tanh)
    }
    fn powf(self, e: f64) -> f64 {
        forward!(self, powf, pow, e)
    }
    fn powi(self, e: i32) -> f64 {
        #[cfg(feature = "std")]
        {
            self.powi(e)
        }
        #[cfg(all(not(feature = "std"), feature = "libm"))]
        {
            libm::pow(self, e as f64)
        }
    }
    fn floor(self) -> f64 {
        forward!(self, floor, floor)
    }
    fn round(self) -> f64 {
        forward!(self, round, round)
    }
    fn abs(self) -> f64 {
        forward!(self, abs, fabs)
    }
    fn hypot(self, other: f64) -> f64 {
        forward!(self, hypot, hypot, other)
    }
    fn max_val(self, other: f64) -> f64 {
        self.max(other)
    }
    fn min_val(self, other: f64) -> f64 {
        self.min(other)
    }
}

impl Real for f32 {
    fn sqrt(self) -> f32 {
        forward!(self, sqrt, sqrtf)
    }
    fn exp(self) -> f32 {
        forward!(self, exp, expf)
    }
    fn ln(self) -> f32 {
        forward!(self, ln, logf)
    }
    fn log10(self) -> f32 {
        forward!(self, log10, log10f)
    }
    fn sin(self) -> f32 {
        forward!(self, sin, sinf)
    }
    fn cos(self) -> f32 {
        forward!(self, cos, cosf)
    }
    fn tan(self) -> f32 {
        forward!(self, tan, tanf)
    }
    fn asin(self) -> f32 {
        forward!(self, asin, asinf)
    }
    fn acos(self) -> f32 {
        forward!(self, acos, acosf)
    }
    fn atan2(self, other: f32) -> f32 {
        forward!(self, atan2, atan2f, other)
    }
    fn tanh(self) -> f32 {
        forward!(self, tanh, tanhf)
    }
    fn powf(self, e: f32) -> f32 {
        forward!(self, powf, powf, e)
    }
    fn powi(self, e: i32) -> f32 {
        #[cfg(feature = "std")]
        {
            self.powi(e)
        }
        #[cfg(all(not(feature = "std"), feature = "libm"))]
        {
            libm::powf(self, e as f32)
        }
    }
    fn floor(self) -> f32 {
        forward!(self, floor, floorf)
    }
    fn round(self) -> f32 {
        forward!(self, round, roundf)
    }
    fn abs(self) -> f32 {
        forward!(self, abs, fabsf)
    }
    fn hypot(self, other: f32) -> f32 {
        forward!(self, hypot, hypotf, other)
    }
    fn max_val(self, other: f32) -> f32 {
        self.max(other)
    }
    fn min_val(self, other: f32) -> f32 {
        self.min(other)
    }
}
