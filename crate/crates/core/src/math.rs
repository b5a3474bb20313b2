//! Float math entry points that work with and without std.
//!
//! `cos` and `exp` always come from `libm`, in both builds: they are only
//! used to fill the cosine and weight tables, and taking them from one
//! source keeps the tables bit-identical whether or not std is enabled.
//! `sqrt` is correctly rounded by IEEE 754 wherever it comes from, so the
//! std build may use the intrinsic.

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
