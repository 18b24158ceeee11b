//! Thin wrappers over `libm` so call sites read like inherent float methods.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `log_3 2`, the similarity dimension of the middle-thirds Cantor set.
pub fn cantor_dimension() -> f64 {
    ln(2.0) / ln(3.0)
}

/// Relative equality with tolerance `tol`, falling back to absolute near zero.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    let scale = abs(a).max(abs(b)).max(1.0);
    abs(a - b) <= tol * scale
}
