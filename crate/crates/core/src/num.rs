//! Scalar abstraction and numerically careful logistic primitives.
//!
//! Everything downstream (likelihoods, the coordinate-descent solver, the
//! LLA loop) is generic over [`Scalar`], so the same code runs in `f32` or
//! `f64`. Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, NumAssign};

/// Floating-point scalar the estimators are generic over.
pub trait Scalar: Float + NumAssign + Sum + Debug + Display + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// log(1 + exp(eta)) computed as max(eta, 0) + log1p(exp(-|eta|)) so large
/// positive eta cannot overflow.
#[inline]
pub fn log1pexp<F: Scalar>(eta: F) -> F {
    eta.max(F::zero()) + (-eta.abs()).exp().ln_1p()
}

/// Logistic function, evaluated on the side that keeps exp() bounded.
#[inline]
pub fn sigmoid<F: Scalar>(x: F) -> F {
    if x >= F::zero() {
        let e = (-x).exp();
        F::one() / (F::one() + e)
    } else {
        let e = x.exp();
        e / (F::one() + e)
    }
}
