use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used for probabilities, CDFs and gamma exponents.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static {
    /// Absolute tolerance for "sums to one" checks.
    const SUM_TOLERANCE: Self;

    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn level(l: usize) -> Self {
        Self::from_usize(l).expect("level fits")
    }
}

impl Real for f32 {
    const SUM_TOLERANCE: Self = 1e-5;
}

impl Real for f64 {
    const SUM_TOLERANCE: Self = 1e-9;
}
