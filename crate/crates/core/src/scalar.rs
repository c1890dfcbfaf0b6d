use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the numeric kernels are generic over.
///
/// `f32` and `f64` both qualify; model files store weights in the scalar's
/// shortest round-trip decimal form, so `FromStr`/`Display` must invert each
/// other (true for the std float types).
pub trait Scalar:
    Float + NumAssign + FromPrimitive + FromStr + Display + Debug + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, for literals and averaging divisors.
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("float conversion")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
