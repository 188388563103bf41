//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type the geometry is generic over (`f32` or `f64`).
///
/// Each implementation carries its own default tolerances, expressed in
/// normalized units (polygon bounding-box diagonal equal to one).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    const TOL_LEN: f64;
    const TOL_CROSS: f64;
    const TOL_RESIDUAL: f64;
    const TOL_IMPROVE: f64;

    /// Converts an `f64` literal. Every finite `f64` maps to some value of `Self`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const TOL_LEN: f64 = 1e-12;
    const TOL_CROSS: f64 = 1e-12;
    const TOL_RESIDUAL: f64 = 1e-9;
    const TOL_IMPROVE: f64 = 1e-12;
}

impl Scalar for f32 {
    const TOL_LEN: f64 = 1e-6;
    const TOL_CROSS: f64 = 1e-6;
    const TOL_RESIDUAL: f64 = 1e-4;
    const TOL_IMPROVE: f64 = 1e-6;
}

/// Numerical thresholds, all in normalized length units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<F> {
    /// Smallest admissible length (segment, radius, direction norm).
    pub len: F,
    /// Sine threshold under which two directions count as parallel.
    pub cross: F,
    /// Acceptance bound for distance residuals.
    pub residual: F,
    /// Smallest perimeter decrease that counts as an improvement.
    pub improve: F,
}

impl<F: Scalar> Default for Tolerances<F> {
    fn default() -> Self {
        Self {
            len: F::lit(F::TOL_LEN),
            cross: F::lit(F::TOL_CROSS),
            residual: F::lit(F::TOL_RESIDUAL),
            improve: F::lit(F::TOL_IMPROVE),
        }
    }
}

impl<F: Scalar> Tolerances<F> {
    /// Returns `true` if every threshold is finite and strictly positive.
    pub fn is_valid(&self) -> bool {
        [self.len, self.cross, self.residual, self.improve]
            .iter()
            .all(|t| t.is_finite() && *t > F::zero())
    }

    pub fn with_residual(mut self, residual: F) -> Self {
        self.residual = residual;
        self
    }

    /// Tolerances for coordinates that have not been normalized: length-like
    /// thresholds are multiplied by `scale`, the sine threshold is left as is.
    pub fn scaled(&self, scale: F) -> Self {
        Self {
            len: self.len * scale,
            cross: self.cross,
            residual: self.residual * scale,
            improve: self.improve * scale,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_double_precision_table() {
        let t = Tolerances::<f64>::default();
        assert_eq!(t.len, 1e-12);
        assert_eq!(t.cross, 1e-12);
        assert_eq!(t.residual, 1e-9);
        assert_eq!(t.improve, 1e-12);
        assert!(t.is_valid());
        assert!(Tolerances::<f32>::default().is_valid());
    }

    #[test]
    fn scaled_leaves_cross_alone() {
        let t = Tolerances::<f64>::default().scaled(10.0);
        assert_eq!(t.cross, 1e-12);
        assert_eq!(t.residual, 1e-8);
    }

    #[test]
    fn rejects_non_positive() {
        let t = Tolerances::<f64>::default().with_residual(0.0);
        assert!(!t.is_valid());
    }
}
