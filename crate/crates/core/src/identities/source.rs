//! Sources of `ln f` on vertical lines and on the real axis.
//!
//! The evaluators only see `ln f` through [`LogSource`], so a test can wrap
//! ζ with an explicit rational factor and check the zero-term bookkeeping
//! against a function whose zeros are known exactly.

use crate::zeta::{
    self, log_tracked, ApproachSide, LogTarget, TrackOptions, ZetaError, ZetaParams, EULER_GAMMA,
};
use crate::Complex;

/// Logarithm of `f(z) = ζ(z)` or `f(z) = ζ(z)(z − 1)`, or a modification of it.
pub trait LogSource: Sync {
    /// Branch-tracked `ln f(σ + it)`, continued horizontally from the right.
    fn log(&self, target: LogTarget, sigma: f64, t: f64) -> Result<Complex, ZetaError>;

    /// `ln|f(σ + it)|`.
    fn ln_abs(&self, target: LogTarget, sigma: f64, t: f64) -> Result<f64, ZetaError> {
        Ok(self.log(target, sigma, t)?.re)
    }

    /// `ln(f(σ)) / (σ − 1)` on the real axis for `f = ζ(z)(z − 1)`, continuous
    /// through `σ = 1` where `f(1) = 1`.
    fn ln_real_over_sigma_minus_1(&self, sigma: f64) -> Result<f64, ZetaError>;
}

/// ζ itself, with the `+i0` convention on paths through tabulated zeros.
#[derive(Debug, Clone)]
pub struct ZetaSource {
    pub params: ZetaParams,
    known_zeros: Vec<f64>,
}

impl ZetaSource {
    pub fn new(params: ZetaParams, known_zeros: Vec<f64>) -> Self {
        Self { params, known_zeros }
    }
}

impl LogSource for ZetaSource {
    fn log(&self, target: LogTarget, sigma: f64, t: f64) -> Result<Complex, ZetaError> {
        let opts = TrackOptions {
            known_zeros: Some(&self.known_zeros),
            approach: Some(ApproachSide::Above),
            ..TrackOptions::default()
        };
        Ok(log_tracked(sigma, t, target, &self.params, &opts)?.value)
    }

    fn ln_abs(&self, target: LogTarget, sigma: f64, t: f64) -> Result<f64, ZetaError> {
        let s = Complex::new(sigma, t);
        let v = match target {
            LogTarget::Zeta => zeta::zeta(s, &self.params)?,
            LogTarget::ZetaTimesZMinus1 => zeta::zeta_times_s_minus_1(s, &self.params)?,
        };
        Ok(v.norm().ln())
    }

    fn ln_real_over_sigma_minus_1(&self, sigma: f64) -> Result<f64, ZetaError> {
        let u = sigma - 1.0;
        if u.abs() < 1e-4 {
            return Ok(EULER_GAMMA + zeta::laurent_c2() * u);
        }
        Ok(zeta::ln_zeta_times_s_minus_1_real(sigma, &self.params)? / u)
    }
}
