//! Closed-form and quadrature contributions of individual zeros and of the pole.
//!
//! Throughout, `g(z) = 1/(a² − (z − b)²)` and a zero `ρ = σ + it` with
//! `σ > b` contributes through the horizontal segment from `b + it` (or from a
//! left edge `X₁ + it`) to `ρ`. Substituting `z = b + p + it` gives the
//! kernel `1/(a² − (p + it)²)`, whose real and imaginary parts are
//! `(a² − p² + t²)/D` and `2pt/D` with `D = (a² − p² + t²)² + 4p²t²`.

use std::f64::consts::{LN_2, PI, TAU};

use serde::{Deserialize, Serialize};

use super::IdentityError;
use crate::quadrature::{Integrator, QuadratureError};
use crate::zeros::{HypotheticalZero, ZeroOrdinate};
use crate::zeta::EULER_GAMMA;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    RealPart,
    ImagPart,
}

/// `ln((a + u)/(a − u))` at `u = x − b + it`, principal branch.
fn log_ratio(a: f64, u: Complex) -> Result<Complex, IdentityError> {
    let num = a + u;
    let den = a - u;
    if num.norm() == 0.0 || den.norm() == 0.0 {
        return Err(IdentityError::DegenerateArgument);
    }
    Ok((num / den).ln())
}

/// Rejects real segments `[x_from, x_to]` (at `t = 0`) that run through a
/// pole `b ± a` of `g`.
fn check_real_segment(a: f64, b: f64, t: f64, x_from: f64, x_to: f64) -> Result<(), IdentityError> {
    if t != 0.0 {
        return Ok(());
    }
    let (lo, hi) = if x_from <= x_to { (x_from, x_to) } else { (x_to, x_from) };
    for pole in [b - a, b + a] {
        if lo <= pole && pole <= hi {
            return Err(IdentityError::DegenerateArgument);
        }
    }
    Ok(())
}

/// Bracket of the zero contribution: `I_k = (−πi/a)·zero_term_eq1`, that is
/// `m·[ln((a+σ−b+it)/(a−σ+b−it)) − ln((a+X₁−b+it)/(a−X₁+b−it))]`.
pub fn zero_term_eq1(a: f64, b: f64, x1: f64, zero: &HypotheticalZero) -> Result<Complex, IdentityError> {
    if a == 0.0 {
        return Err(IdentityError::DegenerateArgument);
    }
    check_real_segment(a, b, zero.t, x1, zero.sigma)?;
    let end = log_ratio(a, Complex::new(zero.sigma - b, zero.t))?;
    let start = log_ratio(a, Complex::new(x1 - b, zero.t))?;
    Ok((end - start) * zero.multiplicity as f64)
}

/// Contribution of the pole of ζ at 1:
/// `(πi/a)·[ln((a+1−b)/(a−1+b)) − ln((a+X₁−b)/(a−X₁+b))]`.
pub fn pole_term_ipol(a: f64, b: f64, x1: f64) -> Result<Complex, IdentityError> {
    if a == 0.0 {
        return Err(IdentityError::DegenerateArgument);
    }
    check_real_segment(a, b, 0.0, x1, 1.0)?;
    let end = log_ratio(a, Complex::new(1.0 - b, 0.0))?;
    let start = log_ratio(a, Complex::new(x1 - b, 0.0))?;
    Ok(Complex::new(0.0, PI / a) * (end - start))
}

/// `m·ln|(a+σ−b+it)/(a−σ+b−it)|` for a single zero (not its conjugate).
pub fn zero_term_modulus(a: f64, b: f64, zero: &HypotheticalZero) -> f64 {
    let t2 = zero.t * zero.t;
    let up = a + zero.sigma - b;
    let down = a - zero.sigma + b;
    zero.multiplicity as f64 * 0.5 * ((up * up + t2) / (down * down + t2)).ln()
}

fn p_range(b: f64, zero: &HypotheticalZero) -> Result<Option<f64>, QuadratureError> {
    let width = zero.sigma - b;
    if width == 0.0 {
        Ok(None)
    } else if width > 0.0 {
        Ok(Some(width))
    } else {
        Err(QuadratureError::InvalidInterval { lo: 0.0, hi: width })
    }
}

/// `m·∫₀^{σ−b}` of the real or imaginary part of `1/(a² − (p + it)²)`.
pub fn zero_term_p_integral(
    a: f64,
    b: f64,
    zero: &HypotheticalZero,
    part: Part,
    integrator: &Integrator,
) -> Result<f64, QuadratureError> {
    let Some(width) = p_range(b, zero)? else {
        return Ok(0.0);
    };
    let t = zero.t;
    let kernel = |p: f64| {
        let re = a * a - p * p + t * t;
        let im = 2.0 * p * t;
        let d = re * re + im * im;
        match part {
            Part::RealPart => re / d,
            Part::ImagPart => im / d,
        }
    };
    let r = integrator.integrate_finite(kernel, 0.0, width, &[], &[])?;
    Ok(zero.multiplicity as f64 * r.value)
}

/// `m·∫₀^{σ−b}` of the real or imaginary part of
/// `e^{3iφ/2} / ((a²−p²+t²)² + 4p²t²)^{3/4}` with `φ = atan2(2pt, a²−p²+t²)`,
/// `a = 1/2 − α`, `b = 1/2 + α`: the principal `(a² − (p + it)²)^{−3/2}`.
pub fn zero_term_threehalves(
    alpha: f64,
    zero: &HypotheticalZero,
    part: Part,
    integrator: &Integrator,
) -> Result<f64, QuadratureError> {
    let a = 0.5 - alpha;
    let b = 0.5 + alpha;
    let Some(width) = p_range(b, zero)? else {
        return Ok(0.0);
    };
    let t = zero.t;
    let kernel = |p: f64| {
        let re = a * a - p * p + t * t;
        let im = 2.0 * p * t;
        let modulus = (re * re + im * im).powf(0.75);
        let phi = im.atan2(re);
        match part {
            Part::RealPart => (1.5 * phi).cos() / modulus,
            Part::ImagPart => (1.5 * phi).sin() / modulus,
        }
    };
    let r = integrator.integrate_finite(kernel, 0.0, width, &[], &[])?;
    Ok(zero.multiplicity as f64 * r.value)
}

/// Semicircle-contour sum `Σ_{σ_k>b, t_k>0} −4πi(σ_k−b)/((σ_k−b)² + t_k²)`,
/// plus the pole term `2πi(1/(1−b) − 1/R)` when `b + R < 1`.
///
/// Tabulated ordinates are taken on the critical line; each hypothetical zero
/// stands for itself and its conjugate.
pub fn wang_sum(b: f64, catalog: &[ZeroOrdinate], hypo: &[HypotheticalZero], radius: f64) -> Complex {
    let term = |sigma: f64, t: f64, m: u32| {
        let d = sigma - b;
        if d > 0.0 {
            -2.0 * TAU * m as f64 * d / (d * d + t * t)
        } else {
            0.0
        }
    };
    let mut im = 0.0;
    for z in catalog {
        im += term(0.5, z.t, 1);
    }
    for z in hypo {
        im += term(z.sigma, z.t.abs(), z.multiplicity);
    }
    if b + radius < 1.0 {
        im += TAU * (1.0 / (1.0 - b) - 1.0 / radius);
    }
    Complex::new(0.0, im)
}

/// `∫ ln|b−1+it|/(a²+t²) dt` over the whole line: `(π/a)·ln(a−b+1)`.
pub fn remark1_closed_form(a: f64, b: f64) -> Result<f64, IdentityError> {
    if !(a > 0.0) || !(b < 1.0) {
        return Err(IdentityError::InvalidSpec(format!(
            "closed form needs a > 0 and b < 1, got a = {a}, b = {b}"
        )));
    }
    Ok(PI / a * (a - b + 1.0).ln())
}

/// `∫₀^∞ ln|−1/2+α+it| / ((1/2−α)²+t²)^{3/2} dt
///  = (1/(2a²))·[ψ(3/2) + γ + 2 ln a]` with `a = 1/2 − α`.
pub fn remark3_constant(alpha: f64) -> f64 {
    let a = 0.5 - alpha;
    let psi = 2.0 - 2.0 * LN_2 - EULER_GAMMA;
    (psi + EULER_GAMMA + 2.0 * a.ln()) / (2.0 * a * a)
}

/// Contribution of the critical-line zero pair `1/2 ± it` to the two forms of
/// the `a = 1/2 − α` right-hand side: the modulus-ratio form and
/// `ln(|ρ|/|ρ − (1−2α)|)`. Returns `(ratio_form, transform_form)`.
pub fn eq8_pair_terms(alpha: f64, t: f64) -> (f64, f64) {
    let a = 0.5 - alpha;
    let ratio_form = 2.0 * zero_term_modulus(a, a, &HypotheticalZero::on_critical_line(t));
    let rho = Complex::new(0.5, t);
    let transform_form = 2.0 * (rho.norm() / (rho - (1.0 - 2.0 * alpha)).norm()).ln();
    (ratio_form, transform_form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_length_cuts_vanish() {
        let z = HypotheticalZero::new(0.5, 30.0, 1);
        assert_eq!(zero_term_eq1(1.0, 0.5, 0.5, &z).unwrap(), Complex::new(0.0, 0.0));
        assert_eq!(pole_term_ipol(1.0, 0.75, 1.0).unwrap(), Complex::new(0.0, 0.0));
        assert_eq!(zero_term_modulus(1.0, 0.5, &z), 0.0);
    }

    #[test]
    fn pole_term_direct_substitution() {
        let v = pole_term_ipol(1.0, 0.75, 0.75).unwrap();
        assert!(v.re.abs() < 1e-15);
        assert!((v.im - PI * (1.25f64 / 0.75).ln()).abs() < 1e-14);
    }

    #[test]
    fn multiplicity_scales() {
        let one = zero_term_eq1(1.0, 0.5, 0.5, &HypotheticalZero::new(0.75, 100.0, 1)).unwrap();
        let two = zero_term_eq1(1.0, 0.5, 0.5, &HypotheticalZero::new(0.75, 100.0, 2)).unwrap();
        assert_eq!(two, one * 2.0);
    }

    #[test]
    fn degenerate_arguments() {
        // a − (σ − b) = 0 at the zero end.
        let z = HypotheticalZero::new(1.5, 0.0, 1);
        assert!(matches!(zero_term_eq1(1.0, 0.5, 0.5, &z), Err(IdentityError::DegenerateArgument)));
        assert!(matches!(pole_term_ipol(0.1, 0.5, 0.2), Err(IdentityError::DegenerateArgument)));
    }

    #[test]
    fn modulus_example_value() {
        let v = zero_term_modulus(1.0, 0.25, &HypotheticalZero::on_critical_line(14.134725));
        let t2 = 14.134725f64.powi(2);
        assert!((v - 0.5 * ((1.5625 + t2) / (0.5625 + t2)).ln()).abs() < 1e-16);
        assert!((v - 2.4894e-3).abs() < 1e-6);
    }

    #[test]
    fn threehalves_empty_range() {
        let integ = Integrator::new(1e-12);
        let z = HypotheticalZero::new(0.6, 40.0, 1);
        assert_eq!(zero_term_threehalves(0.1, &z, Part::RealPart, &integ).unwrap(), 0.0);
    }

    #[test]
    fn wang_sum_pole_switch() {
        assert_eq!(wang_sum(0.75, &[], &[], 1.0), Complex::new(0.0, 0.0));
        let v = wang_sum(0.25, &[], &[], 0.5);
        assert!((v.im - TAU * (1.0 / 0.75 - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn remark_constants() {
        assert!((remark1_closed_form(1.0, 0.75).unwrap() - PI * 1.25f64.ln()).abs() < 1e-15);
        assert_eq!(remark1_closed_form(0.5, 0.5).unwrap(), 0.0);
        assert!((remark3_constant(0.0) - (4.0 - 8.0 * LN_2)).abs() < 1e-14);
    }
}
