//! Identity evaluators.
//!
//! Each [`CaseSpec`] names one identity and its parameters. Evaluation
//! computes the truncated vertical-line integral, any real-axis integral, the
//! closed-form and pole terms and the zero contributions, and reports
//! `residual = lhs − rhs` together with an estimate of the part of the
//! residual owed to truncation at `T`.
//!
//! Arrangements (with `g̃(t) = 1/(a² + t²)` or its 3/2 power, `a = 1/2 − α`
//! and `b = 1/2 + α` for the α-parametrised identities):
//!
//! | theorem  | lhs | rhs |
//! |----------|-----|-----|
//! | `EQ2`, `EQ7` | `(a/π)∫ ln|ζ(b+it)| g̃` | `ln|ζ(a+b)| + ln|(a+b−1)/(a−b+1)| + Σ` |
//! | `THM3`, `EQ8` | `(a/π)∫ ln|ζ(b+it)(b−1+it)| g̃` | `ln|ζ(a+b)(a+b−1)| + Σ` |
//! | `B_GT_1` | `(a/π)∫ ln|ζ(b+it)| g̃` | `ln ζ(a+b)` |
//! | `THM4` | `∫ ln|ζ(b+it)(b−1+it)| g̃` | `(π/a)·Σ` |
//! | `THM5` | `∫₀^T arg(…) g̃ + ∫_b^∞ ln(ζ(σ)(σ−1))/((1−σ)(σ−2α))` | `2π Σ Im P` |
//! | `THM6` | `∫₀^T ln|…| g̃^{3/2}` | `−∫₁^∞ ln(ζ(σ)(σ−1))/((σ−1)(σ−2α))^{3/2} + 2π Σ Re Q` |
//! | `THM7` | `∫₀^T arg(…) g̃^{3/2} + ∫_b^1 ln(ζ(σ)(σ−1))/((1−σ)(σ−2α))^{3/2}` | `2π Σ Im Q` |
//! | `WANG` | `−2∫_R^T ln|ζ(b+it)|/t² + (2/R)∫₀^{π/2} Re(ln ζ(b+Re^{iθ}) e^{−iθ}) dθ` | `Im` of [`wang_sum`] |
//!
//! Full-line integrals are `2∫₀^T`. `P` and `Q` are the per-zero segment
//! integrals of [`zero_term_p_integral`] and [`zero_term_threehalves`].

mod eval;
mod source;
mod terms;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{QuadratureError, DEFAULT_PANEL_BUDGET, DEFAULT_TOL};
use crate::zeros::{CatalogError, HypotheticalZero};
use crate::zeta::{ZetaError, ZetaParams};

pub use eval::{
    eval_b_gt_1, eval_eq2, eval_eq7_eq8, eval_thm3, eval_thm4, eval_thm5, eval_thm6, eval_thm7,
    eval_wang, evaluate, evaluate_with_source, integrand_at,
};
pub use source::{LogSource, ZetaSource};
pub use terms::{
    eq8_pair_terms, pole_term_ipol, remark1_closed_form, remark3_constant, wang_sum, zero_term_eq1,
    zero_term_modulus, zero_term_p_integral, zero_term_threehalves, Part,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "EQ2")]
    Eq2,
    #[serde(rename = "THM3")]
    Thm3,
    #[serde(rename = "THM4")]
    Thm4,
    #[serde(rename = "THM5")]
    Thm5,
    #[serde(rename = "THM6")]
    Thm6,
    #[serde(rename = "THM7")]
    Thm7,
    #[serde(rename = "EQ7")]
    Eq7,
    #[serde(rename = "EQ8")]
    Eq8,
    #[serde(rename = "B_GT_1")]
    BGt1,
    #[serde(rename = "WANG")]
    Wang,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::Eq2 => "EQ2",
            Theorem::Thm3 => "THM3",
            Theorem::Thm4 => "THM4",
            Theorem::Thm5 => "THM5",
            Theorem::Thm6 => "THM6",
            Theorem::Thm7 => "THM7",
            Theorem::Eq7 => "EQ7",
            Theorem::Eq8 => "EQ8",
            Theorem::BGt1 => "B_GT_1",
            Theorem::Wang => "WANG",
        }
    }

    /// Identities parametrised by α rather than by `b`.
    pub fn uses_alpha(&self) -> bool {
        matches!(
            self,
            Theorem::Thm4 | Theorem::Thm5 | Theorem::Thm6 | Theorem::Thm7 | Theorem::Eq7 | Theorem::Eq8
        )
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_budget() -> usize {
    DEFAULT_PANEL_BUDGET
}

/// One identity instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    #[serde(default)]
    pub id: String,
    pub theorem: Theorem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Semicircle radius for `WANG` (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Truncation height of the vertical-line integrals and of the zero sums.
    #[serde(rename = "T")]
    pub t_max: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub zeta_params: ZetaParams,
    #[serde(default = "default_budget")]
    pub panel_budget: usize,
    /// Off-line zeros for exercising the zero terms. Never read from files.
    #[serde(skip)]
    pub hypothetical_zeros: Vec<HypotheticalZero>,
}

/// Parameters after defaults and domain checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Resolved {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub radius: f64,
}

impl CaseSpec {
    fn base(id: &str, theorem: Theorem, t_max: f64) -> Self {
        Self {
            id: id.to_string(),
            theorem,
            a: None,
            b: None,
            alpha: None,
            radius: None,
            t_max,
            tol: DEFAULT_TOL,
            zeta_params: ZetaParams::default(),
            panel_budget: DEFAULT_PANEL_BUDGET,
            hypothetical_zeros: Vec::new(),
        }
    }

    /// Case parametrised by `(a, b)`: `EQ2`, `THM3`, `B_GT_1`.
    pub fn with_ab(id: &str, theorem: Theorem, a: f64, b: f64, t_max: f64) -> Self {
        Self { a: Some(a), b: Some(b), ..Self::base(id, theorem, t_max) }
    }

    /// Case parametrised by α: `THM4`–`THM7`, `EQ8`.
    pub fn with_alpha(id: &str, theorem: Theorem, alpha: f64, t_max: f64) -> Self {
        Self { alpha: Some(alpha), ..Self::base(id, theorem, t_max) }
    }

    /// `EQ7` with free `a`.
    pub fn eq7(id: &str, a: f64, alpha: f64, t_max: f64) -> Self {
        Self { a: Some(a), alpha: Some(alpha), ..Self::base(id, Theorem::Eq7, t_max) }
    }

    pub fn wang(id: &str, b: f64, radius: f64, t_max: f64) -> Self {
        Self { b: Some(b), radius: Some(radius), ..Self::base(id, Theorem::Wang, t_max) }
    }

    /// `b` or `α`, whichever parametrises the theorem.
    pub fn b_or_alpha(&self) -> Option<f64> {
        if self.theorem.uses_alpha() {
            self.alpha
        } else {
            self.b
        }
    }

    /// Whether tabulated zeros enter the right-hand side, so that the table
    /// must reach `T`.
    pub fn needs_zero_table(&self) -> bool {
        let b = if self.theorem.uses_alpha() {
            match self.theorem {
                Theorem::Eq7 | Theorem::Eq8 => self.alpha.map(|a| 0.5 - a),
                _ => self.alpha.map(|a| 0.5 + a),
            }
        } else {
            self.b
        };
        matches!(self.theorem, Theorem::Eq2 | Theorem::Eq7 | Theorem::Eq8 | Theorem::Wang)
            && b.is_some_and(|b| b < 0.5)
    }

    pub(crate) fn resolve(&self) -> Result<Resolved, IdentityError> {
        let bad = |msg: String| Err(IdentityError::InvalidSpec(format!("{}: {msg}", self.theorem)));
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return bad(format!("T must be positive, got {}", self.t_max));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.panel_budget == 0 {
            return bad("panel_budget must be positive".into());
        }
        self.zeta_params.validate()?;
        let need = |v: Option<f64>, name: &str| {
            v.filter(|x| x.is_finite())
                .ok_or_else(|| IdentityError::InvalidSpec(format!("{}: parameter {name} is required", self.theorem)))
        };
        let alpha_in = |alpha: f64, open_left: bool| {
            let ok = if open_left { alpha > 0.0 } else { alpha >= 0.0 };
            ok && alpha < 0.5
        };
        let r = match self.theorem {
            Theorem::Eq2 | Theorem::Thm3 | Theorem::BGt1 => {
                let (a, b) = (need(self.a, "a")?, need(self.b, "b")?);
                if !(a > 0.0) {
                    return bad(format!("a must be positive, got {a}"));
                }
                match self.theorem {
                    Theorem::Eq2 if !(b > 0.0 && b < 1.0) => return bad(format!("b must lie in (0, 1), got {b}")),
                    Theorem::Thm3 if !(0.5..1.0).contains(&b) => {
                        return bad(format!("b must lie in [1/2, 1), got {b}"))
                    }
                    Theorem::Thm3 if a + b == 1.0 => return bad("a + b must differ from 1".into()),
                    Theorem::BGt1 if !(b > 1.0) => return bad(format!("b must exceed 1, got {b}")),
                    _ => {}
                }
                Resolved { a, b, alpha: 0.5 - b, radius: 0.0 }
            }
            Theorem::Thm4 | Theorem::Thm5 | Theorem::Thm6 | Theorem::Thm7 => {
                let alpha = need(self.alpha, "alpha")?;
                if !alpha_in(alpha, false) {
                    return bad(format!("alpha must lie in [0, 1/2), got {alpha}"));
                }
                Resolved { a: 0.5 - alpha, b: 0.5 + alpha, alpha, radius: 0.0 }
            }
            Theorem::Eq7 | Theorem::Eq8 => {
                let alpha = need(self.alpha, "alpha")?;
                if !alpha_in(alpha, true) {
                    return bad(format!("alpha must lie in (0, 1/2), got {alpha}"));
                }
                let a = if self.theorem == Theorem::Eq8 { 0.5 - alpha } else { need(self.a, "a")? };
                if !(a > 0.0) {
                    return bad(format!("a must be positive, got {a}"));
                }
                Resolved { a, b: 0.5 - alpha, alpha, radius: 0.0 }
            }
            Theorem::Wang => {
                let b = need(self.b, "b")?;
                let radius = self.radius.unwrap_or(1.0);
                if !(b > 0.0 && b < 1.0) {
                    return bad(format!("b must lie in (0, 1), got {b}"));
                }
                if !(radius > 0.0) || radius >= self.t_max {
                    return bad(format!("radius must lie in (0, T), got {radius}"));
                }
                if b + radius == 1.0 {
                    return bad("the semicircle passes through the pole at 1".into());
                }
                Resolved { a: 0.0, b, alpha: 0.5 - b, radius }
            }
        };
        for z in &self.hypothetical_zeros {
            if !z.is_valid() {
                return bad(format!("invalid hypothetical zero {z:?}"));
            }
        }
        Ok(r)
    }
}

/// Decomposition of both sides of an identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermBreakdown {
    /// Truncated vertical-line integral, before any `a/π` normalisation.
    pub line_integral: f64,
    pub closed_form: f64,
    pub pole_term: f64,
    pub zero_sum: f64,
    /// Real-axis integral, or the semicircle integral for `WANG`; 0 when absent.
    pub sigma_integral: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Tabulated ordinates `≤ T` consulted, plus hypothetical zeros.
    pub zeros_used: usize,
    /// Expected `residual(∞) − residual(T)` from the mean growth of `ln ζ`
    /// beyond `T` (including the expected tail of any tabulated zero sum).
    /// Reported only, never folded into `residual`.
    pub tail_estimate: f64,
    /// `|tail_estimate|` plus a bound on the oscillating part of the tail.
    pub tail_bound: f64,
    /// Alternative right-hand side, where the identity has a second form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_rhs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub spec: CaseSpec,
    pub breakdown: TermBreakdown,
    /// Sum of the quadrature error estimates of every integral involved.
    pub err_estimate: f64,
    pub wall_time: Duration,
}

impl ResidualReport {
    /// `residual + tail_estimate`: what remains once the expected tail is
    /// restored.
    pub fn tail_corrected_residual(&self) -> f64 {
        self.breakdown.residual + self.breakdown.tail_estimate
    }
}

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid case: {0}")]
    InvalidSpec(String),
    #[error("a logarithm argument or a pole of the kernel lies on the integration segment")]
    DegenerateArgument,
    #[error("evaluator for {expected} called with a {got} case")]
    WrongTheorem { expected: &'static str, got: Theorem },
}
