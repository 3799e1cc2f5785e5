//! Globally adaptive quadrature on finite and semi-infinite intervals.
//!
//! Panels are seeded at every split point and singularity hint, then the panel
//! with the largest error estimate is bisected until the summed estimate meets
//! the absolute tolerance or the panel budget runs out. Smooth panels use the
//! Gauss–Kronrod 7/15 pair; panels touching a logarithmic singularity use the
//! tanh-sinh rule; inverse-square-root endpoints are removed by `x = c ± u²`.

mod gauss_kronrod;
mod tanh_sinh;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default panel budget.
pub const DEFAULT_PANEL_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub n_evals: usize,
    pub n_panels: usize,
    pub converged: bool,
}

impl QuadratureResult {
    fn scaled(mut self, k: f64) -> Self {
        self.value *= k;
        self.err_estimate *= k.abs();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityKind {
    Logarithmic,
    InverseSqrt,
    Removable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityHint {
    pub location: f64,
    pub kind: SingularityKind,
    pub side: Side,
}

impl SingularityHint {
    pub fn new(location: f64, kind: SingularityKind, side: Side) -> Self {
        Self { location, kind, side }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("panel budget exhausted: best estimate {} ± {:e}", best.value, best.err_estimate)]
    MaxSubdivisions { best: QuadratureResult },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("singularity hint at {0} lies outside the integration interval")]
    HintOutOfRange(f64),
    #[error("decay exponent {0} is below 2")]
    SlowDecay(f64),
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
}

impl QuadratureError {
    /// Accepts an unconverged estimate, passing every other error through.
    pub fn best_effort(r: Result<QuadratureResult, Self>) -> Result<QuadratureResult, Self> {
        match r {
            Err(QuadratureError::MaxSubdivisions { best }) => Ok(best),
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Map {
    Identity,
    /// `x = origin + sign·u²`, Jacobian `2u`.
    Square { origin: f64, sign: f64 },
}

impl Map {
    fn x(&self, u: f64) -> f64 {
        match *self {
            Map::Identity => u,
            Map::Square { origin, sign } => origin + sign * u * u,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Kronrod,
    TanhSinh,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    map: Map,
    rule: Rule,
    value: f64,
    err: f64,
    /// Panels too narrow to bisect are frozen.
    frozen: bool,
}

impl Panel {
    /// Position in the original variable, for a fixed summation order.
    fn position(&self) -> f64 {
        self.map.x(self.lo).min(self.map.x(self.hi))
    }
}

struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |p: &Panel| if p.frozen { -1.0 } else { p.err };
        key(&self.0)
            .total_cmp(&key(&other.0))
            .then_with(|| other.0.position().total_cmp(&self.0.position()))
    }
}

/// Adaptive integrator with an absolute tolerance and a panel budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub tol: f64,
    pub panel_budget: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            panel_budget: DEFAULT_PANEL_BUDGET,
        }
    }
}

fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

impl Integrator {
    pub fn new(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn with_budget(mut self, panel_budget: usize) -> Self {
        self.panel_budget = panel_budget.max(1);
        self
    }

    fn check_tol(&self) -> Result<(), QuadratureError> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(())
        } else {
            Err(QuadratureError::InvalidTolerance(self.tol))
        }
    }

    /// `∫_lo^hi f`, with panels split at `split_points` and at every hint.
    pub fn integrate_finite<F: Fn(f64) -> f64>(
        &self,
        f: F,
        lo: f64,
        hi: f64,
        split_points: &[f64],
        hints: &[SingularityHint],
    ) -> Result<QuadratureResult, QuadratureError> {
        self.check_tol()?;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(QuadratureError::InvalidInterval { lo, hi });
        }
        for h in hints {
            if !(h.location >= lo && h.location <= hi) {
                return Err(QuadratureError::HintOutOfRange(h.location));
            }
        }

        let mut cuts: Vec<f64> = split_points
            .iter()
            .chain(hints.iter().map(|h| &h.location))
            .copied()
            .filter(|&x| x > lo && x < hi)
            .collect();
        cuts.push(lo);
        cuts.push(hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let singular_at = |x: f64, from_right: bool, kind: SingularityKind| {
            hints.iter().any(|h| {
                h.kind == kind
                    && h.location == x
                    && match h.side {
                        Side::Interior => true,
                        Side::Left => from_right,
                        Side::Right => !from_right,
                    }
            })
        };

        let mut seeds = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            // `from_right`: the panel lies to the right of the point.
            let sqrt_left = singular_at(a, true, SingularityKind::InverseSqrt);
            let sqrt_right = singular_at(b, false, SingularityKind::InverseSqrt);
            let log_end = singular_at(a, true, SingularityKind::Logarithmic)
                || singular_at(b, false, SingularityKind::Logarithmic);
            let rule = if log_end { Rule::TanhSinh } else { Rule::Kronrod };
            match (sqrt_left, sqrt_right) {
                (true, true) => {
                    let m = 0.5 * (a + b);
                    let r = (m - a).sqrt();
                    seeds.push((0.0, r, Map::Square { origin: a, sign: 1.0 }, rule));
                    seeds.push((0.0, (b - m).sqrt(), Map::Square { origin: b, sign: -1.0 }, rule));
                }
                (true, false) => {
                    seeds.push((0.0, (b - a).sqrt(), Map::Square { origin: a, sign: 1.0 }, rule))
                }
                (false, true) => {
                    seeds.push((0.0, (b - a).sqrt(), Map::Square { origin: b, sign: -1.0 }, rule))
                }
                (false, false) => seeds.push((a, b, Map::Identity, rule)),
            }
        }

        let mut n_evals = 0usize;
        let n_seeds = seeds.len().max(1);
        let panel_target = self.tol / n_seeds as f64;
        let mut eval_panel = |lo: f64, hi: f64, map: Map, rule: Rule| -> Result<Panel, QuadratureError> {
            let g = |u: f64| match map {
                Map::Identity => f(u),
                Map::Square { origin, sign } => 2.0 * u * f(origin + sign * u * u),
            };
            let (value, err) = match rule {
                Rule::Kronrod => {
                    n_evals += 15;
                    gauss_kronrod::gk15(&g, lo, hi).map_err(|u| QuadratureError::NonFinite(map.x(u)))?
                }
                Rule::TanhSinh => {
                    let (v, e, n) = tanh_sinh::tanh_sinh(&g, lo, hi, panel_target * 0.1)
                        .map_err(|u| QuadratureError::NonFinite(map.x(u)))?;
                    n_evals += n;
                    (v, e)
                }
            };
            let width = (hi - lo).abs();
            let frozen = width <= 1e-13 * (lo.abs().max(hi.abs()).max(1e-300));
            Ok(Panel { lo, hi, map, rule, value, err, frozen })
        };

        let mut heap = BinaryHeap::with_capacity(seeds.len() * 2);
        for (a, b, map, rule) in seeds {
            heap.push(ByError(eval_panel(a, b, map, rule)?));
        }

        let total_err = |heap: &BinaryHeap<ByError>| kahan_sum(heap.iter().map(|p| p.0.err));
        let mut err = total_err(&heap);
        while err > self.tol && heap.len() < self.panel_budget {
            let worst = match heap.peek() {
                Some(p) if !p.0.frozen => heap.pop().unwrap().0,
                _ => break,
            };
            let mid = 0.5 * (worst.lo + worst.hi);
            let left = eval_panel(worst.lo, mid, worst.map, worst.rule)?;
            let right = eval_panel(mid, worst.hi, worst.map, worst.rule)?;
            err += left.err + right.err - worst.err;
            heap.push(ByError(left));
            heap.push(ByError(right));
            // Re-sum periodically to keep the running total from drifting.
            if heap.len() % 64 == 0 {
                err = total_err(&heap);
            }
        }

        let mut panels: Vec<Panel> = heap.into_iter().map(|p| p.0).collect();
        panels.sort_by(|a, b| a.position().total_cmp(&b.position()));
        let value = kahan_sum(panels.iter().map(|p| p.value));
        let err_estimate = kahan_sum(panels.iter().map(|p| p.err));
        let result = QuadratureResult {
            value,
            err_estimate,
            n_evals,
            n_panels: panels.len(),
            converged: err_estimate <= self.tol,
        };
        if result.converged {
            Ok(result)
        } else {
            Err(QuadratureError::MaxSubdivisions { best: result })
        }
    }

    /// `∫_lo^∞ f` through `x = lo − 1 + 1/u`, `u ∈ (0, 1]`.
    ///
    /// `f` must decay like `x^{−p}·ln x` with `p = decay_exponent ≥ 2`; the
    /// mapped integrand then has at most a logarithmic singularity at `u = 0`.
    pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
        &self,
        f: F,
        lo: f64,
        decay_exponent: f64,
    ) -> Result<QuadratureResult, QuadratureError> {
        if !(decay_exponent >= 2.0) {
            return Err(QuadratureError::SlowDecay(decay_exponent));
        }
        if !lo.is_finite() {
            return Err(QuadratureError::InvalidInterval { lo, hi: f64::INFINITY });
        }
        let g = |u: f64| {
            let x = lo - 1.0 + 1.0 / u;
            if x.is_infinite() {
                0.0
            } else {
                f(x) / (u * u)
            }
        };
        let hint = SingularityHint::new(0.0, SingularityKind::Logarithmic, Side::Left);
        self.integrate_finite(g, 0.0, 1.0, &[0.5], &[hint])
    }

    /// `2·∫_0^T f_even`, panels split at every ordinate below `t_max`.
    pub fn integrate_symmetric_line<F: Fn(f64) -> f64>(
        &self,
        f_even: F,
        t_max: f64,
        zero_ordinates: &[f64],
    ) -> Result<QuadratureResult, QuadratureError> {
        self.symmetric_line(f_even, t_max, zero_ordinates, &[], false)
    }

    /// As [`Integrator::integrate_symmetric_line`], for integrands with
    /// logarithmic singularities at the `singular` ordinates and extra
    /// smooth split points `splits`.
    pub fn integrate_symmetric_line_singular<F: Fn(f64) -> f64>(
        &self,
        f_even: F,
        t_max: f64,
        singular: &[f64],
        splits: &[f64],
    ) -> Result<QuadratureResult, QuadratureError> {
        self.symmetric_line(f_even, t_max, singular, splits, true)
    }

    fn symmetric_line<F: Fn(f64) -> f64>(
        &self,
        f_even: F,
        t_max: f64,
        ordinates: &[f64],
        splits: &[f64],
        singular: bool,
    ) -> Result<QuadratureResult, QuadratureError> {
        let below: Vec<f64> = ordinates.iter().copied().filter(|&t| t > 0.0 && t < t_max).collect();
        let mut cuts = below.clone();
        cuts.extend(splits.iter().copied().filter(|&t| t > 0.0 && t < t_max));
        let hints: Vec<SingularityHint> = if singular {
            below
                .iter()
                .map(|&t| SingularityHint::new(t, SingularityKind::Logarithmic, Side::Interior))
                .collect()
        } else {
            Vec::new()
        };
        let half = Integrator { tol: 0.5 * self.tol, ..*self };
        match half.integrate_finite(f_even, 0.0, t_max, &cuts, &hints) {
            Ok(r) => Ok(r.scaled(2.0)),
            Err(QuadratureError::MaxSubdivisions { best }) => {
                Err(QuadratureError::MaxSubdivisions { best: best.scaled(2.0) })
            }
            Err(e) => Err(e),
        }
    }
}

/// `∫_lo^hi f` with the default panel budget.
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    split_points: &[f64],
    hints: &[SingularityHint],
) -> Result<QuadratureResult, QuadratureError> {
    Integrator::new(tol).integrate_finite(f, lo, hi, split_points, hints)
}

/// `∫_lo^∞ f` with the default panel budget.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    tol: f64,
    decay_exponent: f64,
) -> Result<QuadratureResult, QuadratureError> {
    Integrator::new(tol).integrate_semi_infinite(f, lo, decay_exponent)
}

/// `2·∫_0^T f_even` with the default panel budget.
pub fn integrate_symmetric_line<F: Fn(f64) -> f64>(
    f_even: F,
    t_max: f64,
    tol: f64,
    zero_ordinates: &[f64],
) -> Result<QuadratureResult, QuadratureError> {
    Integrator::new(tol).integrate_symmetric_line(f_even, t_max, zero_ordinates)
}
