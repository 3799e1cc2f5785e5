use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use super::source::{LogSource, ZetaSource};
use super::terms::{
    eq8_pair_terms, wang_sum, zero_term_modulus, zero_term_p_integral, zero_term_threehalves, Part,
};
use super::{CaseSpec, IdentityError, ResidualReport, Resolved, TermBreakdown, Theorem};
use crate::quadrature::{Integrator, QuadratureResult, Side, SingularityHint, SingularityKind};
use crate::zeros::{HypotheticalZero, ZeroCatalog, ZeroOrdinate};
use crate::zeta::{self, LogTarget, ZetaError};
use crate::Complex;

/// Which part of `ln f` a line integrand uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LinePart {
    Modulus,
    Argument,
}

/// Kernel `g̃(t)` on the vertical line.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    /// `1/(a² + t²)`
    Cauchy(f64),
    /// `(a² + t²)^{−3/2}`
    ThreeHalves(f64),
    /// `1/t²`
    InverseSquare,
}

impl Kernel {
    fn at(&self, t: f64) -> f64 {
        match *self {
            Kernel::Cauchy(a) => 1.0 / (a * a + t * t),
            Kernel::ThreeHalves(a) => (a * a + t * t).powf(-1.5),
            Kernel::InverseSquare => 1.0 / (t * t),
        }
    }

    fn scale(&self) -> f64 {
        match *self {
            Kernel::Cauchy(a) | Kernel::ThreeHalves(a) => a,
            Kernel::InverseSquare => 1.0,
        }
    }
}

/// A vertical-line integral `∫ part(ln f(b+it))·g̃(t) dt`.
#[derive(Debug, Clone, Copy)]
struct Line {
    target: LogTarget,
    b: f64,
    part: LinePart,
    kernel: Kernel,
}

/// Mean of `ln|ζ(b+it)|` for large `t`: `(1/2 − b)·ln(t/2π)` left of the
/// critical line, 0 on and right of it.
fn zeta_mean(b: f64, t: f64) -> f64 {
    if b < 0.5 && t > TAU {
        (0.5 - b) * (t / TAU).ln()
    } else {
        0.0
    }
}

impl Line {
    /// Mean growth of the integrand's `ln f` part beyond the truncation height.
    fn mean(&self, t: f64) -> f64 {
        let elementary = self.target == LogTarget::ZetaTimesZMinus1;
        match self.part {
            LinePart::Modulus => {
                zeta_mean(self.b, t) + if elementary { Complex::new(self.b - 1.0, t).norm().ln() } else { 0.0 }
            }
            LinePart::Argument => {
                if elementary {
                    t.atan2(self.b - 1.0)
                } else {
                    0.0
                }
            }
        }
    }

    fn value(&self, source: &dyn LogSource, t: f64) -> Result<f64, ZetaError> {
        let v = match self.part {
            LinePart::Modulus => source.ln_abs(self.target, self.b, t)?,
            LinePart::Argument => source.log(self.target, self.b, t)?.im,
        };
        Ok(v * self.kernel.at(t))
    }
}

/// Everything an evaluator needs besides the per-theorem formulas.
struct Ctx<'a> {
    spec: &'a CaseSpec,
    p: Resolved,
    source: &'a dyn LogSource,
    integ: Integrator,
    /// Tabulated ordinates `≤ T` (or as many as the table holds).
    ordinates: &'a [ZeroOrdinate],
    hypo: &'a [HypotheticalZero],
    err: f64,
}

/// Captures the first evaluation error inside a quadrature integrand.
struct Trap(RefCell<Option<ZetaError>>);

impl Trap {
    fn new() -> Self {
        Trap(RefCell::new(None))
    }

    fn wrap(&self, r: Result<f64, ZetaError>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn check<T>(self, r: Result<T, crate::QuadratureError>) -> Result<T, IdentityError> {
        if let Some(e) = self.0.into_inner() {
            return Err(e.into());
        }
        Ok(r?)
    }
}

impl<'a> Ctx<'a> {
    fn ordinate_values(&self) -> Vec<f64> {
        self.ordinates.iter().map(|z| z.t).collect()
    }

    /// Panel splits: tabulated ordinates, hypothetical-zero heights, and a
    /// geometric ladder resolving the kernel's width `scale` near `t = 0`.
    fn splits(&self, scale: f64, lo: f64, hi: f64) -> Vec<f64> {
        let mut v = self.ordinate_values();
        v.extend(self.hypo.iter().map(|z| z.t.abs()));
        let mut s = scale / 4.0;
        while s < hi.min(16.0) {
            v.push(s);
            s *= 2.0;
        }
        v.retain(|&x| x > lo && x < hi);
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    fn add(&mut self, r: QuadratureResult) -> f64 {
        self.err += r.err_estimate;
        r.value
    }

    /// `2∫₀^T` (full line) or `∫₀^T` (half line) of the line integrand.
    fn line_integral(&mut self, line: &Line, full: bool) -> Result<f64, IdentityError> {
        let t_max = self.spec.t_max;
        let splits = self.splits(line.kernel.scale(), 0.0, t_max);
        let on_critical = line.b == 0.5 && line.part == LinePart::Modulus;
        let singular: Vec<f64> = if on_critical {
            self.ordinates.iter().map(|z| z.t).filter(|&t| t < t_max).collect()
        } else {
            Vec::new()
        };
        let trap = Trap::new();
        let f = |t: f64| trap.wrap(line.value(self.source, t));
        let r = if full {
            self.integ.integrate_symmetric_line_singular(f, t_max, &singular, &splits)
        } else {
            let hints: Vec<SingularityHint> = singular
                .iter()
                .map(|&t| SingularityHint::new(t, SingularityKind::Logarithmic, Side::Interior))
                .collect();
            self.integ.integrate_finite(f, 0.0, t_max, &splits, &hints)
        };
        let r = trap.check(r)?;
        Ok(self.add(r))
    }

    /// `∫_T^∞ mean(t)·g̃(t) dt` (doubled for full-line integrals).
    fn line_tail(&self, line: &Line, full: bool) -> Result<f64, IdentityError> {
        let r = self
            .integ
            .integrate_semi_infinite(|t| line.mean(t) * line.kernel.at(t), self.spec.t_max, 2.0)?;
        Ok(if full { 2.0 } else { 1.0 } * r.value)
    }

    /// Oscillating-tail allowance: the running integral of `ln ζ − mean`
    /// beyond `T` is taken to stay below `π·ln T` in magnitude.
    fn line_fluctuation(&self, line: &Line, full: bool) -> f64 {
        let t = self.spec.t_max;
        let k = line.kernel.at(t);
        (if full { 2.0 } else { 1.0 }) * 2.0 * PI * t.ln().max(1.0) * k
    }

    /// `∫_T^∞ (1/2π)·ln(t/2π)·term(t) dt`: the expected tail of a sum over
    /// critical-line zeros with per-ordinate term `term`.
    fn zero_density_tail(&self, term: impl Fn(f64) -> f64) -> Result<f64, IdentityError> {
        let density = |t: f64| if t > TAU { (t / TAU).ln() / TAU } else { 0.0 };
        let r = self.integ.integrate_semi_infinite(|t| density(t) * term(t), self.spec.t_max, 2.0)?;
        Ok(r.value)
    }

    fn ratio(&self, sigma: f64) -> Result<f64, ZetaError> {
        self.source.ln_real_over_sigma_minus_1(sigma)
    }
}

fn pair_weight(z: &HypotheticalZero) -> f64 {
    if z.t == 0.0 {
        1.0
    } else {
        2.0
    }
}

/// Identities of the form `(a/π)∫ ln|f(b+it)| g̃ = closed + pole + Σ`.
fn modulus_family(ctx: &mut Ctx<'_>) -> Result<TermBreakdown, IdentityError> {
    let Resolved { a, b, alpha, .. } = ctx.p;
    let theorem = ctx.spec.theorem;
    let params = ctx.spec.zeta_params;
    let target = match theorem {
        Theorem::Thm3 | Theorem::Thm4 | Theorem::Eq8 => LogTarget::ZetaTimesZMinus1,
        _ => LogTarget::Zeta,
    };
    let line = Line { target, b, part: LinePart::Modulus, kernel: Kernel::Cauchy(a) };
    let l = ctx.line_integral(&line, true)?;

    let s = Complex::new(a + b, 0.0);
    let (closed_form, pole_term) = match theorem {
        Theorem::Thm4 => (0.0, 0.0),
        Theorem::BGt1 => (zeta::zeta(s, &params)?.re.ln(), 0.0),
        Theorem::Thm3 | Theorem::Eq8 => (zeta::zeta_times_s_minus_1(s, &params)?.norm().ln(), 0.0),
        _ => (
            zeta::zeta(s, &params)?.norm().ln(),
            ((a + b - 1.0) / (a - b + 1.0)).abs().ln(),
        ),
    };

    let catalog_in_sum = b < 0.5;
    let mut zero_sum = 0.0;
    let mut alt_sum = 0.0;
    if catalog_in_sum {
        for z in ctx.ordinates {
            zero_sum += 2.0 * zero_term_modulus(a, b, &HypotheticalZero::on_critical_line(z.t));
            if theorem == Theorem::Eq8 {
                alt_sum += eq8_pair_terms(alpha, z.t).1;
            }
        }
    }
    for z in ctx.hypo.iter().filter(|z| z.sigma > b) {
        let term = pair_weight(z) * zero_term_modulus(a, b, z);
        zero_sum += term;
        if theorem == Theorem::Eq8 {
            let rho = Complex::new(z.sigma, z.t);
            alt_sum += pair_weight(z)
                * z.multiplicity as f64
                * (rho.norm() / (rho - (1.0 - 2.0 * alpha)).norm()).ln();
        }
    }

    // THM4 compares the raw integral with (π/a)·Σ; the others normalise by a/π.
    let norm = if theorem == Theorem::Thm4 { 1.0 } else { a / PI };
    let lhs = norm * l;
    let rhs = if theorem == Theorem::Thm4 { PI / a * zero_sum } else { closed_form + pole_term + zero_sum };

    let mut tail_estimate = norm * ctx.line_tail(&line, true)?;
    let mut fluct = norm * ctx.line_fluctuation(&line, true);
    if catalog_in_sum {
        let term = |t: f64| 2.0 * zero_term_modulus(a, b, &HypotheticalZero::on_critical_line(t));
        tail_estimate -= ctx.zero_density_tail(term)?;
        fluct += ctx.spec.t_max.ln() * term(ctx.spec.t_max);
    }

    Ok(TermBreakdown {
        line_integral: l,
        closed_form,
        pole_term,
        zero_sum,
        sigma_integral: 0.0,
        lhs,
        rhs,
        residual: lhs - rhs,
        zeros_used: 0,
        tail_estimate,
        tail_bound: tail_estimate.abs() + fluct,
        alt_rhs: (theorem == Theorem::Eq8).then_some(closed_form + alt_sum),
    })
}

/// Argument identity over the quarter plane, Cauchy kernel.
fn thm5(ctx: &mut Ctx<'_>) -> Result<TermBreakdown, IdentityError> {
    let Resolved { a, b, alpha, .. } = ctx.p;
    let line = Line { target: LogTarget::ZetaTimesZMinus1, b, part: LinePart::Argument, kernel: Kernel::Cauchy(a) };
    let arg_integral = ctx.line_integral(&line, false)?;

    // ln(ζ(σ)(σ−1))/((1−σ)(σ−2α)) = −ratio(σ)/(σ−2α), regular at σ = 1.
    let trap = Trap::new();
    let f = |s: f64| trap.wrap(ctx.ratio(s).map(|r| -r / (s - 2.0 * alpha)));
    let knee = b.max(1.0) + 1.0;
    let near = ctx.integ.integrate_finite(f, b, knee, &[1.0], &[]);
    let far = ctx.integ.integrate_semi_infinite(f, knee, 2.0);
    let (near, far) = trap.check(near.and_then(|n| Ok((n, far?))))?;
    let sigma_integral = ctx.add(near) + ctx.add(far);

    let mut zero_sum = 0.0;
    for z in ctx.hypo.iter().filter(|z| z.sigma > b) {
        let zz = HypotheticalZero { t: z.t.abs(), ..*z };
        zero_sum += TAU * zero_term_p_integral(a, b, &zz, Part::ImagPart, &ctx.integ)?;
    }
    let lhs = arg_integral + sigma_integral;
    let tail_estimate = ctx.line_tail(&line, false)?;
    Ok(TermBreakdown {
        line_integral: arg_integral,
        closed_form: 0.0,
        pole_term: 0.0,
        zero_sum,
        sigma_integral,
        lhs,
        rhs: zero_sum,
        residual: lhs - zero_sum,
        zeros_used: 0,
        tail_estimate,
        tail_bound: tail_estimate.abs() + ctx.line_fluctuation(&line, false),
        alt_rhs: None,
    })
}

/// Modulus identity with the 3/2-power kernel, contour indented along `[1, ∞)`.
fn thm6(ctx: &mut Ctx<'_>) -> Result<TermBreakdown, IdentityError> {
    let Resolved { a, b, alpha, .. } = ctx.p;
    let line = Line {
        target: LogTarget::ZetaTimesZMinus1,
        b,
        part: LinePart::Modulus,
        kernel: Kernel::ThreeHalves(a),
    };
    let l = ctx.line_integral(&line, false)?;

    // ln(ζ(σ)(σ−1))/((σ−1)(σ−2α))^{3/2} = ratio(σ)/(√(σ−1)·(σ−2α)^{3/2}).
    // On [1, 2] the inverse square root is removed by σ = 1 + u², with
    // σ − 2α formed as (1 − 2α) + u² so that nothing is lost near σ = 1.
    let trap = Trap::new();
    let gap = 1.0 - 2.0 * alpha;
    let g = |u: f64| trap.wrap(ctx.ratio(1.0 + u * u).map(|r| 2.0 * r / (gap + u * u).powf(1.5)));
    let f = |s: f64| trap.wrap(ctx.ratio(s).map(|r| r / ((s - 1.0).sqrt() * (s - 2.0 * alpha).powf(1.5))));
    let near = ctx.integ.integrate_finite(g, 0.0, 1.0, &[], &[]);
    let far = ctx.integ.integrate_semi_infinite(f, 2.0, 3.0);
    let (near, far) = trap.check(near.and_then(|n| Ok((n, far?))))?;
    let sigma_integral = ctx.add(near) + ctx.add(far);

    let mut zero_sum = 0.0;
    for z in ctx.hypo.iter().filter(|z| z.sigma > b) {
        let zz = HypotheticalZero { t: z.t.abs(), ..*z };
        zero_sum += TAU * zero_term_threehalves(alpha, &zz, Part::RealPart, &ctx.integ)?;
    }
    let rhs = -sigma_integral + zero_sum;
    let tail_estimate = ctx.line_tail(&line, false)?;
    Ok(TermBreakdown {
        line_integral: l,
        closed_form: 0.0,
        pole_term: 0.0,
        zero_sum,
        sigma_integral,
        lhs: l,
        rhs,
        residual: l - rhs,
        zeros_used: 0,
        tail_estimate,
        tail_bound: tail_estimate.abs() + ctx.line_fluctuation(&line, false),
        alt_rhs: None,
    })
}

/// Argument identity with the 3/2-power kernel; the real-axis part is finite.
fn thm7(ctx: &mut Ctx<'_>) -> Result<TermBreakdown, IdentityError> {
    let Resolved { a, b, alpha, .. } = ctx.p;
    let line = Line {
        target: LogTarget::ZetaTimesZMinus1,
        b,
        part: LinePart::Argument,
        kernel: Kernel::ThreeHalves(a),
    };
    let arg_integral = ctx.line_integral(&line, false)?;

    // ln(ζ(σ)(σ−1))/((1−σ)(σ−2α))^{3/2} = −ratio(σ)/(√(1−σ)·(σ−2α)^{3/2}).
    // σ = 1 − u² removes the inverse square root at σ = 1; σ − 2α is formed
    // as (1 − 2α) − u², which stays accurate as α → 1/2.
    let trap = Trap::new();
    let gap = 1.0 - 2.0 * alpha;
    let g = |u: f64| trap.wrap(ctx.ratio(1.0 - u * u).map(|r| -2.0 * r / (gap - u * u).powf(1.5)));
    let r = ctx.integ.integrate_finite(g, 0.0, (1.0 - b).sqrt(), &[], &[]);
    let r = trap.check(r)?;
    let sigma_integral = ctx.add(r);

    let mut zero_sum = 0.0;
    for z in ctx.hypo.iter().filter(|z| z.sigma > b) {
        let zz = HypotheticalZero { t: z.t.abs(), ..*z };
        zero_sum += TAU * zero_term_threehalves(alpha, &zz, Part::ImagPart, &ctx.integ)?;
    }
    let lhs = arg_integral + sigma_integral;
    let tail_estimate = ctx.line_tail(&line, false)?;
    Ok(TermBreakdown {
        line_integral: arg_integral,
        closed_form: 0.0,
        pole_term: 0.0,
        zero_sum,
        sigma_integral,
        lhs,
        rhs: zero_sum,
        residual: lhs - zero_sum,
        zeros_used: 0,
        tail_estimate,
        tail_bound: tail_estimate.abs() + ctx.line_fluctuation(&line, false),
        alt_rhs: None,
    })
}

/// Kernel `−1/(z−b)²` on the half-plane right of `b` with the point `b`
/// excluded by a semicircle of radius `R`. Imaginary parts throughout.
fn wang(ctx: &mut Ctx<'_>) -> Result<TermBreakdown, IdentityError> {
    let Resolved { b, radius, .. } = ctx.p;
    let t_max = ctx.spec.t_max;
    let line = Line { target: LogTarget::Zeta, b, part: LinePart::Modulus, kernel: Kernel::InverseSquare };

    let splits = ctx.splits(radius, radius, t_max);
    let hints: Vec<SingularityHint> = if b == 0.5 {
        splits
            .iter()
            .filter(|&&t| ctx.ordinates.iter().any(|z| z.t == t))
            .map(|&t| SingularityHint::new(t, SingularityKind::Logarithmic, Side::Interior))
            .collect()
    } else {
        Vec::new()
    };
    let trap = Trap::new();
    let f = |t: f64| trap.wrap(line.value(ctx.source, t));
    let r = ctx.integ.integrate_finite(f, radius, t_max, &splits, &hints);
    let r = trap.check(r)?;
    let line_integral = -2.0 * ctx.add(r);

    let trap = Trap::new();
    let arc = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let v = ctx.source.log(LogTarget::Zeta, b + radius * c, radius * s).map(|l| {
            // Re(F·e^{−iθ})
            l.re * c + l.im * s
        });
        trap.wrap(v)
    };
    let r = ctx.integ.integrate_finite(arc, 0.0, FRAC_PI_2, &[], &[]);
    let r = trap.check(r)?;
    let arc_integral = 2.0 / radius * ctx.add(r);

    let catalog_in_sum = b < 0.5;
    let counted: Vec<ZeroOrdinate> = if catalog_in_sum {
        ctx.ordinates.iter().copied().filter(|z| z.t > radius).collect()
    } else {
        Vec::new()
    };
    let hypo: Vec<HypotheticalZero> = ctx.hypo.iter().copied().filter(|z| z.t.abs() > radius).collect();
    let pole_term = wang_sum(b, &[], &[], radius).im;
    let zero_sum = wang_sum(b, &counted, &hypo, radius).im - pole_term;

    let lhs = line_integral + arc_integral;
    let rhs = zero_sum + pole_term;
    let mut tail_estimate = -2.0 * ctx.line_tail(&line, false)?;
    let mut fluct = 2.0 * ctx.line_fluctuation(&line, false);
    if catalog_in_sum {
        let d = 0.5 - b;
        let term = |t: f64| -2.0 * TAU * d / (d * d + t * t);
        tail_estimate -= ctx.zero_density_tail(term)?;
        fluct += t_max.ln() * term(t_max).abs();
    }
    Ok(TermBreakdown {
        line_integral,
        closed_form: 0.0,
        pole_term,
        zero_sum,
        sigma_integral: arc_integral,
        lhs,
        rhs,
        residual: lhs - rhs,
        zeros_used: 0,
        tail_estimate,
        tail_bound: tail_estimate.abs() + fluct,
        alt_rhs: None,
    })
}

/// Evaluates any case against ζ with the given zero table.
pub fn evaluate(spec: &CaseSpec, catalog: &ZeroCatalog) -> Result<ResidualReport, IdentityError> {
    let ordinates = catalog.values();
    let source = ZetaSource::new(spec.zeta_params, ordinates);
    evaluate_with_source(spec, catalog, &source)
}

/// Zero ordinates needed by a case: the full set `≤ T` when tabulated zeros
/// enter a sum, otherwise whatever part of it the table holds (used only for
/// panel placement).
fn ordinates_for<'c>(
    spec: &CaseSpec,
    catalog: &'c ZeroCatalog,
) -> Result<&'c [ZeroOrdinate], IdentityError> {
    if spec.needs_zero_table() || catalog.t_max() >= spec.t_max {
        Ok(catalog.zeros_up_to(spec.t_max)?)
    } else {
        Ok(catalog.zeros_up_to(catalog.t_max())?)
    }
}

/// Evaluates a case against an arbitrary source of `ln f`.
pub fn evaluate_with_source(
    spec: &CaseSpec,
    catalog: &ZeroCatalog,
    source: &dyn LogSource,
) -> Result<ResidualReport, IdentityError> {
    let start = Instant::now();
    let p = spec.resolve()?;
    let ordinates = ordinates_for(spec, catalog)?;
    let mut ctx = Ctx {
        spec,
        p,
        source,
        integ: Integrator::new(spec.tol).with_budget(spec.panel_budget),
        ordinates,
        hypo: &spec.hypothetical_zeros,
        err: 0.0,
    };
    let mut breakdown = match spec.theorem {
        Theorem::Eq2 | Theorem::Thm3 | Theorem::Thm4 | Theorem::Eq7 | Theorem::Eq8 | Theorem::BGt1 => {
            modulus_family(&mut ctx)?
        }
        Theorem::Thm5 => thm5(&mut ctx)?,
        Theorem::Thm6 => thm6(&mut ctx)?,
        Theorem::Thm7 => thm7(&mut ctx)?,
        Theorem::Wang => wang(&mut ctx)?,
    };
    breakdown.zeros_used = ordinates.len() + spec.hypothetical_zeros.len();
    Ok(ResidualReport {
        spec: spec.clone(),
        breakdown,
        err_estimate: ctx.err,
        wall_time: start.elapsed(),
    })
}

macro_rules! evaluator {
    ($(#[$doc:meta])* $name:ident, $($theorem:pat_param)|+, $label:literal) => {
        $(#[$doc])*
        pub fn $name(spec: &CaseSpec, catalog: &ZeroCatalog) -> Result<ResidualReport, IdentityError> {
            match spec.theorem {
                $($theorem)|+ => evaluate(spec, catalog),
                got => Err(IdentityError::WrongTheorem { expected: $label, got }),
            }
        }
    };
}

evaluator!(
    /// Modulus identity on `Re z = b`; `b < 1/2` brings in the tabulated zeros.
    eval_eq2, Theorem::Eq2, "EQ2"
);
evaluator!(
    /// Unconditional modulus identity for `b > 1`.
    eval_b_gt_1, Theorem::BGt1, "B_GT_1"
);
evaluator!(
    /// Modulus identity for `ζ(z)(z−1)`.
    eval_thm3, Theorem::Thm3, "THM3"
);
evaluator!(
    /// The `a + b = 1` modulus identity; the residual is the integral itself.
    eval_thm4, Theorem::Thm4, "THM4"
);
evaluator!(
    /// Argument identity with the real-axis integral to ∞.
    eval_thm5, Theorem::Thm5, "THM5"
);
evaluator!(
    /// Modulus identity with the 3/2-power kernel.
    eval_thm6, Theorem::Thm6, "THM6"
);
evaluator!(
    /// Argument identity with the 3/2-power kernel.
    eval_thm7, Theorem::Thm7, "THM7"
);
evaluator!(
    /// Modulus identities left of the critical line.
    eval_eq7_eq8, Theorem::Eq7 | Theorem::Eq8, "EQ7/EQ8"
);
evaluator!(
    /// Semicircle identity with kernel `−1/(z−b)²`.
    eval_wang, Theorem::Wang, "WANG"
);

/// The case's vertical-line integrand at height `t` (kernel included).
pub fn integrand_at(spec: &CaseSpec, source: &dyn LogSource, t: f64) -> Result<f64, IdentityError> {
    let p = spec.resolve()?;
    let (target, part, kernel) = match spec.theorem {
        Theorem::Eq2 | Theorem::Eq7 | Theorem::BGt1 => (LogTarget::Zeta, LinePart::Modulus, Kernel::Cauchy(p.a)),
        Theorem::Thm3 | Theorem::Thm4 | Theorem::Eq8 => {
            (LogTarget::ZetaTimesZMinus1, LinePart::Modulus, Kernel::Cauchy(p.a))
        }
        Theorem::Thm5 => (LogTarget::ZetaTimesZMinus1, LinePart::Argument, Kernel::Cauchy(p.a)),
        Theorem::Thm6 => (LogTarget::ZetaTimesZMinus1, LinePart::Modulus, Kernel::ThreeHalves(p.a)),
        Theorem::Thm7 => (LogTarget::ZetaTimesZMinus1, LinePart::Argument, Kernel::ThreeHalves(p.a)),
        Theorem::Wang => (LogTarget::Zeta, LinePart::Modulus, Kernel::InverseSquare),
    };
    let line = Line { target, b: p.b, part, kernel };
    Ok(line.value(source, t)?)
}
