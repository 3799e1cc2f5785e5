//! Riemann zeta evaluation by Euler–Maclaurin summation, and logarithms of
//! `ζ(z)` / `ζ(z)(z−1)` whose branch is fixed by horizontal continuation from
//! a right-hand anchor abscissa.

use std::f64::consts::{FRAC_PI_4, LN_2, TAU};

use thiserror::Error;

use crate::Complex;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// First Stieltjes constant γ₁ (`ζ(s) = 1/(s−1) + γ − γ₁(s−1) + …`).
pub const STIELTJES_GAMMA1: f64 = -0.072_815_845_483_676_72;

/// Largest direct-sum length the evaluator will ever use.
pub const MAX_TERMS: usize = 1 << 22;

/// `B_{2k} / (2k)!` for `k = 1..=26`.
const BERNOULLI_OVER_FACTORIAL: [f64; 26] = [
    0.083_333_333_333_333_33,
    -0.001_388_888_888_888_889,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_768e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_7e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_2e-19,
    3.534_707_039_629_467e-21,
    -8.953_517_427_037_546e-23,
    2.267_952_452_337_683e-24,
    -5.744_790_668_872_202e-26,
    1.455_172_475_614_865e-27,
    -3.685_994_940_665_310_3e-29,
    9.336_734_257_095_045e-31,
    -2.365_022_415_700_63e-32,
    5.990_671_762_482_134e-34,
    -1.517_454_884_468_290_3e-35,
    3.843_758_125_454_189e-37,
    -9.736_353_072_646_691e-39,
    2.466_247_044_200_681e-40,
    -6.247_076_741_820_743e-42,
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZetaError {
    #[error("ζ has a pole at s = 1")]
    PoleAtOne,
    #[error("s = {re} + {im}i lies outside the supported half-plane Re(s) > -1")]
    OutOfDomain { re: f64, im: f64 },
    #[error("Euler–Maclaurin remainder bound {bound:e} exceeds the target {target:e}")]
    ParamsInsufficient { bound: f64, target: f64 },
    #[error("invalid zeta parameters: {0}")]
    InvalidParams(&'static str),
    #[error("horizontal continuation at t = {t} passes through a zero of ζ near σ = {sigma}")]
    ZeroOnPath { sigma: f64, t: f64 },
    #[error("non-finite value produced at s = {re} + {im}i")]
    NonFinite { re: f64, im: f64 },
}

/// Controls for the Euler–Maclaurin evaluator.
///
/// `n_terms` is the minimum direct-sum length; the evaluator raises it as far
/// as the remainder bound requires for `target_abs_error`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct ZetaParams {
    pub n_terms: usize,
    pub bernoulli_order: usize,
    pub target_abs_error: f64,
}

impl Default for ZetaParams {
    fn default() -> Self {
        Self {
            n_terms: 20,
            bernoulli_order: 20,
            target_abs_error: 1e-12,
        }
    }
}

impl ZetaParams {
    pub fn validate(&self) -> Result<(), ZetaError> {
        if self.n_terms < 2 {
            return Err(ZetaError::InvalidParams("n_terms must be at least 2"));
        }
        if !(1..=25).contains(&self.bernoulli_order) {
            return Err(ZetaError::InvalidParams("bernoulli_order must lie in 1..=25"));
        }
        if !(self.target_abs_error > 0.0) || !self.target_abs_error.is_finite() {
            return Err(ZetaError::InvalidParams("target_abs_error must be positive"));
        }
        Ok(())
    }
}

/// Rigorous bound on the Euler–Maclaurin remainder after `m` correction terms
/// with direct-sum cutoff `n`.
fn remainder_bound(s: Complex, n: f64, m: usize) -> f64 {
    let sigma = s.re;
    let mut log_prod = 0.0;
    for j in 0..=(2 * m + 1) {
        log_prod += (s + j as f64).norm().ln();
    }
    let c = BERNOULLI_OVER_FACTORIAL[m].abs();
    let denom = sigma + 2.0 * m as f64 + 1.0;
    (log_prod + c.ln() - denom * n.ln()).exp() / denom
}

/// Smallest cutoff `N ≥ n_min` whose remainder bound meets `target` at `s`.
fn required_terms(s: Complex, params: &ZetaParams) -> Result<usize, ZetaError> {
    let m = params.bernoulli_order;
    let denom = s.re + 2.0 * m as f64 + 1.0;
    let mut log_prod = 0.0;
    for j in 0..=(2 * m + 1) {
        log_prod += (s + j as f64).norm().ln();
    }
    let log_need = (log_prod + BERNOULLI_OVER_FACTORIAL[m].abs().ln()
        - denom.ln()
        - params.target_abs_error.ln())
        / denom;
    let n = log_need.exp().ceil().max(params.n_terms as f64);
    if n > MAX_TERMS as f64 {
        let bound = remainder_bound(s, MAX_TERMS as f64, m);
        return Err(ZetaError::ParamsInsufficient {
            bound,
            target: params.target_abs_error,
        });
    }
    Ok(n as usize)
}

/// Evaluator for ζ along a horizontal line `Im s = t`.
///
/// The phases `n^{−it}` are computed once, so repeated evaluation at several
/// abscissae (the branch-tracking path) only costs real exponentials.
#[derive(Debug, Clone)]
pub struct ZetaLine {
    t: f64,
    conj: bool,
    n: usize,
    ln_n: Vec<f64>,
    phase: Vec<Complex>,
    params: ZetaParams,
    sigma_lo: f64,
    sigma_hi: f64,
}

impl ZetaLine {
    /// Prepares evaluation on `σ ∈ [sigma_lo, sigma_hi]` at height `t`.
    pub fn new(t: f64, sigma_lo: f64, sigma_hi: f64, params: &ZetaParams) -> Result<Self, ZetaError> {
        params.validate()?;
        if !(sigma_lo > -1.0) || !t.is_finite() || !sigma_hi.is_finite() {
            return Err(ZetaError::OutOfDomain { re: sigma_lo, im: t });
        }
        let ta = t.abs();
        let n = required_terms(Complex::new(sigma_lo, ta), params)?
            .max(required_terms(Complex::new(sigma_hi, ta), params)?);
        let mut ln_n = Vec::with_capacity(n + 1);
        let mut phase = Vec::with_capacity(n + 1);
        ln_n.push(0.0);
        phase.push(Complex::new(1.0, 0.0));
        for k in 1..=n {
            let l = (k as f64).ln();
            ln_n.push(l);
            let (sin, cos) = (ta * l).sin_cos();
            phase.push(Complex::new(cos, -sin));
        }
        Ok(Self {
            t,
            conj: t < 0.0,
            n,
            ln_n,
            phase,
            params: *params,
            sigma_lo,
            sigma_hi,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Direct-sum cutoff in use.
    pub fn terms(&self) -> usize {
        self.n
    }

    fn check_sigma(&self, sigma: f64) -> Result<(), ZetaError> {
        let slack = 1e-12 * (1.0 + sigma.abs());
        if sigma < self.sigma_lo - slack || sigma > self.sigma_hi + slack {
            return Err(ZetaError::OutOfDomain { re: sigma, im: self.t });
        }
        Ok(())
    }

    /// Returns `(Σ_{n<N} n^{−s}, N^{−s}, correction)` for `s = σ + i|t|`,
    /// where `correction = N^{−s}/2 + Σ_k B_{2k}/(2k)!·(s)_{2k−1}·N^{−s−2k+1}`.
    fn pieces(&self, sigma: f64) -> (Complex, Complex, Complex) {
        let n = self.n;
        // Kahan-compensated direct sum.
        let mut sum = Complex::new(0.0, 0.0);
        let mut comp = Complex::new(0.0, 0.0);
        for k in 1..n {
            let term = self.phase[k] * (-sigma * self.ln_n[k]).exp();
            let y = term - comp;
            let next = sum + y;
            comp = (next - sum) - y;
            sum = next;
        }
        let s = Complex::new(sigma, self.t.abs());
        let nf = n as f64;
        let n_pow = self.phase[n] * (-sigma * self.ln_n[n]).exp();
        let mut corr = n_pow * 0.5;
        // (s)(s+1)…(s+2k−2) · N^{−s−2k+1}
        let mut rising = s / nf * n_pow;
        for k in 1..=self.params.bernoulli_order {
            corr += rising * BERNOULLI_OVER_FACTORIAL[k - 1];
            let j = 2.0 * k as f64;
            rising = rising * (s + (j - 1.0)) * (s + j) / (nf * nf);
        }
        (sum, n_pow, corr)
    }

    fn finish(&self, v: Complex, sigma: f64) -> Result<Complex, ZetaError> {
        let v = if self.conj { v.conj() } else { v };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(ZetaError::NonFinite { re: sigma, im: self.t })
        }
    }

    /// `ζ(σ + it)`.
    pub fn zeta(&self, sigma: f64) -> Result<Complex, ZetaError> {
        self.check_sigma(sigma)?;
        if self.t == 0.0 && sigma == 1.0 {
            return Err(ZetaError::PoleAtOne);
        }
        let (sum, n_pow, corr) = self.pieces(sigma);
        let s = Complex::new(sigma, self.t.abs());
        let tail = n_pow * (self.n as f64) / (s - 1.0);
        self.finish(sum + tail + corr, sigma)
    }

    /// `ζ(s)(s − 1)` at `s = σ + it`, analytic through `s = 1`.
    pub fn zeta_times_s_minus_1(&self, sigma: f64) -> Result<Complex, ZetaError> {
        self.check_sigma(sigma)?;
        let (sum, n_pow, corr) = self.pieces(sigma);
        let s = Complex::new(sigma, self.t.abs());
        let v = (sum + corr) * (s - 1.0) + n_pow * (self.n as f64);
        self.finish(v, sigma)
    }
}

/// ζ(s) for `Re(s) > −1`, `s ≠ 1`.
pub fn zeta(s: Complex, params: &ZetaParams) -> Result<Complex, ZetaError> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(ZetaError::PoleAtOne);
    }
    ZetaLine::new(s.im, s.re, s.re, params)?.zeta(s.re)
}

/// ζ(s)(s − 1), which is entire and equals 1 at `s = 1`.
pub fn zeta_times_s_minus_1(s: Complex, params: &ZetaParams) -> Result<Complex, ZetaError> {
    ZetaLine::new(s.im, s.re, s.re, params)?.zeta_times_s_minus_1(s.re)
}

/// `ln(ζ(σ)(σ − 1))` for real `σ > 0`. The product is positive there.
///
/// Within `1e-4` of `σ = 1` the two-term Laurent series is used instead.
pub fn ln_zeta_times_s_minus_1_real(sigma: f64, params: &ZetaParams) -> Result<f64, ZetaError> {
    let u = sigma - 1.0;
    if u.abs() < 1e-4 {
        return Ok(u * (EULER_GAMMA + laurent_c2() * u));
    }
    let v = zeta_times_s_minus_1(Complex::new(sigma, 0.0), params)?;
    Ok(v.re.ln())
}

/// Quadratic coefficient of `ln(ζ(σ)(σ−1))` about `σ = 1`: `−γ₁ − γ²/2`.
pub const fn laurent_c2() -> f64 {
    -STIELTJES_GAMMA1 - EULER_GAMMA * EULER_GAMMA / 2.0
}

/// `ψ(3/2) = 2 − 2 ln 2 − γ`.
pub const fn psi_three_halves() -> f64 {
    2.0 - 2.0 * LN_2 - EULER_GAMMA
}

/// Which function the tracked logarithm is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogTarget {
    /// `f(z) = ζ(z)`
    Zeta,
    /// `f(z) = ζ(z)(z − 1)`
    ZetaTimesZMinus1,
}

/// Side from which a path through a zero is approached (`F(z ± i0)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ApproachSide {
    Above,
    Below,
}

/// Options for branch tracking.
#[derive(Debug, Clone, Copy)]
pub struct TrackOptions<'a> {
    /// Abscissa where the principal branch is taken.
    pub start_sigma: f64,
    /// Distance under which a path counts as passing through a known zero.
    pub guard: f64,
    /// Largest continuation step.
    pub max_step: f64,
    /// Ordinates of known critical-line zeros, ascending.
    pub known_zeros: Option<&'a [f64]>,
    /// When set, a path through a zero is displaced by `±guard` instead of
    /// failing.
    pub approach: Option<ApproachSide>,
}

impl Default for TrackOptions<'_> {
    fn default() -> Self {
        Self {
            start_sigma: 4.0,
            guard: 1e-9,
            max_step: 0.5,
            known_zeros: None,
            approach: None,
        }
    }
}

/// A logarithm continued horizontally from `start_sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackedLog {
    pub sigma: f64,
    pub t: f64,
    pub value: Complex,
    pub start_sigma: f64,
    /// `(Im value − Arg f(σ+it)) / 2π`.
    pub windings: i64,
    /// Set when the `±i0` displacement was applied.
    pub displaced: Option<ApproachSide>,
}

/// Smallest step before a rotation exceeding the step limit is declared a zero.
const MIN_STEP: f64 = 1e-10;

/// Continuation keeps each step's phase change below this.
pub const STEP_PHASE_LIMIT: f64 = FRAC_PI_4;

fn eval_target(line: &ZetaLine, target: LogTarget, sigma: f64) -> Result<Complex, ZetaError> {
    match target {
        LogTarget::Zeta => line.zeta(sigma),
        LogTarget::ZetaTimesZMinus1 => line.zeta_times_s_minus_1(sigma),
    }
}

fn near_known_zero(zeros: &[f64], t: f64, guard: f64) -> bool {
    let i = zeros.partition_point(|&z| z < t.abs() - guard);
    zeros.get(i).is_some_and(|&z| (z - t.abs()).abs() < guard)
}

/// Branch-tracked logarithm of `ζ` or `ζ(z)(z−1)` at `σ + it`.
pub fn log_tracked(
    sigma: f64,
    t: f64,
    target: LogTarget,
    params: &ZetaParams,
    opts: &TrackOptions<'_>,
) -> Result<TrackedLog, ZetaError> {
    let mut t_eval = t;
    let mut displaced = None;
    if let Some(zeros) = opts.known_zeros {
        if sigma <= 0.5 && near_known_zero(zeros, t, opts.guard) {
            match opts.approach {
                None => return Err(ZetaError::ZeroOnPath { sigma: 0.5, t }),
                Some(side) => {
                    let k = zeros.partition_point(|&z| z < t.abs() - opts.guard);
                    let z = zeros[k].copysign(t);
                    t_eval = match side {
                        ApproachSide::Above => z + opts.guard,
                        ApproachSide::Below => z - opts.guard,
                    };
                    displaced = Some(side);
                }
            }
        }
    }
    if !(sigma > 0.0) {
        return Err(ZetaError::OutOfDomain { re: sigma, im: t });
    }
    if target == LogTarget::Zeta && t_eval == 0.0 && sigma <= 1.0 {
        // The real segment crosses the pole at 1.
        return Err(ZetaError::PoleAtOne);
    }
    let start = opts.start_sigma;
    let line = ZetaLine::new(t_eval, sigma.min(start), sigma.max(start), params)?;
    let f_start = eval_target(&line, target, start)?;
    let anchor = match target {
        LogTarget::Zeta => f_start.ln(),
        LogTarget::ZetaTimesZMinus1 => {
            let zm1 = Complex::new(start - 1.0, t_eval);
            let z = (f_start / zm1).ln() + zm1.ln();
            Complex::new(f_start.norm().ln(), z.im)
        }
    };

    let mut x = start;
    let mut f_cur = f_start;
    let mut arg = anchor.im;
    let dir = if sigma < start { -1.0 } else { 1.0 };
    let mut h = opts.max_step.min((sigma - start).abs());
    while (sigma - x).abs() > 0.0 {
        let remaining = (sigma - x).abs();
        let step = h.min(remaining);
        let x_next = if step == remaining { sigma } else { x + dir * step };
        let f_next = eval_target(&line, target, x_next)?;
        let delta = (f_next * f_cur.conj()).arg();
        if delta.abs() > STEP_PHASE_LIMIT || f_next.norm() == 0.0 {
            if step <= MIN_STEP {
                return Err(ZetaError::ZeroOnPath { sigma: x_next, t: t_eval });
            }
            h = step / 2.0;
            continue;
        }
        arg += delta;
        x = x_next;
        f_cur = f_next;
        if delta.abs() < STEP_PHASE_LIMIT / 4.0 {
            h = (2.0 * step).min(opts.max_step);
        }
    }

    let principal = f_cur.arg();
    let windings = ((arg - principal) / TAU).round();
    let value = Complex::new(f_cur.norm().ln(), principal + TAU * windings);
    if !value.re.is_finite() {
        return Err(ZetaError::ZeroOnPath { sigma, t: t_eval });
    }
    Ok(TrackedLog {
        sigma,
        t,
        value,
        start_sigma: start,
        windings: windings as i64,
        displaced,
    })
}

/// Branch-tracked `ln ζ(σ + it)` with default options.
pub fn log_zeta_tracked(sigma: f64, t: f64, params: &ZetaParams) -> Result<TrackedLog, ZetaError> {
    log_tracked(sigma, t, LogTarget::Zeta, params, &TrackOptions::default())
}

/// Branch-tracked `ln(ζ(z)(z − 1))` at `z = σ + it` with default options.
pub fn log_zeta_times_zminus1_tracked(
    sigma: f64,
    t: f64,
    params: &ZetaParams,
) -> Result<TrackedLog, ZetaError> {
    log_tracked(sigma, t, LogTarget::ZetaTimesZMinus1, params, &TrackOptions::default())
}

/// `ln|ζ(σ + it)|`, no branch tracking needed.
pub fn ln_abs_zeta(sigma: f64, t: f64, params: &ZetaParams) -> Result<f64, ZetaError> {
    Ok(zeta(Complex::new(sigma, t), params)?.norm().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p() -> ZetaParams {
        ZetaParams::default()
    }

    #[test]
    fn classical_values() {
        let z2 = zeta(Complex::new(2.0, 0.0), &p()).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(z2.im.abs() < 1e-15);
        let z0 = zeta(Complex::new(0.0, 0.0), &p()).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-12, "{z0}");
        let z4 = zeta(Complex::new(4.0, 0.0), &p()).unwrap();
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn pole_and_params_errors() {
        assert_eq!(zeta(Complex::new(1.0, 0.0), &p()), Err(ZetaError::PoleAtOne));
        let bad = ZetaParams { n_terms: 1, ..p() };
        assert!(matches!(zeta(Complex::new(2.0, 0.0), &bad), Err(ZetaError::InvalidParams(_))));
        let bad = ZetaParams { bernoulli_order: 26, ..p() };
        assert!(matches!(zeta(Complex::new(2.0, 0.0), &bad), Err(ZetaError::InvalidParams(_))));
        assert!(matches!(
            zeta(Complex::new(-1.5, 0.0), &p()),
            Err(ZetaError::OutOfDomain { .. })
        ));
        // A target no reachable cutoff can meet.
        let tight = ZetaParams { bernoulli_order: 1, target_abs_error: 1e-300, ..p() };
        assert!(matches!(
            zeta(Complex::new(0.5, 1e5), &tight),
            Err(ZetaError::ParamsInsufficient { .. })
        ));
    }

    #[test]
    fn product_form_is_regular_at_one() {
        let v = zeta_times_s_minus_1(Complex::new(1.0, 0.0), &p()).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14);
        let u = 1e-3;
        let v = zeta_times_s_minus_1(Complex::new(1.0 + u, 0.0), &p()).unwrap();
        let series = 1.0 + EULER_GAMMA * u - STIELTJES_GAMMA1 * u * u;
        assert!((v.re - series).abs() < 1e-9);
        // The series used inside 1e-4 of the pole agrees with the direct value.
        let u = 0.99e-4;
        let series = ln_zeta_times_s_minus_1_real(1.0 + u, &p()).unwrap();
        let direct = zeta_times_s_minus_1(Complex::new(1.0 + u, 0.0), &p()).unwrap().re.ln();
        assert!((series - direct).abs() < 1e-11, "{series} {direct}");
    }

    #[test]
    fn psi_constant() {
        assert!((psi_three_halves() - 0.036_489_973_978_576_52).abs() < 1e-15);
        let lhs = psi_three_halves() + EULER_GAMMA + 2.0 * 0.5f64.ln();
        assert!((lhs - (2.0 - 4.0 * LN_2)).abs() < 1e-15);
        assert!((psi_three_halves() - 2.0 + 2.0 * LN_2 + EULER_GAMMA).abs() < 1e-15);
    }

    #[test]
    fn tracked_log_on_real_axis_and_zero_free_region() {
        let l = log_zeta_tracked(2.0, 0.0, &p()).unwrap();
        assert!(l.value.im.abs() < 1e-15);
        assert!((l.value.re - (PI * PI / 6.0).ln()).abs() < 1e-13);

        let l = log_zeta_tracked(2.0, 10.0, &p()).unwrap();
        let z = zeta(Complex::new(2.0, 10.0), &p()).unwrap();
        assert!((l.value.im - z.arg()).abs() < 1e-13);
        assert_eq!(l.windings, 0);

        let l = log_zeta_times_zminus1_tracked(2.0, 0.0, &p()).unwrap();
        assert!((l.value.re - (PI * PI / 6.0).ln()).abs() < 1e-13);
        let l = log_zeta_times_zminus1_tracked(1.0 + 1e-9, 0.0, &p()).unwrap();
        assert!(l.value.norm() < 1e-8);
    }

    #[test]
    fn tracked_log_inverts_zeta() {
        for &(s, t) in &[(0.25, 14.0), (0.5, 100.0), (0.3, 1000.0), (0.6, -37.2)] {
            let l = log_zeta_tracked(s, t, &p()).unwrap();
            let z = zeta(Complex::new(s, t), &p()).unwrap();
            let e = l.value.exp();
            assert!((e - z).norm() / z.norm() < 1e-10, "({s},{t})");
        }
        let l = log_zeta_times_zminus1_tracked(0.75, 50.0, &p()).unwrap();
        let z = zeta(Complex::new(0.75, 50.0), &p()).unwrap() * Complex::new(-0.25, 50.0);
        assert!((l.value.exp() - z).norm() / z.norm() < 1e-10);
    }

    #[test]
    fn known_zero_guard() {
        let zeros = [14.134_725_142];
        let opts = TrackOptions { known_zeros: Some(&zeros), ..Default::default() };
        let r = log_tracked(0.5, 14.134_725_142, LogTarget::Zeta, &p(), &opts);
        assert!(matches!(r, Err(ZetaError::ZeroOnPath { .. })));
        let above = TrackOptions { approach: Some(ApproachSide::Above), ..opts };
        let below = TrackOptions { approach: Some(ApproachSide::Below), ..opts };
        let a = log_tracked(0.5, 14.134_725_142, LogTarget::Zeta, &p(), &above).unwrap();
        let b = log_tracked(0.5, 14.134_725_142, LogTarget::Zeta, &p(), &below).unwrap();
        assert_eq!(a.displaced, Some(ApproachSide::Above));
        // Crossing a simple zero on the path flips the argument by π.
        assert!(((a.value.im - b.value.im).abs() - PI).abs() < 1e-3);
    }
}
