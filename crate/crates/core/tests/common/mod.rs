//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's ζ or quadrature: ζ on the real axis comes
//! from the alternating η-series with Cohen–Villegas–Zagier acceleration, and
//! integrals from Romberg extrapolation on a fixed dyadic grid.

#![allow(dead_code)]

use std::path::PathBuf;

use logzeta::zeros::load_odlyzko;
use logzeta::{Complex, ZeroCatalog};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const STIELTJES_GAMMA1: f64 = -0.072_815_845_483_676_72;

pub fn zeros_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_first_1700.txt")
}

pub fn catalog() -> ZeroCatalog {
    load_odlyzko(zeros_path()).expect("reference zero table")
}

/// η(s) = Σ (−1)^{k} (k+1)^{−s} for real s > 0, accelerated (error ~ 5.8^{−n}).
pub fn eta_real(s: f64) -> f64 {
    let n = 40usize;
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = 0.0;
    for k in 0..n {
        c = b - c;
        sum += c * ((k + 1) as f64).powf(-s);
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

/// ζ(s) for real s > 0, s ≠ 1.
pub fn zeta_real(s: f64) -> f64 {
    eta_real(s) / (1.0 - 2f64.powf(1.0 - s))
}

/// `ln(ζ(σ)(σ−1)) / (σ−1)`, continuous through σ = 1.
///
/// `ζ(σ)(σ−1) = η(σ)·u / (1 − 2^{−u})` with `u = σ − 1`, the denominator via
/// `expm1`; within `10⁻⁵` of the pole the Laurent expansion
/// `γ + (−γ₁ − γ²/2)·u` takes over.
pub fn log_ratio_real(sigma: f64) -> f64 {
    let u = sigma - 1.0;
    if u.abs() < 1e-5 {
        return EULER_GAMMA + (-STIELTJES_GAMMA1 - 0.5 * EULER_GAMMA * EULER_GAMMA) * u;
    }
    let ln2 = std::f64::consts::LN_2;
    let y = eta_real(sigma) * u / -(-u * ln2).exp_m1();
    y.ln() / u
}

/// Romberg integration of a smooth integrand over `[lo, hi]`.
pub fn romberg<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    const LEVELS: usize = 22;
    let h0 = hi - lo;
    let mut prev = vec![0.5 * h0 * (f(lo) + f(hi))];
    for level in 1..LEVELS {
        let n = 1usize << (level - 1);
        let h = h0 / (2 * n) as f64;
        let mid: f64 = (0..n).map(|i| f(lo + (2 * i + 1) as f64 * h)).sum();
        let mut row = vec![0.5 * prev[0] + h * mid];
        let mut factor = 1.0;
        for j in 1..=level {
            factor *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
            row.push(r);
        }
        let done = level >= 5 && (row[level] - prev[level - 1]).abs() < tol;
        if done {
            return row[level];
        }
        prev = row;
    }
    panic!("romberg did not converge on [{lo}, {hi}]");
}

/// ∫ of a complex function along the straight segment `from → to`.
pub fn segment_integral<F: Fn(Complex) -> Complex>(f: F, from: Complex, to: Complex, tol: f64) -> Complex {
    let d = to - from;
    let re = romberg(|s| (f(from + d * s) * d).re, 0.0, 1.0, tol);
    let im = romberg(|s| (f(from + d * s) * d).im, 0.0, 1.0, tol);
    Complex::new(re, im)
}

/// ∫_lo^∞ of `f` on σ, through `σ = 1 + e^v`, for integrands decaying like
/// `σ^{−2}·ln σ` or faster. Requires `lo > 1`.
pub fn romberg_to_infinity<F: Fn(f64) -> f64>(f: F, lo: f64, tol: f64) -> f64 {
    let v0 = (lo - 1.0).ln();
    romberg(|v| f(1.0 + v.exp()) * v.exp(), v0, 45.0, tol)
}
