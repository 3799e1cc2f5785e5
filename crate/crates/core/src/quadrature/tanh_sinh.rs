//! Tanh-sinh (double-exponential) rule for panels with endpoint singularities.
//!
//! Abscissae are generated as distances from the nearer endpoint so that nodes
//! within `1e-30` of a singular endpoint stay distinct from it.

use std::cell::Cell;
use std::f64::consts::FRAC_PI_2;

/// Truncation of the transformed variable.
const TAU_MAX: f64 = 4.5;
/// Finest refinement level; step `2^-MAX_LEVEL`.
const MAX_LEVEL: u32 = 7;

struct Node {
    /// Distance of the abscissa from the left (`-1`) or right (`+1`) end of `[-1, 1]`.
    dist: f64,
    weight: f64,
}

fn node(tau: f64) -> Node {
    let sh = FRAC_PI_2 * tau.sinh();
    let ch = sh.cosh();
    // 1 - tanh(|sh|) = 2 / (1 + e^{2|sh|})
    let dist = 2.0 / (1.0 + (2.0 * sh.abs()).exp());
    let weight = FRAC_PI_2 * tau.cosh() / (ch * ch);
    Node { dist, weight }
}

/// Returns `(value, error_estimate, evaluations)` on `[a, b]`, stopping once
/// successive levels agree to `target`.
pub(crate) fn tanh_sinh<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    target: f64,
) -> Result<(f64, f64, usize), f64> {
    let half = 0.5 * (b - a);
    let evals = Cell::new(0usize);
    let eval = |x: f64| -> Result<f64, f64> {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(x)
        }
    };
    // Weighted sum over the node pairs at τ = k·h, without the factor h.
    let sum_pairs = |h: f64, ks: &mut dyn Iterator<Item = usize>| -> Result<f64, f64> {
        let mut s = 0.0;
        for k in ks {
            let nd = node(k as f64 * h);
            let off = half * nd.dist;
            if off == 0.0 || nd.weight == 0.0 {
                continue;
            }
            let xl = a + off;
            let xr = b - off;
            if xl > a && xl < b {
                s += nd.weight * eval(xl)?;
            }
            if xr > a && xr < b {
                s += nd.weight * eval(xr)?;
            }
        }
        Ok(s)
    };

    let mut h = 1.0;
    let center = eval(0.5 * (a + b))? * FRAC_PI_2;
    let mut raw = center + sum_pairs(h, &mut (1..=(TAU_MAX / h) as usize))?;
    let mut prev = raw * h * half;
    let mut err = f64::INFINITY;
    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        raw += sum_pairs(h, &mut (1..=(TAU_MAX / h) as usize).step_by(2))?;
        let cur = raw * h * half;
        err = (cur - prev).abs();
        prev = cur;
        if err <= target || err <= 4.0 * f64::EPSILON * cur.abs() {
            break;
        }
    }
    Ok((prev, err.max(f64::EPSILON * prev.abs()), evals.get()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_endpoint_singularity() {
        let f = |x: f64| x.ln();
        let (v, e, _) = tanh_sinh(&f, 0.0, 1.0, 1e-14).unwrap();
        assert!((v + 1.0).abs() < 1e-13, "{v} {e}");
    }

    #[test]
    fn inverse_sqrt_left_end() {
        let f = |x: f64| 1.0 / x.sqrt();
        let (v, _, _) = tanh_sinh(&f, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn log_singularity_at_right_end() {
        // Nodes closer to 1 than an ulp are dropped; for a logarithm the lost
        // mass is far below the tolerance.
        let f = |x: f64| (1.0 - x).ln();
        let (v, _, _) = tanh_sinh(&f, 0.0, 1.0, 1e-13).unwrap();
        assert!((v + 1.0).abs() < 1e-12, "{v}");
    }
}
