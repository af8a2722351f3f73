//! The lower real branch `W_{-1}` of the Lambert function and the largest
//! solution of `x^{1/N} = log(cx)`.

use crate::error::{domain, Result};

const INV_E: f64 = 0.367_879_441_171_442_33;

/// `W_{-1}(-1/4)`, the constant in the piecewise lower bound [`lower_bound_l`].
pub const W_M1_QUARTER: f64 = -2.153_292_364_110_349;

fn residual(w: f64, x: f64) -> f64 {
    w * w.exp() - x
}

/// `W_{-1}(x)` for `x` in `[-1/e, 0)`.
///
/// Bisection on a bracket known to contain the root, then Halley steps that
/// are only accepted while they stay inside the bracket.
pub fn lambert_w_m1(x: f64) -> Result<f64> {
    if !(x.is_finite() && x < 0.0) {
        return domain(format!("W_-1 is defined on [-1/e, 0), got {x}"));
    }
    let rel = (x + INV_E) / INV_E;
    if rel < -1e-15 {
        return domain(format!("W_-1 is defined on [-1/e, 0), got {x}"));
    }
    if rel <= 1e-15 {
        return Ok(-1.0);
    }
    // w·e^w increases from -1/e to 0 as w runs from -1 down to -inf
    let mut hi = -1.0f64;
    let mut lo = (2.0 * (-x).ln()).min(W_M1_QUARTER) - 1.0;
    while residual(lo, x) < 0.0 {
        lo *= 2.0;
    }
    // now residual(lo) >= 0 >= residual(hi)
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if residual(mid, x) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-6 * hi.abs() {
            break;
        }
    }
    let mut w = 0.5 * (lo + hi);
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        let next = w - step;
        if !(next.is_finite() && next > lo && next < hi) {
            // fall back to a bisection step
            if residual(w, x) >= 0.0 {
                lo = w;
            } else {
                hi = w;
            }
            w = 0.5 * (lo + hi);
            continue;
        }
        if residual(next, x) >= 0.0 {
            lo = lo.max(next);
        } else {
            hi = hi.min(next);
        }
        let done = step.abs() <= 1e-15 * next.abs();
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

/// The piecewise lower bound `L(x)`: `W_{-1}(-1/4)` below `-1/4`, `2 log(-x)` above.
pub fn lower_bound_l(x: f64) -> Result<f64> {
    if !(-INV_E * (1.0 + 1e-15)..0.0).contains(&x) {
        return domain(format!("L is defined on [-1/e, 0), got {x}"));
    }
    Ok(if x < -0.25 { W_M1_QUARTER } else { 2.0 * (-x).ln() })
}

/// Natural log of [`x0`]. Safe when `x0` itself would overflow.
pub fn log_x0(c: f64, n: f64) -> Result<f64> {
    if !(c > 0.0 && n > 0.0 && c.is_finite() && n.is_finite()) {
        return domain("c and N must be positive and finite");
    }
    log_x0_from_log_c(c.ln(), n)
}

/// [`log_x0`] with `c` supplied as `log c`.
pub fn log_x0_from_log_c(log_c: f64, n: f64) -> Result<f64> {
    // hypothesis c >= (e/N)^N, i.e. log c >= N(1 - log N)
    let floor = n * (1.0 - n.ln());
    if log_c < floor - 1e-12 * floor.abs().max(1.0) {
        return domain(format!("c = e^{log_c} is below (e/N)^N for N = {n}"));
    }
    let arg = -(-log_c / n).exp() / n;
    let w = lambert_w_m1(arg.max(-INV_E))?;
    Ok(-n * w - log_c)
}

/// Largest real solution of `x^{1/N} = log(cx)`, for `c >= (e/N)^N`.
pub fn x0(c: f64, n: f64) -> Result<f64> {
    Ok(log_x0(c, n)?.exp())
}
