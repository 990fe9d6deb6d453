//! Small deterministic numerics: adaptive Gauss-Kronrod quadrature,
//! bisection, and Richardson-extrapolated finite differences.

use crate::error::Error;
use crate::Result;

/// 15-point Kronrod abscissae on [-1, 1] (positive half; node 7 is 0).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Embedded 7-point Gauss weights (nodes XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 15(7) panel; returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let fsum = f(c - x) + f(c + x);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h.abs())
}

/// Adaptive quadrature of `f` over [a, b] to absolute tolerance `tol`.
///
/// Deterministic: the subdivision order is fixed by the recursion. The
/// tolerance is floored at a few ulps of the accumulated magnitude, so
/// requesting 1e-14 on an O(1) integral is safe.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (whole, err) = gk15(f, a, b);
    let floor = 4.0 * f64::EPSILON * whole.abs();
    adaptive(f, a, b, whole, err, tol.max(floor), 0)
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    err: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    if err <= tol || (b - a).abs() < 64.0 * f64::EPSILON * (a.abs() + b.abs() + 1.0) {
        if err > tol.max(1e-10) && depth >= 52 {
            return Err(Error::QuadratureNoConvergence {
                estimate: err,
                tol,
            });
        }
        return Ok(whole);
    }
    if depth >= 52 {
        return Err(Error::QuadratureNoConvergence {
            estimate: err,
            tol,
        });
    }
    let m = 0.5 * (a + b);
    let (left, el) = gk15(f, a, m);
    let (right, er) = gk15(f, m, b);
    let half_tol = 0.5 * tol;
    let l = adaptive(f, a, m, left, el, half_tol, depth + 1)?;
    let r = adaptive(f, m, b, right, er, half_tol, depth + 1)?;
    Ok(l + r)
}

/// Bisection for a root of `f` in [lo, hi], to absolute tolerance `xtol`
/// on the independent variable. Requires a sign change.
pub fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let mut lo = lo;
    let mut hi = hi;
    let flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket(format!(
            "f({lo}) = {flo} and f({hi}) = {fhi} have the same sign"
        )));
    }
    let mut fl = flo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= xtol {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fl.signum() {
            lo = mid;
            fl = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Central first derivative with the step sweep {1e-3, 5e-4, 2.5e-4} and
/// one round of Richardson extrapolation per halving.
pub fn derivative<F: Fn(f64) -> Result<f64>>(f: &F, x: f64) -> Result<f64> {
    let steps = [1e-3, 5e-4, 2.5e-4];
    let mut d = Vec::with_capacity(3);
    for &h in &steps {
        d.push((f(x + h)? - f(x - h)?) / (2.0 * h));
    }
    // Two Richardson levels: error O(h^2) -> O(h^4) -> O(h^6).
    let r1 = (4.0 * d[1] - d[0]) / 3.0;
    let r2 = (4.0 * d[2] - d[1]) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// Central second derivative with the same step sweep and extrapolation.
pub fn second_derivative<F: Fn(f64) -> Result<f64>>(f: &F, x: f64) -> Result<f64> {
    let steps = [1e-3, 5e-4, 2.5e-4];
    let mut d = Vec::with_capacity(3);
    for &h in &steps {
        d.push((f(x + h)? - 2.0 * f(x)? + f(x - h)?) / (h * h));
    }
    let r1 = (4.0 * d[1] - d[0]) / 3.0;
    let r2 = (4.0 * d[2] - d[1]) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// Grow a symmetric bracket around `center` until `f` changes sign.
///
/// Starts at half-width `w0` and doubles up to `max_width`; evaluation
/// errors at a candidate edge stop the growth on that side.
pub fn grow_bracket<F: Fn(f64) -> Result<f64>>(
    f: &F,
    center: f64,
    w0: f64,
    max_width: f64,
) -> Result<(f64, f64)> {
    let mut w = w0;
    while w <= max_width {
        let lo = center - w;
        let hi = center + w;
        match (f(lo), f(hi)) {
            (Ok(a), Ok(b)) if a.signum() != b.signum() || a == 0.0 || b == 0.0 => {
                return Ok((lo, hi));
            }
            (Err(e), _) | (_, Err(e)) => {
                return Err(Error::NoBracket(format!(
                    "window check failed while growing bracket (half-width {w}): {e}"
                )));
            }
            _ => w *= 2.0,
        }
    }
    Err(Error::NoBracket(format!(
        "no sign change within half-width {max_width} around {center}"
    )))
}

/// Classical fixed-step RK4 for a first-order system, one step.
pub fn rk4_step<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]>(
    f: &F,
    t: f64,
    y: &[f64; N],
    h: f64,
) -> [f64; N] {
    let k1 = f(t, y);
    let mut y2 = *y;
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k1[i];
    }
    let k2 = f(t + 0.5 * h, &y2);
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = f(t + 0.5 * h, &y2);
    for i in 0..N {
        y2[i] = y[i] + h * k3[i];
    }
    let k4 = f(t + h, &y2);
    let mut out = *y;
    for i in 0..N {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk_polynomial_exact() {
        let v = integrate(&|x: f64| x * x, 0.0, 1.0, 1e-14).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn gk_sin() {
        let v = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gk_near_singular() {
        // integrable 1/sqrt after substitution: int_0^1 2u/(u) du-like shape
        let v = integrate(&|x: f64| 1.0 / (x + 1e-4).sqrt(), 0.0, 1.0, 1e-12).unwrap();
        let exact = 2.0 * ((1.0f64 + 1e-4).sqrt() - 1e-2);
        assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(&|x: f64| Ok(x * x - 2.0), 0.0, 2.0, 1e-13).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_exp() {
        let d = derivative(&|x: f64| Ok(x.exp()), 0.3).unwrap();
        assert!((d - 0.3f64.exp()).abs() < 1e-10);
        let d2 = second_derivative(&|x: f64| Ok(x.exp()), 0.3).unwrap();
        assert!((d2 - 0.3f64.exp()).abs() < 1e-8);
    }

    #[test]
    fn rk4_exponential() {
        let mut y = [1.0f64];
        let mut t = 0.0;
        let h = 1e-3;
        while t < 1.0 - 1e-12 {
            y = rk4_step(&|_, y: &[f64; 1]| [y[0]], t, &y, h);
            t += h;
        }
        assert!((y[0] - 1.0f64.exp()).abs() < 1e-11);
    }
}
