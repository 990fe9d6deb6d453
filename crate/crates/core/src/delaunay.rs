//! Delaunay CMC profiles: the D-function, the profile integral and its
//! inverse, the boundary-hit function x*, the implicit mean curvature
//! H^a(t), the comparison profiles c̃ and ĉ, and the unit-H undulary.
//!
//! With q(x) = H·x² + t − H·t², the slope field D(H,t,x) = √((x/q)² − 1)
//! factors exactly as √(H·(x−r₁)(r₂−x)(x+q))/q over the roots
//! {r₁, r₂} = {t, 1/H − t}; that form has no cancellation at the turning
//! points, and substituting x = r± ∓ u² makes every endpoint integrand
//! smooth.

use crate::curve::{ArcCurve, CurvaturePoint, PlanarCurve, Point, Sample};
use crate::error::Error;
use crate::numeric::{self, rk4_step};
use crate::Result;

const QUAD_TOL: f64 = 1e-12;
const ROOT_TOL: f64 = 1e-12;

/// Zone parameter a ∈ (0,1) with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneSpec {
    a: f64,
}

impl ZoneSpec {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a) || a == 0.0 {
            return Err(Error::Domain(format!("zone parameter must be in (0,1), got {a}")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Boundary abscissa √(1 − a²).
    pub fn w3(&self) -> f64 {
        (1.0 - self.a * self.a).sqrt()
    }

    /// Half-width arccos a of the zone on the sphere.
    pub fn theta1(&self) -> f64 {
        self.a.acos()
    }
}

/// Parameter pair (H, t) of a decreasing Delaunay profile branch, with
/// its runtime validity window in x1.
///
/// Requires H·t > 1/2 so that x1 = t is the top of the branch; validity
/// is re-checked per evaluation rather than derived symbolically.
#[derive(Debug, Clone, Copy)]
pub struct DelaunayParams {
    pub h: f64,
    pub t: f64,
    window: (f64, f64),
}

impl DelaunayParams {
    pub fn new(h: f64, t: f64) -> Result<Self> {
        if !(h.is_finite() && t.is_finite()) || h <= 0.0 || t <= 0.0 {
            return Err(Error::Domain(format!("invalid Delaunay parameters H={h}, t={t}")));
        }
        if h * t <= 0.5 {
            return Err(Error::Domain(format!(
                "H*t = {} must exceed 1/2 for a decreasing branch",
                h * t
            )));
        }
        let other_root = 1.0 / h - t;
        let q_zero = (t * t - t / h).max(0.0).sqrt();
        let lo = other_root.max(q_zero);
        Ok(Self {
            h,
            t,
            window: (lo, t),
        })
    }

    /// Validity window (lo, hi] in x1 for this branch.
    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn q(&self, x: f64) -> f64 {
        self.h * x * x + self.t - self.h * self.t * self.t
    }
}

/// D(H, t, x) = √((x / (H·x² + t − H·t²))² − 1), evaluated in the
/// cancellation-free product form.
pub fn d_function(h: f64, t: f64, x: f64) -> Result<f64> {
    let q = h * x * x + t - h * t * t;
    if q <= 0.0 {
        return Err(Error::Domain(format!(
            "denominator H*x^2 + t - H*t^2 = {q} not positive at x = {x}"
        )));
    }
    let other = 1.0 / h - t;
    let r1 = t.min(other);
    let r2 = t.max(other);
    let prod = h * (x - r1) * (r2 - x) * (x + q);
    if prod < 0.0 {
        return Err(Error::RadicandNegative { x, lo: r1, hi: r2 });
    }
    Ok(prod.sqrt() / q)
}

/// ∂D/∂H at fixed (t, x); positive throughout the window.
pub fn d_function_dh(h: f64, t: f64, x: f64) -> Result<f64> {
    // D^2 = (x/q)^2 - 1, dq/dH = x^2 - t^2 < 0 for x < t, so
    // dD/dH = -(x^2/q^3)(x^2 - t^2)/D.
    let d = d_function(h, t, x)?;
    if d == 0.0 {
        return Err(Error::Domain("dD/dH undefined at the turning point".into()));
    }
    let q = h * x * x + t - h * t * t;
    Ok(-(x * x) * (x * x - t * t) / (q * q * q) / d)
}

/// Integrand of ∫ dx/D after the substitution x = t − u²:
/// 2q(x) / √(H·(x − r₁)·(x + q)), smooth up to u = 0.
fn top_sub_integrand(p: &DelaunayParams, u: f64) -> f64 {
    let x = p.t - u * u;
    let q = p.q(x);
    let r1 = 1.0 / p.h - p.t;
    2.0 * q / (p.h * (x - r1) * (x + q)).sqrt()
}

/// x3-height of the profile above x1: ∫_{x1}^{t} dx / D(H,t,x).
pub fn profile_x3(h: f64, t: f64, x1: f64) -> Result<f64> {
    let p = DelaunayParams::new(h, t)?;
    let (lo, hi) = p.window();
    if !(x1 > lo && x1 <= hi) {
        return Err(Error::OutOfWindow(format!(
            "x1 = {x1} outside validity window ({lo}, {hi}]"
        )));
    }
    let umax = (t - x1).sqrt();
    numeric::integrate(&|u| top_sub_integrand(&p, u), 0.0, umax, QUAD_TOL)
}

/// Profile height x1 = c(H, t, x3), the inverse of `profile_x3` in x1,
/// extended evenly to x3 < 0.
pub fn profile_c(h: f64, t: f64, x3: f64) -> Result<f64> {
    let p = DelaunayParams::new(h, t)?;
    let (lo, hi) = p.window();
    let target = x3.abs();
    if target == 0.0 {
        return Ok(t);
    }
    let guard = lo + (hi - lo) * 1e-9 + 1e-13;
    let reach = profile_x3(h, t, guard)?;
    if target > reach {
        return Err(Error::OutOfWindow(format!(
            "|x3| = {target} beyond profile reach {reach} for (H, t) = ({h}, {t})"
        )));
    }
    numeric::bisect(
        &|x1| Ok(profile_x3(h, t, x1)? - target),
        guard,
        hi,
        ROOT_TOL,
    )
}

/// Boundary-hit abscissa x*(a, H, t) = ∫_a^t dx / D(H,t,x); strictly
/// decreasing in H.
pub fn x_star(a: f64, h: f64, t: f64) -> Result<f64> {
    if a >= t {
        return Err(Error::OutOfWindow(format!("x_star requires a < t, got a={a}, t={t}")));
    }
    profile_x3(h, t, a)
}

/// The implicit mean curvature H^a(t): the unique H with
/// x*(a, H, t) = √(1 − a²), found by bisection on a grown bracket.
pub fn h_of_t(zone: ZoneSpec, t: f64) -> Result<f64> {
    let w3 = zone.w3();
    let a = zone.a();
    let f = |h: f64| -> Result<f64> { Ok(x_star(a, h, t)? - w3) };
    let (lo, hi) = numeric::grow_bracket(&f, 1.0, 1e-3, 0.6)?;
    numeric::bisect(&f, lo, hi, ROOT_TOL)
}

/// Comparison profile c̃(a, t, x3) = c(H^a(t), t, x3).
pub fn tilde_c(zone: ZoneSpec, t: f64, x3: f64) -> Result<f64> {
    let h = h_of_t(zone, t)?;
    profile_c(h, t, x3)
}

/// Unit-H profile ĉ(a, t, x3) = c(1, t, x3) restricted to |x3| ≤ √(1−a²).
pub fn hat_c(zone: ZoneSpec, t: f64, x3: f64) -> Result<f64> {
    if x3.abs() > zone.w3() + 1e-12 {
        return Err(Error::OutOfWindow(format!(
            "|x3| = {} beyond zone boundary {}",
            x3.abs(),
            zone.w3()
        )));
    }
    profile_c(1.0, t, x3)
}

fn check_neck(t: f64) -> Result<()> {
    if !(0.0..0.5).contains(&t) || t == 0.0 {
        return Err(Error::Domain(format!("undulary neck must be in (0, 1/2), got {t}")));
    }
    Ok(())
}

/// Rising-branch integrand after x = t + u²: 2q / √((b − x)(x + q)).
fn neck_sub_integrand(t: f64, u: f64) -> f64 {
    let x = t + u * u;
    let q = x * x + t - t * t;
    let b = 1.0 - t;
    2.0 * q / ((b - x) * (x + q)).sqrt()
}

/// Bulge-side integrand after x = (1−t) − v²: 2q / √((x − t)(x + q)).
fn bulge_sub_integrand(t: f64, v: f64) -> f64 {
    let b = 1.0 - t;
    let x = b - v * v;
    let q = x * x + t - t * t;
    2.0 * q / ((x - t) * (x + q)).sqrt()
}

/// x3-distance along the undulary from the neck (0, t) to height x1.
pub fn undulary_x3_of(t: f64, x1: f64) -> Result<f64> {
    check_neck(t)?;
    let b = 1.0 - t;
    if !(t..=b).contains(&x1) {
        return Err(Error::OutOfWindow(format!(
            "undulary height {x1} outside [t, 1-t] = [{t}, {b}]"
        )));
    }
    let mid = 0.5;
    if x1 <= mid {
        numeric::integrate(&|u| neck_sub_integrand(t, u), 0.0, (x1 - t).sqrt(), QUAD_TOL)
    } else {
        let first = numeric::integrate(&|u| neck_sub_integrand(t, u), 0.0, (mid - t).sqrt(), QUAD_TOL)?;
        let second = numeric::integrate(
            &|v| bulge_sub_integrand(t, v),
            (b - x1).sqrt(),
            (b - mid).sqrt(),
            QUAD_TOL,
        )?;
        Ok(first + second)
    }
}

/// Half-period of the undulary: x3-distance from neck x1 = t to bulge
/// x1 = 1 − t.
pub fn undulary_half_period(t: f64) -> Result<f64> {
    undulary_x3_of(t, 1.0 - t)
}

/// Increasing-branch undulary value u_t(x3), even in x3.
pub fn undulary(t: f64, x3: f64) -> Result<f64> {
    check_neck(t)?;
    let target = x3.abs();
    if target == 0.0 {
        return Ok(t);
    }
    let hp = undulary_half_period(t)?;
    if target > hp {
        return Err(Error::BeyondBulge {
            x3: target,
            half_period: hp,
        });
    }
    numeric::bisect(
        &|x1| Ok(undulary_x3_of(t, x1)? - target),
        t,
        1.0 - t,
        ROOT_TOL,
    )
}

/// First crossing Q_t of the undulary with the unit circle at x3 > 0.
pub fn undulary_circle_hit(t: f64) -> Result<Point> {
    check_neck(t)?;
    let b = 1.0 - t;
    let g = |x1: f64| -> Result<f64> {
        let x3 = undulary_x3_of(t, x1)?;
        Ok(x3 * x3 + x1 * x1 - 1.0)
    };
    if g(b)? <= 0.0 {
        return Err(Error::NoIntersection { t });
    }
    let x1 = numeric::bisect(&g, t, b, ROOT_TOL)?;
    Ok(Point::new(undulary_x3_of(t, x1)?, x1))
}

/// x3(P_t): the abscissa at which u_t first reaches height a.
pub fn undulary_height_hit(t: f64, a: f64) -> Result<f64> {
    if !(a > t && a < 1.0 - t) {
        return Err(Error::OutOfWindow(format!(
            "height {a} outside the open undulary range ({t}, {})",
            1.0 - t
        )));
    }
    undulary_x3_of(t, a)
}

/// Curvature of a CMC profile at height x1, from the closed form
/// κ = 2H − q/x1² (valid on the q > 0 branch, both traversal signs).
pub fn profile_kappa(h: f64, t: f64, x1: f64) -> f64 {
    let q = h * x1 * x1 + t - h * t * t;
    2.0 * h - q / (x1 * x1)
}

/// Quadrature-backed sampled profile: the graph x1 = c(H,t,x3) on
/// [x3_lo, x3_hi], as an arc-length `PlanarCurve` traversed with x3
/// increasing (inward-type normal). θ and κ come from the closed-form
/// slope and curvature, s from cumulative chord length.
pub fn profile_curve(h: f64, t: f64, x3_lo: f64, x3_hi: f64, n: usize) -> Result<PlanarCurve> {
    assert!(n >= 2 && x3_hi > x3_lo);
    let mut samples = Vec::with_capacity(n);
    let mut s = 0.0;
    let mut prev: Option<Point> = None;
    for i in 0..n {
        let x3 = x3_lo + (x3_hi - x3_lo) * i as f64 / (n - 1) as f64;
        let c = profile_c(h, t, x3)?;
        let slope = if x3 == 0.0 {
            0.0
        } else {
            -x3.signum() * d_function(h, t, c)?
        };
        let pos = Point::new(x3, c);
        if let Some(p) = prev {
            s += pos.dist(p);
        }
        samples.push(Sample {
            s,
            pos,
            theta: slope.atan(),
            kappa: profile_kappa(h, t, c),
        });
        prev = Some(pos);
    }
    PlanarCurve::new(samples)
}

/// Sampled undulary graph x1 = u_t(x3), x3 increasing.
pub fn undulary_curve(t: f64, x3_lo: f64, x3_hi: f64, n: usize) -> Result<PlanarCurve> {
    assert!(n >= 2 && x3_hi > x3_lo);
    let mut samples = Vec::with_capacity(n);
    let mut s = 0.0;
    let mut prev: Option<Point> = None;
    for i in 0..n {
        let x3 = x3_lo + (x3_hi - x3_lo) * i as f64 / (n - 1) as f64;
        let u = undulary(t, x3)?;
        let slope = if x3 == 0.0 {
            0.0
        } else {
            x3.signum() * d_function(1.0, t, u)?
        };
        let pos = Point::new(x3, u);
        if let Some(p) = prev {
            s += pos.dist(p);
        }
        samples.push(Sample {
            s,
            pos,
            theta: slope.atan(),
            kappa: profile_kappa(1.0, t, u),
        });
        prev = Some(pos);
    }
    PlanarCurve::new(samples)
}

/// Densely integrated CMC meridian in arc length, evaluable anywhere in
/// its span: dx3/ds = cos θ, dx1/ds = sin θ, dθ/ds = cos θ/x1 − 2H,
/// anchored at s = 0.
#[derive(Debug, Clone)]
pub struct CmcArc {
    h: f64,
    step: f64,
    s_lo: f64,
    /// Node states (x3, x1, theta) at s_lo + i*step.
    nodes: Vec<[f64; 3]>,
}

impl CmcArc {
    pub fn new(
        h: f64,
        anchor_pos: Point,
        anchor_theta: f64,
        s_back: f64,
        s_fwd: f64,
        step: f64,
    ) -> Result<Self> {
        assert!(step > 0.0 && s_back >= 0.0 && s_fwd >= 0.0 && s_back + s_fwd > 0.0);
        let rhs = |_s: f64, y: &[f64; 3]| [y[2].cos(), y[2].sin(), y[2].cos() / y[1] - 2.0 * h];
        let n_back = (s_back / step).ceil() as usize;
        let n_fwd = (s_fwd / step).ceil() as usize;
        let mut nodes = Vec::with_capacity(n_back + n_fwd + 1);
        let mut y = [anchor_pos.x3, anchor_pos.x1, anchor_theta];
        let mut back = Vec::with_capacity(n_back);
        for i in 0..n_back {
            y = rk4_step(&rhs, -(i as f64) * step, &y, -step);
            if y[1] <= 0.0 {
                return Err(Error::DomainExit {
                    s: -((i + 1) as f64) * step,
                    x1: y[1],
                });
            }
            back.push(y);
        }
        back.reverse();
        nodes.extend(back);
        nodes.push([anchor_pos.x3, anchor_pos.x1, anchor_theta]);
        y = [anchor_pos.x3, anchor_pos.x1, anchor_theta];
        for i in 0..n_fwd {
            y = rk4_step(&rhs, (i as f64) * step, &y, step);
            if y[1] <= 0.0 {
                return Err(Error::DomainExit {
                    s: ((i + 1) as f64) * step,
                    x1: y[1],
                });
            }
            nodes.push(y);
        }
        Ok(Self {
            h,
            step,
            s_lo: -(n_back as f64) * step,
            nodes,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    fn kappa_of(&self, theta: f64, x1: f64) -> f64 {
        2.0 * self.h - theta.cos() / x1
    }
}

impl ArcCurve for CmcArc {
    fn domain(&self) -> (f64, f64) {
        (
            self.s_lo,
            self.s_lo + (self.nodes.len() - 1) as f64 * self.step,
        )
    }

    fn at(&self, s: f64) -> CurvaturePoint {
        let (lo, hi) = self.domain();
        let s = s.clamp(lo, hi);
        let idx = (((s - lo) / self.step).floor() as usize).min(self.nodes.len() - 2);
        let a = &self.nodes[idx];
        let b = &self.nodes[idx + 1];
        let u = (s - lo) / self.step - idx as f64;
        let h = self.step;
        let u2 = u * u;
        let u3 = u2 * u;
        let (h00, h10, h01, h11) = (
            2.0 * u3 - 3.0 * u2 + 1.0,
            u3 - 2.0 * u2 + u,
            -2.0 * u3 + 3.0 * u2,
            u3 - u2,
        );
        let da = [a[2].cos(), a[2].sin(), a[2].cos() / a[1] - 2.0 * self.h];
        let db = [b[2].cos(), b[2].sin(), b[2].cos() / b[1] - 2.0 * self.h];
        let mut v = [0.0f64; 3];
        for i in 0..3 {
            v[i] = h00 * a[i] + h10 * h * da[i] + h01 * b[i] + h11 * h * db[i];
        }
        CurvaturePoint {
            pos: Point::new(v[0], v[1]),
            theta: v[2],
            kappa: self.kappa_of(v[2], v[1]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_vanishes_at_roots() {
        assert!(d_function(1.0, 0.3, 0.3).unwrap().abs() < 1e-15);
        assert!(d_function(1.0, 0.3, 0.7).unwrap().abs() < 1e-15);
        let v = d_function(1.0, 1.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn d_rejects_outside() {
        assert!(matches!(
            d_function(1.0, 0.3, 0.8),
            Err(Error::RadicandNegative { .. })
        ));
    }

    #[test]
    fn semicircle_profile() {
        // c(1,1) is the unit semicircle: x3 = sqrt(1 - x1^2)
        let v = profile_x3(1.0, 1.0, 0.6).unwrap();
        assert!((v - 0.8).abs() < 1e-11);
        let a = 0.5524;
        let v = profile_x3(1.0, 1.0, a).unwrap();
        assert!((v - (1.0 - a * a).sqrt()).abs() < 1e-9);
        let c = profile_c(1.0, 1.0, 0.6).unwrap();
        assert!((c - 0.8).abs() < 1e-9);
    }

    #[test]
    fn profile_top_is_t() {
        let c = profile_c(1.01, 0.97, 0.0).unwrap();
        assert_eq!(c, 0.97);
    }

    #[test]
    fn profile_even_extension() {
        let a = profile_c(1.02, 0.98, 0.5).unwrap();
        let b = profile_c(1.02, 0.98, -0.5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn x_star_monotone_in_h() {
        let hi = x_star(0.6, 0.99, 0.99).unwrap();
        let lo = x_star(0.6, 1.01, 0.99).unwrap();
        assert!(lo < hi);
        let sphere = x_star(0.6, 1.0, 1.0).unwrap();
        assert!((sphere - 0.8).abs() < 1e-11);
    }

    #[test]
    fn d_derivative_in_h_positive() {
        for &x in &[0.7, 0.8, 0.9] {
            assert!(d_function_dh(1.0, 0.95, x).unwrap() > 0.0);
        }
    }

    #[test]
    fn h_of_t_is_one_on_sphere() {
        let zone = ZoneSpec::new(0.7).unwrap();
        let h = h_of_t(zone, 1.0).unwrap();
        assert!((h - 1.0).abs() < 1e-10);
    }

    #[test]
    fn h_of_t_sign_pattern() {
        // wide zone: H below 1 before t=1, above after
        let zone = ZoneSpec::new(0.8).unwrap();
        assert!(h_of_t(zone, 0.995).unwrap() < 1.0);
        assert!(h_of_t(zone, 1.005).unwrap() > 1.0);
        // narrow zone: reversed
        let zone = ZoneSpec::new(0.4).unwrap();
        assert!(h_of_t(zone, 0.995).unwrap() > 1.0);
        assert!(h_of_t(zone, 1.005).unwrap() < 1.0);
    }

    #[test]
    fn tilde_and_hat_reduce_to_sphere_at_t_one() {
        let zone = ZoneSpec::new(0.6).unwrap();
        let x3 = 0.5;
        let want = (1.0f64 - 0.25).sqrt();
        assert!((tilde_c(zone, 1.0, x3).unwrap() - want).abs() < 1e-9);
        assert!((hat_c(zone, 1.0, x3).unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn tilde_c_comparison_with_sphere() {
        let zone = ZoneSpec::new(0.8).unwrap();
        for &x3 in &[0.1f64, 0.3, 0.5] {
            let sphere = (1.0 - x3 * x3).sqrt();
            assert!(tilde_c(zone, 0.99, x3).unwrap() < sphere);
            assert!(tilde_c(zone, 1.01, x3).unwrap() > sphere);
        }
    }

    #[test]
    fn undulary_neck_and_window() {
        assert_eq!(undulary(0.25, 0.0).unwrap(), 0.25);
        assert!(matches!(
            undulary(0.25, 10.0),
            Err(Error::BeyondBulge { .. })
        ));
        assert!(undulary(0.25, 0.5).unwrap() < 3.0f64.sqrt() / 2.0);
    }

    #[test]
    fn undulary_even() {
        let a = undulary(0.3, 0.4).unwrap();
        let b = undulary(0.3, -0.4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn undulary_circle_hit_is_on_circle() {
        let q = undulary_circle_hit(0.25).unwrap();
        assert!((q.norm() - 1.0).abs() < 1e-9);
        assert!(q.x3 > 0.0 && q.x1 > 0.0);
    }

    #[test]
    fn height_hit_limit_toward_small_neck() {
        // x3(P_t) decreases toward 1 - sqrt(1 - a^2) as t -> 0+
        let a = 0.5f64;
        let limit = 1.0 - (1.0 - a * a).sqrt();
        let v2 = undulary_height_hit(1e-2, a).unwrap();
        let v3 = undulary_height_hit(1e-3, a).unwrap();
        let v4 = undulary_height_hit(1e-4, a).unwrap();
        assert!(v2 > v3 && v3 > v4 && v4 > limit);
        assert!(v4 - limit < 1e-3);
    }

    #[test]
    fn cmc_arc_matches_quadrature_profile() {
        let (h, t) = (1.02, 0.98);
        let arc = CmcArc::new(h, Point::new(0.0, t), 0.0, 0.0, 0.9, 1e-4).unwrap();
        // compare positions at matched x3 by scanning the arc
        for &x3 in &[0.2, 0.5, 0.8] {
            let c = profile_c(h, t, x3).unwrap();
            // find s with arc.x3(s) = x3 by bisection on the arc
            let f = |s: f64| -> crate::Result<f64> { Ok(arc.at(s).pos.x3 - x3) };
            let s = numeric::bisect(&f, 0.0, arc.domain().1, 1e-12).unwrap();
            assert!((arc.at(s).pos.x1 - c).abs() < 1e-8);
        }
    }

    #[test]
    fn profile_curve_round_trip_invariants() {
        let c = profile_curve(1.02, 0.98, -0.6, 0.6, 201).unwrap();
        let (chord, turn) = c.discretization_residuals();
        assert!(chord < 1e-5, "chord residual {chord}");
        assert!(turn < 1e-4, "turn residual {turn}");
    }
}
